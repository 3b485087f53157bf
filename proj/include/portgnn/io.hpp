#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "portgnn/checkpoint.hpp"
#include "portgnn/coloring.hpp"
#include "portgnn/graph.hpp"
#include "portgnn/local_sim.hpp"
#include "portgnn/ports.hpp"
#include "portgnn/train.hpp"
#include "portgnn/version.hpp"

namespace portgnn {

// Header block stamped into every report: tool version, a hash of the
// parameter block, and the seed. Deliberately no timestamps, so identical
// runs produce identical bytes.
inline nlohmann::json meta_block(std::uint64_t seed, const nlohmann::json& params) {
  return {{"tool", std::string(kToolName) + " " + std::string(kVersion)},
          {"seed", seed},
          {"spec_hash", fnv1a_hex(params.dump())}};
}

inline nlohmann::json graph_to_json(const Graph& g, const Coloring* coloring = nullptr,
                                    const PortNumbering* ports = nullptr) {
  nlohmann::json j;
  j["n"] = g.num_nodes();
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (coloring != nullptr) j["coloring"] = coloring->color;
  if (ports != nullptr) {
    nlohmann::json pj = nlohmann::json::array();
    for (int v = 1; v <= g.num_nodes(); ++v) {
      for (int i = 1; i <= g.degree(v); ++i) {
        const Port q = ports->forward(v, i);
        if (Port{v, i} < q) pj.push_back({{v, i}, {q.node, q.index}});
      }
    }
    j["ports"] = std::move(pj);
  }
  return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw ParseError("edge entries must be pairs");
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  }
  return Graph(n, edges);
}

inline std::optional<Coloring> coloring_from_json(const nlohmann::json& j, const Graph& g) {
  if (!j.contains("coloring")) return std::nullopt;
  Coloring c;
  c.color = j.at("coloring").get<std::vector<int>>();
  if (static_cast<int>(c.color.size()) != g.num_nodes()) throw ParseError("coloring size != node count");
  return c;
}

inline std::optional<PortNumbering> ports_from_json(const nlohmann::json& j, const Graph& g) {
  if (!j.contains("ports")) return std::nullopt;
  std::vector<std::pair<Port, Port>> pairs;
  for (const auto& pj : j.at("ports")) {
    if (pj.size() != 2 || pj.at(0).size() != 2 || pj.at(1).size() != 2)
      throw ParseError("port entries must be [[v,i],[u,j]] pairs");
    pairs.push_back({Port{pj.at(0).at(0).get<int>(), pj.at(0).at(1).get<int>()},
                     Port{pj.at(1).at(0).get<int>(), pj.at(1).at(1).get<int>()}});
  }
  return PortNumbering::build(g, pairs);
}

inline nlohmann::json labeling_to_json(const Labeling& lab) {
  nlohmann::json j;
  j["n"] = lab.label.size();
  j["labels"] = lab.label;
  return j;
}

inline Labeling labeling_from_json(const nlohmann::json& j) {
  Labeling lab;
  lab.label = j.at("labels").get<std::vector<int>>();
  return lab;
}

inline nlohmann::json train_config_to_json(const TrainConfig& cfg) {
  return {{"iterations", cfg.iterations},
          {"trials", cfg.trials},
          {"learning_rate", cfg.learning_rate},
          {"grad_clip", cfg.grad_clip},
          {"baseline_decay", cfg.baseline_decay},
          {"temperature", cfg.temperature},
          {"seed", cfg.seed},
          {"curve_stride", cfg.curve_stride},
          {"success_numberings", cfg.success_numberings},
          {"layer_dims", cfg.layer_dims},
          {"readout_hidden", cfg.readout_hidden}};
}

// `checkpoint_refs`, when given, replaces the inline per-trial model with a
// file reference written separately by the caller.
inline nlohmann::json train_report_to_json(const TrainReport& report,
                                           const std::vector<std::string>* checkpoint_refs = nullptr) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(report.kind));
  j["config"] = train_config_to_json(report.config);
  j["successes"] = report.successes();
  nlohmann::json trials = nlohmann::json::array();
  for (std::size_t t = 0; t < report.trials.size(); ++t) {
    const TrialResult& tr = report.trials[t];
    nlohmann::json tj;
    tj["seed"] = tr.seed;
    tj["success"] = tr.success;
    nlohmann::json curve = nlohmann::json::array();
    for (const CurvePoint& cp : tr.curve) curve.push_back({cp.iteration, cp.mean_reward});
    tj["curve"] = std::move(curve);
    if (checkpoint_refs != nullptr)
      tj["checkpoint"] = checkpoint_refs->at(t);
    else
      tj["checkpoint"] = model_to_json(tr.final_model);
    trials.push_back(std::move(tj));
  }
  j["trials"] = std::move(trials);
  j["meta"] = meta_block(report.config.seed, train_config_to_json(report.config));
  return j;
}

// Reward curve CSV: per sampled iteration, the mean over trials.
inline std::string curve_csv(const TrainReport& report) {
  std::ostringstream out;
  out << "# " << kToolName << " " << kVersion << " kind=" << to_string(report.kind)
      << " seed=" << report.config.seed << "\n";
  out << "iteration,mean_reward\n";
  if (report.trials.empty()) return out.str();
  const std::size_t points = report.trials.front().curve.size();
  char buf[64];
  for (std::size_t i = 0; i < points; ++i) {
    double sum = 0.0;
    for (const auto& tr : report.trials) sum += tr.curve.at(i).mean_reward;
    std::snprintf(buf, sizeof buf, "%.17g", sum / static_cast<double>(report.trials.size()));
    out << report.trials.front().curve[i].iteration << "," << buf << "\n";
  }
  return out.str();
}

inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad json in " + path.string() + ": " + e.what());
  }
}

}  // namespace portgnn
