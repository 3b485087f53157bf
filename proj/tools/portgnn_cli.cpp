// Command-line front door: graph generation, round simulation, the
// single-leaf training experiment, and the approximation-ratio suite.
// Exit codes: 0 success, 1 experiment/assertion failure, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "portgnn/portgnn.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ExperimentFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

portgnn::PortNumbering ports_from_flag(const portgnn::Graph& g, const std::string& flag) {
  if (flag == "canonical") return portgnn::consistent_port_numbering(g);
  const std::string prefix = "shuffle:";
  if (flag.rfind(prefix, 0) == 0) {
    const std::string num = flag.substr(prefix.size());
    std::size_t pos = 0;
    const std::uint64_t seed = std::stoull(num, &pos);
    if (pos != num.size()) throw portgnn::InvalidParams("bad shuffle seed: " + num);
    return portgnn::shuffled_port_numbering(g, seed);
  }
  throw portgnn::InvalidParams("--ports must be 'canonical' or 'shuffle:<seed>'");
}

int run_gen(const std::string& family, const std::vector<int>& params, int delta, std::uint64_t seed,
            const std::string& out) {
  portgnn::GenSpec spec;
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw portgnn::InvalidParams(family + " takes " + std::to_string(k) + " positional parameter(s)");
  };
  if (family == "star") {
    need(1);
    spec = {portgnn::GraphFamily::Star, params[0], 0, 0};
  } else if (family == "path") {
    need(1);
    spec = {portgnn::GraphFamily::Path, params[0], 0, 0};
  } else if (family == "cycle") {
    need(1);
    spec = {portgnn::GraphFamily::Cycle, params[0], 0, 0};
  } else if (family == "random" || family == "random_bounded") {
    need(1);
    if (delta < 1) throw portgnn::InvalidParams("random graphs need --delta");
    spec = {portgnn::GraphFamily::RandomBounded, params[0], 0, delta};
  } else if (family == "bipartite" || family == "random_bipartite") {
    need(2);
    if (delta < 1) throw portgnn::InvalidParams("bipartite graphs need --delta");
    spec = {portgnn::GraphFamily::RandomBipartite, params[0], params[1], delta};
  } else {
    throw portgnn::InvalidParams("unknown family: " + family);
  }
  const portgnn::Graph g = portgnn::generate(spec, seed);
  json params_json = {{"command", "gen"}, {"family", family}, {"params", params}, {"delta", delta}};
  json j = portgnn::graph_to_json(g);
  j["meta"] = portgnn::meta_block(seed, params_json);
  portgnn::write_file_atomic(out, j.dump(2) + "\n");
  std::cout << "wrote " << out << " (n=" << g.num_nodes() << ", m=" << g.num_edges() << ")\n";
  return 0;
}

int run_simulate(const std::string& graph_file, const std::string& program, const std::string& ports_flag,
                 const std::string& out) {
  const json gj = portgnn::read_json_file(graph_file);
  const portgnn::Graph g = portgnn::graph_from_json(gj);
  const portgnn::PortNumbering p = ports_from_flag(g, ports_flag);

  portgnn::Labeling lab;
  const std::string gnn_prefix = "gnn:";
  if (program == "single_leaf") {
    lab = portgnn::run_rounds(g, p, *portgnn::single_leaf_program());
  } else if (program == "constant") {
    lab = portgnn::run_rounds(g, p, *portgnn::constant_program(1));
  } else if (program == "identity") {
    lab = portgnn::run_rounds(g, p, *portgnn::identity_program());
  } else if (program.rfind(gnn_prefix, 0) == 0) {
    const std::string ckpt = program.substr(gnn_prefix.size());
    const portgnn::Model m = portgnn::model_from_json(portgnn::read_json_file(ckpt));
    if (m.kind != portgnn::ModelKind::VVC)
      throw portgnn::InvalidParams("simulate gnn: needs a vvc checkpoint; run mb/sb models directly");
    portgnn::FeatureMatrix x;
    if (m.feature_dim == m.delta) {
      x = portgnn::node_features(g, m.delta, portgnn::FeatureSpec::Degree);
    } else if (m.feature_dim == m.delta + 1) {
      const portgnn::Coloring c = portgnn::weak_two_coloring(g);
      x = portgnn::node_features(g, m.delta, portgnn::FeatureSpec::DegreeWeak2, &c);
    } else {
      throw portgnn::InvalidParams("checkpoint feature width matches neither degree nor degree+color");
    }
    const auto rows = portgnn::to_rows(x);
    lab = portgnn::run_rounds(g, p, *portgnn::wrap_gnn_as_program(m), &rows);
  } else {
    throw portgnn::InvalidParams("unknown program: " + program +
                                 " (registered: single_leaf, constant, identity, gnn:<checkpoint>)");
  }

  json params_json = {{"command", "simulate"}, {"program", program}, {"ports", ports_flag}};
  json j = portgnn::labeling_to_json(lab);
  j["meta"] = portgnn::meta_block(0, params_json);
  portgnn::write_file_atomic(out, j.dump(2) + "\n");
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_exp_singleleaf(std::uint64_t seed, int trials, int iterations, const std::string& model_filter,
                       const std::string& out_dir) {
  fs::create_directories(out_dir);
  portgnn::TrainConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.iterations = iterations;

  std::vector<portgnn::ModelKind> kinds = {portgnn::ModelKind::VVC, portgnn::ModelKind::MB,
                                           portgnn::ModelKind::SB};
  if (!model_filter.empty()) kinds = {portgnn::parse_model_kind(model_filter)};

  std::ostringstream summary;
  summary << "kind,successes,trials\n";
  for (const portgnn::ModelKind kind : kinds) {
    const portgnn::TrainReport report = portgnn::train(cfg, kind);
    const std::string kname(portgnn::to_string(kind));
    std::vector<std::string> refs;
    for (std::size_t t = 0; t < report.trials.size(); ++t) {
      const std::string ref = "ckpt_" + kname + "_trial" + std::to_string(t) + ".json";
      portgnn::write_file_atomic(fs::path(out_dir) / ref,
                                 portgnn::model_to_json(report.trials[t].final_model).dump(2) + "\n");
      refs.push_back(ref);
    }
    portgnn::write_file_atomic(fs::path(out_dir) / ("report_" + kname + ".json"),
                               portgnn::train_report_to_json(report, &refs).dump(2) + "\n");
    portgnn::write_file_atomic(fs::path(out_dir) / ("curve_" + kname + ".csv"), portgnn::curve_csv(report));
    summary << kname << "," << report.successes() << "," << report.trials.size() << "\n";
    std::cout << kname << ": " << report.successes() << "/" << report.trials.size() << " trials solved\n";
  }
  portgnn::write_file_atomic(fs::path(out_dir) / "summary.csv", summary.str());
  std::cout << "wrote " << out_dir << "/summary.csv\n";
  return 0;
}

int run_exp_ratios(std::uint64_t seed, int count, int nmax, int delta_max, const std::string& out_dir) {
  if (nmax < 4 || nmax > portgnn::kMaxOracleNodes)
    throw portgnn::InvalidParams("--nmax must be in 4.." + std::to_string(portgnn::kMaxOracleNodes));
  if (delta_max < 2) throw portgnn::InvalidParams("--delta must be >= 2");
  fs::create_directories(out_dir);

  std::vector<std::pair<std::string, portgnn::Graph>> suite;
  portgnn::Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const int n = rng.uniform_int(4, nmax);
    const int d = rng.uniform_int(2, std::min(delta_max, n - 1));
    suite.push_back({"random", portgnn::random_bounded(n, d, rng.next_u64())});
  }
  for (int k = 2; k <= 8; ++k) suite.push_back({"star", portgnn::make_star(k)});
  for (int n = 4; n <= 8; ++n) suite.push_back({"path", portgnn::make_path(n)});

  std::ostringstream csv;
  csv << "# " << portgnn::kToolName << " " << portgnn::kVersion << " seed=" << seed
      << " spec_hash="
      << portgnn::fnv1a_hex(json({{"command", "exp-ratios"},
                                  {"count", count},
                                  {"nmax", nmax},
                                  {"delta", delta_max}})
                                .dump())
      << "\n";
  csv << "index,family,n,m,max_degree,mds_opt,all_nodes_size,mds_ratio,mds_bound,mds_ok,"
         "vc_opt,vc_greedy_size,vc_ratio,vc_ok\n";
  int violations = 0;
  int skipped = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& [family, g] = suite[i];
    try {
      const int dmax = g.max_degree();
      const auto mds = portgnn::min_dominating_set(g);
      const auto all_nodes = portgnn::all_nodes_baseline(g);
      const auto mds_ratio = portgnn::approx_ratio(static_cast<long long>(all_nodes.size()),
                                                   static_cast<long long>(mds.size()), portgnn::Sense::Min);
      const bool mds_ok = mds_ratio.leq(dmax + 1);
      const auto vc = portgnn::min_vertex_cover(g);
      const auto greedy = portgnn::matching_vc_baseline(g);
      const bool vc_empty = vc.empty();  // edgeless graphs have ratio 1 by convention
      const auto vc_ratio = vc_empty ? portgnn::Ratio::value(1, 1)
                                     : portgnn::approx_ratio(static_cast<long long>(greedy.size()),
                                                             static_cast<long long>(vc.size()),
                                                             portgnn::Sense::Min);
      const bool vc_ok = vc_ratio.leq(2);
      if (!mds_ok || !vc_ok) ++violations;
      csv << i << "," << family << "," << g.num_nodes() << "," << g.num_edges() << "," << dmax << ","
          << mds.size() << "," << all_nodes.size() << "," << mds_ratio.str() << "," << (dmax + 1) << ","
          << (mds_ok ? 1 : 0) << "," << vc.size() << "," << greedy.size() << "," << vc_ratio.str() << ","
          << (vc_ok ? 1 : 0) << "\n";
    } catch (const portgnn::TooLarge& e) {
      ++skipped;
      std::cerr << "warning: skipping graph " << i << ": " << e.what() << "\n";
    }
  }
  portgnn::write_file_atomic(fs::path(out_dir) / "ratios.csv", csv.str());
  std::cout << "graphs=" << suite.size() << " skipped=" << skipped << " bound_violations=" << violations
            << "\n";
  std::cout << "wrote " << out_dir << "/ratios.csv\n";
  if (violations > 0) throw ExperimentFailure("approximation bound violated on " + std::to_string(violations) + " graph(s)");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"port-numbered GNNs, local-algorithm simulation, and exact combinatorial baselines"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph and write it as JSON");
  std::string gen_family;
  std::vector<int> gen_params;
  int gen_delta = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("family", gen_family, "star | path | cycle | random | bipartite")->required();
  gen->add_option("params", gen_params, "family parameters: star k, path n, cycle n, random n, bipartite a b");
  gen->add_option("--delta", gen_delta, "degree bound for random families");
  gen->add_option("--seed", gen_seed, "generator seed (default 0)");
  gen->add_option("-o,--out", gen_out, "output graph JSON file")->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a node program and write the labeling as JSON");
  std::string sim_graph, sim_program, sim_out;
  std::string sim_ports = "canonical";
  sim->add_option("graph", sim_graph, "input graph JSON file")->required();
  sim->add_option("program", sim_program, "single_leaf | constant | identity | gnn:<checkpoint>")->required();
  sim->add_option("--ports", sim_ports, "canonical | shuffle:<seed> (default canonical)");
  sim->add_option("-o,--out", sim_out, "output labeling JSON file")->required();

  // exp-singleleaf
  auto* exps = app.add_subcommand("exp-singleleaf",
                                  "train per-node policies on the four-node star and report "
                                  "successes per model kind. Writes summary.csv (kind,successes,trials), "
                                  "report_<kind>.json, curve_<kind>.csv (iteration,mean_reward averaged "
                                  "over trials) and ckpt_<kind>_trial<t>.json checkpoints");
  std::uint64_t exps_seed = 0;
  int exps_trials = 10;
  int exps_iters = 10000;
  std::string exps_model;
  std::string exps_out = "singleleaf_out";
  exps->add_option("--seed", exps_seed, "experiment seed (default 0)");
  exps->add_option("--trials", exps_trials, "trials per model kind (default 10)");
  exps->add_option("--iterations", exps_iters, "training iterations per trial (default 10000)");
  exps->add_option("--model", exps_model, "restrict to one kind: vvc | mb | sb (default: all)");
  exps->add_option("-o,--out", exps_out, "output directory");

  // exp-ratios
  auto* expr = app.add_subcommand(
      "exp-ratios",
      "exact oracle vs. trivial baselines on a random suite; asserts the all-nodes dominating-set "
      "ratio <= max_degree+1 and the greedy matching vertex-cover ratio <= 2. Writes ratios.csv with "
      "columns index,family,n,m,max_degree,mds_opt,all_nodes_size,mds_ratio,mds_bound,mds_ok,"
      "vc_opt,vc_greedy_size,vc_ratio,vc_ok (ratios are exact rationals)");
  std::uint64_t expr_seed = 0;
  int expr_count = 200;
  int expr_nmax = 16;
  int expr_delta = 4;
  std::string expr_out = "ratios_out";
  expr->add_option("--seed", expr_seed, "experiment seed (default 0)");
  expr->add_option("--count", expr_count, "number of random graphs (default 200)");
  expr->add_option("--nmax", expr_nmax, "max nodes per random graph (default 16)");
  expr->add_option("--delta", expr_delta, "max degree bound for random graphs (default 4)");
  expr->add_option("-o,--out", expr_out, "output directory");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return run_gen(gen_family, gen_params, gen_delta, gen_seed, gen_out);
    if (sim->parsed()) return run_simulate(sim_graph, sim_program, sim_ports, sim_out);
    if (exps->parsed()) return run_exp_singleleaf(exps_seed, exps_trials, exps_iters, exps_model, exps_out);
    if (expr->parsed()) return run_exp_ratios(expr_seed, expr_count, expr_nmax, expr_delta, expr_out);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ExperimentFailure& e) {
    std::cerr << "experiment failure: " << e.what() << "\n";
    return 1;
  } catch (const portgnn::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const portgnn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
