#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "portgnn/model.hpp"

namespace portgnn {

// Doubles are stored as hex-float strings so checkpoints round-trip the
// 64-bit values bit-exactly regardless of decimal formatting.
inline std::string double_to_hex(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

inline double double_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ParseError("bad float literal: " + s);
    return x;
  }
  throw ParseError("expected a number or a hex-float string");
}

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& w) {
  nlohmann::json j;
  j["rows"] = w.rows();
  j["cols"] = w.cols();
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index k = 0; k < w.cols(); ++k) data.push_back(double_to_hex(w(i, k)));
  j["data"] = std::move(data);
  return j;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ParseError("matrix payload size mismatch");
  Eigen::MatrixXd w(rows, cols);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) w(i, k) = double_from_json(data.at(idx++));
  return w;
}

inline nlohmann::json vector_to_json(const Eigen::VectorXd& b) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < b.size(); ++i) data.push_back(double_to_hex(b[i]));
  return data;
}

inline Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  Eigen::VectorXd b(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = double_from_json(j.at(static_cast<std::size_t>(i)));
  return b;
}

inline nlohmann::json model_to_json(const Model& m) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(m.kind));
  j["delta"] = m.delta;
  j["feature_dim"] = m.feature_dim;
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t l = 0; l < m.weights.size(); ++l) {
    nlohmann::json layer;
    layer["w"] = matrix_to_json(m.weights[l]);
    if (m.kind == ModelKind::SB) layer["b"] = vector_to_json(m.biases[l]);
    layers.push_back(std::move(layer));
  }
  j["layers"] = std::move(layers);
  j["readout"] = {{"w1", matrix_to_json(m.readout.w1)},
                  {"b1", vector_to_json(m.readout.b1)},
                  {"w2", matrix_to_json(m.readout.w2)},
                  {"b2", vector_to_json(m.readout.b2)}};
  return j;
}

inline Model model_from_json(const nlohmann::json& j) {
  Model m;
  m.kind = parse_model_kind(j.at("kind").get<std::string>());
  m.delta = j.at("delta").get<int>();
  m.feature_dim = j.at("feature_dim").get<int>();
  for (const auto& layer : j.at("layers")) {
    m.weights.push_back(matrix_from_json(layer.at("w")));
    if (m.kind == ModelKind::SB) m.biases.push_back(vector_from_json(layer.at("b")));
  }
  const auto& r = j.at("readout");
  m.readout.w1 = matrix_from_json(r.at("w1"));
  m.readout.b1 = vector_from_json(r.at("b1"));
  m.readout.w2 = matrix_from_json(r.at("w2"));
  m.readout.b2 = vector_from_json(r.at("b2"));
  validate_shapes(m);
  return m;
}

}  // namespace portgnn
