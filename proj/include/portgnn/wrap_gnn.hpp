#pragma once

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include "portgnn/forward.hpp"
#include "portgnn/local_sim.hpp"
#include "portgnn/model.hpp"

namespace portgnn {

// Runs a VVC model's inference as a node program: the round-l message out of
// port i is the pair (z_v^(l), i) and finish applies the readout. The state
// update calls the same concat and layer routines as cpngnn_forward on the
// same values, so simulated and direct outputs agree bit for bit.
class GnnNodeProgram final : public NodeProgram {
 public:
  explicit GnnNodeProgram(Model m) : model_(std::move(m)) {
    if (model_.kind != ModelKind::VVC) throw InvalidParams("wrap_gnn_as_program needs a vvc model");
    validate_shapes(model_);
    int d = model_.feature_dim;
    msg_widths_.push_back(d);
    for (int l = 0; l + 1 < model_.layers(); ++l) {
      d = static_cast<int>(model_.weights[static_cast<std::size_t>(l)].rows());
      msg_widths_.push_back(d);
    }
  }

  ModelKind model_class() const override { return ModelKind::VVC; }
  int rounds() const override { return model_.layers(); }
  int port_width() const override { return model_.delta; }

  NodeState init(const NodeLocal& local) const override {
    if (static_cast<int>(local.feature.size()) != model_.feature_dim)
      throw ShapeError("feature width != model input width");
    NodeState s;
    s.ints = {0};  // layer counter
    s.vec = local.feature;
    return s;
  }

  std::vector<Message> send(const NodeState& s, int degree) const override {
    std::vector<Message> out(static_cast<std::size_t>(degree));
    for (int i = 1; i <= degree; ++i) {
      out[static_cast<std::size_t>(i) - 1].tag = i;
      out[static_cast<std::size_t>(i) - 1].vec = s.vec;
    }
    return out;
  }

  NodeState step(const NodeState& s, const Inbox& in) const override {
    const auto l = static_cast<std::size_t>(s.ints[0]);
    Eigen::VectorXd own(static_cast<Eigen::Index>(s.vec.size()));
    std::copy(s.vec.begin(), s.vec.end(), own.data());
    std::vector<PortFeed> feeds(static_cast<std::size_t>(model_.delta));
    for (int i = 0; i < model_.delta; ++i) {
      const auto& pm = in.ports[static_cast<std::size_t>(i)];
      if (pm.has_value())
        feeds[static_cast<std::size_t>(i)] = PortFeed{pm->msg.vec.data(), static_cast<int>(pm->msg.tag)};
    }
    const Eigen::VectorXd c = vvc_concat(own, feeds, model_.delta);
    const Eigen::VectorXd z = vvc_layer(model_.weights[l], c);
    NodeState next;
    next.ints = {s.ints[0] + 1};
    next.vec.assign(z.data(), z.data() + z.size());
    return next;
  }

  int finish(const NodeState& s) const override {
    Eigen::VectorXd z(static_cast<Eigen::Index>(s.vec.size()));
    std::copy(s.vec.begin(), s.vec.end(), z.data());
    return readout(mlp_apply(model_.readout, z));
  }

  bool in_alphabet(const Message& m) const override {
    if (m.tag < 1 || m.tag > model_.delta) return false;
    const int w = static_cast<int>(m.vec.size());
    return std::find(msg_widths_.begin(), msg_widths_.end(), w) != msg_widths_.end();
  }

  const Model& model() const { return model_; }

 private:
  Model model_;
  std::vector<int> msg_widths_;
};

inline std::unique_ptr<NodeProgram> wrap_gnn_as_program(const Model& m) {
  return std::make_unique<GnnNodeProgram>(m);
}

}  // namespace portgnn
