#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "portgnn/local_sim.hpp"

namespace portgnn {

// K_{1,k} with k >= 2: one center adjacent to every other node, the rest
// degree 1.
inline bool is_star(const Graph& g) {
  const int n = g.num_nodes();
  if (n < 3 || g.num_edges() != n - 1) return false;
  int centers = 0;
  int leaves = 0;
  for (int v = 1; v <= n; ++v) {
    if (g.degree(v) == n - 1) ++centers;
    else if (g.degree(v) == 1) ++leaves;
  }
  return centers == 1 && leaves == n - 1;
}

inline int star_center(const Graph& g) {
  if (!is_star(g)) throw NotAStar("expected a star K_{1,k} with k >= 2");
  for (int v = 1; v <= g.num_nodes(); ++v)
    if (g.degree(v) == g.num_nodes() - 1) return v;
  throw NotAStar("unreachable");
}

// True iff exactly one node is labeled 1 and that node is a leaf.
inline bool verify_single_leaf(const Graph& g, const Labeling& lab) {
  if (!is_star(g)) throw NotAStar("single-leaf verification needs a star input");
  if (static_cast<int>(lab.label.size()) != g.num_nodes()) throw ShapeError("labeling size != node count");
  int ones = 0;
  int leaf_ones = 0;
  for (int v = 1; v <= g.num_nodes(); ++v) {
    if (lab.of(v) == 1) {
      ++ones;
      if (g.degree(v) == 1) ++leaf_ones;
    }
  }
  return ones == 1 && leaf_ones == 1;
}

namespace detail {
inline constexpr long kSelect = -1;
inline constexpr long kReject = -2;
}  // namespace detail

// Two VVC rounds. Round 1: everyone announces its degree on all ports.
// Round 2: a node of degree >= 2 whose neighbors all have degree 1 (a star
// center seen locally) grants SELECT to its port-1 neighbor and REJECT
// elsewhere; a degree-1 node outputs 1 iff it was granted. On any star
// exactly one leaf is selected; elsewhere the output is unconstrained but
// the run always terminates.
class SingleLeafProgram final : public NodeProgram {
 public:
  ModelKind model_class() const override { return ModelKind::VVC; }
  int rounds() const override { return 2; }

  NodeState init(const NodeLocal& local) const override {
    return NodeState{{local.degree, /*round*/ 0, /*center*/ 0, /*selected*/ 0}, {}};
  }

  std::vector<Message> send(const NodeState& s, int degree) const override {
    std::vector<Message> out(static_cast<std::size_t>(degree));
    if (s.ints[1] == 0) {
      for (auto& msg : out) msg.tag = s.ints[0];
    } else {
      for (int i = 0; i < degree; ++i)
        out[static_cast<std::size_t>(i)].tag = (s.ints[2] == 1 && i == 0) ? detail::kSelect : detail::kReject;
    }
    return out;
  }

  NodeState step(const NodeState& s, const Inbox& in) const override {
    NodeState next = s;
    const long deg = s.ints[0];
    if (s.ints[1] == 0) {
      bool center = deg >= 2;
      for (long i = 0; center && i < deg; ++i) {
        const auto& pm = in.ports[static_cast<std::size_t>(i)];
        if (!pm.has_value() || pm->msg.tag != 1) center = false;
      }
      next.ints[2] = center ? 1 : 0;
    } else {
      const bool granted =
          deg == 1 && in.ports[0].has_value() && in.ports[0]->msg.tag == detail::kSelect;
      next.ints[3] = granted ? 1 : 0;
    }
    next.ints[1] = s.ints[1] + 1;
    return next;
  }

  int finish(const NodeState& s) const override { return s.ints[3] == 1 ? 1 : 0; }

  bool in_alphabet(const Message& m) const override {
    return m.vec.empty() && (m.tag >= 1 || m.tag == detail::kSelect || m.tag == detail::kReject);
  }
};

class ConstantProgram final : public NodeProgram {
 public:
  explicit ConstantProgram(int value) : value_(value) {}
  ModelKind model_class() const override { return ModelKind::MB; }
  int rounds() const override { return 0; }
  NodeState init(const NodeLocal&) const override { return {}; }
  std::vector<Message> send(const NodeState&, int) const override { return {Message{}}; }
  NodeState step(const NodeState& s, const Inbox&) const override { return s; }
  int finish(const NodeState&) const override { return value_; }

 private:
  int value_;
};

// Zero rounds; outputs the first feature when features are supplied and the
// node degree otherwise.
class IdentityProgram final : public NodeProgram {
 public:
  ModelKind model_class() const override { return ModelKind::MB; }
  int rounds() const override { return 0; }
  NodeState init(const NodeLocal& local) const override {
    return NodeState{{local.degree}, local.feature};
  }
  std::vector<Message> send(const NodeState&, int) const override { return {Message{}}; }
  NodeState step(const NodeState& s, const Inbox&) const override { return s; }
  int finish(const NodeState& s) const override {
    return s.vec.empty() ? static_cast<int>(s.ints[0]) : static_cast<int>(std::llround(s.vec[0]));
  }
};

inline std::unique_ptr<NodeProgram> single_leaf_program() { return std::make_unique<SingleLeafProgram>(); }
inline std::unique_ptr<NodeProgram> constant_program(int value) { return std::make_unique<ConstantProgram>(value); }
inline std::unique_ptr<NodeProgram> identity_program() { return std::make_unique<IdentityProgram>(); }

}  // namespace portgnn
