#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "portgnn/errors.hpp"
#include "portgnn/graph.hpp"
#include "portgnn/kind.hpp"
#include "portgnn/ports.hpp"

namespace portgnn {

// A finite tagged message: a small integer plus an optional numeric payload.
struct Message {
  long tag = 0;
  std::vector<double> vec;
  friend bool operator==(const Message&, const Message&) = default;
  friend bool operator<(const Message& a, const Message& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    return std::lexicographical_compare(a.vec.begin(), a.vec.end(), b.vec.begin(), b.vec.end());
  }
};

struct NodeState {
  std::vector<long> ints;
  std::vector<double> vec;
};

struct PortMsg {
  Message msg;
  int back_port = 0;  // the sender's own port index
};

// One round of input. VVC: ports[i-1] holds the message into own port i
// (nullopt past deg(v)). MB: bag is the multiset of neighbor broadcasts in
// canonical order. SB: bag deduplicated.
struct Inbox {
  std::vector<std::optional<PortMsg>> ports;
  std::vector<Message> bag;
};

struct NodeLocal {
  int degree = 0;
  std::vector<double> feature;
};

// A deterministic local algorithm: a constant number of synchronous rounds,
// each sending messages computed from the current state and then advancing
// the state from what was received.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual ModelKind model_class() const = 0;
  virtual int rounds() const = 0;
  // VVC port vector width; 0 means use the graph's maximum degree.
  virtual int port_width() const { return 0; }
  virtual NodeState init(const NodeLocal& local) const = 0;
  // VVC: one message per own port, in port order; MB/SB: a single broadcast.
  virtual std::vector<Message> send(const NodeState& s, int degree) const = 0;
  virtual NodeState step(const NodeState& s, const Inbox& in) const = 0;
  virtual int finish(const NodeState& s) const = 0;
  virtual bool in_alphabet(const Message&) const { return true; }
};

struct Labeling {
  std::vector<int> label;  // label[v-1]
  int of(int v) const { return label.at(static_cast<std::size_t>(v) - 1); }
  friend bool operator==(const Labeling&, const Labeling&) = default;
};

// Synchronous execution: every round, all nodes emit from their current
// state, then all receive and step behind a barrier. Output is
// finish(final state) per node. Deterministic. MB/SB ignore the numbering.
inline Labeling run_rounds(const Graph& g, const PortNumbering& p, const NodeProgram& prog,
                           const std::vector<std::vector<double>>* features = nullptr,
                           std::vector<NodeState>* final_states = nullptr) {
  const int n = g.num_nodes();
  if (features != nullptr && static_cast<int>(features->size()) != n)
    throw ShapeError("feature rows != node count");
  const bool vvc = prog.model_class() == ModelKind::VVC;
  int width = g.max_degree();
  if (vvc && prog.port_width() > 0) {
    if (prog.port_width() < g.max_degree()) throw ShapeError("program port width below graph degree");
    width = prog.port_width();
  }
  std::vector<NodeState> state(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    state[static_cast<std::size_t>(v) - 1] = prog.init(
        NodeLocal{g.degree(v), features != nullptr ? (*features)[static_cast<std::size_t>(v) - 1]
                                                   : std::vector<double>{}});
  std::vector<std::vector<Message>> out(static_cast<std::size_t>(n));
  for (int round = 0; round < prog.rounds(); ++round) {
    for (int v = 1; v <= n; ++v) {
      auto& msgs = out[static_cast<std::size_t>(v) - 1];
      msgs = prog.send(state[static_cast<std::size_t>(v) - 1], g.degree(v));
      const std::size_t want = vvc ? static_cast<std::size_t>(g.degree(v)) : 1;
      if (msgs.size() != want) throw ShapeError("program sent wrong message count");
      for (const Message& msg : msgs)
        if (!prog.in_alphabet(msg)) throw AlphabetViolation("message outside the declared alphabet");
    }
    std::vector<NodeState> next(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) {
      Inbox in;
      if (vvc) {
        in.ports.assign(static_cast<std::size_t>(width), std::nullopt);
        for (int i = 1; i <= g.degree(v); ++i) {
          const Port q = p.forward(v, i);  // the far port sends into (v, i)
          in.ports[static_cast<std::size_t>(i) - 1] =
              PortMsg{out[static_cast<std::size_t>(q.node) - 1][static_cast<std::size_t>(q.index) - 1], q.index};
        }
      } else {
        for (int u : g.neighbors(v)) in.bag.push_back(out[static_cast<std::size_t>(u) - 1][0]);
        std::sort(in.bag.begin(), in.bag.end());
        if (prog.model_class() == ModelKind::SB)
          in.bag.erase(std::unique(in.bag.begin(), in.bag.end()), in.bag.end());
      }
      next[static_cast<std::size_t>(v) - 1] = prog.step(state[static_cast<std::size_t>(v) - 1], in);
    }
    state = std::move(next);
  }
  Labeling lab;
  lab.label.resize(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v)
    lab.label[static_cast<std::size_t>(v) - 1] = prog.finish(state[static_cast<std::size_t>(v) - 1]);
  if (final_states != nullptr) *final_states = std::move(state);
  return lab;
}

}  // namespace portgnn
