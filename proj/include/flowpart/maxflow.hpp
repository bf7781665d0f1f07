// Blocking-flow max-flow solver over a flow problem, with the residual
// structure kept around for cut extraction and the min-cut DAG.
#pragma once

#include <queue>
#include <span>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/flow_problem.hpp"

namespace flowpart {

// Residual edge list in the usual paired representation: edge k and its
// reverse partner live at adjacency[to][rev]. cap is remaining capacity.
class FlowState {
 public:
  struct Edge {
    NodeId to;
    Weight cap;
    std::int32_t rev;
    Weight original;  // capacity the edge started with (effective bound)
  };

  Weight value() const { return value_; }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  NodeId num_nodes() const { return static_cast<NodeId>(adjacency_.size()); }
  std::span<const Edge> adjacency(NodeId u) const { return adjacency_[u]; }

  // Nodes reachable from the super-source in the residual network. With a
  // maximum flow the sink must be unreachable; anything else is a bug.
  std::vector<char> residual_reachable() const {
    std::vector<char> reached(num_nodes(), false);
    std::vector<NodeId> stack{source_};
    reached[source_] = true;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (const Edge& e : adjacency_[u]) {
        if (e.cap > 0 && !reached[e.to]) {
          reached[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    require(!reached[sink_], "residual_reachable: sink reachable, flow not maximal");
    return reached;
  }

  // Total original capacity of arcs leaving the given source side. Infinite
  // arcs report kInfiniteCapacity. Used by tests and candidate validation.
  Weight cut_capacity(const std::vector<char>& source_side) const {
    Weight total = 0;
    for (NodeId u = 0; u < num_nodes(); ++u) {
      if (!source_side[u]) continue;
      for (const Edge& e : adjacency_[u]) {
        if (e.original == 0 || source_side[e.to]) continue;  // reverse or internal
        if (infinite_edge_[edge_index(u, e)]) return kInfiniteCapacity;
        total += e.original;
      }
    }
    return total;
  }

 private:
  friend FlowState max_flow(const FlowProblem&);

  std::size_t edge_index(NodeId u, const Edge& e) const {
    return edge_base_[u] + static_cast<std::size_t>(&e - adjacency_[u].data());
  }

  void add_edge(NodeId from, NodeId to, Weight cap, bool infinite) {
    adjacency_[from].push_back(
        {to, cap, static_cast<std::int32_t>(adjacency_[to].size()), cap});
    adjacency_[to].push_back(
        {from, 0, static_cast<std::int32_t>(adjacency_[from].size()) - 1, 0});
    pending_infinite_.push_back({from, static_cast<std::int32_t>(
                                           adjacency_[from].size()) - 1,
                                 infinite});
    pending_infinite_.push_back(
        {to, static_cast<std::int32_t>(adjacency_[to].size()) - 1, false});
  }

  bool bfs_levels() {
    level_.assign(num_nodes(), -1);
    std::queue<NodeId> q;
    q.push(source_);
    level_[source_] = 0;
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      for (const Edge& e : adjacency_[u]) {
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  Weight dfs_push(NodeId u, Weight limit) {
    if (u == sink_ || limit == 0) return limit;
    for (std::int32_t& i = iter_[u]; i < static_cast<std::int32_t>(adjacency_[u].size());
         ++i) {
      Edge& e = adjacency_[u][i];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      const Weight pushed = dfs_push(e.to, std::min(limit, e.cap));
      if (pushed > 0) {
        e.cap -= pushed;
        adjacency_[e.to][e.rev].cap += pushed;
        return pushed;
      }
    }
    level_[u] = -1;
    return 0;
  }

  std::vector<std::vector<Edge>> adjacency_;
  std::vector<std::size_t> edge_base_;
  std::vector<char> infinite_edge_;
  struct PendingFlag {
    NodeId node;
    std::int32_t index;
    bool infinite;
  };
  std::vector<PendingFlag> pending_infinite_;
  std::vector<int> level_;
  std::vector<std::int32_t> iter_;
  NodeId source_ = kInvalidNode;
  NodeId sink_ = kInvalidNode;
  Weight value_ = 0;
};

// Super-source and super-sink are materialized as the two extra node ids
// behind the network nodes. Infinite capacities are replaced by the sum of
// all finite capacities plus one, which no flow can saturate because every
// source-sink path crosses at least one finite arc.
inline FlowState max_flow(const FlowProblem& problem) {
  const FlowNetwork& net = problem.network;
  FlowState state;
  const NodeId n = net.num_nodes();
  state.source_ = n;
  state.sink_ = n + 1;
  state.adjacency_.assign(n + 2, {});

  Weight finite_sum = 0;
  for (const FlowArc& a : net.arcs)
    if (a.capacity != kInfiniteCapacity) finite_sum += a.capacity;
  for (const Attachment& a : problem.source_attachments)
    if (a.capacity != kInfiniteCapacity) finite_sum += a.capacity;
  for (const Attachment& a : problem.sink_attachments)
    if (a.capacity != kInfiniteCapacity) finite_sum += a.capacity;
  const Weight effective_infinity = finite_sum + 1;

  auto bounded = [&](Weight cap) {
    return cap == kInfiniteCapacity ? effective_infinity : cap;
  };
  for (const FlowArc& a : net.arcs)
    state.add_edge(a.from, a.to, bounded(a.capacity), a.capacity == kInfiniteCapacity);
  for (const Attachment& a : problem.source_attachments) {
    require(a.node >= 0 && a.node < n, "max_flow: source attachment out of range");
    state.add_edge(state.source_, a.node, bounded(a.capacity),
                   a.capacity == kInfiniteCapacity);
  }
  for (const Attachment& a : problem.sink_attachments) {
    require(a.node >= 0 && a.node < n, "max_flow: sink attachment out of range");
    state.add_edge(a.node, state.sink_, bounded(a.capacity),
                   a.capacity == kInfiniteCapacity);
  }

  // Freeze adjacency then resolve the per-edge infinity flags into a flat
  // index (adjacency vectors stop reallocating from here on).
  state.edge_base_.assign(n + 3, 0);
  for (NodeId u = 0; u < n + 2; ++u)
    state.edge_base_[u + 1] = state.edge_base_[u] + state.adjacency_[u].size();
  state.infinite_edge_.assign(state.edge_base_[n + 2], false);
  for (const auto& flag : state.pending_infinite_)
    state.infinite_edge_[state.edge_base_[flag.node] + flag.index] = flag.infinite;
  state.pending_infinite_.clear();

  state.iter_.assign(n + 2, 0);
  while (state.bfs_levels()) {
    state.iter_.assign(n + 2, 0);
    while (Weight pushed = state.dfs_push(state.source_, effective_infinity))
      state.value_ += pushed;
  }
  require(state.value_ <= finite_sum, "max_flow: flow exceeds finite capacity bound");
  return state;
}

}  // namespace flowpart
