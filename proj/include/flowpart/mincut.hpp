// Min-cut extraction from a maximum flow: plain reachability cuts, the
// residual SCC condensation, and the most-balanced min-cut sweep over its
// closed sets.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/flow_problem.hpp"
#include "flowpart/maxflow.hpp"
#include "flowpart/partition.hpp"

namespace flowpart {

// Side assignment for every local vertex of the corridor.
struct LocalBipartition {
  std::vector<char> source_side;
};

namespace mincut_detail {

// A hypernode elided by the reduced network sits on the source side iff the
// outgoing bridging node of some incident net is in the given node set.
inline bool removed_vertex_source_side(const FlowNetwork& net, const Hypergraph& local,
                                       VertexId v, const std::vector<char>& in_set) {
  for (NetId e : local.incident_nets(v)) {
    const NodeId rep = net.bridge_out_of_net[e];
    if (rep != kInvalidNode && in_set[rep]) return true;
  }
  return false;
}

}  // namespace mincut_detail

// Source side = residual reachability; elided hypernodes follow their
// bridging-node representatives.
inline LocalBipartition extract_bipartition(const FlowProblem& problem,
                                            const FlowState& state) {
  const SubHypergraph& sub = *problem.sub;
  const FlowNetwork& net = problem.network;
  const std::vector<char> reached = state.residual_reachable();
  LocalBipartition out;
  out.source_side.assign(sub.local().num_vertices(), false);
  for (VertexId v = 0; v < sub.local().num_vertices(); ++v) {
    const NodeId node = net.node_of_vertex[v];
    if (node != kInvalidNode)
      out.source_side[v] = reached[node];
    else
      out.source_side[v] =
          mincut_detail::removed_vertex_source_side(net, sub.local(), v, reached);
  }
  if (problem.forced_source_vertex != kInvalidVertex)
    out.source_side[problem.forced_source_vertex] = true;
  if (problem.forced_sink_vertex != kInvalidVertex)
    out.source_side[problem.forced_sink_vertex] = false;
  return out;
}

// Condensation of the residual network. Closed successor sets containing
// s_comp and excluding t_comp correspond one to one to minimum cuts.
struct PQDag {
  int num_components = 0;
  std::vector<int> comp_of_node;
  std::vector<std::vector<int>> successors;  // deduplicated adjacency
  int s_comp = -1;
  int t_comp = -1;
};

inline PQDag build_pq_dag(const FlowState& state) {
  const NodeId n = state.num_nodes();
  PQDag dag;
  dag.comp_of_node.assign(n, -1);

  // Iterative Tarjan over residual arcs (remaining capacity > 0).
  std::vector<int> index(n, -1), lowlink(n, 0);
  std::vector<char> on_stack(n, false);
  std::vector<NodeId> scc_stack;
  struct Frame {
    NodeId node;
    std::size_t next_edge;
  };
  std::vector<Frame> call_stack;
  int next_index = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const NodeId u = frame.node;
      const auto edges = state.adjacency(u);
      bool descended = false;
      while (frame.next_edge < edges.size()) {
        const auto& e = edges[frame.next_edge++];
        if (e.cap <= 0) continue;
        const NodeId v = e.to;
        if (index[v] == -1) {
          index[v] = lowlink[v] = next_index++;
          scc_stack.push_back(v);
          on_stack[v] = true;
          call_stack.push_back({v, 0});
          descended = true;
          break;
        }
        if (on_stack[v]) lowlink[u] = std::min(lowlink[u], index[v]);
      }
      if (descended) continue;
      if (lowlink[u] == index[u]) {
        const int comp = dag.num_components++;
        NodeId w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          dag.comp_of_node[w] = comp;
        } while (w != u);
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const NodeId parent = call_stack.back().node;
        lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
      }
    }
  }

  dag.successors.assign(dag.num_components, {});
  for (NodeId u = 0; u < n; ++u)
    for (const auto& e : state.adjacency(u))
      if (e.cap > 0 && dag.comp_of_node[u] != dag.comp_of_node[e.to])
        dag.successors[dag.comp_of_node[u]].push_back(dag.comp_of_node[e.to]);
  for (auto& succ : dag.successors) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  dag.s_comp = dag.comp_of_node[state.source()];
  dag.t_comp = dag.comp_of_node[state.sink()];
  require(dag.s_comp != dag.t_comp, "pq dag: source and sink share a component");
  return dag;
}

namespace mincut_detail {

// Randomized DFS postorder of the condensation. Every prefix of a postorder
// is closed under successors, so prefixes enumerate valid min cuts.
inline std::vector<int> randomized_postorder(const PQDag& dag, std::mt19937_64& rng) {
  std::vector<int> roots(dag.num_components);
  for (int c = 0; c < dag.num_components; ++c) roots[c] = c;
  std::shuffle(roots.begin(), roots.end(), rng);

  std::vector<std::vector<int>> succ = dag.successors;
  for (auto& list : succ) std::shuffle(list.begin(), list.end(), rng);

  std::vector<int> postorder;
  postorder.reserve(dag.num_components);
  std::vector<char> visited(dag.num_components, false);
  struct Frame {
    int comp;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int root : roots) {
    if (visited[root]) continue;
    visited[root] = true;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      Frame& frame = stack.back();
      if (frame.next < succ[frame.comp].size()) {
        const int child = succ[frame.comp][frame.next++];
        if (!visited[child]) {
          visited[child] = true;
          stack.push_back({child, 0});
        }
      } else {
        postorder.push_back(frame.comp);
        stack.pop_back();
      }
    }
  }
  return postorder;
}

struct SweepMaps {
  std::vector<std::vector<VertexId>> present_members;  // per component
  std::vector<std::vector<VertexId>> removed_reps;     // per component, deduped
};

inline SweepMaps build_sweep_maps(const FlowProblem& problem, const PQDag& dag) {
  const SubHypergraph& sub = *problem.sub;
  const FlowNetwork& net = problem.network;
  SweepMaps maps;
  maps.present_members.assign(dag.num_components, {});
  maps.removed_reps.assign(dag.num_components, {});
  for (VertexId v = 0; v < sub.local().num_vertices(); ++v) {
    if (v == problem.forced_sink_vertex) continue;  // pinned to the sink side
    const NodeId node = net.node_of_vertex[v];
    if (node != kInvalidNode) {
      maps.present_members[dag.comp_of_node[node]].push_back(v);
      continue;
    }
    if (v == problem.forced_source_vertex) {
      maps.removed_reps[dag.s_comp].push_back(v);
      continue;
    }
    thread_local std::vector<int> comps;
    comps.clear();
    for (NetId e : sub.local().incident_nets(v)) {
      const NodeId rep = net.bridge_out_of_net[e];
      if (rep != kInvalidNode) comps.push_back(dag.comp_of_node[rep]);
    }
    std::sort(comps.begin(), comps.end());
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
    for (int c : comps) maps.removed_reps[c].push_back(v);
  }
  return maps;
}

}  // namespace mincut_detail

// Sweeps closed sets of the min-cut DAG, evaluating the k-way imbalance the
// corridor reassignment would produce, and returns the assignment with the
// smallest imbalance. Falls back to the plain reachability cut when no sweep
// candidate beats it. Every candidate cuts exactly the flow value.
inline LocalBipartition most_balanced_min_cut(const FlowProblem& problem,
                                              const FlowState& state,
                                              const PQDag& dag,
                                              const PartitionK& part, int reps,
                                              std::mt19937_64& rng) {
  const SubHypergraph& sub = *problem.sub;
  const Hypergraph& local = sub.local();
  const VertexId n_local = local.num_vertices();

  // Parent block weights with the corridor taken out.
  std::vector<Weight> base = part.block_weights();
  for (VertexId v = 0; v < n_local; ++v)
    base[part.block(sub.to_parent_vertex(v))] -= local.vertex_weight(v);
  Weight other_max = 0;
  for (BlockId b = 0; b < part.k(); ++b)
    if (b != sub.block_i() && b != sub.block_j()) other_max = std::max(other_max, base[b]);
  Weight corridor_weight = 0;
  for (VertexId v = 0; v < n_local; ++v) corridor_weight += local.vertex_weight(v);
  const double ceil_avg = static_cast<double>(part.ceil_average());

  auto eval = [&](Weight w_source) {
    const Weight w_i = base[sub.block_i()] + w_source;
    const Weight w_j = base[sub.block_j()] + (corridor_weight - w_source);
    const Weight worst = std::max(other_max, std::max(w_i, w_j));
    return static_cast<double>(worst) / ceil_avg - 1.0;
  };

  LocalBipartition best = extract_bipartition(problem, state);
  Weight best_source_weight = 0;
  for (VertexId v = 0; v < n_local; ++v)
    if (best.source_side[v]) best_source_weight += local.vertex_weight(v);
  double best_imbalance = eval(best_source_weight);

  if (reps <= 0) return best;
  const auto maps = mincut_detail::build_sweep_maps(problem, dag);

  std::vector<std::uint64_t> rep_seeds(reps);
  for (int r = 0; r < reps; ++r) rep_seeds[r] = rng();

  int best_rep = -1;
  std::size_t best_prefix = 0;
  for (int r = 0; r < reps; ++r) {
    std::mt19937_64 rep_rng(rep_seeds[r]);
    const std::vector<int> order = mincut_detail::randomized_postorder(dag, rep_rng);
    std::vector<char> vertex_source(n_local, false);
    Weight w_source = 0;
    bool has_source_comp = false;
    for (std::size_t step = 0; step < order.size(); ++step) {
      const int comp = order[step];
      if (comp == dag.t_comp) break;
      for (VertexId v : maps.present_members[comp]) {
        vertex_source[v] = true;
        w_source += local.vertex_weight(v);
      }
      for (VertexId v : maps.removed_reps[comp]) {
        if (!vertex_source[v]) {
          vertex_source[v] = true;
          w_source += local.vertex_weight(v);
        }
      }
      if (comp == dag.s_comp) has_source_comp = true;
      if (!has_source_comp) continue;
      const double imb = eval(w_source);
      if (imb < best_imbalance) {
        best_imbalance = imb;
        best_rep = r;
        best_prefix = step;
      }
    }
  }

  if (best_rep >= 0) {
    // Replay the winning sweep prefix to materialize its assignment.
    std::mt19937_64 rep_rng(rep_seeds[best_rep]);
    const std::vector<int> order = mincut_detail::randomized_postorder(dag, rep_rng);
    std::vector<char> vertex_source(n_local, false);
    for (std::size_t step = 0; step <= best_prefix; ++step) {
      for (VertexId v : maps.present_members[order[step]]) vertex_source[v] = true;
      for (VertexId v : maps.removed_reps[order[step]]) vertex_source[v] = true;
    }
    best.source_side = std::move(vertex_source);
  }
  return best;
}

}  // namespace flowpart
