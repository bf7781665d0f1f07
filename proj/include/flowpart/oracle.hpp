// Brute-force reference implementations. Deliberately naive and kept apart
// from the production code paths so the two can disagree loudly in tests.
#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/flow_problem.hpp"
#include "flowpart/hypergraph.hpp"
#include "flowpart/mincut.hpp"
#include "flowpart/partition.hpp"
#include "flowpart/subhypergraph.hpp"

namespace flowpart {

struct BruteCut {
  Weight weight = 0;
  std::vector<char> source_side;  // per vertex, s side
};

// Minimum (s, t) cut by enumerating all 2^(n-2) assignments of the free
// vertices. A net is cut when it has pins on both sides.
inline BruteCut brute_min_st_cut(const Hypergraph& hg, VertexId s, VertexId t) {
  const VertexId n = hg.num_vertices();
  require_input(s != t && s >= 0 && t >= 0 && s < n && t < n,
                "brute_min_st_cut: bad terminals");
  require_input(n <= 20, "brute_min_st_cut: instance too large");
  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < n; ++v)
    if (v != s && v != t) free_vertices.push_back(v);

  BruteCut best;
  best.weight = kInfiniteCapacity;
  std::vector<char> side(n, false);
  side[s] = true;
  const std::uint64_t limit = 1ULL << free_vertices.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    for (std::size_t i = 0; i < free_vertices.size(); ++i)
      side[free_vertices[i]] = (mask >> i) & 1;
    Weight cut = 0;
    for (NetId e = 0; e < hg.num_nets(); ++e) {
      bool on_s = false, on_t = false;
      for (VertexId v : hg.pins(e)) {
        on_s |= static_cast<bool>(side[v]);
        on_t |= !side[v];
        if (on_s && on_t) break;
      }
      if (on_s && on_t) cut += hg.net_weight(e);
    }
    if (cut < best.weight) {
      best.weight = cut;
      best.source_side = side;
    }
  }
  return best;
}

struct BrutePartition {
  Weight km1 = 0;
  std::vector<BlockId> assignment;
};

// Exhaustive search over all k^n assignments for the best feasible km1.
// Feasible means balanced and all blocks non-empty. Returns nullopt when no
// feasible partition exists.
inline std::optional<BrutePartition> brute_best_partition(const Hypergraph& hg, int k,
                                                          double eps) {
  const VertexId n = hg.num_vertices();
  require_input(k >= 2, "brute_best_partition: k must be at least 2");
  double combinations = 1.0;
  for (VertexId v = 0; v < n; ++v) combinations *= k;
  require_input(combinations <= 2.1e7, "brute_best_partition: instance too large");

  const Weight limit = max_feasible_block_weight(hg.total_vertex_weight(), k, eps);
  std::vector<BlockId> assignment(n, 0);
  std::vector<Weight> block_weight(k, 0);
  std::vector<int> block_size(k, 0);
  block_weight[0] = hg.total_vertex_weight();
  block_size[0] = n;

  std::optional<BrutePartition> best;
  std::vector<char> seen(k, false);
  while (true) {
    bool feasible = true;
    for (BlockId b = 0; b < k && feasible; ++b)
      feasible = block_size[b] > 0 && block_weight[b] <= limit;
    if (feasible) {
      Weight km1 = 0;
      for (NetId e = 0; e < hg.num_nets(); ++e) {
        std::fill(seen.begin(), seen.end(), false);
        int lambda = 0;
        for (VertexId v : hg.pins(e)) {
          if (!seen[assignment[v]]) {
            seen[assignment[v]] = true;
            ++lambda;
          }
        }
        km1 += static_cast<Weight>(lambda - 1) * hg.net_weight(e);
      }
      if (!best || km1 < best->km1) best = BrutePartition{km1, assignment};
    }
    // Odometer step.
    VertexId v = 0;
    while (v < n) {
      const BlockId from = assignment[v];
      block_weight[from] -= hg.vertex_weight(v);
      --block_size[from];
      if (from + 1 < k) {
        assignment[v] = from + 1;
        block_weight[from + 1] += hg.vertex_weight(v);
        ++block_size[from + 1];
        break;
      }
      assignment[v] = 0;
      block_weight[0] += hg.vertex_weight(v);
      ++block_size[0];
      ++v;
    }
    if (v == n) break;
  }
  return best;
}

struct MinCutFamily {
  Weight value = 0;
  // Source-side membership per network node, super-terminals excluded.
  std::vector<std::vector<char>> cuts;
};

// All minimum cuts of a flow problem by enumerating every subset of network
// nodes. Subsets crossing an infinite arc are discarded.
inline MinCutFamily enumerate_network_min_cuts(const FlowProblem& problem) {
  const FlowNetwork& net = problem.network;
  const NodeId n = net.num_nodes();
  require_input(n <= 16, "enumerate_network_min_cuts: instance too large");

  MinCutFamily family;
  family.value = kInfiniteCapacity;
  std::vector<char> side(n, false);
  const std::uint64_t limit = 1ULL << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    for (NodeId u = 0; u < n; ++u) side[u] = (mask >> u) & 1;
    Weight capacity = 0;
    bool infinite = false;
    for (const FlowArc& a : net.arcs) {
      if (side[a.from] && !side[a.to]) {
        if (a.capacity == kInfiniteCapacity) {
          infinite = true;
          break;
        }
        capacity += a.capacity;
      }
    }
    if (!infinite) {
      for (const Attachment& a : problem.source_attachments) {
        if (!side[a.node]) {
          if (a.capacity == kInfiniteCapacity) {
            infinite = true;
            break;
          }
          capacity += a.capacity;
        }
      }
    }
    if (!infinite) {
      for (const Attachment& a : problem.sink_attachments) {
        if (side[a.node]) {
          if (a.capacity == kInfiniteCapacity) {
            infinite = true;
            break;
          }
          capacity += a.capacity;
        }
      }
    }
    if (infinite) continue;
    if (capacity < family.value) {
      family.value = capacity;
      family.cuts.clear();
    }
    if (capacity == family.value) family.cuts.push_back(side);
  }
  return family;
}

// Maps an arbitrary node cut onto corridor vertices with the same
// representative rule the extraction uses.
inline LocalBipartition bipartition_from_cut(const FlowProblem& problem,
                                             const std::vector<char>& node_side) {
  const SubHypergraph& sub = *problem.sub;
  LocalBipartition out;
  out.source_side.assign(sub.local().num_vertices(), false);
  for (VertexId v = 0; v < sub.local().num_vertices(); ++v) {
    const NodeId node = problem.network.node_of_vertex[v];
    if (node != kInvalidNode)
      out.source_side[v] = node_side[node];
    else
      out.source_side[v] = mincut_detail::removed_vertex_source_side(
          problem.network, sub.local(), v, node_side);
  }
  if (problem.forced_source_vertex != kInvalidVertex)
    out.source_side[problem.forced_source_vertex] = true;
  if (problem.forced_sink_vertex != kInvalidVertex)
    out.source_side[problem.forced_sink_vertex] = false;
  return out;
}

// Closed-form network sizes computed from subhypergraph statistics alone,
// mirroring the definitions rather than the builder code.
inline NetworkStats counting_oracle(const SubHypergraph& sub, NetworkVariant variant) {
  const Hypergraph& local = sub.local();
  const std::int64_t n = local.num_vertices();
  const std::int64_t m = local.num_nets();
  const std::int64_t p = local.num_pins();

  std::int64_t nets2 = 0, nets3 = 0, pins3 = 0;
  for (NetId e = 0; e < m; ++e) {
    if (local.net_size(e) == 2) ++nets2;
    if (local.net_size(e) >= 3) {
      ++nets3;
      pins3 += local.net_size(e);
    }
  }

  NetworkStats s;
  if (variant == NetworkVariant::lawler) {
    s.num_nodes = n + 2 * m;
    s.num_arcs = m + 2 * p;
    s.num_infinite_arcs = 2 * p;
    return s;
  }

  s.num_nodes = n + 2 * nets3;
  s.num_arcs = 2 * nets2 + nets3 + 2 * pins3;
  s.num_infinite_arcs = 2 * pins3;
  if (variant == NetworkVariant::liu_wong) return s;

  std::vector<std::pair<NetId, NetId>> clique;
  for (VertexId v = 0; v < n; ++v) {
    bool removable = local.degree(v) <= 3;
    for (NetId e : local.incident_nets(v))
      if (local.net_size(e) == 2) removable = false;
    if (!removable) continue;
    s.num_nodes -= 1;
    std::vector<NetId> bridged;
    for (NetId e : local.incident_nets(v))
      if (local.net_size(e) >= 3) bridged.push_back(e);
    s.num_arcs -= 2 * static_cast<std::int64_t>(bridged.size());
    s.num_infinite_arcs -= 2 * static_cast<std::int64_t>(bridged.size());
    for (NetId a : bridged)
      for (NetId b : bridged)
        if (a != b) clique.emplace_back(a, b);
  }
  std::sort(clique.begin(), clique.end());
  clique.erase(std::unique(clique.begin(), clique.end()), clique.end());
  s.num_arcs += static_cast<std::int64_t>(clique.size());
  s.num_infinite_arcs += static_cast<std::int64_t>(clique.size());
  return s;
}

}  // namespace flowpart
