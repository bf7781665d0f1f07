// Flow networks derived from a subhypergraph: Lawler bridging, the two-pin
// shortcut of Liu and Wong, and the reduced variant that elides low-degree
// hypernodes behind star-node cliques.
#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/subhypergraph.hpp"

namespace flowpart {

enum class FlowNodeType : std::uint8_t { vertex, bridge_in, bridge_out, source, sink };

struct FlowNode {
  FlowNodeType type;
  std::int32_t ref;  // local vertex id or local net id; -1 for source/sink
};

struct FlowArc {
  NodeId from;
  NodeId to;
  Weight capacity;  // kInfiniteCapacity marks unbounded arcs
};

enum class NetworkVariant { lawler, liu_wong, reduced };

// Per-net representation override, used when assembling flow problems.
//   standard:       whatever the variant prescribes for the net size
//   force_bridge:   full bridging pair regardless of size (attachable nets)
//   compact_source: only e' with arc (e', v, w); single-pin border modeling
//   compact_sink:   only e'' with arc (v, e'', w)
//   compact_both:   both compact arcs, no bridging arc
enum class NetRepr : std::uint8_t {
  standard,
  force_bridge,
  compact_source,
  compact_sink,
  compact_both
};

struct NetworkBuildOptions {
  NetworkVariant variant = NetworkVariant::lawler;
  // Per local vertex; vertices flagged here survive low-degree removal.
  std::vector<char> exclude_from_removal;
  // Per local net; empty means all standard.
  std::vector<NetRepr> net_repr;
};

class FlowNetwork {
 public:
  std::vector<FlowNode> nodes;
  std::vector<FlowArc> arcs;
  std::vector<NodeId> node_of_vertex;    // per local vertex, kInvalidNode if removed
  std::vector<NodeId> bridge_in_of_net;  // per local net, kInvalidNode if absent
  std::vector<NodeId> bridge_out_of_net;
  std::vector<char> vertex_removed;
  NetworkVariant variant = NetworkVariant::lawler;

  NodeId num_nodes() const { return static_cast<NodeId>(nodes.size()); }
};

struct NetworkStats {
  std::int64_t num_nodes = 0;
  std::int64_t num_arcs = 0;
  std::int64_t num_infinite_arcs = 0;
};

inline NetworkStats network_stats(const FlowNetwork& net) {
  NetworkStats s;
  s.num_nodes = static_cast<std::int64_t>(net.nodes.size());
  s.num_arcs = static_cast<std::int64_t>(net.arcs.size());
  for (const FlowArc& a : net.arcs)
    if (a.capacity == kInfiniteCapacity) ++s.num_infinite_arcs;
  return s;
}

// A hypernode may hide behind its incident star nodes when its degree is at
// most 3 and no incident net of H_B has exactly two pins: the directed
// clique over d nets costs d(d-1) arcs, the pins it replaces cost 2d.
inline bool removable_by_degree(const Hypergraph& local, VertexId v) {
  if (local.degree(v) > 3) return false;
  for (NetId e : local.incident_nets(v))
    if (local.net_size(e) == 2) return false;
  return true;
}

inline FlowNetwork build_network(const SubHypergraph& sub,
                                 const NetworkBuildOptions& opts) {
  const Hypergraph& local = sub.local();
  const VertexId n = local.num_vertices();
  const NetId m = local.num_nets();
  require(opts.exclude_from_removal.empty() ||
              static_cast<VertexId>(opts.exclude_from_removal.size()) == n,
          "build_network: exclusion vector size mismatch");
  require(opts.net_repr.empty() || static_cast<NetId>(opts.net_repr.size()) == m,
          "build_network: net repr vector size mismatch");

  auto repr_of = [&](NetId e) {
    return opts.net_repr.empty() ? NetRepr::standard : opts.net_repr[e];
  };

  FlowNetwork net;
  net.variant = opts.variant;
  net.vertex_removed.assign(n, false);
  if (opts.variant == NetworkVariant::reduced) {
    for (VertexId v = 0; v < n; ++v) {
      if (!opts.exclude_from_removal.empty() && opts.exclude_from_removal[v]) continue;
      net.vertex_removed[v] = removable_by_degree(local, v);
    }
  }

  net.node_of_vertex.assign(n, kInvalidNode);
  for (VertexId v = 0; v < n; ++v) {
    if (net.vertex_removed[v]) continue;
    net.node_of_vertex[v] = net.num_nodes();
    net.nodes.push_back({FlowNodeType::vertex, v});
  }

  net.bridge_in_of_net.assign(m, kInvalidNode);
  net.bridge_out_of_net.assign(m, kInvalidNode);
  for (NetId e = 0; e < m; ++e) {
    const NetRepr repr = repr_of(e);
    bool wants_in = false, wants_out = false;
    switch (repr) {
      case NetRepr::standard:
        if (opts.variant == NetworkVariant::lawler) {
          wants_in = wants_out = true;
        } else {
          wants_in = wants_out = local.net_size(e) >= 3;
        }
        break;
      case NetRepr::force_bridge:
        wants_in = wants_out = true;
        break;
      case NetRepr::compact_source:
        wants_in = true;
        break;
      case NetRepr::compact_sink:
        wants_out = true;
        break;
      case NetRepr::compact_both:
        wants_in = wants_out = true;
        break;
    }
    if (wants_in) {
      net.bridge_in_of_net[e] = net.num_nodes();
      net.nodes.push_back({FlowNodeType::bridge_in, e});
    }
    if (wants_out) {
      net.bridge_out_of_net[e] = net.num_nodes();
      net.nodes.push_back({FlowNodeType::bridge_out, e});
    }
  }

  for (NetId e = 0; e < m; ++e) {
    const NetRepr repr = repr_of(e);
    const Weight w = local.net_weight(e);
    const NodeId in = net.bridge_in_of_net[e];
    const NodeId out = net.bridge_out_of_net[e];
    switch (repr) {
      case NetRepr::standard:
      case NetRepr::force_bridge: {
        if (in != kInvalidNode) {
          net.arcs.push_back({in, out, w});
          for (VertexId p : local.pins(e)) {
            const NodeId pn = net.node_of_vertex[p];
            if (pn == kInvalidNode) continue;
            net.arcs.push_back({pn, in, kInfiniteCapacity});
            net.arcs.push_back({out, pn, kInfiniteCapacity});
          }
        } else if (local.net_size(e) == 2) {
          // Two-pin shortcut. Pins of two-pin nets are never removed.
          const NodeId u = net.node_of_vertex[local.pins(e)[0]];
          const NodeId v = net.node_of_vertex[local.pins(e)[1]];
          require(u != kInvalidNode && v != kInvalidNode,
                  "build_network: removed pin of a two-pin net");
          net.arcs.push_back({u, v, w});
          net.arcs.push_back({v, u, w});
        }
        // Single-pin nets carry no flow and get no representation here.
        break;
      }
      case NetRepr::compact_source:
      case NetRepr::compact_sink:
      case NetRepr::compact_both: {
        require(local.net_size(e) == 1, "build_network: compact repr on multi-pin net");
        const NodeId pn = net.node_of_vertex[local.pins(e)[0]];
        require(pn != kInvalidNode, "build_network: compact repr pin was removed");
        if (in != kInvalidNode) net.arcs.push_back({in, pn, w});
        if (out != kInvalidNode) net.arcs.push_back({pn, out, w});
        break;
      }
    }
  }

  // Directed cliques over the bridging pairs of each removed hypernode.
  // Duplicates (several removed pins sharing the same net pair) collapse.
  std::vector<std::pair<NetId, NetId>> clique;
  for (VertexId v = 0; v < n; ++v) {
    if (!net.vertex_removed[v]) continue;
    thread_local std::vector<NetId> bridged;
    bridged.clear();
    for (NetId e : local.incident_nets(v))
      if (net.bridge_in_of_net[e] != kInvalidNode &&
          net.bridge_out_of_net[e] != kInvalidNode)
        bridged.push_back(e);
    for (NetId a : bridged)
      for (NetId b : bridged)
        if (a != b) clique.emplace_back(a, b);
  }
  std::sort(clique.begin(), clique.end());
  clique.erase(std::unique(clique.begin(), clique.end()), clique.end());
  for (auto [a, b] : clique)
    net.arcs.push_back(
        {net.bridge_out_of_net[a], net.bridge_in_of_net[b], kInfiniteCapacity});

  return net;
}

inline FlowNetwork build_lawler(const SubHypergraph& sub) {
  return build_network(sub, {NetworkVariant::lawler, {}, {}});
}

inline FlowNetwork build_liu_wong(const SubHypergraph& sub) {
  return build_network(sub, {NetworkVariant::liu_wong, {}, {}});
}

inline FlowNetwork build_reduced(const SubHypergraph& sub,
                                 std::vector<char> exclude_from_removal = {}) {
  return build_network(sub,
                       {NetworkVariant::reduced, std::move(exclude_from_removal), {}});
}

}  // namespace flowpart
