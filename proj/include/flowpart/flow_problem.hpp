// Flow problems on top of a corridor network: terminal attachments for the
// graph-style model F_G and the hypergraph-aware model F_H.
#pragma once

#include <utility>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/flow_network.hpp"
#include "flowpart/subhypergraph.hpp"

namespace flowpart {

enum class FlowModel { graph, hypergraph };

struct Attachment {
  NodeId node;
  Weight capacity;  // kInfiniteCapacity or a net weight
};

struct FlowProblem {
  FlowNetwork network;
  std::vector<Attachment> source_attachments;
  std::vector<Attachment> sink_attachments;
  FlowModel model = FlowModel::hypergraph;
  const SubHypergraph* sub = nullptr;
  // Set for (s, t) problems: the terminals belong to their own side even
  // when the reduced variant elided their nodes and the star representative
  // rule would say otherwise.
  VertexId forced_source_vertex = kInvalidVertex;
  VertexId forced_sink_vertex = kInvalidVertex;

  bool degenerate() const {
    return source_attachments.empty() && sink_attachments.empty();
  }
};

struct FlowProblemOptions {
  FlowModel model = FlowModel::hypergraph;
  NetworkVariant variant = NetworkVariant::reduced;
  // Single-pin border modeling: nets with one pin inside B attach through a
  // lone compact bridging node, or through a direct terminal arc when the
  // parent net has just two pins. Only meaningful for the hypergraph model.
  bool single_pin_modeling = true;
};

// F_G: terminals clamp the internal border vertices of each side through
// infinite arcs. Border vertices must survive network reduction.
inline FlowProblem build_graph_model_problem(const SubHypergraph& sub,
                                             NetworkVariant variant) {
  const Hypergraph& local = sub.local();
  NetworkBuildOptions opts;
  opts.variant = variant;
  if (variant == NetworkVariant::reduced) {
    opts.exclude_from_removal.assign(local.num_vertices(), false);
    for (VertexId v : sub.internal_border_vertices())
      opts.exclude_from_removal[v] = true;
  }
  FlowProblem problem;
  problem.model = FlowModel::graph;
  problem.sub = &sub;
  problem.network = build_network(sub, opts);
  for (VertexId v : sub.internal_border_vertices()) {
    const NodeId node = problem.network.node_of_vertex[v];
    require(node != kInvalidNode, "graph model: border vertex was removed");
    const BlockId side = sub.parent_block_of_local(v);
    if (side == sub.block_i())
      problem.source_attachments.push_back({node, kInfiniteCapacity});
    else
      problem.sink_attachments.push_back({node, kInfiniteCapacity});
  }
  return problem;
}

// F_H: border nets attach through their bridging nodes, so their pins inside
// the corridor may still change side at the price of the net weight.
inline FlowProblem build_hypergraph_model_problem(const SubHypergraph& sub,
                                                  NetworkVariant variant,
                                                  bool single_pin_modeling) {
  const Hypergraph& local = sub.local();
  const Hypergraph& parent = sub.parent();
  NetworkBuildOptions opts;
  opts.variant = variant;
  opts.net_repr.assign(local.num_nets(), NetRepr::standard);
  opts.exclude_from_removal.assign(local.num_vertices(), false);

  struct DirectAttachment {
    VertexId local_pin;
    Weight capacity;
    bool to_source;
  };
  std::vector<DirectAttachment> direct;
  std::vector<NetId> attach_source, attach_sink;

  for (NetId e = 0; e < local.num_nets(); ++e) {
    if (sub.local_net_class(e) != NetClass::border) continue;
    const bool ext_i = sub.external_in_i(e);
    const bool ext_j = sub.external_in_j(e);
    if (!ext_i && !ext_j) continue;  // only third-block pins outside
    const VertexId size_in_b = local.net_size(e);
    const Weight w = local.net_weight(e);

    if (size_in_b == 1 && single_pin_modeling) {
      const VertexId pin = local.pins(e)[0];
      opts.exclude_from_removal[pin] = true;
      if (parent.net_size(sub.to_parent_net(e)) == 2) {
        // One internal and one external pin: a bridging node buys nothing.
        direct.push_back({pin, w, ext_i});
      } else if (ext_i && ext_j) {
        opts.net_repr[e] = NetRepr::compact_both;
        attach_source.push_back(e);
        attach_sink.push_back(e);
      } else if (ext_i) {
        opts.net_repr[e] = NetRepr::compact_source;
        attach_source.push_back(e);
      } else {
        opts.net_repr[e] = NetRepr::compact_sink;
        attach_sink.push_back(e);
      }
      continue;
    }

    // Attachment needs bridging nodes; sizes 1 and 2 would not get them
    // from the plain variant rules.
    if (size_in_b <= 2) opts.net_repr[e] = NetRepr::force_bridge;
    if (ext_i) attach_source.push_back(e);
    if (ext_j) attach_sink.push_back(e);
  }

  FlowProblem problem;
  problem.model = FlowModel::hypergraph;
  problem.sub = &sub;
  problem.network = build_network(sub, opts);
  for (NetId e : attach_source) {
    const NodeId node = problem.network.bridge_in_of_net[e];
    require(node != kInvalidNode, "hypergraph model: missing bridge-in node");
    problem.source_attachments.push_back({node, kInfiniteCapacity});
  }
  for (NetId e : attach_sink) {
    const NodeId node = problem.network.bridge_out_of_net[e];
    require(node != kInvalidNode, "hypergraph model: missing bridge-out node");
    problem.sink_attachments.push_back({node, kInfiniteCapacity});
  }
  for (const DirectAttachment& d : direct) {
    const NodeId node = problem.network.node_of_vertex[d.local_pin];
    require(node != kInvalidNode, "hypergraph model: direct attachment pin removed");
    if (d.to_source)
      problem.source_attachments.push_back({node, d.capacity});
    else
      problem.sink_attachments.push_back({node, d.capacity});
  }
  return problem;
}

inline FlowProblem build_flow_problem(const SubHypergraph& sub,
                                      const FlowProblemOptions& opts) {
  if (opts.model == FlowModel::graph)
    return build_graph_model_problem(sub, opts.variant);
  return build_hypergraph_model_problem(sub, opts.variant, opts.single_pin_modeling);
}

// Plain (s, t) cut problem between two hypernodes, used for cut-equivalence
// checks. If a terminal was elided by the reduced variant, the problem turns
// multi-terminal through the star nodes of its incident nets.
inline FlowProblem build_st_problem(const SubHypergraph& sub, VertexId local_s,
                                    VertexId local_t, NetworkVariant variant) {
  require_input(local_s != local_t, "st problem: source equals sink");
  FlowProblem problem;
  problem.model = FlowModel::graph;
  problem.sub = &sub;
  problem.forced_source_vertex = local_s;
  problem.forced_sink_vertex = local_t;
  problem.network = build_network(sub, {variant, {}, {}});
  const FlowNetwork& net = problem.network;
  const Hypergraph& local = sub.local();

  auto attach = [&](VertexId v, bool source_side) {
    auto& list = source_side ? problem.source_attachments : problem.sink_attachments;
    if (net.node_of_vertex[v] != kInvalidNode) {
      list.push_back({net.node_of_vertex[v], kInfiniteCapacity});
      return;
    }
    for (NetId e : local.incident_nets(v)) {
      const NodeId node =
          source_side ? net.bridge_in_of_net[e] : net.bridge_out_of_net[e];
      if (node != kInvalidNode) list.push_back({node, kInfiniteCapacity});
    }
  };
  attach(local_s, true);
  attach(local_t, false);
  return problem;
}

}  // namespace flowpart
