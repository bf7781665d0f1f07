// Corridor-induced subhypergraphs with net classification for flow problems.
#pragma once

#include <utility>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/hypergraph.hpp"
#include "flowpart/partition.hpp"

namespace flowpart {

enum class NetClass : std::uint8_t { external, internal, border };

// H_B for a vertex set B drawn from two blocks (i, j) of a k-way partition.
// Nets are restricted to their pins inside B; pins outside B are summarized
// per net by which of the two relevant blocks they occupy.
class SubHypergraph {
 public:
  SubHypergraph() = default;

  const Hypergraph& parent() const { return *parent_; }
  const Hypergraph& local() const { return local_; }
  BlockId block_i() const { return block_i_; }
  BlockId block_j() const { return block_j_; }

  VertexId to_parent_vertex(VertexId local_v) const { return to_parent_v_[local_v]; }
  VertexId to_local_vertex(VertexId parent_v) const { return to_local_v_[parent_v]; }
  NetId to_parent_net(NetId local_e) const { return to_parent_e_[local_e]; }
  NetId to_local_net(NetId parent_e) const { return to_local_e_[parent_e]; }

  NetClass net_class(NetId parent_e) const { return net_class_[parent_e]; }
  NetClass local_net_class(NetId local_e) const {
    return net_class_[to_parent_e_[local_e]];
  }

  // External pins of the net in block i resp. block j. Pins in other blocks
  // are not tracked; they cannot change side in a pairwise problem.
  bool external_in_i(NetId local_e) const { return ext_in_i_[local_e]; }
  bool external_in_j(NetId local_e) const { return ext_in_j_[local_e]; }

  // Internal border: members of B sharing a net with a vertex outside B.
  bool is_internal_border(VertexId local_v) const { return internal_border_[local_v]; }
  const std::vector<VertexId>& internal_border_vertices() const {
    return internal_border_list_;
  }

  // Block (i or j) the member currently belongs to in the parent partition.
  BlockId parent_block_of_local(VertexId local_v) const {
    return in_block_i_[local_v] ? block_i_ : block_j_;
  }
  bool local_in_block_i(VertexId local_v) const { return in_block_i_[local_v]; }

  static SubHypergraph build(const Hypergraph& hg, const PartitionK& part,
                             BlockId i, BlockId j,
                             const std::vector<VertexId>& members) {
    SubHypergraph sub;
    sub.parent_ = &hg;
    sub.block_i_ = i;
    sub.block_j_ = j;
    sub.to_parent_v_ = members;
    sub.to_local_v_.assign(hg.num_vertices(), kInvalidVertex);
    for (VertexId local = 0; local < static_cast<VertexId>(members.size()); ++local) {
      const VertexId v = members[local];
      require_input(v >= 0 && v < hg.num_vertices(), "subhypergraph: member out of range");
      require_input(part.block(v) == i || part.block(v) == j,
                    "subhypergraph: member outside block pair");
      require_input(sub.to_local_v_[v] == kInvalidVertex,
                    "subhypergraph: duplicate member");
      sub.to_local_v_[v] = local;
    }
    sub.in_block_i_.resize(members.size());
    for (std::size_t local = 0; local < members.size(); ++local)
      sub.in_block_i_[local] = part.block(members[local]) == i;

    sub.net_class_.assign(hg.num_nets(), NetClass::external);
    sub.to_local_e_.assign(hg.num_nets(), kInvalidNet);

    std::vector<std::vector<VertexId>> local_pins;
    std::vector<Weight> local_net_weights;
    std::vector<Weight> local_vertex_weights(members.size());
    for (std::size_t local = 0; local < members.size(); ++local)
      local_vertex_weights[local] = hg.vertex_weight(members[local]);

    for (VertexId local = 0; local < static_cast<VertexId>(members.size()); ++local) {
      for (NetId e : hg.incident_nets(members[local])) {
        if (sub.to_local_e_[e] != kInvalidNet) continue;
        const NetId local_e = static_cast<NetId>(local_pins.size());
        sub.to_local_e_[e] = local_e;
        sub.to_parent_e_.push_back(e);
        local_net_weights.push_back(hg.net_weight(e));
        std::vector<VertexId> restricted;
        bool ext_i = false, ext_j = false, has_external = false;
        for (VertexId p : hg.pins(e)) {
          const VertexId lp = sub.to_local_v_[p];
          if (lp != kInvalidVertex) {
            restricted.push_back(lp);
          } else {
            has_external = true;
            ext_i |= part.block(p) == i;
            ext_j |= part.block(p) == j;
          }
        }
        local_pins.push_back(std::move(restricted));
        sub.ext_in_i_.push_back(ext_i);
        sub.ext_in_j_.push_back(ext_j);
        sub.net_class_[e] = has_external ? NetClass::border : NetClass::internal;
      }
    }

    sub.local_ = Hypergraph(static_cast<VertexId>(members.size()),
                            std::move(local_pins), std::move(local_net_weights),
                            std::move(local_vertex_weights));

    sub.internal_border_.assign(members.size(), false);
    for (NetId local_e = 0; local_e < sub.local_.num_nets(); ++local_e) {
      if (sub.local_net_class(local_e) != NetClass::border) continue;
      for (VertexId lp : sub.local_.pins(local_e)) {
        if (!sub.internal_border_[lp]) {
          sub.internal_border_[lp] = true;
          sub.internal_border_list_.push_back(lp);
        }
      }
    }
    return sub;
  }

 private:
  const Hypergraph* parent_ = nullptr;
  Hypergraph local_;
  BlockId block_i_ = 0, block_j_ = 0;
  std::vector<VertexId> to_parent_v_;
  std::vector<VertexId> to_local_v_;
  std::vector<NetId> to_parent_e_;
  std::vector<NetId> to_local_e_;
  std::vector<NetClass> net_class_;
  std::vector<char> ext_in_i_, ext_in_j_;
  std::vector<char> in_block_i_;
  std::vector<char> internal_border_;
  std::vector<VertexId> internal_border_list_;
};

inline SubHypergraph induced_subhypergraph(const Hypergraph& hg,
                                           const PartitionK& part, BlockId i,
                                           BlockId j,
                                           const std::vector<VertexId>& members) {
  return SubHypergraph::build(hg, part, i, j, members);
}

}  // namespace flowpart
