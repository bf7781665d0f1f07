// k-way partitions, balance bookkeeping and the connectivity metrics.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/hypergraph.hpp"

namespace flowpart {

// Largest integer block weight satisfying c(V_i) <= (1 + eps) * ceil(c(V)/k).
// The tiny slack only absorbs binary representation error of (1 + eps); it
// cannot bridge the gap between two adjacent integers at realistic weights.
inline Weight max_feasible_block_weight(Weight total, int k, double eps) {
  const double l_max = (1.0 + eps) * static_cast<double>(ceil_average_weight(total, k));
  return static_cast<Weight>(std::floor(l_max + 1e-9));
}

class PartitionK {
 public:
  PartitionK() = default;

  PartitionK(const Hypergraph& hg, int k, double epsilon,
             std::vector<BlockId> assignment)
      : k_(k), epsilon_(epsilon), block_of_(std::move(assignment)) {
    require_input(k >= 2, "partition: k must be at least 2");
    require_input(epsilon >= 0.0, "partition: negative epsilon");
    require_input(static_cast<VertexId>(block_of_.size()) == hg.num_vertices(),
                  "partition: assignment size mismatch");
    block_weight_.assign(k, 0);
    for (VertexId v = 0; v < hg.num_vertices(); ++v) {
      require_input(block_of_[v] >= 0 && block_of_[v] < k,
                    "partition: block id out of range");
      block_weight_[block_of_[v]] += hg.vertex_weight(v);
    }
    for (BlockId b = 0; b < k; ++b)
      require_input(block_weight_[b] > 0, "partition: empty block");
    total_weight_ = hg.total_vertex_weight();
    ceil_avg_ = ceil_average_weight(total_weight_, k);
  }

  int k() const { return k_; }
  double epsilon() const { return epsilon_; }
  BlockId block(VertexId v) const { return block_of_[v]; }
  const std::vector<BlockId>& assignment() const { return block_of_; }
  Weight block_weight(BlockId b) const { return block_weight_[b]; }
  const std::vector<Weight>& block_weights() const { return block_weight_; }
  Weight total_weight() const { return total_weight_; }
  Weight ceil_average() const { return ceil_avg_; }

  // Largest feasible block weight: floor((1 + eps) * ceil(c(V)/k)).
  Weight l_max() const {
    return max_feasible_block_weight(total_weight_, k_, epsilon_);
  }

  Weight heaviest_block() const {
    return *std::max_element(block_weight_.begin(), block_weight_.end());
  }

  bool is_balanced() const { return heaviest_block() <= l_max(); }

  void move(VertexId v, BlockId to, const Hypergraph& hg) {
    const BlockId from = block_of_[v];
    if (from == to) return;
    block_weight_[from] -= hg.vertex_weight(v);
    block_weight_[to] += hg.vertex_weight(v);
    block_of_[v] = to;
  }

 private:
  int k_ = 0;
  double epsilon_ = 0.0;
  std::vector<BlockId> block_of_;
  std::vector<Weight> block_weight_;
  Weight total_weight_ = 0;
  Weight ceil_avg_ = 0;
};

inline double imbalance(const std::vector<Weight>& block_weights, Weight ceil_avg) {
  Weight max_w = *std::max_element(block_weights.begin(), block_weights.end());
  return static_cast<double>(max_w) / static_cast<double>(ceil_avg) - 1.0;
}

inline double imbalance(const PartitionK& part) {
  return imbalance(part.block_weights(), part.ceil_average());
}

// Lambda(e): blocks the net touches, ascending. Returns the count.
inline int connectivity(const Hypergraph& hg, const PartitionK& part, NetId e,
                        std::vector<BlockId>* blocks_out = nullptr) {
  thread_local std::vector<BlockId> scratch;
  scratch.clear();
  for (VertexId v : hg.pins(e)) scratch.push_back(part.block(v));
  std::sort(scratch.begin(), scratch.end());
  scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
  if (blocks_out) *blocks_out = scratch;
  return static_cast<int>(scratch.size());
}

// Connectivity metric: sum of (lambda(e) - 1) * omega(e). Single-pin nets
// have lambda = 1 and contribute nothing by construction.
inline Weight km1_metric(const Hypergraph& hg, const PartitionK& part) {
  Weight total = 0;
  for (NetId e = 0; e < hg.num_nets(); ++e)
    total += static_cast<Weight>(connectivity(hg, part, e) - 1) * hg.net_weight(e);
  return total;
}

// Cut metric: total weight of nets spanning more than one block.
inline Weight cut_metric(const Hypergraph& hg, const PartitionK& part) {
  Weight total = 0;
  for (NetId e = 0; e < hg.num_nets(); ++e)
    if (connectivity(hg, part, e) > 1) total += hg.net_weight(e);
  return total;
}

// Total weight of nets with pins in both block i and block j.
inline Weight pair_cut_weight(const Hypergraph& hg, const PartitionK& part,
                              BlockId i, BlockId j) {
  Weight total = 0;
  for (NetId e = 0; e < hg.num_nets(); ++e) {
    bool in_i = false, in_j = false;
    for (VertexId v : hg.pins(e)) {
      in_i |= part.block(v) == i;
      in_j |= part.block(v) == j;
      if (in_i && in_j) break;
    }
    if (in_i && in_j) total += hg.net_weight(e);
  }
  return total;
}

// Pins-per-block table Phi(e, b) with maintained per-net connectivity.
// Backs incremental gain computation in the FM pass and delta re-evaluation
// in the refiners.
class PinCountTable {
 public:
  PinCountTable(const Hypergraph& hg, const PartitionK& part)
      : k_(part.k()), counts_(static_cast<std::size_t>(hg.num_nets()) * k_, 0),
        lambda_(hg.num_nets(), 0) {
    for (NetId e = 0; e < hg.num_nets(); ++e) {
      for (VertexId v : hg.pins(e)) {
        int& c = at(e, part.block(v));
        if (c == 0) ++lambda_[e];
        ++c;
      }
    }
  }

  int pins_in(NetId e, BlockId b) const {
    return counts_[static_cast<std::size_t>(e) * k_ + b];
  }
  int lambda(NetId e) const { return lambda_[e]; }

  // Caller moves v afterwards (or before); the table only needs the net list.
  void apply_move(const Hypergraph& hg, VertexId v, BlockId from, BlockId to) {
    if (from == to) return;
    for (NetId e : hg.incident_nets(v)) {
      int& cf = at(e, from);
      int& ct = at(e, to);
      --cf;
      if (cf == 0) --lambda_[e];
      if (ct == 0) ++lambda_[e];
      ++ct;
    }
  }

  // km1 delta if v moves from its block to target. Negative is improvement.
  Weight move_delta(const Hypergraph& hg, VertexId v, BlockId from, BlockId to) const {
    if (from == to) return 0;
    Weight delta = 0;
    for (NetId e : hg.incident_nets(v)) {
      if (pins_in(e, from) == 1) delta -= hg.net_weight(e);
      if (pins_in(e, to) == 0) delta += hg.net_weight(e);
    }
    return delta;
  }

 private:
  int& at(NetId e, BlockId b) { return counts_[static_cast<std::size_t>(e) * k_ + b]; }

  int k_;
  std::vector<int> counts_;
  std::vector<int> lambda_;
};

}  // namespace flowpart
