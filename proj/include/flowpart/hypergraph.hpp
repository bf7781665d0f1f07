// Static hypergraph with dense 0-based ids and integer weights.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "flowpart/common.hpp"

namespace flowpart {

class Hypergraph {
 public:
  Hypergraph() = default;

  // Unit weights are used for any weight vector left empty. Pin order within
  // a net is preserved. Throws InputError on empty nets, duplicate pins,
  // out-of-range pins or non-positive weights.
  Hypergraph(VertexId num_vertices, std::vector<std::vector<VertexId>> pins,
             std::vector<Weight> net_weights = {},
             std::vector<Weight> vertex_weights = {})
      : pins_(std::move(pins)),
        net_weight_(std::move(net_weights)),
        vertex_weight_(std::move(vertex_weights)) {
    require_input(num_vertices >= 0, "hypergraph: negative vertex count");
    const NetId m = static_cast<NetId>(pins_.size());
    if (net_weight_.empty()) net_weight_.assign(m, 1);
    if (vertex_weight_.empty()) vertex_weight_.assign(num_vertices, 1);
    require_input(static_cast<NetId>(net_weight_.size()) == m,
                  "hypergraph: net weight count mismatch");
    require_input(static_cast<VertexId>(vertex_weight_.size()) == num_vertices,
                  "hypergraph: vertex weight count mismatch");
    for (Weight w : net_weight_)
      require_input(w > 0, "hypergraph: net weight must be positive");
    for (Weight w : vertex_weight_)
      require_input(w > 0, "hypergraph: vertex weight must be positive");

    incident_nets_.assign(num_vertices, {});
    std::vector<NetId> last_seen(num_vertices, kInvalidNet);
    for (NetId e = 0; e < m; ++e) {
      require_input(!pins_[e].empty(), "hypergraph: net without pins");
      for (VertexId v : pins_[e]) {
        require_input(v >= 0 && v < num_vertices, "hypergraph: pin out of range");
        require_input(last_seen[v] != e, "hypergraph: duplicate pin in net");
        last_seen[v] = e;
        incident_nets_[v].push_back(e);
      }
      num_pins_ += static_cast<std::int64_t>(pins_[e].size());
    }
    total_weight_ = std::accumulate(vertex_weight_.begin(), vertex_weight_.end(),
                                    Weight{0});
  }

  VertexId num_vertices() const { return static_cast<VertexId>(vertex_weight_.size()); }
  NetId num_nets() const { return static_cast<NetId>(pins_.size()); }
  std::int64_t num_pins() const { return num_pins_; }

  std::span<const VertexId> pins(NetId e) const { return pins_[e]; }
  std::span<const NetId> incident_nets(VertexId v) const { return incident_nets_[v]; }

  VertexId net_size(NetId e) const { return static_cast<VertexId>(pins_[e].size()); }
  NetId degree(VertexId v) const { return static_cast<NetId>(incident_nets_[v].size()); }

  Weight net_weight(NetId e) const { return net_weight_[e]; }
  Weight vertex_weight(VertexId v) const { return vertex_weight_[v]; }
  Weight total_vertex_weight() const { return total_weight_; }

  // Cross-checks the redundant incidence structure. Used by tests and by the
  // CLI after ingesting external files.
  void check_consistency() const {
    std::int64_t pin_count = 0;
    for (NetId e = 0; e < num_nets(); ++e) {
      require(!pins_[e].empty(), "consistency: empty net");
      for (VertexId v : pins_[e]) {
        require(v >= 0 && v < num_vertices(), "consistency: pin out of range");
        auto nets = incident_nets(v);
        require(std::find(nets.begin(), nets.end(), e) != nets.end(),
                "consistency: missing reverse incidence");
      }
      pin_count += net_size(e);
    }
    std::int64_t degree_sum = 0;
    for (VertexId v = 0; v < num_vertices(); ++v) degree_sum += degree(v);
    require(pin_count == num_pins_ && degree_sum == num_pins_,
            "consistency: pin count mismatch");
  }

 private:
  std::vector<std::vector<VertexId>> pins_;
  std::vector<std::vector<NetId>> incident_nets_;
  std::vector<Weight> net_weight_;
  std::vector<Weight> vertex_weight_;
  std::int64_t num_pins_ = 0;
  Weight total_weight_ = 0;
};

// Average block weight rounded up; the balance constraint is stated against
// this quantity, not against the real-valued average.
inline Weight ceil_average_weight(Weight total, int k) {
  return (total + k - 1) / k;
}

}  // namespace flowpart
