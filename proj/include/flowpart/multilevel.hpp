// Multilevel partitioner: heavy-edge coarsening, portfolio initial
// partitioning, boundary FM with rollback, and per-level flow refinement.
#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/hypergraph.hpp"
#include "flowpart/partition.hpp"
#include "flowpart/refiner.hpp"

namespace flowpart {

struct Hierarchy {
  std::vector<Hypergraph> levels;               // [0] = input, back() = coarsest
  std::vector<std::vector<VertexId>> to_coarse;  // to_coarse[l][v] = id in level l+1
};

namespace multilevel_detail {

// Contract matched pairs; merge parallel nets (weights summed) and drop nets
// that collapse to a single pin. Returns the coarse hypergraph and the map.
inline std::pair<Hypergraph, std::vector<VertexId>> contract(
    const Hypergraph& hg, const std::vector<VertexId>& match) {
  const VertexId n = hg.num_vertices();
  std::vector<VertexId> coarse_of(n, kInvalidVertex);
  VertexId next = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (coarse_of[v] != kInvalidVertex) continue;
    coarse_of[v] = next;
    if (match[v] != kInvalidVertex && match[v] > v) coarse_of[match[v]] = next;
    ++next;
  }
  std::vector<Weight> weights(next, 0);
  for (VertexId v = 0; v < n; ++v) weights[coarse_of[v]] += hg.vertex_weight(v);

  std::map<std::vector<VertexId>, Weight> merged;
  std::vector<VertexId> pins;
  for (NetId e = 0; e < hg.num_nets(); ++e) {
    pins.clear();
    for (VertexId p : hg.pins(e)) pins.push_back(coarse_of[p]);
    std::sort(pins.begin(), pins.end());
    pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
    if (pins.size() < 2) continue;  // single-pin nets never affect km1
    merged[pins] += hg.net_weight(e);
  }
  std::vector<std::vector<VertexId>> nets;
  std::vector<Weight> net_weights;
  nets.reserve(merged.size());
  for (auto& [key, w] : merged) {
    nets.push_back(key);
    net_weights.push_back(w);
  }
  return {Hypergraph(next, std::move(nets), std::move(net_weights), std::move(weights)),
          std::move(coarse_of)};
}

// Heavy-edge matching: neighbours rated by sum of w(e) / (|e| - 1) over
// shared nets, subject to the contraction weight cap.
inline std::vector<VertexId> heavy_edge_matching(const Hypergraph& hg, Weight cap,
                                                 std::mt19937_64& rng) {
  const VertexId n = hg.num_vertices();
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<VertexId> match(n, kInvalidVertex);
  std::vector<double> score(n, 0.0);
  std::vector<VertexId> touched;
  for (VertexId v : order) {
    if (match[v] != kInvalidVertex) continue;
    touched.clear();
    for (NetId e : hg.incident_nets(v)) {
      if (hg.net_size(e) < 2) continue;
      const double rating =
          static_cast<double>(hg.net_weight(e)) / static_cast<double>(hg.net_size(e) - 1);
      for (VertexId u : hg.pins(e)) {
        if (u == v || match[u] != kInvalidVertex) continue;
        if (hg.vertex_weight(u) + hg.vertex_weight(v) > cap) continue;
        if (score[u] == 0.0) touched.push_back(u);
        score[u] += rating;
      }
    }
    VertexId best = kInvalidVertex;
    double best_score = 0.0;
    for (VertexId u : touched) {
      if (score[u] > best_score ||
          (score[u] == best_score && best != kInvalidVertex && u < best)) {
        best = u;
        best_score = score[u];
      }
      score[u] = 0.0;
    }
    if (best != kInvalidVertex) {
      match[v] = best;
      match[best] = v;
    }
  }
  return match;
}

// Fallback when rating-based matching stalls: pair arbitrary unmatched
// vertices that fit under the cap.
inline int random_matching(const Hypergraph& hg, Weight cap, std::mt19937_64& rng,
                           std::vector<VertexId>& match) {
  std::vector<VertexId> unmatched;
  for (VertexId v = 0; v < hg.num_vertices(); ++v)
    if (match[v] == kInvalidVertex) unmatched.push_back(v);
  std::shuffle(unmatched.begin(), unmatched.end(), rng);
  int paired = 0;
  for (std::size_t a = 0, b = 1; b < unmatched.size();) {
    const VertexId u = unmatched[a], w = unmatched[b];
    if (hg.vertex_weight(u) + hg.vertex_weight(w) <= cap) {
      match[u] = w;
      match[w] = u;
      ++paired;
      a = b + 1;
      b = a + 1;
    } else {
      ++b;
    }
  }
  return paired;
}

}  // namespace multilevel_detail

inline Hierarchy coarsen(const Hypergraph& hg, VertexId target, std::mt19937_64& rng) {
  require_input(target >= 2, "coarsen: target below 2");
  Hierarchy h;
  h.levels.push_back(hg);
  const Weight cap =
      3 * ceil_average_weight(hg.total_vertex_weight(), std::max<VertexId>(target, 2));
  while (h.levels.back().num_vertices() > target) {
    const Hypergraph& cur = h.levels.back();
    std::vector<VertexId> match = multilevel_detail::heavy_edge_matching(cur, cap, rng);
    int paired = 0;
    for (VertexId v = 0; v < cur.num_vertices(); ++v)
      if (match[v] != kInvalidVertex && match[v] > v) ++paired;
    if (paired * 100 < cur.num_vertices())  // stalled, pair blindly instead
      paired += multilevel_detail::random_matching(cur, cap, rng, match);
    if (paired == 0) break;
    auto [coarse, map] = multilevel_detail::contract(cur, match);
    if (coarse.num_vertices() >= cur.num_vertices()) break;
    h.to_coarse.push_back(std::move(map));
    h.levels.push_back(std::move(coarse));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Initial partitioning: a portfolio of random balanced assignments and greedy
// BFS region growing; the best attempt wins (feasible first, then km1, then
// the heaviest block).
// ---------------------------------------------------------------------------

namespace multilevel_detail {

inline std::vector<BlockId> random_balanced(const Hypergraph& hg, int k, Weight l_max,
                                            std::mt19937_64& rng) {
  const VertexId n = hg.num_vertices();
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<BlockId> block(n, 0);
  std::vector<Weight> load(k, 0);
  for (VertexId idx = 0; idx < n; ++idx) {
    const VertexId v = order[idx];
    BlockId target = 0;
    if (idx < k) {
      target = static_cast<BlockId>(idx);  // guarantee non-empty blocks
    } else {
      BlockId best = 0;
      for (BlockId b = 1; b < k; ++b)
        if (load[b] < load[best]) best = b;
      target = best;
      for (BlockId b = 0; b < k; ++b) {  // prefer a block it fits into
        if (load[b] + hg.vertex_weight(v) <= l_max &&
            (load[target] + hg.vertex_weight(v) > l_max || load[b] < load[target])) {
          target = b;
        }
      }
    }
    block[v] = target;
    load[target] += hg.vertex_weight(v);
  }
  return block;
}

inline std::vector<BlockId> greedy_bfs(const Hypergraph& hg, int k, std::mt19937_64& rng) {
  const VertexId n = hg.num_vertices();
  std::vector<BlockId> block(n, kInvalidBlock);
  std::vector<char> queued(n, false);
  const Weight quota = ceil_average_weight(hg.total_vertex_weight(), k);
  std::vector<VertexId> pool(n);
  for (VertexId v = 0; v < n; ++v) pool[v] = v;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::size_t pool_pos = 0;
  auto next_seed = [&]() -> VertexId {
    while (pool_pos < pool.size() && block[pool[pool_pos]] != kInvalidBlock) ++pool_pos;
    return pool_pos < pool.size() ? pool[pool_pos] : kInvalidVertex;
  };

  std::vector<Weight> load(k, 0);
  for (BlockId b = 0; b < k; ++b) {
    if (b == k - 1) {  // last block takes everything left
      for (VertexId v = 0; v < n; ++v)
        if (block[v] == kInvalidBlock) {
          block[v] = b;
          load[b] += hg.vertex_weight(v);
        }
      break;
    }
    std::queue<VertexId> frontier;
    VertexId seed = next_seed();
    if (seed == kInvalidVertex) break;
    frontier.push(seed);
    queued[seed] = true;
    while (load[b] < quota) {
      if (frontier.empty()) {
        const VertexId jump = next_seed();
        if (jump == kInvalidVertex) break;
        if (!queued[jump]) {
          frontier.push(jump);
          queued[jump] = true;
        } else {
          ++pool_pos;
          continue;
        }
      }
      const VertexId v = frontier.front();
      frontier.pop();
      if (block[v] != kInvalidBlock) continue;
      block[v] = b;
      load[b] += hg.vertex_weight(v);
      for (NetId e : hg.incident_nets(v))
        for (VertexId p : hg.pins(e))
          if (block[p] == kInvalidBlock && !queued[p]) {
            frontier.push(p);
            queued[p] = true;
          }
    }
    std::fill(queued.begin(), queued.end(), false);
  }
  // Any stragglers (k-1 quota loop exhausted the pool early) go to the
  // lightest block; seed blocks that stayed empty steal the lightest vertex.
  for (VertexId v = 0; v < n; ++v) {
    if (block[v] != kInvalidBlock) continue;
    BlockId lightest = 0;
    for (BlockId b = 1; b < k; ++b)
      if (load[b] < load[lightest]) lightest = b;
    block[v] = lightest;
    load[lightest] += hg.vertex_weight(v);
  }
  for (BlockId b = 0; b < k; ++b) {
    if (load[b] > 0) continue;
    BlockId donor = 0;
    VertexId pick = kInvalidVertex;
    for (VertexId v = 0; v < n; ++v) {
      const BlockId owner = block[v];
      Weight owner_load = load[owner];
      if (owner_load <= hg.vertex_weight(v)) continue;  // would empty the donor
      if (pick == kInvalidVertex || hg.vertex_weight(v) < hg.vertex_weight(pick)) {
        pick = v;
        donor = owner;
      }
    }
    require(pick != kInvalidVertex, "greedy_bfs: cannot populate every block");
    block[pick] = b;
    load[donor] -= hg.vertex_weight(pick);
    load[b] += hg.vertex_weight(pick);
  }
  return block;
}

}  // namespace multilevel_detail

inline PartitionK initial_partition(const Hypergraph& hg, int k, double eps,
                                    int attempts, std::mt19937_64& rng) {
  require_input(k >= 2, "initial_partition: k must be at least 2");
  require_input(hg.num_vertices() >= k, "initial_partition: fewer vertices than blocks");
  require_input(attempts >= 1, "initial_partition: needs at least one attempt");
  const Weight l_max = max_feasible_block_weight(hg.total_vertex_weight(), k, eps);

  std::optional<PartitionK> best;
  Weight best_km1 = 0;
  bool best_feasible = false;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<BlockId> block = (attempt % 2 == 0)
                                     ? multilevel_detail::random_balanced(hg, k, l_max, rng)
                                     : multilevel_detail::greedy_bfs(hg, k, rng);
    PartitionK part(hg, k, eps, block);
    const Weight km1 = km1_metric(hg, part);
    const bool feasible = part.is_balanced();
    bool better = false;
    if (!best) {
      better = true;
    } else if (feasible != best_feasible) {
      better = feasible;
    } else if (feasible) {
      better = km1 < best_km1 ||
               (km1 == best_km1 && part.heaviest_block() < best->heaviest_block());
    } else {
      better = part.heaviest_block() < best->heaviest_block() ||
               (part.heaviest_block() == best->heaviest_block() && km1 < best_km1);
    }
    if (better) {
      best = std::move(part);
      best_km1 = km1;
      best_feasible = feasible;
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Boundary FM with negative-gain moves and rollback to the best prefix.
// Repeats passes until one yields no improvement. Never breaks balance and
// never empties a block.
// ---------------------------------------------------------------------------

inline bool fm_pass(const Hypergraph& hg, PartitionK& part, std::mt19937_64& rng) {
  const VertexId n = hg.num_vertices();
  const int k = part.k();
  const Weight l_max = part.l_max();
  bool improved_any = false;

  PinCountTable table(hg, part);
  std::vector<int> block_size(k, 0);
  for (VertexId v = 0; v < n; ++v) ++block_size[part.block(v)];

  struct Entry {
    Weight gain;  // negated km1 delta, larger is better
    std::uint64_t tie;
    VertexId v;
    BlockId target;
    bool operator<(const Entry& o) const {
      return gain < o.gain || (gain == o.gain && tie < o.tie);
    }
  };

  auto best_move = [&](VertexId v) -> std::optional<std::pair<Weight, BlockId>> {
    const BlockId from = part.block(v);
    if (block_size[from] <= 1) return std::nullopt;
    std::optional<std::pair<Weight, BlockId>> best;
    for (BlockId b = 0; b < k; ++b) {
      if (b == from) continue;
      if (part.block_weight(b) + hg.vertex_weight(v) > l_max) continue;
      const Weight gain = -table.move_delta(hg, v, from, b);
      if (!best || gain > best->first) best = {gain, b};
    }
    return best;
  };

  auto is_boundary = [&](VertexId v) {
    for (NetId e : hg.incident_nets(v))
      if (table.lambda(e) > 1) return true;
    return false;
  };

  while (true) {
    std::priority_queue<Entry> heap;
    std::vector<char> locked(n, false);
    auto push_vertex = [&](VertexId v) {
      if (locked[v]) return;
      if (auto mv = best_move(v)) heap.push({mv->first, rng(), v, mv->second});
    };
    for (VertexId v = 0; v < n; ++v)
      if (is_boundary(v)) push_vertex(v);

    struct Move {
      VertexId v;
      BlockId from, to;
    };
    std::vector<Move> log;
    Weight balance = 0;  // cumulative km1 delta of the log
    Weight best_balance = 0;
    std::size_t best_prefix = 0;

    while (!heap.empty()) {
      const Entry top = heap.top();
      heap.pop();
      if (locked[top.v]) continue;
      const auto fresh = best_move(top.v);
      if (!fresh) continue;
      if (fresh->first != top.gain || fresh->second != top.target) {
        heap.push({fresh->first, rng(), top.v, fresh->second});
        continue;
      }
      const BlockId from = part.block(top.v);
      const BlockId to = top.target;
      balance += table.move_delta(hg, top.v, from, to);
      table.apply_move(hg, top.v, from, to);
      part.move(top.v, to, hg);
      --block_size[from];
      ++block_size[to];
      locked[top.v] = true;
      log.push_back({top.v, from, to});
      if (balance < best_balance) {
        best_balance = balance;
        best_prefix = log.size();
      }
      for (NetId e : hg.incident_nets(top.v))
        for (VertexId p : hg.pins(e))
          if (!locked[p] && is_boundary(p)) push_vertex(p);
    }

    for (std::size_t idx = log.size(); idx > best_prefix; --idx) {
      const Move& m = log[idx - 1];
      table.apply_move(hg, m.v, m.to, m.from);
      part.move(m.v, m.from, hg);
      --block_size[m.to];
      ++block_size[m.from];
    }
    if (best_balance < 0) {
      improved_any = true;
    } else {
      break;
    }
  }
  return improved_any;
}

// ---------------------------------------------------------------------------
// Driver.
// ---------------------------------------------------------------------------

struct PartitionerConfig {
  int k = 2;
  double epsilon = 0.03;
  std::uint64_t seed = 1;
  bool enable_fm = true;
  bool enable_flows = true;
  RefinerConfig flow;
  int initial_attempts = 32;
  VertexId coarsen_target = 0;  // 0 picks max(2k, 160)
  int flow_levels = -1;         // run flows on the finest L levels; -1 = all

  void validate() const {
    require_input(k >= 2, "partition: k must be at least 2");
    require_input(epsilon >= 0.0, "partition: negative epsilon");
    require_input(initial_attempts >= 1, "partition: needs at least one attempt");
    flow.validate();
  }
};

struct PartitionResult {
  PartitionK part;
  Weight km1 = 0;
  Weight cut = 0;
  double imbalance_value = 0.0;
  bool balanced = false;
  int levels = 0;
  RefineStats stats;
  double seconds = 0.0;  // wall clock; informational only
};

inline PartitionK project_partition(const Hypergraph& finer,
                                    const std::vector<VertexId>& to_coarse,
                                    const PartitionK& coarse) {
  std::vector<BlockId> block(finer.num_vertices());
  for (VertexId v = 0; v < finer.num_vertices(); ++v)
    block[v] = coarse.block(to_coarse[v]);
  return PartitionK(finer, coarse.k(), coarse.epsilon(), block);
}

inline PartitionResult partition(const Hypergraph& hg, const PartitionerConfig& cfg) {
  cfg.validate();
  require_input(hg.num_vertices() >= cfg.k, "partition: fewer vertices than blocks");
  const auto t0 = std::chrono::steady_clock::now();

  std::mt19937_64 coarsen_rng(derive_seed(cfg.seed, 1));
  std::mt19937_64 init_rng(derive_seed(cfg.seed, 2));
  std::mt19937_64 fm_rng(derive_seed(cfg.seed, 3));
  std::mt19937_64 flow_rng(derive_seed(cfg.seed, 4));

  const VertexId target = cfg.coarsen_target > 0
                              ? cfg.coarsen_target
                              : std::max<VertexId>(2 * cfg.k, 160);
  Hierarchy h = coarsen(hg, std::max<VertexId>(target, cfg.k), coarsen_rng);

  PartitionK part = initial_partition(h.levels.back(), cfg.k, cfg.epsilon,
                                      cfg.initial_attempts, init_rng);

  PairHistory history(cfg.k);
  RefineStats stats;
  int invocation = 0;
  const int num_levels = static_cast<int>(h.levels.size());
  for (int level = num_levels - 1; level >= 0; --level) {
    if (level < num_levels - 1)
      part = project_partition(h.levels[level], h.to_coarse[level], part);
    const Hypergraph& cur = h.levels[level];
    if (cfg.enable_fm) fm_pass(cur, part, fm_rng);
    const bool flows_here =
        cfg.enable_flows && (cfg.flow_levels < 0 || level < cfg.flow_levels);
    if (flows_here) {
      RefineContext ctx;
      ctx.invocation_index = invocation;
      ctx.finest_level = level == 0;
      ctx.history = &history;
      ctx.stats = &stats;
      ctx.rng = &flow_rng;
      refine_kway(cur, part, cfg.flow, ctx);
      ++invocation;
    }
  }

  PartitionResult result;
  result.part = std::move(part);
  result.km1 = km1_metric(hg, result.part);
  result.cut = cut_metric(hg, result.part);
  result.imbalance_value = imbalance(result.part);
  result.balanced = result.part.is_balanced();
  result.levels = num_levels;
  result.stats = stats;
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace flowpart
