// Pairwise flow refinement: corridor construction around the cut, the
// adaptive corridor-size loop, and k-way scheduling over active blocks.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "flowpart/common.hpp"
#include "flowpart/flow_problem.hpp"
#include "flowpart/hypergraph.hpp"
#include "flowpart/maxflow.hpp"
#include "flowpart/mincut.hpp"
#include "flowpart/partition.hpp"
#include "flowpart/quotient.hpp"
#include "flowpart/subhypergraph.hpp"

namespace flowpart {

struct RefinerConfig {
  int alpha_prime = 16;  // must be a power of two
  FlowModel model = FlowModel::hypergraph;
  NetworkVariant variant = NetworkVariant::reduced;
  bool single_pin_modeling = true;
  bool most_balanced = true;
  int mbmc_reps = 8;
  bool s1 = true;
  bool s2 = true;
  bool s3 = true;
  Weight s2_cut_threshold = 10;

  void validate() const {
    require_input(alpha_prime >= 1 && (alpha_prime & (alpha_prime - 1)) == 0,
                  "refiner: alpha-prime must be a power of two");
    require_input(mbmc_reps >= 0, "refiner: negative mbmc reps");
    require_input(s2_cut_threshold >= 0, "refiner: negative s2 threshold");
  }
};

// Whether a block pair ever produced an improvement. Persists across the
// levels of one partitioning run; a new run starts from a clean slate.
class PairHistory {
 public:
  explicit PairHistory(int k) : k_(k), improved_(static_cast<std::size_t>(k) * k, false) {}
  bool improved(BlockId i, BlockId j) const {
    return improved_[static_cast<std::size_t>(std::min(i, j)) * k_ + std::max(i, j)];
  }
  void record(BlockId i, BlockId j) {
    improved_[static_cast<std::size_t>(std::min(i, j)) * k_ + std::max(i, j)] = true;
  }

 private:
  int k_;
  std::vector<char> improved_;
};

struct RefineStats {
  std::int64_t flow_calls = 0;
  std::int64_t corridors = 0;
  std::int64_t accepted = 0;
  std::int64_t pairs_refined = 0;
  std::int64_t pairs_skipped_s1 = 0;
  std::int64_t pairs_skipped_s2 = 0;
  double flow_seconds = 0.0;
};

struct RefineContext {
  int invocation_index = 0;  // how many flow refinements ran before this one
  bool finest_level = true;
  PairHistory* history = nullptr;
  RefineStats* stats = nullptr;
  std::mt19937_64* rng = nullptr;
};

struct Corridor {
  std::vector<VertexId> vertices;  // parent ids, both sides
  Weight weight_i = 0, weight_j = 0;
  double eps_prime = 0.0;
};

// Size-bounded BFS around the pair cut. Each side may grow until moving it
// entirely to the other side would still respect the relaxed balance bound
// (1 + eps') * ceil((c(V_i) + c(V_j)) / 2). Vertices that no longer fit are
// passed over without blocking the rest of the queue.
inline Corridor compute_corridor(const Hypergraph& hg, const PartitionK& part,
                                 BlockId i, BlockId j, double eps_prime,
                                 std::mt19937_64& rng) {
  Corridor corridor;
  corridor.eps_prime = eps_prime;
  const Weight pair_total = part.block_weight(i) + part.block_weight(j);
  const Weight half = ceil_average_weight(pair_total, 2);
  const double relaxed = (1.0 + eps_prime) * static_cast<double>(half);

  std::vector<char> visited(hg.num_vertices(), false);
  std::vector<char> net_seen(hg.num_nets(), false);

  auto grow = [&](BlockId side, BlockId other) {
    const double bound_real = relaxed - static_cast<double>(part.block_weight(other));
    const Weight bound =
        bound_real <= 0 ? 0 : static_cast<Weight>(std::floor(bound_real + 1e-9));
    std::vector<VertexId> seeds;
    for (NetId e = 0; e < hg.num_nets(); ++e) {
      bool in_side = false, in_other = false;
      for (VertexId v : hg.pins(e)) {
        in_side |= part.block(v) == side;
        in_other |= part.block(v) == other;
        if (in_side && in_other) break;
      }
      if (!(in_side && in_other)) continue;
      for (VertexId v : hg.pins(e)) {
        if (part.block(v) == side && !visited[v]) {
          visited[v] = true;
          seeds.push_back(v);
        }
      }
    }
    std::shuffle(seeds.begin(), seeds.end(), rng);
    std::fill(net_seen.begin(), net_seen.end(), false);

    Weight used = 0;
    std::vector<VertexId> level = std::move(seeds);
    std::vector<VertexId> next;
    std::vector<VertexId> picked;
    while (!level.empty()) {
      next.clear();
      for (VertexId v : level) {
        if (hg.vertex_weight(v) > bound - used) continue;  // skipped, not blocking
        used += hg.vertex_weight(v);
        picked.push_back(v);
        for (NetId e : hg.incident_nets(v)) {
          if (net_seen[e]) continue;
          net_seen[e] = true;
          for (VertexId p : hg.pins(e)) {
            if (!visited[p] && part.block(p) == side) {
              visited[p] = true;
              next.push_back(p);
            }
          }
        }
      }
      std::shuffle(next.begin(), next.end(), rng);
      level = next;
    }
    return std::make_pair(picked, used);
  };

  auto [side_i, used_i] = grow(i, j);
  auto [side_j, used_j] = grow(j, i);
  corridor.weight_i = used_i;
  corridor.weight_j = used_j;
  corridor.vertices = std::move(side_i);
  corridor.vertices.insert(corridor.vertices.end(), side_j.begin(), side_j.end());
  return corridor;
}

namespace refine_detail {

// Exact km1 contribution of the given parent nets under the current
// assignment, with corridor members optionally overridden by a candidate.
inline Weight nets_km1(const Hypergraph& hg, const PartitionK& part,
                       const SubHypergraph& sub, const std::vector<NetId>& parent_nets,
                       const LocalBipartition* candidate) {
  thread_local std::vector<int> stamp;
  thread_local int round = 0;
  if (static_cast<int>(stamp.size()) < part.k()) stamp.assign(part.k(), 0);
  Weight total = 0;
  for (NetId e : parent_nets) {
    ++round;
    int lambda = 0;
    for (VertexId p : hg.pins(e)) {
      BlockId b = part.block(p);
      if (candidate) {
        const VertexId local = sub.to_local_vertex(p);
        if (local != kInvalidVertex)
          b = candidate->source_side[local] ? sub.block_i() : sub.block_j();
      }
      if (stamp[b] != round) {
        stamp[b] = round;
        ++lambda;
      }
    }
    total += static_cast<Weight>(lambda - 1) * hg.net_weight(e);
  }
  return total;
}

struct CandidateEval {
  Weight km1 = 0;
  Weight worst_block = 0;  // heaviest block weight under the candidate
  Weight weight_i = 0, weight_j = 0;
};

inline CandidateEval evaluate_candidate(const Hypergraph& hg, const PartitionK& part,
                                        const SubHypergraph& sub,
                                        const std::vector<NetId>& parent_nets,
                                        Weight km1_current,
                                        const LocalBipartition& candidate) {
  CandidateEval eval;
  const Weight before = nets_km1(hg, part, sub, parent_nets, nullptr);
  const Weight after = nets_km1(hg, part, sub, parent_nets, &candidate);
  eval.km1 = km1_current - before + after;

  Weight w_i = part.block_weight(sub.block_i());
  Weight w_j = part.block_weight(sub.block_j());
  const Hypergraph& local = sub.local();
  for (VertexId v = 0; v < local.num_vertices(); ++v) {
    const BlockId cur = part.block(sub.to_parent_vertex(v));
    const BlockId tgt = candidate.source_side[v] ? sub.block_i() : sub.block_j();
    if (cur == tgt) continue;
    const Weight w = local.vertex_weight(v);
    if (tgt == sub.block_i()) {
      w_i += w;
      w_j -= w;
    } else {
      w_j += w;
      w_i -= w;
    }
  }
  eval.weight_i = w_i;
  eval.weight_j = w_j;
  Weight worst = std::max(w_i, w_j);
  for (BlockId b = 0; b < part.k(); ++b)
    if (b != sub.block_i() && b != sub.block_j())
      worst = std::max(worst, part.block_weight(b));
  eval.worst_block = worst;
  return eval;
}

}  // namespace refine_detail

// One adaptive refinement of the block pair (i, j). Grows a corridor with
// relaxation alpha * eps, solves the flow problem, extracts a (most
// balanced) minimum cut and accepts it when it improves the connectivity
// metric within balance, or improves balance. The corridor relaxation
// doubles after an accepted cut (capped at alpha') and halves otherwise;
// with S3 the loop stops once the flow value no longer beats the pair cut.
// Acceptance always re-evaluates exact metrics on the hypergraph; flow
// values are never trusted for the decision.
inline bool refine_pair(const Hypergraph& hg, PartitionK& part, BlockId i, BlockId j,
                        const RefinerConfig& cfg, RefineContext& ctx,
                        Weight& current_km1) {
  std::mt19937_64& rng = *ctx.rng;
  Weight worst_best = part.heaviest_block();
  bool improved_any = false;

  int alpha = cfg.alpha_prime;
  while (alpha >= 1) {
    bool accepted = false;
    bool s3_stop = false;
    Corridor corridor = compute_corridor(hg, part, i, j, alpha * part.epsilon(), rng);
    // The bound shrinks with alpha, so an empty corridor stays empty.
    if (corridor.vertices.empty()) break;
    if (ctx.stats) ++ctx.stats->corridors;
    SubHypergraph sub = induced_subhypergraph(hg, part, i, j, corridor.vertices);
    FlowProblem problem = build_flow_problem(
        sub, {cfg.model, cfg.variant, cfg.single_pin_modeling});

    const auto start = std::chrono::steady_clock::now();
    FlowState state = max_flow(problem);
    if (ctx.stats) {
      ++ctx.stats->flow_calls;
      ctx.stats->flow_seconds +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
    }

    LocalBipartition candidate;
    if (cfg.most_balanced) {
      const PQDag dag = build_pq_dag(state);
      candidate = most_balanced_min_cut(problem, state, dag, part, cfg.mbmc_reps, rng);
    } else {
      candidate = extract_bipartition(problem, state);
    }

    std::vector<NetId> parent_nets(sub.local().num_nets());
    for (NetId e = 0; e < sub.local().num_nets(); ++e)
      parent_nets[e] = sub.to_parent_net(e);
    const auto eval = refine_detail::evaluate_candidate(hg, part, sub, parent_nets,
                                                        current_km1, candidate);

    const bool keeps_blocks = eval.weight_i > 0 && eval.weight_j > 0;
    const bool cut_improved = keeps_blocks && eval.km1 < current_km1 &&
                              eval.worst_block <= part.l_max();
    const bool balance_improved = keeps_blocks && eval.worst_block < worst_best;
    if (cut_improved || balance_improved) {
      for (VertexId v = 0; v < sub.local().num_vertices(); ++v) {
        const VertexId pv = sub.to_parent_vertex(v);
        const BlockId tgt = candidate.source_side[v] ? i : j;
        if (part.block(pv) != tgt) part.move(pv, tgt, hg);
      }
      require(part.block_weight(i) == eval.weight_i &&
                  part.block_weight(j) == eval.weight_j,
              "refine_pair: weight bookkeeping diverged");
      current_km1 = eval.km1;
      worst_best = std::min(worst_best, eval.worst_block);
      accepted = true;
      improved_any = true;
      if (ctx.stats) ++ctx.stats->accepted;
    }
    // S3: a min cut no better than the pair cut it would replace means
    // resized corridors cannot pay off either.
    if (cfg.s3) s3_stop = state.value() >= pair_cut_weight(hg, part, i, j);
    alpha = accepted ? std::min(2 * alpha, cfg.alpha_prime) : alpha / 2;
    if (s3_stop) break;
  }
  return improved_any;
}

// Scheduler over quotient-graph pairs. A round visits every adjacent pair
// with an active block; improvements reactivate both blocks for the next
// round. S1 gates rounds after the first, from the second flow invocation
// of a run onward: a pair is revisited only if some earlier execution of it
// improved the partition. Every pair still gets its first-round audition at
// each invocation, which keeps the history growing level by level. S2 skips
// small cuts on all but the finest level.
inline bool refine_kway(const Hypergraph& hg, PartitionK& part,
                        const RefinerConfig& cfg, RefineContext& ctx) {
  cfg.validate();
  require(ctx.rng != nullptr, "refine_kway: missing rng");
  Weight current_km1 = km1_metric(hg, part);
  const Weight km1_in = current_km1;
  const Weight worst_in = part.heaviest_block();

  std::vector<char> active(part.k(), true);
  bool improved_any = false;
  int rounds = 0;
  while (true) {
    require(++rounds <= 64 * part.k() + 64, "refine_kway: round ceiling hit");
    const QuotientGraph quotient = QuotientGraph::build(hg, part);
    std::vector<char> next_active(part.k(), false);
    bool round_improved = false;
    for (const auto& [i, j] : quotient.edges) {
      if (!active[i] && !active[j]) continue;
      if (cfg.s1 && ctx.invocation_index > 0 && rounds > 1 && ctx.history &&
          !ctx.history->improved(i, j)) {
        if (ctx.stats) ++ctx.stats->pairs_skipped_s1;
        continue;
      }
      const Weight pair_cut = pair_cut_weight(hg, part, i, j);
      if (pair_cut == 0) continue;
      if (cfg.s2 && !ctx.finest_level && pair_cut < cfg.s2_cut_threshold) {
        if (ctx.stats) ++ctx.stats->pairs_skipped_s2;
        continue;
      }
      if (ctx.stats) ++ctx.stats->pairs_refined;
      if (refine_pair(hg, part, i, j, cfg, ctx, current_km1)) {
        next_active[i] = next_active[j] = true;
        round_improved = true;
        improved_any = true;
        if (ctx.history) ctx.history->record(i, j);
      }
    }
    if (!round_improved) break;
    active = std::move(next_active);
  }

  require(current_km1 == km1_metric(hg, part), "refine_kway: km1 accounting diverged");
  require(current_km1 <= km1_in, "refine_kway: connectivity metric got worse");
  require(part.heaviest_block() <= std::max(part.l_max(), worst_in),
          "refine_kway: balance got worse");
  return improved_any;
}

}  // namespace flowpart
