#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "flowpart/maxflow.hpp"
#include "flowpart/mincut.hpp"
#include "flowpart/oracle.hpp"
#include "test_support.hpp"

namespace flowpart {
namespace {

using testing::random_assignment;
using testing::random_hypergraph;
using testing::tiny_example;

SubHypergraph whole_pair(const Hypergraph& hg, const PartitionK& part) {
  std::vector<VertexId> members;
  for (VertexId v = 0; v < hg.num_vertices(); ++v)
    if (part.block(v) == 0 || part.block(v) == 1) members.push_back(v);
  return induced_subhypergraph(hg, part, 0, 1, members);
}

// Plain bipartition cut: nets with pins on both sides.
Weight plain_cut_weight(const Hypergraph& local, const std::vector<char>& side) {
  Weight total = 0;
  for (NetId e = 0; e < local.num_nets(); ++e) {
    bool on_s = false, on_t = false;
    for (VertexId v : local.pins(e)) {
      on_s |= side[v] != 0;
      on_t |= !side[v];
    }
    if (on_s && on_t) total += local.net_weight(e);
  }
  return total;
}

// Corridor cut under the hypergraph model: external pins in V_i count as
// source pins and external pins in V_j as sink pins; third-block pins are
// invisible to the pair.
Weight corridor_cut_weight(const SubHypergraph& sub, const LocalBipartition& bip) {
  const Hypergraph& local = sub.local();
  Weight total = 0;
  for (NetId e = 0; e < local.num_nets(); ++e) {
    bool on_s = false, on_t = false;
    if (sub.local_net_class(e) == NetClass::border) {
      on_s = sub.external_in_i(e);
      on_t = sub.external_in_j(e);
    }
    for (VertexId v : local.pins(e)) {
      on_s |= bip.source_side[v] != 0;
      on_t |= !bip.source_side[v];
    }
    if (on_s && on_t) total += local.net_weight(e);
  }
  return total;
}

// Heaviest block after reassigning the corridor by the given bipartition.
Weight worst_block_weight(const PartitionK& part, const SubHypergraph& sub,
                          const LocalBipartition& bip) {
  std::vector<Weight> weights = part.block_weights();
  const Hypergraph& local = sub.local();
  for (VertexId v = 0; v < local.num_vertices(); ++v) {
    weights[part.block(sub.to_parent_vertex(v))] -= local.vertex_weight(v);
    weights[bip.source_side[v] ? sub.block_i() : sub.block_j()] +=
        local.vertex_weight(v);
  }
  return *std::max_element(weights.begin(), weights.end());
}

// ---------------------------------------------------------------------------
// extraction: the induced bipartition always cuts exactly the flow value
// ---------------------------------------------------------------------------

TEST(MinCut, ExtractionMatchesFlowValueOnStProblems) {
  std::mt19937_64 rng(4242);
  testing::RandomHypergraphSpec spec;
  spec.max_vertices = 10;
  spec.max_nets = 14;
  int removal_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    PartitionK part(hg, 2, 0.9, random_assignment(hg.num_vertices(), 2, rng));
    const SubHypergraph sub = whole_pair(hg, part);

    std::uniform_int_distribution<VertexId> pick(0, hg.num_vertices() - 1);
    const VertexId s = pick(rng);
    VertexId t = pick(rng);
    while (t == s) t = pick(rng);

    for (NetworkVariant variant :
         {NetworkVariant::lawler, NetworkVariant::liu_wong, NetworkVariant::reduced}) {
      const FlowProblem problem = build_st_problem(sub, s, t, variant);
      const FlowState state = max_flow(problem);
      const LocalBipartition bip = extract_bipartition(problem, state);
      EXPECT_EQ(plain_cut_weight(sub.local(), bip.source_side), state.value())
          << "trial " << trial << " variant " << static_cast<int>(variant);
      for (VertexId v = 0; v < hg.num_vertices(); ++v)
        if (problem.network.vertex_removed[v]) {
          ++removal_cases;
          break;
        }
    }
  }
  EXPECT_GT(removal_cases, 0);
}

TEST(MinCut, ExtractionMatchesFlowValueOnHypergraphModel) {
  std::mt19937_64 rng(990);
  testing::RandomHypergraphSpec spec;
  spec.min_vertices = 6;
  for (int trial = 0; trial < 200; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    const int k = 2 + static_cast<int>(rng() % 2);
    PartitionK part(hg, k, 0.9, random_assignment(hg.num_vertices(), k, rng));

    std::vector<VertexId> pair_vertices;
    for (VertexId v = 0; v < hg.num_vertices(); ++v)
      if (part.block(v) <= 1) pair_vertices.push_back(v);
    std::shuffle(pair_vertices.begin(), pair_vertices.end(), rng);
    pair_vertices.resize(1 + rng() % pair_vertices.size());
    const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, pair_vertices);

    for (NetworkVariant variant :
         {NetworkVariant::lawler, NetworkVariant::liu_wong, NetworkVariant::reduced}) {
      for (bool modeling : {false, true}) {
        const FlowProblem problem =
            build_flow_problem(sub, {FlowModel::hypergraph, variant, modeling});
        const FlowState state = max_flow(problem);
        const LocalBipartition bip = extract_bipartition(problem, state);
        EXPECT_EQ(corridor_cut_weight(sub, bip), state.value())
            << "trial " << trial << " variant " << static_cast<int>(variant)
            << " modeling " << modeling;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// residual condensation on the frozen corridor problem
// ---------------------------------------------------------------------------

TEST(MinCut, PqDagOnTinyCorridor) {
  const Hypergraph hg = tiny_example();
  PartitionK part(hg, 2, 0.5, {0, 0, 1, 1});
  const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, {1, 2});
  const FlowProblem problem = build_flow_problem(sub, {});
  const FlowState state = max_flow(problem);
  const PQDag dag = build_pq_dag(state);

  // Source side collapses into one component, {e2'', t} into the other.
  EXPECT_EQ(dag.num_components, 2);
  const FlowNetwork& net = problem.network;
  const NetId e2 = sub.to_local_net(1);
  EXPECT_EQ(dag.comp_of_node[state.source()], dag.s_comp);
  EXPECT_EQ(dag.comp_of_node[net.node_of_vertex[sub.to_local_vertex(1)]], dag.s_comp);
  EXPECT_EQ(dag.comp_of_node[net.node_of_vertex[sub.to_local_vertex(2)]], dag.s_comp);
  EXPECT_EQ(dag.comp_of_node[net.bridge_out_of_net[e2]], dag.t_comp);
  EXPECT_TRUE(dag.successors[dag.s_comp].empty());

  // There is exactly one minimum cut, and the sweep must reproduce it.
  const MinCutFamily family = enumerate_network_min_cuts(problem);
  EXPECT_EQ(family.value, 1);
  ASSERT_EQ(family.cuts.size(), 1u);
  const LocalBipartition from_cut = bipartition_from_cut(problem, family.cuts[0]);
  EXPECT_TRUE(from_cut.source_side[0]);
  EXPECT_TRUE(from_cut.source_side[1]);

  std::mt19937_64 rng(7);
  const LocalBipartition swept =
      most_balanced_min_cut(problem, state, dag, part, 8, rng);
  EXPECT_EQ(swept.source_side, from_cut.source_side);
}

TEST(MinCut, PostorderPrefixesAreClosedSets) {
  std::mt19937_64 rng(31337);
  testing::RandomHypergraphSpec spec;
  spec.max_vertices = 10;
  for (int trial = 0; trial < 60; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    PartitionK part(hg, 2, 0.9, random_assignment(hg.num_vertices(), 2, rng));
    const SubHypergraph sub = whole_pair(hg, part);
    const FlowProblem problem = build_flow_problem(sub, {});
    const FlowState state = max_flow(problem);
    const PQDag dag = build_pq_dag(state);

    for (int rep = 0; rep < 5; ++rep) {
      const std::vector<int> order = mincut_detail::randomized_postorder(dag, rng);
      ASSERT_EQ(static_cast<int>(order.size()), dag.num_components);
      std::vector<char> in_prefix(dag.num_components, false);
      for (int comp : order) {
        // Every successor must already be inside the prefix.
        for (int succ : dag.successors[comp]) EXPECT_TRUE(in_prefix[succ]);
        EXPECT_FALSE(in_prefix[comp]);  // each component appears once
        in_prefix[comp] = true;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// most balanced minimum cut against exhaustive enumeration
// ---------------------------------------------------------------------------

TEST(MinCut, SweepMatchesEnumerationOnSmallProblems) {
  std::mt19937_64 rng(555);
  testing::RandomHypergraphSpec spec;
  spec.min_vertices = 5;
  spec.max_vertices = 9;
  spec.max_nets = 10;
  int instances = 0;
  int optimum_hits = 0;
  for (int trial = 0; trial < 400 && instances < 120; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    const int k = 2 + static_cast<int>(rng() % 2);
    PartitionK part(hg, k, 0.9, random_assignment(hg.num_vertices(), k, rng));

    std::vector<VertexId> pair_vertices;
    for (VertexId v = 0; v < hg.num_vertices(); ++v)
      if (part.block(v) <= 1) pair_vertices.push_back(v);
    std::shuffle(pair_vertices.begin(), pair_vertices.end(), rng);
    pair_vertices.resize(1 + rng() % pair_vertices.size());
    const SubHypergraph sub = induced_subhypergraph(hg, part, 0, 1, pair_vertices);

    const FlowProblem problem = build_flow_problem(sub, {});
    if (problem.network.num_nodes() > 14 || problem.degenerate()) continue;
    ++instances;

    const FlowState state = max_flow(problem);
    const MinCutFamily family = enumerate_network_min_cuts(problem);
    ASSERT_EQ(family.value, state.value());

    Weight optimum = kInfiniteCapacity;
    for (const auto& cut : family.cuts)
      optimum = std::min(optimum,
                         worst_block_weight(part, sub, bipartition_from_cut(problem, cut)));

    const PQDag dag = build_pq_dag(state);
    const LocalBipartition base = extract_bipartition(problem, state);
    const LocalBipartition swept =
        most_balanced_min_cut(problem, state, dag, part, 8, rng);

    // Every sweep result is still a minimum cut and never worse than the
    // plain extraction.
    EXPECT_EQ(corridor_cut_weight(sub, swept), state.value());
    const Weight swept_worst = worst_block_weight(part, sub, swept);
    EXPECT_LE(swept_worst, worst_block_weight(part, sub, base));
    EXPECT_GE(swept_worst, optimum);
    if (swept_worst == optimum) ++optimum_hits;
  }
  ASSERT_GE(instances, 60);
  // The sweep is a heuristic; on problems this small it should nearly
  // always reach the enumerated optimum.
  EXPECT_GE(optimum_hits * 10, instances * 9);
}

TEST(MinCut, SweepWithZeroRepsIsPlainExtraction) {
  std::mt19937_64 rng(808);
  testing::RandomHypergraphSpec spec;
  for (int trial = 0; trial < 40; ++trial) {
    const Hypergraph hg = random_hypergraph(spec, rng);
    PartitionK part(hg, 2, 0.9, random_assignment(hg.num_vertices(), 2, rng));
    const SubHypergraph sub = whole_pair(hg, part);
    const FlowProblem problem = build_flow_problem(sub, {});
    const FlowState state = max_flow(problem);
    const PQDag dag = build_pq_dag(state);
    EXPECT_EQ(most_balanced_min_cut(problem, state, dag, part, 0, rng).source_side,
              extract_bipartition(problem, state).source_side);
  }
}

TEST(MinCut, SweepIsDeterministicGivenSeed) {
  const Hypergraph hg(8, {{0, 1, 2}, {2, 3}, {3, 4, 5}, {5, 6}, {6, 7}, {1, 4, 7}});
  PartitionK part(hg, 2, 0.5, {0, 0, 0, 0, 1, 1, 1, 1});
  const SubHypergraph sub = whole_pair(hg, part);
  const FlowProblem problem = build_flow_problem(sub, {});
  const FlowState state = max_flow(problem);
  const PQDag dag = build_pq_dag(state);

  std::mt19937_64 rng_a(99), rng_b(99);
  EXPECT_EQ(most_balanced_min_cut(problem, state, dag, part, 8, rng_a).source_side,
            most_balanced_min_cut(problem, state, dag, part, 8, rng_b).source_side);
}

}  // namespace
}  // namespace flowpart
