// Quotient graph over blocks: which pairs share at least one cut net.
#pragma once

#include <utility>
#include <vector>

#include "flowpart/hypergraph.hpp"
#include "flowpart/partition.hpp"

namespace flowpart {

struct QuotientGraph {
  int k = 0;
  // Edges (i, j) with i < j, sorted ascending. An edge exists iff some net
  // has pins in both blocks.
  std::vector<std::pair<BlockId, BlockId>> edges;
  std::vector<char> active;

  static QuotientGraph build(const Hypergraph& hg, const PartitionK& part) {
    QuotientGraph q;
    q.k = part.k();
    q.active.assign(q.k, true);
    std::vector<char> adjacent(static_cast<std::size_t>(q.k) * q.k, false);
    std::vector<BlockId> blocks;
    for (NetId e = 0; e < hg.num_nets(); ++e) {
      connectivity(hg, part, e, &blocks);
      for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t b = a + 1; b < blocks.size(); ++b)
          adjacent[static_cast<std::size_t>(blocks[a]) * q.k + blocks[b]] = true;
    }
    for (BlockId i = 0; i < q.k; ++i)
      for (BlockId j = i + 1; j < q.k; ++j)
        if (adjacent[static_cast<std::size_t>(i) * q.k + j]) q.edges.emplace_back(i, j);
    return q;
  }
};

}  // namespace flowpart
