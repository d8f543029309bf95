#pragma once

#include <cstdint>

#include "bfly/graph.hpp"

namespace bfly::gen {

/// Two upper hubs u0, u1 joined to lower v0..v(a−1); two lower hubs va, va+1
/// joined to upper u2..u(b+1). Butterflies: C(a,2) + C(b,2).
BipartiteGraph hub_graph(std::uint32_t a, std::uint32_t b);

/// Upper u0 joined to lower v0..v(a−1); lower va joined to upper u1..ua; and
/// v(i) joined to u(i+1). Butterfly-free.
BipartiteGraph hub_path_graph(std::uint32_t a);

/// Complete bipartite graph with r upper and l lower vertices.
BipartiteGraph complete(std::uint32_t r, std::uint32_t l);

/// Each of the r·l possible edges kept independently with probability p.
BipartiteGraph random_bipartite(std::uint32_t r, std::uint32_t l, double p, std::uint64_t seed);

/// One upper center joined to k lower leaves.
BipartiteGraph star(std::uint32_t k);

/// Simple path u0-v0-u1-v1-... with `edges` edges.
BipartiteGraph path(std::uint32_t edges);

/// Single 4-cycle: the smallest butterfly.
BipartiteGraph four_cycle();

}  // namespace bfly::gen
