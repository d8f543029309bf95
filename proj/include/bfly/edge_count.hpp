#pragma once

#include <iosfwd>
#include <vector>

#include "bfly/count128.hpp"
#include "bfly/graph.hpp"
#include "bfly/priority.hpp"

namespace bfly {

/// ⋈_e per edge, indexed like `BipartiteGraph::edges()`; Σ_e ⋈_e = 4·⋈_G.
struct EdgeCounts {
  std::vector<Count> per_edge;
  Count butterflies = 0;
};

/// Two wedge passes per start vertex over a prepared graph: the first fills
/// the common-neighbor counters, the second adds count(w) − 1 to both edges
/// of every processed wedge. Because projection preserves edge indices, the
/// result lines up with the original graph's edge sequence.
EdgeCounts count_per_edge_evpp(const BipartiteGraph& g, const PriorityMap& p);

/// Convenience wrapper: prepares `g` and returns counts in `g`'s edge order.
EdgeCounts count_per_edge(const BipartiteGraph& g);

/// Oracle: enumerates every butterfly as a quadruple and credits its four
/// edges. Throws GuardError above kBruteForceEdgeLimit edges.
EdgeCounts brute_force_per_edge(const BipartiteGraph& g);

/// ⋈_u = ½ Σ_{e∋u} ⋈_e. Throws ConsistencyError on an odd incident sum.
std::vector<Count> per_vertex_from_edges(const EdgeCounts& ec, const BipartiteGraph& g);

/// TSV rows "upper-label<TAB>lower-label<TAB>count" in edge order.
void write_edge_counts_tsv(std::ostream& out, const BipartiteGraph& g, const EdgeCounts& ec);

}  // namespace bfly
