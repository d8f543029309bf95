#pragma once

// Per-start-vertex wedge loops shared by the counting engines.

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "bfly/graph.hpp"
#include "bfly/priority.hpp"

namespace bfly::detail {

inline void require_priority_sorted(const BipartiteGraph& g, const PriorityMap& p) {
  if (p.size() != g.vertex_count()) {
    throw std::invalid_argument("priority map does not match graph");
  }
  if (g.adjacency_order() != AdjacencyOrder::by_priority) {
    throw std::invalid_argument("adjacency lists must be sorted by priority");
  }
}

/// Wedges (u, v, w) with p(v) < p(u) and p(w) < p(u), relying on ascending
/// adjacency for early termination. fn(v, w, edge(u,v), edge(v,w)).
/// Returns the number of middle vertices scanned.
template <class Fn>
std::uint64_t for_each_vp_wedge(const BipartiteGraph& g, const PriorityMap& p,
                                VertexId u, Fn&& fn) {
  const Priority pu = p[u];
  const auto mids = g.neighbors(u);
  const auto mid_edges = g.incident_edges(u);
  std::uint64_t middles = 0;
  for (std::size_t i = 0; i < mids.size(); ++i) {
    const VertexId v = mids[i];
    if (p[v] >= pu) break;
    ++middles;
    const auto ends = g.neighbors(v);
    const auto end_edges = g.incident_edges(v);
    for (std::size_t j = 0; j < ends.size(); ++j) {
      if (p[ends[j]] >= pu) break;
      fn(v, ends[j], mid_edges[i], end_edges[j]);
    }
  }
  return middles;
}

/// Wedges (u, v, w) with p(w) > p(u) and p(w) > p(v), walking N(v) from its
/// high-priority end. Returns the number of middle vertices scanned.
template <class Fn>
std::uint64_t for_each_vpp_wedge(const BipartiteGraph& g, const PriorityMap& p,
                                 VertexId u, Fn&& fn) {
  const Priority pu = p[u];
  const auto mids = g.neighbors(u);
  const auto mid_edges = g.incident_edges(u);
  for (std::size_t i = 0; i < mids.size(); ++i) {
    const VertexId v = mids[i];
    const Priority bound = std::max(pu, p[v]);
    const auto ends = g.neighbors(v);
    const auto end_edges = g.incident_edges(v);
    for (std::size_t j = ends.size(); j-- > 0;) {
      if (p[ends[j]] <= bound) break;
      fn(v, ends[j], mid_edges[i], end_edges[j]);
    }
  }
  return mids.size();
}

}  // namespace bfly::detail
