#include "bfly/priority.hpp"

#include <algorithm>
#include <stdexcept>

namespace bfly {

PriorityMap::PriorityMap(std::vector<Priority> values) : values_(std::move(values)) {
  ascending_.assign(values_.size(), 0);
  std::vector<bool> seen(values_.size(), false);
  for (VertexId v = 0; v < values_.size(); ++v) {
    const Priority p = values_[v];
    if (p == 0 || p > values_.size() || seen[p - 1]) {
      throw std::invalid_argument("priorities must be a permutation of 1..n");
    }
    seen[p - 1] = true;
    ascending_[p - 1] = v;
  }
}

PriorityMap priorities_from_degrees(std::span<const std::uint32_t> degrees) {
  const std::size_t n = degrees.size();
  std::uint32_t max_degree = 0;
  for (auto d : degrees) max_degree = std::max(max_degree, d);

  std::vector<std::uint64_t> bucket_start(static_cast<std::size_t>(max_degree) + 2, 0);
  for (auto d : degrees) ++bucket_start[d + 1];
  for (std::size_t d = 1; d < bucket_start.size(); ++d) bucket_start[d] += bucket_start[d - 1];

  // Ascending-ID visits keep each degree bucket ordered by ID.
  std::vector<Priority> values(n);
  for (std::size_t v = 0; v < n; ++v) {
    values[v] = static_cast<Priority>(++bucket_start[degrees[v]]);
  }
  return PriorityMap(std::move(values));
}

PriorityMap assign_priorities(const BipartiteGraph& g) {
  std::vector<std::uint32_t> degrees(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) degrees[v] = g.degree(v);
  return priorities_from_degrees(degrees);
}

BipartiteGraph sort_adjacency(const BipartiteGraph& g, const PriorityMap& p) {
  if (p.size() != g.vertex_count()) {
    throw std::invalid_argument("priority map does not match graph");
  }
  const VertexId n = g.vertex_count();
  std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  for (VertexId v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + g.degree(v);
  std::vector<VertexId> adjacency(offsets.back());
  std::vector<EdgeId> adjacency_edges(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (VertexId x : p.ascending()) {
    const auto nbrs = g.neighbors(x);
    const auto eids = g.incident_edges(x);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId y = nbrs[i];
      adjacency[cursor[y]] = x;
      adjacency_edges[cursor[y]++] = eids[i];
    }
  }
  return GraphBuilder::assemble_csr(
      g.upper_count(), g.lower_count(), std::vector<Edge>(g.edges().begin(), g.edges().end()),
      std::vector<Label>(g.labels().begin(), g.labels().end()), std::move(offsets),
      std::move(adjacency), std::move(adjacency_edges), AdjacencyOrder::by_priority);
}

bool is_priority_sorted(const BipartiteGraph& g, const PriorityMap& p) {
  if (p.size() != g.vertex_count()) return false;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto nbrs = g.neighbors(v);
    for (std::size_t i = 1; i < nbrs.size(); ++i) {
      if (p[nbrs[i - 1]] >= p[nbrs[i]]) return false;
    }
  }
  return true;
}

}  // namespace bfly
