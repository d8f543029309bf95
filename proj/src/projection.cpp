#include "bfly/projection.hpp"

#include <stdexcept>

namespace bfly {

bool ProjectionMapping::is_identity() const noexcept {
  for (VertexId v = 0; v < forward_.size(); ++v) {
    if (forward_[v] != v) return false;
  }
  return true;
}

Projection project(const BipartiteGraph& g, const PriorityMap& p) {
  if (p.size() != g.vertex_count()) {
    throw std::invalid_argument("priority map does not match graph");
  }
  const VertexId n = g.vertex_count();
  const VertexId l = g.lower_count();
  std::vector<VertexId> forward(n);
  std::vector<VertexId> inverse(n);
  VertexId next_lower = 0;
  VertexId next_upper = l;
  const auto order = p.ascending();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    const VertexId image = g.is_upper(v) ? next_upper++ : next_lower++;
    forward[v] = image;
    inverse[image] = v;
  }

  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({forward[e.upper], forward[e.lower]});
  std::vector<Label> labels(n);
  for (VertexId v = 0; v < n; ++v) labels[forward[v]] = g.label(v);

  return {BipartiteGraph(g.upper_count(), l, std::move(edges), std::move(labels)),
          ProjectionMapping(std::move(forward), std::move(inverse))};
}

PreparedGraph prepare_for_counting(const BipartiteGraph& g) {
  Projection projection = project(g, assign_priorities(g));
  PriorityMap priority = assign_priorities(projection.graph);
  BipartiteGraph sorted = sort_adjacency(projection.graph, priority);
  return {std::move(sorted), std::move(priority), std::move(projection.mapping)};
}

}  // namespace bfly
