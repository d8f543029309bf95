#include "bfly/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace bfly {

namespace {

std::vector<Label> default_labels(VertexId upper_count, VertexId lower_count) {
  std::vector<Label> labels(static_cast<std::size_t>(upper_count) + lower_count);
  for (VertexId v = 0; v < lower_count; ++v) labels[v] = v;
  for (VertexId u = 0; u < upper_count; ++u) labels[lower_count + u] = u;
  return labels;
}

}  // namespace

BipartiteGraph::BipartiteGraph(VertexId upper_count, VertexId lower_count,
                               std::vector<Edge> edges, std::vector<Label> labels)
    : upper_count_(upper_count), lower_count_(lower_count), edges_(std::move(edges)) {
  const std::uint64_t n = static_cast<std::uint64_t>(upper_count) + lower_count;
  if (n > std::numeric_limits<VertexId>::max()) {
    throw std::invalid_argument("vertex count exceeds 32-bit ID space");
  }
  if (edges_.size() >= std::numeric_limits<EdgeId>::max()) {
    throw std::invalid_argument("edge count exceeds 32-bit edge index space");
  }
  if (labels.empty()) {
    labels_ = default_labels(upper_count, lower_count);
  } else if (labels.size() != n) {
    throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                " does not match vertex count " + std::to_string(n));
  } else {
    labels_ = std::move(labels);
  }

  std::vector<std::uint64_t> degree(n, 0);
  for (const Edge& e : edges_) {
    if (e.lower >= lower_count_ || e.upper < lower_count_ || e.upper >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.upper) + ", " +
                                  std::to_string(e.lower) +
                                  ") does not join an upper and a lower vertex");
    }
    ++degree[e.upper];
    ++degree[e.lower];
  }

  offsets_.assign(n + 1, 0);
  for (std::uint64_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(2 * edges_.size());
  adjacency_edges_.resize(2 * edges_.size());

  // Upper lists are sorted per vertex; lower lists come out ID-sorted because
  // upper vertices are visited in ascending ID.
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> by_upper(upper_count_);
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    by_upper[edges_[id].upper - lower_count_].emplace_back(edges_[id].lower, id);
  }
  std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (VertexId ui = 0; ui < upper_count_; ++ui) {
    auto& slots = by_upper[ui];
    std::sort(slots.begin(), slots.end());
    const VertexId u = lower_count_ + ui;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (i > 0 && slots[i].first == slots[i - 1].first) {
        throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " +
                                    std::to_string(slots[i].first) + ")");
      }
      adjacency_[cursor[u]] = slots[i].first;
      adjacency_edges_[cursor[u]++] = slots[i].second;
      const VertexId v = slots[i].first;
      adjacency_[cursor[v]] = u;
      adjacency_edges_[cursor[v]++] = slots[i].second;
    }
  }
}

BipartiteGraph BipartiteGraph::transposed() const {
  const VertexId r = upper_count_;
  const VertexId l = lower_count_;
  // Old upper u (id l + i) becomes new lower i; old lower v becomes new upper r + v.
  auto remap = [&](VertexId x) { return is_upper(x) ? x - l : r + x; };
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const Edge& e : edges_) edges.push_back({remap(e.lower), remap(e.upper)});
  std::vector<Label> labels(labels_.size());
  for (VertexId x = 0; x < vertex_count(); ++x) labels[remap(x)] = labels_[x];
  return BipartiteGraph(l, r, std::move(edges), std::move(labels));
}

BipartiteGraph GraphBuilder::assemble(VertexId upper_count, VertexId lower_count,
                                      std::vector<Edge> edges, std::vector<Label> labels,
                                      const std::vector<std::vector<Slot>>& adjacency,
                                      AdjacencyOrder order) {
  const std::size_t n = adjacency.size();
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + adjacency[v].size();
  std::vector<VertexId> flat(offsets.back());
  std::vector<EdgeId> flat_edges(offsets.back());
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t pos = offsets[v];
    for (const Slot& s : adjacency[v]) {
      flat[pos] = s.neighbor;
      flat_edges[pos++] = s.edge;
    }
  }
  return assemble_csr(upper_count, lower_count, std::move(edges), std::move(labels),
                      std::move(offsets), std::move(flat), std::move(flat_edges), order);
}

BipartiteGraph GraphBuilder::assemble_csr(VertexId upper_count, VertexId lower_count,
                                          std::vector<Edge> edges,
                                          std::vector<Label> labels,
                                          std::vector<std::uint64_t> offsets,
                                          std::vector<VertexId> adjacency,
                                          std::vector<EdgeId> adjacency_edges,
                                          AdjacencyOrder order) {
  BipartiteGraph g;
  g.upper_count_ = upper_count;
  g.lower_count_ = lower_count;
  g.edges_ = std::move(edges);
  g.labels_ = std::move(labels);
  g.offsets_ = std::move(offsets);
  g.adjacency_ = std::move(adjacency);
  g.adjacency_edges_ = std::move(adjacency_edges);
  g.order_ = order;
  return g;
}

std::uint64_t sum_min_degree(const BipartiteGraph& g) {
  std::uint64_t total = 0;
  for (const Edge& e : g.edges()) total += std::min(g.degree(e.upper), g.degree(e.lower));
  return total;
}

std::uint64_t sum_squared_degree_upper(const BipartiteGraph& g) {
  std::uint64_t total = 0;
  for (VertexId u = g.first_upper(); u < g.vertex_count(); ++u) {
    total += static_cast<std::uint64_t>(g.degree(u)) * g.degree(u);
  }
  return total;
}

std::uint64_t sum_squared_degree_lower(const BipartiteGraph& g) {
  std::uint64_t total = 0;
  for (VertexId v = 0; v < g.first_upper(); ++v) {
    total += static_cast<std::uint64_t>(g.degree(v)) * g.degree(v);
  }
  return total;
}

}  // namespace bfly
