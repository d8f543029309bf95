#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfly/graph.hpp"

namespace bfly {

using Priority = std::uint32_t;

/// Total order over vertices: higher degree wins, equal degrees are broken by
/// the larger internal ID. Values form a permutation of 1..n.
class PriorityMap {
 public:
  PriorityMap() = default;
  /// Throws std::invalid_argument unless `values` is a permutation of 1..n.
  explicit PriorityMap(std::vector<Priority> values);

  Priority operator[](VertexId v) const noexcept { return values_[v]; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Priority> values() const noexcept { return values_; }
  /// Vertices listed from lowest to highest priority.
  std::span<const VertexId> ascending() const noexcept { return ascending_; }

 private:
  std::vector<Priority> values_;
  std::vector<VertexId> ascending_;
};

/// O(n + m) bin sort over degrees.
PriorityMap assign_priorities(const BipartiteGraph& g);

/// Same order from a bare degree array indexed by internal ID.
PriorityMap priorities_from_degrees(std::span<const std::uint32_t> degrees);

/// Rebuilds every adjacency list in ascending neighbor priority in O(n + m):
/// vertices are visited from lowest priority up and appended to each of
/// their neighbors' fresh lists.
BipartiteGraph sort_adjacency(const BipartiteGraph& g, const PriorityMap& p);

/// True when every adjacency list is strictly increasing in priority.
bool is_priority_sorted(const BipartiteGraph& g, const PriorityMap& p);

}  // namespace bfly
