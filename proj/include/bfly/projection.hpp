#pragma once

#include <vector>

#include "bfly/graph.hpp"
#include "bfly/priority.hpp"

namespace bfly {

/// Per-layer relabeling by priority rank. Rank 0 is the highest-priority
/// vertex of its layer, so hot vertices sit at the front of each ID range:
/// new lower IDs are ranks in [0, l), new upper IDs are l + rank.
class ProjectionMapping {
 public:
  ProjectionMapping() = default;
  ProjectionMapping(std::vector<VertexId> forward, std::vector<VertexId> inverse)
      : forward_(std::move(forward)), inverse_(std::move(inverse)) {}

  VertexId to_projected(VertexId original) const noexcept { return forward_[original]; }
  VertexId to_original(VertexId projected) const noexcept { return inverse_[projected]; }
  std::size_t size() const noexcept { return forward_.size(); }
  bool is_identity() const noexcept;

 private:
  std::vector<VertexId> forward_;
  std::vector<VertexId> inverse_;
};

struct Projection {
  BipartiteGraph graph;
  ProjectionMapping mapping;
};

/// Isomorphic copy of `g` with rank-ordered IDs. Edge i of the result is the
/// image of edge i of `g`, so edge-indexed data needs no translation.
Projection project(const BipartiteGraph& g, const PriorityMap& p);

/// A graph ready for the cache-aware counters: projected, re-prioritized on
/// its new IDs, and priority-sorted.
struct PreparedGraph {
  BipartiteGraph graph;
  PriorityMap priority;
  ProjectionMapping mapping;
};

PreparedGraph prepare_for_counting(const BipartiteGraph& g);

}  // namespace bfly
