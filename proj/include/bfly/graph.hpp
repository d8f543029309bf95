#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bfly {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::uint64_t;

/// One edge in internal IDs: `upper` lies in [l, l + r), `lower` in [0, l).
struct Edge {
  VertexId upper;
  VertexId lower;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class AdjacencyOrder { by_id, by_priority };

/// Immutable two-layer CSR graph.
///
/// Lower-layer vertices occupy IDs [0, l) and upper-layer vertices [l, l + r),
/// so every upper ID exceeds every lower ID. Each adjacency slot carries the
/// index of its edge in `edges()`, which lets per-edge algorithms address
/// edges without a lookup table.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Validates and builds a graph whose adjacency lists are sorted by ID.
  /// `labels` may be empty, in which case each vertex's label is its rank in
  /// its layer. Throws std::invalid_argument on out-of-range IDs or duplicate
  /// edges.
  BipartiteGraph(VertexId upper_count, VertexId lower_count,
                 std::vector<Edge> edges, std::vector<Label> labels = {});

  VertexId upper_count() const noexcept { return upper_count_; }
  VertexId lower_count() const noexcept { return lower_count_; }
  VertexId vertex_count() const noexcept { return upper_count_ + lower_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool is_upper(VertexId v) const noexcept { return v >= lower_count_; }
  VertexId first_upper() const noexcept { return lower_count_; }

  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  /// Edge indices aligned slot-by-slot with `neighbors(v)`.
  std::span<const EdgeId> incident_edges(VertexId v) const noexcept {
    return {adjacency_edges_.data() + offsets_[v],
            adjacency_edges_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(VertexId v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }

  Label label(VertexId v) const noexcept { return labels_[v]; }
  std::span<const Label> labels() const noexcept { return labels_; }

  AdjacencyOrder adjacency_order() const noexcept { return order_; }

  /// Upper and lower layers exchanged; edge indices are preserved.
  BipartiteGraph transposed() const;

 private:
  friend class GraphBuilder;

  VertexId upper_count_ = 0;
  VertexId lower_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<VertexId> adjacency_;
  std::vector<EdgeId> adjacency_edges_;
  std::vector<Label> labels_;
  AdjacencyOrder order_ = AdjacencyOrder::by_id;
};

/// Trusted construction path for transforms that already guarantee the
/// graph invariants (priority sort, projection).
class GraphBuilder {
 public:
  struct Slot {
    VertexId neighbor;
    EdgeId edge;
  };

  /// `adjacency[v]` becomes N(v) verbatim.
  static BipartiteGraph assemble(VertexId upper_count, VertexId lower_count,
                                 std::vector<Edge> edges, std::vector<Label> labels,
                                 const std::vector<std::vector<Slot>>& adjacency,
                                 AdjacencyOrder order);

  /// CSR arrays taken as-is; `offsets` has n + 1 entries.
  static BipartiteGraph assemble_csr(VertexId upper_count, VertexId lower_count,
                                     std::vector<Edge> edges, std::vector<Label> labels,
                                     std::vector<std::uint64_t> offsets,
                                     std::vector<VertexId> adjacency,
                                     std::vector<EdgeId> adjacency_edges,
                                     AdjacencyOrder order);
};

/// Σ_{(u,v)∈E} min{deg(u), deg(v)}: an upper bound on the wedges processed by
/// the priority-based counters.
std::uint64_t sum_min_degree(const BipartiteGraph& g);

/// Σ deg(x)² over the upper (resp. lower) layer.
std::uint64_t sum_squared_degree_upper(const BipartiteGraph& g);
std::uint64_t sum_squared_degree_lower(const BipartiteGraph& g);

}  // namespace bfly
