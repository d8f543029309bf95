#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "bfly/count128.hpp"
#include "bfly/graph.hpp"
#include "bfly/priority.hpp"

namespace bfly {

/// Butterfly total plus the access breakdown of the wedge enumeration.
/// Every processed wedge touches exactly one end vertex, so
/// `end_accesses == wedges_processed`.
struct CountReport {
  Count butterflies = 0;
  std::uint64_t wedges_processed = 0;
  std::uint64_t start_accesses = 0;
  std::uint64_t middle_accesses = 0;
  std::uint64_t end_accesses = 0;
  std::chrono::nanoseconds elapsed{0};

  /// Equality on everything except wall time.
  bool same_counts(const CountReport& other) const noexcept {
    return butterflies == other.butterflies && wedges_processed == other.wedges_processed &&
           start_accesses == other.start_accesses &&
           middle_accesses == other.middle_accesses && end_accesses == other.end_accesses;
  }
};

enum class Algorithm { ibs, vp, vpp };

/// Layer-priority baseline. Starts from the upper layer unless the upper
/// layer's Σdeg² is strictly smaller, in which case it starts from the lower
/// layer; a wedge (u, v, w) is processed only when w's ID exceeds u's.
CountReport count_ibs(const BipartiteGraph& g);

/// Vertex-priority counting: wedges (u, v, w) with p(v) < p(u) and
/// p(w) < p(u). Requires `sort_adjacency(g, p)` output.
CountReport count_vp(const BipartiteGraph& g, const PriorityMap& p);

/// Cache-aware counting: wedges whose end vertex outranks both the start and
/// the middle vertex, scanning each neighbor list from its high-priority end.
/// Intended for `prepare_for_counting` output; correct on any priority-sorted
/// graph.
CountReport count_vpp(const BipartiteGraph& g, const PriorityMap& p);

/// Runs `algo` on a freshly parsed graph, doing whatever preparation it needs.
/// Preparation time is excluded from `elapsed`.
CountReport count_butterflies(const BipartiteGraph& g, Algorithm algo);

inline constexpr std::size_t kBruteForceEdgeLimit = 10'000;

/// Independent oracle: enumerates upper pairs u < w and lower pairs v < x and
/// tests all four edges by membership. Throws GuardError above
/// kBruteForceEdgeLimit edges.
Count brute_force_count(const BipartiteGraph& g);

/// ⋈_u for every vertex from an unpruned wedge pass per start vertex.
std::vector<Count> count_per_vertex(const BipartiteGraph& g);

/// Number of three-edge paths: Σ_{(u,v)∈E} (deg(u) − 1)(deg(v) − 1).
Count count_caterpillars(const BipartiteGraph& g);

struct Ratio {
  Count numerator = 0;
  Count denominator = 1;
  double value() const { return to_double(numerator) / to_double(denominator); }
};

/// 4·⋈_G / caterpillars; nullopt when the graph has no three-path.
std::optional<Ratio> clustering_coefficient(const BipartiteGraph& g);

struct Wedge {
  VertexId start;
  VertexId middle;
  VertexId end;
  friend bool operator==(const Wedge&, const Wedge&) = default;
};

/// The exact wedge sets processed by count_vp / count_vpp, in processing order.
std::vector<Wedge> list_wedges_vp(const BipartiteGraph& g, const PriorityMap& p);
std::vector<Wedge> list_wedges_vpp(const BipartiteGraph& g, const PriorityMap& p);

}  // namespace bfly
