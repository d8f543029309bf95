#include "bfly/exact.hpp"

#include <algorithm>
#include <unordered_set>

#include "bfly/errors.hpp"
#include "bfly/projection.hpp"
#include "bfly/wedge_counter.hpp"
#include "wedge_kernels.hpp"

namespace bfly {

namespace {

using Clock = std::chrono::steady_clock;

template <class ForEachWedge>
CountReport run_priority_counter(const BipartiteGraph& g, const PriorityMap& p,
                                 ForEachWedge&& for_each_wedge) {
  detail::require_priority_sorted(g, p);
  const auto begin = Clock::now();
  CountReport report;
  WedgeCounter counter(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    ++report.start_accesses;
    report.middle_accesses +=
        for_each_wedge(g, p, u, [&](VertexId, VertexId w, EdgeId, EdgeId) {
          counter.increment(w);
          ++report.wedges_processed;
        });
    report.butterflies = checked_add(report.butterflies, counter.drain_pairs());
  }
  report.end_accesses = report.wedges_processed;
  report.elapsed = Clock::now() - begin;
  return report;
}

std::uint64_t edge_key(VertexId a, VertexId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

CountReport count_ibs(const BipartiteGraph& g) {
  const auto begin = Clock::now();
  const bool start_lower = sum_squared_degree_upper(g) < sum_squared_degree_lower(g);
  const VertexId first = start_lower ? 0 : g.first_upper();
  const VertexId last = start_lower ? g.first_upper() : g.vertex_count();
  const bool id_sorted = g.adjacency_order() == AdjacencyOrder::by_id;

  CountReport report;
  WedgeCounter counter(g.vertex_count());
  for (VertexId u = first; u < last; ++u) {
    ++report.start_accesses;
    for (VertexId v : g.neighbors(u)) {
      ++report.middle_accesses;
      const auto ends = g.neighbors(v);
      for (std::size_t j = ends.size(); j-- > 0;) {
        const VertexId w = ends[j];
        if (w <= u) {
          if (id_sorted) break;
          continue;
        }
        counter.increment(w);
        ++report.wedges_processed;
      }
    }
    report.butterflies = checked_add(report.butterflies, counter.drain_pairs());
  }
  report.end_accesses = report.wedges_processed;
  report.elapsed = Clock::now() - begin;
  return report;
}

CountReport count_vp(const BipartiteGraph& g, const PriorityMap& p) {
  return run_priority_counter(g, p, [](const auto&... args) {
    return detail::for_each_vp_wedge(args...);
  });
}

CountReport count_vpp(const BipartiteGraph& g, const PriorityMap& p) {
  return run_priority_counter(g, p, [](const auto&... args) {
    return detail::for_each_vpp_wedge(args...);
  });
}

CountReport count_butterflies(const BipartiteGraph& g, Algorithm algo) {
  switch (algo) {
    case Algorithm::ibs:
      return count_ibs(g);
    case Algorithm::vp: {
      const PriorityMap p = assign_priorities(g);
      return count_vp(sort_adjacency(g, p), p);
    }
    case Algorithm::vpp: {
      const PreparedGraph prepared = prepare_for_counting(g);
      return count_vpp(prepared.graph, prepared.priority);
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

Count brute_force_count(const BipartiteGraph& g) {
  if (g.edge_count() > kBruteForceEdgeLimit) {
    throw GuardError("brute-force oracle refuses graphs above " +
                     std::to_string(kBruteForceEdgeLimit) + " edges");
  }
  std::unordered_set<std::uint64_t> edge_set;
  edge_set.reserve(g.edge_count() * 2);
  for (const Edge& e : g.edges()) edge_set.insert(edge_key(e.upper, e.lower));
  auto has_edge = [&](VertexId upper, VertexId lower) {
    return edge_set.contains(edge_key(upper, lower));
  };

  // Quadruples failing (u, v) or (u, x) are skipped by drawing v, x from
  // N(u); the remaining two edges are tested literally.
  Count total = 0;
  for (VertexId u = g.first_upper(); u < g.vertex_count(); ++u) {
    std::vector<VertexId> nu(g.neighbors(u).begin(), g.neighbors(u).end());
    std::sort(nu.begin(), nu.end());
    for (VertexId w = u + 1; w < g.vertex_count(); ++w) {
      for (std::size_t a = 0; a < nu.size(); ++a) {
        if (!has_edge(w, nu[a])) continue;
        for (std::size_t b = a + 1; b < nu.size(); ++b) {
          if (has_edge(u, nu[a]) && has_edge(u, nu[b]) && has_edge(w, nu[b])) {
            total = checked_add(total, 1);
          }
        }
      }
    }
  }
  return total;
}

std::vector<Count> count_per_vertex(const BipartiteGraph& g) {
  std::vector<Count> result(g.vertex_count(), 0);
  WedgeCounter counter(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (VertexId v : g.neighbors(u)) {
      for (VertexId w : g.neighbors(v)) {
        if (w != u) counter.increment(w);
      }
    }
    result[u] = counter.drain_pairs();
  }
  return result;
}

Count count_caterpillars(const BipartiteGraph& g) {
  Count total = 0;
  for (const Edge& e : g.edges()) {
    const Count a = g.degree(e.upper) - 1;
    const Count b = g.degree(e.lower) - 1;
    total = checked_add(total, checked_mul(a, b));
  }
  return total;
}

std::optional<Ratio> clustering_coefficient(const BipartiteGraph& g) {
  const Count caterpillars = count_caterpillars(g);
  if (caterpillars == 0) return std::nullopt;
  const Count butterflies = count_butterflies(g, Algorithm::vpp).butterflies;
  return Ratio{checked_mul(4, butterflies), caterpillars};
}

std::vector<Wedge> list_wedges_vp(const BipartiteGraph& g, const PriorityMap& p) {
  detail::require_priority_sorted(g, p);
  std::vector<Wedge> wedges;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    detail::for_each_vp_wedge(g, p, u, [&](VertexId v, VertexId w, EdgeId, EdgeId) {
      wedges.push_back({u, v, w});
    });
  }
  return wedges;
}

std::vector<Wedge> list_wedges_vpp(const BipartiteGraph& g, const PriorityMap& p) {
  detail::require_priority_sorted(g, p);
  std::vector<Wedge> wedges;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    detail::for_each_vpp_wedge(g, p, u, [&](VertexId v, VertexId w, EdgeId, EdgeId) {
      wedges.push_back({u, v, w});
    });
  }
  return wedges;
}

}  // namespace bfly
