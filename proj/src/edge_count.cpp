#include "bfly/edge_count.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/projection.hpp"
#include "bfly/wedge_counter.hpp"
#include "wedge_kernels.hpp"

namespace bfly {

EdgeCounts count_per_edge_evpp(const BipartiteGraph& g, const PriorityMap& p) {
  detail::require_priority_sorted(g, p);
  EdgeCounts result;
  result.per_edge.assign(g.edge_count(), 0);
  WedgeCounter counter(g.vertex_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    detail::for_each_vpp_wedge(g, p, u, [&](VertexId, VertexId w, EdgeId, EdgeId) {
      counter.increment(w);
    });
    if (counter.touched().empty()) continue;
    detail::for_each_vpp_wedge(g, p, u,
                               [&](VertexId, VertexId w, EdgeId start_mid, EdgeId mid_end) {
                                 const Count delta = counter.count(w) - 1;
                                 if (delta == 0) return;
                                 result.per_edge[start_mid] =
                                     checked_add(result.per_edge[start_mid], delta);
                                 result.per_edge[mid_end] =
                                     checked_add(result.per_edge[mid_end], delta);
                               });
    result.butterflies = checked_add(result.butterflies, counter.drain_pairs());
  }
  return result;
}

EdgeCounts count_per_edge(const BipartiteGraph& g) {
  const PreparedGraph prepared = prepare_for_counting(g);
  return count_per_edge_evpp(prepared.graph, prepared.priority);
}

EdgeCounts brute_force_per_edge(const BipartiteGraph& g) {
  if (g.edge_count() > kBruteForceEdgeLimit) {
    throw GuardError("brute-force oracle refuses graphs above " +
                     std::to_string(kBruteForceEdgeLimit) + " edges");
  }
  std::unordered_map<std::uint64_t, EdgeId> index;
  index.reserve(g.edge_count() * 2);
  const auto& edges = g.edges();
  for (EdgeId id = 0; id < edges.size(); ++id) {
    index.emplace((static_cast<std::uint64_t>(edges[id].upper) << 32) | edges[id].lower, id);
  }
  auto find = [&](VertexId upper, VertexId lower) -> const EdgeId* {
    auto it = index.find((static_cast<std::uint64_t>(upper) << 32) | lower);
    return it == index.end() ? nullptr : &it->second;
  };

  EdgeCounts result;
  result.per_edge.assign(g.edge_count(), 0);
  for (VertexId u = g.first_upper(); u < g.vertex_count(); ++u) {
    std::vector<VertexId> nu(g.neighbors(u).begin(), g.neighbors(u).end());
    std::sort(nu.begin(), nu.end());
    for (VertexId w = u + 1; w < g.vertex_count(); ++w) {
      for (std::size_t a = 0; a < nu.size(); ++a) {
        const EdgeId* wv = find(w, nu[a]);
        if (wv == nullptr) continue;
        for (std::size_t b = a + 1; b < nu.size(); ++b) {
          const EdgeId* wx = find(w, nu[b]);
          if (wx == nullptr) continue;
          for (EdgeId id : {*find(u, nu[a]), *find(u, nu[b]), *wv, *wx}) {
            result.per_edge[id] = checked_add(result.per_edge[id], 1);
          }
          result.butterflies = checked_add(result.butterflies, 1);
        }
      }
    }
  }
  return result;
}

std::vector<Count> per_vertex_from_edges(const EdgeCounts& ec, const BipartiteGraph& g) {
  if (ec.per_edge.size() != g.edge_count()) {
    throw ConsistencyError("edge counts do not match graph edge count");
  }
  std::vector<Count> result(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    Count incident = 0;
    for (EdgeId id : g.incident_edges(v)) incident = checked_add(incident, ec.per_edge[id]);
    if (incident % 2 != 0) {
      throw ConsistencyError("odd incident butterfly sum at vertex " + std::to_string(v));
    }
    result[v] = incident / 2;
  }
  return result;
}

void write_edge_counts_tsv(std::ostream& out, const BipartiteGraph& g, const EdgeCounts& ec) {
  const auto& edges = g.edges();
  for (EdgeId id = 0; id < edges.size(); ++id) {
    out << g.label(edges[id].upper) << '\t' << g.label(edges[id].lower) << '\t'
        << to_string(ec.per_edge[id]) << '\n';
  }
}

}  // namespace bfly
