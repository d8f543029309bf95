#include <doctest.h>

#include <sstream>

#include "bfly/edge_list.hpp"
#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/generators.hpp"
#include "bfly/priority.hpp"
#include "bfly/projection.hpp"
#include "support/oracles.hpp"

using namespace bfly;

namespace {

ParseResult parse(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::vector<Priority> values(const PriorityMap& p) { return {p.values().begin(), p.values().end()}; }

// Complete 3x2 graph: lower v0 = 0, v1 = 1; upper u0 = 2, u1 = 3, u2 = 4.
constexpr VertexId v0 = 0, v1 = 1, u0 = 2, u1 = 3, u2 = 4;

}  // namespace

TEST_CASE("parse: four lines form one 4-cycle") {
  const auto result = parse("0 0\n0 1\n1 0\n1 1\n");
  CHECK(result.graph.upper_count() == 2);
  CHECK(result.graph.lower_count() == 2);
  CHECK(result.graph.edge_count() == 4);
  CHECK(result.duplicates_removed == 0);
}

TEST_CASE("parse: duplicate edges are removed and counted") {
  const auto result = parse("0 0\n0 0\n");
  CHECK(result.graph.edge_count() == 1);
  CHECK(result.duplicates_removed == 1);
}

TEST_CASE("parse: malformed token names its line") {
  try {
    parse("x y\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  try {
    parse("% header\n1 2\n3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse("1 -2\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2x\n"), ParseError);
}

TEST_CASE("parse: comments, blank lines and extra columns") {
  const auto result = parse("% bip unweighted\n# note\n\n5 7 1 1234\n  5\t9\n");
  CHECK(result.graph.edge_count() == 2);
  CHECK(result.graph.upper_count() == 1);
  CHECK(result.graph.lower_count() == 2);
  ParseOptions strict;
  strict.allow_extra_columns = false;
  std::istringstream in("5 7 1\n");
  CHECK_THROWS_AS(parse_edge_list(in, strict), ParseError);
}

TEST_CASE("parse: empty input is an empty graph") {
  const auto result = parse("% nothing\n");
  CHECK(result.graph.vertex_count() == 0);
  CHECK(result.graph.edge_count() == 0);
}

TEST_CASE("parse: layers are independent label namespaces") {
  const auto result = parse("100 3\n7 3\n7 100\n");
  const auto& g = result.graph;
  CHECK(g.upper_count() == 2);
  CHECK(g.lower_count() == 2);
  CHECK(g.first_upper() == 2);
  for (const Edge& e : g.edges()) {
    CHECK(g.is_upper(e.upper));
    CHECK_FALSE(g.is_upper(e.lower));
  }
  CHECK(g.label(0) == 3);
  CHECK(g.label(1) == 100);
  CHECK(g.label(2) == 7);
  CHECK(g.label(3) == 100);
}

TEST_CASE("parse: serialize and parse again yields the same canonical edges") {
  auto label_pairs = [](const BipartiteGraph& g) {
    std::vector<std::pair<Label, Label>> pairs;
    for (const Edge& e : g.edges()) pairs.emplace_back(g.label(e.upper), g.label(e.lower));
    std::sort(pairs.begin(), pairs.end());
    return pairs;
  };
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = oracle::random_graph(seed);
    std::ostringstream out;
    write_edge_list(out, g);
    const auto once = parse(out.str()).graph;
    CHECK(label_pairs(once) == label_pairs(g));
    std::ostringstream canonical;
    write_edge_list(canonical, once);
    std::ostringstream again;
    write_edge_list(again, parse(canonical.str()).graph);
    CHECK(again.str() == canonical.str());
  }
}

TEST_CASE("graph: constructor rejects malformed edges") {
  CHECK_THROWS_AS(BipartiteGraph(1, 1, {{1, 0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteGraph(1, 1, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteGraph(1, 1, {{2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteGraph(1, 1, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("graph: degrees sum to twice the edge count") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = oracle::random_graph(seed);
    std::uint64_t sum = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      CHECK(g.degree(v) == g.neighbors(v).size());
      sum += g.degree(v);
    }
    CHECK(sum == 2 * g.edge_count());
  }
}

TEST_CASE("graph: transpose swaps layers and keeps edge indices") {
  const auto g = oracle::random_graph(3);
  const auto t = g.transposed();
  CHECK(t.upper_count() == g.lower_count());
  CHECK(t.lower_count() == g.upper_count());
  REQUIRE(t.edge_count() == g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    CHECK(t.degree(t.edges()[i].upper) == g.degree(g.edges()[i].lower));
    CHECK(t.label(t.edges()[i].upper) == g.label(g.edges()[i].lower));
  }
}

TEST_CASE("priority: complete 3x2 graph") {
  const auto g = gen::complete(3, 2);
  const PriorityMap p = assign_priorities(g);
  CHECK(p[v1] > p[v0]);
  CHECK(p[v0] > p[u2]);
  CHECK(p[u2] > p[u1]);
  CHECK(p[u1] > p[u0]);
  CHECK(values(p) == oracle::comparator_priorities(g));
}

TEST_CASE("priority: higher degree always wins") {
  const BipartiteGraph g(3, 4, {{4, 0}, {4, 1}, {4, 2}, {4, 3}, {5, 0}, {5, 1}, {6, 0}});
  const PriorityMap p = assign_priorities(g);
  std::vector<VertexId> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](VertexId a, VertexId b) { return g.degree(a) < g.degree(b); });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (g.degree(order[i]) != g.degree(order[i + 1])) CHECK(p[order[i]] < p[order[i + 1]]);
  }
  CHECK(values(p) == oracle::comparator_priorities(g));
}

TEST_CASE("priority: single isolated vertex") {
  const BipartiteGraph g(0, 1, {});
  const PriorityMap p = assign_priorities(g);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == 1);
}

TEST_CASE("priority: rejects non-permutations") {
  CHECK_THROWS_AS(PriorityMap({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(PriorityMap({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(PriorityMap({1, 3}), std::invalid_argument);
}

TEST_CASE("property: priorities match the comparator on random graphs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = oracle::random_graph(seed, 25);
    REQUIRE(g.vertex_count() <= 50);
    const auto p = assign_priorities(g);
    const auto expected = oracle::comparator_priorities(g);
    REQUIRE(values(p) == expected);
    for (VertexId a = 0; a < g.vertex_count(); ++a) {
      for (VertexId b = 0; b < g.vertex_count(); ++b) {
        const bool higher = g.degree(a) > g.degree(b) || (g.degree(a) == g.degree(b) && a > b);
        REQUIRE((p[a] > p[b]) == higher);
      }
    }
  }
}

TEST_CASE("sort_adjacency: complete 3x2 graph") {
  const auto g = gen::complete(3, 2);
  const auto p = assign_priorities(g);
  const auto sorted = sort_adjacency(g, p);
  const auto n = sorted.neighbors(v0);
  CHECK(std::vector<VertexId>(n.begin(), n.end()) == std::vector<VertexId>{u0, u1, u2});
  CHECK(sorted.adjacency_order() == AdjacencyOrder::by_priority);
  CHECK(is_priority_sorted(sorted, p));
}

TEST_CASE("sort_adjacency: isolated vertex keeps an empty list") {
  const BipartiteGraph g(2, 2, {{2, 0}, {2, 1}});
  const auto sorted = sort_adjacency(g, assign_priorities(g));
  CHECK(sorted.neighbors(3).empty());
}

TEST_CASE("property: sort_adjacency is strictly increasing, idempotent, edge-aligned") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = oracle::random_graph(seed);
    const auto p = assign_priorities(g);
    const auto once = sort_adjacency(g, p);
    const auto twice = sort_adjacency(once, p);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto a = once.neighbors(v);
      for (std::size_t i = 1; i < a.size(); ++i) REQUIRE(p[a[i - 1]] < p[a[i]]);
      const auto b = twice.neighbors(v);
      REQUIRE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
      const auto ids = once.incident_edges(v);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const Edge e = once.edges()[ids[i]];
        REQUIRE(((e.upper == v && e.lower == a[i]) || (e.lower == v && e.upper == a[i])));
      }
    }
  }
}

TEST_CASE("project: complete 3x2 graph") {
  const auto g = gen::complete(3, 2);
  const auto proj = project(g, assign_priorities(g));
  const auto& f = proj.mapping;
  CHECK(f.to_projected(v1) == 0);
  CHECK(f.to_projected(v0) == 1);
  CHECK(f.to_projected(u2) == 2);
  CHECK(f.to_projected(u1) == 3);
  CHECK(f.to_projected(u0) == 4);
  for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(f.to_original(f.to_projected(v)) == v);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge a = g.edges()[i];
    const Edge b = proj.graph.edges()[i];
    CHECK(b.upper == f.to_projected(a.upper));
    CHECK(b.lower == f.to_projected(a.lower));
  }
}

TEST_CASE("project: graph already in rank order maps to itself") {
  // Lower: v0 deg 2, v1 deg 1. Upper: u0 (id 2) deg 2, u1 (id 3) deg 1.
  const BipartiteGraph g(2, 2, {{2, 0}, {2, 1}, {3, 0}});
  const auto proj = project(g, assign_priorities(g));
  CHECK(proj.mapping.is_identity());
}

TEST_CASE("property: projection preserves structure and counts") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = oracle::random_graph(seed);
    const auto p = assign_priorities(g);
    const auto proj = project(g, p);
    const auto& h = proj.graph;
    REQUIRE(h.upper_count() == g.upper_count());
    REQUIRE(h.lower_count() == g.lower_count());
    for (const Edge& e : h.edges()) {
      REQUIRE(e.upper >= h.lower_count());
      REQUIRE(e.lower < h.lower_count());
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      REQUIRE(h.degree(proj.mapping.to_projected(v)) == g.degree(v));
      REQUIRE(g.is_upper(v) == h.is_upper(proj.mapping.to_projected(v)));
      REQUIRE(h.label(proj.mapping.to_projected(v)) == g.label(v));
    }
    // Rank 0 holds the highest priority in each layer.
    for (VertexId x = 1; x < h.vertex_count(); ++x) {
      if (h.is_upper(x) != h.is_upper(x - 1)) continue;
      REQUIRE(p[proj.mapping.to_original(x - 1)] > p[proj.mapping.to_original(x)]);
    }
    REQUIRE(oracle::butterflies(h) == oracle::butterflies(g));
    REQUIRE(count_butterflies(h, Algorithm::vp).butterflies ==
            count_butterflies(g, Algorithm::vp).butterflies);
  }
}
