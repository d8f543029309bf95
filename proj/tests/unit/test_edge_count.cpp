#include <doctest.h>

#include <sstream>

#include "bfly/edge_count.hpp"
#include "bfly/edge_list.hpp"
#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/generators.hpp"
#include "bfly/projection.hpp"
#include "support/oracles.hpp"

using namespace bfly;

namespace {

std::vector<Count> all(std::size_t n, Count value) { return std::vector<Count>(n, value); }

BipartiteGraph two_disjoint_cycles() {
  return BipartiteGraph(4, 4, {{4, 0}, {4, 1}, {5, 0}, {5, 1}, {6, 2}, {6, 3}, {7, 2}, {7, 3}});
}

}  // namespace

TEST_CASE("edges: single 4-cycle") {
  const auto g = gen::four_cycle();
  const auto ec = count_per_edge(g);
  CHECK(ec.per_edge == all(4, 1));
  CHECK(ec.butterflies == 1);
  CHECK(brute_force_per_edge(g).per_edge == all(4, 1));
}

TEST_CASE("edges: complete 3x2 graph") {
  const auto g = gen::complete(3, 2);
  const auto ec = count_per_edge(g);
  CHECK(ec.per_edge == all(6, 2));
  CHECK(ec.butterflies == 3);
  const auto brute = brute_force_per_edge(g);
  CHECK(brute.per_edge == all(6, 2));
  CHECK(brute.butterflies == 3);
}

TEST_CASE("edges: three-edge path is all zeros") {
  const auto g = gen::path(3);
  CHECK(count_per_edge(g).per_edge == all(3, 0));
  CHECK(brute_force_per_edge(g).per_edge == all(3, 0));
}

TEST_CASE("edges: two disjoint 4-cycles") {
  const auto g = two_disjoint_cycles();
  const auto brute = brute_force_per_edge(g);
  CHECK(brute.per_edge == all(8, 1));
  CHECK(brute.butterflies == 2);
  CHECK(count_per_edge(g).per_edge == all(8, 1));
}

TEST_CASE("edges: brute force refuses large graphs") {
  CHECK_THROWS_AS(brute_force_per_edge(gen::complete(101, 100)), GuardError);
}

TEST_CASE("edges: per-vertex derivation") {
  const auto cycle = gen::four_cycle();
  CHECK(per_vertex_from_edges(count_per_edge(cycle), cycle) == all(4, 1));

  const auto g = gen::complete(3, 2);
  const auto pv = per_vertex_from_edges(count_per_edge(g), g);
  CHECK(pv == std::vector<Count>{3, 3, 2, 2, 2});

  const auto path = gen::path(5);
  CHECK(per_vertex_from_edges(count_per_edge(path), path) == all(path.vertex_count(), 0));
}

TEST_CASE("edges: odd incident sum is an internal error") {
  const auto g = gen::four_cycle();
  EdgeCounts broken;
  broken.per_edge = {1, 0, 0, 0};
  CHECK_THROWS_AS(per_vertex_from_edges(broken, g), ConsistencyError);
}

TEST_CASE("edges: TSV rows carry external labels") {
  std::istringstream in("10 20\n10 30\n11 20\n11 30\n12 20\n");
  const auto g = parse_edge_list(in).graph;
  const auto ec = count_per_edge(g);
  std::ostringstream out;
  write_edge_counts_tsv(out, g, ec);
  CHECK(out.str() == "10\t20\t1\n10\t30\t1\n11\t20\t1\n11\t30\t1\n12\t20\t0\n");
}

TEST_CASE("edges: prepared-graph pass lines up with the original edge order") {
  const auto g = oracle::random_graph(17);
  const auto prepared = prepare_for_counting(g);
  const auto direct = count_per_edge_evpp(prepared.graph, prepared.priority);
  CHECK(direct.per_edge == brute_force_per_edge(g).per_edge);
}

TEST_CASE("property: per-edge counts match both oracles") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = oracle::random_graph(seed, seed < 150 ? 40 : 15);
    const auto ec = count_per_edge(g);
    const auto brute = brute_force_per_edge(g);
    REQUIRE(ec.per_edge == brute.per_edge);
    REQUIRE(ec.butterflies == brute.butterflies);
    if (seed >= 150) {
      const oracle::Matrix adj(g);
      for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge e = g.edges()[i];
        REQUIRE(ec.per_edge[i] == oracle::per_edge_from(g, adj, e.upper, e.lower));
        REQUIRE(ec.per_edge[i] == oracle::per_edge_from(g, adj, e.lower, e.upper));
      }
    }
  }
}

TEST_CASE("property: conservation and cross-identities") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = oracle::random_graph(seed);
    const auto ec = count_per_edge(g);
    const Count total = count_butterflies(g, Algorithm::vpp).butterflies;
    Count sum = 0;
    for (Count c : ec.per_edge) sum += c;
    REQUIRE(sum == 4 * total);
    REQUIRE(ec.butterflies == total);
    REQUIRE(per_vertex_from_edges(ec, g) == count_per_vertex(g));
  }
}

TEST_CASE("property: counting from either layer gives the same per-edge counts") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = oracle::random_graph(seed);
    REQUIRE(count_per_edge(g).per_edge == count_per_edge(g.transposed()).per_edge);
  }
}
