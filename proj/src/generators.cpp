#include "bfly/generators.hpp"

#include "bfly/errors.hpp"
#include "bfly/rng.hpp"

namespace bfly::gen {

namespace {

// Builds from layer-local indices: upper i maps to l + i, lower j to j.
BipartiteGraph from_local(std::uint32_t r, std::uint32_t l,
                          const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [i, j] : pairs) edges.push_back({l + i, j});
  return BipartiteGraph(r, l, std::move(edges));
}

}  // namespace

BipartiteGraph hub_graph(std::uint32_t a, std::uint32_t b) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(2ULL * a + 2ULL * b);
  for (std::uint32_t hub = 0; hub < 2; ++hub) {
    for (std::uint32_t j = 0; j < a; ++j) pairs.emplace_back(hub, j);
  }
  for (std::uint32_t i = 0; i < b; ++i) {
    pairs.emplace_back(2 + i, a);
    pairs.emplace_back(2 + i, a + 1);
  }
  return from_local(b + 2, a + 2, pairs);
}

BipartiteGraph hub_path_graph(std::uint32_t a) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(3ULL * a);
  for (std::uint32_t j = 0; j < a; ++j) pairs.emplace_back(0, j);
  for (std::uint32_t i = 1; i <= a; ++i) pairs.emplace_back(i, a);
  for (std::uint32_t j = 0; j < a; ++j) pairs.emplace_back(j + 1, j);
  return from_local(a + 1, a + 1, pairs);
}

BipartiteGraph complete(std::uint32_t r, std::uint32_t l) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(static_cast<std::size_t>(r) * l);
  for (std::uint32_t i = 0; i < r; ++i) {
    for (std::uint32_t j = 0; j < l; ++j) pairs.emplace_back(i, j);
  }
  return from_local(r, l, pairs);
}

BipartiteGraph random_bipartite(std::uint32_t r, std::uint32_t l, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < r; ++i) {
    for (std::uint32_t j = 0; j < l; ++j) {
      if (rng.unit() < p) pairs.emplace_back(i, j);
    }
  }
  return from_local(r, l, pairs);
}

BipartiteGraph star(std::uint32_t k) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t j = 0; j < k; ++j) pairs.emplace_back(0, j);
  return from_local(1, k, pairs);
}

BipartiteGraph path(std::uint32_t edges) {
  const std::uint32_t r = (edges + 2) / 2;
  const std::uint32_t l = (edges + 1) / 2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t e = 0; e < edges; ++e) {
    // Edge e joins u(⌈e/2⌉) and v(⌊e/2⌋).
    pairs.emplace_back((e + 1) / 2, e / 2);
  }
  return from_local(edges == 0 ? 0 : r, l, pairs);
}

BipartiteGraph four_cycle() { return complete(2, 2); }

}  // namespace bfly::gen
