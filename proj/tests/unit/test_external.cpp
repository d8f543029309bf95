#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include <unistd.h>

#include "bfly/edge_list.hpp"
#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/external.hpp"
#include "bfly/generators.hpp"
#include "bfly/projection.hpp"
#include "support/oracles.hpp"

using namespace bfly;
namespace fs = std::filesystem;

namespace {

/// Fresh directory per test case, removed afterwards.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("bfly_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::size_t file_count() const {
    return static_cast<std::size_t>(std::distance(fs::directory_iterator(path), {}));
  }
};

fs::path write_graph(const TempDir& dir, const BipartiteGraph& g, const std::string& name) {
  const fs::path file = dir.path / name;
  std::ofstream out(file);
  write_edge_list(out, g);
  return file;
}

EmConfig config(const TempDir& dir, std::uint64_t budget, std::uint64_t block = 4096) {
  EmConfig cfg;
  cfg.memory_budget = budget;
  cfg.block_size = block;
  cfg.scratch_dir = dir.path / "scratch";
  fs::create_directories(cfg.scratch_dir);
  return cfg;
}

CountReport in_memory(const BipartiteGraph& g) { return count_butterflies(g, Algorithm::vpp); }

std::vector<unsigned char> random_records(std::size_t count, std::size_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<unsigned char> bytes(count * width);
  for (auto& b : bytes) b = static_cast<unsigned char>(rng());
  return bytes;
}

void write_bytes(const fs::path& p, const std::vector<unsigned char>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<unsigned char> read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::vector<unsigned char>> split_sorted(const std::vector<unsigned char>& bytes,
                                                     std::size_t width) {
  std::vector<std::vector<unsigned char>> recs;
  for (std::size_t i = 0; i < bytes.size(); i += width) {
    recs.emplace_back(bytes.begin() + static_cast<std::ptrdiff_t>(i),
                      bytes.begin() + static_cast<std::ptrdiff_t>(i + width));
  }
  std::sort(recs.begin(), recs.end());
  return recs;
}

std::uint64_t ceil_log(std::uint64_t runs, std::uint64_t k) {
  std::uint64_t passes = 0;
  for (std::uint64_t reach = 1; reach < runs; reach *= k) ++passes;
  return passes;
}

}  // namespace

TEST_CASE("em config: minimum block and budget") {
  EmConfig cfg;
  cfg.block_size = 2048;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.block_size = 4096;
  cfg.memory_budget = 4 * 4096 - 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.memory_budget = 4 * 4096;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.merge_fan_in() == 3);
}

TEST_CASE("external sort: already sorted input is unchanged") {
  TempDir dir;
  auto recs = split_sorted(random_records(5000, 16, 1), 16);
  std::vector<unsigned char> bytes;
  for (const auto& r : recs) bytes.insert(bytes.end(), r.begin(), r.end());
  write_bytes(dir.path / "in", bytes);
  const auto stats = external_sort(dir.path / "in", dir.path / "out", 16, config(dir, 16384));
  CHECK(read_bytes(dir.path / "out") == bytes);
  CHECK(stats.records == 5000);
}

TEST_CASE("external sort: input within budget needs no merge") {
  TempDir dir;
  write_bytes(dir.path / "in", random_records(1000, 16, 2));
  const auto cfg = config(dir, 1 << 20);
  const auto stats = external_sort(dir.path / "in", dir.path / "out", 16, cfg);
  CHECK(stats.initial_runs == 1);
  CHECK(stats.io.merge_passes == 0);
  const auto out = read_bytes(dir.path / "out");
  CHECK(split_sorted(out, 16) == split_sorted(read_bytes(dir.path / "in"), 16));
  for (std::size_t i = 16; i < out.size(); i += 16) {
    REQUIRE(std::memcmp(out.data() + i - 16, out.data() + i, 16) <= 0);
  }
}

TEST_CASE("external sort: exactly one full buffer") {
  TempDir dir;
  const auto cfg = config(dir, 16384);
  const std::uint64_t per_run = records_per_run(16, cfg);
  write_bytes(dir.path / "in", random_records(per_run, 16, 3));
  const auto stats = external_sort(dir.path / "in", dir.path / "out", 16, cfg);
  CHECK(stats.io.merge_passes == 0);
  CHECK(read_bytes(dir.path / "out").size() == per_run * 16);
}

TEST_CASE("external sort: merge passes follow ceil(log_k runs)") {
  TempDir dir;
  const auto cfg = config(dir, 16384);
  const std::uint64_t k = cfg.merge_fan_in();
  const std::uint64_t per_run = records_per_run(16, cfg);
  CHECK(k == 3);
  CHECK(per_run == 1024);
  for (std::uint64_t runs : {2u, 3u, 4u, 9u, 10u, 27u, 28u}) {
    const auto input = random_records(per_run * runs - 7, 16, runs);
    write_bytes(dir.path / "in", input);
    const auto stats = external_sort(dir.path / "in", dir.path / "out", 16, cfg);
    CHECK(stats.initial_runs == runs);
    CHECK(stats.io.merge_passes == ceil_log(runs, k));
    CHECK(stats.io.merge_passes ==
          static_cast<std::uint64_t>(std::ceil(std::log(double(runs)) / std::log(double(k)) - 1e-9)));
    const auto out = read_bytes(dir.path / "out");
    REQUIRE(out.size() == input.size());
    for (std::size_t i = 16; i < out.size(); i += 16) {
      REQUIRE(std::memcmp(out.data() + i - 16, out.data() + i, 16) <= 0);
    }
    CHECK(split_sorted(out, 16) == split_sorted(input, 16));
  }
  CHECK(dir.file_count() == 3);  // in, out, scratch
}

TEST_CASE("external sort: other record widths") {
  TempDir dir;
  const auto cfg = config(dir, 16384);
  CHECK(records_per_run(8, cfg) == 2048);
  CHECK(records_per_run(12, cfg) == 1024);
  for (std::size_t width : {8u, 12u, 24u}) {
    const auto input = random_records(7000, width, width);
    write_bytes(dir.path / "in", input);
    const auto stats = external_sort(dir.path / "in", dir.path / "out", width, cfg);
    CHECK(stats.io.merge_passes >= 1);
    const auto out = read_bytes(dir.path / "out");
    for (std::size_t i = width; i < out.size(); i += width) {
      REQUIRE(std::memcmp(out.data() + i - width, out.data() + i, width) <= 0);
    }
    CHECK(split_sorted(out, width) == split_sorted(input, width));
  }
}

TEST_CASE("external sort: truncated record is an I/O error") {
  TempDir dir;
  write_bytes(dir.path / "in", random_records(10, 16, 4));
  std::vector<unsigned char> bytes = read_bytes(dir.path / "in");
  bytes.pop_back();
  write_bytes(dir.path / "in", bytes);
  CHECK_THROWS_AS(external_sort(dir.path / "in", dir.path / "out", 16, config(dir, 16384)),
                  IoError);
}

TEST_CASE("em: single 4-cycle") {
  TempDir dir;
  const auto file = write_graph(dir, gen::four_cycle(), "cycle.txt");
  const auto r = em_count(file, config(dir, 1ULL << 30));
  CHECK(r.report.butterflies == 1);
  CHECK(r.io.pairs_emitted == 2);
  CHECK(r.vertices == 4);
  CHECK(r.edges == 4);
  CHECK(r.io.pairs_emitted == in_memory(gen::four_cycle()).wedges_processed);
}

TEST_CASE("em: small graphs with a large budget") {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = oracle::random_graph(seed);
    const auto file = write_graph(dir, g, "g.txt");
    const auto r = em_count(file, config(dir, 64ULL << 20));
    const auto expected = in_memory(g);
    REQUIRE(r.report.butterflies == expected.butterflies);
    REQUIRE(r.io.pairs_emitted == expected.wedges_processed);
    REQUIRE(r.io.pairs_emitted <= sum_min_degree(g));
    REQUIRE(r.report.end_accesses == r.report.wedges_processed);
  }
}

TEST_CASE("em: hub graph") {
  TempDir dir;
  const auto file = write_graph(dir, gen::hub_graph(1000, 1000), "hub.txt");
  const auto r = em_count(file, config(dir, 1 << 20));
  CHECK(r.report.butterflies == 999'000);
  CHECK(r.io.pairs_emitted == 2'000);
}

TEST_CASE("em: oversized middle vertex falls back to chunked emission") {
  TempDir dir;
  // 303 vertices leave room for ~115 neighbors per group at 16 KiB.
  const auto g = gen::complete(3, 300);
  const auto file = write_graph(dir, g, "wide.txt");
  const auto r = em_count(file, config(dir, 16384));
  const auto expected = in_memory(g);
  CHECK(r.report.butterflies == 3 * 44'850);
  CHECK(r.report.butterflies == expected.butterflies);
  CHECK(r.io.pairs_emitted == expected.wedges_processed);

  std::mt19937_64 rng(9);
  std::vector<Edge> edges;
  for (VertexId j = 0; j < 250; ++j) {
    edges.push_back({250, j});
    if (rng() % 3 == 0) edges.push_back({251, j});
    if (rng() % 5 == 0) edges.push_back({252 + static_cast<VertexId>(rng() % 20), j});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const BipartiteGraph hubby(22, 250, std::move(edges));
  const auto file2 = write_graph(dir, hubby, "hubby.txt");
  const auto r2 = em_count(file2, config(dir, 16384));
  CHECK(r2.report.butterflies == brute_force_count(hubby));
  CHECK(r2.io.pairs_emitted == in_memory(hubby).wedges_processed);
}

TEST_CASE("em: vertex arrays beyond the budget are refused") {
  TempDir dir;
  const auto file = write_graph(dir, gen::star(400), "star.txt");
  CHECK_THROWS_AS(em_count(file, config(dir, 16384)), ConfigError);
}

TEST_CASE("em: I/O does not grow with the budget") {
  TempDir dir;
  const auto g = gen::random_bipartite(300, 300, 0.1, 5);
  const auto file = write_graph(dir, g, "g.txt");
  std::uint64_t previous = UINT64_MAX;
  for (std::uint64_t budget : {1ULL << 16, 1ULL << 18, 1ULL << 22}) {
    const auto r = em_count(file, config(dir, budget));
    CHECK(r.report.butterflies == in_memory(g).butterflies);
    const std::uint64_t blocks = r.io.blocks_read + r.io.blocks_written;
    CHECK(blocks <= previous);
    previous = blocks;
  }
}

TEST_CASE("em: scratch files are removed unless kept") {
  TempDir dir;
  const auto file = write_graph(dir, gen::complete(3, 4), "g.txt");
  auto cfg = config(dir, 1 << 20);
  em_count(file, cfg);
  CHECK(fs::is_empty(cfg.scratch_dir));
  cfg.keep_scratch = true;
  cfg.run_id = "kept";
  em_count(file, cfg);
  CHECK(fs::exists(cfg.scratch_dir / "kept.edges"));
  CHECK(fs::exists(cfg.scratch_dir / "kept.pairs"));
}

TEST_CASE("em: duplicates, comments and labels") {
  TempDir dir;
  const fs::path file = dir.path / "dup.txt";
  std::ofstream(file) << "% bip\n100 7\n100 7\n100 9\n5 7\n5 9\n\n";
  const auto r = em_count(file, config(dir, 1 << 20));
  CHECK(r.report.butterflies == 1);
  CHECK(r.edges == 4);
}

TEST_CASE("em: errors") {
  TempDir dir;
  CHECK_THROWS_AS(em_count(dir.path / "missing.txt", config(dir, 1 << 20)), IoError);
  const fs::path bad = dir.path / "bad.txt";
  std::ofstream(bad) << "1 2\nfoo bar\n";
  CHECK_THROWS_AS(em_count(bad, config(dir, 1 << 20)), ParseError);
  const fs::path huge = dir.path / "huge.txt";
  std::ofstream(huge) << "9223372036854775808 1\n";
  CHECK_THROWS_AS(em_count(huge, config(dir, 1 << 20)), ParseError);
  auto cfg = config(dir, 1 << 20);
  cfg.scratch_dir = dir.path / "no" / "such" / "dir";
  const auto file = write_graph(dir, gen::four_cycle(), "c.txt");
  CHECK_THROWS_AS(em_count(file, cfg), IoError);
}

TEST_CASE("property: em equals in-memory counting across budgets") {
  TempDir dir;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = oracle::random_graph(seed + 500);
    const auto file = write_graph(dir, g, "g.txt");
    const auto expected = in_memory(g);
    for (std::uint64_t budget : {16384ULL, 1ULL << 20}) {
      const auto r = em_count(file, config(dir, budget));
      REQUIRE(r.report.butterflies == expected.butterflies);
      REQUIRE(r.io.pairs_emitted == expected.wedges_processed);
    }
  }
}
