#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bfly/approx.hpp"
#include "bfly/edge_count.hpp"
#include "bfly/edge_list.hpp"
#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/external.hpp"
#include "bfly/generators.hpp"
#include "bfly/parallel.hpp"
#include "bfly/projection.hpp"

namespace bfly::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string format;
  std::string algo = "vpp";
  unsigned threads = 1;
  std::string schedule = "dynamic";
  std::string strategy = "priority";
  std::string memory_budget = "64MiB";
  std::uint64_t block_size = 4096;
  std::string scratch_dir;
  bool keep_scratch = false;
  double p = 0.5;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool skip_exact = false;
  std::string kind;
  std::uint32_t a = 1000;
  std::uint32_t b = 1000;
  std::uint32_t r = 10;
  std::uint32_t l = 10;
  std::uint32_t k = 10;
  std::uint32_t length = 3;
};

/// Counts are numbers while they fit in 64 bits, decimal strings beyond.
Json count_json(Count c) {
  if (fits_u64(c)) return static_cast<std::uint64_t>(c);
  return to_string(c);
}

double seconds(std::chrono::nanoseconds d) {
  return std::chrono::duration<double>(d).count();
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "." + std::to_string(i), out);
    }
  } else if (j.is_string()) {
    out << prefix << '\t' << j.get<std::string>() << '\n';
  } else {
    out << prefix << '\t' << j.dump() << '\n';
  }
}

void emit(const Json& report, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "tsv") {
    flatten(report, "", out);
  } else {
    out << report.dump(2) << '\n';
  }
}

/// Runs `body` against the --output file when given, else `out`.
template <typename Body>
void with_output(const RunConfig& cfg, std::ostream& out, Body&& body) {
  if (cfg.output.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw IoError("cannot open output file " + cfg.output);
  body(file);
  file.flush();
  if (!file) throw IoError("failed writing output file " + cfg.output);
}

std::uint64_t parse_size(const std::string& text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == 0) throw ConfigError("invalid size '" + text + "'");
  const std::uint64_t value = std::stoull(text.substr(0, pos));
  std::string unit;
  for (char c : text.substr(pos)) unit += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::uint64_t scale = 0;
  if (unit.empty() || unit == "b") {
    scale = 1;
  } else if (unit == "k" || unit == "kib" || unit == "kb") {
    scale = 1ULL << 10;
  } else if (unit == "m" || unit == "mib" || unit == "mb") {
    scale = 1ULL << 20;
  } else if (unit == "g" || unit == "gib" || unit == "gb") {
    scale = 1ULL << 30;
  } else {
    throw ConfigError("invalid size unit in '" + text + "'");
  }
  if (value > UINT64_MAX / scale) throw ConfigError("size '" + text + "' is too large");
  return value * scale;
}

ParseResult load(const RunConfig& cfg, std::ostream& err) {
  ParseResult parsed = read_edge_list_file(cfg.input);
  if (parsed.duplicates_removed > 0) {
    err << "warning: removed " << parsed.duplicates_removed << " duplicate edge(s)\n";
  }
  return parsed;
}

Json graph_json(const ParseResult& parsed) {
  const BipartiteGraph& g = parsed.graph;
  return Json{{"upper_vertices", g.upper_count()},
              {"lower_vertices", g.lower_count()},
              {"edges", g.edge_count()},
              {"duplicates_removed", parsed.duplicates_removed}};
}

void add_report(Json& j, const CountReport& report) {
  j["butterflies"] = count_json(report.butterflies);
  j["wedges_processed"] = report.wedges_processed;
  j["start_accesses"] = report.start_accesses;
  j["middle_accesses"] = report.middle_accesses;
  j["end_accesses"] = report.end_accesses;
  j["elapsed_seconds"] = seconds(report.elapsed);
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "ibs") return Algorithm::ibs;
  if (name == "vp") return Algorithm::vp;
  return Algorithm::vpp;
}

void cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = load(cfg, err);
  const CountReport report = count_butterflies(parsed.graph, parse_algorithm(cfg.algo));
  Json j{{"command", "count"}, {"algorithm", cfg.algo}};
  j.update(graph_json(parsed));
  add_report(j, report);
  with_output(cfg, out, [&](std::ostream& o) { emit(j, cfg, o); });
}

void cmd_edges(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = load(cfg, err);
  const BipartiteGraph& g = parsed.graph;
  const EdgeCounts counts = count_per_edge(g);
  with_output(cfg, out, [&](std::ostream& o) {
    if (cfg.format == "json") {
      Json rows = Json::array();
      for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge e = g.edges()[i];
        rows.push_back({{"upper", g.label(e.upper)},
                        {"lower", g.label(e.lower)},
                        {"butterflies", count_json(counts.per_edge[i])}});
      }
      Json j{{"command", "edges"}, {"butterflies", count_json(counts.butterflies)}};
      j["per_edge"] = std::move(rows);
      o << j.dump(2) << '\n';
    } else {
      write_edge_counts_tsv(o, g, counts);
    }
  });
}

void cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = load(cfg, err);
  const BipartiteGraph& g = parsed.graph;
  const CountReport report = count_butterflies(g, Algorithm::vpp);
  const Count caterpillars = count_caterpillars(g);
  Json j{{"command", "stats"}};
  j.update(graph_json(parsed));
  j["butterflies"] = count_json(report.butterflies);
  j["caterpillars"] = count_json(caterpillars);
  if (caterpillars == 0) {
    j["clustering_coefficient"] = nullptr;
  } else {
    j["clustering_coefficient"] =
        to_double(checked_mul(4, report.butterflies)) / to_double(caterpillars);
  }
  j["sum_min_degree"] = sum_min_degree(g);
  j["sum_squared_degree_upper"] = sum_squared_degree_upper(g);
  j["sum_squared_degree_lower"] = sum_squared_degree_lower(g);
  with_output(cfg, out, [&](std::ostream& o) { emit(j, cfg, o); });
}

void cmd_parallel(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = load(cfg, err);
  ScheduleConfig schedule;
  schedule.mode = cfg.schedule == "static" ? ScheduleMode::static_ : ScheduleMode::dynamic;
  schedule.strategy = cfg.strategy == "random"      ? Strategy::random
                      : cfg.strategy == "heuristic" ? Strategy::heuristic
                                                    : Strategy::priority;
  schedule.threads = cfg.threads;
  schedule.seed = cfg.seed;
  const PreparedGraph prepared = prepare_for_counting(parsed.graph);
  const ParallelReport report = count_parallel(prepared.graph, prepared.priority, schedule);
  Json j{{"command", "parallel"},
         {"schedule", cfg.schedule},
         {"strategy", cfg.strategy},
         {"seed", cfg.seed},
         {"threads_requested", cfg.threads},
         {"threads_used", report.threads_used}};
  j.update(graph_json(parsed));
  add_report(j, report.total);
  Json threads = Json::array();
  for (std::size_t i = 0; i < report.threads.size(); ++i) {
    const ThreadReport& t = report.threads[i];
    threads.push_back({{"thread", i},
                       {"butterflies", count_json(t.butterflies)},
                       {"wedges_processed", t.wedges_processed},
                       {"vertices", t.vertices}});
  }
  j["per_thread"] = std::move(threads);
  with_output(cfg, out, [&](std::ostream& o) { emit(j, cfg, o); });
}

void cmd_em(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  EmConfig em;
  em.memory_budget = parse_size(cfg.memory_budget);
  em.block_size = cfg.block_size;
  em.keep_scratch = cfg.keep_scratch;
  if (!cfg.scratch_dir.empty()) em.scratch_dir = cfg.scratch_dir;
  const EmResult result = em_count(cfg.input, em);
  Json j{{"command", "em"},
         {"memory_budget", em.memory_budget},
         {"block_size", em.block_size},
         {"vertices", result.vertices},
         {"edges", result.edges}};
  add_report(j, result.report);
  j["pairs_emitted"] = result.io.pairs_emitted;
  j["blocks_read"] = result.io.blocks_read;
  j["blocks_written"] = result.io.blocks_written;
  j["merge_passes"] = result.io.merge_passes;
  with_output(cfg, out, [&](std::ostream& o) { emit(j, cfg, o); });
}

void cmd_approx(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ParseResult parsed = load(cfg, err);
  TrialSummary summary = run_trials(parsed.graph, cfg.p, cfg.trials, cfg.seed, cfg.threads);
  if (!cfg.skip_exact) attach_exact(summary, count_exact_vpp(parsed.graph).butterflies);
  Json j{{"command", "approx"},
         {"p", summary.p},
         {"trials", summary.estimates.size()},
         {"seed", summary.seed},
         {"mean", summary.mean},
         {"variance", summary.variance},
         {"standard_error", summary.standard_error},
         {"mean_wedges", summary.mean_wedges}};
  if (summary.exact) j["exact"] = count_json(*summary.exact);
  if (summary.relative_error) j["relative_error"] = *summary.relative_error;
  j["estimates"] = summary.estimates;
  with_output(cfg, out, [&](std::ostream& o) { emit(j, cfg, o); });
}

void cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  BipartiteGraph g;
  std::ostringstream header;
  header << "% bip unweighted\n% " << cfg.kind;
  if (cfg.kind == "hub") {
    g = gen::hub_graph(cfg.a, cfg.b);
    header << " a=" << cfg.a << " b=" << cfg.b;
  } else if (cfg.kind == "hub-path") {
    g = gen::hub_path_graph(cfg.a);
    header << " a=" << cfg.a;
  } else if (cfg.kind == "complete") {
    g = gen::complete(cfg.r, cfg.l);
    header << " r=" << cfg.r << " l=" << cfg.l;
  } else if (cfg.kind == "random") {
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw ConfigError("--p must lie in [0, 1]");
    g = gen::random_bipartite(cfg.r, cfg.l, cfg.p, cfg.seed);
    header << " r=" << cfg.r << " l=" << cfg.l << " p=" << cfg.p << " seed=" << cfg.seed;
  } else if (cfg.kind == "star") {
    g = gen::star(cfg.k);
    header << " k=" << cfg.k;
  } else {
    g = gen::path(cfg.length);
    header << " length=" << cfg.length;
  }
  with_output(cfg, out, [&](std::ostream& o) {
    o << header.str() << '\n';
    write_edge_list(o, g);
  });
}

void add_format(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "tsv"}));
  sub->add_option("--output", cfg.output, "Write the report to this file instead of stdout");
}

void add_input(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("input", cfg.input, "Edge-list file: 'upper lower' label pairs per line")
      ->required();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Bipartite butterfly counting"};
  app.name("bfly");
  app.require_subcommand(1);

  auto* count = app.add_subcommand("count", "Exact global butterfly count");
  add_input(count, cfg);
  count->add_option("--algo", cfg.algo, "Counting algorithm")
      ->check(CLI::IsMember({"ibs", "vp", "vpp"}))
      ->capture_default_str();
  add_format(count, cfg);

  auto* edges = app.add_subcommand("edges", "Per-edge butterfly counts (TSV by default)");
  add_input(edges, cfg);
  add_format(edges, cfg);

  auto* stats = app.add_subcommand("stats", "Butterflies, caterpillars and clustering coefficient");
  add_input(stats, cfg);
  add_format(stats, cfg);

  auto* parallel = app.add_subcommand("parallel", "Multi-threaded exact count");
  add_input(parallel, cfg);
  parallel->add_option("--threads", cfg.threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  parallel->add_option("--schedule", cfg.schedule, "Scheduling mode")
      ->check(CLI::IsMember({"dynamic", "static"}))
      ->capture_default_str();
  parallel->add_option("--strategy", cfg.strategy, "Start-vertex ordering/assignment")
      ->check(CLI::IsMember({"priority", "random", "heuristic"}))
      ->capture_default_str();
  parallel->add_option("--seed", cfg.seed, "Seed for the random strategy")->capture_default_str();
  add_format(parallel, cfg);

  auto* em = app.add_subcommand("em", "Out-of-core exact count under a memory budget");
  add_input(em, cfg);
  em->add_option("--memory-budget", cfg.memory_budget, "Memory budget, e.g. 1MiB or 1048576")
      ->capture_default_str();
  em->add_option("--block-size", cfg.block_size, "Block size in bytes")->capture_default_str();
  em->add_option("--scratch-dir", cfg.scratch_dir, "Directory for scratch files");
  em->add_flag("--keep-scratch", cfg.keep_scratch, "Keep scratch files after the run");
  add_format(em, cfg);

  auto* approx = app.add_subcommand("approx", "Edge-sampling estimate of the butterfly count");
  add_input(approx, cfg);
  approx->add_option("--p", cfg.p, "Edge sampling probability in (0, 1]")->capture_default_str();
  approx->add_option("--trials", cfg.trials, "Number of independent trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  approx->add_option("--seed", cfg.seed, "Base seed; trial i uses a derived seed")
      ->capture_default_str();
  approx->add_option("--threads", cfg.threads, "Threads running trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  approx->add_flag("--no-exact", cfg.skip_exact, "Skip the exact count and relative error");
  add_format(approx, cfg);

  auto* gen = app.add_subcommand("gen", "Write a synthetic graph as an edge list");
  gen->add_option("kind", cfg.kind, "hub, hub-path, complete, random, star or path")
      ->required()
      ->check(CLI::IsMember({"hub", "hub-path", "complete", "random", "star", "path"}));
  gen->add_option("--a", cfg.a, "hub/hub-path: lower vertices on the upper hubs")
      ->capture_default_str();
  gen->add_option("--b", cfg.b, "hub: upper vertices on the lower hubs")->capture_default_str();
  gen->add_option("--r", cfg.r, "complete/random: upper vertices")->capture_default_str();
  gen->add_option("--l", cfg.l, "complete/random: lower vertices")->capture_default_str();
  gen->add_option("--k", cfg.k, "star: leaves")->capture_default_str();
  gen->add_option("--length", cfg.length, "path: edges")->capture_default_str();
  gen->add_option("--p", cfg.p, "random: edge probability")->capture_default_str();
  gen->add_option("--seed", cfg.seed, "random: seed")->capture_default_str();
  gen->add_option("--output", cfg.output, "Write the graph to this file instead of stdout");

  std::vector<const char*> argv{"bfly"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.format.empty()) cfg.format = cfg.command == "edges" ? "tsv" : "json";

  try {
    if (cfg.command == "count") cmd_count(cfg, out, err);
    else if (cfg.command == "edges") cmd_edges(cfg, out, err);
    else if (cfg.command == "stats") cmd_stats(cfg, out, err);
    else if (cfg.command == "parallel") cmd_parallel(cfg, out, err);
    else if (cfg.command == "em") cmd_em(cfg, out, err);
    else if (cfg.command == "approx") cmd_approx(cfg, out, err);
    else cmd_gen(cfg, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << '\n';
    return kOverflow;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace bfly::cli
