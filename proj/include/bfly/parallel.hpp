#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfly/exact.hpp"
#include "bfly/graph.hpp"
#include "bfly/priority.hpp"

namespace bfly {

enum class ScheduleMode { dynamic, static_ };
enum class Strategy { priority, random, heuristic };

struct ScheduleConfig {
  ScheduleMode mode = ScheduleMode::dynamic;
  Strategy strategy = Strategy::priority;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

struct ThreadReport {
  Count butterflies = 0;
  std::uint64_t wedges_processed = 0;
  std::uint64_t vertices = 0;
};

struct ParallelReport {
  CountReport total;
  std::vector<ThreadReport> threads;
  /// May be below the requested count when per-thread counters would not fit
  /// in available memory.
  unsigned threads_used = 0;
};

using Assignment = std::vector<std::vector<VertexId>>;

/// |{w ∈ N(v), v ∈ N(u) : p(w) > p(v)}| counted per (v, w) entry: the
/// static heuristic's workload guess for start vertex u.
std::uint64_t estimate_workload(const BipartiteGraph& g, const PriorityMap& p, VertexId u);

/// estimate_workload for every vertex in O(n + m).
std::vector<std::uint64_t> estimate_workloads(const BipartiteGraph& g, const PriorityMap& p);

/// Wedges count_vpp actually processes from each start vertex.
std::vector<std::uint64_t> vertex_workloads(const BipartiteGraph& g, const PriorityMap& p);

/// Longest-first greedy: jobs in non-ascending workload order (ties by lower
/// index) each go to the currently least-loaded thread (ties by lower thread).
Assignment assign_longest_first(std::span<const std::uint64_t> workloads, unsigned threads);

/// Per-thread start-vertex lists for the static mode:
///   priority  - vertex with priority p goes to thread p mod t
///   random    - uniform thread per vertex, seeded
///   heuristic - assign_longest_first over estimate_workloads
/// Each list is in the order the thread will process it.
Assignment make_static_assignment(const BipartiteGraph& g, const PriorityMap& p,
                                  const ScheduleConfig& cfg);

/// Queue order for the dynamic mode: non-ascending priority, a seeded
/// shuffle, or non-ascending estimated workload.
std::vector<VertexId> dispatch_order(const BipartiteGraph& g, const PriorityMap& p,
                                     const ScheduleConfig& cfg);

/// List scheduling: each job in `order` goes to the thread that becomes idle
/// first under the given workloads (ties by lower thread index).
Assignment simulate_dynamic(std::span<const VertexId> order,
                            std::span<const std::uint64_t> workloads, unsigned threads);

/// max over threads of the summed workload. Throws std::invalid_argument
/// unless every index of `workloads` is assigned exactly once.
std::uint64_t makespan(const Assignment& assignment, std::span<const std::uint64_t> workloads);

/// Shared-memory cache-aware counting over a prepared graph. Each worker owns
/// its counter and partial sums; the dynamic mode hands out start vertices
/// through an atomic cursor.
ParallelReport count_parallel(const BipartiteGraph& g, const PriorityMap& p,
                              const ScheduleConfig& cfg);

}  // namespace bfly
