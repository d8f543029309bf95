#include "bfly/parallel.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <thread>

#include "bfly/errors.hpp"
#include "bfly/rng.hpp"
#include "bfly/wedge_counter.hpp"
#include "wedge_kernels.hpp"

namespace bfly {

namespace {

std::vector<VertexId> by_descending_priority(const PriorityMap& p) {
  return {p.ascending().rbegin(), p.ascending().rend()};
}

std::vector<VertexId> by_descending_estimate(const BipartiteGraph& g, const PriorityMap& p) {
  const auto estimates = estimate_workloads(g, p);
  std::vector<VertexId> order = by_descending_priority(p);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return estimates[a] > estimates[b];
  });
  return order;
}

unsigned affordable_threads(std::size_t vertex_count, unsigned requested) {
  const long pages = sysconf(_SC_AVPHYS_PAGES);
  const long page_size = sysconf(_SC_PAGESIZE);
  if (pages <= 0 || page_size <= 0 || vertex_count == 0) return requested;
  // Counter array plus a worst-case touched list per worker.
  const std::uint64_t per_thread = 2ULL * sizeof(std::uint32_t) * vertex_count;
  const std::uint64_t available = static_cast<std::uint64_t>(pages) * page_size / 2;
  const std::uint64_t fit = std::max<std::uint64_t>(1, available / per_thread);
  return static_cast<unsigned>(std::min<std::uint64_t>(requested, fit));
}

struct Worker {
  ThreadReport report;
  std::uint64_t starts = 0;
  std::uint64_t middles = 0;
  std::exception_ptr error;
};

void process_start(const BipartiteGraph& g, const PriorityMap& p, VertexId u,
                   WedgeCounter& counter, Worker& worker) {
  ++worker.starts;
  ++worker.report.vertices;
  worker.middles +=
      detail::for_each_vpp_wedge(g, p, u, [&](VertexId, VertexId w, EdgeId, EdgeId) {
        counter.increment(w);
        ++worker.report.wedges_processed;
      });
  worker.report.butterflies = checked_add(worker.report.butterflies, counter.drain_pairs());
}

}  // namespace

std::uint64_t estimate_workload(const BipartiteGraph& g, const PriorityMap& p, VertexId u) {
  std::uint64_t total = 0;
  for (VertexId v : g.neighbors(u)) {
    for (VertexId w : g.neighbors(v)) {
      if (p[w] > p[v]) ++total;
    }
  }
  return total;
}

std::vector<std::uint64_t> estimate_workloads(const BipartiteGraph& g, const PriorityMap& p) {
  std::vector<std::uint64_t> higher(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    if (p[e.upper] > p[e.lower]) {
      ++higher[e.lower];
    } else {
      ++higher[e.upper];
    }
  }
  std::vector<std::uint64_t> result(g.vertex_count(), 0);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    for (VertexId v : g.neighbors(u)) result[u] += higher[v];
  }
  return result;
}

std::vector<std::uint64_t> vertex_workloads(const BipartiteGraph& g, const PriorityMap& p) {
  detail::require_priority_sorted(g, p);
  std::vector<std::uint64_t> result(g.vertex_count(), 0);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    detail::for_each_vpp_wedge(g, p, u,
                               [&](VertexId, VertexId, EdgeId, EdgeId) { ++result[u]; });
  }
  return result;
}

Assignment assign_longest_first(std::span<const std::uint64_t> workloads, unsigned threads) {
  if (threads == 0) throw ConfigError("thread count must be at least 1");
  std::vector<VertexId> jobs(workloads.size());
  std::iota(jobs.begin(), jobs.end(), VertexId{0});
  std::stable_sort(jobs.begin(), jobs.end(),
                   [&](VertexId a, VertexId b) { return workloads[a] > workloads[b]; });
  Assignment assignment(threads);
  std::vector<std::uint64_t> load(threads, 0);
  for (VertexId job : jobs) {
    const auto target =
        static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
    assignment[target].push_back(job);
    load[target] += workloads[job];
  }
  return assignment;
}

Assignment make_static_assignment(const BipartiteGraph& g, const PriorityMap& p,
                                  const ScheduleConfig& cfg) {
  if (cfg.threads == 0) throw ConfigError("thread count must be at least 1");
  const unsigned t = cfg.threads;
  Assignment assignment(t);
  switch (cfg.strategy) {
    case Strategy::priority:
      for (VertexId u : by_descending_priority(p)) assignment[p[u] % t].push_back(u);
      break;
    case Strategy::random: {
      Rng rng(cfg.seed);
      for (VertexId u : by_descending_priority(p)) assignment[rng.below(t)].push_back(u);
      break;
    }
    case Strategy::heuristic: {
      const auto estimates = estimate_workloads(g, p);
      Assignment greedy = assign_longest_first(estimates, t);
      // Ties in the estimate go to the higher-priority vertex first.
      for (auto& list : greedy) {
        std::stable_sort(list.begin(), list.end(), [&](VertexId a, VertexId b) {
          return estimates[a] != estimates[b] ? estimates[a] > estimates[b] : p[a] > p[b];
        });
      }
      assignment = std::move(greedy);
      break;
    }
  }
  return assignment;
}

std::vector<VertexId> dispatch_order(const BipartiteGraph& g, const PriorityMap& p,
                                     const ScheduleConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::priority:
      return by_descending_priority(p);
    case Strategy::random: {
      std::vector<VertexId> order = by_descending_priority(p);
      Rng rng(cfg.seed);
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
      }
      return order;
    }
    case Strategy::heuristic:
      return by_descending_estimate(g, p);
  }
  throw std::invalid_argument("unknown strategy");
}

Assignment simulate_dynamic(std::span<const VertexId> order,
                            std::span<const std::uint64_t> workloads, unsigned threads) {
  if (threads == 0) throw ConfigError("thread count must be at least 1");
  using Slot = std::pair<std::uint64_t, unsigned>;  // (busy until, thread)
  std::priority_queue<Slot, std::vector<Slot>, std::greater<>> idle;
  for (unsigned i = 0; i < threads; ++i) idle.push({0, i});
  Assignment assignment(threads);
  for (VertexId job : order) {
    auto [busy_until, thread] = idle.top();
    idle.pop();
    assignment[thread].push_back(job);
    idle.push({busy_until + workloads[job], thread});
  }
  return assignment;
}

std::uint64_t makespan(const Assignment& assignment, std::span<const std::uint64_t> workloads) {
  std::vector<bool> seen(workloads.size(), false);
  std::size_t assigned = 0;
  std::uint64_t worst = 0;
  for (const auto& list : assignment) {
    std::uint64_t sum = 0;
    for (VertexId v : list) {
      if (v >= workloads.size() || seen[v]) {
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " is out of range or assigned twice");
      }
      seen[v] = true;
      ++assigned;
      sum += workloads[v];
    }
    worst = std::max(worst, sum);
  }
  if (assigned != workloads.size()) {
    throw std::invalid_argument(std::to_string(workloads.size() - assigned) +
                                " vertices are unassigned");
  }
  return worst;
}

ParallelReport count_parallel(const BipartiteGraph& g, const PriorityMap& p,
                              const ScheduleConfig& cfg) {
  detail::require_priority_sorted(g, p);
  if (cfg.threads == 0) throw ConfigError("thread count must be at least 1");
  const auto begin = std::chrono::steady_clock::now();

  ParallelReport result;
  ScheduleConfig effective = cfg;
  effective.threads = affordable_threads(g.vertex_count(), cfg.threads);
  result.threads_used = effective.threads;

  std::vector<Worker> workers(effective.threads);
  const bool dynamic = effective.mode == ScheduleMode::dynamic;
  const std::vector<VertexId> order =
      dynamic ? dispatch_order(g, p, effective) : std::vector<VertexId>{};
  const Assignment assignment = dynamic ? Assignment{} : make_static_assignment(g, p, effective);
  std::atomic<std::size_t> cursor{0};
  {
    // Joins on scope exit, before the shared state above is destroyed.
    std::vector<std::jthread> pool;
    pool.reserve(effective.threads);
    for (unsigned i = 0; i < effective.threads; ++i) {
      pool.emplace_back([&, i] {
        Worker& worker = workers[i];
        try {
          WedgeCounter counter(g.vertex_count());
          if (dynamic) {
            for (std::size_t k = cursor.fetch_add(1, std::memory_order_relaxed); k < order.size();
                 k = cursor.fetch_add(1, std::memory_order_relaxed)) {
              process_start(g, p, order[k], counter, worker);
            }
          } else {
            for (VertexId u : assignment[i]) process_start(g, p, u, counter, worker);
          }
        } catch (...) {
          worker.error = std::current_exception();
        }
      });
    }
  }

  for (const Worker& worker : workers) {
    if (worker.error) std::rethrow_exception(worker.error);
  }
  for (const Worker& worker : workers) {
    result.total.butterflies = checked_add(result.total.butterflies, worker.report.butterflies);
    result.total.wedges_processed += worker.report.wedges_processed;
    result.total.start_accesses += worker.starts;
    result.total.middle_accesses += worker.middles;
    result.threads.push_back(worker.report);
  }
  result.total.end_accesses = result.total.wedges_processed;
  result.total.elapsed = std::chrono::steady_clock::now() - begin;
  return result;
}

}  // namespace bfly
