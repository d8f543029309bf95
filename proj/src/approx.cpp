#include "bfly/approx.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/projection.hpp"
#include "bfly/rng.hpp"

namespace bfly {

ExactResult count_exact_vpp(const BipartiteGraph& g) {
  const PreparedGraph prepared = prepare_for_counting(g);
  const CountReport report = count_vpp(prepared.graph, prepared.priority);
  return {report.butterflies, report.wedges_processed};
}

BipartiteGraph sparsify(const BipartiteGraph& g, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ConfigError("sampling probability must lie in (0, 1], got " + std::to_string(p));
  }
  Rng rng(seed);
  std::vector<Edge> kept;
  kept.reserve(static_cast<std::size_t>(static_cast<double>(g.edge_count()) * p) + 16);
  for (const Edge& e : g.edges()) {
    if (rng.unit() < p) kept.push_back(e);
  }
  return BipartiteGraph(g.upper_count(), g.lower_count(), std::move(kept),
                        std::vector<Label>(g.labels().begin(), g.labels().end()));
}

Estimate estimate_butterflies(const BipartiteGraph& g, double p, std::uint64_t seed,
                              const ExactCounter& counter) {
  const BipartiteGraph sample = sparsify(g, p, seed);
  const ExactResult exact = counter(sample);
  Estimate est;
  est.sampled_butterflies = exact.butterflies;
  est.wedges_processed = exact.wedges_processed;
  est.sampled_edges = sample.edge_count();
  const double scale = 1.0 / (p * p * p * p);
  est.value = to_double(exact.butterflies) * scale;
  return est;
}

TrialSummary run_trials(const BipartiteGraph& g, double p, std::size_t trials,
                        std::uint64_t seed, unsigned threads, const ExactCounter& counter) {
  if (trials == 0) throw ConfigError("at least one trial is required");
  if (threads == 0) throw ConfigError("thread count must be at least 1");
  TrialSummary summary;
  summary.p = p;
  summary.seed = seed;
  summary.estimates.assign(trials, 0.0);
  std::vector<std::uint64_t> wedges(trials, 0);

  std::atomic<std::size_t> cursor{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = cursor.fetch_add(1); i < trials; i = cursor.fetch_add(1)) {
            const Estimate est = estimate_butterflies(g, p, derive_seed(seed, i), counter);
            summary.estimates[i] = est.value;
            wedges[i] = est.wedges_processed;
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  // Summed in trial order.
  const double n = static_cast<double>(trials);
  double sum = 0;
  double wedge_sum = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    sum += summary.estimates[i];
    wedge_sum += static_cast<double>(wedges[i]);
  }
  summary.mean = sum / n;
  summary.mean_wedges = wedge_sum / n;
  if (trials > 1) {
    double squares = 0;
    for (double x : summary.estimates) squares += (x - summary.mean) * (x - summary.mean);
    summary.variance = squares / (n - 1);
  }
  summary.standard_error = std::sqrt(summary.variance / n);
  return summary;
}

void attach_exact(TrialSummary& summary, Count exact) {
  summary.exact = exact;
  if (exact != 0) {
    summary.relative_error = std::abs(summary.mean - to_double(exact)) / to_double(exact);
  } else {
    summary.relative_error = summary.mean == 0 ? 0.0 : INFINITY;
  }
}

}  // namespace bfly
