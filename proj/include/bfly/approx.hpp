#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bfly/count128.hpp"
#include "bfly/graph.hpp"

namespace bfly {

/// Exact counter run on each sampled graph. Returns (butterflies, wedges).
struct ExactResult {
  Count butterflies = 0;
  std::uint64_t wedges_processed = 0;
};
using ExactCounter = std::function<ExactResult(const BipartiteGraph&)>;

/// The default exact counter: prepare + cache-aware counting.
ExactResult count_exact_vpp(const BipartiteGraph& g);

/// Keeps each edge independently with probability p; vertices and labels are
/// unchanged. Throws ConfigError unless 0 < p <= 1.
BipartiteGraph sparsify(const BipartiteGraph& g, double p, std::uint64_t seed);

struct Estimate {
  double value = 0;
  Count sampled_butterflies = 0;
  std::uint64_t wedges_processed = 0;
  std::size_t sampled_edges = 0;
};

/// Exact count of the sparsified graph scaled by p^-4. Unbiased.
Estimate estimate_butterflies(const BipartiteGraph& g, double p, std::uint64_t seed,
                              const ExactCounter& counter = count_exact_vpp);

struct TrialSummary {
  double p = 1;
  std::uint64_t seed = 0;
  std::vector<double> estimates;
  double mean = 0;
  /// Sample variance (n − 1 denominator); 0 for a single trial.
  double variance = 0;
  double standard_error = 0;
  double mean_wedges = 0;
  std::optional<Count> exact;
  std::optional<double> relative_error;
};

/// Trial i samples with derive_seed(seed, i), so results do not depend on
/// `threads`.
TrialSummary run_trials(const BipartiteGraph& g, double p, std::size_t trials,
                        std::uint64_t seed, unsigned threads = 1,
                        const ExactCounter& counter = count_exact_vpp);

/// Fills `exact` and `relative_error` in place.
void attach_exact(TrialSummary& summary, Count exact);

}  // namespace bfly
