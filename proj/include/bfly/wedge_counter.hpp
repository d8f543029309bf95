#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bfly/count128.hpp"
#include "bfly/graph.hpp"

namespace bfly {

/// Dense per-vertex wedge tally with a touched list, so clearing costs
/// O(touched) instead of O(n). Entries are zero between start vertices.
class WedgeCounter {
 public:
  explicit WedgeCounter(std::size_t vertex_count) : counts_(vertex_count, 0) {}

  void increment(VertexId w) {
    if (counts_[w]++ == 0) touched_.push_back(w);
  }

  std::uint32_t count(VertexId w) const noexcept { return counts_[w]; }
  std::span<const VertexId> touched() const noexcept { return touched_; }

  /// Σ C(count(w), 2) over touched vertices; clears the counter.
  Count drain_pairs() {
    Count total = 0;
    for (VertexId w : touched_) {
      total = checked_add(total, choose2(counts_[w]));
      counts_[w] = 0;
    }
    touched_.clear();
    return total;
  }

  void reset() noexcept {
    for (VertexId w : touched_) counts_[w] = 0;
    touched_.clear();
  }

  bool is_clear() const noexcept {
    if (!touched_.empty()) return false;
    for (auto c : counts_) {
      if (c != 0) return false;
    }
    return true;
  }

  std::size_t size() const noexcept { return counts_.size(); }

 private:
  std::vector<std::uint32_t> counts_;
  std::vector<VertexId> touched_;
};

}  // namespace bfly
