#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "bfly/exact.hpp"

namespace bfly {

/// Budget and layout of the out-of-core pipeline. Requires
/// memory_budget >= 4 * block_size and block_size >= 4 KiB.
struct EmConfig {
  std::uint64_t memory_budget = 64ULL << 20;
  std::uint64_t block_size = 4096;
  std::filesystem::path scratch_dir = std::filesystem::temp_directory_path();
  bool keep_scratch = false;
  /// Prefix of scratch file names; generated when empty.
  std::string run_id;

  /// Throws ConfigError when the invariants above do not hold.
  void validate() const;
  /// Streams one merge can read at once: floor(M / B) - 1.
  std::uint64_t merge_fan_in() const { return memory_budget / block_size - 1; }
};

/// Logical block transfers made by BlockReader/BlockWriter, not OS-level I/O.
struct IoStats {
  std::uint64_t blocks_read = 0;
  std::uint64_t blocks_written = 0;
  std::uint64_t pairs_emitted = 0;
  std::uint64_t merge_passes = 0;

  IoStats& operator+=(const IoStats& other) {
    blocks_read += other.blocks_read;
    blocks_written += other.blocks_written;
    pairs_emitted += other.pairs_emitted;
    merge_passes += other.merge_passes;
    return *this;
  }
};

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FileHandle = std::unique_ptr<std::FILE, FileCloser>;

/// Buffered sequential writer; every flushed buffer counts as one block.
class BlockWriter {
 public:
  BlockWriter(const std::filesystem::path& path, std::size_t block_size, IoStats& stats);
  ~BlockWriter();
  BlockWriter(const BlockWriter&) = delete;
  BlockWriter& operator=(const BlockWriter&) = delete;

  void write(const void* data, std::size_t size);
  /// Flushes and closes; throws IoError. The destructor closes silently.
  void close();

 private:
  void flush();

  std::filesystem::path path_;
  FileHandle file_;
  std::vector<unsigned char> buffer_;
  std::size_t used_ = 0;
  IoStats& stats_;
};

/// Buffered sequential reader of fixed-width records; every refill counts as
/// one block.
class BlockReader {
 public:
  BlockReader(const std::filesystem::path& path, std::size_t block_size, IoStats& stats);

  /// Copies the next `size` bytes into `out`; false at a clean end of file.
  /// Throws IoError on a truncated record.
  bool read(void* out, std::size_t size);
  /// Repositions to an absolute byte offset, discarding the buffer.
  void seek(std::uint64_t offset);
  std::uint64_t offset() const noexcept { return file_offset_ - (filled_ - pos_); }

 private:
  bool refill();

  std::filesystem::path path_;
  FileHandle file_;
  std::vector<unsigned char> buffer_;
  std::size_t filled_ = 0;
  std::size_t pos_ = 0;
  std::uint64_t file_offset_ = 0;
  IoStats& stats_;
};

struct SortStats {
  IoStats io;
  std::uint64_t records = 0;
  std::uint64_t initial_runs = 0;
};

/// Records held by one run-formation buffer of `cfg.memory_budget` bytes.
std::uint64_t records_per_run(std::size_t record_width, const EmConfig& cfg);

/// Sorts a file of fixed-width records by their bytes (memcmp order). Runs
/// of at most records_per_run records are sorted in memory, then merged
/// merge_fan_in() at a time until one remains. Intermediate run files live
/// next to `output` and are removed unless cfg.keep_scratch.
SortStats external_sort(const std::filesystem::path& input,
                        const std::filesystem::path& output, std::size_t record_width,
                        const EmConfig& cfg);

struct EmResult {
  CountReport report;
  IoStats io;
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
};

/// Out-of-core butterfly counting over an edge-list text file:
///   1. write both orientations of every edge as 16-byte records and sort them
///      so each vertex's neighbors are contiguous;
///   2. one scan for degrees, priorities from an O(n) array;
///   3. per middle vertex v, emit (u, w) for u, w ∈ N(v) with p(w) > p(v) and
///      p(w) > p(u);
///   4. sort the pairs;
///   5. one scan summing C(run length, 2).
/// The report's wedges_processed is the number of emitted pairs and
/// middle_accesses the number of middle vertices scanned.
/// Throws ConfigError when the vertex arrays do not fit the budget.
EmResult em_count(const std::filesystem::path& edge_file, const EmConfig& cfg);

}  // namespace bfly
