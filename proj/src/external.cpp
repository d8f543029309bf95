#include "bfly/external.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstring>
#include <fstream>
#include <queue>
#include <string>

#include "bfly/edge_list.hpp"
#include "bfly/errors.hpp"
#include "bfly/priority.hpp"

namespace bfly {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kPairWidth = 16;
constexpr std::uint64_t kUpperBit = 1ULL << 63;

void store_le(unsigned char* out, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(value >> (8 * i));
}

std::uint64_t load_le(const unsigned char* in) {
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value |= static_cast<std::uint64_t>(in[i]) << (8 * i);
  return value;
}

using PairRecord = std::array<unsigned char, kPairWidth>;

PairRecord make_pair_record(std::uint64_t first, std::uint64_t second) {
  PairRecord r;
  store_le(r.data(), first);
  store_le(r.data() + 8, second);
  return r;
}

FileHandle open_file(const fs::path& path, const char* mode) {
  FileHandle f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open '" + path.string() + "': " + std::strerror(errno));
  return f;
}

/// Removes registered files on scope exit unless asked to keep them.
class ScratchFiles {
 public:
  explicit ScratchFiles(bool keep) : keep_(keep) {}
  ~ScratchFiles() {
    if (keep_) return;
    for (const auto& path : paths_) {
      std::error_code ec;
      fs::remove(path, ec);
    }
  }
  ScratchFiles(const ScratchFiles&) = delete;
  ScratchFiles& operator=(const ScratchFiles&) = delete;

  const fs::path& add(fs::path path) { return paths_.emplace_back(std::move(path)); }
  void release_early(const fs::path& path) {
    if (keep_) return;
    std::error_code ec;
    fs::remove(path, ec);
  }

 private:
  bool keep_;
  std::vector<fs::path> paths_;
};

std::string generate_run_id() {
  static std::atomic<std::uint64_t> counter{0};
  const auto now = std::chrono::steady_clock::now().time_since_epoch().count();
  return "bfly-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" +
         std::to_string(now);
}

bool fast_width(std::size_t width) { return width == 8 || width == 16 || width == 32; }

/// Sorts `count` records of `width` bytes in place.
void sort_records(std::vector<unsigned char>& data, std::size_t count, std::size_t width) {
  auto sort_as = [&]<std::size_t W>(std::integral_constant<std::size_t, W>) {
    auto* first = reinterpret_cast<std::array<unsigned char, W>*>(data.data());
    std::sort(first, first + count);
  };
  switch (width) {
    case 8:
      sort_as(std::integral_constant<std::size_t, 8>{});
      return;
    case 16:
      sort_as(std::integral_constant<std::size_t, 16>{});
      return;
    case 32:
      sort_as(std::integral_constant<std::size_t, 32>{});
      return;
    default:
      break;
  }
  std::vector<std::uint32_t> order(count);
  for (std::uint32_t i = 0; i < count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::memcmp(&data[a * width], &data[b * width], width) < 0;
  });
  std::vector<unsigned char> sorted(count * width);
  for (std::size_t i = 0; i < count; ++i) {
    std::memcpy(&sorted[i * width], &data[order[i] * width], width);
  }
  std::memcpy(data.data(), sorted.data(), sorted.size());
}

void merge_runs(const std::vector<fs::path>& inputs, const fs::path& output,
                std::size_t width, const EmConfig& cfg, IoStats& io) {
  std::vector<BlockReader> readers;
  readers.reserve(inputs.size());
  for (const auto& path : inputs) readers.emplace_back(path, cfg.block_size, io);
  std::vector<unsigned char> heads(inputs.size() * width);
  auto head = [&](std::size_t i) { return &heads[i * width]; };
  auto greater = [&](std::size_t a, std::size_t b) {
    const int c = std::memcmp(head(a), head(b), width);
    return c != 0 ? c > 0 : a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(greater)> heap(greater);
  for (std::size_t i = 0; i < readers.size(); ++i) {
    if (readers[i].read(head(i), width)) heap.push(i);
  }
  BlockWriter writer(output, cfg.block_size, io);
  while (!heap.empty()) {
    const std::size_t i = heap.top();
    heap.pop();
    writer.write(head(i), width);
    if (readers[i].read(head(i), width)) heap.push(i);
  }
  writer.close();
}

struct VertexTable {
  std::vector<std::uint64_t> keys;  // numeric order == internal ID order
  PriorityMap priority;
  std::uint64_t lower_count = 0;

  std::uint32_t dense(std::uint64_t key) const {
    return static_cast<std::uint32_t>(std::lower_bound(keys.begin(), keys.end(), key) -
                                      keys.begin());
  }
};

/// Bytes of vertex-indexed state per vertex: key, priority, and its inverse
/// permutation, plus a degree slot during construction.
constexpr std::uint64_t kBytesPerVertex = 24;

void check_vertex_budget(std::uint64_t vertices, const EmConfig& cfg) {
  const std::uint64_t need = vertices * kBytesPerVertex + 2 * cfg.block_size;
  if (need > cfg.memory_budget) {
    throw ConfigError("external pipeline keeps per-vertex priorities in memory: " +
                      std::to_string(vertices) + " vertices need " + std::to_string(need) +
                      " bytes, budget is " + std::to_string(cfg.memory_budget));
  }
}

/// Scans sorted orientation records, drops duplicates, writes the compact
/// adjacency file and builds the vertex table.
VertexTable build_vertex_table(const fs::path& sorted_edges, const fs::path& adjacency,
                               const EmConfig& cfg, IoStats& io, std::uint64_t& edges) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> degree_of;
  BlockReader reader(sorted_edges, cfg.block_size, io);
  BlockWriter writer(adjacency, cfg.block_size, io);
  PairRecord rec{};
  PairRecord prev{};
  bool have_prev = false;
  std::uint64_t orientations = 0;
  while (reader.read(rec.data(), kPairWidth)) {
    if (have_prev && rec == prev) continue;
    const std::uint64_t key = load_le(rec.data());
    if (!have_prev || key != load_le(prev.data())) {
      check_vertex_budget(degree_of.size() + 1, cfg);
      degree_of.emplace_back(key, 0);
    }
    ++degree_of.back().second;
    ++orientations;
    writer.write(rec.data(), kPairWidth);
    prev = rec;
    have_prev = true;
  }
  writer.close();
  edges = orientations / 2;

  std::sort(degree_of.begin(), degree_of.end());
  VertexTable table;
  table.keys.reserve(degree_of.size());
  std::vector<std::uint32_t> degrees;
  degrees.reserve(degree_of.size());
  for (const auto& [key, degree] : degree_of) {
    table.keys.push_back(key);
    degrees.push_back(degree);
    if ((key & kUpperBit) == 0) ++table.lower_count;
  }
  degree_of.clear();
  degree_of.shrink_to_fit();
  table.priority = priorities_from_degrees(degrees);
  return table;
}

struct Neighbor {
  Priority priority;
  std::uint32_t id;
  friend bool operator<(const Neighbor& a, const Neighbor& b) { return a.priority < b.priority; }
};

/// Emits (u, w) for u, w in `nbrs` with p(w) > max(p(u), p(middle)).
std::uint64_t emit_pairs_in_memory(std::vector<Neighbor>& nbrs, Priority middle,
                                   BlockWriter& out) {
  std::sort(nbrs.begin(), nbrs.end());
  std::uint64_t emitted = 0;
  for (std::size_t i = nbrs.size(); i-- > 0;) {
    if (nbrs[i].priority <= middle) break;
    for (std::size_t j = 0; j < i; ++j) {
      const PairRecord r = make_pair_record(nbrs[j].id, nbrs[i].id);
      out.write(r.data(), kPairWidth);
    }
    emitted += i;
  }
  return emitted;
}

void load_chunk(BlockReader& reader, std::uint64_t offset, std::uint64_t count,
                const VertexTable& table, std::vector<Neighbor>& chunk) {
  chunk.clear();
  reader.seek(offset);
  PairRecord rec;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!reader.read(rec.data(), kPairWidth)) throw IoError("adjacency file truncated");
    const std::uint32_t id = table.dense(load_le(rec.data() + 8));
    chunk.push_back({table.priority[id], id});
  }
}

/// Block nested loop over a neighbor list too large for the group buffer.
std::uint64_t emit_pairs_chunked(const fs::path& adjacency, std::uint64_t start,
                                 std::uint64_t degree, Priority middle, std::uint64_t capacity,
                                 const VertexTable& table, const EmConfig& cfg, IoStats& io,
                                 BlockWriter& out) {
  const std::uint64_t chunk_size = std::max<std::uint64_t>(1, capacity / 2);
  BlockReader reader(adjacency, cfg.block_size, io);
  std::vector<Neighbor> outer;
  std::vector<Neighbor> inner;
  std::uint64_t emitted = 0;
  auto emit = [&](const Neighbor& u, const Neighbor& w) {
    if (w.priority > middle && w.priority > u.priority) {
      const PairRecord r = make_pair_record(u.id, w.id);
      out.write(r.data(), kPairWidth);
      ++emitted;
    }
  };
  for (std::uint64_t a = 0; a < degree; a += chunk_size) {
    load_chunk(reader, start + a * kPairWidth, std::min(chunk_size, degree - a), table, outer);
    for (std::size_t i = 0; i < outer.size(); ++i) {
      for (std::size_t j = 0; j < outer.size(); ++j) {
        if (i != j) emit(outer[i], outer[j]);
      }
    }
    for (std::uint64_t b = a + chunk_size; b < degree; b += chunk_size) {
      load_chunk(reader, start + b * kPairWidth, std::min(chunk_size, degree - b), table,
                 inner);
      for (const Neighbor& x : outer) {
        for (const Neighbor& y : inner) {
          emit(x, y);
          emit(y, x);
        }
      }
    }
  }
  return emitted;
}

}  // namespace

void EmConfig::validate() const {
  if (block_size < 4096) {
    throw ConfigError("block size must be at least 4096 bytes, got " +
                      std::to_string(block_size));
  }
  if (memory_budget < 4 * block_size) {
    throw ConfigError("memory budget must be at least 4 blocks (" +
                      std::to_string(4 * block_size) + " bytes), got " +
                      std::to_string(memory_budget));
  }
}

BlockWriter::BlockWriter(const fs::path& path, std::size_t block_size, IoStats& stats)
    : path_(path), file_(open_file(path, "wb")), buffer_(block_size), stats_(stats) {}

BlockWriter::~BlockWriter() {
  if (!file_) return;
  try {
    flush();
  } catch (...) {
  }
}

void BlockWriter::write(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  while (size > 0) {
    const std::size_t n = std::min(size, buffer_.size() - used_);
    std::memcpy(buffer_.data() + used_, bytes, n);
    used_ += n;
    bytes += n;
    size -= n;
    if (used_ == buffer_.size()) flush();
  }
}

void BlockWriter::flush() {
  if (used_ == 0) return;
  if (std::fwrite(buffer_.data(), 1, used_, file_.get()) != used_) {
    throw IoError("write to '" + path_.string() + "' failed");
  }
  ++stats_.blocks_written;
  used_ = 0;
}

void BlockWriter::close() {
  flush();
  std::FILE* f = file_.release();
  if (std::fclose(f) != 0) throw IoError("closing '" + path_.string() + "' failed");
}

BlockReader::BlockReader(const fs::path& path, std::size_t block_size, IoStats& stats)
    : path_(path), file_(open_file(path, "rb")), buffer_(block_size), stats_(stats) {}

bool BlockReader::refill() {
  filled_ = std::fread(buffer_.data(), 1, buffer_.size(), file_.get());
  pos_ = 0;
  if (filled_ == 0) {
    if (std::ferror(file_.get())) throw IoError("read from '" + path_.string() + "' failed");
    return false;
  }
  file_offset_ += filled_;
  ++stats_.blocks_read;
  return true;
}

bool BlockReader::read(void* out, std::size_t size) {
  auto* bytes = static_cast<unsigned char*>(out);
  std::size_t copied = 0;
  while (copied < size) {
    if (pos_ == filled_ && !refill()) {
      if (copied == 0) return false;
      throw IoError("truncated record in '" + path_.string() + "'");
    }
    const std::size_t n = std::min(size - copied, filled_ - pos_);
    std::memcpy(bytes + copied, buffer_.data() + pos_, n);
    pos_ += n;
    copied += n;
  }
  return true;
}

void BlockReader::seek(std::uint64_t offset) {
  if (offset >= file_offset_ - filled_ && offset <= file_offset_) {
    pos_ = static_cast<std::size_t>(offset - (file_offset_ - filled_));
    return;
  }
  if (::fseeko(file_.get(), static_cast<off_t>(offset), SEEK_SET) != 0) {
    throw IoError("seek in '" + path_.string() + "' failed");
  }
  file_offset_ = offset;
  filled_ = 0;
  pos_ = 0;
}

std::uint64_t records_per_run(std::size_t record_width, const EmConfig& cfg) {
  const std::uint64_t per_record =
      fast_width(record_width) ? record_width : record_width + sizeof(std::uint32_t);
  return std::max<std::uint64_t>(1, cfg.memory_budget / per_record);
}

SortStats external_sort(const fs::path& input, const fs::path& output,
                        std::size_t record_width, const EmConfig& cfg) {
  cfg.validate();
  if (record_width == 0) throw ConfigError("record width must be positive");
  SortStats stats;
  const std::uint64_t capacity = records_per_run(record_width, cfg);
  std::vector<unsigned char> buffer;
  buffer.reserve(std::min<std::uint64_t>(capacity, 1ULL << 20) * record_width);

  ScratchFiles scratch(cfg.keep_scratch);
  std::vector<fs::path> runs;
  BlockReader reader(input, cfg.block_size, stats.io);
  std::vector<unsigned char> rec(record_width);
  bool exhausted = false;
  while (!exhausted) {
    buffer.clear();
    std::uint64_t count = 0;
    while (count < capacity) {
      if (!reader.read(rec.data(), record_width)) {
        exhausted = true;
        break;
      }
      buffer.insert(buffer.end(), rec.begin(), rec.end());
      ++count;
    }
    if (count == 0 && !runs.empty()) break;
    stats.records += count;
    sort_records(buffer, count, record_width);
    // A single run goes straight to the output.
    const bool only_run = runs.empty() && exhausted;
    const fs::path target =
        only_run ? output
                 : scratch.add(output.string() + ".run0." + std::to_string(runs.size()));
    BlockWriter writer(target, cfg.block_size, stats.io);
    writer.write(buffer.data(), buffer.size());
    writer.close();
    if (only_run) {
      stats.initial_runs = 1;
      return stats;
    }
    runs.push_back(target);
  }
  stats.initial_runs = runs.size();
  if (runs.size() == 1) {
    // Input filled exactly one buffer.
    std::error_code ec;
    fs::rename(runs.front(), output, ec);
    if (ec) throw IoError("cannot rename '" + runs.front().string() + "': " + ec.message());
    return stats;
  }

  const std::uint64_t fan_in = cfg.merge_fan_in();
  std::uint64_t pass = 0;
  while (runs.size() > 1) {
    ++pass;
    const bool final_pass = runs.size() <= fan_in;
    std::vector<fs::path> next;
    for (std::size_t i = 0; i < runs.size(); i += fan_in) {
      const std::size_t end = std::min<std::size_t>(runs.size(), i + fan_in);
      std::vector<fs::path> group(runs.begin() + static_cast<std::ptrdiff_t>(i),
                                  runs.begin() + static_cast<std::ptrdiff_t>(end));
      const fs::path target =
          final_pass ? output
                     : scratch.add(output.string() + ".run" + std::to_string(pass) + "." +
                                   std::to_string(next.size()));
      merge_runs(group, target, record_width, cfg, stats.io);
      for (const auto& consumed : group) scratch.release_early(consumed);
      next.push_back(target);
    }
    runs = std::move(next);
  }
  stats.io.merge_passes = pass;
  return stats;
}

EmResult em_count(const fs::path& edge_file, const EmConfig& cfg) {
  cfg.validate();
  const auto begin = std::chrono::steady_clock::now();
  const std::string run_id = cfg.run_id.empty() ? generate_run_id() : cfg.run_id;
  ScratchFiles scratch(cfg.keep_scratch);
  const fs::path raw_edges = scratch.add(cfg.scratch_dir / (run_id + ".edges"));
  const fs::path sorted_edges = scratch.add(cfg.scratch_dir / (run_id + ".edges.sorted"));
  const fs::path adjacency = scratch.add(cfg.scratch_dir / (run_id + ".adj"));
  const fs::path raw_pairs = scratch.add(cfg.scratch_dir / (run_id + ".pairs"));
  const fs::path sorted_pairs = scratch.add(cfg.scratch_dir / (run_id + ".pairs.sorted"));

  EmResult result;
  IoStats& io = result.io;

  {
    std::ifstream text(edge_file);
    if (!text) throw IoError("cannot open '" + edge_file.string() + "'");
    BlockWriter writer(raw_edges, cfg.block_size, io);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(text, line)) {
      ++line_no;
      const auto pair = parse_edge_line(line, line_no);
      if (!pair) continue;
      if ((pair->upper & kUpperBit) != 0 || (pair->lower & kUpperBit) != 0) {
        throw ParseError(line_no, "labels must be below 2^63 for the external pipeline");
      }
      const std::uint64_t upper_key = pair->upper | kUpperBit;
      const PairRecord forward = make_pair_record(upper_key, pair->lower);
      const PairRecord backward = make_pair_record(pair->lower, upper_key);
      writer.write(forward.data(), kPairWidth);
      writer.write(backward.data(), kPairWidth);
    }
    if (text.bad()) throw IoError("read failure in '" + edge_file.string() + "'");
    writer.close();
  }

  io += external_sort(raw_edges, sorted_edges, kPairWidth, cfg).io;
  scratch.release_early(raw_edges);
  const VertexTable table = build_vertex_table(sorted_edges, adjacency, cfg, io, result.edges);
  scratch.release_early(sorted_edges);
  result.vertices = table.keys.size();

  const std::uint64_t fixed = result.vertices * kBytesPerVertex + 2 * cfg.block_size;
  const std::uint64_t group_capacity =
      std::max<std::uint64_t>(2, (cfg.memory_budget - fixed) / sizeof(Neighbor));

  std::uint64_t middles = 0;
  {
    BlockReader reader(adjacency, cfg.block_size, io);
    BlockWriter writer(raw_pairs, cfg.block_size, io);
    std::vector<Neighbor> group;
    PairRecord rec;
    std::uint64_t offset = 0;
    bool have = reader.read(rec.data(), kPairWidth);
    while (have) {
      const std::uint64_t key = load_le(rec.data());
      const Priority pv = table.priority[table.dense(key)];
      group.clear();
      std::uint64_t degree = 0;
      do {
        ++degree;
        if (group.size() < group_capacity) {
          const std::uint32_t id = table.dense(load_le(rec.data() + 8));
          group.push_back({table.priority[id], id});
        }
        have = reader.read(rec.data(), kPairWidth);
      } while (have && load_le(rec.data()) == key);
      ++middles;
      if (degree <= group_capacity) {
        io.pairs_emitted += emit_pairs_in_memory(group, pv, writer);
      } else {
        io.pairs_emitted += emit_pairs_chunked(adjacency, offset, degree, pv, group_capacity,
                                               table, cfg, io, writer);
      }
      offset += degree * kPairWidth;
    }
    writer.close();
  }
  scratch.release_early(adjacency);

  io += external_sort(raw_pairs, sorted_pairs, kPairWidth, cfg).io;
  scratch.release_early(raw_pairs);

  Count butterflies = 0;
  {
    BlockReader reader(sorted_pairs, cfg.block_size, io);
    PairRecord rec;
    PairRecord run_value{};
    std::uint64_t run = 0;
    while (reader.read(rec.data(), kPairWidth)) {
      if (run > 0 && rec == run_value) {
        ++run;
        continue;
      }
      butterflies = checked_add(butterflies, choose2(run));
      run_value = rec;
      run = 1;
    }
    butterflies = checked_add(butterflies, choose2(run));
  }

  result.report.butterflies = butterflies;
  result.report.wedges_processed = io.pairs_emitted;
  result.report.end_accesses = io.pairs_emitted;
  result.report.middle_accesses = middles;
  result.report.elapsed = std::chrono::steady_clock::now() - begin;
  return result;
}

}  // namespace bfly
