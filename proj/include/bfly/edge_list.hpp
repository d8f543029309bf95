#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "bfly/graph.hpp"

namespace bfly {

struct ParseOptions {
  /// KONECT files append weight/timestamp columns; ignore them by default.
  bool allow_extra_columns = true;
};

struct LabelPair {
  Label upper;
  Label lower;
};

/// Parses one line of the edge-list format. Returns nullopt for blank lines
/// and for comment lines starting with '%' or '#'. Throws ParseError.
std::optional<LabelPair> parse_edge_line(std::string_view line, std::size_t line_no,
                                         const ParseOptions& options = {});

struct ParseResult {
  BipartiteGraph graph;
  std::size_t duplicates_removed = 0;
};

/// Reads "upper lower" label pairs. Labels of each layer are ranked in
/// ascending order to form dense internal IDs, and the canonical edge
/// sequence is sorted by (upper ID, lower ID).
ParseResult parse_edge_list(std::istream& in, const ParseOptions& options = {});

/// Throws IoError when the file cannot be opened or read.
ParseResult read_edge_list_file(const std::filesystem::path& path,
                                const ParseOptions& options = {});

/// Writes the canonical edge sequence using external labels.
void write_edge_list(std::ostream& out, const BipartiteGraph& g);

}  // namespace bfly
