#include "bfly/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "bfly/errors.hpp"

namespace bfly {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  std::string_view token = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return token;
}

Label parse_label(std::string_view token, std::size_t line_no) {
  Label value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError(line_no, "label '" + std::string(token) + "' exceeds 64 bits");
  }
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "expected a nonnegative integer label, got '" +
                                  std::string(token) + "'");
  }
  return value;
}

std::vector<Label> sorted_unique(std::vector<Label> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

VertexId rank_of(const std::vector<Label>& sorted, Label label) {
  return static_cast<VertexId>(std::lower_bound(sorted.begin(), sorted.end(), label) -
                               sorted.begin());
}

}  // namespace

std::optional<LabelPair> parse_edge_line(std::string_view line, std::size_t line_no,
                                         const ParseOptions& options) {
  std::string_view rest = line;
  std::string_view first = next_token(rest);
  if (first.empty()) return std::nullopt;
  if (first.front() == '%' || first.front() == '#') return std::nullopt;
  std::string_view second = next_token(rest);
  if (second.empty()) {
    throw ParseError(line_no, "expected two labels, found one");
  }
  LabelPair pair{parse_label(first, line_no), parse_label(second, line_no)};
  if (!options.allow_extra_columns && !next_token(rest).empty()) {
    throw ParseError(line_no, "unexpected extra column");
  }
  return pair;
}

ParseResult parse_edge_list(std::istream& in, const ParseOptions& options) {
  std::vector<LabelPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pair = parse_edge_line(line, line_no, options)) pairs.push_back(*pair);
  }
  if (in.bad()) throw IoError("read failure after line " + std::to_string(line_no));

  std::vector<Label> upper_labels;
  std::vector<Label> lower_labels;
  upper_labels.reserve(pairs.size());
  lower_labels.reserve(pairs.size());
  for (const auto& p : pairs) {
    upper_labels.push_back(p.upper);
    lower_labels.push_back(p.lower);
  }
  upper_labels = sorted_unique(std::move(upper_labels));
  lower_labels = sorted_unique(std::move(lower_labels));
  if (upper_labels.size() + lower_labels.size() >= UINT32_MAX) {
    throw ParseError(line_no, "too many distinct vertices for 32-bit IDs");
  }

  const auto l = static_cast<VertexId>(lower_labels.size());
  const auto r = static_cast<VertexId>(upper_labels.size());
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& p : pairs) {
    edges.push_back({l + rank_of(upper_labels, p.upper), rank_of(lower_labels, p.lower)});
  }
  std::sort(edges.begin(), edges.end());
  const auto unique_end = std::unique(edges.begin(), edges.end());
  ParseResult result;
  result.duplicates_removed = static_cast<std::size_t>(edges.end() - unique_end);
  edges.erase(unique_end, edges.end());

  std::vector<Label> labels;
  labels.reserve(static_cast<std::size_t>(l) + r);
  labels.insert(labels.end(), lower_labels.begin(), lower_labels.end());
  labels.insert(labels.end(), upper_labels.begin(), upper_labels.end());
  result.graph = BipartiteGraph(r, l, std::move(edges), std::move(labels));
  return result;
}

ParseResult read_edge_list_file(const std::filesystem::path& path,
                                const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const BipartiteGraph& g) {
  for (const Edge& e : g.edges()) {
    out << g.label(e.upper) << ' ' << g.label(e.lower) << '\n';
  }
}

}  // namespace bfly
