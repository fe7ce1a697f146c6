#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphpse/graph.hpp"

namespace graphpse {

/// One JSONL line: a graph plus optional task labels.
struct GraphRecord {
  Graph graph;
  std::optional<double> graph_label;
  std::optional<std::vector<int>> node_task_labels;

  friend bool operator==(const GraphRecord&, const GraphRecord&) = default;
};

/// Parses one record. Any structural problem (missing keys, wrong types,
/// out-of-range endpoints, self-loops, length mismatches) is reported as
/// MalformedRecord carrying `line_number`.
GraphRecord parse_record(std::string_view line, std::size_t line_number = 1);

/// Canonical single-line encoding. Key order: num_nodes, edges, node_labels,
/// graph_label, node_task_labels, virtual_node; absent optionals are omitted.
std::string serialize_record(const GraphRecord& record);

/// Blank lines are skipped; line numbers are 1-based physical lines.
std::vector<GraphRecord> parse_jsonl(std::istream& in);
void serialize_jsonl(std::ostream& out, std::span<const GraphRecord> records);

std::vector<GraphRecord> read_jsonl_file(const std::filesystem::path& path);
void write_jsonl_file(const std::filesystem::path& path, std::span<const GraphRecord> records);

}  // namespace graphpse
