#include "graphpse/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "graphpse/errors.hpp"

namespace graphpse {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void malformed(std::size_t line_number, const std::string& why) {
  throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line_number) + ": " + why);
}

std::vector<int> int_array(const json& value, std::size_t line_number, const char* key) {
  if (!value.is_array()) malformed(line_number, std::string(key) + " must be an array");
  std::vector<int> out;
  out.reserve(value.size());
  for (const auto& x : value) {
    if (!x.is_number_integer()) malformed(line_number, std::string(key) + " must hold integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

GraphRecord parse_record(std::string_view line, std::size_t line_number) {
  json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) malformed(line_number, "invalid JSON");
  if (!doc.is_object()) malformed(line_number, "record must be a JSON object");
  if (!doc.contains("num_nodes") || !doc["num_nodes"].is_number_integer()) {
    malformed(line_number, "missing integer num_nodes");
  }
  const auto num_nodes = doc["num_nodes"].get<long long>();
  if (num_nodes < 0 || num_nodes > (1LL << 30)) malformed(line_number, "num_nodes out of range");
  if (!doc.contains("edges") || !doc["edges"].is_array()) malformed(line_number, "missing edges array");

  std::vector<Edge> edges;
  edges.reserve(doc["edges"].size());
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      malformed(line_number, "edge must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }

  std::optional<std::vector<int>> labels;
  if (doc.contains("node_labels") && !doc["node_labels"].is_null()) {
    labels = int_array(doc["node_labels"], line_number, "node_labels");
  }

  GraphRecord record;
  try {
    record.graph = Graph::build(static_cast<int>(num_nodes), edges, std::move(labels));
    if (doc.contains("virtual_node") && !doc["virtual_node"].is_null()) {
      if (!doc["virtual_node"].is_number_integer()) malformed(line_number, "virtual_node must be an integer");
      const int vn = doc["virtual_node"].get<int>();
      if (vn != static_cast<int>(num_nodes) - 1) {
        malformed(line_number, "virtual_node must be the last node");
      }
      // Re-derive through add_virtual_node so the adjacency invariant is checked.
      std::vector<Edge> base;
      for (const auto& [u, v] : record.graph.edges()) {
        if (v != vn) base.emplace_back(u, v);
      }
      std::optional<std::vector<int>> base_labels;
      if (record.graph.node_labels()) {
        base_labels = *record.graph.node_labels();
        base_labels->pop_back();
      }
      Graph rebuilt = add_virtual_node(Graph::build(vn, base, std::move(base_labels)));
      if (rebuilt.edges() != record.graph.edges()) {
        malformed(line_number, "virtual_node is not adjacent to every node");
      }
      record.graph = rebuilt.with_labels(record.graph.node_labels());
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformedRecord) throw;
    malformed(line_number, e.what());
  }

  if (doc.contains("graph_label") && !doc["graph_label"].is_null()) {
    if (!doc["graph_label"].is_number()) malformed(line_number, "graph_label must be numeric");
    record.graph_label = doc["graph_label"].get<double>();
  }
  if (doc.contains("node_task_labels") && !doc["node_task_labels"].is_null()) {
    record.node_task_labels = int_array(doc["node_task_labels"], line_number, "node_task_labels");
    if (static_cast<long long>(record.node_task_labels->size()) != num_nodes) {
      malformed(line_number, "node_task_labels length differs from num_nodes");
    }
  }
  return record;
}

std::string serialize_record(const GraphRecord& record) {
  const Graph& g = record.graph;
  ordered_json doc;
  doc["num_nodes"] = g.num_nodes();
  auto edges = ordered_json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  if (g.node_labels()) doc["node_labels"] = *g.node_labels();
  if (record.graph_label) {
    const double y = *record.graph_label;
    if (std::nearbyint(y) == y && std::abs(y) < 9.0e15) {
      doc["graph_label"] = static_cast<long long>(y);
    } else {
      doc["graph_label"] = y;
    }
  }
  if (record.node_task_labels) doc["node_task_labels"] = *record.node_task_labels;
  if (g.virtual_node()) doc["virtual_node"] = *g.virtual_node();
  return doc.dump();
}

std::vector<GraphRecord> parse_jsonl(std::istream& in) {
  std::vector<GraphRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    records.push_back(parse_record(line, line_number));
  }
  return records;
}

void serialize_jsonl(std::ostream& out, std::span<const GraphRecord> records) {
  for (const auto& r : records) out << serialize_record(r) << '\n';
}

std::vector<GraphRecord> read_jsonl_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path.string());
  return parse_jsonl(in);
}

void write_jsonl_file(const std::filesystem::path& path, std::span<const GraphRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  serialize_jsonl(out, records);
}

}  // namespace graphpse
