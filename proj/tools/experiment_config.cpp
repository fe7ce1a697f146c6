#include "experiment_config.hpp"

#include <fstream>
#include <set>

#include "graphpse/datasets.hpp"
#include "graphpse/errors.hpp"

namespace graphpse::cli {

using nlohmann::json;

void ExperimentConfig::resolve() {
  if (generator == "csl") {
    if (!skips) skips = default_csl_skips();
    if (!copies) copies = kDefaultCslCopies;
  } else if (generator == "regular") {
    if (!n) n = 24;
    if (!d) d = 4;
    if (!count) count = 1000;
  } else if (generator == "tri") {
    if (!n) n = 20;
    if (!count) count = 1000;
  }
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json doc;
  doc["command"] = c.command;
  if (!c.generator.empty()) doc["generator"] = c.generator;
  if (!c.input.empty()) doc["input"] = c.input;
  if (!c.out.empty()) doc["out"] = c.out;
  doc["seed"] = c.seed;
  doc["quantize"] = c.quantize;
  if (!c.weights.empty()) {
    doc["weights"] = c.weights;
    if (c.command == "encode") doc["input_mode"] = c.input_mode;
  }
  doc["pse"] = c.pse ? nlohmann::ordered_json::parse(graphpse::to_json(*c.pse).dump()) : nlohmann::ordered_json(nullptr);
  if (c.command == "verify-thm1") {
    doc["alphas"] = c.alphas;
    doc["trials"] = c.trials;
    doc["thm1"] = {{"min_nodes", c.thm1.min_nodes},
                   {"max_nodes", c.thm1.max_nodes},
                   {"edge_probability", c.thm1.edge_probability},
                   {"max_layers", c.thm1.max_layers},
                   {"max_width", c.thm1.max_width},
                   {"weight_bound", c.thm1.weight_bound}};
  }
  if (c.skips) doc["skips"] = *c.skips;
  if (c.copies) doc["copies"] = *c.copies;
  if (c.n) doc["n"] = *c.n;
  if (c.d) doc["d"] = *c.d;
  if (c.count) doc["count"] = *c.count;
  if (c.generator == "regular" || c.generator == "tri") doc["strategy"] = c.strategy;
  return doc;
}

ExperimentConfig config_from_json(const json& doc, ExperimentConfig c) {
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  static const std::set<std::string> known = {
      "command", "generator", "input", "out", "seed", "threads", "quantize", "pse", "alphas", "trials",
      "thm1", "weights", "input_mode", "skips", "copies", "n", "d", "count", "strategy"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  }
  try {
    c.command = doc.value("command", c.command);
    c.generator = doc.value("generator", c.generator);
    c.input = doc.value("input", c.input);
    c.out = doc.value("out", c.out);
    c.seed = doc.value("seed", c.seed);
    c.threads = doc.value("threads", c.threads);
    c.quantize = doc.value("quantize", c.quantize);
    if (doc.contains("pse")) {
      c.pse = doc["pse"].is_null() ? std::nullopt : std::optional(pse_config_from_json(doc["pse"]));
    }
    c.weights = doc.value("weights", c.weights);
    c.input_mode = doc.value("input_mode", c.input_mode);
    c.alphas = doc.value("alphas", c.alphas);
    c.trials = doc.value("trials", c.trials);
    if (doc.contains("thm1")) {
      const auto& t = doc["thm1"];
      c.thm1.min_nodes = t.value("min_nodes", c.thm1.min_nodes);
      c.thm1.max_nodes = t.value("max_nodes", c.thm1.max_nodes);
      c.thm1.edge_probability = t.value("edge_probability", c.thm1.edge_probability);
      c.thm1.max_layers = t.value("max_layers", c.thm1.max_layers);
      c.thm1.max_width = t.value("max_width", c.thm1.max_width);
      c.thm1.weight_bound = t.value("weight_bound", c.thm1.weight_bound);
    }
    if (doc.contains("skips")) c.skips = doc["skips"].get<std::vector<int>>();
    if (doc.contains("copies")) c.copies = doc["copies"].get<int>();
    if (doc.contains("n")) c.n = doc["n"].get<int>();
    if (doc.contains("d")) c.d = doc["d"].get<int>();
    if (doc.contains("count")) c.count = doc["count"].get<int>();
    c.strategy = doc.value("strategy", c.strategy);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, "config " + path + ": " + e.what());
  }
  return config_from_json(doc, std::move(base));
}

}  // namespace graphpse::cli
