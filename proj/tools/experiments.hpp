#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "experiment_config.hpp"
#include "graphpse/datasets.hpp"
#include "graphpse/graph_io.hpp"
#include "graphpse/mpnn.hpp"
#include "graphpse/stats.hpp"

namespace graphpse::cli {

struct Thm1Trial {
  Graph graph;
  Eigen::MatrixXd h0;
  std::vector<GinLayerWeights> stack;
};

/// Trial `index` drawn from its own stream of `seed`; independent of alpha.
Thm1Trial make_thm1_trial(std::uint64_t seed, int index, const Thm1TrialShape& shape);

struct Thm1Row {
  double alpha = 0;
  int trial = 0;
  int num_nodes = 0;
  int num_layers = 0;
  Thm1Report report;
};

/// Rows ordered by alpha (as listed), then trial. A non-empty `fixed_stack`
/// replaces the random GIN stack of every trial.
std::vector<Thm1Row> run_thm1(const ExperimentConfig& config, const std::vector<GinLayerWeights>& fixed_stack = {});
std::string thm1_csv(std::span<const Thm1Row> rows);

struct Thm2Verdict {
  bool pass = false;
  nlohmann::ordered_json report;
};

Thm2Verdict run_thm2();

nlohmann::ordered_json wl_report(std::span<const GraphRecord> records, const std::optional<PseConfig>& pse,
                                 int quantize, int threads);

struct EncodeOptions {
  PseConfig pse;
  /// When set, GPSE embeddings (kind GPSE) and head outputs (kind GPSEHead<k>)
  /// follow the encodings. Graph i draws its inputs from stream i of `seed`.
  std::optional<GpseWeights> forward;
  InputMode input_mode = InputMode::kRandomNormal;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// One row per (graph, node, kind, component); graph-level kinds use node_id -1.
std::string encode_csv(std::span<const GraphRecord> records, const EncodeOptions& options);
nlohmann::ordered_json encode_sidecar(std::span<const GraphRecord> records, const EncodeOptions& options);

DatasetBundle run_gen(const ExperimentConfig& config);

std::string stats_csv(const DatasetStats& stats);

}  // namespace graphpse::cli
