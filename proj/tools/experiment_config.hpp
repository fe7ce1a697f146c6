#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphpse/pse.hpp"
#include "graphpse/wl.hpp"

namespace graphpse::cli {

/// Shape of the random instances behind verify-thm1.
struct Thm1TrialShape {
  int min_nodes = 2;
  int max_nodes = 12;
  double edge_probability = 0.3;
  int max_layers = 3;
  int max_width = 4;
  double weight_bound = 1.0;
};

/// Everything one run depends on. Generator fields left unset take the
/// generator's defaults when the run is resolved.
struct ExperimentConfig {
  std::string command;
  std::string generator;
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  /// Worker count; outputs never depend on it, so it is not serialized.
  int threads = 1;
  int quantize = kDefaultQuantization;
  std::optional<PseConfig> pse;
  /// Weight file: a GIN stack for verify-thm1, GPSE weights for encode.
  std::string weights;
  /// GPSE inputs for encode: "rnf" or "constant".
  std::string input_mode = "rnf";

  std::vector<double> alphas{0.5, 0.1, 0.01, 0.001};
  int trials = 100;
  Thm1TrialShape thm1;

  std::optional<std::vector<int>> skips;
  std::optional<int> copies;
  std::optional<int> n;
  std::optional<int> d;
  std::optional<int> count;
  std::string strategy = "repaired";

  /// Fills unset generator fields with the defaults for `generator`.
  void resolve();
};

nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// Overlays the keys present in `doc` onto `base`. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

}  // namespace graphpse::cli
