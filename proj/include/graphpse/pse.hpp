#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "graphpse/graph.hpp"

namespace graphpse {

enum class PseKind { kLapPE, kLapEigval, kRWSE, kElstaticPE, kHKdiagSE, kCycleSE, kRNF, kConstant, kAllPSE };
enum class PseLevel { kNode, kGraph };

std::string_view to_string(PseKind kind);
PseKind pse_kind_from_string(std::string_view name);
PseLevel level_of(PseKind kind);

/// Encoding block. Node-level values are num_nodes x width; graph-level
/// values are 1 x width.
struct PseVector {
  PseKind kind = PseKind::kAllPSE;
  PseLevel level = PseLevel::kNode;
  Eigen::MatrixXd values;
  nlohmann::json params = nlohmann::json::object();

  Eigen::Index width() const { return values.cols(); }
};

inline constexpr int kDefaultLapPeCount = 4;
inline constexpr int kDefaultLapEigvalCount = 4;
inline constexpr int kDefaultCycleKMax = 8;
inline constexpr int kMaxCycleLength = 10;
inline constexpr int kDefaultRnfDim = 20;
std::vector<int> default_rwse_steps();      // 1..8
std::vector<double> default_hk_times();     // {0.5, 1, 2, 4}

/// Which deterministic encodings to compute, with their parameters.
struct PseConfig {
  std::optional<int> lap_pe;                       // m
  std::optional<std::vector<int>> rwse;            // steps
  bool elstatic = false;
  bool elstatic_per_component = false;             // otherwise disconnected graphs throw
  std::optional<std::vector<double>> hk_diag;      // times
  std::optional<int> cycle_se;                     // k_max
  std::optional<int> lap_eigval;                   // m

  bool empty() const {
    return !lap_pe && !rwse && !elstatic && !hk_diag && !cycle_se && !lap_eigval;
  }
  /// Every kind enabled with default parameters.
  static PseConfig all_defaults();

  friend bool operator==(const PseConfig&, const PseConfig&) = default;
};

nlohmann::json to_json(const PseConfig& config);
PseConfig pse_config_from_json(const nlohmann::json& doc);

PseVector lap_pe_encoding(const Graph& g, int m);
PseVector lap_eigval_encoding(const Graph& g, int m);
PseVector hk_diag_encoding(const Graph& g, std::span<const double> times);

/// diag(P^k) for each requested k. Products are accumulated in sorted order,
/// so the result is bitwise equivariant under node relabeling.
PseVector rwse(const Graph& g, std::span<const int> steps);

/// Per node v over Q = L^+ - diag(L^+) (row-wise):
///   [min_j Q_vj, max_j Q_vj, mean_j Q_vj, std_j Q_vj,
///    min_{u in N(v)} Q_vu, mean_{u in N(v)} Q_vu, std_{u in N(v)} Q_vu]
/// with j over all other nodes. Empty sets give 0.
PseVector elstatic_pe(const Graph& g, bool per_component = false);
inline constexpr int kElstaticWidth = 7;

/// Simple cycles of each length 3..k_max, counted once per vertex set and
/// cyclic order (rotations and reflections identified).
std::vector<std::uint64_t> count_cycles(const Graph& g, int k_max);
PseVector cycle_se(const Graph& g, int k_max);

/// i.i.d. N(0,1) node features from Rng(seed).
PseVector rnf(const Graph& g, int dim, std::uint64_t seed);
PseVector constant_features(const Graph& g, int dim);

/// Concatenation in fixed column order LapPE, RWSE, ElstaticPE, HKdiagSE,
/// CycleSE, LapEigval. Graph-level kinds are broadcast to every node.
PseVector all_pse(const Graph& g, const PseConfig& config);

/// Every enabled kind as its own block, in the same fixed order.
std::vector<PseVector> compute_pses(const Graph& g, const PseConfig& config);

/// Column-wise zero mean, unit (population) std over nodes. Constant columns
/// become zero.
PseVector normalize_per_graph(const PseVector& p);

/// Broadcasts graph-level blocks to num_nodes rows; node-level blocks pass through.
Eigen::MatrixXd node_rows(const PseVector& p, int num_nodes);

}  // namespace graphpse
