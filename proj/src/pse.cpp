#include "graphpse/pse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphpse/errors.hpp"
#include "graphpse/numeric.hpp"
#include "graphpse/rng.hpp"
#include "graphpse/spectral.hpp"

namespace graphpse {

std::string_view to_string(PseKind kind) {
  switch (kind) {
    case PseKind::kLapPE: return "LapPE";
    case PseKind::kLapEigval: return "LapEigval";
    case PseKind::kRWSE: return "RWSE";
    case PseKind::kElstaticPE: return "ElstaticPE";
    case PseKind::kHKdiagSE: return "HKdiagSE";
    case PseKind::kCycleSE: return "CycleSE";
    case PseKind::kRNF: return "RNF";
    case PseKind::kConstant: return "Constant";
    case PseKind::kAllPSE: return "AllPSE";
  }
  return "Unknown";
}

PseKind pse_kind_from_string(std::string_view name) {
  for (PseKind k : {PseKind::kLapPE, PseKind::kLapEigval, PseKind::kRWSE, PseKind::kElstaticPE,
                    PseKind::kHKdiagSE, PseKind::kCycleSE, PseKind::kRNF, PseKind::kConstant,
                    PseKind::kAllPSE}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown encoding kind '" + std::string(name) + "'");
}

PseLevel level_of(PseKind kind) {
  return kind == PseKind::kCycleSE || kind == PseKind::kLapEigval ? PseLevel::kGraph
                                                                   : PseLevel::kNode;
}

std::vector<int> default_rwse_steps() { return {1, 2, 3, 4, 5, 6, 7, 8}; }
std::vector<double> default_hk_times() { return {0.5, 1.0, 2.0, 4.0}; }

PseConfig PseConfig::all_defaults() {
  PseConfig c;
  c.lap_pe = kDefaultLapPeCount;
  c.rwse = default_rwse_steps();
  c.elstatic = true;
  c.hk_diag = default_hk_times();
  c.cycle_se = kDefaultCycleKMax;
  c.lap_eigval = kDefaultLapEigvalCount;
  return c;
}

nlohmann::json to_json(const PseConfig& c) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  if (c.lap_pe) doc["LapPE"] = {{"m", *c.lap_pe}};
  if (c.rwse) doc["RWSE"] = {{"steps", *c.rwse}};
  if (c.elstatic) doc["ElstaticPE"] = {{"per_component", c.elstatic_per_component}};
  if (c.hk_diag) doc["HKdiagSE"] = {{"times", *c.hk_diag}};
  if (c.cycle_se) doc["CycleSE"] = {{"k_max", *c.cycle_se}};
  if (c.lap_eigval) doc["LapEigval"] = {{"m", *c.lap_eigval}};
  return nlohmann::json::parse(doc.dump());
}

PseConfig pse_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidArgument, "encoding config must be an object");
  PseConfig c;
  for (const auto& [key, value] : doc.items()) {
    switch (pse_kind_from_string(key)) {
      case PseKind::kLapPE: c.lap_pe = value.value("m", kDefaultLapPeCount); break;
      case PseKind::kRWSE: c.rwse = value.value("steps", default_rwse_steps()); break;
      case PseKind::kElstaticPE:
        c.elstatic = true;
        c.elstatic_per_component = value.value("per_component", false);
        break;
      case PseKind::kHKdiagSE: c.hk_diag = value.value("times", default_hk_times()); break;
      case PseKind::kCycleSE: c.cycle_se = value.value("k_max", kDefaultCycleKMax); break;
      case PseKind::kLapEigval: c.lap_eigval = value.value("m", kDefaultLapEigvalCount); break;
      default:
        throw Error(ErrorCode::kInvalidArgument, "'" + key + "' is not a deterministic encoding");
    }
  }
  return c;
}

PseVector lap_pe_encoding(const Graph& g, int m) {
  return {PseKind::kLapPE, PseLevel::kNode, lap_pe(g, m), {{"m", m}}};
}

PseVector lap_eigval_encoding(const Graph& g, int m) {
  return {PseKind::kLapEigval, PseLevel::kGraph, lap_eigenvalues(g, m).transpose(), {{"m", m}}};
}

PseVector hk_diag_encoding(const Graph& g, std::span<const double> times) {
  return {PseKind::kHKdiagSE, PseLevel::kNode, hk_diag_se(g, times),
          {{"times", std::vector<double>(times.begin(), times.end())}}};
}

PseVector rwse(const Graph& g, std::span<const int> steps) {
  if (steps.empty()) throw Error(ErrorCode::kInvalidArgument, "no RWSE steps");
  for (int k : steps) {
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "RWSE step must be >= 1");
  }
  const int n = g.num_nodes();
  const int max_step = *std::max_element(steps.begin(), steps.end());
  const Eigen::MatrixXd p = random_walk_matrix(g);

  // power = P^k; next(i, j) = sum_{l in N(j)} power(i, l) * P(l, j), summed
  // in sorted order. Zero entries of P contribute nothing and are skipped.
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd next(n, n);
  Eigen::MatrixXd diagonals(n, max_step);
  std::vector<double> terms;
  for (int k = 1; k <= max_step; ++k) {
    for (int j = 0; j < n; ++j) {
      const auto nb = g.neighbors(j);
      for (int i = 0; i < n; ++i) {
        terms.clear();
        for (int l : nb) terms.push_back(power(i, l) * p(l, j));
        next(i, j) = order_independent_sum(std::span<double>(terms));
      }
    }
    power.swap(next);
    diagonals.col(k - 1) = power.diagonal();
  }

  PseVector out{PseKind::kRWSE, PseLevel::kNode, Eigen::MatrixXd(n, steps.size()),
                {{"steps", std::vector<int>(steps.begin(), steps.end())}}};
  for (std::size_t c = 0; c < steps.size(); ++c) {
    out.values.col(static_cast<Eigen::Index>(c)) = diagonals.col(steps[c] - 1);
  }
  return out;
}

namespace {

void fill_elstatic_rows(const Graph& g, const Eigen::MatrixXd& q, std::span<const int> nodes,
                        Eigen::MatrixXd& out) {
  // `nodes` maps local index (rows of q, nodes of g) to output row.
  const int n = g.num_nodes();
  for (int v = 0; v < n; ++v) {
    std::vector<double> others;
    others.reserve(n);
    for (int j = 0; j < n; ++j)
      if (j != v) others.push_back(q(v, j));
    std::vector<double> near;
    for (int u : g.neighbors(v)) near.push_back(q(v, u));

    auto row = out.row(nodes[v]);
    row.setZero();
    if (!others.empty()) {
      const auto [mean, stddev] = mean_std(others);
      row(0) = *std::min_element(others.begin(), others.end());
      row(1) = *std::max_element(others.begin(), others.end());
      row(2) = mean;
      row(3) = stddev;
    }
    if (!near.empty()) {
      const auto [mean, stddev] = mean_std(near);
      row(4) = *std::min_element(near.begin(), near.end());
      row(5) = mean;
      row(6) = stddev;
    }
  }
}

}  // namespace

PseVector elstatic_pe(const Graph& g, bool per_component) {
  PseVector out{PseKind::kElstaticPE, PseLevel::kNode, Eigen::MatrixXd(g.num_nodes(), kElstaticWidth),
                {{"per_component", per_component}}};
  if (!per_component || is_connected(g)) {
    std::vector<int> identity(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) identity[v] = v;
    fill_elstatic_rows(g, electrostatic_potentials(g), identity, out.values);
    return out;
  }
  const auto comp = connected_components(g);
  const int num_comp = count_components(g);
  for (int c = 0; c < num_comp; ++c) {
    std::vector<int> members;
    std::vector<int> local(g.num_nodes(), -1);
    for (int v = 0; v < g.num_nodes(); ++v) {
      if (comp[v] == c) {
        local[v] = static_cast<int>(members.size());
        members.push_back(v);
      }
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges())
      if (comp[u] == c) edges.emplace_back(local[u], local[v]);
    const Graph sub = Graph::build(static_cast<int>(members.size()), edges);
    fill_elstatic_rows(sub, electrostatic_potentials(sub), members, out.values);
  }
  return out;
}

PseVector cycle_se(const Graph& g, int k_max) {
  const auto counts = count_cycles(g, k_max);
  PseVector out{PseKind::kCycleSE, PseLevel::kGraph,
                Eigen::MatrixXd(1, static_cast<Eigen::Index>(counts.size())), {{"k_max", k_max}}};
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.values(0, static_cast<Eigen::Index>(i)) = static_cast<double>(counts[i]);
  }
  return out;
}

PseVector rnf(const Graph& g, int dim, std::uint64_t seed) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "RNF dimension must be >= 1");
  Rng rng(seed);
  PseVector out{PseKind::kRNF, PseLevel::kNode, Eigen::MatrixXd(g.num_nodes(), dim),
                {{"dim", dim}, {"seed", seed}}};
  for (int v = 0; v < g.num_nodes(); ++v)
    for (int c = 0; c < dim; ++c) out.values(v, c) = rng.normal();
  return out;
}

PseVector constant_features(const Graph& g, int dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "feature dimension must be >= 1");
  return {PseKind::kConstant, PseLevel::kNode, Eigen::MatrixXd::Ones(g.num_nodes(), dim),
          {{"dim", dim}}};
}

std::vector<PseVector> compute_pses(const Graph& g, const PseConfig& config) {
  std::vector<PseVector> blocks;
  if (config.lap_pe) blocks.push_back(lap_pe_encoding(g, *config.lap_pe));
  if (config.rwse) blocks.push_back(rwse(g, *config.rwse));
  if (config.elstatic) blocks.push_back(elstatic_pe(g, config.elstatic_per_component));
  if (config.hk_diag) blocks.push_back(hk_diag_encoding(g, *config.hk_diag));
  if (config.cycle_se) blocks.push_back(cycle_se(g, *config.cycle_se));
  if (config.lap_eigval) blocks.push_back(lap_eigval_encoding(g, *config.lap_eigval));
  return blocks;
}

Eigen::MatrixXd node_rows(const PseVector& p, int num_nodes) {
  if (p.level == PseLevel::kNode) return p.values;
  return p.values.replicate(num_nodes, 1);
}

PseVector all_pse(const Graph& g, const PseConfig& config) {
  if (config.empty()) throw Error(ErrorCode::kEmptyConfig, "no encodings selected");
  const auto blocks = compute_pses(g, config);
  Eigen::Index width = 0;
  for (const auto& b : blocks) width += b.width();
  PseVector out{PseKind::kAllPSE, PseLevel::kNode, Eigen::MatrixXd(g.num_nodes(), width),
                to_json(config)};
  Eigen::Index col = 0;
  for (const auto& b : blocks) {
    out.values.middleCols(col, b.width()) = node_rows(b, g.num_nodes());
    col += b.width();
  }
  return out;
}

PseVector normalize_per_graph(const PseVector& p) {
  if (p.level != PseLevel::kNode) {
    throw Error(ErrorCode::kNotNodeLevel, "per-graph normalization needs a node-level encoding");
  }
  PseVector out = p;
  out.params["normalized"] = true;
  for (Eigen::Index c = 0; c < p.values.cols(); ++c) {
    const Eigen::VectorXd col = p.values.col(c);
    const auto [mean, stddev] = mean_std(std::vector<double>(col.data(), col.data() + col.size()));
    const double scale = std::max(1.0, col.cwiseAbs().maxCoeff());
    if (stddev <= 1e-12 * scale) {
      out.values.col(c).setZero();
    } else {
      out.values.col(c) = (col.array() - mean) / stddev;
    }
  }
  return out;
}

}  // namespace graphpse
