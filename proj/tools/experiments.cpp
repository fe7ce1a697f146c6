#include "experiments.hpp"

#include <cstdio>
#include <sstream>

#include "graphpse/errors.hpp"
#include "graphpse/parallel.hpp"
#include "graphpse/wl.hpp"

namespace graphpse::cli {
namespace {

std::string format_double(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

nlohmann::ordered_json ordered(const nlohmann::json& doc) { return nlohmann::ordered_json::parse(doc.dump()); }

std::vector<Graph> graphs_of(std::span<const GraphRecord> records) {
  std::vector<Graph> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.graph);
  return out;
}

// Runs fn for graph i, tagging any failure with the graph's position.
template <typename Fn>
auto for_graph(std::size_t i, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), "graph " + std::to_string(i) + ": " + e.what());
  }
}

PairingStrategy strategy_from(const std::string& name) {
  if (name == "repaired") return PairingStrategy::kRepaired;
  if (name == "uniform") return PairingStrategy::kUniform;
  throw Error(ErrorCode::kInvalidArgument, "unknown pairing strategy '" + name + "'");
}

nlohmann::ordered_json distinction_json(const Distinction& d) {
  return {{"distinguishable", d.distinguishable},
          {"witness_iteration", d.witness_iteration ? nlohmann::json(*d.witness_iteration) : nlohmann::json()}};
}

// Orbit ids of the uncolored graph as a one-column node encoding.
PseVector orbit_encoding(const Graph& g) {
  const auto orbits = orbit_partition(g.with_labels(std::nullopt)).orbits;
  PseVector p{PseKind::kConstant, PseLevel::kNode, Eigen::MatrixXd(g.num_nodes(), 1), {{"orbit_ids", true}}};
  for (int v = 0; v < g.num_nodes(); ++v) p.values(v, 0) = orbits[v];
  return p;
}

bool same_partition(std::span<const int> a, std::span<const int> b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    for (std::size_t w = 0; w < a.size(); ++w)
      if ((a[v] == a[w]) != (b[v] == b[w])) return false;
  return true;
}

}  // namespace

Thm1Trial make_thm1_trial(std::uint64_t seed, int index, const Thm1TrialShape& shape) {
  Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(index));
  Thm1Trial t;
  const int n = rng.uniform_int(shape.min_nodes, shape.max_nodes);
  t.graph = erdos_renyi(n, shape.edge_probability, rng);
  const int layers = rng.uniform_int(1, shape.max_layers);
  std::vector<int> widths;
  for (int l = 0; l <= layers; ++l) widths.push_back(rng.uniform_int(1, shape.max_width));
  const int hidden = rng.uniform_int(1, shape.max_width);
  t.stack = random_gin_stack(widths, hidden, shape.weight_bound, rng);
  t.h0.resize(n, widths.front());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < widths.front(); ++j) t.h0(i, j) = rng.uniform(-1.0, 1.0);
  return t;
}

std::vector<Thm1Row> run_thm1(const ExperimentConfig& config, const std::vector<GinLayerWeights>& fixed_stack) {
  for (double alpha : config.alphas) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw Error(ErrorCode::kAlphaOutOfRange, "alpha " + format_double(alpha) + " is not in (0, 1)");
    }
  }
  if (config.trials < 0) throw Error(ErrorCode::kInvalidArgument, "negative trial count");
  const std::size_t per_alpha = static_cast<std::size_t>(config.trials);
  std::vector<Thm1Row> rows(config.alphas.size() * per_alpha);
  parallel_for(per_alpha, config.threads, [&](std::size_t t) {
    Thm1Trial trial = make_thm1_trial(config.seed, static_cast<int>(t), config.thm1);
    if (!fixed_stack.empty()) {
      Rng rng = Rng::stream(config.seed ^ 0x5851F42D4C957F2DULL, t);
      trial.stack = fixed_stack;
      trial.h0.resize(trial.graph.num_nodes(), fixed_stack.front().input_width());
      for (Eigen::Index i = 0; i < trial.h0.rows(); ++i)
        for (Eigen::Index j = 0; j < trial.h0.cols(); ++j) trial.h0(i, j) = rng.uniform(-1.0, 1.0);
    }
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      Thm1Row& row = rows[a * per_alpha + t];
      row.alpha = config.alphas[a];
      row.trial = static_cast<int>(t);
      row.num_nodes = trial.graph.num_nodes();
      row.num_layers = static_cast<int>(trial.stack.size());
      row.report = thm1_verify(trial.graph, trial.h0, trial.stack, row.alpha);
    }
  });
  return rows;
}

std::string thm1_csv(std::span<const Thm1Row> rows) {
  std::ostringstream out;
  out << "alpha,trial,num_nodes,num_layers,max_error,bound,pass,end_to_end_error,end_to_end_bound\n";
  for (const auto& r : rows) {
    out << format_double(r.alpha) << ',' << r.trial << ',' << r.num_nodes << ',' << r.num_layers << ','
        << format_double(r.report.max_error) << ',' << format_double(r.report.bound) << ','
        << (r.report.pass ? "true" : "false") << ',' << format_double(r.report.end_to_end_error) << ','
        << format_double(r.report.end_to_end_bound) << '\n';
  }
  return out.str();
}

Thm2Verdict run_thm2() {
  const Fig1Graphs fig = fig1_graphs();
  nlohmann::ordered_json report;
  bool pass = true;

  const Distinction original = distinguishable(fig.c, fig.d);
  pass = pass && !original.distinguishable;

  const Graph uncolored = fig.c.with_labels(std::nullopt);
  const OrbitPartition orbits = orbit_partition(uncolored);
  pass = pass && orbits.num_orbits() == 1 && uncolored == fig.d.with_labels(std::nullopt);

  const Graph pair[] = {fig.c, fig.d};
  const PseVector encodings[] = {orbit_encoding(fig.c), orbit_encoding(fig.d)};
  const auto recolored = augment_colors(pair, encodings, kDefaultQuantization);
  const Distinction after = distinguishable(fig.c, fig.d, recolored[0], recolored[1]);
  const bool unchanged = same_partition(initial_colors(fig.c), recolored[0]) &&
                         same_partition(initial_colors(fig.d), recolored[1]);
  pass = pass && !after.distinguishable && unchanged;

  const auto stable_c = color_refinement(fig.c, recolored[0]);
  const auto stable_d = color_refinement(fig.d, recolored[1]);
  const std::vector<int> six_six{6, 6};
  pass = pass && stable_c.history.back() == six_six && stable_d.history.back() == six_six;

  const Distinction plain_ab = distinguishable(fig.a, fig.b);
  const auto tri_a = count_cycles(fig.a, 3).front();
  const auto tri_b = count_cycles(fig.b, 3).front();
  const Graph ab[] = {fig.a, fig.b};
  PseConfig triangles;
  triangles.cycle_se = 3;
  const PseVector cycles[] = {all_pse(fig.a, triangles), all_pse(fig.b, triangles)};
  const auto ab_colors = augment_colors(ab, cycles, kDefaultQuantization);
  const Distinction cycle_ab = distinguishable(fig.a, fig.b, ab_colors[0], ab_colors[1]);
  pass = pass && !plain_ab.distinguishable && cycle_ab.distinguishable && tri_a == 0 && tri_b == 2;

  report["verdict"] = pass ? "indistinguishable" : "failed";
  report["pass"] = pass;
  report["c_vs_d"] = {{"original_colors", distinction_json(original)},
                      {"orbit_recolored", distinction_json(after)},
                      {"partition_unchanged", unchanged},
                      {"uncolored_isomorphic", uncolored == fig.d.with_labels(std::nullopt)},
                      {"orbit_count", orbits.num_orbits()},
                      {"automorphism_count", orbits.automorphism_count},
                      {"stable_class_sizes", {{"c", stable_c.history.back()}, {"d", stable_d.history.back()}}}};
  report["a_vs_b"] = {{"plain", distinction_json(plain_ab)},
                      {"cycle_se_3", distinction_json(cycle_ab)},
                      {"triangle_counts", {tri_a, tri_b}}};
  return {pass, report};
}

nlohmann::ordered_json wl_report(std::span<const GraphRecord> records, const std::optional<PseConfig>& pse,
                                 int quantize, int threads) {
  const auto graphs = graphs_of(records);
  std::vector<std::vector<int>> inits(graphs.size());
  if (pse) {
    std::vector<PseVector> encodings(graphs.size());
    parallel_for(graphs.size(), threads,
                 [&](std::size_t i) { encodings[i] = for_graph(i, [&] { return all_pse(graphs[i], *pse); }); });
    inits = augment_colors(graphs, encodings, quantize);
  } else {
    for (std::size_t i = 0; i < graphs.size(); ++i) inits[i] = initial_colors(graphs[i]);
  }
  const auto classes = indistinguishability_classes(graphs, inits);
  std::vector<WlPartition> stable(graphs.size());
  parallel_for(graphs.size(), threads, [&](std::size_t i) { stable[i] = color_refinement(graphs[i], inits[i]); });

  nlohmann::ordered_json report;
  report["num_graphs"] = graphs.size();
  report["pse"] = pse ? ordered(graphpse::to_json(*pse)) : nlohmann::ordered_json(nullptr);
  if (pse) report["quantize"] = quantize;
  int num_classes = 0;
  for (int c : classes) num_classes = std::max(num_classes, c + 1);
  report["num_classes"] = num_classes;
  report["class_ids"] = classes;
  nlohmann::ordered_json per_graph = nlohmann::ordered_json::array();
  for (const auto& p : stable) {
    per_graph.push_back({{"stable_class_sizes", p.history.back()}, {"iterations", p.iterations}});
  }
  report["graphs"] = std::move(per_graph);
  nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::string row(classes.size(), '0');
    for (std::size_t j = 0; j < classes.size(); ++j) row[j] = classes[i] == classes[j] ? '0' : '1';
    matrix.push_back(std::move(row));
  }
  report["distinguishable"] = std::move(matrix);
  return report;
}

std::string encode_csv(std::span<const GraphRecord> records, const EncodeOptions& options) {
  if (options.pse.empty() && !options.forward) throw Error(ErrorCode::kEmptyConfig, "no encodings selected");
  std::vector<std::vector<std::pair<std::string, PseVector>>> blocks(records.size());
  parallel_for(records.size(), options.threads, [&](std::size_t i) {
    blocks[i] = for_graph(i, [&] {
      const Graph& g = records[i].graph;
      std::vector<std::pair<std::string, PseVector>> out;
      for (auto& b : compute_pses(g, options.pse)) out.emplace_back(std::string(to_string(b.kind)), std::move(b));
      if (options.forward) {
        const auto& w = *options.forward;
        const Eigen::MatrixXd x = gpse_inputs(g, options.input_mode, static_cast<int>(w.input_dim()),
                                              stream_seed(options.seed, i));
        const Eigen::MatrixXd h = gpse_encoder_forward(g, x, w);
        out.emplace_back("GPSE", PseVector{PseKind::kAllPSE, PseLevel::kNode, h, {}});
        const auto predictions = gpse_decode(h, w.heads);
        for (std::size_t k = 0; k < predictions.size(); ++k) {
          out.emplace_back("GPSEHead" + std::to_string(k),
                           PseVector{PseKind::kAllPSE, w.heads[k].level, predictions[k], {}});
        }
      }
      return out;
    });
  });
  std::ostringstream out;
  out << "graph_id,node_id,kind,component_index,value\n";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (const auto& [kind, b] : blocks[i]) {
      for (Eigen::Index r = 0; r < b.values.rows(); ++r) {
        const long node = b.level == PseLevel::kGraph ? -1 : static_cast<long>(r);
        for (Eigen::Index c = 0; c < b.values.cols(); ++c) {
          out << i << ',' << node << ',' << kind << ',' << c << ',' << format_double(b.values(r, c)) << '\n';
        }
      }
    }
  }
  return out.str();
}

nlohmann::ordered_json encode_sidecar(std::span<const GraphRecord> records, const EncodeOptions& options) {
  nlohmann::ordered_json kinds = nlohmann::ordered_json::array();
  if (!records.empty()) {
    for (const auto& b : compute_pses(records.front().graph, options.pse)) {
      kinds.push_back({{"kind", to_string(b.kind)},
                       {"level", b.level == PseLevel::kGraph ? "graph" : "node"},
                       {"width", b.width()},
                       {"params", ordered(b.params)}});
    }
  }
  nlohmann::ordered_json doc = {{"num_graphs", records.size()},
                                {"columns", {"graph_id", "node_id", "kind", "component_index", "value"}},
                                {"pse", ordered(graphpse::to_json(options.pse))},
                                {"kinds", std::move(kinds)}};
  if (options.forward) {
    doc["forward"] = {{"input_mode", options.input_mode == InputMode::kConstant ? "constant" : "rnf"},
                      {"seed", options.seed},
                      {"input_dim", options.forward->input_dim()},
                      {"inner_dim", options.forward->inner_dim()},
                      {"num_layers", options.forward->layers.size()},
                      {"num_heads", options.forward->heads.size()}};
  }
  return doc;
}

DatasetBundle run_gen(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.resolve();
  if (c.generator == "csl") return gen_csl(*c.skips, *c.copies, c.seed, c.threads);
  if (c.generator == "regular") {
    return gen_regular(*c.n, *c.d, *c.count, c.seed, strategy_from(c.strategy), c.threads);
  }
  if (c.generator == "tri") return gen_tri(*c.count, *c.n, c.seed, strategy_from(c.strategy), c.threads);
  if (c.generator == "fig1") return fig1_bundle();
  throw Error(ErrorCode::kInvalidArgument, "unknown generator '" + c.generator + "'");
}

std::string stats_csv(const DatasetStats& stats) {
  std::string out;
  auto join = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  };
  join(stats_csv_header());
  join(stats_csv_row(stats));
  return out;
}

}  // namespace graphpse::cli
