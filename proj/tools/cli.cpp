#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "experiment_config.hpp"
#include "experiments.hpp"
#include "graphpse/errors.hpp"
#include "graphpse/weights_io.hpp"

namespace graphpse::cli {
namespace {

struct PseFlags {
  std::vector<std::string> kinds;
  std::optional<int> lap_pe_m;
  std::optional<int> lap_eigval_m;
  std::optional<std::vector<int>> rwse_steps;
  std::optional<std::vector<double>> hk_times;
  std::optional<int> cycle_k;
  bool elstatic_per_component = false;
};

void add_pse_flags(CLI::App* app, PseFlags& f) {
  app->add_option("--pse", f.kinds, "Encodings: LapPE, LapEigval, RWSE, ElstaticPE, HKdiagSE, CycleSE or AllPSE")
      ->delimiter(',');
  app->add_option("--lap-pe-m", f.lap_pe_m, "LapPE eigenvector count");
  app->add_option("--lap-eigval-m", f.lap_eigval_m, "LapEigval eigenvalue count");
  app->add_option("--rwse-steps", f.rwse_steps, "RWSE walk lengths")->delimiter(',');
  app->add_option("--hk-times", f.hk_times, "HKdiagSE diffusion times")->delimiter(',');
  app->add_option("--cycle-k", f.cycle_k, "CycleSE maximum cycle length");
  app->add_flag("--elstatic-per-component", f.elstatic_per_component,
                "ElstaticPE on each component instead of rejecting disconnected graphs");
}

std::optional<PseConfig> merge_pse(std::optional<PseConfig> base, const PseFlags& f) {
  if (!f.kinds.empty()) {
    PseConfig c;
    for (const auto& name : f.kinds) {
      if (name == "AllPSE") {
        c = PseConfig::all_defaults();
        continue;
      }
      switch (pse_kind_from_string(name)) {
        case PseKind::kLapPE: c.lap_pe = kDefaultLapPeCount; break;
        case PseKind::kLapEigval: c.lap_eigval = kDefaultLapEigvalCount; break;
        case PseKind::kRWSE: c.rwse = default_rwse_steps(); break;
        case PseKind::kElstaticPE: c.elstatic = true; break;
        case PseKind::kHKdiagSE: c.hk_diag = default_hk_times(); break;
        case PseKind::kCycleSE: c.cycle_se = kDefaultCycleKMax; break;
        default: throw Error(ErrorCode::kInvalidArgument, "'" + name + "' is not a deterministic encoding");
      }
    }
    base = c;
  }
  const bool any_param = f.lap_pe_m || f.lap_eigval_m || f.rwse_steps || f.hk_times || f.cycle_k ||
                         f.elstatic_per_component;
  if (!any_param) return base;
  PseConfig c = base.value_or(PseConfig{});
  if (f.lap_pe_m) c.lap_pe = *f.lap_pe_m;
  if (f.lap_eigval_m) c.lap_eigval = *f.lap_eigval_m;
  if (f.rwse_steps) c.rwse = *f.rwse_steps;
  if (f.hk_times) c.hk_diag = *f.hk_times;
  if (f.cycle_k) c.cycle_se = *f.cycle_k;
  if (f.elstatic_per_component) {
    c.elstatic = true;
    c.elstatic_per_component = true;
  }
  return c;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  file << content;
  if (!file) throw Error(ErrorCode::kInvalidArgument, "failed writing " + path);
}

std::string dump(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

class Output {
 public:
  Output(const ExperimentConfig& config, std::ostream& stream) : config_(config), stream_(stream) {}

  void primary(const std::string& content) {
    if (config_.out.empty()) {
      stream_ << content;
      return;
    }
    write_file(config_.out, content);
    write_file(config_.out + ".config.json", dump(to_json(config_)));
  }

  void meta(const nlohmann::ordered_json& doc) {
    if (!config_.out.empty()) write_file(config_.out + ".meta.json", dump(doc));
  }

 private:
  const ExperimentConfig& config_;
  std::ostream& stream_;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, path + ": " + e.what());
  }
}

std::vector<GraphRecord> read_input(const ExperimentConfig& config) {
  if (config.input.empty()) throw Error(ErrorCode::kInvalidArgument, "no input file given");
  return read_jsonl_file(config.input);
}

int execute(ExperimentConfig& config, std::ostream& out) {
  Output output(config, out);
  if (config.command == "encode") {
    const auto records = read_input(config);
    EncodeOptions options;
    options.pse = config.pse.value_or(PseConfig{});
    options.seed = config.seed;
    options.threads = config.threads;
    if (!config.weights.empty()) {
      options.forward = gpse_weights_from_json(read_json(config.weights));
      if (config.input_mode == "constant") {
        options.input_mode = InputMode::kConstant;
      } else if (config.input_mode != "rnf") {
        throw Error(ErrorCode::kInvalidArgument, "input mode must be rnf or constant");
      }
    }
    const std::string csv = encode_csv(records, options);
    output.primary(csv);
    output.meta(encode_sidecar(records, options));
    return kExitOk;
  }
  if (config.command == "wl") {
    const auto records = read_input(config);
    if (records.empty()) throw Error(ErrorCode::kInvalidArgument, "wl needs at least one graph");
    output.primary(dump(wl_report(records, config.pse, config.quantize, config.threads)));
    return kExitOk;
  }
  if (config.command == "verify-thm1") {
    std::vector<GinLayerWeights> stack;
    if (!config.weights.empty()) {
      stack = gin_stack_from_json(read_json(config.weights));
      if (stack.empty()) throw Error(ErrorCode::kMalformedRecord, config.weights + " holds no GIN layers");
    }
    const auto rows = run_thm1(config, stack);
    output.primary(thm1_csv(rows));
    bool pass = true;
    for (const auto& r : rows) pass = pass && r.report.pass;
    return pass ? kExitOk : kExitVerificationFailure;
  }
  if (config.command == "verify-thm2") {
    const auto verdict = run_thm2();
    output.primary(dump(verdict.report));
    if (!verdict.pass) {
      throw Error(ErrorCode::kVerdictFailed, "the fig1 graphs did not behave as required");
    }
    return kExitOk;
  }
  if (config.command == "gen") {
    config.resolve();
    const DatasetBundle bundle = run_gen(config);
    std::ostringstream lines;
    serialize_jsonl(lines, bundle.records);
    output.primary(lines.str());
    output.meta(bundle.meta);
    return kExitOk;
  }
  if (config.command == "stats") {
    const auto records = read_input(config);
    std::vector<Graph> graphs;
    for (const auto& r : records) graphs.push_back(r.graph);
    output.primary(stats_csv(dataset_stats(graphs, config.threads)));
    return kExitOk;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown command '" + config.command + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positional and structural encodings, color refinement and expressivity checks"};
  app.name("graphpse");
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::optional<std::string> config_path;
  std::optional<std::string> out_path;
  std::optional<int> quantize;
  std::optional<int> threads;
  app.add_option("--seed", seed, "Global seed for all randomness");
  app.add_option("--config", config_path, "JSON experiment config; flags override its values");
  app.add_option("--out", out_path, "Output file (default: standard output)");
  app.add_option("--quantize", quantize, "Decimal places kept when encodings become colors");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string input;
  PseFlags pse_flags;
  auto* encode = app.add_subcommand("encode", "Compute encodings for every graph of a JSONL file as CSV");
  encode->add_option("input", input, "JSONL graphs")->required();
  add_pse_flags(encode, pse_flags);
  std::optional<std::string> forward_weights;
  std::optional<std::string> input_mode;
  encode->add_option("--forward", forward_weights, "GPSE weight file; appends encoder embeddings and head outputs");
  encode->add_option("--input-mode", input_mode, "GPSE inputs: rnf or constant");

  auto* wl = app.add_subcommand("wl", "Color refinement classes and pairwise distinguishability");
  wl->add_option("input", input, "JSONL graphs")->required();
  add_pse_flags(wl, pse_flags);

  std::optional<std::vector<double>> alphas;
  std::optional<int> trials;
  std::optional<int> max_nodes;
  std::optional<int> max_layers;
  auto* thm1 = app.add_subcommand("verify-thm1", "Check the GatedGCN construction against random GIN stacks");
  thm1->add_option("--alphas", alphas, "Values of alpha in (0, 1)")->delimiter(',');
  thm1->add_option("--trials", trials, "Random trials per alpha");
  thm1->add_option("--max-nodes", max_nodes, "Largest trial graph");
  thm1->add_option("--max-layers", max_layers, "Deepest trial GIN stack");
  std::optional<std::string> gin_weights;
  thm1->add_option("--weights", gin_weights, "GIN stack weight file used for every trial");

  auto* thm2 = app.add_subcommand("verify-thm2", "Check the orbit-coloring counterexample graphs");

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset as JSONL");
  gen->require_subcommand(1);
  std::optional<std::vector<int>> skips;
  std::optional<int> copies, n, d, count;
  std::optional<std::string> strategy;
  auto* csl = gen->add_subcommand("csl", "Circular skip-link graphs");
  csl->add_option("--skips", skips, "Skip lengths in [2, 20]")->delimiter(',');
  csl->add_option("--copies", copies, "Permuted copies per skip");
  auto* regular = gen->add_subcommand("regular", "Random d-regular graphs");
  regular->add_option("--n", n, "Nodes per graph");
  regular->add_option("--d", d, "Degree");
  regular->add_option("--count", count, "Number of graphs");
  regular->add_option("--strategy", strategy, "Pairing strategy: repaired or uniform");
  auto* tri = gen->add_subcommand("tri", "Random 3-regular graphs labeled by triangle membership");
  tri->add_option("--n", n, "Nodes per graph");
  tri->add_option("--count", count, "Number of graphs");
  tri->add_option("--strategy", strategy, "Pairing strategy: repaired or uniform");
  auto* fig1 = gen->add_subcommand("fig1", "C6, two triangles and two colorings of C12(1, 2)");

  auto* stats = app.add_subcommand("stats", "Mean classical graph statistics of a JSONL file as CSV");
  stats->add_option("input", input, "JSONL graphs")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out, cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    ExperimentConfig config;
    if (config_path) config = load_config(*config_path);
    for (auto* sub : {encode, wl, thm1, thm2, gen, stats}) {
      if (sub->parsed()) config.command = sub->get_name();
    }
    for (auto* sub : {csl, regular, tri, fig1}) {
      if (sub->parsed()) config.generator = sub->get_name();
    }
    if (!input.empty()) config.input = input;
    if (out_path) config.out = *out_path;
    if (seed) config.seed = *seed;
    if (quantize) config.quantize = *quantize;
    if (threads) config.threads = *threads;
    config.pse = merge_pse(config.pse, pse_flags);
    if (forward_weights) config.weights = *forward_weights;
    if (gin_weights) config.weights = *gin_weights;
    if (input_mode) config.input_mode = *input_mode;
    if (alphas) config.alphas = *alphas;
    if (trials) config.trials = *trials;
    if (max_nodes) config.thm1.max_nodes = *max_nodes;
    if (max_layers) config.thm1.max_layers = *max_layers;
    if (skips) config.skips = *skips;
    if (copies) config.copies = *copies;
    if (n) config.n = *n;
    if (d) config.d = *d;
    if (count) config.count = *count;
    if (strategy) config.strategy = *strategy;
    if (config.threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be positive");
    return execute(config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kVerdictFailed ? kExitVerificationFailure : kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace graphpse::cli
