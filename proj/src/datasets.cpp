#include "graphpse/datasets.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "graphpse/errors.hpp"
#include "graphpse/parallel.hpp"

namespace graphpse {
namespace {

using Pairs = std::set<std::pair<int, int>>;

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair(a, b) : std::pair(b, a); }

std::vector<int> stub_list(int n, int d) {
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (int k = 0; k < d; ++k)
    for (int v = 0; v < n; ++v) stubs.push_back(v);
  return stubs;
}

std::optional<Pairs> try_uniform(int n, int d, Rng& rng) {
  auto stubs = stub_list(n, d);
  rng.shuffle(std::span<int>(stubs));
  Pairs edges;
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    if (stubs[i] == stubs[i + 1] || !edges.insert(ordered(stubs[i], stubs[i + 1])).second) {
      return std::nullopt;
    }
  }
  return edges;
}

// Some pair of leftover stubs can still become a new edge.
bool admissible(const Pairs& edges, const std::map<int, int>& leftover) {
  if (leftover.empty()) return true;
  for (auto a = leftover.begin(); a != leftover.end(); ++a) {
    for (auto b = std::next(a); b != leftover.end(); ++b) {
      if (!edges.count({a->first, b->first})) return true;
    }
  }
  return false;
}

std::optional<Pairs> try_repaired(int n, int d, Rng& rng) {
  Pairs edges;
  auto stubs = stub_list(n, d);
  while (!stubs.empty()) {
    std::map<int, int> leftover;
    rng.shuffle(std::span<int>(stubs));
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const auto e = ordered(stubs[i], stubs[i + 1]);
      if (e.first == e.second || !edges.insert(e).second) {
        ++leftover[e.first];
        ++leftover[e.second];
      }
    }
    if (!admissible(edges, leftover)) return std::nullopt;
    stubs.clear();
    for (const auto& [v, count] : leftover) stubs.insert(stubs.end(), count, v);
  }
  return edges;
}

void check_regular(int n, int d) {
  if (n <= 0 || d < 0 || d >= n || (static_cast<long>(n) * d) % 2 != 0) {
    throw Error(ErrorCode::kInfeasibleDegree,
                "no simple " + std::to_string(d) + "-regular graph on " + std::to_string(n) + " nodes");
  }
}

std::string strategy_name(PairingStrategy s) { return s == PairingStrategy::kUniform ? "uniform" : "repaired"; }

}  // namespace

std::vector<Graph> DatasetBundle::graphs() const {
  std::vector<Graph> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.graph);
  return out;
}

std::vector<int> default_csl_skips() { return {2, 3, 4, 5, 6, 9, 11, 12, 13, 16}; }

Graph circulant(int n, std::span<const int> offsets) {
  std::vector<Edge> edges;
  for (int s : offsets)
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + s) % n);
  return Graph::build(n, edges);
}

Graph erdos_renyi(int n, double p, Rng& rng) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "need n >= 0 and p in [0, 1]");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
  return Graph::build(n, edges);
}

DatasetBundle gen_csl(std::span<const int> skips, int copies_per_class, std::uint64_t seed, int threads) {
  if (skips.empty()) throw Error(ErrorCode::kBadSkip, "empty skip list");
  for (std::size_t i = 0; i < skips.size(); ++i) {
    if (skips[i] < 2 || skips[i] > 20) {
      throw Error(ErrorCode::kBadSkip, "skip " + std::to_string(skips[i]) + " outside [2, 20]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (skips[i] == skips[j]) throw Error(ErrorCode::kBadSkip, "repeated skip " + std::to_string(skips[i]));
    }
  }
  if (copies_per_class < 0) throw Error(ErrorCode::kInvalidArgument, "negative copy count");

  std::vector<Graph> bases;
  for (int r : skips) {
    const int offsets[] = {1, r};
    bases.push_back(circulant(kCslNodes, offsets));
  }
  const std::size_t total = skips.size() * static_cast<std::size_t>(copies_per_class);
  DatasetBundle out;
  out.records.resize(total);
  parallel_for(total, threads, [&](std::size_t i) {
    const std::size_t cls = i / copies_per_class;
    Rng rng = Rng::stream(seed, i);
    out.records[i].graph = permute(bases[cls], rng.permutation(kCslNodes));
    out.records[i].graph_label = static_cast<double>(cls);
  });

  nlohmann::json coprime = nlohmann::json::array();
  for (int r : skips) coprime.push_back(std::gcd(r, kCslNodes) == 1);
  out.meta = {{"generator", "csl"},
              {"seed", seed},
              {"params", {{"skips", std::vector<int>(skips.begin(), skips.end())},
                          {"copies_per_class", copies_per_class},
                          {"num_nodes", kCslNodes}}},
              {"skip_coprime_with_n", coprime},
              {"num_graphs", total}};
  return out;
}

Graph random_regular_graph(int n, int d, Rng& rng, PairingStrategy strategy, int max_retries) {
  check_regular(n, d);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    const auto edges = strategy == PairingStrategy::kUniform ? try_uniform(n, d, rng) : try_repaired(n, d, rng);
    if (edges) return Graph::build(n, std::vector<Edge>(edges->begin(), edges->end()));
  }
  throw Error(ErrorCode::kRetriesExhausted,
              "no simple pairing after " + std::to_string(max_retries) + " attempts");
}

DatasetBundle gen_regular(int n, int d, int num_graphs, std::uint64_t seed, PairingStrategy strategy,
                          int threads, int max_retries) {
  check_regular(n, d);
  if (num_graphs < 0) throw Error(ErrorCode::kInvalidArgument, "negative graph count");
  DatasetBundle out;
  out.records.resize(num_graphs);
  parallel_for(num_graphs, threads, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    out.records[i].graph = random_regular_graph(n, d, rng, strategy, max_retries);
  });
  int connected = 0;
  for (const auto& r : out.records) connected += is_connected(r.graph) ? 1 : 0;
  out.meta = {{"generator", "regular"},
              {"seed", seed},
              {"params", {{"n", n}, {"d", d}, {"num_graphs", num_graphs}, {"strategy", strategy_name(strategy)},
                          {"max_retries", max_retries}}},
              {"connectivity_enforced", false},
              {"num_connected", connected},
              {"num_graphs", num_graphs}};
  return out;
}

std::vector<int> triangles_per_node(const Graph& g) {
  std::vector<int> out(g.num_nodes(), 0);
  for (int v = 0; v < g.num_nodes(); ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) out[v] += g.has_edge(nb[i], nb[j]) ? 1 : 0;
  }
  return out;
}

DatasetBundle gen_tri(int num_graphs, int n, std::uint64_t seed, PairingStrategy strategy, int threads) {
  DatasetBundle out = gen_regular(n, 3, num_graphs, seed, strategy, threads);
  for (auto& r : out.records) {
    std::vector<int> labels;
    for (int t : triangles_per_node(r.graph)) labels.push_back(t > 0 ? 1 : 0);
    r.node_task_labels = std::move(labels);
  }
  out.meta["generator"] = "tri";
  out.meta["params"]["n"] = n;
  return out;
}

Fig1Graphs fig1_graphs() {
  const int ring[] = {1};
  const int chords[] = {1, 2};
  std::vector<Edge> triangles = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  Graph base = circulant(12, chords);
  std::vector<int> blocks(12, 0), alternating(12, 0);
  for (int v : {0, 1, 2, 6, 7, 8}) blocks[v] = 1;
  for (int v = 1; v < 12; v += 2) alternating[v] = 1;
  return {circulant(6, ring), Graph::build(6, triangles), base.with_labels(blocks),
          base.with_labels(alternating)};
}

DatasetBundle fig1_bundle() {
  const auto f = fig1_graphs();
  DatasetBundle out;
  for (const Graph* g : {&f.a, &f.b, &f.c, &f.d}) out.records.push_back({*g, std::nullopt, std::nullopt});
  out.meta = {{"generator", "fig1"}, {"names", {"a", "b", "c", "d"}}, {"num_graphs", 4}};
  return out;
}

}  // namespace graphpse
