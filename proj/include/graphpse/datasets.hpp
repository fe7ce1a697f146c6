#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphpse/graph.hpp"
#include "graphpse/graph_io.hpp"
#include "graphpse/rng.hpp"

namespace graphpse {

/// Generated graphs with their task labels (graph_label for graph-level
/// tasks, node_task_labels for node-level ones) and a meta record holding the
/// generator name, seed and parameters.
struct DatasetBundle {
  std::vector<GraphRecord> records;
  nlohmann::json meta;

  std::vector<Graph> graphs() const;
};

inline constexpr int kCslNodes = 41;
inline constexpr int kDefaultCslCopies = 15;
std::vector<int> default_csl_skips();  // {2, 3, 4, 5, 6, 9, 11, 12, 13, 16}

/// Circulant C_41(1, r) for each skip r, copies_per_class times, each copy
/// under a random node permutation drawn from its own stream. Label = index
/// of r in `skips`. Throws BadSkip for repeated skips or skips outside [2, 20].
DatasetBundle gen_csl(std::span<const int> skips, int copies_per_class, std::uint64_t seed,
                      int threads = 1);

enum class PairingStrategy {
  /// Pairs all stubs at random and keeps only conflicting stubs for another
  /// round; restarts when no admissible pair is left.
  kRepaired,
  /// Uniform over simple d-regular graphs: rejects the whole pairing on any
  /// self-loop or repeated edge.
  kUniform,
};

inline constexpr int kMaxPairingRetries = 10000;

/// Random simple d-regular graph on n nodes. Graph i uses stream i of `seed`.
/// Connectivity is not enforced; meta counts the connected outputs.
DatasetBundle gen_regular(int n, int d, int num_graphs, std::uint64_t seed,
                          PairingStrategy strategy = PairingStrategy::kRepaired, int threads = 1,
                          int max_retries = kMaxPairingRetries);

/// One draw of gen_regular for a single stream.
Graph random_regular_graph(int n, int d, Rng& rng, PairingStrategy strategy = PairingStrategy::kRepaired,
                           int max_retries = kMaxPairingRetries);

/// Random 3-regular graphs; node label 1 iff the node lies on a triangle.
DatasetBundle gen_tri(int num_graphs, int n, std::uint64_t seed,
                      PairingStrategy strategy = PairingStrategy::kRepaired, int threads = 1);

/// Number of triangles through each node, (M^3)_vv / 2.
std::vector<int> triangles_per_node(const Graph& g);

struct Fig1Graphs {
  Graph a;  // 6-cycle
  Graph b;  // two disjoint triangles
  Graph c;  // C_12(1, 2), label 1 (red) on {0, 1, 2, 6, 7, 8}
  Graph d;  // C_12(1, 2), label 1 (red) on odd nodes
};

Fig1Graphs fig1_graphs();
DatasetBundle fig1_bundle();

/// G(n, p): each pair independently with probability p, pairs in
/// lexicographic order.
Graph erdos_renyi(int n, double p, Rng& rng);

/// Circulant graph on n nodes with edges {i, i + s mod n} for each s.
Graph circulant(int n, std::span<const int> offsets);

}  // namespace graphpse
