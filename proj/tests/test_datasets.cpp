#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "graphpse/datasets.hpp"
#include "graphpse/errors.hpp"
#include "graphpse/pse.hpp"
#include "graphpse/stats.hpp"
#include "graphpse/wl.hpp"
#include "test_support.hpp"

namespace graphpse {
namespace {

using testing::make_graph;

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.num_nodes(); ++v) out.push_back(g.degree(v));
  std::sort(out.begin(), out.end());
  return out;
}

std::multiset<std::vector<long long>> rwse_multiset(const Graph& g) {
  const int steps[] = {1, 2, 3, 4, 5, 6};
  const auto p = rwse(g, steps);
  std::multiset<std::vector<long long>> out;
  for (Eigen::Index v = 0; v < p.values.rows(); ++v) {
    std::vector<long long> row;
    for (Eigen::Index c = 0; c < p.values.cols(); ++c) row.push_back(std::llround(p.values(v, c) * 1e9));
    out.insert(row);
  }
  return out;
}

TEST(Csl, DefaultShape) {
  const auto skips = default_csl_skips();
  EXPECT_EQ(skips, (std::vector<int>{2, 3, 4, 5, 6, 9, 11, 12, 13, 16}));
  const auto bundle = gen_csl(skips, kDefaultCslCopies, 0);
  ASSERT_EQ(bundle.records.size(), 150u);
  std::map<int, int> per_class;
  for (const auto& r : bundle.records) {
    EXPECT_EQ(r.graph.num_nodes(), 41);
    EXPECT_EQ(r.graph.num_edges(), 82u);
    EXPECT_EQ(degree_sequence(r.graph), std::vector<int>(41, 4));
    ASSERT_TRUE(r.graph_label);
    ++per_class[static_cast<int>(*r.graph_label)];
  }
  EXPECT_EQ(per_class.size(), 10u);
  for (const auto& [label, count] : per_class) EXPECT_EQ(count, 15);
  EXPECT_EQ(bundle.meta["generator"], "csl");
}

TEST(Csl, Stats) {
  const auto stats = dataset_stats(gen_csl(default_csl_skips(), kDefaultCslCopies, 3));
  EXPECT_EQ(stats.num_graphs, 150u);
  EXPECT_NEAR(stats.mean.density, 0.1, 1e-12);
  EXPECT_NEAR(stats.mean.triangles, 4.10, 1e-12);
  EXPECT_NEAR(stats.mean.max_clique, 2.10, 1e-12);
  EXPECT_NEAR(stats.mean.centrality, 0.1, 1e-12);
  EXPECT_EQ(stats.mean.connected, 1.0);
}

TEST(Csl, BadSkips) {
  const std::vector<std::vector<int>> bad = {{}, {1}, {21}, {2, 2}, {0, 3}, {-4}};
  for (const auto& skips : bad) {
    try {
      gen_csl(skips, 1, 0);
      FAIL() << "accepted a bad skip list";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), skips.empty() ? e.code() : ErrorCode::kBadSkip);
    }
  }
  const int ok[] = {20, 2};
  EXPECT_EQ(gen_csl(ok, 2, 0).records.size(), 4u);
}

TEST(Csl, WithinClassCopiesShareInvariants) {
  const auto bundle = gen_csl(default_csl_skips(), 4, 11);
  std::map<int, std::multiset<std::vector<long long>>> signature;
  for (const auto& r : bundle.records) {
    const int label = static_cast<int>(*r.graph_label);
    const auto sig = rwse_multiset(r.graph);
    auto [it, inserted] = signature.emplace(label, sig);
    if (!inserted) {
      EXPECT_EQ(it->second, sig) << "class " << label;
    }
  }
}

TEST(Csl, PermutedCirculantsIsomorphicSmall) {
  // The same permutation construction on circulants small enough to check exhaustively.
  Rng rng(5);
  for (int n : {7, 8, 9}) {
    const int offsets[] = {1, 2};
    const Graph base = circulant(n, offsets);
    for (int copy = 0; copy < 3; ++copy) {
      const Graph p = permute(base, rng.permutation(n));
      EXPECT_TRUE(testing::brute_force_isomorphic(base, p));
    }
    const int other[] = {1, 3};
    if (n == 8) {
      EXPECT_FALSE(testing::brute_force_isomorphic(base, circulant(n, other)));
    }
  }
}

TEST(Csl, DeterministicAcrossThreads) {
  const auto skips = default_csl_skips();
  const auto one = gen_csl(skips, 5, 42, 1);
  const auto four = gen_csl(skips, 5, 42, 4);
  EXPECT_EQ(one.records, four.records);
  EXPECT_EQ(one.meta, four.meta);
  EXPECT_NE(gen_csl(skips, 5, 43).records, one.records);
}

TEST(Regular, Examples) {
  const auto bundle = gen_regular(24, 4, 20, 1);
  ASSERT_EQ(bundle.records.size(), 20u);
  for (const auto& r : bundle.records) {
    EXPECT_EQ(r.graph.num_edges(), 48u);
    EXPECT_EQ(degree_sequence(r.graph), std::vector<int>(24, 4));
  }
  try {
    gen_regular(5, 3, 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleDegree);
  }
  for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 4}, {0, 0}, {6, -1}}) {
    EXPECT_THROW(gen_regular(n, d, 1, 0), Error);
  }
  EXPECT_EQ(gen_regular(10, 9, 1, 0).records.front().graph.num_edges(), 45u);
}

TEST(Regular, UniformRetriesExhausted) {
  // K_10 as a 9-regular pairing is essentially never simple on the first tries.
  try {
    gen_regular(10, 9, 1, 0, PairingStrategy::kUniform, 1, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRetriesExhausted);
  }
}

TEST(Regular, BothStrategiesRegular) {
  for (auto strategy : {PairingStrategy::kRepaired, PairingStrategy::kUniform}) {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{10, 3}, {12, 5}, {7, 2}, {9, 0}}) {
      const auto bundle = gen_regular(n, d, 10, 17, strategy);
      for (const auto& r : bundle.records) {
        EXPECT_EQ(degree_sequence(r.graph), std::vector<int>(n, d));
        EXPECT_EQ(r.graph.num_edges(), static_cast<std::size_t>(n * d / 2));
      }
    }
  }
}

TEST(Regular, DeterministicAcrossThreads) {
  EXPECT_EQ(gen_regular(30, 3, 40, 8, PairingStrategy::kRepaired, 1).records,
            gen_regular(30, 3, 40, 8, PairingStrategy::kRepaired, 3).records);
}

TEST(Tri, LabelsMatchOracles) {
  const auto bundle = gen_tri(200, 20, 4);
  ASSERT_EQ(bundle.records.size(), 200u);
  for (const auto& r : bundle.records) {
    const Graph& g = r.graph;
    ASSERT_TRUE(r.node_task_labels);
    const Eigen::MatrixXd m = adjacency_matrix<double>(g);
    const Eigen::MatrixXd m3 = m * m * m;
    const auto cyc = cycle_se(g, 3);
    const auto per_node = triangles_per_node(g);
    int on_triangle = 0;
    for (int v = 0; v < g.num_nodes(); ++v) {
      const int want = m3(v, v) > 0 ? 1 : 0;
      EXPECT_EQ((*r.node_task_labels)[v], want);
      EXPECT_EQ(per_node[v] * 2, static_cast<int>(m3(v, v)));
      on_triangle += want;
    }
    EXPECT_EQ(cyc.values(0, 0) * 3, std::accumulate(per_node.begin(), per_node.end(), 0));
    EXPECT_EQ(cyc.values(0, 0) == 0, on_triangle == 0);
    EXPECT_EQ(triangle_count(g), static_cast<long>(std::llround(m3.trace() / 6)));
  }
  EXPECT_EQ(bundle.meta["generator"], "tri");
}

TEST(Tri, MeanTriangles) {
  const auto stats = dataset_stats(gen_tri(1000, 20, 0));
  EXPECT_NEAR(stats.mean.triangles, 1.75, 0.3);
  EXPECT_EQ(stats.mean.num_edges, 30.0);
}

TEST(Fig1, Properties) {
  const auto f = fig1_graphs();
  EXPECT_EQ(f.a.num_nodes(), 6);
  EXPECT_EQ(f.b.num_nodes(), 6);
  EXPECT_EQ(f.a.num_edges(), 6u);
  EXPECT_EQ(f.b.num_edges(), 6u);
  EXPECT_EQ(count_components(f.b), 2);
  EXPECT_EQ(triangle_count(f.a), 0);
  EXPECT_EQ(triangle_count(f.b), 2);
  EXPECT_EQ(degree_sequence(f.c), std::vector<int>(12, 4));
  ASSERT_TRUE(f.c.node_labels());
  ASSERT_TRUE(f.d.node_labels());
  EXPECT_EQ(*f.c.node_labels(), (std::vector<int>{1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0}));
  EXPECT_EQ(*f.d.node_labels(), (std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(fig1_bundle().records.size(), 4u);
}

TEST(Circulant, Examples) {
  const int one[] = {1};
  EXPECT_EQ(circulant(6, one), testing::cycle(6));
  const int half[] = {1, 2};
  EXPECT_EQ(circulant(4, half).num_edges(), 6u);
}

TEST(ErdosRenyi, Extremes) {
  Rng rng(1);
  EXPECT_EQ(erdos_renyi(6, 0.0, rng).num_edges(), 0u);
  EXPECT_EQ(erdos_renyi(6, 1.0, rng).num_edges(), 15u);
}

// Smallest removal set found by trying all subsets; n - 1 for complete graphs.
int brute_vertex_connectivity(const Graph& g) {
  const int n = g.num_nodes();
  if (!is_connected(g)) return 0;
  for (int size = 1; size <= n - 2; ++size) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      std::vector<int> keep;
      for (int v = 0; v < n; ++v) {
        if (!(mask >> v & 1)) keep.push_back(v);
      }
      std::vector<int> index(n, -1);
      for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
      std::vector<Edge> edges;
      for (const auto& [u, v] : g.edges()) {
        if (index[u] >= 0 && index[v] >= 0) edges.emplace_back(index[u], index[v]);
      }
      if (!is_connected(Graph::build(static_cast<int>(keep.size()), edges))) return size;
    }
  }
  return n - 1;
}

int brute_clique(const Graph& g) {
  const int n = g.num_nodes();
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool clique = true;
    for (int u = 0; u < n && clique; ++u) {
      for (int v = u + 1; v < n && clique; ++v) {
        if ((mask >> u & 1) && (mask >> v & 1)) clique = g.has_edge(u, v);
      }
    }
    if (clique) best = size;
  }
  return best;
}

TEST(Stats, Examples) {
  const auto t = graph_stats(testing::triangle());
  EXPECT_EQ(t.clustering, 1.0);
  EXPECT_EQ(t.diameter, 1.0);
  EXPECT_EQ(t.triangles, 1.0);
  EXPECT_EQ(t.max_clique, 3.0);
  EXPECT_EQ(t.vertex_connectivity, 2.0);
  EXPECT_EQ(t.density, 1.0);
  EXPECT_NEAR(t.algebraic_connectivity, 3.0, 1e-12);

  const auto p = graph_stats(testing::path(4));
  EXPECT_EQ(p.diameter, 3.0);
  EXPECT_EQ(p.clustering, 0.0);
  EXPECT_EQ(p.vertex_connectivity, 1.0);

  const auto split = graph_stats(make_graph(5, {{0, 1}, {2, 3}, {3, 4}}));
  EXPECT_EQ(split.connected, 0.0);
  EXPECT_EQ(split.vertex_connectivity, 0.0);
  EXPECT_EQ(split.diameter, 2.0);

  const auto single = graph_stats(make_graph(1, {}));
  EXPECT_EQ(single.density, 0.0);
  EXPECT_EQ(single.max_clique, 1.0);
}

TEST(Stats, MatchesBruteForceOnSmallGraphs) {
  Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph g = erdos_renyi(rng.uniform_int(2, 10), rng.uniform(0.2, 0.9), rng);
    EXPECT_EQ(vertex_connectivity(g), brute_vertex_connectivity(g));
    EXPECT_EQ(max_clique_size(g), brute_clique(g));
    EXPECT_LE(greedy_clique_size(g), max_clique_size(g));
    EXPECT_GE(greedy_clique_size(g), g.num_edges() > 0 ? 2 : 1);
  }
}

TEST(Stats, TriDatasetMeans) {
  const auto stats = dataset_stats(gen_tri(50, 20, 2));
  EXPECT_EQ(stats.mean.num_nodes, 20.0);
  EXPECT_EQ(stats.mean.num_edges, 30.0);
  EXPECT_EQ(stats.exact_clique_graphs, 50u);
  const auto big = dataset_stats(gen_tri(3, 100, 2));
  EXPECT_EQ(big.exact_clique_graphs, 0u);
  EXPECT_EQ(stats_csv_header().size(), stats_csv_row(stats).size());
}

TEST(Stats, ThreadsDoNotChangeMeans) {
  const auto graphs = gen_regular(16, 3, 30, 9).graphs();
  const auto a = dataset_stats(graphs, 1);
  const auto b = dataset_stats(graphs, 4);
  EXPECT_EQ(stats_csv_row(a), stats_csv_row(b));
}

}  // namespace
}  // namespace graphpse
