#pragma once

#include <span>
#include <string>
#include <vector>

#include "graphpse/datasets.hpp"
#include "graphpse/graph.hpp"

namespace graphpse {

inline constexpr int kExactCliqueMaxNodes = 50;

struct GraphStats {
  double num_nodes = 0;
  double num_edges = 0;
  /// 2m / (n (n - 1)); 0 below two nodes.
  double density = 0;
  /// Minimum number of nodes whose removal disconnects the graph (n - 1 for
  /// complete graphs, 0 when already disconnected).
  double vertex_connectivity = 0;
  /// Second-smallest Laplacian eigenvalue.
  double algebraic_connectivity = 0;
  /// Largest eccentricity within any connected component.
  double diameter = 0;
  double max_clique = 0;
  /// Mean of degree / (n - 1).
  double centrality = 0;
  /// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
  double clustering = 0;
  /// trace(M^3) / 6
  double triangles = 0;
  double connected = 0;
  /// Branch-and-bound when n <= kExactCliqueMaxNodes, greedy otherwise.
  bool max_clique_exact = true;
};

struct DatasetStats {
  std::size_t num_graphs = 0;
  /// Per-field means over the graphs; connected is the connected fraction.
  GraphStats mean;
  std::size_t exact_clique_graphs = 0;
};

int vertex_connectivity(const Graph& g);
int diameter(const Graph& g);
int max_clique_size(const Graph& g);
int greedy_clique_size(const Graph& g);
double average_clustering(const Graph& g);
long triangle_count(const Graph& g);

GraphStats graph_stats(const Graph& g);
DatasetStats dataset_stats(std::span<const Graph> graphs, int threads = 1);
DatasetStats dataset_stats(const DatasetBundle& bundle, int threads = 1);

/// Header row and one data row. The first nine columns follow the classical
/// property table (nodes, edges, density, connectivity, diameter, max clique,
/// centrality, clustering, triangles); the rest are extras.
std::vector<std::string> stats_csv_header();
std::vector<std::string> stats_csv_row(const DatasetStats& stats);

}  // namespace graphpse
