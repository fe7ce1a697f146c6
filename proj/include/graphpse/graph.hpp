#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace graphpse {

using Edge = std::pair<int, int>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Immutable simple undirected graph.
///
/// Edges are stored once per unordered pair as (u, v) with u < v, sorted
/// lexicographically. Neighbor lists are kept in CSR form, sorted ascending.
/// Optional per-node integer labels and an optional virtual-node index ride
/// along; a virtual node is adjacent to every other node.
class Graph {
 public:
  Graph() = default;

  /// Validates and canonicalizes an edge list. Duplicate pairs (in either
  /// orientation) collapse; self-loops and out-of-range endpoints throw.
  static Graph build(int num_nodes, std::span<const Edge> edge_list,
                     std::optional<std::vector<int>> node_labels = std::nullopt);

  int num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const int> neighbors(int v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(int u, int v) const;

  const std::optional<std::vector<int>>& node_labels() const { return node_labels_; }
  std::optional<int> virtual_node() const { return virtual_node_; }

  Graph with_labels(std::optional<std::vector<int>> labels) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_ &&
           a.node_labels_ == b.node_labels_ && a.virtual_node_ == b.virtual_node_;
  }

 private:
  friend Graph add_virtual_node(const Graph& g);
  friend Graph permute(const Graph& g, std::span<const int> perm);

  void index_neighbors();

  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<int> neighbors_;
  std::optional<std::vector<int>> node_labels_;
  std::optional<int> virtual_node_;
};

Graph build_graph(int num_nodes, std::span<const Edge> edge_list);

/// Relabels node v as perm[v]. Labels and the virtual-node index follow.
Graph permute(const Graph& g, std::span<const int> perm);

std::vector<int> inverse_permutation(std::span<const int> perm);

/// Appends one node adjacent to all existing nodes. If g carries labels, the
/// new node gets a fresh label (max + 1).
Graph add_virtual_node(const Graph& g);

/// Nodes of h are shifted by g.num_nodes(). Labels are kept only if both
/// graphs carry them; virtual-node flags are dropped.
Graph disjoint_union(const Graph& g, const Graph& h);

/// Component id per node, ids assigned in order of smallest member.
std::vector<int> connected_components(const Graph& g);
int count_components(const Graph& g);
bool is_connected(const Graph& g);

template <typename Scalar = double>
Matrix<Scalar> adjacency_matrix(const Graph& g) {
  Matrix<Scalar> m = Matrix<Scalar>::Zero(g.num_nodes(), g.num_nodes());
  for (const auto& [u, v] : g.edges()) {
    m(u, v) = Scalar(1);
    m(v, u) = Scalar(1);
  }
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> degree_matrix(const Graph& g) {
  Matrix<Scalar> d = Matrix<Scalar>::Zero(g.num_nodes(), g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) d(v, v) = Scalar(g.degree(v));
  return d;
}

/// L = D - M.
template <typename Scalar = double>
Matrix<Scalar> laplacian(const Graph& g) {
  return degree_matrix<Scalar>(g) - adjacency_matrix<Scalar>(g);
}

/// P = D^+ M. Rows of isolated nodes are zero.
template <typename Scalar = double>
Matrix<Scalar> random_walk_matrix(const Graph& g) {
  Matrix<Scalar> p = Matrix<Scalar>::Zero(g.num_nodes(), g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) == 0) continue;
    const Scalar w = Scalar(1) / Scalar(g.degree(v));
    for (int u : g.neighbors(v)) p(v, u) = w;
  }
  return p;
}

}  // namespace graphpse
