#include "graphpse/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "graphpse/errors.hpp"

namespace graphpse {

Graph Graph::build(int num_nodes, std::span<const Edge> edge_list,
                   std::optional<std::vector<int>> node_labels) {
  if (num_nodes < 0) {
    throw Error(ErrorCode::kIndexOutOfRange, "negative node count");
  }
  Graph g;
  g.num_nodes_ = num_nodes;
  g.edges_.reserve(edge_list.size());
  for (auto [u, v] : edge_list) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") with " +
                      std::to_string(num_nodes) + " nodes");
    }
    if (u == v) throw Error(ErrorCode::kSelfLoop, "self-loop at node " + std::to_string(u));
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  if (node_labels && static_cast<int>(node_labels->size()) != num_nodes) {
    throw Error(ErrorCode::kLengthMismatch, "node_labels length differs from num_nodes");
  }
  g.node_labels_ = std::move(node_labels);
  g.index_neighbors();
  return g;
}

void Graph::index_neighbors() {
  std::vector<int> deg(num_nodes_, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(num_nodes_ + 1, 0);
  for (int v = 0; v < num_nodes_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  neighbors_.assign(offsets_.back(), 0);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted, so each neighbor list comes out sorted for the u side;
  // the v side needs a final sort.
  for (const auto& [u, v] : edges_) {
    neighbors_[fill[u]++] = v;
    neighbors_[fill[v]++] = u;
  }
  for (int v = 0; v < num_nodes_; ++v) {
    std::sort(neighbors_.begin() + offsets_[v], neighbors_.begin() + offsets_[v + 1]);
  }
}

bool Graph::has_edge(int u, int v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::with_labels(std::optional<std::vector<int>> labels) const {
  if (labels && static_cast<int>(labels->size()) != num_nodes_) {
    throw Error(ErrorCode::kLengthMismatch, "node_labels length differs from num_nodes");
  }
  Graph g = *this;
  g.node_labels_ = std::move(labels);
  return g;
}

Graph build_graph(int num_nodes, std::span<const Edge> edge_list) {
  return Graph::build(num_nodes, edge_list);
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> inv(n, -1);
  for (int v = 0; v < n; ++v) {
    const int image = perm[v];
    if (image < 0 || image >= n || inv[image] != -1) {
      throw Error(ErrorCode::kNotABijection, "permutation is not a bijection");
    }
    inv[image] = v;
  }
  return inv;
}

Graph permute(const Graph& g, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != g.num_nodes()) {
    throw Error(ErrorCode::kNotABijection, "permutation length differs from node count");
  }
  inverse_permutation(perm);  // validates

  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);

  std::optional<std::vector<int>> labels;
  if (g.node_labels()) {
    labels.emplace(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) (*labels)[perm[v]] = (*g.node_labels())[v];
  }
  Graph out = Graph::build(g.num_nodes(), edges, std::move(labels));
  if (g.virtual_node()) out.virtual_node_ = perm[*g.virtual_node()];
  return out;
}

Graph add_virtual_node(const Graph& g) {
  if (g.virtual_node()) {
    throw Error(ErrorCode::kVirtualNodeAlreadyPresent, "graph already has a virtual node");
  }
  const int vn = g.num_nodes();
  std::vector<Edge> edges = g.edges();
  for (int v = 0; v < vn; ++v) edges.emplace_back(v, vn);

  std::optional<std::vector<int>> labels;
  if (g.node_labels()) {
    labels = *g.node_labels();
    const int fresh =
        labels->empty() ? 0 : *std::max_element(labels->begin(), labels->end()) + 1;
    labels->push_back(fresh);
  }
  Graph out = Graph::build(vn + 1, edges, std::move(labels));
  out.virtual_node_ = vn;
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  const int shift = g.num_nodes();
  std::vector<Edge> edges = g.edges();
  for (const auto& [u, v] : h.edges()) edges.emplace_back(u + shift, v + shift);
  std::optional<std::vector<int>> labels;
  if (g.node_labels() && h.node_labels()) {
    labels = *g.node_labels();
    labels->insert(labels->end(), h.node_labels()->begin(), h.node_labels()->end());
  }
  return Graph::build(g.num_nodes() + h.num_nodes(), edges, std::move(labels));
}

std::vector<int> connected_components(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<int> comp(n, -1);
  std::vector<int> stack;
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(v)) {
        if (comp[u] == -1) {
          comp[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return comp;
}

int count_components(const Graph& g) {
  const auto comp = connected_components(g);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

bool is_connected(const Graph& g) { return count_components(g) <= 1; }

}  // namespace graphpse
