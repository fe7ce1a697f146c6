#include "graphpse/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "graphpse/numeric.hpp"
#include "graphpse/parallel.hpp"

namespace graphpse {
namespace {

// Unit-capacity flow network with every node split into in -> out.
class SplitNetwork {
 public:
  explicit SplitNetwork(const Graph& g) : size_(2 * g.num_nodes()), adj_(size_) {
    for (int v = 0; v < g.num_nodes(); ++v) add_arc(2 * v, 2 * v + 1, 1);
    for (const auto& [u, v] : g.edges()) {
      add_arc(2 * u + 1, 2 * v, kInfinite);
      add_arc(2 * v + 1, 2 * u, kInfinite);
    }
  }

  // Internally node-disjoint s-t paths, counting at most `cap`.
  int local_connectivity(int s, int t, int cap) {
    for (auto& a : arcs_) a.flow = 0;
    const int source = 2 * s + 1;
    const int sink = 2 * t;
    int flow = 0;
    std::vector<int> via(size_);
    while (flow < cap) {
      std::fill(via.begin(), via.end(), -1);
      std::deque<int> queue{source};
      via[source] = -2;
      while (!queue.empty() && via[sink] == -1) {
        const int x = queue.front();
        queue.pop_front();
        for (int id : adj_[x]) {
          const Arc& a = arcs_[id];
          if (via[a.to] == -1 && a.capacity - a.flow > 0) {
            via[a.to] = id;
            queue.push_back(a.to);
          }
        }
      }
      if (via[sink] == -1) break;
      for (int x = sink; x != source; x = arcs_[via[x] ^ 1].to) {
        arcs_[via[x]].flow += 1;
        arcs_[via[x] ^ 1].flow -= 1;
      }
      ++flow;
    }
    return flow;
  }

 private:
  static constexpr int kInfinite = std::numeric_limits<int>::max() / 2;
  struct Arc {
    int to;
    int capacity;
    int flow = 0;
  };

  void add_arc(int from, int to, int capacity) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, capacity});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
  }

  int size_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

std::vector<int> bfs_distances(const Graph& g, int s) {
  std::vector<int> dist(g.num_nodes(), -1);
  std::deque<int> queue{s};
  dist[s] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

class CliqueSearch {
 public:
  explicit CliqueSearch(const Graph& g) : g_(g) {}

  int run() {
    std::vector<int> all(g_.num_nodes());
    std::iota(all.begin(), all.end(), 0);
    expand(0, all);
    return best_;
  }

 private:
  // Greedy coloring of the candidates bounds the clique they can add.
  int color_bound(const std::vector<int>& candidates) const {
    std::vector<int> color(candidates.size(), 0);
    int used = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      std::vector<bool> taken(used + 1, false);
      for (std::size_t j = 0; j < i; ++j) {
        if (g_.has_edge(candidates[i], candidates[j])) taken[color[j]] = true;
      }
      int c = 0;
      while (taken[c]) ++c;
      color[i] = c;
      used = std::max(used, c + 1);
    }
    return used;
  }

  void expand(int size, std::vector<int> candidates) {
    if (candidates.empty()) {
      best_ = std::max(best_, size);
      return;
    }
    if (size + color_bound(candidates) <= best_) return;
    while (!candidates.empty()) {
      if (size + static_cast<int>(candidates.size()) <= best_) return;
      const int v = candidates.back();
      candidates.pop_back();
      std::vector<int> next;
      for (int u : candidates) {
        if (g_.has_edge(u, v)) next.push_back(u);
      }
      expand(size + 1, std::move(next));
    }
  }

  const Graph& g_;
  int best_ = 0;
};

double fiedler_value(const Graph& g) {
  if (g.num_nodes() < 2) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian<double>(g), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(1);
}

std::string format_value(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", x);
  return buffer;
}

}  // namespace

int vertex_connectivity(const Graph& g) {
  const int n = g.num_nodes();
  if (n <= 1 || !is_connected(g)) return 0;
  int best = n - 1;
  for (int v = 0; v < n; ++v) best = std::min(best, g.degree(v));
  SplitNetwork network(g);
  // Some minimum separator misses one of the first best + 1 nodes, so pairs
  // with a source among them cover every separator.
  for (int s = 0; s <= best && s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (!g.has_edge(s, t)) best = std::min(best, network.local_connectivity(s, t, best));
    }
  }
  return best;
}

int diameter(const Graph& g) {
  int out = 0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    for (int d : bfs_distances(g, v)) out = std::max(out, d);
  }
  return out;
}

int max_clique_size(const Graph& g) { return CliqueSearch(g).run(); }

int greedy_clique_size(const Graph& g) {
  int best = g.num_nodes() > 0 ? 1 : 0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    std::vector<int> candidates(g.neighbors(v).begin(), g.neighbors(v).end());
    int size = 1;
    while (!candidates.empty()) {
      // Keep the candidate adjacent to the most other candidates.
      int pick = candidates.front();
      int pick_score = -1;
      for (int c : candidates) {
        int score = 0;
        for (int o : candidates) score += g.has_edge(c, o) ? 1 : 0;
        if (score > pick_score) {
          pick = c;
          pick_score = score;
        }
      }
      ++size;
      std::vector<int> next;
      for (int c : candidates) {
        if (c != pick && g.has_edge(c, pick)) next.push_back(c);
      }
      candidates = std::move(next);
    }
    best = std::max(best, size);
  }
  return best;
}

double average_clustering(const Graph& g) {
  if (g.num_nodes() == 0) return 0.0;
  const auto tri = triangles_per_node(g);
  std::vector<double> local(g.num_nodes(), 0.0);
  for (int v = 0; v < g.num_nodes(); ++v) {
    const double k = g.degree(v);
    if (k >= 2) local[v] = 2.0 * tri[v] / (k * (k - 1));
  }
  return mean_std(local).mean;
}

long triangle_count(const Graph& g) {
  const auto tri = triangles_per_node(g);
  return std::accumulate(tri.begin(), tri.end(), 0L) / 3;
}

GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  const double n = g.num_nodes();
  s.num_nodes = n;
  s.num_edges = static_cast<double>(g.num_edges());
  s.density = n >= 2 ? 2.0 * s.num_edges / (n * (n - 1)) : 0.0;
  s.vertex_connectivity = vertex_connectivity(g);
  s.algebraic_connectivity = fiedler_value(g);
  s.diameter = diameter(g);
  s.max_clique_exact = g.num_nodes() <= kExactCliqueMaxNodes;
  s.max_clique = s.max_clique_exact ? max_clique_size(g) : greedy_clique_size(g);
  s.centrality = s.density;
  s.clustering = average_clustering(g);
  s.triangles = static_cast<double>(triangle_count(g));
  s.connected = is_connected(g) ? 1.0 : 0.0;
  return s;
}

DatasetStats dataset_stats(std::span<const Graph> graphs, int threads) {
  std::vector<GraphStats> per(graphs.size());
  parallel_for(graphs.size(), threads, [&](std::size_t i) { per[i] = graph_stats(graphs[i]); });
  DatasetStats out;
  out.num_graphs = graphs.size();
  if (per.empty()) return out;
  auto mean_of = [&](double GraphStats::*field) {
    std::vector<double> values;
    for (const auto& s : per) values.push_back(s.*field);
    return mean_std(values).mean;
  };
  for (auto field : {&GraphStats::num_nodes, &GraphStats::num_edges, &GraphStats::density,
                     &GraphStats::vertex_connectivity, &GraphStats::algebraic_connectivity,
                     &GraphStats::diameter, &GraphStats::max_clique, &GraphStats::centrality,
                     &GraphStats::clustering, &GraphStats::triangles, &GraphStats::connected}) {
    out.mean.*field = mean_of(field);
  }
  for (const auto& s : per) out.exact_clique_graphs += s.max_clique_exact ? 1 : 0;
  out.mean.max_clique_exact = out.exact_clique_graphs == out.num_graphs;
  return out;
}

DatasetStats dataset_stats(const DatasetBundle& bundle, int threads) {
  const auto graphs = bundle.graphs();
  return dataset_stats(std::span<const Graph>(graphs), threads);
}

std::vector<std::string> stats_csv_header() {
  return {"num_nodes",  "num_edges",    "density",   "connectivity",
          "diameter",   "max_clique",   "centrality", "clustering",
          "triangles",  "algebraic_connectivity", "connected_fraction", "num_graphs",
          "max_clique_exact"};
}

std::vector<std::string> stats_csv_row(const DatasetStats& stats) {
  const GraphStats& m = stats.mean;
  return {format_value(m.num_nodes),
          format_value(m.num_edges),
          format_value(m.density),
          format_value(m.vertex_connectivity),
          format_value(m.diameter),
          format_value(m.max_clique),
          format_value(m.centrality),
          format_value(m.clustering),
          format_value(m.triangles),
          format_value(m.algebraic_connectivity),
          format_value(m.connected),
          std::to_string(stats.num_graphs),
          m.max_clique_exact ? "true" : "false"};
}

}  // namespace graphpse
