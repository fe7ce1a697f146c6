#include "graphpse/wl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "graphpse/errors.hpp"

namespace graphpse {
namespace {

std::vector<int> compress(std::span<const int> colors) {
  std::vector<int> palette(colors.begin(), colors.end());
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  std::vector<int> out(colors.size());
  for (std::size_t v = 0; v < colors.size(); ++v) {
    out[v] = static_cast<int>(std::lower_bound(palette.begin(), palette.end(), colors[v]) -
                              palette.begin());
  }
  return out;
}

int count_distinct(std::span<const int> colors) {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
}

// One RELABEL round: exact dictionary from (own color, sorted neighbor colors)
// to the rank of that signature.
std::vector<int> refine_once(const Graph& g, const std::vector<int>& colors) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> signatures(n);
  for (int v = 0; v < n; ++v) {
    auto& sig = signatures[v];
    sig.reserve(g.degree(v) + 1);
    sig.push_back(colors[v]);
    for (int u : g.neighbors(v)) sig.push_back(colors[u]);
    std::sort(sig.begin() + 1, sig.end());
  }
  std::map<std::vector<int>, int> table;
  for (const auto& sig : signatures) table.emplace(sig, 0);
  int next = 0;
  for (auto& entry : table) entry.second = next++;
  std::vector<int> out(n);
  for (int v = 0; v < n; ++v) out[v] = table.at(signatures[v]);
  return out;
}

std::vector<int> class_sizes(std::span<const int> colors) {
  std::vector<int> sizes(count_distinct(colors), 0);
  for (int c : colors) ++sizes[c];
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// (color, count) pairs for colors[begin, end).
std::vector<std::pair<int, int>> histogram(std::span<const int> colors) {
  std::map<int, int> counts;
  for (int c : colors) ++counts[c];
  return {counts.begin(), counts.end()};
}

}  // namespace

std::vector<int> initial_colors(const Graph& g) {
  if (g.node_labels()) return *g.node_labels();
  return std::vector<int>(g.num_nodes(), 0);
}

std::vector<std::vector<int>> refinement_rounds(const Graph& g, std::span<const int> init) {
  if (static_cast<int>(init.size()) != g.num_nodes()) {
    throw Error(ErrorCode::kLengthMismatch, "initial coloring has " + std::to_string(init.size()) +
                                                " entries for " + std::to_string(g.num_nodes()) +
                                                " nodes");
  }
  std::vector<std::vector<int>> rounds{compress(init)};
  if (g.num_nodes() == 0) return rounds;
  while (true) {
    std::vector<int> next = refine_once(g, rounds.back());
    const bool stable = count_distinct(next) == count_distinct(rounds.back());
    rounds.push_back(std::move(next));
    if (stable) break;
  }
  return rounds;
}

WlPartition color_refinement(const Graph& g, std::span<const int> init) {
  const auto rounds = refinement_rounds(g, init);
  WlPartition out;
  out.colors = rounds.back();
  out.iterations = static_cast<int>(rounds.size()) - 1;
  for (const auto& r : rounds) out.history.push_back(class_sizes(r));
  return out;
}

WlPartition color_refinement(const Graph& g) { return color_refinement(g, initial_colors(g)); }

Distinction distinguishable(const Graph& g, const Graph& h, std::span<const int> init_g,
                            std::span<const int> init_h) {
  if (static_cast<int>(init_g.size()) != g.num_nodes() ||
      static_cast<int>(init_h.size()) != h.num_nodes()) {
    throw Error(ErrorCode::kLengthMismatch, "initial coloring length differs from node count");
  }
  const Graph both = disjoint_union(g, h);
  std::vector<int> init(init_g.begin(), init_g.end());
  init.insert(init.end(), init_h.begin(), init_h.end());
  const auto rounds = refinement_rounds(both, init);
  const std::size_t split = static_cast<std::size_t>(g.num_nodes());
  for (std::size_t t = 0; t < rounds.size(); ++t) {
    const std::span<const int> colors(rounds[t]);
    if (histogram(colors.first(split)) != histogram(colors.subspan(split))) {
      return {true, static_cast<int>(t)};
    }
  }
  return {false, std::nullopt};
}

Distinction distinguishable(const Graph& g, const Graph& h) {
  return distinguishable(g, h, initial_colors(g), initial_colors(h));
}

std::vector<int> indistinguishability_classes(std::span<const Graph> graphs,
                                              std::span<const std::vector<int>> inits) {
  if (!inits.empty() && inits.size() != graphs.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one initial coloring per graph required");
  }
  std::vector<Edge> edges;
  std::vector<int> init;
  std::vector<int> offsets{0};
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    const int shift = offsets.back();
    for (const auto& [u, v] : g.edges()) edges.emplace_back(u + shift, v + shift);
    const auto colors = inits.empty() ? initial_colors(g) : inits[i];
    if (static_cast<int>(colors.size()) != g.num_nodes()) {
      throw Error(ErrorCode::kLengthMismatch, "initial coloring length differs from node count");
    }
    init.insert(init.end(), colors.begin(), colors.end());
    offsets.push_back(shift + g.num_nodes());
  }
  const Graph all = Graph::build(offsets.back(), edges);
  // Refinement never merges classes, so differing histograms at any round
  // persist to the stable round; comparing the final histograms suffices.
  const auto stable = refinement_rounds(all, init).back();
  std::map<std::vector<std::pair<int, int>>, int> class_of;
  std::vector<int> out(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const std::span<const int> colors(stable.data() + offsets[i], stable.data() + offsets[i + 1]);
    auto [it, inserted] = class_of.emplace(histogram(colors), static_cast<int>(class_of.size()));
    out[i] = it->second;
  }
  return out;
}

std::vector<std::vector<int>> augment_colors(std::span<const Graph> graphs,
                                             std::span<const PseVector> pses, int decimals) {
  if (graphs.size() != pses.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one encoding per graph required");
  }
  if (decimals < 0 || decimals > 15) throw Error(ErrorCode::kInvalidArgument, "quantization out of range");
  const double scale = std::pow(10.0, decimals);
  std::vector<std::vector<std::vector<long long>>> keys(graphs.size());
  std::vector<std::vector<long long>> palette;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    const PseVector& p = pses[i];
    if (p.level != PseLevel::kNode) {
      throw Error(ErrorCode::kNotNodeLevel, "color augmentation needs a node-level encoding");
    }
    if (p.values.rows() != g.num_nodes()) {
      throw Error(ErrorCode::kLengthMismatch, "encoding rows differ from node count");
    }
    const auto labels = initial_colors(g);
    keys[i].resize(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) {
      auto& key = keys[i][v];
      key.push_back(labels[v]);
      for (Eigen::Index c = 0; c < p.values.cols(); ++c) {
        key.push_back(std::llround(p.values(v, c) * scale));
      }
      palette.push_back(key);
    }
  }
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  std::vector<std::vector<int>> out(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (const auto& key : keys[i]) {
      out[i].push_back(static_cast<int>(std::lower_bound(palette.begin(), palette.end(), key) -
                                        palette.begin()));
    }
  }
  return out;
}

std::vector<int> augment_colors(const Graph& g, const PseVector& pse, int decimals) {
  return augment_colors(std::span<const Graph>(&g, 1), std::span<const PseVector>(&pse, 1), decimals)
      .front();
}

}  // namespace graphpse
