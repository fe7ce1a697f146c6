#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "graphpse/errors.hpp"
#include "graphpse/wl.hpp"

namespace graphpse {
namespace {

// Searches for label-preserving automorphisms of g that extend a partial map.
// Each search node refines the doubled graph g + g with the mapped pairs
// individualized (pair i gets the same fresh color on both sides), so the
// domain and image sides share one RELABEL table.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Graph& g)
      : g_(g), n_(g.num_nodes()), doubled_(disjoint_union(g, g)), base_(initial_colors(g)) {
    fresh_ = base_.empty() ? 0 : *std::max_element(base_.begin(), base_.end()) + 1;
  }

  std::optional<std::vector<int>> extend(std::vector<std::pair<int, int>> pairs) {
    const auto colors = refined(pairs);
    if (!colors) return std::nullopt;
    const std::span<const int> domain(colors->data(), n_);
    const std::span<const int> image(colors->data() + n_, n_);

    // Target cell: smallest non-singleton class on the domain side.
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n_; ++v) cells[domain[v]].push_back(v);
    const std::vector<int>* target = nullptr;
    for (const auto& [color, members] : cells) {
      if (members.size() > 1 && (!target || members.size() < target->size())) target = &members;
    }
    if (!target) {
      std::vector<int> sigma(n_);
      std::map<int, int> image_of_color;
      for (int w = 0; w < n_; ++w) image_of_color[image[w]] = w;
      for (int v = 0; v < n_; ++v) sigma[v] = image_of_color.at(domain[v]);
      return is_automorphism(sigma) ? std::optional(sigma) : std::nullopt;
    }
    const int x = target->front();
    for (int y = 0; y < n_; ++y) {
      if (image[y] != domain[x]) continue;
      auto next = pairs;
      next.emplace_back(x, y);
      if (auto found = extend(std::move(next))) return found;
    }
    return std::nullopt;
  }

  // Stable coloring of g with `fixed` individualized; domain side only.
  std::vector<int> refined_with_fixed(std::span<const int> fixed) {
    std::vector<std::pair<int, int>> pairs;
    for (int f : fixed) pairs.emplace_back(f, f);
    const auto colors = refined(pairs);
    return {colors->begin(), colors->begin() + n_};
  }

 private:
  std::optional<std::vector<int>> refined(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> init(base_);
    init.insert(init.end(), base_.begin(), base_.end());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      init[pairs[i].first] = fresh_ + static_cast<int>(i);
      init[n_ + pairs[i].second] = fresh_ + static_cast<int>(i);
    }
    auto colors = refinement_rounds(doubled_, init).back();
    std::vector<int> left(colors.begin(), colors.begin() + n_);
    std::vector<int> right(colors.begin() + n_, colors.end());
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    if (left != right) return std::nullopt;
    return colors;
  }

  bool is_automorphism(const std::vector<int>& sigma) const {
    for (int v = 0; v < n_; ++v) {
      if (base_[v] != base_[sigma[v]]) return false;
    }
    for (const auto& [u, v] : g_.edges()) {
      if (!g_.has_edge(sigma[u], sigma[v])) return false;
    }
    return true;
  }

  const Graph& g_;
  int n_;
  Graph doubled_;
  std::vector<int> base_;
  int fresh_ = 0;
};

struct DisjointSets {
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

// |Aut_F| = |orbit of v under Aut_F| * |Aut_{F+v}|, recursing until the
// individualized coloring is discrete.
std::uint64_t stabilizer_order(AutomorphismSearch& search, std::vector<int>& fixed) {
  const auto colors = search.refined_with_fixed(fixed);
  std::map<int, std::vector<int>> cells;
  for (int v = 0; v < static_cast<int>(colors.size()); ++v) cells[colors[v]].push_back(v);
  const std::vector<int>* target = nullptr;
  for (const auto& [c, members] : cells) {
    if (members.size() > 1) {
      target = &members;
      break;
    }
  }
  if (!target) return 1;

  const int v = target->front();
  std::uint64_t orbit_size = 1;
  for (std::size_t k = 1; k < target->size(); ++k) {
    std::vector<std::pair<int, int>> pairs;
    for (int f : fixed) pairs.emplace_back(f, f);
    pairs.emplace_back(v, (*target)[k]);
    if (search.extend(std::move(pairs))) ++orbit_size;
  }
  fixed.push_back(v);
  const std::uint64_t rest = stabilizer_order(search, fixed);
  fixed.pop_back();
  return orbit_size * rest;
}

}  // namespace

int OrbitPartition::num_orbits() const {
  return orbits.empty() ? 0 : *std::max_element(orbits.begin(), orbits.end()) + 1;
}

std::optional<std::vector<int>> find_automorphism(const Graph& g, std::span<const int> from,
                                                  std::span<const int> to) {
  if (from.size() != to.size()) throw Error(ErrorCode::kLengthMismatch, "unequal constraint lists");
  for (int v : from) {
    if (v < 0 || v >= g.num_nodes()) throw Error(ErrorCode::kIndexOutOfRange, "constraint node");
  }
  for (int v : to) {
    if (v < 0 || v >= g.num_nodes()) throw Error(ErrorCode::kIndexOutOfRange, "constraint node");
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < from.size(); ++i) pairs.emplace_back(from[i], to[i]);
  AutomorphismSearch search(g);
  return search.extend(std::move(pairs));
}

OrbitPartition orbit_partition(const Graph& g) {
  const int n = g.num_nodes();
  if (n > kMaxOrbitNodes) {
    throw Error(ErrorCode::kGraphTooLarge, std::to_string(n) + " nodes exceeds the exhaustive limit of " +
                                               std::to_string(kMaxOrbitNodes));
  }
  AutomorphismSearch search(g);
  const auto stable = color_refinement(g).colors;
  DisjointSets sets(n);
  for (int v = 0; v < n; ++v) {
    for (int w = v + 1; w < n; ++w) {
      if (stable[v] != stable[w] || sets.find(v) == sets.find(w)) continue;
      if (auto sigma = search.extend({{v, w}})) {
        for (int x = 0; x < n; ++x) sets.unite(x, (*sigma)[x]);
      }
    }
  }
  OrbitPartition out;
  out.orbits.assign(n, -1);
  std::map<int, int> id_of_root;
  for (int v = 0; v < n; ++v) {
    auto [it, inserted] = id_of_root.emplace(sets.find(v), static_cast<int>(id_of_root.size()));
    out.orbits[v] = it->second;
  }
  std::vector<int> fixed;
  out.automorphism_count = n == 0 ? 1 : stabilizer_order(search, fixed);
  return out;
}

}  // namespace graphpse
