#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "graphpse/graph.hpp"
#include "graphpse/pse.hpp"

namespace graphpse {

/// Stable 1-WL coloring. Class ids are contiguous from 0 and canonical: they
/// are the rank of the refinement signature, so equal inputs up to relabeling
/// give equal colors.
struct WlPartition {
  std::vector<int> colors;
  int iterations = 0;
  /// history[t] = sorted color-class sizes after round t (t = 0 is the input).
  std::vector<std::vector<int>> history;

  int num_classes() const { return history.empty() ? 0 : static_cast<int>(history.back().size()); }
};

/// Node labels if present, otherwise all zeros.
std::vector<int> initial_colors(const Graph& g);

WlPartition color_refinement(const Graph& g);
WlPartition color_refinement(const Graph& g, std::span<const int> init);

/// Every intermediate coloring of one refinement run, rounds 0..stable.
std::vector<std::vector<int>> refinement_rounds(const Graph& g, std::span<const int> init);

struct Distinction {
  bool distinguishable = false;
  /// First round at which the color histograms of the two graphs differ.
  std::optional<int> witness_iteration;
};

/// Runs refinement on the disjoint union, which shares one RELABEL table
/// between the two graphs. Initial colors come from a shared palette.
Distinction distinguishable(const Graph& g, const Graph& h, std::span<const int> init_g,
                            std::span<const int> init_h);
Distinction distinguishable(const Graph& g, const Graph& h);

/// Groups a batch into classes of graphs that refinement cannot tell apart,
/// with one run over the union of the whole batch. Class ids follow first
/// appearance. An empty `inits` means initial_colors() per graph.
std::vector<int> indistinguishability_classes(std::span<const Graph> graphs,
                                              std::span<const std::vector<int>> inits = {});

inline constexpr int kMaxOrbitNodes = 16;

struct OrbitPartition {
  /// Orbit id per node, numbered by smallest member.
  std::vector<int> orbits;
  std::uint64_t automorphism_count = 0;

  int num_orbits() const;
};

/// Exact orbits of the label-preserving automorphism group, by
/// individualization-refinement search. Throws GraphTooLarge above 16 nodes.
OrbitPartition orbit_partition(const Graph& g);

/// Label-preserving automorphism mapping each `from[i]` to `to[i]`, if any.
std::optional<std::vector<int>> find_automorphism(const Graph& g, std::span<const int> from,
                                                  std::span<const int> to);

inline constexpr int kDefaultQuantization = 6;

/// New initial colors: one fresh id per distinct (label, encoding row rounded
/// to `decimals` places). Ids are shared across the batch.
std::vector<std::vector<int>> augment_colors(std::span<const Graph> graphs,
                                             std::span<const PseVector> pses, int decimals);
std::vector<int> augment_colors(const Graph& g, const PseVector& pse, int decimals);

}  // namespace graphpse
