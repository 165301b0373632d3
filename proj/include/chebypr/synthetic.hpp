#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chebypr/graph.hpp"
#include "chebypr/temporal.hpp"

namespace chebypr {

/// Seeded synthetic-graph recipe. Models:
///   "ba"        preferential attachment; param = edges per arriving node
///   "geometric" random geometric graph on the unit square; param = radius
struct SyntheticRecipe {
  std::string model = "ba";
  NodeId num_nodes = 0;
  double param = 3.0;
};

/// Parses "model,N,param", e.g. "ba,2000,3" or "geometric,500,0.08".
SyntheticRecipe parse_synthetic_recipe(const std::string& text);

/// Unit-weight edges in arrival order (attachment order for "ba", shuffled
/// for "geometric"). Deterministic given the seed.
std::vector<WeightedEdge> synthetic_edge_sequence(const SyntheticRecipe& recipe,
                                                  std::uint64_t seed);

Graph make_synthetic_graph(const SyntheticRecipe& recipe, std::uint64_t seed);

/// Temporal stream over the recipe's edge sequence: everything except the
/// last `num_snapshots * edges_per_snapshot` edges lands at timestamp 0 as
/// the initial graph; the rest arrive in per-snapshot batches at timestamps
/// 1, 2, ...
SnapshotStream make_synthetic_stream(const SyntheticRecipe& recipe, std::uint64_t seed,
                                     std::size_t num_snapshots,
                                     std::size_t edges_per_snapshot);

/// `count` random unit-weight edges absent from `g` (and from each other),
/// as a positive delta. Deterministic given the seed.
GraphDelta random_new_edges(const Graph& g, std::size_t count, std::uint64_t seed);

}  // namespace chebypr
