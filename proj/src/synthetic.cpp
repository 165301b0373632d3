#include "chebypr/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chebypr {

namespace {

std::vector<WeightedEdge> preferential_attachment_edges(NodeId n, int attach,
                                                        std::uint64_t seed) {
  if (attach < 1) throw std::invalid_argument("ba model: param must be >= 1");
  const NodeId core = static_cast<NodeId>(attach) + 1;
  if (n < core) throw std::invalid_argument("ba model: need at least param+1 nodes");

  std::mt19937_64 rng(seed);
  std::vector<WeightedEdge> edges;
  std::vector<NodeId> endpoints;  // one entry per half-edge, sampled for attachment
  for (NodeId u = 0; u < core; ++u) {
    for (NodeId v = u + 1; v < core; ++v) {
      edges.push_back({u, v, 1.0});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  for (NodeId u = core; u < n; ++u) {
    std::set<NodeId> targets;
    while (targets.size() < static_cast<std::size_t>(attach)) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      targets.insert(endpoints[pick(rng)]);
    }
    for (NodeId v : targets) {
      edges.push_back({u, v, 1.0});
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return edges;
}

std::vector<WeightedEdge> geometric_edges(NodeId n, double radius, std::uint64_t seed) {
  if (!(radius > 0.0)) throw std::invalid_argument("geometric model: param must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<double> xs(n), ys(n);
  for (NodeId i = 0; i < n; ++i) {
    xs[i] = coord(rng);
    ys[i] = coord(rng);
  }
  const double r2 = radius * radius;
  std::vector<WeightedEdge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double dx = xs[i] - xs[j];
      const double dy = ys[i] - ys[j];
      if (dx * dx + dy * dy <= r2) edges.push_back({i, j, 1.0});
    }
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return edges;
}

}  // namespace

SyntheticRecipe parse_synthetic_recipe(const std::string& text) {
  std::istringstream ss(text);
  std::string model, n_str, param_str;
  if (!std::getline(ss, model, ',') || !std::getline(ss, n_str, ',') ||
      !std::getline(ss, param_str)) {
    throw std::invalid_argument("synthetic recipe must be 'model,N,param', got '" + text + "'");
  }
  SyntheticRecipe r;
  r.model = model;
  try {
    r.num_nodes = static_cast<NodeId>(std::stoul(n_str));
    r.param = std::stod(param_str);
  } catch (const std::exception&) {
    throw std::invalid_argument("synthetic recipe has non-numeric fields: '" + text + "'");
  }
  if (r.model != "ba" && r.model != "geometric") {
    throw std::invalid_argument("unknown synthetic model '" + r.model +
                                "' (expected 'ba' or 'geometric')");
  }
  return r;
}

std::vector<WeightedEdge> synthetic_edge_sequence(const SyntheticRecipe& recipe,
                                                  std::uint64_t seed) {
  if (recipe.num_nodes == 0) throw std::invalid_argument("synthetic graph needs nodes");
  if (recipe.model == "ba") {
    return preferential_attachment_edges(recipe.num_nodes, static_cast<int>(recipe.param),
                                         seed);
  }
  return geometric_edges(recipe.num_nodes, recipe.param, seed);
}

Graph make_synthetic_graph(const SyntheticRecipe& recipe, std::uint64_t seed) {
  return build_graph(synthetic_edge_sequence(recipe, seed), recipe.num_nodes);
}

SnapshotStream make_synthetic_stream(const SyntheticRecipe& recipe, std::uint64_t seed,
                                     std::size_t num_snapshots,
                                     std::size_t edges_per_snapshot) {
  const std::vector<WeightedEdge> seq = synthetic_edge_sequence(recipe, seed);
  const std::size_t tail = num_snapshots * edges_per_snapshot;
  if (seq.size() <= tail) {
    throw std::invalid_argument("synthetic stream: recipe produces too few edges for " +
                                std::to_string(num_snapshots) + " snapshots of " +
                                std::to_string(edges_per_snapshot));
  }
  const std::size_t initial = seq.size() - tail;
  std::vector<TimedEdge> events;
  events.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double ts =
        i < initial ? 0.0 : static_cast<double>(1 + (i - initial) / edges_per_snapshot);
    events.push_back({seq[i].u, seq[i].v, seq[i].weight, ts});
  }
  return make_stream(std::move(events), recipe.num_nodes);
}

GraphDelta random_new_edges(const Graph& g, std::size_t count, std::uint64_t seed) {
  const NodeId n = g.num_nodes();
  if (n < 2) throw std::invalid_argument("random_new_edges: graph too small");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> pick(0, n - 1);
  std::set<std::pair<NodeId, NodeId>> chosen;
  GraphDelta d;
  std::size_t attempts = 0;
  const std::size_t max_attempts = 1000 * (count + 1);
  while (d.changes.size() < count) {
    if (++attempts > max_attempts) {
      throw std::invalid_argument("random_new_edges: could not place " + std::to_string(count) +
                                  " absent edges");
    }
    NodeId u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (g.has_edge(u, v) || chosen.count({u, v}) != 0) continue;
    chosen.insert({u, v});
    d.changes.push_back({u, v, 1.0});
  }
  return d;
}

}  // namespace chebypr
