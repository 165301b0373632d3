#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace chebypr {

using NodeId = std::uint32_t;

/// Dense per-node score vector indexed by node id.
using ScoreVector = std::vector<double>;

struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

/// Signed edge-weight change; negative values shrink or delete an edge.
struct EdgeChange {
  NodeId u = 0;
  NodeId v = 0;
  double delta = 0.0;
};

/// Edge-weight changes turning one graph snapshot into the next.
struct GraphDelta {
  std::vector<EdgeChange> changes;

  /// Sorted unique endpoints of all changes.
  std::vector<NodeId> touched() const;

  /// Delta that undoes this one.
  GraphDelta negated() const;
};

/// Immutable sparse undirected weighted graph with cached weighted degrees.
///
/// The node count is fixed across a snapshot sequence: nodes joining or
/// leaving are isolated nodes gaining or losing edges. Isolated nodes have
/// degree zero, and every place that divides by a degree treats the inverse
/// degree of an isolated node as zero. Zero-weight edges are never stored;
/// deleting an edge removes its adjacency entries. Self-loops are allowed
/// and contribute their weight to the degree once.
class Graph {
 public:
  struct Neighbor {
    NodeId id;
    double weight;
    bool operator==(const Neighbor&) const = default;
  };

  Graph() = default;

  NodeId num_nodes() const { return static_cast<NodeId>(adjacency_.size()); }

  /// Number of stored undirected edges; a self-loop counts once.
  std::size_t num_edges() const { return num_edges_; }

  std::span<const Neighbor> neighbors(NodeId u) const {
    return adjacency_[u];
  }

  /// Weighted degree d_u = sum of incident weights (cached).
  double degree(NodeId u) const { return degrees_[u]; }

  const std::vector<double>& degrees() const { return degrees_; }

  /// Number of incident edges (not weight); a self-loop counts once.
  std::size_t degree_count(NodeId u) const { return adjacency_[u].size(); }

  /// Weight of edge (u,v), 0 if absent.
  double edge_weight(NodeId u, NodeId v) const;

  bool has_edge(NodeId u, NodeId v) const { return edge_weight(u, v) != 0.0; }

  /// True when node u has identical incident edges in both graphs.
  bool row_equals(const Graph& other, NodeId u) const {
    return adjacency_[u] == other.adjacency_[u];
  }

  /// Edge-set and weight equality. The degree cache is derived data and
  /// intentionally not compared (summation order may differ by history).
  bool operator==(const Graph& other) const {
    return adjacency_ == other.adjacency_;
  }

  /// Full degree recomputation from adjacency, for cross-checking the cache.
  std::vector<double> recompute_degrees() const;

 private:
  std::vector<std::vector<Neighbor>> adjacency_;  // each row sorted by id
  std::vector<double> degrees_;
  std::size_t num_edges_ = 0;

  friend Graph build_graph(std::span<const WeightedEdge> edges, NodeId num_nodes);
  friend Graph apply_delta(const Graph& g, const GraphDelta& delta);
};

/// Builds a symmetric graph from an edge list. Duplicate undirected edges
/// (in either orientation) are merged by summing weights.
/// Throws std::invalid_argument on out-of-range ids or non-positive weights.
Graph build_graph(std::span<const WeightedEdge> edges, NodeId num_nodes);

/// Applies signed weight changes, returning a new graph; `g` is unmodified.
/// Changes touching one edge are applied in list order. Degrees are
/// recomputed only for touched nodes.
/// Throws std::invalid_argument if a change would drive a weight below zero.
Graph apply_delta(const Graph& g, const GraphDelta& delta);

/// Nodes whose incident-edge rows differ between the two graphs. For graphs
/// related by a delta this is exactly the delta's touched set.
std::vector<NodeId> differing_rows(const Graph& a, const Graph& b);

/// y = P^T x with P = D^{-1} W, i.e. y_u = sum_{v~u} x_v W_uv / d_v,
/// where 1/d_v = 0 for isolated v.
ScoreVector transition_transpose_apply(const Graph& g, const ScoreVector& x);

/// ||a - b||_2 / ||b||_2. Throws std::invalid_argument if b is all-zero
/// or the dimensions differ.
double relative_error(const ScoreVector& a, const ScoreVector& b);

double l2_norm(const ScoreVector& x);
double l2_distance(const ScoreVector& a, const ScoreVector& b);
double vec_sum(const ScoreVector& x);

/// Ids whose entries exceed `threshold` in absolute value (strict).
std::vector<NodeId> support_of(const ScoreVector& x, double threshold = 0.0);

}  // namespace chebypr
