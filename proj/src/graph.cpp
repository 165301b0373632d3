#include "chebypr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chebypr {

namespace {

// Lower-bound lookup in a sorted neighbor row.
auto find_neighbor(std::vector<Graph::Neighbor>& row, NodeId id) {
  return std::lower_bound(row.begin(), row.end(), id,
                          [](const Graph::Neighbor& n, NodeId key) { return n.id < key; });
}

}  // namespace

std::vector<NodeId> GraphDelta::touched() const {
  std::vector<NodeId> ids;
  ids.reserve(changes.size() * 2);
  for (const auto& c : changes) {
    ids.push_back(c.u);
    ids.push_back(c.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

GraphDelta GraphDelta::negated() const {
  GraphDelta out;
  out.changes.reserve(changes.size());
  // Reverse order so stacked changes on one edge unwind correctly.
  for (auto it = changes.rbegin(); it != changes.rend(); ++it) {
    out.changes.push_back({it->u, it->v, -it->delta});
  }
  return out;
}

double Graph::edge_weight(NodeId u, NodeId v) const {
  const auto& row = adjacency_[u];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& n, NodeId key) { return n.id < key; });
  return (it != row.end() && it->id == v) ? it->weight : 0.0;
}

std::vector<double> Graph::recompute_degrees() const {
  std::vector<double> d(adjacency_.size(), 0.0);
  for (NodeId u = 0; u < num_nodes(); ++u) {
    double s = 0.0;
    for (const auto& n : adjacency_[u]) s += n.weight;
    d[u] = s;
  }
  return d;
}

Graph build_graph(std::span<const WeightedEdge> edges, NodeId num_nodes) {
  struct Entry {
    NodeId u, v;
    double w;
  };
  std::vector<Entry> canon;
  canon.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw std::invalid_argument("build_graph: node id " +
                                  std::to_string(std::max(e.u, e.v)) +
                                  " out of range [0," + std::to_string(num_nodes) + ")");
    }
    if (!(e.weight > 0.0)) {
      throw std::invalid_argument("build_graph: edge weight must be positive");
    }
    canon.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  // Stable so duplicate edges merge their weights in input order.
  std::stable_sort(canon.begin(), canon.end(), [](const Entry& a, const Entry& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  Graph g;
  g.adjacency_.resize(num_nodes);
  g.degrees_.assign(num_nodes, 0.0);
  for (std::size_t i = 0; i < canon.size();) {
    std::size_t j = i;
    double w = 0.0;
    while (j < canon.size() && canon[j].u == canon[i].u && canon[j].v == canon[i].v) {
      w += canon[j].w;
      ++j;
    }
    const NodeId u = canon[i].u, v = canon[i].v;
    g.adjacency_[u].push_back({v, w});
    if (v != u) g.adjacency_[v].push_back({u, w});
    ++g.num_edges_;
    i = j;
  }
  for (auto& row : g.adjacency_) {
    std::sort(row.begin(), row.end(),
              [](const Graph::Neighbor& a, const Graph::Neighbor& b) { return a.id < b.id; });
  }
  for (NodeId u = 0; u < num_nodes; ++u) {
    double s = 0.0;
    for (const auto& n : g.adjacency_[u]) s += n.weight;
    g.degrees_[u] = s;
  }
  return g;
}

Graph apply_delta(const Graph& g, const GraphDelta& delta) {
  Graph out = g;
  auto set_weight = [&out](NodeId u, NodeId v, double w) {
    auto& row = out.adjacency_[u];
    auto it = find_neighbor(row, v);
    const bool present = it != row.end() && it->id == v;
    if (w == 0.0) {
      if (present) row.erase(it);
    } else if (present) {
      it->weight = w;
    } else {
      row.insert(it, {v, w});
    }
  };

  for (const auto& c : delta.changes) {
    if (c.u >= out.num_nodes() || c.v >= out.num_nodes()) {
      throw std::invalid_argument("apply_delta: node id out of range");
    }
    const double w_old = out.edge_weight(c.u, c.v);
    const double w_new = w_old + c.delta;
    if (w_new < 0.0) {
      throw std::invalid_argument("apply_delta: change on edge (" + std::to_string(c.u) +
                                  "," + std::to_string(c.v) + ") would make weight " +
                                  std::to_string(w_new) + " negative");
    }
    const bool was_present = w_old != 0.0;
    const bool is_present = w_new != 0.0;
    set_weight(c.u, c.v, w_new);
    if (c.v != c.u) set_weight(c.v, c.u, w_new);
    if (was_present && !is_present) --out.num_edges_;
    if (!was_present && is_present) ++out.num_edges_;
  }

  for (NodeId u : delta.touched()) {
    double s = 0.0;
    for (const auto& n : out.adjacency_[u]) s += n.weight;
    out.degrees_[u] = s;
  }
  return out;
}

std::vector<NodeId> differing_rows(const Graph& a, const Graph& b) {
  if (a.num_nodes() != b.num_nodes()) {
    throw std::invalid_argument("differing_rows: graphs must have the same node count");
  }
  std::vector<NodeId> out;
  for (NodeId u = 0; u < a.num_nodes(); ++u) {
    if (!a.row_equals(b, u)) out.push_back(u);
  }
  return out;
}

ScoreVector transition_transpose_apply(const Graph& g, const ScoreVector& x) {
  const NodeId n = g.num_nodes();
  if (x.size() != n) {
    throw std::invalid_argument("transition_transpose_apply: dimension mismatch");
  }
  // Scale once by inverse degree, then gather over rows; isolated nodes
  // contribute nothing (inverse degree zero).
  ScoreVector scaled(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const double d = g.degree(v);
    if (d > 0.0) scaled[v] = x[v] / d;
  }
  ScoreVector out(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(u)) s += nb.weight * scaled[nb.id];
    out[u] = s;
  }
  return out;
}

double l2_norm(const ScoreVector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double l2_distance(const ScoreVector& a, const ScoreVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l2_distance: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double vec_sum(const ScoreVector& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double relative_error(const ScoreVector& a, const ScoreVector& b) {
  const double nb = l2_norm(b);
  if (nb == 0.0) {
    throw std::invalid_argument("relative_error: reference vector is all-zero");
  }
  return l2_distance(a, b) / nb;
}

std::vector<NodeId> support_of(const ScoreVector& x, double threshold) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > threshold) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

}  // namespace chebypr
