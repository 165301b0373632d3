#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chebypr/graph.hpp"

namespace chebypr {

/// One timestamped undirected edge arrival, ids already densified and
/// canonicalized (u <= v).
struct TimedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
  double timestamp = 0.0;
};

/// A time-ordered edge stream segmented into snapshots. By default one
/// snapshot per distinct timestamp; rebatch() regroups by fixed event
/// count instead. The node count is fixed to the distinct ids of the whole
/// stream, so early snapshots contain future nodes as isolated nodes.
///
/// A reversed stream walks the same events backwards: its snapshot k is the
/// original snapshot (last - k), and deltas derived from it carry negative
/// weight changes (edges disappear, nodes leave). Reversing twice restores
/// the original stream.
class SnapshotStream {
 public:
  SnapshotStream() = default;

  NodeId num_nodes() const { return num_nodes_; }
  std::size_t num_snapshots() const { return group_end_.size(); }
  bool reversed() const { return reversed_; }

  /// Events in ascending timestamp order regardless of direction.
  const std::vector<TimedEdge>& events() const { return events_; }

  /// Snapshot boundary timestamps in effective (direction-aware) order.
  std::vector<double> boundaries() const;

  /// External id of a dense node id (identity for generated streams).
  long long external_id(NodeId dense) const { return external_ids_[dense]; }

 private:
  std::vector<TimedEdge> events_;
  std::vector<std::size_t> group_end_;  // exclusive end of each forward group
  std::vector<double> group_ts_;        // timestamp label of each forward group
  std::vector<long long> external_ids_;
  NodeId num_nodes_ = 0;
  bool reversed_ = false;

  std::size_t prefix(std::size_t k) const { return k == 0 ? 0 : group_end_[k - 1]; }

  friend SnapshotStream make_stream(std::vector<TimedEdge> events, NodeId num_nodes,
                                    std::vector<long long> external_ids);
  friend SnapshotStream rebatch(const SnapshotStream& s, std::size_t events_per_snapshot);
  friend SnapshotStream reverse_time(const SnapshotStream& s);
  friend Graph snapshot_graph(const SnapshotStream& s, std::size_t upto_index);
  friend GraphDelta delta_between(const SnapshotStream& s, std::size_t i, std::size_t j);
};

/// Normalizes raw events (dense ids) into a stream: stable-sorts by
/// timestamp, canonicalizes orientations, merges duplicates within one
/// timestamp, and segments by distinct timestamp.
SnapshotStream make_stream(std::vector<TimedEdge> events, NodeId num_nodes,
                           std::vector<long long> external_ids = {});

/// Parses whitespace-separated lines "src dst [weight] timestamp"
/// (weight defaults to 1; '%'/'#' comment lines and blank lines ignored).
/// External ids are remapped to dense ids in order of first appearance.
/// Throws std::invalid_argument naming the line number on malformed input.
SnapshotStream parse_edge_stream(std::istream& in);

/// Reads a file (gzip-compressed or plain) and parses it.
SnapshotStream load_edge_stream(const std::string& path);

/// Regroups snapshots into fixed-size event batches (last batch may be
/// short); boundary labels become each batch's last timestamp.
SnapshotStream rebatch(const SnapshotStream& s, std::size_t events_per_snapshot);

/// Aggregated graph of the first `upto_index` snapshots (0 = none). On a
/// reversed stream index 0 is the full graph and each further snapshot
/// removes the originally-latest event group.
Graph snapshot_graph(const SnapshotStream& s, std::size_t upto_index);

/// Weight changes turning snapshot i into snapshot j (i < j), merged per
/// edge; negative on reversed streams.
GraphDelta delta_between(const SnapshotStream& s, std::size_t i, std::size_t j);

/// Direction-flipped view of the stream (involution).
SnapshotStream reverse_time(const SnapshotStream& s);

}  // namespace chebypr
