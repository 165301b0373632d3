#include "chebypr/temporal.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace chebypr {

namespace {

bool is_comment_or_blank(const std::string& line) {
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == '\r') continue;
    return ch == '%' || ch == '#';
  }
  return true;  // blank
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

long long parse_id(const std::string& tok, std::size_t line_no) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": invalid node id '" +
                                tok + "'");
  }
  return value;
}

double parse_real(const std::string& tok, std::size_t line_no, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": invalid " + what +
                                " '" + tok + "'");
  }
  return value;
}

}  // namespace

std::vector<double> SnapshotStream::boundaries() const {
  std::vector<double> out = group_ts_;
  if (reversed_) std::reverse(out.begin(), out.end());
  return out;
}

SnapshotStream make_stream(std::vector<TimedEdge> events, NodeId num_nodes,
                           std::vector<long long> external_ids) {
  for (auto& e : events) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw std::invalid_argument("make_stream: node id out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const TimedEdge& a, const TimedEdge& b) { return a.timestamp < b.timestamp; });

  SnapshotStream s;
  s.num_nodes_ = num_nodes;
  if (external_ids.empty()) {
    s.external_ids_.resize(num_nodes);
    for (NodeId i = 0; i < num_nodes; ++i) s.external_ids_[i] = i;
  } else {
    s.external_ids_ = std::move(external_ids);
  }

  // Merge duplicate edges within each timestamp group, keeping time order
  // across groups.
  std::size_t i = 0;
  while (i < events.size()) {
    std::size_t j = i;
    while (j < events.size() && events[j].timestamp == events[i].timestamp) ++j;
    std::map<std::pair<NodeId, NodeId>, double> merged;
    for (std::size_t k = i; k < j; ++k) {
      merged[{events[k].u, events[k].v}] += events[k].weight;
    }
    for (const auto& [key, w] : merged) {
      s.events_.push_back({key.first, key.second, w, events[i].timestamp});
    }
    s.group_end_.push_back(s.events_.size());
    s.group_ts_.push_back(events[i].timestamp);
    i = j;
  }
  return s;
}

SnapshotStream parse_edge_stream(std::istream& in) {
  std::vector<TimedEdge> events;
  std::vector<long long> external_ids;
  std::unordered_map<long long, NodeId> id_map;
  auto dense_id = [&](long long ext) {
    auto [it, inserted] = id_map.try_emplace(ext, static_cast<NodeId>(external_ids.size()));
    if (inserted) external_ids.push_back(ext);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() < 3) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": missing timestamp (expected 'src dst [weight] timestamp')");
    }
    if (fields.size() > 4) {
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": too many fields (expected 'src dst [weight] timestamp')");
    }
    TimedEdge e;
    e.u = dense_id(parse_id(fields[0], line_no));
    e.v = dense_id(parse_id(fields[1], line_no));
    if (fields.size() == 4) {
      e.weight = parse_real(fields[2], line_no, "weight");
      e.timestamp = parse_real(fields[3], line_no, "timestamp");
    } else {
      e.weight = 1.0;
      e.timestamp = parse_real(fields[2], line_no, "timestamp");
    }
    events.push_back(e);
  }
  const NodeId num_nodes = static_cast<NodeId>(external_ids.size());
  return make_stream(std::move(events), num_nodes, std::move(external_ids));
}

SnapshotStream load_edge_stream(const std::string& path) {
  // gzopen reads plain files transparently as well.
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) {
    throw std::invalid_argument("cannot open input file: " + path);
  }
  std::string content;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) content.append(buf, static_cast<std::size_t>(n));
  if (n < 0) {
    int errnum = 0;
    const char* msg = gzerror(f, &errnum);
    std::string err = msg != nullptr ? msg : "read error";
    gzclose(f);
    throw std::invalid_argument("failed reading " + path + ": " + err);
  }
  gzclose(f);
  std::istringstream ss(content);
  return parse_edge_stream(ss);
}

SnapshotStream rebatch(const SnapshotStream& s, std::size_t events_per_snapshot) {
  if (events_per_snapshot == 0) {
    throw std::invalid_argument("rebatch: batch size must be positive");
  }
  SnapshotStream out;
  out.events_ = s.events_;
  out.external_ids_ = s.external_ids_;
  out.num_nodes_ = s.num_nodes_;
  out.reversed_ = s.reversed_;
  for (std::size_t end = std::min(events_per_snapshot, out.events_.size()); true;
       end = std::min(end + events_per_snapshot, out.events_.size())) {
    if (out.events_.empty()) break;
    out.group_end_.push_back(end);
    out.group_ts_.push_back(out.events_[end - 1].timestamp);
    if (end == out.events_.size()) break;
  }
  return out;
}

Graph snapshot_graph(const SnapshotStream& s, std::size_t upto_index) {
  const std::size_t b = s.num_snapshots();
  if (upto_index > b) {
    throw std::invalid_argument("snapshot_graph: index " + std::to_string(upto_index) +
                                " out of range (have " + std::to_string(b) + " snapshots)");
  }
  const std::size_t end = s.reversed_ ? s.prefix(b - upto_index) : s.prefix(upto_index);
  std::vector<WeightedEdge> edges;
  edges.reserve(end);
  for (std::size_t k = 0; k < end; ++k) {
    edges.push_back({s.events_[k].u, s.events_[k].v, s.events_[k].weight});
  }
  return build_graph(edges, s.num_nodes_);
}

GraphDelta delta_between(const SnapshotStream& s, std::size_t i, std::size_t j) {
  const std::size_t b = s.num_snapshots();
  if (i >= j) {
    throw std::invalid_argument("delta_between: need i < j");
  }
  if (j > b) {
    throw std::invalid_argument("delta_between: index out of range");
  }
  std::size_t begin, end;
  double sign;
  if (s.reversed_) {
    begin = s.prefix(b - j);
    end = s.prefix(b - i);
    sign = -1.0;
  } else {
    begin = s.prefix(i);
    end = s.prefix(j);
    sign = 1.0;
  }
  std::map<std::pair<NodeId, NodeId>, double> merged;
  for (std::size_t k = begin; k < end; ++k) {
    merged[{s.events_[k].u, s.events_[k].v}] += s.events_[k].weight;
  }
  GraphDelta d;
  d.changes.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    d.changes.push_back({key.first, key.second, sign * w});
  }
  return d;
}

SnapshotStream reverse_time(const SnapshotStream& s) {
  SnapshotStream out = s;
  out.reversed_ = !out.reversed_;
  return out;
}

}  // namespace chebypr
