#include "tcsm/temporal_graph.hpp"

#include <algorithm>
#include <sstream>

namespace tcsm {

void ChronoList::pop_front() {
  ++head_;
  if (head_ == items_.size()) {
    items_.clear();
    head_ = 0;
  } else if (head_ >= 32 && head_ * 2 >= items_.size()) {
    items_.erase(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(head_));
    head_ = 0;
  }
}

void TemporalGraph::add_vertex(VertexId id, Label label) {
  if (label == kNoLabel) throw GraphError("vertex " + std::to_string(id) + " has no label");
  if (id == kNoVertex) throw GraphError("vertex id out of range");
  if (has_vertex(id)) throw GraphError("duplicate vertex id " + std::to_string(id));
  if (id >= labels_.size()) {
    labels_.resize(std::size_t{id} + 1, kNoLabel);
    out_.resize(labels_.size());
    if (directed_) in_.resize(labels_.size());
  }
  labels_[id] = label;
  ++vertex_count_;
}

void TemporalGraph::require_vertex(VertexId v) const {
  if (!has_vertex(v)) throw GraphError("unknown vertex " + std::to_string(v));
}

Label TemporalGraph::label(VertexId id) const {
  require_vertex(id);
  return labels_[id];
}

std::size_t TemporalGraph::degree(VertexId v) const {
  require_vertex(v);
  return out_[v].size() + (directed_ ? in_[v].size() : 0);
}

std::uint64_t TemporalGraph::pair_key(VertexId a, VertexId b) const {
  if (!directed_ && b < a) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

ChronoList* TemporalGraph::pair_list(VertexId a, VertexId b) {
  auto it = pairs_.find(pair_key(a, b));
  return it == pairs_.end() ? nullptr : &it->second;
}

void TemporalGraph::erase_pair_if_empty(VertexId a, VertexId b) {
  auto it = pairs_.find(pair_key(a, b));
  if (it != pairs_.end() && it->second.empty()) pairs_.erase(it);
}

std::vector<ChronoList*> TemporalGraph::lists_of(const DataEdge& e) {
  std::vector<ChronoList*> lists;
  lists.push_back(&out_[e.src]);
  if (directed_) {
    lists.push_back(&in_[e.dst]);
  } else if (e.dst != e.src) {
    lists.push_back(&out_[e.dst]);
  }
  lists.push_back(pair_list(e.src, e.dst));
  return lists;
}

EdgeId TemporalGraph::insert_edge(VertexId src, VertexId dst, Label elabel, Timestamp ts) {
  require_vertex(src);
  require_vertex(dst);
  if (ts > kMaxTimestamp) throw GraphError("timestamp out of range");
  auto tail_ts = [&](const ChronoList& l) -> Timestamp { return l.empty() ? 0 : edge(l.back()).ts; };
  Timestamp tail = std::max(tail_ts(out_[src]), tail_ts(out_[dst]));
  if (directed_) tail = std::max({tail, tail_ts(in_[src]), tail_ts(in_[dst])});
  if (ts < tail) {
    throw GraphError("timestamp regression: edge (" + std::to_string(src) + "," + std::to_string(dst) + "," +
                     std::to_string(ts) + ") after timestamp " + std::to_string(tail));
  }

  const EdgeId id = next_id_++;
  if (edges_.empty()) first_id_ = id;
  edges_.push_back(Slot{DataEdge{id, src, dst, elabel, ts}, true});
  pairs_[pair_key(src, dst)];
  for (ChronoList* l : lists_of(edges_.back().edge)) l->push_back(id);
  ++active_edges_;
  return id;
}

void TemporalGraph::delete_expired(EdgeId id) {
  if (!is_active(id)) throw GraphError("edge " + std::to_string(id) + " is not active");
  Slot& slot = edges_[id - first_id_];
  const auto lists = lists_of(slot.edge);
  for (const ChronoList* l : lists) {
    if (l == nullptr || l->empty() || l->front() != id) {
      throw GraphError("edge " + std::to_string(id) + " is not at the head of its adjacency lists");
    }
  }
  for (ChronoList* l : lists) l->pop_front();
  erase_pair_if_empty(slot.edge.src, slot.edge.dst);
  slot.active = false;
  --active_edges_;
  while (!edges_.empty() && !edges_.front().active) {
    edges_.pop_front();
    ++first_id_;
  }
}

void TemporalGraph::remove_latest(EdgeId id) {
  if (edges_.empty() || id + 1 != next_id_ || !edges_.back().active) {
    throw GraphError("edge " + std::to_string(id) + " is not the latest insertion");
  }
  const DataEdge e = edges_.back().edge;
  for (ChronoList* l : lists_of(e)) l->pop_back();
  erase_pair_if_empty(e.src, e.dst);
  edges_.pop_back();
  --next_id_;
  --active_edges_;
  if (edges_.empty()) first_id_ = next_id_;
}

bool TemporalGraph::is_active(EdgeId id) const {
  return id >= first_id_ && id < first_id_ + edges_.size() && edges_[id - first_id_].active;
}

const DataEdge& TemporalGraph::edge(EdgeId id) const {
  if (id < first_id_ || id >= first_id_ + edges_.size()) {
    throw GraphError("edge " + std::to_string(id) + " is not stored");
  }
  return edges_[id - first_id_].edge;
}

std::span<const EdgeId> TemporalGraph::adjacency(VertexId v) const {
  require_vertex(v);
  return out_[v].view();
}

std::span<const EdgeId> TemporalGraph::in_adjacency(VertexId v) const {
  require_vertex(v);
  if (!directed_) return {};
  return in_[v].view();
}

std::span<const EdgeId> TemporalGraph::pair_edges(VertexId a, VertexId b) const {
  auto it = pairs_.find(pair_key(a, b));
  if (it == pairs_.end()) return {};
  return it->second.view();
}

std::vector<EdgeId> TemporalGraph::edges_between(VertexId u, VertexId v, std::optional<Label> elabel,
                                                 std::optional<Timestamp> min_ts_exclusive,
                                                 std::optional<Timestamp> max_ts_exclusive) const {
  require_vertex(u);
  require_vertex(v);
  std::vector<EdgeId> out;
  for (EdgeId id : pair_edges(u, v)) {
    const DataEdge& e = edge(id);
    if (elabel && e.elabel != *elabel) continue;
    if (min_ts_exclusive && e.ts <= *min_ts_exclusive) continue;
    if (max_ts_exclusive && e.ts >= *max_ts_exclusive) continue;
    out.push_back(id);
  }
  return out;
}

std::string TemporalGraph::dump_adjacency() const {
  std::ostringstream os;
  auto dump = [&](const char* tag, VertexId v, const ChronoList& l) {
    if (l.empty()) return;
    os << tag << ' ' << v << ':';
    for (EdgeId id : l.view()) os << ' ' << id << '@' << edge(id).ts;
    os << '\n';
  };
  for (VertexId v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == kNoLabel) continue;
    dump(directed_ ? "out" : "adj", v, out_[v]);
    if (directed_) dump("in", v, in_[v]);
  }
  return os.str();
}

}  // namespace tcsm
