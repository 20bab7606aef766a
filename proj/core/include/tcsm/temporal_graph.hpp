#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcsm/types.hpp"

namespace tcsm {

struct DataEdge {
  EdgeId id = kNoEdge;
  VertexId src = kNoVertex;
  VertexId dst = kNoVertex;
  Label elabel = kNoLabel;
  Timestamp ts = 0;

  VertexId other(VertexId v) const { return v == src ? dst : src; }
  friend bool operator==(const DataEdge&, const DataEdge&) = default;
};

/// Edge-id sequence that supports append at the tail and pop at the head in
/// O(1) amortized time while remaining contiguous for span access.
class ChronoList {
 public:
  std::span<const EdgeId> view() const { return {items_.data() + head_, items_.size() - head_}; }
  bool empty() const { return head_ == items_.size(); }
  std::size_t size() const { return items_.size() - head_; }
  EdgeId front() const { return items_[head_]; }
  EdgeId back() const { return items_.back(); }

  void push_back(EdgeId id) { items_.push_back(id); }
  void pop_back() { items_.pop_back(); }
  void pop_front();

 private:
  std::vector<EdgeId> items_;
  std::size_t head_ = 0;
};

/// Windowed temporal multigraph. Vertices are permanent; edges arrive at the
/// tail of the chronological adjacency lists and expire from their head.
///
/// In directed mode every vertex keeps separate out- and in-lists and
/// pair_edges(a, b) only returns edges a -> b. In undirected mode a single
/// list per vertex holds every incident edge.
class TemporalGraph {
 public:
  explicit TemporalGraph(bool directed = false) : directed_(directed) {}

  bool directed() const { return directed_; }

  void add_vertex(VertexId id, Label label);
  bool has_vertex(VertexId id) const { return id < labels_.size() && labels_[id] != kNoLabel; }
  Label label(VertexId id) const;
  std::size_t vertex_count() const { return vertex_count_; }
  // One past the largest vertex id ever added.
  std::size_t vertex_capacity() const { return labels_.size(); }
  std::size_t degree(VertexId v) const;

  EdgeId insert_edge(VertexId src, VertexId dst, Label elabel, Timestamp ts);
  void delete_expired(EdgeId id);
  // Undo of the most recent insert_edge.
  void remove_latest(EdgeId id);

  bool is_active(EdgeId id) const;
  const DataEdge& edge(EdgeId id) const;
  std::size_t active_edge_count() const { return active_edges_; }
  EdgeId next_edge_id() const { return next_id_; }

  // Undirected: every incident edge. Directed: outgoing edges.
  std::span<const EdgeId> adjacency(VertexId v) const;
  // Directed only: incoming edges.
  std::span<const EdgeId> in_adjacency(VertexId v) const;
  std::span<const EdgeId> pair_edges(VertexId a, VertexId b) const;

  std::vector<EdgeId> edges_between(VertexId u, VertexId v, std::optional<Label> elabel = {},
                                    std::optional<Timestamp> min_ts_exclusive = {},
                                    std::optional<Timestamp> max_ts_exclusive = {}) const;

  // f(const DataEdge&, VertexId other_endpoint) for every active edge at v.
  template <class F>
  void for_each_incident(VertexId v, F&& f) const {
    for (EdgeId id : adjacency(v)) {
      const DataEdge& e = edge(id);
      f(e, e.other(v));
    }
    if (directed_) {
      for (EdgeId id : in_adjacency(v)) {
        const DataEdge& e = edge(id);
        f(e, e.other(v));
      }
    }
  }

  template <class F>
  void for_each_active_edge(F&& f) const {
    for (const Slot& s : edges_) {
      if (s.active) f(s.edge);
    }
  }

  template <class F>
  void for_each_vertex(F&& f) const {
    for (VertexId v = 0; v < labels_.size(); ++v) {
      if (labels_[v] != kNoLabel) f(v, labels_[v]);
    }
  }

  // Logical content of every adjacency list, one line per non-empty list.
  std::string dump_adjacency() const;

 private:
  struct Slot {
    DataEdge edge;
    bool active = true;
  };

  void require_vertex(VertexId v) const;
  std::uint64_t pair_key(VertexId a, VertexId b) const;
  ChronoList* pair_list(VertexId a, VertexId b);
  void erase_pair_if_empty(VertexId a, VertexId b);
  std::vector<ChronoList*> lists_of(const DataEdge& e);

  bool directed_;
  std::vector<Label> labels_;
  std::size_t vertex_count_ = 0;
  std::vector<ChronoList> out_;
  std::vector<ChronoList> in_;
  std::unordered_map<std::uint64_t, ChronoList> pairs_;

  std::deque<Slot> edges_;
  EdgeId first_id_ = 0;
  EdgeId next_id_ = 0;
  std::size_t active_edges_ = 0;
};

}  // namespace tcsm
