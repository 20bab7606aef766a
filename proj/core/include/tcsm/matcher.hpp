#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tcsm/query.hpp"
#include "tcsm/tc_filter.hpp"
#include "tcsm/temporal_graph.hpp"

namespace tcsm {

/// Complete mapping: data vertex per query vertex, data edge per query edge.
struct Embedding {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  friend bool operator==(const Embedding&, const Embedding&) = default;
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

/// Set of query edges, or FULL meaning "every edge" (no pruning possible).
class FailingSet {
 public:
  FailingSet() = default;
  explicit FailingSet(EdgeSet bits) : bits_(bits) {}
  static FailingSet full() {
    FailingSet f;
    f.full_ = true;
    return f;
  }

  bool is_full() const { return full_; }
  EdgeSet bits() const { return bits_; }
  bool contains(EdgeIndex e) const { return full_ || tcsm::contains(bits_, e); }
  FailingSet& unite(const FailingSet& o) {
    full_ = full_ || o.full_;
    bits_ |= o.bits_;
    return *this;
  }
  FailingSet& unite(EdgeSet s) {
    bits_ |= s;
    return *this;
  }

  friend bool operator==(const FailingSet& a, const FailingSet& b) {
    return a.full_ == b.full_ && (a.full_ || a.bits_ == b.bits_);
  }

 private:
  EdgeSet bits_ = 0;
  bool full_ = false;
};

struct RSets {
  EdgeSet plus = 0;   // related and mapped
  EdgeSet minus = 0;  // related and unmapped
};

RSets compute_R(const TemporalQuery& q, EdgeSet mapped, EdgeIndex e);

// Failing set of a node whose children (mapped edge, failing set) all failed.
// An empty child list is the case where the next edge had no candidates and
// r_plus is then that edge's mapped related set.
FailingSet combine_failing_sets(const std::vector<std::pair<EdgeIndex, FailingSet>>& children, EdgeSet r_plus);

/// Mapping under construction during backtracking.
class PartialEmbedding {
 public:
  explicit PartialEmbedding(const TemporalQuery& q)
      : vertices_(q.vertex_count(), kNoVertex), edges_(q.edge_count(), kNoEdge) {}

  VertexId vertex(VertexId u) const { return vertices_[u]; }
  EdgeId edge(EdgeIndex e) const { return edges_[e]; }
  bool vertex_mapped(VertexId u) const { return vertices_[u] != kNoVertex; }
  bool edge_mapped(EdgeIndex e) const { return edges_[e] != kNoEdge; }
  EdgeSet mapped_edges() const { return mapped_; }
  std::size_t mapped_vertex_count() const { return vertex_count_; }
  bool complete() const { return vertex_count_ == vertices_.size() && popcount(mapped_) == std::ssize(edges_); }

  bool vertex_used(VertexId v) const;
  bool edge_used(EdgeId id) const;

  void map_vertex(VertexId u, VertexId v) {
    vertices_[u] = v;
    ++vertex_count_;
  }
  void unmap_vertex(VertexId u) {
    vertices_[u] = kNoVertex;
    --vertex_count_;
  }
  void map_edge(EdgeIndex e, EdgeId id) {
    edges_[e] = id;
    mapped_ |= edge_bit(e);
  }
  void unmap_edge(EdgeIndex e) {
    edges_[e] = kNoEdge;
    mapped_ &= ~edge_bit(e);
  }

  Embedding to_embedding() const { return Embedding{vertices_, edges_}; }

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
  EdgeSet mapped_ = 0;
  std::size_t vertex_count_ = 0;
};

struct MatchOptions {
  bool use_filter = true;
  bool use_pruning = true;
  std::uint64_t limit = 0;  // 0 means unlimited
  bool count_only = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct MatchStats {
  std::uint64_t embeddings = 0;
  std::uint64_t nodes_visited = 0;
  bool hit_limit = false;
  bool timed_out = false;
};

struct Extension {
  bool is_edge = false;
  EdgeIndex edge = 0;
  VertexId vertex = kNoVertex;
  std::vector<VertexId> candidates;  // for vertex extensions
};

struct TraceEvent {
  enum class Kind { map_edge, map_vertex, substitute } kind;
  EdgeIndex edge = 0;
  EdgeId data_edge = kNoEdge;
  VertexId vertex = kNoVertex;
  VertexId data_vertex = kNoVertex;
};

/// Backtracking search for time-constrained embeddings that contain a given
/// data edge. The index may be null when the filter is disabled.
class Matcher {
 public:
  using Sink = std::function<void(const Embedding&)>;

  Matcher(const TemporalQuery& q, const TemporalGraph& g, const CandidateIndex* index)
      : q_(&q), g_(&g), index_(index) {}

  MatchStats find_matches(EdgeId data_edge, const Sink& sink, const MatchOptions& options);

  std::vector<EdgeId> compute_EC(const PartialEmbedding& m, EdgeIndex e, bool use_filter) const;
  std::vector<VertexId> candidate_vertices(const PartialEmbedding& m, VertexId u, bool use_filter) const;
  Extension next_extension(const PartialEmbedding& m, bool use_filter) const;

  std::function<void(const TraceEvent&)> trace;

 private:
  struct Outcome {
    bool found = false;
    FailingSet tf;
  };
  struct Group {
    EdgeIndex edge;
    std::vector<EdgeId> alternatives;
  };

  Outcome search(PartialEmbedding& m, std::optional<EdgeIndex> last);
  Outcome extend_edge(PartialEmbedding& m, EdgeIndex e, EdgeSet dep_last);
  Outcome extend_vertex(PartialEmbedding& m, Extension& ext, EdgeSet dep_last);
  EdgeSet dependencies(const PartialEmbedding& m, EdgeIndex e) const;
  bool supported(EdgeIndex e, VertexId for_src, VertexId for_dst, bool use_filter) const;
  void emit(PartialEmbedding& m, std::size_t group);
  bool should_stop();

  const TemporalQuery* q_;
  const TemporalGraph* g_;
  const CandidateIndex* index_;

  // Per-run state.
  const Sink* sink_ = nullptr;
  MatchOptions opt_;
  MatchStats stats_;
  std::vector<Group> groups_;
  bool stop_ = false;
};

}  // namespace tcsm
