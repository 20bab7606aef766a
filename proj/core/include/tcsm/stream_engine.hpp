#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcsm/matcher.hpp"
#include "tcsm/query.hpp"
#include "tcsm/query_dag.hpp"
#include "tcsm/tc_filter.hpp"
#include "tcsm/temporal_graph.hpp"

namespace tcsm {

struct StreamEdge {
  VertexId src = kNoVertex;
  VertexId dst = kNoVertex;
  Label elabel = kNoLabel;
  Timestamp ts = 0;

  friend bool operator==(const StreamEdge&, const StreamEdge&) = default;
};

enum class Polarity { occurred, expired };

struct MatchReport {
  Timestamp fire_time = 0;
  Polarity polarity = Polarity::occurred;
  Embedding embedding;

  friend bool operator==(const MatchReport&, const MatchReport&) = default;
};

struct EngineOptions {
  bool directed = false;
  bool use_filter = true;
  bool use_pruning = true;
  bool count_only = false;
  std::uint64_t limit = 0;  // stop after this many reports; 0 means unlimited
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct EngineStats {
  std::uint64_t events_processed = 0;
  std::uint64_t embeddings_occurred = 0;
  std::uint64_t embeddings_expired = 0;
  std::uint64_t search_nodes_visited = 0;
  std::uint64_t candidate_pairs_current = 0;
  std::uint64_t peak_candidate_pairs = 0;
  bool timed_out = false;
  bool hit_limit = false;

  // Flat "key=value" lines.
  std::string to_string() const;
};

/// Read-only copy of the engine state between events.
struct EngineSnapshot {
  Timestamp time = 0;
  std::vector<DataEdge> active_edges;
  std::string adjacency;
  std::string forward_table;
  std::string reverse_table;
  std::vector<CandidateKey> index_keys;

  friend bool operator==(const EngineSnapshot&, const EngineSnapshot&) = default;
};

struct EventInfo {
  bool arrival = true;
  Timestamp fire_time = 0;
  EdgeId edge = kNoEdge;
};

/// Sliding-window driver. Vertices are registered up front; edges are queued
/// in nondecreasing timestamp order and processed one event at a time, with
/// expirations (fire time ts + window) ahead of arrivals at equal times.
class StreamEngine {
 public:
  using Sink = std::function<void(const MatchReport&)>;

  StreamEngine(const TemporalQuery& q, Timestamp window, EngineOptions options = {});

  void add_vertex(VertexId id, Label label) { graph_.add_vertex(id, label); }
  // Throws StreamError when ts is below a previously enqueued timestamp.
  void enqueue(const StreamEdge& e);
  // After finish(), pending expirations are processed once arrivals run out.
  void finish() { finished_ = true; }

  bool has_pending_event() const;
  // Processes one event. Returns false when nothing can be processed.
  bool step(const Sink& sink);
  // Processes events until none remain, the limit is hit or time runs out.
  void run(const Sink& sink);

  // Enqueue every edge, finish and run.
  EngineStats run_stream(const std::vector<StreamEdge>& edges, const Sink& sink);

  const EngineStats& stats() const { return stats_; }
  const EventInfo& last_event() const { return last_event_; }
  EngineSnapshot snapshot() const;

  const TemporalQuery& query() const { return *q_; }
  const TemporalGraph& graph() const { return graph_; }
  const QueryDag& dag() const { return forward_->dag(); }
  const MaxMinTable& forward_table() const { return *forward_; }
  const MaxMinTable& reverse_table() const { return *reverse_; }
  const CandidateIndex& index() const { return *index_; }
  Timestamp window() const { return window_; }

 private:
  void arrive(const StreamEdge& se, const Sink& sink);
  void expire(EdgeId id, Timestamp fire, const Sink& sink);
  void match(EdgeId id, Timestamp fire, Polarity polarity, const Sink& sink);
  void track_index_size();

  const TemporalQuery* q_;
  Timestamp window_;
  EngineOptions options_;
  TemporalGraph graph_;
  std::unique_ptr<MaxMinTable> forward_;
  std::unique_ptr<MaxMinTable> reverse_;
  std::unique_ptr<CandidateIndex> index_;
  Matcher matcher_;

  std::deque<StreamEdge> arrivals_;
  std::deque<std::pair<Timestamp, EdgeId>> expirations_;
  std::optional<Timestamp> last_enqueued_;
  bool finished_ = false;
  Timestamp now_ = 0;
  EngineStats stats_;
  EventInfo last_event_;
};

}  // namespace tcsm
