#include "tcsm/stream_engine.hpp"

#include <sstream>

namespace tcsm {

std::string EngineStats::to_string() const {
  std::ostringstream os;
  os << "events_processed=" << events_processed << '\n'
     << "embeddings_occurred=" << embeddings_occurred << '\n'
     << "embeddings_expired=" << embeddings_expired << '\n'
     << "search_nodes_visited=" << search_nodes_visited << '\n'
     << "candidate_pairs_current=" << candidate_pairs_current << '\n'
     << "peak_candidate_pairs=" << peak_candidate_pairs << '\n';
  if (timed_out) os << "timed_out=1\n";
  return os.str();
}

StreamEngine::StreamEngine(const TemporalQuery& q, Timestamp window, EngineOptions options)
    : q_(&q),
      window_(window),
      options_(options),
      graph_(options.directed),
      matcher_(q, graph_, nullptr) {
  if (window == 0) throw StreamError("window must be positive");
  QueryDag dag = best_dag(q);
  QueryDag rev = reverse(q, dag);
  forward_ = std::make_unique<MaxMinTable>(q, std::move(dag), Orientation::forward, graph_);
  reverse_ = std::make_unique<MaxMinTable>(q, std::move(rev), Orientation::reverse, graph_);
  index_ = std::make_unique<CandidateIndex>(*forward_, *reverse_);
  matcher_ = Matcher(q, graph_, options.use_filter ? index_.get() : nullptr);
}

void StreamEngine::enqueue(const StreamEdge& e) {
  if (finished_) throw StreamError("stream already finished");
  if (last_enqueued_ && e.ts < *last_enqueued_) {
    throw StreamError("timestamp regression: " + std::to_string(e.ts) + " after " + std::to_string(*last_enqueued_));
  }
  if (e.ts > kMaxTimestamp - window_) throw StreamError("timestamp too large for the window");
  if (!graph_.has_vertex(e.src) || !graph_.has_vertex(e.dst)) {
    throw StreamError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) + ") has an unknown endpoint");
  }
  last_enqueued_ = e.ts;
  arrivals_.push_back(e);
}

bool StreamEngine::has_pending_event() const {
  return !arrivals_.empty() || (finished_ && !expirations_.empty());
}

bool StreamEngine::step(const Sink& sink) {
  if (!expirations_.empty() && (finished_ || !arrivals_.empty()) &&
      (arrivals_.empty() || expirations_.front().first <= arrivals_.front().ts)) {
    const auto [fire, id] = expirations_.front();
    expirations_.pop_front();
    expire(id, fire, sink);
    return true;
  }
  if (!arrivals_.empty()) {
    const StreamEdge se = arrivals_.front();
    arrivals_.pop_front();
    arrive(se, sink);
    return true;
  }
  return false;
}

void StreamEngine::run(const Sink& sink) {
  while (!stats_.hit_limit && !stats_.timed_out) {
    // Cheap per-event check; the matcher also checks inside long searches.
    if (options_.deadline && (stats_.events_processed & 63U) == 0 &&
        std::chrono::steady_clock::now() >= *options_.deadline) {
      stats_.timed_out = true;
      break;
    }
    if (!step(sink)) break;
  }
}

EngineStats StreamEngine::run_stream(const std::vector<StreamEdge>& edges, const Sink& sink) {
  for (const StreamEdge& e : edges) enqueue(e);
  finish();
  run(sink);
  return stats_;
}

void StreamEngine::track_index_size() {
  stats_.candidate_pairs_current = options_.use_filter ? index_->size() : 0;
  stats_.peak_candidate_pairs = std::max(stats_.peak_candidate_pairs, stats_.candidate_pairs_current);
}

void StreamEngine::arrive(const StreamEdge& se, const Sink& sink) {
  now_ = se.ts;
  const EdgeId id = graph_.insert_edge(se.src, se.dst, se.elabel, se.ts);
  expirations_.emplace_back(se.ts + window_, id);
  if (options_.use_filter) {
    auto fwd = forward_->on_insert(id);
    auto rev = reverse_->on_insert(id);
    apply_delta(*index_, fwd, rev, +1);
    track_index_size();
  }
  ++stats_.events_processed;
  last_event_ = EventInfo{true, se.ts, id};
  match(id, se.ts, Polarity::occurred, sink);
}

void StreamEngine::expire(EdgeId id, Timestamp fire, const Sink& sink) {
  now_ = fire;
  ++stats_.events_processed;
  last_event_ = EventInfo{false, fire, id};
  // Embeddings that contain the edge are enumerated while it still exists.
  match(id, fire, Polarity::expired, sink);
  if (options_.use_filter) {
    auto fwd = forward_->on_delete(id);
    auto rev = reverse_->on_delete(id);
    apply_delta(*index_, fwd, rev, -1);
    track_index_size();
  }
  graph_.delete_expired(id);
}

void StreamEngine::match(EdgeId id, Timestamp fire, Polarity polarity, const Sink& sink) {
  MatchOptions mo;
  mo.use_filter = options_.use_filter;
  mo.use_pruning = options_.use_pruning;
  mo.count_only = options_.count_only;
  mo.deadline = options_.deadline;
  const std::uint64_t so_far = stats_.embeddings_occurred + stats_.embeddings_expired;
  if (options_.limit != 0) mo.limit = options_.limit - so_far;

  MatchReport report;
  report.fire_time = fire;
  report.polarity = polarity;
  auto on_match = [&](const Embedding& emb) {
    report.embedding = emb;
    sink(report);
  };
  const MatchStats ms = matcher_.find_matches(id, on_match, mo);
  stats_.search_nodes_visited += ms.nodes_visited;
  (polarity == Polarity::occurred ? stats_.embeddings_occurred : stats_.embeddings_expired) += ms.embeddings;
  if (ms.timed_out) stats_.timed_out = true;
  if (ms.hit_limit) stats_.hit_limit = true;
}

EngineSnapshot StreamEngine::snapshot() const {
  EngineSnapshot s;
  s.time = now_;
  graph_.for_each_active_edge([&](const DataEdge& e) { s.active_edges.push_back(e); });
  s.adjacency = graph_.dump_adjacency();
  if (options_.use_filter) {
    s.forward_table = forward_->dump();
    s.reverse_table = reverse_->dump();
    s.index_keys = index_->sorted_keys();
  }
  return s;
}

}  // namespace tcsm
