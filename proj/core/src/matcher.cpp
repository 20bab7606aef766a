#include "tcsm/matcher.hpp"

#include <algorithm>

namespace tcsm {

RSets compute_R(const TemporalQuery& q, EdgeSet mapped, EdgeIndex e) {
  const EdgeSet rel = q.order().related_to(e);
  return RSets{rel & mapped, rel & ~mapped};
}

FailingSet combine_failing_sets(const std::vector<std::pair<EdgeIndex, FailingSet>>& children, EdgeSet r_plus) {
  if (children.empty()) return FailingSet(r_plus);
  for (const auto& [e, tf] : children) {
    if (!tf.contains(e)) return FailingSet(tf).unite(r_plus);
  }
  FailingSet out(r_plus);
  for (const auto& [e, tf] : children) out.unite(tf);
  return out;
}

bool PartialEmbedding::vertex_used(VertexId v) const {
  return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

bool PartialEmbedding::edge_used(EdgeId id) const {
  return std::find(edges_.begin(), edges_.end(), id) != edges_.end();
}

bool Matcher::supported(EdgeIndex e, VertexId for_src, VertexId for_dst, bool use_filter) const {
  for (EdgeId id : g_->pair_edges(for_src, for_dst)) {
    const DataEdge& de = g_->edge(id);
    const bool swapped = de.src != for_src;
    if (use_filter ? index_->contains(CandidateKey{e, id, swapped}) : edge_compatible(*q_, *g_, e, de, swapped)) {
      return true;
    }
  }
  return false;
}

std::vector<EdgeId> Matcher::compute_EC(const PartialEmbedding& m, EdgeIndex e, bool use_filter) const {
  const QueryEdge& qe = q_->edge(e);
  const VertexId a = m.vertex(qe.src);
  const VertexId b = m.vertex(qe.dst);
  std::vector<EdgeId> out;
  if (a == kNoVertex || b == kNoVertex) return out;
  const TemporalOrder& ord = q_->order();
  const EdgeSet plus = ord.related_to(e) & m.mapped_edges();
  for (EdgeId id : g_->pair_edges(a, b)) {
    const DataEdge& de = g_->edge(id);
    const bool swapped = de.src != a;
    if (use_filter) {
      if (!index_->contains(CandidateKey{e, id, swapped})) continue;
    } else if (!edge_compatible(*q_, *g_, e, de, swapped)) {
      continue;
    }
    if (m.edge_used(id)) continue;
    bool ok = true;
    for_each_edge(plus, [&](EdgeIndex f) {
      const Timestamp tf = g_->edge(m.edge(f)).ts;
      if (ord.precedes(e, f) ? !(de.ts < tf) : !(tf < de.ts)) ok = false;
    });
    if (ok) out.push_back(id);
  }
  return out;
}

std::vector<VertexId> Matcher::candidate_vertices(const PartialEmbedding& m, VertexId u, bool use_filter) const {
  struct Anchor {
    EdgeIndex e;
    VertexId data;
  };
  std::vector<Anchor> anchors;
  VertexId pivot = kNoVertex;
  for (EdgeIndex e : q_->incident(u)) {
    const VertexId w = q_->edge(e).other(u);
    if (!m.vertex_mapped(w)) continue;
    anchors.push_back({e, m.vertex(w)});
    if (pivot == kNoVertex || g_->degree(m.vertex(w)) < g_->degree(pivot)) pivot = m.vertex(w);
  }
  std::vector<VertexId> out;
  if (anchors.empty()) return out;

  const Label want = q_->label(u);
  g_->for_each_incident(pivot, [&](const DataEdge&, VertexId x) {
    if (x != pivot && g_->label(x) == want) out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());

  std::erase_if(out, [&](VertexId x) {
    if (m.vertex_used(x)) return true;
    if (use_filter && !index_->vertex_candidate(u, x)) return true;
    for (const Anchor& a : anchors) {
      const bool u_is_src = q_->edge(a.e).src == u;
      if (!supported(a.e, u_is_src ? x : a.data, u_is_src ? a.data : x, use_filter)) return true;
    }
    return false;
  });
  return out;
}

Extension Matcher::next_extension(const PartialEmbedding& m, bool use_filter) const {
  Extension ext;
  for (const QueryEdge& qe : q_->edges()) {
    if (!m.edge_mapped(qe.id) && m.vertex_mapped(qe.src) && m.vertex_mapped(qe.dst)) {
      ext.is_edge = true;
      ext.edge = qe.id;
      return ext;
    }
  }
  for (VertexId u = 0; u < q_->vertex_count(); ++u) {
    if (m.vertex_mapped(u)) continue;
    bool frontier = false;
    for (EdgeIndex e : q_->incident(u)) frontier = frontier || m.vertex_mapped(q_->edge(e).other(u));
    if (!frontier) continue;
    auto cands = candidate_vertices(m, u, use_filter);
    if (ext.vertex == kNoVertex || cands.size() < ext.candidates.size()) {
      ext.vertex = u;
      ext.candidates = std::move(cands);
      if (ext.candidates.empty()) break;
    }
  }
  return ext;
}

EdgeSet Matcher::dependencies(const PartialEmbedding& m, EdgeIndex e) const {
  // Mapped related edges bound the timestamp; mapped parallel edges occupy
  // data edges between the same endpoints.
  return (q_->order().related_to(e) | q_->parallels(e)) & m.mapped_edges();
}

bool Matcher::should_stop() {
  if (stop_) return true;
  if (opt_.deadline && (stats_.nodes_visited & 255U) == 0 && std::chrono::steady_clock::now() >= *opt_.deadline) {
    stats_.timed_out = true;
    stop_ = true;
  }
  return stop_;
}

void Matcher::emit(PartialEmbedding& m, std::size_t group) {
  if (stop_) return;
  if (group == groups_.size()) {
    if (!opt_.count_only) (*sink_)(m.to_embedding());
    ++stats_.embeddings;
    if (opt_.limit != 0 && stats_.embeddings >= opt_.limit) {
      stats_.hit_limit = true;
      stop_ = true;
    }
    return;
  }
  const Group& g = groups_[group];
  const EdgeId representative = m.edge(g.edge);
  for (EdgeId alt : g.alternatives) {
    if (alt != representative) {
      if (m.edge_used(alt)) continue;
      if (trace) trace(TraceEvent{TraceEvent::Kind::substitute, g.edge, alt, kNoVertex, kNoVertex});
    }
    m.map_edge(g.edge, alt);
    emit(m, group + 1);
    if (stop_) break;
  }
  m.map_edge(g.edge, representative);
}

Matcher::Outcome Matcher::search(PartialEmbedding& m, std::optional<EdgeIndex> last) {
  ++stats_.nodes_visited;
  if (should_stop()) return {true, {}};
  if (m.complete()) {
    if (opt_.count_only && !trace) {
      // Product of the substitution groups without materializing them.
      std::uint64_t n = 1;
      for (const Group& g : groups_) n *= g.alternatives.size();
      if (opt_.limit != 0 && stats_.embeddings + n >= opt_.limit) {
        n = opt_.limit - stats_.embeddings;
        stats_.hit_limit = true;
        stop_ = true;
      }
      stats_.embeddings += n;
    } else {
      emit(m, 0);
    }
    return {true, {}};
  }
  const EdgeSet dep_last = last ? dependencies(m, *last) : 0;
  Extension ext = next_extension(m, opt_.use_filter);
  if (ext.is_edge) return extend_edge(m, ext.edge, dep_last);
  return extend_vertex(m, ext, dep_last);
}

Matcher::Outcome Matcher::extend_edge(PartialEmbedding& m, EdgeIndex e, EdgeSet dep_last) {
  std::vector<EdgeId> ec = compute_EC(m, e, opt_.use_filter);
  if (ec.empty()) return {false, combine_failing_sets({}, dependencies(m, e)).unite(dep_last)};

  const EdgeSet mapped = m.mapped_edges();
  const RSets r = compute_R(*q_, mapped, e);
  const bool free_parallels = (q_->parallels(e) & ~mapped) == 0;
  const TemporalOrder& ord = q_->order();

  auto visit = [&](EdgeId id) {
    if (trace) trace(TraceEvent{TraceEvent::Kind::map_edge, e, id, kNoVertex, kNoVertex});
    m.map_edge(e, id);
    Outcome out = search(m, e);
    m.unmap_edge(e);
    return out;
  };

  std::vector<std::pair<EdgeIndex, FailingSet>> failed;

  if (opt_.use_pruning && free_parallels && r.minus == 0) {
    // Every candidate leads to the same subtree; explore one, substitute the rest.
    groups_.push_back(Group{e, ec});
    Outcome out = visit(ec.front());
    groups_.pop_back();
    if (out.found) return out;
    failed.emplace_back(e, out.tf);
    return {false, combine_failing_sets(failed, dep_last)};
  }

  const bool all_later = (r.minus & ~ord.later_than(e)) == 0;
  const bool all_earlier = (r.minus & ~ord.earlier_than(e)) == 0;
  if (opt_.use_pruning && free_parallels && (all_later || all_earlier)) {
    // Candidates are tried from the least to the most restrictive timestamp;
    // once one fails, the rest fail as well.
    if (!all_later) std::reverse(ec.begin(), ec.end());
    bool found = false;
    for (EdgeId id : ec) {
      Outcome out = visit(id);
      if (stop_) return {true, {}};
      if (out.found) {
        found = true;
        continue;
      }
      failed.emplace_back(e, out.tf);
      break;
    }
    if (found) return {true, {}};
    return {false, combine_failing_sets(failed, dep_last)};
  }

  bool found = false;
  for (EdgeId id : ec) {
    Outcome out = visit(id);
    if (stop_) return {true, {}};
    if (out.found) {
      found = true;
      continue;
    }
    failed.emplace_back(e, out.tf);
    if (opt_.use_pruning && !out.tf.contains(e)) break;
  }
  if (found) return {true, {}};
  return {false, combine_failing_sets(failed, dep_last)};
}

Matcher::Outcome Matcher::extend_vertex(PartialEmbedding& m, Extension& ext, EdgeSet dep_last) {
  if (ext.vertex == kNoVertex || ext.candidates.empty()) return {false, FailingSet::full()};
  bool found = false;
  FailingSet tf(dep_last);
  for (VertexId v : ext.candidates) {
    if (trace) trace(TraceEvent{TraceEvent::Kind::map_vertex, 0, kNoEdge, ext.vertex, v});
    m.map_vertex(ext.vertex, v);
    Outcome out = search(m, std::nullopt);
    m.unmap_vertex(ext.vertex);
    if (stop_) return {true, {}};
    if (out.found) {
      found = true;
    } else {
      tf.unite(out.tf);
    }
  }
  if (found) return {true, {}};
  return {false, tf};
}

MatchStats Matcher::find_matches(EdgeId data_edge, const Sink& sink, const MatchOptions& options) {
  if (options.use_filter && index_ == nullptr) throw Error("filtering requested without a candidate index");
  sink_ = &sink;
  opt_ = options;
  stats_ = {};
  groups_.clear();
  stop_ = false;

  const DataEdge& de = g_->edge(data_edge);
  PartialEmbedding m(*q_);
  for (EdgeIndex e = 0; e < q_->edge_count() && !stop_; ++e) {
    for (bool swapped : {false, true}) {
      if (stop_) break;
      if (!edge_compatible(*q_, *g_, e, de, swapped)) continue;
      if (opt_.use_filter && !index_->contains(CandidateKey{e, data_edge, swapped})) continue;
      const auto [xs, xd] = assigned_endpoints(de, swapped);
      const QueryEdge& qe = q_->edge(e);
      m.map_vertex(qe.src, xs);
      m.map_vertex(qe.dst, xd);
      if (trace) trace(TraceEvent{TraceEvent::Kind::map_edge, e, data_edge, kNoVertex, kNoVertex});
      m.map_edge(e, data_edge);
      search(m, e);
      m.unmap_edge(e);
      m.unmap_vertex(qe.dst);
      m.unmap_vertex(qe.src);
    }
  }
  sink_ = nullptr;
  return stats_;
}

}  // namespace tcsm
