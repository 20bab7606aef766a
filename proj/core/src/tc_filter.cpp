#include "tcsm/tc_filter.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tcsm {

const char* to_string(Orientation o) { return o == Orientation::forward ? "fwd" : "rev"; }

std::pair<VertexId, VertexId> assigned_endpoints(const DataEdge& de, bool swapped) {
  return swapped ? std::pair{de.dst, de.src} : std::pair{de.src, de.dst};
}

bool edge_compatible(const TemporalQuery& q, const TemporalGraph& g, EdgeIndex e, const DataEdge& de, bool swapped) {
  if (de.src == de.dst) return false;
  if (swapped && g.directed()) return false;
  const QueryEdge& qe = q.edge(e);
  if (qe.elabel != de.elabel) return false;
  const auto [xs, xd] = assigned_endpoints(de, swapped);
  return g.label(xs) == q.label(qe.src) && g.label(xd) == q.label(qe.dst);
}

MaxMinTable::MaxMinTable(const TemporalQuery& q, QueryDag dag, Orientation o, const TemporalGraph& g)
    : q_(&q), dag_(std::move(dag)), orientation_(o), g_(&g) {
  const std::size_t n = q.vertex_count();
  const std::size_t m = q.edge_count();
  tracked_later_.assign(n, 0);
  tracked_earlier_.assign(n, 0);
  slot_later_.assign(n, std::vector<int>(m, -1));
  slot_earlier_.assign(n, std::vector<int>(m, -1));
  later_list_.assign(n, {});
  earlier_list_.assign(n, {});
  for (VertexId u = 0; u < n; ++u) {
    if (dag_.is_leaf(u)) continue;
    const EdgeSet below = dag_.below(u);
    for_each_edge(dag_.above(u), [&](EdgeIndex e) {
      if ((q.order().later_than(e) & below) != 0) {
        tracked_later_[u] |= edge_bit(e);
        slot_later_[u][e] = static_cast<int>(later_list_[u].size());
        later_list_[u].push_back(e);
      }
      if ((q.order().earlier_than(e) & below) != 0) {
        tracked_earlier_[u] |= edge_bit(e);
        slot_earlier_[u][e] = static_cast<int>(earlier_list_[u].size());
        earlier_list_[u].push_back(e);
      }
    });
  }
  dirty_.assign(n, {});
  rebuild();
}

template <class F>
void MaxMinTable::for_each_match_at(VertexId u, VertexId v, EdgeIndex e, F&& f) const {
  const QueryEdge& qe = q_->edge(e);
  const VertexId uo = qe.other(u);
  const Label want = q_->label(uo);
  const bool u_is_src = qe.src == u;
  auto visit = [&](EdgeId id) {
    if (id == skip_edge_) return;
    const DataEdge& de = g_->edge(id);
    if (de.src == de.dst || de.elabel != qe.elabel) return;
    const VertexId w = de.other(v);
    if (g_->label(w) != want) return;
    // swapped: query src lands on data dst.
    const bool swapped = u_is_src ? de.src != v : de.src == v;
    f(de, w, swapped);
  };
  if (g_->directed()) {
    for (EdgeId id : u_is_src ? g_->adjacency(v) : g_->in_adjacency(v)) visit(id);
  } else {
    for (EdgeId id : g_->adjacency(v)) visit(id);
  }
}

bool MaxMinTable::exists(VertexId u, VertexId v) const {
  if (!g_->has_vertex(v) || g_->label(v) != q_->label(u)) return false;
  if (dag_.is_leaf(u)) return true;
  return cells_.contains(cell_key(u, v));
}

ExtTimestamp MaxMinTable::value(VertexId u, VertexId v, EdgeIndex e) const {
  if (!exists(u, v)) return ExtTimestamp::neg_inf();
  const int slot = dag_.is_leaf(u) ? -1 : slot_later_[u][e];
  if (slot < 0) return ExtTimestamp::pos_inf();
  return cells_.at(cell_key(u, v)).hi[static_cast<std::size_t>(slot)];
}

ExtTimestamp MaxMinTable::lower(VertexId u, VertexId v, EdgeIndex e) const {
  if (!exists(u, v)) return ExtTimestamp::pos_inf();
  const int slot = dag_.is_leaf(u) ? -1 : slot_earlier_[u][e];
  if (slot < 0) return ExtTimestamp::neg_inf();
  return cells_.at(cell_key(u, v)).lo[static_cast<std::size_t>(slot)];
}

std::optional<MaxMinTable::Cell> MaxMinTable::compute_cell(VertexId u, VertexId v) const {
  if (!g_->has_vertex(v) || g_->label(v) != q_->label(u)) return std::nullopt;
  const auto& later = later_list_[u];
  const auto& earlier = earlier_list_[u];
  Cell cell;
  cell.hi.assign(later.size(), ExtTimestamp::pos_inf());
  cell.lo.assign(earlier.size(), ExtTimestamp::neg_inf());
  std::vector<ExtTimestamp> best_hi(later.size());
  std::vector<ExtTimestamp> best_lo(earlier.size());
  const TemporalOrder& ord = q_->order();

  for (EdgeIndex ec : dag_.out_edges(u)) {
    const VertexId uc = dag_.child(ec);
    std::fill(best_hi.begin(), best_hi.end(), ExtTimestamp::neg_inf());
    std::fill(best_lo.begin(), best_lo.end(), ExtTimestamp::pos_inf());
    bool any = false;
    for_each_match_at(u, v, ec, [&](const DataEdge& de, VertexId w, bool) {
      if (!exists(uc, w)) return;
      any = true;
      const ExtTimestamp t(de.ts);
      for (std::size_t k = 0; k < later.size(); ++k) {
        ExtTimestamp x = value(uc, w, later[k]);
        if (ord.precedes(later[k], ec)) x = std::min(x, t);
        best_hi[k] = std::max(best_hi[k], x);
      }
      for (std::size_t k = 0; k < earlier.size(); ++k) {
        ExtTimestamp x = lower(uc, w, earlier[k]);
        if (ord.precedes(ec, earlier[k])) x = std::max(x, t);
        best_lo[k] = std::min(best_lo[k], x);
      }
    });
    if (!any) return std::nullopt;
    for (std::size_t k = 0; k < later.size(); ++k) cell.hi[k] = std::min(cell.hi[k], best_hi[k]);
    for (std::size_t k = 0; k < earlier.size(); ++k) cell.lo[k] = std::max(cell.lo[k], best_lo[k]);
  }
  return cell;
}

ExtTimestamp MaxMinTable::recompute_entry(VertexId u, VertexId v, EdgeIndex e) const {
  if (!g_->has_vertex(v) || g_->label(v) != q_->label(u)) return ExtTimestamp::neg_inf();
  ExtTimestamp result = ExtTimestamp::pos_inf();
  for (EdgeIndex ec : dag_.out_edges(u)) {
    const VertexId uc = dag_.child(ec);
    ExtTimestamp best = ExtTimestamp::neg_inf();
    for_each_match_at(u, v, ec, [&](const DataEdge& de, VertexId w, bool) {
      ExtTimestamp x = value(uc, w, e);
      if (x.is_neg_inf()) return;
      if (q_->order().precedes(e, ec)) x = std::min(x, ExtTimestamp(de.ts));
      best = std::max(best, x);
    });
    result = std::min(result, best);
  }
  return result;
}

ExtTimestamp MaxMinTable::recompute_lower(VertexId u, VertexId v, EdgeIndex e) const {
  if (!g_->has_vertex(v) || g_->label(v) != q_->label(u)) return ExtTimestamp::pos_inf();
  ExtTimestamp result = ExtTimestamp::neg_inf();
  for (EdgeIndex ec : dag_.out_edges(u)) {
    const VertexId uc = dag_.child(ec);
    ExtTimestamp best = ExtTimestamp::pos_inf();
    for_each_match_at(u, v, ec, [&](const DataEdge& de, VertexId w, bool) {
      ExtTimestamp x = lower(uc, w, e);
      if (x.is_pos_inf()) return;
      if (q_->order().precedes(ec, e)) x = std::max(x, ExtTimestamp(de.ts));
      best = std::min(best, x);
    });
    result = std::max(result, best);
  }
  return result;
}

bool MaxMinTable::is_tc_matchable(const CandidateKey& k) const {
  if (k.dedge == skip_edge_ || !g_->is_active(k.dedge)) return false;
  const DataEdge& de = g_->edge(k.dedge);
  if (!edge_compatible(*q_, *g_, k.qedge, de, k.swapped)) return false;
  const auto [xs, xd] = assigned_endpoints(de, k.swapped);
  const VertexId c = dag_.child(k.qedge);
  const VertexId vc = q_->edge(k.qedge).src == c ? xs : xd;
  if (!exists(c, vc)) return false;
  const ExtTimestamp t(de.ts);
  return t < value(c, vc, k.qedge) && lower(c, vc, k.qedge) < t;
}

void MaxMinTable::mark_dirty(VertexId u, VertexId v) {
  if (dag_.is_leaf(u)) return;
  if (dirty_seen_.insert(cell_key(u, v)).second) dirty_[u].push_back(v);
}

void MaxMinTable::seed_from_edge(const DataEdge& de, std::vector<CandidateKey>& to_check) {
  for (EdgeIndex e = 0; e < q_->edge_count(); ++e) {
    for (bool swapped : {false, true}) {
      if (!edge_compatible(*q_, *g_, e, de, swapped)) continue;
      to_check.push_back(CandidateKey{e, de.id, swapped});
      const auto [xs, xd] = assigned_endpoints(de, swapped);
      const VertexId p = dag_.parent(e);
      mark_dirty(p, q_->edge(e).src == p ? xs : xd);
    }
  }
}

void MaxMinTable::propagate(std::vector<CandidateKey>& to_check) {
  const auto& order = dag_.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId u = *it;
    // Parents have a smaller rank, so marking them here is safe while
    // iterating over this bucket.
    auto bucket = std::move(dirty_[u]);
    dirty_[u].clear();
    for (VertexId v : bucket) {
      auto next = compute_cell(u, v);
      auto found = cells_.find(cell_key(u, v));
      bool changed;
      if (!next) {
        changed = found != cells_.end();
        if (changed) cells_.erase(found);
      } else if (found == cells_.end()) {
        changed = true;
        cells_.emplace(cell_key(u, v), std::move(*next));
      } else {
        changed = !(found->second == *next);
        if (changed) found->second = std::move(*next);
      }
      if (!changed) continue;
      for (EdgeIndex ep : dag_.in_edges(u)) {
        const VertexId up = dag_.parent(ep);
        for_each_match_at(u, v, ep, [&](const DataEdge& de, VertexId w, bool swapped) {
          to_check.push_back(CandidateKey{ep, de.id, swapped});
          mark_dirty(up, w);
        });
      }
    }
  }
  dirty_seen_.clear();
}

std::vector<CandidateKey> MaxMinTable::on_insert(EdgeId id) {
  const DataEdge& de = g_->edge(id);
  std::vector<CandidateKey> to_check;
  seed_from_edge(de, to_check);
  propagate(to_check);
  std::vector<CandidateKey> delta;
  for (const CandidateKey& k : to_check) {
    if (!matchable_.contains(k) && is_tc_matchable(k)) {
      matchable_.insert(k);
      delta.push_back(k);
    }
  }
  return delta;
}

std::vector<CandidateKey> MaxMinTable::on_delete(EdgeId id) {
  const DataEdge de = g_->edge(id);
  skip_edge_ = id;
  std::vector<CandidateKey> to_check;
  seed_from_edge(de, to_check);
  propagate(to_check);
  std::vector<CandidateKey> delta;
  for (const CandidateKey& k : to_check) {
    if (matchable_.contains(k) && !is_tc_matchable(k)) {
      matchable_.erase(k);
      delta.push_back(k);
    }
  }
  skip_edge_ = kNoEdge;
  return delta;
}

void MaxMinTable::rebuild() {
  cells_.clear();
  matchable_.clear();
  const auto& order = dag_.order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId u = *it;
    if (dag_.is_leaf(u)) continue;
    g_->for_each_vertex([&](VertexId v, Label) {
      if (auto cell = compute_cell(u, v)) cells_.emplace(cell_key(u, v), std::move(*cell));
    });
  }
  g_->for_each_active_edge([&](const DataEdge& de) {
    for (EdgeIndex e = 0; e < q_->edge_count(); ++e) {
      for (bool swapped : {false, true}) {
        const CandidateKey k{e, de.id, swapped};
        if (is_tc_matchable(k)) matchable_.insert(k);
      }
    }
  });
}

std::string MaxMinTable::dump() const {
  std::map<std::pair<VertexId, VertexId>, const Cell*> sorted;
  for (const auto& [key, cell] : cells_) {
    sorted.emplace(std::pair{static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xFFFFFFFFU)}, &cell);
  }
  std::ostringstream os;
  const char* o = to_string(orientation_);
  for (const auto& [uv, cell] : sorted) {
    const auto [u, v] = uv;
    for (std::size_t k = 0; k < cell->hi.size(); ++k) {
      os << "T " << o << ' ' << u << ' ' << v << ' ' << later_list_[u][k] << ' ' << cell->hi[k] << '\n';
    }
    for (std::size_t k = 0; k < cell->lo.size(); ++k) {
      os << "L " << o << ' ' << u << ' ' << v << ' ' << earlier_list_[u][k] << ' ' << cell->lo[k] << '\n';
    }
  }
  return os.str();
}

std::vector<CandidateKey> CandidateIndex::sorted_keys() const {
  std::vector<CandidateKey> out(keys_.begin(), keys_.end());
  std::sort(out.begin(), out.end());
  return out;
}

void CandidateIndex::rebuild(const TemporalGraph& g, const TemporalQuery& q) {
  keys_.clear();
  g.for_each_active_edge([&](const DataEdge& de) {
    for (EdgeIndex e = 0; e < q.edge_count(); ++e) {
      for (bool swapped : {false, true}) {
        const CandidateKey k{e, de.id, swapped};
        if (fwd_->matchable(k) && rev_->matchable(k)) keys_.insert(k);
      }
    }
  });
}

std::vector<CandidateKey> apply_delta(CandidateIndex& index, const std::vector<CandidateKey>& forward_delta,
                                      const std::vector<CandidateKey>& reverse_delta, int sign) {
  std::vector<CandidateKey> flipped;
  auto visit = [&](const CandidateKey& k) {
    if (sign > 0) {
      if (!index.keys_.contains(k) && index.fwd_->matchable(k) && index.rev_->matchable(k)) {
        index.keys_.insert(k);
        flipped.push_back(k);
      }
    } else if (index.keys_.erase(k) > 0) {
      flipped.push_back(k);
    }
  };
  for (const auto& k : forward_delta) visit(k);
  for (const auto& k : reverse_delta) visit(k);
  std::sort(flipped.begin(), flipped.end());
  return flipped;
}

}  // namespace tcsm
