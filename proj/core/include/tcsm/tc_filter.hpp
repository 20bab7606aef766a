#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tcsm/query.hpp"
#include "tcsm/query_dag.hpp"
#include "tcsm/temporal_graph.hpp"

namespace tcsm {

enum class Orientation { forward, reverse };

const char* to_string(Orientation o);

/// A query edge paired with a data edge and the way its endpoints line up.
/// swapped means the query edge's src maps to the data edge's dst.
struct CandidateKey {
  EdgeIndex qedge = 0;
  EdgeId dedge = kNoEdge;
  bool swapped = false;

  friend bool operator==(const CandidateKey&, const CandidateKey&) = default;
  friend auto operator<=>(const CandidateKey&, const CandidateKey&) = default;
};

struct CandidateKeyHash {
  std::size_t operator()(const CandidateKey& k) const noexcept {
    std::uint64_t h = k.dedge * 0x9E3779B97F4A7C15ULL;
    h ^= (std::uint64_t{k.qedge} << 1 | (k.swapped ? 1U : 0U)) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Data vertices that the query edge's src and dst map to under the key.
std::pair<VertexId, VertexId> assigned_endpoints(const DataEdge& de, bool swapped);

// Label, edge-label and direction compatibility of a query edge with a data
// edge under the given endpoint assignment. Data self-loops never match.
bool edge_compatible(const TemporalQuery& q, const TemporalGraph& g, EdgeIndex e, const DataEdge& de, bool swapped);

/// Max-min timestamps of one DAG orientation, kept consistent with the
/// active graph across insertions and expirations.
///
/// For a query vertex u and data vertex v the table stores, per tracked query
/// edge e, the largest over weak embeddings of the sub-DAG at (u, v) of the
/// smallest timestamp among e's later-constrained descendants (value), and
/// the smallest over weak embeddings of the largest timestamp among e's
/// earlier-constrained descendants (lower). Cells exist only where a weak
/// embedding exists; leaf vertices are never stored.
class MaxMinTable {
 public:
  MaxMinTable(const TemporalQuery& q, QueryDag dag, Orientation o, const TemporalGraph& g);

  Orientation orientation() const { return orientation_; }
  const QueryDag& dag() const { return dag_; }

  // Call after the edge is in the graph. Returns keys that became matchable.
  std::vector<CandidateKey> on_insert(EdgeId id);
  // Call while the edge is still in the graph. Returns keys that stopped
  // being matchable, the dying edge's own keys included.
  std::vector<CandidateKey> on_delete(EdgeId id);
  // Recompute everything from the current graph.
  void rebuild();

  bool exists(VertexId u, VertexId v) const;
  ExtTimestamp value(VertexId u, VertexId v, EdgeIndex e) const;
  ExtTimestamp lower(VertexId u, VertexId v, EdgeIndex e) const;
  // One step of the recurrence at (u, v) from the stored child entries.
  ExtTimestamp recompute_entry(VertexId u, VertexId v, EdgeIndex e) const;
  ExtTimestamp recompute_lower(VertexId u, VertexId v, EdgeIndex e) const;

  // Edges e whose entries are stored at u.
  EdgeSet tracked_later(VertexId u) const { return tracked_later_.at(u); }
  EdgeSet tracked_earlier(VertexId u) const { return tracked_earlier_.at(u); }

  // Constant-time membership test against the child endpoint's entries.
  bool is_tc_matchable(const CandidateKey& k) const;
  bool is_tc_matchable(EdgeIndex e, EdgeId data_edge, bool swapped) const {
    return is_tc_matchable(CandidateKey{e, data_edge, swapped});
  }
  // Result of the last update for k (kept as a set).
  bool matchable(const CandidateKey& k) const { return matchable_.contains(k); }
  std::size_t matchable_count() const { return matchable_.size(); }
  std::size_t stored_cells() const { return cells_.size(); }

  // One line per stored entry: "T <orient> <u> <v> <e> <value>" for value
  // entries and "L <orient> <u> <v> <e> <value>" for lower entries, sorted.
  std::string dump() const;

 private:
  struct Cell {
    std::vector<ExtTimestamp> hi;
    std::vector<ExtTimestamp> lo;
    friend bool operator==(const Cell&, const Cell&) = default;
  };

  static std::uint64_t cell_key(VertexId u, VertexId v) { return std::uint64_t{u} << 32 | v; }
  std::optional<Cell> compute_cell(VertexId u, VertexId v) const;
  // f(const DataEdge&, VertexId other, bool swapped) for each active data
  // edge at v that can carry query edge e with u mapped to v.
  template <class F>
  void for_each_match_at(VertexId u, VertexId v, EdgeIndex e, F&& f) const;
  void mark_dirty(VertexId u, VertexId v);
  void seed_from_edge(const DataEdge& de, std::vector<CandidateKey>& to_check);
  void propagate(std::vector<CandidateKey>& to_check);

  const TemporalQuery* q_;
  QueryDag dag_;
  Orientation orientation_;
  const TemporalGraph* g_;

  std::vector<EdgeSet> tracked_later_;
  std::vector<EdgeSet> tracked_earlier_;
  std::vector<std::vector<int>> slot_later_;    // [u][e] -> index in Cell::hi or -1
  std::vector<std::vector<int>> slot_earlier_;  // [u][e] -> index in Cell::lo or -1
  std::vector<std::vector<EdgeIndex>> later_list_;
  std::vector<std::vector<EdgeIndex>> earlier_list_;

  std::unordered_map<std::uint64_t, Cell> cells_;
  std::unordered_set<CandidateKey, CandidateKeyHash> matchable_;

  // Scratch state of one update.
  EdgeId skip_edge_ = kNoEdge;
  std::vector<std::vector<VertexId>> dirty_;
  std::unordered_set<std::uint64_t> dirty_seen_;
};

/// Keys matchable in both orientations, plus per-vertex candidate flags
/// derived from weak-embedding existence in both orientations.
class CandidateIndex {
 public:
  CandidateIndex(const MaxMinTable& forward, const MaxMinTable& reverse) : fwd_(&forward), rev_(&reverse) {}

  bool contains(const CandidateKey& k) const { return keys_.contains(k); }
  bool vertex_candidate(VertexId u, VertexId v) const { return fwd_->exists(u, v) && rev_->exists(u, v); }
  std::size_t size() const { return keys_.size(); }
  std::vector<CandidateKey> sorted_keys() const;
  // Recompute membership from the two tables' matchable sets.
  void rebuild(const TemporalGraph& g, const TemporalQuery& q);

 private:
  friend std::vector<CandidateKey> apply_delta(CandidateIndex&, const std::vector<CandidateKey>&,
                                               const std::vector<CandidateKey>&, int);
  const MaxMinTable* fwd_;
  const MaxMinTable* rev_;
  std::unordered_set<CandidateKey, CandidateKeyHash> keys_;
};

// sign > 0 after an insertion, sign < 0 after an expiration update. Returns
// the keys whose membership flipped, sorted.
std::vector<CandidateKey> apply_delta(CandidateIndex& index, const std::vector<CandidateKey>& forward_delta,
                                      const std::vector<CandidateKey>& reverse_delta, int sign);

}  // namespace tcsm
