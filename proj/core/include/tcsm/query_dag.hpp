#pragma once

#include <cstddef>
#include <vector>

#include "tcsm/query.hpp"

namespace tcsm {

/// Acyclic orientation of a query graph. A DAG produced by build_dag has a
/// single root; its reversal may have several, all kept in roots().
class QueryDag {
 public:
  QueryDag() = default;
  // parent_of[e] is the endpoint of query edge e that the orientation starts
  // from; vertex_order lists every query vertex so that edges point forward.
  // Throws QueryError when the orientation disagrees with the order.
  QueryDag(const TemporalQuery& q, std::vector<VertexId> parent_of, std::vector<VertexId> vertex_order);

  std::size_t vertex_count() const { return children_.size(); }
  std::size_t edge_count() const { return parent_of_.size(); }

  VertexId parent(EdgeIndex e) const { return parent_of_.at(e); }
  VertexId child(EdgeIndex e) const { return child_of_.at(e); }
  // Edges leaving / entering u in the orientation.
  const std::vector<EdgeIndex>& out_edges(VertexId u) const { return children_.at(u); }
  const std::vector<EdgeIndex>& in_edges(VertexId u) const { return parents_.at(u); }
  bool is_leaf(VertexId u) const { return children_.at(u).empty(); }

  const std::vector<VertexId>& roots() const { return roots_; }
  VertexId root() const { return roots_.front(); }
  const std::vector<VertexId>& order() const { return order_; }
  std::size_t rank(VertexId u) const { return rank_.at(u); }

  // Edges of the sub-DAG reachable from u.
  EdgeSet below(VertexId u) const { return below_.at(u); }
  // Edges e whose child is u or an ancestor of u.
  EdgeSet above(VertexId u) const { return above_.at(u); }
  // Temporal descendants of e that must be later / earlier than e.
  EdgeSet later_descendants(EdgeIndex e) const { return later_desc_.at(e); }
  EdgeSet earlier_descendants(EdgeIndex e) const { return earlier_desc_.at(e); }

  const std::vector<OrderPair>& ta_pairs() const { return ta_pairs_; }
  std::size_t score() const { return ta_pairs_.size(); }

 private:
  std::vector<VertexId> parent_of_;
  std::vector<VertexId> child_of_;
  std::vector<std::vector<EdgeIndex>> children_;
  std::vector<std::vector<EdgeIndex>> parents_;
  std::vector<VertexId> roots_;
  std::vector<VertexId> order_;
  std::vector<std::size_t> rank_;
  std::vector<EdgeSet> below_;
  std::vector<EdgeSet> above_;
  std::vector<EdgeSet> later_desc_;
  std::vector<EdgeSet> earlier_desc_;
  std::vector<OrderPair> ta_pairs_;
};

struct DagBuildTrace {
  // Score of each vertex at the moment it was placed, in placement order.
  std::vector<std::pair<VertexId, std::size_t>> placed;
  // Scores of all pending candidates right before each placement.
  std::vector<std::vector<std::pair<VertexId, std::size_t>>> candidate_scores;
};

// Greedy orientation rooted at r that favors temporal ancestor pairs.
QueryDag build_dag(const TemporalQuery& q, VertexId r, DagBuildTrace* trace = nullptr);
// build_dag over every root; highest score wins, ties go to the smallest root.
QueryDag best_dag(const TemporalQuery& q);
QueryDag reverse(const TemporalQuery& q, const QueryDag& dag);
// (e1, e2) with e1 an ancestor edge of e2 and the two temporally related,
// recomputed from scratch by reachability.
std::vector<OrderPair> temporal_ancestor_pairs(const TemporalQuery& q, const QueryDag& dag);

}  // namespace tcsm
