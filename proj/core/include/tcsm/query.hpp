#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tcsm/types.hpp"

namespace tcsm {

struct QueryVertex {
  VertexId id = kNoVertex;
  Label label = kNoLabel;
};

struct QueryEdge {
  EdgeIndex id = 0;
  VertexId src = kNoVertex;
  VertexId dst = kNoVertex;
  Label elabel = kNoLabel;

  VertexId other(VertexId u) const { return u == src ? dst : src; }
};

using OrderPair = std::pair<EdgeIndex, EdgeIndex>;

/// Strict partial order on query edges, stored as its transitive closure.
class TemporalOrder {
 public:
  TemporalOrder() = default;

  // Throws QueryError on a cycle or an edge id >= edge_count.
  static TemporalOrder build(std::size_t edge_count, const std::vector<OrderPair>& direct_pairs);

  std::size_t edge_count() const { return later_.size(); }
  bool precedes(EdgeIndex a, EdgeIndex b) const { return contains(later_.at(a), b); }
  bool related(EdgeIndex a, EdgeIndex b) const { return precedes(a, b) || precedes(b, a); }

  // Edges that must carry a larger (later_than) or smaller (earlier_than) timestamp than e.
  EdgeSet later_than(EdgeIndex e) const { return later_.at(e); }
  EdgeSet earlier_than(EdgeIndex e) const { return earlier_.at(e); }
  EdgeSet related_to(EdgeIndex e) const { return later_.at(e) | earlier_.at(e); }

  const std::vector<OrderPair>& direct_pairs() const { return direct_; }
  std::vector<OrderPair> closure_pairs() const;
  std::size_t related_pair_count() const;
  // Related unordered pairs over all unordered pairs. Needs at least two edges.
  double density() const;

  friend bool operator==(const TemporalOrder& a, const TemporalOrder& b) {
    return a.later_ == b.later_;
  }

 private:
  std::vector<OrderPair> direct_;
  std::vector<EdgeSet> later_;
  std::vector<EdgeSet> earlier_;
};

// Every problem found in a query description; empty when valid.
std::vector<std::string> validate_query(const std::vector<QueryVertex>& vertices,
                                        const std::vector<QueryEdge>& edges,
                                        const std::vector<OrderPair>& order_pairs);

/// Connected query graph whose vertex and edge ids are dense from 0, plus a
/// temporal order on its edges. Immutable after construction.
class TemporalQuery {
 public:
  TemporalQuery() = default;
  // Throws QueryError listing every problem reported by validate_query.
  TemporalQuery(std::vector<QueryVertex> vertices, std::vector<QueryEdge> edges,
                const std::vector<OrderPair>& order_pairs);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  Label label(VertexId u) const { return vertices_.at(u).label; }
  const QueryVertex& vertex(VertexId u) const { return vertices_.at(u); }
  const QueryEdge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::vector<QueryVertex>& vertices() const { return vertices_; }
  const std::vector<QueryEdge>& edges() const { return edges_; }
  const std::vector<EdgeIndex>& incident(VertexId u) const { return incident_.at(u); }
  const TemporalOrder& order() const { return order_; }
  EdgeSet all_edges() const;

  // Edges joining a and b in either direction.
  EdgeSet between(VertexId a, VertexId b) const;
  // Other edges with the same endpoint pair as e.
  EdgeSet parallels(EdgeIndex e) const { return parallels_.at(e); }

 private:
  std::vector<QueryVertex> vertices_;
  std::vector<QueryEdge> edges_;
  std::vector<std::vector<EdgeIndex>> incident_;
  std::vector<EdgeSet> parallels_;
  TemporalOrder order_;
};

}  // namespace tcsm
