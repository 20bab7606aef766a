#include "tcsm/query_dag.hpp"

#include <algorithm>

namespace tcsm {

QueryDag::QueryDag(const TemporalQuery& q, std::vector<VertexId> parent_of, std::vector<VertexId> vertex_order)
    : parent_of_(std::move(parent_of)), order_(std::move(vertex_order)) {
  const std::size_t n = q.vertex_count();
  const std::size_t m = q.edge_count();
  if (parent_of_.size() != m) throw QueryError("orientation must cover every query edge");
  if (order_.size() != n) throw QueryError("vertex order must list every query vertex");

  rank_.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order_[i] >= n || rank_[order_[i]] != n) throw QueryError("vertex order is not a permutation");
    rank_[order_[i]] = i;
  }

  child_of_.resize(m);
  children_.assign(n, {});
  parents_.assign(n, {});
  for (EdgeIndex e = 0; e < m; ++e) {
    const QueryEdge& qe = q.edge(e);
    if (parent_of_[e] != qe.src && parent_of_[e] != qe.dst) {
      throw QueryError("orientation of edge " + std::to_string(e) + " names a non-endpoint");
    }
    child_of_[e] = qe.other(parent_of_[e]);
    if (rank_[parent_of_[e]] >= rank_[child_of_[e]]) {
      throw QueryError("orientation of edge " + std::to_string(e) + " disagrees with the vertex order");
    }
    children_[parent_of_[e]].push_back(e);
    parents_[child_of_[e]].push_back(e);
  }
  for (VertexId u : order_) {
    if (parents_[u].empty()) roots_.push_back(u);
  }

  below_.assign(n, 0);
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    for (EdgeIndex e : children_[*it]) below_[*it] |= edge_bit(e) | below_[child_of_[e]];
  }
  above_.assign(n, 0);
  for (VertexId u : order_) {
    for (EdgeIndex e : parents_[u]) above_[u] |= edge_bit(e) | above_[parent_of_[e]];
  }

  const TemporalOrder& ord = q.order();
  later_desc_.assign(m, 0);
  earlier_desc_.assign(m, 0);
  for (EdgeIndex e = 0; e < m; ++e) {
    const EdgeSet desc = below_[child_of_[e]];
    later_desc_[e] = desc & ord.later_than(e);
    earlier_desc_[e] = desc & ord.earlier_than(e);
    for_each_edge(later_desc_[e] | earlier_desc_[e], [&](EdgeIndex d) { ta_pairs_.emplace_back(e, d); });
  }
}

namespace {

// Number of (ancestor, descendant) related pairs among the oriented edges.
// oriented[e] is the parent endpoint of e or kNoVertex when e is not yet
// part of the partial orientation.
std::size_t count_pairs(const TemporalQuery& q, const std::vector<VertexId>& oriented) {
  const std::size_t n = q.vertex_count();
  std::vector<std::vector<EdgeIndex>> out(n);
  for (EdgeIndex e = 0; e < oriented.size(); ++e) {
    if (oriented[e] != kNoVertex) out[oriented[e]].push_back(e);
  }
  std::size_t total = 0;
  for (EdgeIndex e = 0; e < oriented.size(); ++e) {
    if (oriented[e] == kNoVertex) continue;
    EdgeSet reach = 0;
    std::vector<bool> seen(n, false);
    std::vector<VertexId> stack{q.edge(e).other(oriented[e])};
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = true;
      for (EdgeIndex d : out[u]) {
        reach |= edge_bit(d);
        stack.push_back(q.edge(d).other(u));
      }
    }
    total += static_cast<std::size_t>(popcount(reach & q.order().related_to(e)));
  }
  return total;
}

// Orientation state after placing the given vertices: every edge with a
// placed endpoint points away from the earlier-placed endpoint.
std::vector<VertexId> orientation_for(const TemporalQuery& q, const std::vector<std::size_t>& placed_rank) {
  std::vector<VertexId> oriented(q.edge_count(), kNoVertex);
  for (const QueryEdge& e : q.edges()) {
    const std::size_t rs = placed_rank[e.src];
    const std::size_t rd = placed_rank[e.dst];
    if (rs == SIZE_MAX && rd == SIZE_MAX) continue;
    oriented[e.id] = rs < rd ? e.src : e.dst;
  }
  return oriented;
}

}  // namespace

QueryDag build_dag(const TemporalQuery& q, VertexId r, DagBuildTrace* trace) {
  const std::size_t n = q.vertex_count();
  if (r >= n) throw QueryError("root " + std::to_string(r) + " is not a query vertex");

  std::vector<std::size_t> placed_rank(n, SIZE_MAX);
  std::vector<VertexId> order;
  std::vector<VertexId> cand;  // in insertion order
  std::vector<bool> in_cand(n, false);

  auto place = [&](VertexId u) {
    placed_rank[u] = order.size();
    order.push_back(u);
    for (EdgeIndex e : q.incident(u)) {
      const VertexId w = q.edge(e).other(u);
      if (placed_rank[w] == SIZE_MAX && !in_cand[w]) {
        in_cand[w] = true;
        cand.push_back(w);
      }
    }
  };

  place(r);
  std::size_t current = count_pairs(q, orientation_for(q, placed_rank));
  if (trace) trace->placed.emplace_back(r, current);

  while (!cand.empty()) {
    std::size_t best_pos = 0;
    std::size_t best_score = 0;
    std::vector<std::pair<VertexId, std::size_t>> scores;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      placed_rank[cand[i]] = order.size();
      const std::size_t with = count_pairs(q, orientation_for(q, placed_rank));
      placed_rank[cand[i]] = SIZE_MAX;
      const std::size_t score = with - current;
      scores.emplace_back(cand[i], score);
      if (i == 0 || score > best_score) {
        best_pos = i;
        best_score = score;
      }
    }
    if (trace) trace->candidate_scores.push_back(std::move(scores));
    const VertexId u = cand[best_pos];
    cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(best_pos));
    in_cand[u] = false;
    place(u);
    current += best_score;
    if (trace) trace->placed.emplace_back(u, best_score);
  }

  if (order.size() != n) throw QueryError("query graph is not connected");

  std::vector<VertexId> parent_of(q.edge_count());
  for (const QueryEdge& e : q.edges()) parent_of[e.id] = placed_rank[e.src] < placed_rank[e.dst] ? e.src : e.dst;
  return QueryDag(q, std::move(parent_of), std::move(order));
}

QueryDag best_dag(const TemporalQuery& q) {
  QueryDag best = build_dag(q, 0);
  for (VertexId r = 1; r < q.vertex_count(); ++r) {
    QueryDag d = build_dag(q, r);
    if (d.score() > best.score()) best = std::move(d);
  }
  return best;
}

QueryDag reverse(const TemporalQuery& q, const QueryDag& dag) {
  std::vector<VertexId> parent_of(dag.edge_count());
  for (EdgeIndex e = 0; e < dag.edge_count(); ++e) parent_of[e] = dag.child(e);
  std::vector<VertexId> order(dag.order().rbegin(), dag.order().rend());
  return QueryDag(q, std::move(parent_of), std::move(order));
}

std::vector<OrderPair> temporal_ancestor_pairs(const TemporalQuery& q, const QueryDag& dag) {
  std::vector<OrderPair> pairs;
  for (EdgeIndex e = 0; e < dag.edge_count(); ++e) {
    std::vector<bool> seen(q.vertex_count(), false);
    std::vector<VertexId> stack{dag.child(e)};
    EdgeSet reach = 0;
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = true;
      for (EdgeIndex d : dag.out_edges(u)) {
        reach |= edge_bit(d);
        stack.push_back(dag.child(d));
      }
    }
    for_each_edge(reach & q.order().related_to(e), [&](EdgeIndex d) { pairs.emplace_back(e, d); });
  }
  return pairs;
}

}  // namespace tcsm
