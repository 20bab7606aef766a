#include "tcsm/query.hpp"

#include <numeric>
#include <set>

namespace tcsm {

TemporalOrder TemporalOrder::build(std::size_t edge_count, const std::vector<OrderPair>& direct_pairs) {
  if (edge_count > kMaxQueryEdges) throw QueryError("too many query edges for a temporal order");
  TemporalOrder order;
  order.direct_ = direct_pairs;
  order.later_.assign(edge_count, 0);
  order.earlier_.assign(edge_count, 0);
  for (const auto& [a, b] : direct_pairs) {
    if (a >= edge_count || b >= edge_count) {
      throw QueryError("order pair (" + std::to_string(a) + "," + std::to_string(b) + ") references an unknown edge");
    }
    order.later_[a] |= edge_bit(b);
  }
  // Warshall over bit rows.
  for (std::size_t k = 0; k < edge_count; ++k) {
    for (std::size_t i = 0; i < edge_count; ++i) {
      if (contains(order.later_[i], static_cast<EdgeIndex>(k))) order.later_[i] |= order.later_[k];
    }
  }
  for (std::size_t i = 0; i < edge_count; ++i) {
    if (contains(order.later_[i], static_cast<EdgeIndex>(i))) {
      throw QueryError("temporal order has a cycle through edge " + std::to_string(i));
    }
    for_each_edge(order.later_[i], [&](EdgeIndex j) { order.earlier_[j] |= edge_bit(static_cast<EdgeIndex>(i)); });
  }
  return order;
}

std::vector<OrderPair> TemporalOrder::closure_pairs() const {
  std::vector<OrderPair> pairs;
  for (EdgeIndex a = 0; a < later_.size(); ++a) {
    for_each_edge(later_[a], [&](EdgeIndex b) { pairs.emplace_back(a, b); });
  }
  return pairs;
}

std::size_t TemporalOrder::related_pair_count() const {
  std::size_t n = 0;
  for (EdgeSet s : later_) n += static_cast<std::size_t>(popcount(s));
  return n;
}

double TemporalOrder::density() const {
  const std::size_t m = later_.size();
  if (m < 2) throw QueryError("density needs at least two query edges");
  return static_cast<double>(related_pair_count()) / static_cast<double>(m * (m - 1) / 2);
}

std::vector<std::string> validate_query(const std::vector<QueryVertex>& vertices,
                                        const std::vector<QueryEdge>& edges,
                                        const std::vector<OrderPair>& order_pairs) {
  std::vector<std::string> problems;
  const std::size_t n = vertices.size();
  if (n == 0) problems.push_back("query has no vertices");
  if (n > kMaxQueryVertices) problems.push_back("query has more than 64 vertices");
  if (edges.empty()) problems.push_back("query has no edges");
  if (edges.size() > kMaxQueryEdges) problems.push_back("query has more than 64 edges");

  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i].id != i) {
      problems.push_back("query vertex ids must be 0.." + std::to_string(n - 1) + " in order; found " +
                         std::to_string(vertices[i].id) + " at position " + std::to_string(i));
    }
    if (vertices[i].label == kNoLabel) problems.push_back("query vertex " + std::to_string(i) + " has no label");
  }

  bool endpoints_ok = true;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const QueryEdge& e = edges[i];
    if (e.id != i) {
      problems.push_back("query edge ids must be 0.." + std::to_string(edges.size() - 1) + " in order; found " +
                         std::to_string(e.id) + " at position " + std::to_string(i));
    }
    if (e.src >= n || e.dst >= n) {
      problems.push_back("query edge " + std::to_string(e.id) + " has an unknown endpoint");
      endpoints_ok = false;
    } else if (e.src == e.dst) {
      problems.push_back("query edge " + std::to_string(e.id) + " is a self-loop");
    }
  }

  if (endpoints_ok && n > 0 && n <= kMaxQueryVertices) {
    std::vector<VertexId> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexId x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const QueryEdge& e : edges) parent[find(e.src)] = find(e.dst);
    std::set<VertexId> components;
    for (VertexId u = 0; u < n; ++u) components.insert(find(u));
    if (components.size() > 1) problems.push_back("query graph is not connected");
  }

  if (edges.size() <= kMaxQueryEdges) {
    try {
      TemporalOrder::build(edges.size(), order_pairs);
    } catch (const QueryError& err) {
      problems.emplace_back(err.what());
    }
  }
  return problems;
}

TemporalQuery::TemporalQuery(std::vector<QueryVertex> vertices, std::vector<QueryEdge> edges,
                             const std::vector<OrderPair>& order_pairs)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const auto problems = validate_query(vertices_, edges_, order_pairs);
  if (!problems.empty()) {
    std::string msg = "invalid query:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw QueryError(msg);
  }
  order_ = TemporalOrder::build(edges_.size(), order_pairs);
  incident_.assign(vertices_.size(), {});
  for (const QueryEdge& e : edges_) {
    incident_[e.src].push_back(e.id);
    incident_[e.dst].push_back(e.id);
  }
  parallels_.assign(edges_.size(), 0);
  for (const QueryEdge& e : edges_) parallels_[e.id] = between(e.src, e.dst) & ~edge_bit(e.id);
}

EdgeSet TemporalQuery::all_edges() const {
  return edges_.size() == 64 ? ~EdgeSet{0} : edge_bit(static_cast<EdgeIndex>(edges_.size())) - 1;
}

EdgeSet TemporalQuery::between(VertexId a, VertexId b) const {
  EdgeSet s = 0;
  for (EdgeIndex e : incident_.at(a)) {
    if (edges_[e].other(a) == b) s |= edge_bit(e);
  }
  return s;
}

}  // namespace tcsm
