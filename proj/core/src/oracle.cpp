#include "tcsm/oracle.hpp"

#include <algorithm>
#include <map>

namespace tcsm::oracle {

namespace {

// All active edges grouped by ordered endpoint pair.
std::map<std::pair<VertexId, VertexId>, std::vector<DataEdge>> edge_buckets(const TemporalGraph& g) {
  std::map<std::pair<VertexId, VertexId>, std::vector<DataEdge>> buckets;
  g.for_each_active_edge([&](const DataEdge& e) {
    buckets[{e.src, e.dst}].push_back(e);
    if (!g.directed() && e.src != e.dst) buckets[{e.dst, e.src}].push_back(e);
  });
  return buckets;
}

struct Enumerator {
  const TemporalGraph& g;
  const TemporalQuery& q;
  std::map<std::pair<VertexId, VertexId>, std::vector<DataEdge>> buckets;
  std::vector<VertexId> vorder;
  std::vector<VertexId> vmap;
  std::vector<const DataEdge*> emap;
  std::vector<Embedding> out;

  const std::vector<DataEdge>* bucket(VertexId a, VertexId b) const {
    auto it = buckets.find({a, b});
    return it == buckets.end() ? nullptr : &it->second;
  }

  void vertices(std::size_t i) {
    if (i == vorder.size()) {
      edges(0);
      return;
    }
    const VertexId u = vorder[i];
    g.for_each_vertex([&](VertexId v, Label l) {
      if (l != q.label(u)) return;
      for (std::size_t j = 0; j < i; ++j) {
        if (vmap[vorder[j]] == v) return;
      }
      // Prune on adjacency to already-placed neighbors.
      for (EdgeIndex e : q.incident(u)) {
        const QueryEdge& qe = q.edge(e);
        const VertexId w = qe.other(u);
        if (vmap[w] == kNoVertex) continue;
        const VertexId a = qe.src == u ? v : vmap[w];
        const VertexId b = qe.src == u ? vmap[w] : v;
        if (bucket(a, b) == nullptr) return;
      }
      vmap[u] = v;
      vertices(i + 1);
      vmap[u] = kNoVertex;
    });
  }

  void edges(EdgeIndex e) {
    if (e == q.edge_count()) {
      check_and_record();
      return;
    }
    const QueryEdge& qe = q.edge(e);
    const auto* b = bucket(vmap[qe.src], vmap[qe.dst]);
    if (b == nullptr) return;
    for (const DataEdge& de : *b) {
      if (de.elabel != qe.elabel) continue;
      bool used = false;
      for (EdgeIndex f = 0; f < e; ++f) used = used || emap[f]->id == de.id;
      if (used) continue;
      emap[e] = &de;
      edges(e + 1);
    }
    emap[e] = nullptr;
  }

  void check_and_record() {
    for (const auto& [a, b] : q.order().closure_pairs()) {
      if (!(emap[a]->ts < emap[b]->ts)) return;
    }
    Embedding emb;
    emb.vertices = vmap;
    for (const DataEdge* de : emap) emb.edges.push_back(de->id);
    out.push_back(std::move(emb));
  }
};

}  // namespace

std::vector<Embedding> enumerate_all(const TemporalGraph& g, const TemporalQuery& q) {
  Enumerator en{g, q, edge_buckets(g), {}, {}, {}, {}};
  en.vmap.assign(q.vertex_count(), kNoVertex);
  en.emap.assign(q.edge_count(), nullptr);
  // Breadth-first vertex order from vertex 0 keeps each new vertex adjacent
  // to an earlier one.
  std::vector<bool> seen(q.vertex_count(), false);
  en.vorder.push_back(0);
  seen[0] = true;
  for (std::size_t i = 0; i < en.vorder.size(); ++i) {
    for (EdgeIndex e : q.incident(en.vorder[i])) {
      const VertexId w = q.edge(e).other(en.vorder[i]);
      if (!seen[w]) {
        seen[w] = true;
        en.vorder.push_back(w);
      }
    }
  }
  en.vertices(0);
  std::sort(en.out.begin(), en.out.end());
  return en.out;
}

namespace {

// A node of the path tree: a query edge reached along one root path.
struct PathNode {
  EdgeIndex edge;
  VertexId from;  // query endpoint the path enters through
  VertexId to;
  std::vector<std::size_t> children;
};

struct TcWeakSearch {
  const TemporalGraph& g;
  const TemporalQuery& q;
  std::vector<DataEdge> all;
  std::vector<PathNode> nodes;
  EdgeSet later;
  EdgeSet earlier;
  Timestamp t;

  std::size_t expand(EdgeIndex e, VertexId from, const QueryDag& dag) {
    const std::size_t id = nodes.size();
    nodes.push_back(PathNode{e, from, q.edge(e).other(from), {}});
    const VertexId to = nodes[id].to;
    for (EdgeIndex c : dag.out_edges(to)) {
      const std::size_t child = expand(c, to, dag);
      nodes[id].children.push_back(child);
    }
    return id;
  }

  bool edge_ok(const DataEdge& de, EdgeIndex e) const {
    if (contains(later, e) && !(t < de.ts)) return false;
    if (contains(earlier, e) && !(de.ts < t)) return false;
    return true;
  }

  // Whether the subtree under node can be mapped with its entry vertex at x.
  bool place_children(std::size_t node, VertexId x) const {
    for (std::size_t c : nodes[node].children) {
      if (!place(c, x)) return false;
    }
    return true;
  }

  bool place(std::size_t node, VertexId at) const {
    const PathNode& n = nodes[node];
    const QueryEdge& qe = q.edge(n.edge);
    const bool from_is_src = qe.src == n.from;
    for (const DataEdge& de : all) {
      if (de.elabel != qe.elabel || de.src == de.dst) continue;
      VertexId to = kNoVertex;
      if (g.directed()) {
        if (from_is_src && de.src == at) to = de.dst;
        if (!from_is_src && de.dst == at) to = de.src;
      } else if (de.src == at || de.dst == at) {
        to = de.src == at ? de.dst : de.src;
      }
      if (to == kNoVertex || g.label(to) != q.label(n.to)) continue;
      if (!edge_ok(de, n.edge)) continue;
      if (place_children(node, to)) return true;
    }
    return false;
  }
};

}  // namespace

bool enumerate_tc_weak(const TemporalGraph& g, const TemporalQuery& q, const QueryDag& dag, EdgeIndex e,
                       EdgeId de_id, bool swapped) {
  if (!g.is_active(de_id)) return false;
  const DataEdge& de = g.edge(de_id);
  if (de.src == de.dst) return false;
  if (g.directed() && swapped) return false;
  const QueryEdge& qe = q.edge(e);
  if (qe.elabel != de.elabel) return false;
  const VertexId xs = swapped ? de.dst : de.src;
  const VertexId xd = swapped ? de.src : de.dst;
  if (g.label(xs) != q.label(qe.src) || g.label(xd) != q.label(qe.dst)) return false;

  std::vector<DataEdge> all;
  g.for_each_active_edge([&](const DataEdge& d) { all.push_back(d); });

  TcWeakSearch s{g, q, std::move(all), {}, 0, 0, de.ts};
  const EdgeSet desc = dag.below(dag.child(e));
  s.later = desc & q.order().later_than(e);
  s.earlier = desc & q.order().earlier_than(e);
  const VertexId c = dag.child(e);
  const VertexId vc = qe.src == c ? xs : xd;
  for (EdgeIndex ce : dag.out_edges(c)) {
    const std::size_t root = s.expand(ce, c, dag);
    if (!s.place(root, vc)) return false;
  }
  return true;
}

}  // namespace tcsm::oracle
