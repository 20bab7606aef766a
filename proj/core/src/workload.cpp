#include "tcsm/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tcsm::workload {

namespace {

bool walk_once(const TemporalGraph& g, std::size_t size, std::mt19937_64& rng, WalkQuery& out) {
  std::vector<DataEdge> active;
  g.for_each_active_edge([&](const DataEdge& e) {
    if (e.src != e.dst) active.push_back(e);
  });
  if (active.size() < size) return false;

  out = WalkQuery{};
  std::unordered_map<VertexId, VertexId> qid;  // data vertex -> query vertex
  std::unordered_set<EdgeId> taken;
  auto vertex_for = [&](VertexId v) {
    auto [it, fresh] = qid.emplace(v, static_cast<VertexId>(out.vertices.size()));
    if (fresh) {
      out.vertices.push_back(QueryVertex{it->second, g.label(v)});
      out.witness_vertices.push_back(v);
    }
    return it->second;
  };
  auto free_edges = [&](VertexId v) {
    std::vector<const DataEdge*> free;
    g.for_each_incident(v, [&](const DataEdge& e, VertexId) {
      if (e.src != e.dst && !taken.contains(e.id)) free.push_back(&e);
    });
    return free;
  };

  const DataEdge& first = active[std::uniform_int_distribution<std::size_t>(0, active.size() - 1)(rng)];
  VertexId at = std::bernoulli_distribution(0.5)(rng) ? first.src : first.dst;
  vertex_for(at);
  while (out.edges.size() < size) {
    auto free = free_edges(at);
    if (free.empty()) {
      std::vector<VertexId> open;
      for (VertexId w : out.witness_vertices) {
        if (!free_edges(w).empty()) open.push_back(w);
      }
      if (open.empty()) return false;
      at = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
      continue;
    }
    const DataEdge& e = *free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
    taken.insert(e.id);
    const VertexId qs = vertex_for(e.src);
    const VertexId qd = vertex_for(e.dst);
    out.edges.push_back(QueryEdge{static_cast<EdgeIndex>(out.edges.size()), qs, qd, e.elabel});
    out.witness_edges.push_back(e.id);
    out.witness_ts.push_back(e.ts);
    at = e.other(at);
  }
  return out.vertices.size() <= kMaxQueryVertices;
}

}  // namespace

WalkQuery random_walk_query(const TemporalGraph& g, std::size_t size, std::uint64_t seed, std::size_t max_attempts) {
  if (size == 0 || size > kMaxQueryEdges) throw QueryError("query size must be in 1..64");
  std::mt19937_64 rng(seed);
  WalkQuery out;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    if (walk_once(g, size, rng, out)) return out;
  }
  throw GraphError("random walk could not collect " + std::to_string(size) + " edges");
}

std::vector<OrderPair> impose_order(const std::vector<Timestamp>& witness_ts, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw QueryError("density must be within [0, 1]");
  const std::size_t m = witness_ts.size();
  std::vector<OrderPair> pairs;
  if (density == 0.0 || m < 2) return pairs;

  std::vector<EdgeIndex> by_ts(m);
  std::iota(by_ts.begin(), by_ts.end(), 0);
  std::stable_sort(by_ts.begin(), by_ts.end(), [&](EdgeIndex a, EdgeIndex b) { return witness_ts[a] < witness_ts[b]; });

  if (density == 1.0) {
    for (std::size_t i = 1; i < m; ++i) {
      if (witness_ts[by_ts[i - 1]] == witness_ts[by_ts[i]]) {
        throw QueryError("witness timestamps collide; a total order is not satisfiable");
      }
      pairs.emplace_back(by_ts[i - 1], by_ts[i]);
    }
    return pairs;
  }

  const double total = static_cast<double>(m * (m - 1) / 2);
  std::mt19937_64 rng(seed);
  std::vector<EdgeIndex> perm(m);
  std::iota(perm.begin(), perm.end(), 0);

  // Relation as bit rows: rel[a] holds b when a precedes b.
  std::vector<EdgeSet> best;
  double best_density = -1.0;
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<EdgeSet> rel(m, 0);
    std::size_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (witness_ts[perm[i]] < witness_ts[perm[j]]) {
          rel[perm[i]] |= edge_bit(perm[j]);
          ++count;
        }
      }
    }
    const double d = static_cast<double>(count) / total;
    const bool reaches = d >= density;
    const bool best_reaches = best_density >= density;
    if (best.empty() || (reaches && (!best_reaches || d < best_density)) || (!reaches && !best_reaches && d > best_density)) {
      best = std::move(rel);
      best_density = d;
    }
  }

  // Thin by removing covering pairs; the relation stays transitive.
  std::size_t count = 0;
  for (EdgeSet s : best) count += static_cast<std::size_t>(popcount(s));
  auto covers = [&] {
    std::vector<OrderPair> c;
    for (EdgeIndex a = 0; a < m; ++a) {
      for_each_edge(best[a], [&](EdgeIndex b) {
        bool between = false;
        for_each_edge(best[a], [&](EdgeIndex x) { between = between || contains(best[x], b); });
        if (!between) c.emplace_back(a, b);
      });
    }
    return c;
  };
  while (count > 0) {
    const double now = static_cast<double>(count) / total;
    const double after = static_cast<double>(count - 1) / total;
    if (std::abs(after - density) >= std::abs(now - density)) break;
    auto c = covers();
    const auto [a, b] = c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)];
    best[a] &= ~edge_bit(b);
    --count;
  }
  return covers();
}

SynthStream synth_stream_data(const SynthParams& p) {
  if (p.n_vertices < 2 || p.label_count == 0) throw Error("synthetic stream needs >= 2 vertices and >= 1 label");
  if (p.parallel_edge_rate < 0.0) throw Error("parallel edge rate must be non-negative");
  std::mt19937_64 rng(p.seed);
  SynthStream s;
  std::uniform_int_distribution<Label> label(0, static_cast<Label>(p.label_count - 1));
  for (VertexId v = 0; v < p.n_vertices; ++v) s.vertices.emplace_back(v, label(rng));

  std::uniform_int_distribution<VertexId> vertex(0, static_cast<VertexId>(p.n_vertices - 1));
  std::bernoulli_distribution reuse(p.parallel_edge_rate / (1.0 + p.parallel_edge_rate));
  constexpr std::size_t kRecent = 64;
  std::vector<std::pair<VertexId, VertexId>> recent;
  for (std::size_t i = 0; i < p.n_edges; ++i) {
    std::pair<VertexId, VertexId> ends;
    if (!recent.empty() && reuse(rng)) {
      ends = recent[std::uniform_int_distribution<std::size_t>(0, recent.size() - 1)(rng)];
    } else {
      ends.first = vertex(rng);
      do {
        ends.second = vertex(rng);
      } while (ends.second == ends.first);
      if (recent.size() < kRecent) {
        recent.push_back(ends);
      } else {
        recent[i % kRecent] = ends;
      }
    }
    s.edges.push_back(StreamEdge{ends.first, ends.second, kNoLabel, static_cast<Timestamp>(i + 1)});
  }
  return s;
}

std::string synth_stream(const SynthParams& p) {
  const SynthStream s = synth_stream_data(p);
  std::ostringstream os;
  os << "# synthetic stream: vertices=" << p.n_vertices << " edges=" << p.n_edges << " labels=" << p.label_count
     << " parallel_rate=" << p.parallel_edge_rate << " seed=" << p.seed << '\n';
  for (const auto& [v, l] : s.vertices) os << "v " << v << " L" << l << '\n';
  for (const StreamEdge& e : s.edges) os << "e " << e.src << ' ' << e.dst << " - " << e.ts << '\n';
  return os.str();
}

}  // namespace tcsm::workload
