#include "fixtures.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "tcsm/oracle.hpp"
#include "tcsm/workload.hpp"

namespace tcsm::testing {

TemporalQuery running_query() {
  std::vector<QueryVertex> vs{{0, A}, {1, B}, {2, C}, {3, D}, {4, E}};
  std::vector<QueryEdge> es{
      {0, 0, 1, kNoLabel}, {1, 0, 2, kNoLabel}, {2, 1, 3, kNoLabel},
      {3, 2, 3, kNoLabel}, {4, 3, 4, kNoLabel}, {5, 2, 4, kNoLabel},
  };
  return TemporalQuery(vs, es, {{0, 2}, {0, 4}, {1, 3}, {1, 4}, {1, 5}, {3, 5}});
}

std::vector<std::pair<VertexId, Label>> running_vertices() {
  return {{1, A}, {2, B}, {3, C}, {4, C}, {5, D}, {6, E}, {7, E}};
}

std::vector<StreamEdge> running_edges() {
  const std::pair<VertexId, VertexId> ends[] = {
      {1, 2}, {3, 5}, {3, 5}, {1, 3}, {3, 6}, {1, 2}, {4, 7},
      {1, 4}, {5, 6}, {5, 7}, {2, 5}, {1, 4}, {4, 5}, {4, 7},
  };
  std::vector<StreamEdge> out;
  Timestamp ts = 1;
  for (const auto& [s, d] : ends) out.push_back(StreamEdge{s, d, kNoLabel, ts++});
  return out;
}

TemporalGraph running_graph(int upto) {
  TemporalGraph g;
  for (const auto& [v, l] : running_vertices()) g.add_vertex(v, l);
  const auto edges = running_edges();
  for (int i = 0; i < upto; ++i) g.insert_edge(edges[i].src, edges[i].dst, edges[i].elabel, edges[i].ts);
  return g;
}

TemporalQuery pruning_query() {
  std::vector<QueryVertex> vs;
  const Label labels[] = {A, B, C, D, E, F, G, H};
  for (VertexId u = 0; u < 8; ++u) vs.push_back({u, labels[u]});
  std::vector<QueryEdge> es;
  for (EdgeIndex e = 0; e < 7; ++e) es.push_back({e, e, e + 1, kNoLabel});
  // eps3 < eps4, eps5 < eps2, eps2 < eps7
  return TemporalQuery(vs, es, {{2, 3}, {4, 1}, {1, 6}});
}

TemporalGraph pruning_graph() {
  TemporalGraph g;
  const Label labels[] = {A, B, C, D, E, F, G, H};
  for (VertexId v = 1; v <= 8; ++v) g.add_vertex(v, labels[v - 1]);
  g.add_vertex(9, C);  // second C vertex next to v2 and v4
  const std::tuple<VertexId, VertexId, Timestamp> edges[] = {
      {3, 4, 2}, {4, 5, 3}, {4, 5, 4}, {3, 4, 5}, {3, 4, 6}, {5, 6, 7}, {2, 3, 8},
      {6, 7, 9}, {2, 9, 10}, {2, 9, 11}, {9, 4, 12}, {7, 8, 14}, {1, 2, 15},
  };
  for (const auto& [s, d, t] : edges) g.insert_edge(s, d, kNoLabel, t);
  return g;
}

EdgeId edge_with_ts(const TemporalGraph& g, Timestamp ts) {
  EdgeId found = kNoEdge;
  g.for_each_active_edge([&](const DataEdge& e) {
    if (e.ts == ts) found = e.id;
  });
  return found;
}

std::optional<RandomInstance> random_instance(std::uint64_t seed, std::size_t query_edges, double density,
                                              bool directed, std::uint64_t max_reports) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

  workload::SynthParams p;
  p.n_vertices = pick(5, 10);
  p.n_edges = pick(20, 55);
  p.label_count = pick(1, 4);
  p.parallel_edge_rate = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
  p.seed = seed;
  const workload::SynthStream s = workload::synth_stream_data(p);

  RandomInstance inst;
  inst.vertices = s.vertices;
  inst.edges = s.edges;
  // Stretch timestamps a little so equal timestamps occur.
  for (auto& e : inst.edges) e.ts = (e.ts + 1) / 2;
  inst.window = pick(8, 20);
  inst.density = density;

  // Walk the snapshot in the middle of the stream.
  TemporalGraph g(directed);
  for (const auto& [v, l] : inst.vertices) g.add_vertex(v, l);
  const std::size_t stop = pick(inst.edges.size() / 3, inst.edges.size() - 1);
  for (std::size_t i = 0; i <= stop; ++i) {
    const auto& e = inst.edges[i];
    if (e.ts + inst.window > inst.edges[stop].ts) g.insert_edge(e.src, e.dst, e.elabel, e.ts);
  }
  for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
    try {
      auto w = workload::random_walk_query(g, query_edges, seed + attempt, 8);
      auto order = workload::impose_order(w.witness_ts, density, seed + attempt);
      inst.query = TemporalQuery(w.vertices, w.edges, order);
      EngineOptions o;
      o.directed = directed;
      o.count_only = true;
      o.limit = max_reports + 1;
      if (run_engine(inst, o).stats.hit_limit) return std::nullopt;
      return inst;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

namespace {

struct Dp {
  const TemporalGraph& g;
  const TemporalQuery& q;
  const QueryDag& dag;
  struct Entry {
    std::vector<ExtTimestamp> hi, lo;
  };
  std::map<std::pair<VertexId, VertexId>, std::optional<Entry>> memo;
  std::vector<DataEdge> edges;

  const std::optional<Entry>& at(VertexId u, VertexId v) {
    auto it = memo.find({u, v});
    if (it != memo.end()) return it->second;
    auto value = compute(u, v);
    return memo.emplace(std::pair{u, v}, std::move(value)).first->second;
  }

  std::optional<Entry> compute(VertexId u, VertexId v) {
    if (g.label(v) != q.label(u)) return std::nullopt;
    const std::size_t m = q.edge_count();
    Entry out{std::vector<ExtTimestamp>(m, ExtTimestamp::pos_inf()),
              std::vector<ExtTimestamp>(m, ExtTimestamp::neg_inf())};
    for (EdgeIndex ec : dag.out_edges(u)) {
      const QueryEdge& qe = q.edge(ec);
      const VertexId uc = dag.child(ec);
      std::vector<ExtTimestamp> best_hi(m, ExtTimestamp::neg_inf());
      std::vector<ExtTimestamp> best_lo(m, ExtTimestamp::pos_inf());
      bool any = false;
      for (const DataEdge& de : edges) {
        if (de.src == de.dst || de.elabel != qe.elabel) continue;
        VertexId w = kNoVertex;
        if (g.directed()) {
          if (qe.src == u && de.src == v) w = de.dst;
          if (qe.dst == u && de.dst == v) w = de.src;
        } else if (de.src == v || de.dst == v) {
          w = de.src == v ? de.dst : de.src;
        }
        if (w == kNoVertex) continue;
        const auto& child = at(uc, w);
        if (!child) continue;
        any = true;
        const ExtTimestamp t(de.ts);
        for (EdgeIndex e = 0; e < m; ++e) {
          ExtTimestamp x = child->hi[e];
          if (q.order().precedes(e, ec)) x = std::min(x, t);
          best_hi[e] = std::max(best_hi[e], x);
          ExtTimestamp y = child->lo[e];
          if (q.order().precedes(ec, e)) y = std::max(y, t);
          best_lo[e] = std::min(best_lo[e], y);
        }
      }
      if (!any) return std::nullopt;
      for (EdgeIndex e = 0; e < m; ++e) {
        out.hi[e] = std::min(out.hi[e], best_hi[e]);
        out.lo[e] = std::max(out.lo[e], best_lo[e]);
      }
    }
    return out;
  }
};

}  // namespace

std::string check_table(const TemporalGraph& g, const TemporalQuery& q, const MaxMinTable& table) {
  Dp dp{g, q, table.dag(), {}, {}};
  g.for_each_active_edge([&](const DataEdge& e) { dp.edges.push_back(e); });
  std::ostringstream err;
  g.for_each_vertex([&](VertexId v, Label) {
    if (!err.str().empty()) return;
    for (VertexId u = 0; u < q.vertex_count(); ++u) {
      const auto& want = dp.at(u, v);
      if (table.exists(u, v) != want.has_value()) {
        err << to_string(table.orientation()) << " exists(" << u << "," << v << ") = " << table.exists(u, v);
        return;
      }
      if (!want) continue;
      for_each_edge(table.dag().above(u), [&](EdgeIndex e) {
        if (!err.str().empty()) return;
        if (table.value(u, v, e) != want->hi[e] || table.lower(u, v, e) != want->lo[e]) {
          err << to_string(table.orientation()) << " entry (" << u << "," << v << "," << e << ") stored "
              << table.value(u, v, e) << "/" << table.lower(u, v, e) << " expected " << want->hi[e] << "/"
              << want->lo[e];
        }
      });
      if (!err.str().empty()) return;
    }
  });
  return err.str();
}

namespace {

EmbeddingSet oracle_set(const TemporalGraph& g, const TemporalQuery& q) {
  auto all = oracle::enumerate_all(g, q);
  return EmbeddingSet(all.begin(), all.end());
}

std::string describe(const Embedding& e) {
  std::ostringstream os;
  for (std::size_t i = 0; i < e.edges.size(); ++i) os << (i ? "," : "") << i << "->" << e.edges[i];
  return os.str();
}

}  // namespace

DiffRun run_against_oracle(const RandomInstance& inst, const EngineOptions& options, bool check_tables) {
  DiffRun run;
  StreamEngine engine(inst.query, inst.window, options);
  for (const auto& [v, l] : inst.vertices) engine.add_vertex(v, l);
  for (const auto& e : inst.edges) engine.enqueue(e);
  engine.finish();

  EmbeddingSet before = oracle_set(engine.graph(), inst.query);
  std::vector<MatchReport> step_reports;
  auto sink = [&](const MatchReport& r) { step_reports.push_back(r); };
  while (engine.has_pending_event()) {
    step_reports.clear();
    const auto info_before = engine.stats().events_processed;
    EmbeddingSet current_before = before;
    engine.step(sink);
    if (engine.stats().events_processed == info_before) break;
    EmbeddingSet after = oracle_set(engine.graph(), inst.query);
    // Reports of an expiration refer to the graph right before the removal.
    EmbeddingSet plus, minus;
    for (const auto& r : step_reports) {
      auto& target = r.polarity == Polarity::occurred ? plus : minus;
      if (!target.insert(r.embedding).second) {
        run.mismatch = "duplicate report " + describe(r.embedding);
        return run;
      }
    }
    EmbeddingSet want_plus, want_minus;
    std::set_difference(after.begin(), after.end(), current_before.begin(), current_before.end(),
                        std::inserter(want_plus, want_plus.end()));
    std::set_difference(current_before.begin(), current_before.end(), after.begin(), after.end(),
                        std::inserter(want_minus, want_minus.end()));
    if (plus != want_plus || minus != want_minus) {
      std::ostringstream os;
      os << "event " << engine.stats().events_processed << " (" << (engine.last_event().arrival ? "arrival" : "expiration")
         << " of edge " << engine.last_event().edge << " at " << engine.last_event().fire_time << "): got +"
         << plus.size() << "/-" << minus.size() << " expected +" << want_plus.size() << "/-" << want_minus.size();
      for (const auto& e : want_plus) {
        if (!plus.contains(e)) os << "\n  missing + " << describe(e);
      }
      for (const auto& e : plus) {
        if (!want_plus.contains(e)) os << "\n  extra + " << describe(e);
      }
      for (const auto& e : want_minus) {
        if (!minus.contains(e)) os << "\n  missing - " << describe(e);
      }
      for (const auto& e : minus) {
        if (!want_minus.contains(e)) os << "\n  extra - " << describe(e);
      }
      run.mismatch = os.str();
      return run;
    }
    if (options.use_filter) {
      for (const auto& emb : after) {
        for (EdgeIndex e = 0; e < inst.query.edge_count(); ++e) {
          const DataEdge& de = engine.graph().edge(emb.edges[e]);
          const bool swapped = emb.vertices[inst.query.edge(e).src] != de.src;
          if (!engine.index().contains(CandidateKey{e, de.id, swapped})) {
            run.mismatch = "filter dropped a pair of embedding " + describe(emb);
            return run;
          }
        }
      }
    }
    if (check_tables && options.use_filter) {
      for (const MaxMinTable* t : {&engine.forward_table(), &engine.reverse_table()}) {
        std::string bad = check_table(engine.graph(), inst.query, *t);
        if (!bad.empty()) {
          run.mismatch = "after event " + std::to_string(engine.stats().events_processed) + ": " + bad;
          return run;
        }
      }
    }
    run.reports.insert(run.reports.end(), step_reports.begin(), step_reports.end());
    before = std::move(after);
  }
  run.stats = engine.stats();
  return run;
}

DiffRun run_engine(const RandomInstance& inst, const EngineOptions& options) {
  DiffRun run;
  StreamEngine engine(inst.query, inst.window, options);
  for (const auto& [v, l] : inst.vertices) engine.add_vertex(v, l);
  run.stats = engine.run_stream(inst.edges, [&](const MatchReport& r) { run.reports.push_back(r); });
  return run;
}

}  // namespace tcsm::testing
