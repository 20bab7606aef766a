#include <benchmark/benchmark.h>

#include "tcsm/query_dag.hpp"
#include "tcsm/stream_engine.hpp"
#include "tcsm/workload.hpp"

using namespace tcsm;

namespace {

struct Workload {
  workload::SynthStream stream;
  TemporalQuery query;
  Timestamp window = 0;
};

// Query drawn from the snapshot halfway through the stream.
Workload make_workload(std::size_t n_edges, std::size_t query_edges, double density, Timestamp window) {
  Workload w;
  workload::SynthParams p;
  p.n_vertices = n_edges / 5;
  p.n_edges = n_edges;
  p.label_count = 8;
  p.parallel_edge_rate = 0.5;
  p.seed = 42;
  w.stream = workload::synth_stream_data(p);
  w.window = window;
  TemporalGraph g;
  for (const auto& [v, l] : w.stream.vertices) g.add_vertex(v, l);
  const Timestamp now = w.stream.edges[n_edges / 2].ts;
  for (std::size_t i = 0; i <= n_edges / 2; ++i) {
    const auto& e = w.stream.edges[i];
    if (e.ts + window > now) g.insert_edge(e.src, e.dst, e.elabel, e.ts);
  }
  const auto walk = workload::random_walk_query(g, query_edges, 7);
  w.query = TemporalQuery(walk.vertices, walk.edges, workload::impose_order(walk.witness_ts, density, 7));
  return w;
}

void run_stream(benchmark::State& state, bool filter, bool prune) {
  const double density = static_cast<double>(state.range(1)) / 100.0;
  const Workload w = make_workload(20000, static_cast<std::size_t>(state.range(0)), density, 6000);
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    EngineOptions o;
    o.count_only = true;
    o.use_filter = filter;
    o.use_pruning = prune;
    StreamEngine engine(w.query, w.window, o);
    for (const auto& [v, l] : w.stream.vertices) engine.add_vertex(v, l);
    const auto st = engine.run_stream(w.stream.edges, [](const MatchReport&) {});
    nodes = st.search_nodes_visited;
    benchmark::DoNotOptimize(st.embeddings_occurred);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.stream.edges.size()));
  state.counters["search_nodes"] = static_cast<double>(nodes);
}

void BM_StreamDefault(benchmark::State& state) { run_stream(state, true, true); }
void BM_StreamNoPrune(benchmark::State& state) { run_stream(state, true, false); }
void BM_StreamNoFilter(benchmark::State& state) { run_stream(state, false, true); }

void stream_args(benchmark::internal::Benchmark* b) {
  for (int edges : {5, 9}) {
    for (int density : {0, 50, 100}) b->Args({edges, density});
  }
  b->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_StreamDefault)->Apply(stream_args);
BENCHMARK(BM_StreamNoPrune)->Apply(stream_args);
BENCHMARK(BM_StreamNoFilter)->Apply(stream_args);

void BM_BestDag(benchmark::State& state) {
  const Workload w = make_workload(4000, static_cast<std::size_t>(state.range(0)), 0.5, 2000);
  for (auto _ : state) benchmark::DoNotOptimize(best_dag(w.query).score());
}
BENCHMARK(BM_BestDag)->Arg(5)->Arg(9)->Arg(16);

void BM_Generate(benchmark::State& state) {
  workload::SynthParams p;
  p.n_vertices = 2000;
  p.n_edges = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(workload::synth_stream_data(p).edges.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
