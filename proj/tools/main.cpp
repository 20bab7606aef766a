#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcsm/io.hpp"
#include "tcsm/oracle.hpp"
#include "tcsm/query_dag.hpp"
#include "tcsm/stream_engine.hpp"
#include "tcsm/workload.hpp"

namespace fs = std::filesystem;
using namespace tcsm;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kMismatch = 3, kTimeout = 4 };

using Clock = std::chrono::steady_clock;

struct MatchArgs {
  std::string data, query;
  Timestamp window = 0;
  bool directed = false, count = false, no_filter = false, no_prune = false, stats = false;
  std::uint64_t limit = 0;
  double timeout = 0;
};

EngineOptions engine_options(const MatchArgs& a) {
  EngineOptions o;
  o.directed = a.directed;
  o.use_filter = !a.no_filter;
  o.use_pruning = !a.no_prune;
  o.count_only = a.count;
  o.limit = a.limit;
  if (a.timeout > 0) {
    o.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(a.timeout));
  }
  return o;
}

int run_match(const MatchArgs& a) {
  SymbolTable symbols;
  const io::StreamData data = io::parse_stream_file(a.data, symbols);
  const TemporalQuery q = io::parse_query_file(a.query, symbols);
  const EngineOptions options = engine_options(a);
  StreamEngine engine(q, a.window, options);
  io::load_engine(engine, data);

  bool out_of_time = false;
  if (a.count) {
    // Running totals after each event that produced reports.
    EngineStats prev = engine.stats();
    while (engine.step([](const MatchReport&) {})) {
      const EngineStats& now = engine.stats();
      const Timestamp t = engine.last_event().fire_time;
      if (now.embeddings_occurred != prev.embeddings_occurred) std::cout << t << " + " << now.embeddings_occurred << '\n';
      if (now.embeddings_expired != prev.embeddings_expired) std::cout << t << " - " << now.embeddings_expired << '\n';
      prev = now;
      if (now.timed_out || now.hit_limit) break;
      if (options.deadline && Clock::now() >= *options.deadline) {
        out_of_time = true;
        break;
      }
    }
  } else {
    engine.run([&](const MatchReport& r) { std::cout << io::format_report(r, q, engine.graph()) << '\n'; });
  }
  if (a.stats) std::cerr << engine.stats().to_string();
  return engine.stats().timed_out || out_of_time ? kTimeout : kOk;
}

struct OracleArgs {
  std::string data, query;
  Timestamp window = 0;
  std::size_t max_edges = 0;
  bool directed = false;
};

int run_oracle_check(const OracleArgs& a) {
  SymbolTable symbols;
  io::StreamData data = io::parse_stream_file(a.data, symbols);
  const TemporalQuery q = io::parse_query_file(a.query, symbols);
  if (a.max_edges != 0 && data.edges.size() > a.max_edges) data.edges.resize(a.max_edges);
  EngineOptions o;
  o.directed = a.directed;
  StreamEngine engine(q, a.window, o);
  io::load_engine(engine, data);

  using Set = std::set<Embedding>;
  auto snapshot = [&] {
    auto all = oracle::enumerate_all(engine.graph(), q);
    return Set(all.begin(), all.end());
  };
  Set before = snapshot();
  std::uint64_t events = 0, reports = 0;
  while (engine.has_pending_event()) {
    Set plus, minus;
    bool duplicate = false;
    if (!engine.step([&](const MatchReport& r) {
          auto& target = r.polarity == Polarity::occurred ? plus : minus;
          duplicate = !target.insert(r.embedding).second || duplicate;
        })) {
      break;
    }
    ++events;
    reports += plus.size() + minus.size();
    Set after = snapshot();
    Set want_plus, want_minus;
    std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                        std::inserter(want_plus, want_plus.end()));
    std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                        std::inserter(want_minus, want_minus.end()));
    if (duplicate || plus != want_plus || minus != want_minus) {
      const EventInfo& ev = engine.last_event();
      std::cout << "mismatch at event " << events << " (" << (ev.arrival ? "arrival" : "expiration") << " at "
                << ev.fire_time << "): engine +" << plus.size() << "/-" << minus.size() << ", oracle +"
                << want_plus.size() << "/-" << want_minus.size() << (duplicate ? ", duplicate report" : "") << '\n';
      return kMismatch;
    }
    before = std::move(after);
  }
  std::cout << "ok: " << events << " events, " << reports << " reports agree with the oracle\n";
  return kOk;
}

struct BenchArgs {
  std::string data, query_dir;
  Timestamp window = 0;
  double timeout = 0;
  bool directed = false, no_filter = false, no_prune = false;
};

int run_bench(const BenchArgs& a) {
  SymbolTable symbols;
  const io::StreamData data = io::parse_stream_file(a.data, symbols);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.query_dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  bool any_timeout = false;
  for (const auto& path : files) {
    const TemporalQuery q = io::parse_query_file(path.string(), symbols);
    MatchArgs m;
    m.directed = a.directed;
    m.no_filter = a.no_filter;
    m.no_prune = a.no_prune;
    m.count = true;
    m.timeout = a.timeout;
    const auto t0 = Clock::now();
    StreamEngine engine(q, a.window, engine_options(m));
    io::load_engine(engine, data);
    engine.run([](const MatchReport&) {});
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    any_timeout = any_timeout || engine.stats().timed_out;
    std::cout << "query=" << path.string() << '\n'
              << "query_edges=" << q.edge_count() << '\n'
              << "density=" << (q.edge_count() > 1 ? q.order().density() : 0.0) << '\n'
              << "elapsed_ms=" << ms << '\n'
              << engine.stats().to_string() << '\n';
  }
  return any_timeout ? kTimeout : kOk;
}

struct GenQueryArgs {
  std::string data, out;
  std::size_t size = 4;
  double density = 0.5;
  std::uint64_t seed = 1;
  Timestamp window = 0;
  std::size_t at = 0;
  bool directed = false;
};

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

int run_generate_query(const GenQueryArgs& a) {
  SymbolTable symbols;
  const io::StreamData data = io::parse_stream_file(a.data, symbols);
  if (data.edges.empty()) throw Error("stream has no edges");
  // Snapshot of the window ending at edge `at` (default: last edge).
  const std::size_t upto = a.at == 0 ? data.edges.size() - 1 : std::min(a.at, data.edges.size()) - 1;
  TemporalGraph g(a.directed);
  for (const auto& [v, l] : data.vertices) g.add_vertex(v, l);
  const Timestamp now = data.edges[upto].ts;
  for (std::size_t i = 0; i <= upto; ++i) {
    const StreamEdge& e = data.edges[i];
    if (a.window == 0 || e.ts + a.window > now) g.insert_edge(e.src, e.dst, e.elabel, e.ts);
  }
  // Colliding witness timestamps make a total order impossible; walk again.
  for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
    const auto w = workload::random_walk_query(g, a.size, a.seed + attempt);
    try {
      TemporalQuery q(w.vertices, w.edges, workload::impose_order(w.witness_ts, a.density, a.seed + attempt));
      write_out(a.out, io::write_query(q, symbols));
      return kOk;
    } catch (const QueryError&) {
      if (a.density < 1.0) throw;
    }
  }
  throw Error("no walk with distinct timestamps found");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-constrained continuous subgraph matching over edge streams"};
  app.require_subcommand(1);

  MatchArgs match;
  auto* m = app.add_subcommand("match", "Report embeddings as they occur and expire");
  m->add_option("--data", match.data, "Data stream file")->required()->check(CLI::ExistingFile);
  m->add_option("--query", match.query, "Query file")->required()->check(CLI::ExistingFile);
  m->add_option("--window", match.window, "Window length in stream time units")->required();
  m->add_flag("--directed", match.directed, "Treat edges as directed");
  m->add_flag("--count", match.count, "Print running totals instead of mappings");
  m->add_option("--limit", match.limit, "Stop after this many reports");
  m->add_flag("--no-filter", match.no_filter, "Disable the candidate filter");
  m->add_flag("--no-prune", match.no_prune, "Disable search pruning");
  m->add_flag("--stats", match.stats, "Print counters to stderr");
  m->add_option("--timeout", match.timeout, "Give up after this many seconds");

  auto* gen = app.add_subcommand("generate", "Generate a query or a synthetic stream");
  gen->require_subcommand(1);
  GenQueryArgs gq;
  auto* gen_q = gen->add_subcommand("query", "Random-walk query over a stream snapshot");
  gen_q->add_option("--data", gq.data, "Data stream file")->required()->check(CLI::ExistingFile);
  gen_q->add_option("--size", gq.size, "Number of query edges")->check(CLI::Range(1, 64));
  gen_q->add_option("--density", gq.density, "Target order density")->check(CLI::Range(0.0, 1.0));
  gen_q->add_option("--seed", gq.seed, "Random seed");
  gen_q->add_option("--window", gq.window, "Snapshot window (0 keeps every edge)");
  gen_q->add_option("--at", gq.at, "Snapshot after this many edges (0 = all)");
  gen_q->add_flag("--directed", gq.directed, "Walk along edge directions");
  gen_q->add_option("--out", gq.out, "Output file (default stdout)");

  workload::SynthParams sp;
  std::string stream_out;
  auto* gen_s = gen->add_subcommand("stream", "Synthetic labeled edge stream");
  gen_s->add_option("--seed", sp.seed, "Random seed");
  gen_s->add_option("--vertices", sp.n_vertices, "Number of vertices")->check(CLI::PositiveNumber);
  gen_s->add_option("--edges", sp.n_edges, "Number of edges");
  gen_s->add_option("--labels", sp.label_count, "Number of vertex labels")->check(CLI::PositiveNumber);
  gen_s->add_option("--parallel-rate", sp.parallel_edge_rate, "Parallel edge rate")->check(CLI::NonNegativeNumber);
  gen_s->add_option("--out", stream_out, "Output file (default stdout)");

  OracleArgs oc;
  auto* orc = app.add_subcommand("oracle-check", "Compare engine reports with brute-force snapshot diffs");
  orc->add_option("--data", oc.data, "Data stream file")->required()->check(CLI::ExistingFile);
  orc->add_option("--query", oc.query, "Query file")->required()->check(CLI::ExistingFile);
  orc->add_option("--window", oc.window, "Window length")->required();
  orc->add_option("--max-edges", oc.max_edges, "Use only the first N stream edges (0 = all)");
  orc->add_flag("--directed", oc.directed, "Treat edges as directed");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run every query in a directory in count mode");
  b->add_option("--data", bench.data, "Data stream file")->required()->check(CLI::ExistingFile);
  b->add_option("--query-dir", bench.query_dir, "Directory of query files")->required()->check(CLI::ExistingDirectory);
  b->add_option("--window", bench.window, "Window length")->required();
  b->add_option("--timeout", bench.timeout, "Per-query timeout in seconds");
  b->add_flag("--directed", bench.directed, "Treat edges as directed");
  b->add_flag("--no-filter", bench.no_filter, "Disable the candidate filter");
  b->add_flag("--no-prune", bench.no_prune, "Disable search pruning");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    std::ios::sync_with_stdio(false);
    if (*m) return run_match(match);
    if (*gen_q) return run_generate_query(gq);
    if (*gen_s) {
      write_out(stream_out, workload::synth_stream(sp));
      return kOk;
    }
    if (*orc) return run_oracle_check(oc);
    if (*b) return run_bench(bench);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
