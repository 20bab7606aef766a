#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tcsm/matcher.hpp"
#include "tcsm/query.hpp"
#include "tcsm/query_dag.hpp"
#include "tcsm/stream_engine.hpp"
#include "tcsm/tc_filter.hpp"
#include "tcsm/temporal_graph.hpp"

namespace tcsm::testing {

// Labels used by the hand-built fixtures.
inline constexpr Label A = 0, B = 1, C = 2, D = 3, E = 4, F = 5, G = 6, H = 7;

// Running example. Query vertices u1..u5 are ids 0..4 and query edges
// eps1..eps6 are ids 0..5.
TemporalQuery running_query();
// Data vertices v1..v7 keep their numbers as ids (id 0 is unused).
std::vector<std::pair<VertexId, Label>> running_vertices();
// sigma1..sigma14 with timestamps 1..14.
std::vector<StreamEdge> running_edges();
// Graph holding sigma1..sigma_upto; sigma k gets edge id k-1.
TemporalGraph running_graph(int upto = 14);

// Path query used for the pruning walkthrough (u1..u8 -> 0..7,
// eps1..eps7 -> 0..6) and its data graph. Edge ids are looked up by ts.
TemporalQuery pruning_query();
TemporalGraph pruning_graph();
EdgeId edge_with_ts(const TemporalGraph& g, Timestamp ts);

struct RandomInstance {
  std::vector<std::pair<VertexId, Label>> vertices;
  std::vector<StreamEdge> edges;
  Timestamp window = 0;
  TemporalQuery query;
  double density = 0.0;
};

// Small random stream plus a random-walk query with an imposed order.
// Returns nullopt when no query could be drawn from this seed, or when the
// stream produces more than max_reports reports (the oracle rebuilds every
// snapshot, so huge outputs make it impractically slow).
std::optional<RandomInstance> random_instance(std::uint64_t seed, std::size_t query_edges, double density,
                                              bool directed = false, std::uint64_t max_reports = 100000);

using EmbeddingSet = std::set<Embedding>;

// Independent recomputation of every table entry from the active graph.
// Returns a description of the first mismatch, or an empty string.
std::string check_table(const TemporalGraph& g, const TemporalQuery& q, const MaxMinTable& table);

// Runs the engine one event at a time and compares each event's reports with
// the oracle snapshot difference. Returns the first mismatch or "".
struct DiffRun {
  std::string mismatch;
  EngineStats stats;
  std::vector<MatchReport> reports;
};
DiffRun run_against_oracle(const RandomInstance& inst, const EngineOptions& options, bool check_tables = false);

// Reports of a full engine run, without oracle checks.
DiffRun run_engine(const RandomInstance& inst, const EngineOptions& options);

}  // namespace tcsm::testing
