#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "tcsm/matcher.hpp"
#include "tcsm/oracle.hpp"

namespace tcsm {
namespace {

using testing::edge_with_ts;
using testing::pruning_graph;
using testing::pruning_query;

struct TracedRun {
  std::vector<TraceEvent> events;
  std::vector<Embedding> found;
  MatchStats stats;
};

TracedRun run_pruning(bool use_pruning) {
  static const TemporalQuery q = pruning_query();
  static const TemporalGraph g = pruning_graph();
  TracedRun out;
  Matcher m(q, g, nullptr);
  m.trace = [&](const TraceEvent& ev) { out.events.push_back(ev); };
  MatchOptions o;
  o.use_filter = false;
  o.use_pruning = use_pruning;
  out.stats = m.find_matches(edge_with_ts(g, 15), [&](const Embedding& e) { out.found.push_back(e); }, o);
  std::sort(out.found.begin(), out.found.end());
  return out;
}

bool mapped(const TracedRun& r, EdgeIndex e, Timestamp ts, TraceEvent::Kind kind = TraceEvent::Kind::map_edge) {
  static const TemporalGraph g = pruning_graph();
  const EdgeId id = edge_with_ts(g, ts);
  return std::any_of(r.events.begin(), r.events.end(),
                     [&](const TraceEvent& ev) { return ev.kind == kind && ev.edge == e && ev.data_edge == id; });
}

TEST(Matcher, PruningFixtureFindsBothEmbeddings) {
  const auto with = run_pruning(true);
  const auto without = run_pruning(false);
  ASSERT_EQ(with.found.size(), 2U);
  EXPECT_EQ(with.found, without.found);
  const auto g = pruning_graph();
  const auto all = oracle::enumerate_all(g, pruning_query());
  EXPECT_EQ(with.found, all);
  EXPECT_LT(with.stats.nodes_visited, without.stats.nodes_visited);
}

TEST(Matcher, EdgeCandidatesWithTemporalConstraint) {
  const auto q = pruning_query();
  const auto g = pruning_graph();
  Matcher m(q, g, nullptr);
  PartialEmbedding pm(q);
  pm.map_vertex(2, 3);
  pm.map_vertex(3, 4);
  std::vector<EdgeId> want{edge_with_ts(g, 2), edge_with_ts(g, 5), edge_with_ts(g, 6)};
  EXPECT_EQ(m.compute_EC(pm, 2, false), want);
  pm.map_edge(2, edge_with_ts(g, 5));
  pm.map_vertex(4, 5);
  // eps4 must be later than eps3 = sigma at 5; only ts 3 and 4 exist.
  EXPECT_TRUE(m.compute_EC(pm, 3, false).empty());
}

TEST(Matcher, RuleAKeepsRepresentativeAndSubstitutes) {
  const auto with = run_pruning(true);
  EXPECT_TRUE(mapped(with, 3, 3));
  EXPECT_FALSE(mapped(with, 3, 4));
  EXPECT_TRUE(mapped(with, 3, 4, TraceEvent::Kind::substitute));
}

TEST(Matcher, RuleBStopsAtFirstFailure) {
  const auto with = run_pruning(true);
  const auto without = run_pruning(false);
  EXPECT_TRUE(mapped(with, 2, 5));
  EXPECT_FALSE(mapped(with, 2, 6));
  EXPECT_TRUE(mapped(without, 2, 6));
}

TEST(Matcher, RuleCSkipsSiblingOutsideFailingSet) {
  const auto with = run_pruning(true);
  const auto without = run_pruning(false);
  EXPECT_TRUE(mapped(with, 1, 10));
  EXPECT_FALSE(mapped(with, 1, 11));
  EXPECT_TRUE(mapped(without, 1, 11));
}

TEST(Matcher, LimitStopsEarly) {
  const auto q = pruning_query();
  const auto g = pruning_graph();
  Matcher m(q, g, nullptr);
  MatchOptions o;
  o.use_filter = false;
  o.limit = 1;
  int n = 0;
  const auto st = m.find_matches(edge_with_ts(g, 15), [&](const Embedding&) { ++n; }, o);
  EXPECT_EQ(n, 1);
  EXPECT_TRUE(st.hit_limit);
}

TEST(Matcher, CountOnlyCountsSubstitutions) {
  const auto q = pruning_query();
  const auto g = pruning_graph();
  Matcher m(q, g, nullptr);
  MatchOptions o;
  o.use_filter = false;
  o.count_only = true;
  int n = 0;
  const auto st = m.find_matches(edge_with_ts(g, 15), [&](const Embedding&) { ++n; }, o);
  EXPECT_EQ(st.embeddings, 2U);
  EXPECT_EQ(n, 0);
}

TEST(Matcher, IncompatibleStartEdge) {
  const auto q = pruning_query();
  const auto g = pruning_graph();
  Matcher m(q, g, nullptr);
  MatchOptions o;
  o.use_filter = false;
  // sigma at ts 12 joins v9 (C) and v4 (D): fits eps3 only, and eps4 cannot follow it.
  const auto st = m.find_matches(edge_with_ts(g, 12), [](const Embedding&) {}, o);
  EXPECT_EQ(st.embeddings, 0U);
}

TEST(FailingSets, Combine) {
  // Empty children: mapped related set of the failed edge.
  EXPECT_EQ(combine_failing_sets({}, 0b101), FailingSet(0b101));
  // A child whose failing set misses its own edge is returned as is.
  EXPECT_EQ(combine_failing_sets({{1, FailingSet(0b0100)}, {1, FailingSet(0b0010)}}, 0b1000), FailingSet(0b1100));
  // Otherwise the union.
  EXPECT_EQ(combine_failing_sets({{1, FailingSet(0b0110)}, {1, FailingSet(0b0011)}}, 0), FailingSet(0b0111));
  EXPECT_TRUE(combine_failing_sets({{1, FailingSet::full()}}, 0).is_full());
  EXPECT_TRUE(FailingSet::full().contains(40));
  EXPECT_EQ(FailingSet::full(), FailingSet::full().unite(FailingSet(3)));
}

TEST(FailingSets, ComputeR) {
  const auto q = pruning_query();
  // eps2 is related to eps5 and eps7.
  const RSets r = compute_R(q, edge_bit(0) | edge_bit(4), 1);
  EXPECT_EQ(r.plus, edge_bit(4));
  EXPECT_EQ(r.minus, edge_bit(6));
  EXPECT_EQ(compute_R(q, 0, 0).plus | compute_R(q, 0, 0).minus, 0U);
}

TEST(PartialEmbedding, MapUnmap) {
  const auto q = pruning_query();
  PartialEmbedding m(q);
  EXPECT_FALSE(m.complete());
  m.map_vertex(0, 1);
  m.map_edge(0, 14);
  EXPECT_TRUE(m.vertex_used(1));
  EXPECT_TRUE(m.edge_used(14));
  EXPECT_EQ(m.mapped_edges(), edge_bit(0));
  m.unmap_edge(0);
  m.unmap_vertex(0);
  EXPECT_FALSE(m.vertex_used(1));
  EXPECT_EQ(m.mapped_vertex_count(), 0U);
}

TEST(Matcher, CandidateVerticesRespectLabelsAndInjectivity) {
  const auto q = pruning_query();
  const auto g = pruning_graph();
  Matcher m(q, g, nullptr);
  PartialEmbedding pm(q);
  pm.map_vertex(1, 2);  // u2 -> v2
  auto c = m.candidate_vertices(pm, 2, false);
  EXPECT_EQ(c, (std::vector<VertexId>{3, 9}));
  pm.map_vertex(2, 9);
  pm.map_vertex(3, 4);
  // u3's neighbor slots are both mapped; v9 is taken now.
  EXPECT_TRUE(m.candidate_vertices(pm, 4, false).size() == 1);
}

}  // namespace
}  // namespace tcsm
