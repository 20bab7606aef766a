#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "tcsm/io.hpp"
#include "tcsm/workload.hpp"

namespace tcsm {
namespace {

io::StreamData parse_text(const std::string& text, SymbolTable& s) {
  std::istringstream in(text);
  return io::parse_stream(in, s);
}

TemporalQuery parse_query_text(const std::string& text, SymbolTable& s) {
  std::istringstream in(text);
  return io::parse_query(in, s);
}

TEST(ParseStream, ParallelEdges) {
  SymbolTable s;
  const auto d = parse_text("v 1 A\nv 2 B\ne 1 2 - 1\ne 1 2 - 6\n", s);
  ASSERT_EQ(d.edges.size(), 2U);
  EXPECT_EQ(d.edges[0], (StreamEdge{1, 2, kNoLabel, 1}));
  EXPECT_EQ(d.edges[1], (StreamEdge{1, 2, kNoLabel, 6}));
  EXPECT_EQ(d.vertices[1].second, s.find("B"));
}

TEST(ParseStream, CommentsBlankLinesAndCrlf) {
  SymbolTable s;
  const auto d = parse_text("# header\r\n\r\nv 1 A   # trailing\r\n  e 1 1 x 3\r\n", s);
  EXPECT_EQ(d.vertices.size(), 1U);
  ASSERT_EQ(d.edges.size(), 1U);
  EXPECT_NE(d.edges[0].elabel, kNoLabel);
}

TEST(ParseStream, Diagnostics) {
  SymbolTable s;
  try {
    parse_text("v 1 A\nx 1 2\n", s);
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 1U);
  }
  try {
    parse_text("v 1 A\ne 1 1 - 5\ne 1 1 - 4\n", s);
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
    EXPECT_EQ(e.column(), 9U);
  }
  EXPECT_THROW(parse_text("e 1 2 - abc\n", s), io::ParseError);
  EXPECT_THROW(parse_text("e 1 2 -\n", s), io::ParseError);
  EXPECT_THROW(parse_text("v 1 A extra\n", s), io::ParseError);
  EXPECT_THROW(io::parse_stream_file("/nonexistent/stream.txt", s), io::ParseError);
}

TEST(ParseQuery, CycleIsError) {
  SymbolTable s;
  const std::string base = "v 0 A\nv 1 B\nv 2 C\ne 0 0 1 -\ne 1 1 2 -\ne 2 0 2 -\n";
  EXPECT_NO_THROW(parse_query_text(base + "o 2 1\n", s));
  EXPECT_THROW(parse_query_text(base + "o 2 1\no 1 2\n", s), io::ParseError);
  EXPECT_THROW(parse_query_text(base + "z 1\n", s), io::ParseError);
}

TEST(ParseQuery, ClosureOnLoad) {
  SymbolTable s;
  const auto q = parse_query_text("v 0 A\nv 1 B\nv 2 C\ne 0 0 1 -\ne 1 1 2 -\ne 2 0 2 -\no 0 1\no 1 2\n", s);
  EXPECT_TRUE(q.order().precedes(0, 2));
  EXPECT_DOUBLE_EQ(q.order().density(), 1.0);
}

TEST(RoundTrip, GeneratedStream) {
  workload::SynthParams p;
  p.n_vertices = 30;
  p.n_edges = 200;
  p.label_count = 5;
  p.parallel_edge_rate = 1.5;
  p.seed = 9;
  const std::string text = workload::synth_stream(p);
  SymbolTable s;
  const auto d = parse_text(text, s);
  EXPECT_EQ(d.edges.size(), 200U);
  SymbolTable s2;
  EXPECT_EQ(io::write_stream(parse_text(io::write_stream(d, s), s2), s2), io::write_stream(d, s));
}

TEST(RoundTrip, GeneratedQueries) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto inst = testing::random_instance(seed, 3 + seed % 4, 0.5);
    if (!inst) continue;
    SymbolTable s;
    for (Label l = 0; l < 8; ++l) s.intern("L" + std::to_string(l));
    const std::string text = io::write_query(inst->query, s);
    SymbolTable s2;
    for (Label l = 0; l < 8; ++l) s2.intern("L" + std::to_string(l));
    const auto back = parse_query_text(text, s2);
    EXPECT_EQ(back.order(), inst->query.order());
    EXPECT_EQ(io::write_query(back, s2), text);
  }
}

TEST(FormatReport, RunningExample) {
  const auto q = testing::running_query();
  StreamEngine engine(q, 10);
  for (const auto& [v, l] : testing::running_vertices()) engine.add_vertex(v, l);
  std::vector<std::string> lines;
  for (const auto& e : testing::running_edges()) engine.enqueue(e);
  engine.finish();
  engine.run([&](const MatchReport& r) { lines.push_back(io::format_report(r, q, engine.graph())); });
  ASSERT_EQ(lines.size(), 2U);
  EXPECT_EQ(lines[0], "14 + 0:1-2@6,1:1-4@8,2:2-5@11,3:4-5@13,4:5-7@10,5:4-7@14");
  EXPECT_EQ(lines[1], "16 - 0:1-2@6,1:1-4@8,2:2-5@11,3:4-5@13,4:5-7@10,5:4-7@14");
}

}  // namespace
}  // namespace tcsm
