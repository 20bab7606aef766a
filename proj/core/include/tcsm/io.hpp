#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "tcsm/query.hpp"
#include "tcsm/stream_engine.hpp"
#include "tcsm/symbols.hpp"

namespace tcsm::io {

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

struct StreamData {
  std::vector<std::pair<VertexId, Label>> vertices;
  std::vector<StreamEdge> edges;
};

// "v <id> <label>" and "e <src> <dst> <elabel|-> <ts>" lines, '#' comments.
StreamData parse_stream(std::istream& in, SymbolTable& symbols, const std::string& source = "<stream>");
StreamData parse_stream_file(const std::string& path, SymbolTable& symbols);

// "v <id> <label>", "e <eid> <src> <dst> <elabel|->" and "o <eid1> <eid2>".
TemporalQuery parse_query(std::istream& in, SymbolTable& symbols, const std::string& source = "<query>");
TemporalQuery parse_query_file(const std::string& path, SymbolTable& symbols);

std::string write_stream(const StreamData& data, const SymbolTable& symbols);
std::string write_query(const TemporalQuery& q, const SymbolTable& symbols);

// "<fire_time> <+|-> <eid>:<src>-<dst>@<ts>,..." in ascending query edge id,
// where src/dst are the data vertices of the query edge's endpoints.
std::string format_report(const MatchReport& r, const TemporalQuery& q, const TemporalGraph& g);

// Feed a parsed stream into an engine and finish it.
void load_engine(StreamEngine& engine, const StreamData& data);

}  // namespace tcsm::io
