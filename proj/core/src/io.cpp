#include "tcsm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace tcsm::io {

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next non-empty, non-comment line split into tokens.
  bool next(std::vector<Token>& tokens) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      tokens.clear();
      std::size_t i = 0;
      while (i < line_.size()) {
        while (i < line_.size() && (line_[i] == ' ' || line_[i] == '\t')) ++i;
        if (i >= line_.size() || line_[i] == '#') break;
        const std::size_t start = i;
        while (i < line_.size() && line_[i] != ' ' && line_[i] != '\t') ++i;
        tokens.push_back(Token{std::string_view(line_).substr(start, i - start), start + 1});
      }
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::size_t column, const std::string& what) const {
    throw ParseError(source_, line_no_, column, what);
  }

  template <class T>
  T number(const Token& t, const char* what) const {
    T value{};
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail(t.column, std::string("expected ") + what + ", got '" + std::string(t.text) + "'");
    return value;
  }

  void expect_fields(const std::vector<Token>& tokens, std::size_t n, const char* form) const {
    if (tokens.size() != n) {
      fail(tokens.size() > n ? tokens[n].column : line_.size() + 1, std::string("expected '") + form + "'");
    }
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string source_;
  std::string line_;
  std::size_t line_no_ = 0;
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  return in;
}

}  // namespace

StreamData parse_stream(std::istream& in, SymbolTable& symbols, const std::string& source) {
  LineReader reader(in, source);
  StreamData data;
  std::vector<Token> tok;
  while (reader.next(tok)) {
    if (tok[0].text == "v") {
      reader.expect_fields(tok, 3, "v <id> <label>");
      const auto id = reader.number<VertexId>(tok[1], "vertex id");
      if (id == kNoVertex) reader.fail(tok[1].column, "vertex id out of range");
      data.vertices.emplace_back(id, symbols.intern(tok[2].text));
    } else if (tok[0].text == "e") {
      reader.expect_fields(tok, 5, "e <src> <dst> <elabel|-> <ts>");
      StreamEdge e;
      e.src = reader.number<VertexId>(tok[1], "source vertex id");
      e.dst = reader.number<VertexId>(tok[2], "destination vertex id");
      e.elabel = symbols.intern_edge_label(tok[3].text);
      e.ts = reader.number<Timestamp>(tok[4], "timestamp");
      if (e.ts > kMaxTimestamp) reader.fail(tok[4].column, "timestamp out of range");
      if (!data.edges.empty() && e.ts < data.edges.back().ts) {
        reader.fail(tok[4].column, "timestamp " + std::to_string(e.ts) + " decreases (previous " +
                                       std::to_string(data.edges.back().ts) + ")");
      }
      data.edges.push_back(e);
    } else {
      reader.fail(tok[0].column, "unknown directive '" + std::string(tok[0].text) + "'");
    }
  }
  return data;
}

StreamData parse_stream_file(const std::string& path, SymbolTable& symbols) {
  auto in = open(path);
  return parse_stream(in, symbols, path);
}

TemporalQuery parse_query(std::istream& in, SymbolTable& symbols, const std::string& source) {
  LineReader reader(in, source);
  std::vector<QueryVertex> vertices;
  std::vector<QueryEdge> edges;
  std::vector<OrderPair> order;
  std::vector<Token> tok;
  while (reader.next(tok)) {
    if (tok[0].text == "v") {
      reader.expect_fields(tok, 3, "v <id> <label>");
      vertices.push_back(QueryVertex{reader.number<VertexId>(tok[1], "vertex id"), symbols.intern(tok[2].text)});
    } else if (tok[0].text == "e") {
      reader.expect_fields(tok, 5, "e <eid> <src> <dst> <elabel|->");
      QueryEdge e;
      e.id = reader.number<EdgeIndex>(tok[1], "edge id");
      e.src = reader.number<VertexId>(tok[2], "source vertex id");
      e.dst = reader.number<VertexId>(tok[3], "destination vertex id");
      e.elabel = symbols.intern_edge_label(tok[4].text);
      edges.push_back(e);
    } else if (tok[0].text == "o") {
      reader.expect_fields(tok, 3, "o <eid1> <eid2>");
      order.emplace_back(reader.number<EdgeIndex>(tok[1], "edge id"), reader.number<EdgeIndex>(tok[2], "edge id"));
    } else {
      reader.fail(tok[0].column, "unknown directive '" + std::string(tok[0].text) + "'");
    }
  }
  try {
    return TemporalQuery(std::move(vertices), std::move(edges), order);
  } catch (const QueryError& err) {
    throw ParseError(source, reader.line_no(), 0, err.what());
  }
}

TemporalQuery parse_query_file(const std::string& path, SymbolTable& symbols) {
  auto in = open(path);
  return parse_query(in, symbols, path);
}

std::string write_stream(const StreamData& data, const SymbolTable& symbols) {
  std::ostringstream os;
  for (const auto& [v, l] : data.vertices) os << "v " << v << ' ' << symbols.name(l) << '\n';
  for (const StreamEdge& e : data.edges) {
    os << "e " << e.src << ' ' << e.dst << ' ' << symbols.edge_label_name(e.elabel) << ' ' << e.ts << '\n';
  }
  return os.str();
}

std::string write_query(const TemporalQuery& q, const SymbolTable& symbols) {
  std::ostringstream os;
  for (const QueryVertex& v : q.vertices()) os << "v " << v.id << ' ' << symbols.name(v.label) << '\n';
  for (const QueryEdge& e : q.edges()) {
    os << "e " << e.id << ' ' << e.src << ' ' << e.dst << ' ' << symbols.edge_label_name(e.elabel) << '\n';
  }
  for (const auto& [a, b] : q.order().direct_pairs()) os << "o " << a << ' ' << b << '\n';
  return os.str();
}

std::string format_report(const MatchReport& r, const TemporalQuery& q, const TemporalGraph& g) {
  std::ostringstream os;
  os << r.fire_time << ' ' << (r.polarity == Polarity::occurred ? '+' : '-') << ' ';
  for (EdgeIndex e = 0; e < q.edge_count(); ++e) {
    const QueryEdge& qe = q.edge(e);
    if (e > 0) os << ',';
    os << e << ':' << r.embedding.vertices[qe.src] << '-' << r.embedding.vertices[qe.dst] << '@'
       << g.edge(r.embedding.edges[e]).ts;
  }
  return os.str();
}

void load_engine(StreamEngine& engine, const StreamData& data) {
  for (const auto& [v, l] : data.vertices) engine.add_vertex(v, l);
  for (const StreamEdge& e : data.edges) engine.enqueue(e);
  engine.finish();
}

}  // namespace tcsm::io
