#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tcsm {

using VertexId = std::uint32_t;   // data or query vertex id
using EdgeIndex = std::uint32_t;  // query edge id, dense from 0
using EdgeId = std::uint64_t;     // data edge id = arrival sequence number
using Label = std::uint32_t;
using Timestamp = std::uint64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr Label kNoLabel = std::numeric_limits<Label>::max();

// Largest timestamp accepted anywhere; keeps ExtTimestamp sentinels distinct.
inline constexpr Timestamp kMaxTimestamp =
    static_cast<Timestamp>(std::numeric_limits<std::int64_t>::max() - 1);

// Query edges are tracked as bit sets, so a query holds at most 64 edges.
inline constexpr std::size_t kMaxQueryEdges = 64;
inline constexpr std::size_t kMaxQueryVertices = 64;

using EdgeSet = std::uint64_t;

inline constexpr EdgeSet edge_bit(EdgeIndex e) { return EdgeSet{1} << e; }
inline constexpr bool contains(EdgeSet s, EdgeIndex e) { return (s >> e) & 1U; }
inline int popcount(EdgeSet s) { return std::popcount(s); }

template <class F>
void for_each_edge(EdgeSet s, F&& f) {
  while (s != 0) {
    const auto e = static_cast<EdgeIndex>(std::countr_zero(s));
    f(e);
    s &= s - 1;
  }
}

/// Timestamp extended with -inf and +inf.
class ExtTimestamp {
 public:
  constexpr ExtTimestamp() = default;
  constexpr explicit ExtTimestamp(Timestamp t) : raw_(static_cast<std::int64_t>(t)) {}

  static constexpr ExtTimestamp neg_inf() { return ExtTimestamp(kNegRaw, Tag{}); }
  static constexpr ExtTimestamp pos_inf() { return ExtTimestamp(kPosRaw, Tag{}); }

  constexpr bool is_neg_inf() const { return raw_ == kNegRaw; }
  constexpr bool is_pos_inf() const { return raw_ == kPosRaw; }
  constexpr bool is_finite() const { return !is_neg_inf() && !is_pos_inf(); }
  constexpr Timestamp value() const { return static_cast<Timestamp>(raw_); }

  friend constexpr auto operator<=>(ExtTimestamp, ExtTimestamp) = default;

  friend constexpr bool operator<(Timestamp t, ExtTimestamp x) { return ExtTimestamp(t) < x; }

  std::string to_string() const {
    if (is_neg_inf()) return "-inf";
    if (is_pos_inf()) return "+inf";
    return std::to_string(value());
  }

  friend std::ostream& operator<<(std::ostream& os, ExtTimestamp x) { return os << x.to_string(); }

 private:
  struct Tag {};
  static constexpr std::int64_t kNegRaw = std::numeric_limits<std::int64_t>::min();
  static constexpr std::int64_t kPosRaw = std::numeric_limits<std::int64_t>::max();
  constexpr ExtTimestamp(std::int64_t raw, Tag) : raw_(raw) {}

  std::int64_t raw_ = kNegRaw;
};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class QueryError : public Error {
 public:
  using Error::Error;
};

class StreamError : public Error {
 public:
  using Error::Error;
};

}  // namespace tcsm
