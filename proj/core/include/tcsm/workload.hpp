#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcsm/query.hpp"
#include "tcsm/stream_engine.hpp"
#include "tcsm/temporal_graph.hpp"

namespace tcsm::workload {

/// Query topology obtained by walking a data graph, with the walked data
/// elements as a witness embedding.
struct WalkQuery {
  std::vector<QueryVertex> vertices;
  std::vector<QueryEdge> edges;
  std::vector<VertexId> witness_vertices;  // per query vertex
  std::vector<EdgeId> witness_edges;       // per query edge
  std::vector<Timestamp> witness_ts;       // per query edge
};

// Walks the active graph until `size` distinct edges are collected. A
// stuck walk restarts from an already visited vertex; after max_attempts
// failed walks a GraphError is thrown.
WalkQuery random_walk_query(const TemporalGraph& g, std::size_t size, std::uint64_t seed,
                            std::size_t max_attempts = 64);

// Direct order pairs over edges 0..n-1 consistent with the witness
// timestamps. Density 0 gives no pairs, density 1 a chain (throws
// QueryError when witness timestamps collide), anything in between a
// permutation-induced order thinned toward the target.
std::vector<OrderPair> impose_order(const std::vector<Timestamp>& witness_ts, double density, std::uint64_t seed);

struct SynthParams {
  std::size_t n_vertices = 100;
  std::size_t n_edges = 1000;
  std::size_t label_count = 4;
  double parallel_edge_rate = 0.5;
  std::uint64_t seed = 1;
};

struct SynthStream {
  std::vector<std::pair<VertexId, Label>> vertices;  // label ids 0..label_count-1
  std::vector<StreamEdge> edges;                     // timestamps 1..n_edges
};

SynthStream synth_stream_data(const SynthParams& p);
// Same stream in the text stream format, labels written as L<k>.
std::string synth_stream(const SynthParams& p);

}  // namespace tcsm::workload
