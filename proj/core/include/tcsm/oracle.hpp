#pragma once

#include <vector>

#include "tcsm/matcher.hpp"
#include "tcsm/query.hpp"
#include "tcsm/query_dag.hpp"
#include "tcsm/temporal_graph.hpp"

namespace tcsm::oracle {

// Every time-constrained embedding of q in the active part of g, sorted.
// Exhaustive; meant for small graphs.
std::vector<Embedding> enumerate_all(const TemporalGraph& g, const TemporalQuery& q);

// Whether query edge e, placed on data edge de with the given endpoint
// assignment, admits a weak embedding of its sub-DAG in which every related
// descendant's timestamp is on the correct side of de's timestamp. Searches
// the explicit path tree; exponential in the DAG size.
bool enumerate_tc_weak(const TemporalGraph& g, const TemporalQuery& q, const QueryDag& dag, EdgeIndex e,
                       EdgeId de, bool swapped);

}  // namespace tcsm::oracle
