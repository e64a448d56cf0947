#pragma once

#include "lexmatch/model.hpp"

namespace lexmatch {

// Capacitated deferred acceptance for bipartite instances: unsaturated
// proposing-side agents walk their lists; the other side holds its best
// proposals up to capacity, rejecting its worst when full. The output is
// pairwise stable.
Matching deferred_acceptance(const Instance& inst, Side proposing = Side::A);

// Maximum cardinality over feasible matchings containing every forced edge,
// computed as |forced| plus a maximum b-matching of the residual instance
// (unit edge capacities, vertex capacities via max flow). Bipartite only;
// an infeasible forced set is a usage error.
int max_matching_size(const Instance& inst, const std::vector<Edge>& forced);

// Greedy maximum-size Pareto-optimal matching: proposing-side agents in id
// order walk their lists and commit an edge whenever a maximum matching
// containing the commitments still exists. Bipartite only.
Matching solve_pareto_max(const Instance& inst, Side proposing = Side::A);

}  // namespace lexmatch
