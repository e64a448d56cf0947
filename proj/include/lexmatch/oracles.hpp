#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lexmatch/model.hpp"

namespace lexmatch {

// Thrown instead of silently truncating when an instance is too large for
// exhaustive search. Carries the refused size so callers can report it.
struct EnumerationBoundError : std::runtime_error {
    int edge_count;
    int bound;
    EnumerationBoundError(int edge_count, int bound, const std::string& estimate);
};

// A weakly blocking coalition: a deviation matching supported inside the
// coalition that every member weakly prefers and the improver strictly
// prefers. Integral deviations are carried with all weights equal to one.
struct BlockingWitness {
    std::vector<AgentId> coalition;  // ascending
    HalfMatching deviation;
    AgentId strict_improver = -1;
};

bool blocking_witness_valid(const Instance& inst, const Matching& m, const BlockingWitness& w);
bool blocking_witness_valid(const Instance& inst, const HalfMatching& m, const BlockingWitness& w);

// Streams every feasible matching exactly once (the empty one first), by DFS
// over the canonical edge order with capacity pruning. The visitor returns
// false to stop early. Refuses instances with more than max_edges edges.
void for_each_matching(const Instance& inst, const std::function<bool(const Matching&)>& visit,
                       int max_edges = 20);

std::vector<Matching> enumerate_matchings(const Instance& inst, int max_edges = 20);

// True when b gives every agent an equal-or-better bundle and at least one
// agent a strictly better one.
bool pareto_dominates(const Instance& inst, const Matching& b, const Matching& m);

struct ParetoCheck {
    bool optimal;
    std::optional<Matching> dominator;  // first dominator in canonical order
};
ParetoCheck is_pareto_optimal(const Instance& inst, const Matching& m, int max_edges = 20);

// Two interchangeable strong-core engines. Closure scans full matchings and
// takes the improver's component as the coalition; Naive enumerates
// coalitions and matchings on the induced subgraph literally. They must
// agree; the cross-check lives in the test suite.
enum class CoreEngine { Closure, Naive };

struct CoreCheck {
    bool in_core;
    std::optional<BlockingWitness> witness;
};
CoreCheck is_in_strong_core(const Instance& inst, const Matching& m,
                            CoreEngine engine = CoreEngine::Closure, int max_edges = 20);

// All matchings in the strong core; the empty list certifies an empty core.
std::vector<Matching> strong_core_elements(const Instance& inst, int max_edges = 20);

// All pairwise stable matchings.
std::vector<Matching> enumerate_stable(const Instance& inst, int max_edges = 20);

// Searches half-integral deviations for a weak block against hm under
// fractional lexicographic comparison. Returns the first witness in
// canonical order, or nullopt when hm is unblocked within the class.
std::optional<BlockingWitness> half_integral_block_search(const Instance& inst,
                                                          const HalfMatching& hm,
                                                          int max_edges = 12);

// Every agent saturated.
bool is_complete(const Instance& inst, const Matching& m);

}  // namespace lexmatch
