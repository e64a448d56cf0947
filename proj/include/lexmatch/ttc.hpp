#pragma once

#include "lexmatch/model.hpp"

namespace lexmatch {

// Pointer-walk work counters; the linear-time claim is covered by a
// performance test over these, not by an asymptotic proof.
struct TtcStats {
    long long walk_steps = 0;
    long long pointer_advances = 0;
    long long cycles = 0;
};

// Mutable state of the top-trading rounds. Active agents are those with
// residual capacity >= 1; each active agent's successor is the best-ranked
// active agent in its list not yet matched to it. Residuals may go negative
// under the near-feasible decrement rule; activity is clamped at >= 1.
class TtcState {
public:
    explicit TtcState(const Instance& inst);
    // Seeds the state with an already-matched half-matching (loads must be
    // whole units); used to check that solver outputs are fixed points.
    TtcState(const Instance& inst, const HalfMatching& seed);

    const Instance& instance() const { return *inst_; }
    int residual(AgentId a) const { return residual_[a]; }
    bool active(AgentId a) const { return residual_[a] >= 1; }
    bool matched_pair(AgentId a, AgentId b) const { return matched_[flat(a, b)] != 0; }

    // Best active not-yet-matched partner of v, or -1 when none. Inactive
    // agents have no successor.
    AgentId successor(AgentId v);
    bool has_arcs();

    // Adds every undirected edge of the cycle with the given weight and
    // decrements each cycle vertex's residual capacity.
    void apply_cycle(const std::vector<AgentId>& cycle, WeightHalves weight, int decrement);

    const std::vector<std::pair<Edge, WeightHalves>>& matched_edges() const { return matched_acc_; }
    TtcStats& stats() { return stats_; }

private:
    std::size_t flat(AgentId a, AgentId b) const {
        return static_cast<std::size_t>(a) * residual_.size() + static_cast<std::size_t>(b);
    }
    void match(AgentId a, AgentId b, WeightHalves w);

    const Instance* inst_;
    std::vector<int> residual_;
    std::vector<int> ptr_;  // per agent, next untried position in prefs
    std::vector<WeightHalves> matched_;
    std::vector<std::pair<Edge, WeightHalves>> matched_acc_;
    TtcStats stats_;
};

// Directed cycle of the successor graph under the canonical rule: walk
// successors from the lowest-id agent that has one and return the cycle the
// walk closes. Throws when no agent has a successor.
std::vector<AgentId> find_cycle(TtcState& state);

struct NearFeasibleResult {
    Matching matching;
    std::vector<int> modified_cap;    // max(cap(v), |M(v)|), at most cap(v)+1
    std::vector<AgentId> violations;  // agents with |M(v)| = cap(v)+1
    TtcStats stats;
};

// Top-trading rounds where long cycles decrement capacities by two. The
// output may exceed each capacity by at most one and lies in the strong core
// of the instance with the modified capacities.
NearFeasibleResult solve_near_feasible(const Instance& inst);

// Variant that never violates capacities: a long cycle through a vertex with
// residual capacity one contributes all its edges at weight 1/2.
HalfMatching solve_half_integral(const Instance& inst, TtcStats* stats = nullptr);

}  // namespace lexmatch
