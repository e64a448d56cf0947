#include "lexmatch/ttc.hpp"

#include <algorithm>
#include <stdexcept>

namespace lexmatch {

TtcState::TtcState(const Instance& inst)
    : inst_(&inst),
      residual_(inst.n()),
      ptr_(inst.n(), 0),
      matched_(static_cast<std::size_t>(inst.n()) * inst.n(), 0) {
    for (AgentId a = 0; a < inst.n(); ++a) residual_[a] = inst.cap(a);
}

TtcState::TtcState(const Instance& inst, const HalfMatching& seed) : TtcState(inst) {
    for (const auto& [e, w] : seed.entries()) {
        if (!inst.has_edge(e)) throw std::invalid_argument("seed edge outside the instance");
        match(e.u, e.v, w);
    }
    for (AgentId a = 0; a < inst.n(); ++a) {
        const int load = seed.load_halves(a);
        if (load % 2 != 0) throw std::invalid_argument("seed loads must be whole units");
        residual_[a] = inst.cap(a) - load / 2;
    }
}

void TtcState::match(AgentId a, AgentId b, WeightHalves w) {
    matched_[flat(a, b)] = w;
    matched_[flat(b, a)] = w;
    matched_acc_.emplace_back(make_edge(a, b), w);
}

AgentId TtcState::successor(AgentId v) {
    if (!active(v)) return -1;
    const auto& p = inst_->prefs(v);
    // Skip reasons are permanent: inactive agents never reactivate and
    // matched pairs never unmatch, so the pointer only moves forward.
    while (ptr_[v] < static_cast<int>(p.size()) &&
           (!active(p[ptr_[v]]) || matched_pair(v, p[ptr_[v]]))) {
        ++ptr_[v];
        ++stats_.pointer_advances;
    }
    return ptr_[v] < static_cast<int>(p.size()) ? p[ptr_[v]] : -1;
}

bool TtcState::has_arcs() {
    for (AgentId v = 0; v < inst_->n(); ++v)
        if (successor(v) >= 0) return true;
    return false;
}

void TtcState::apply_cycle(const std::vector<AgentId>& cycle, WeightHalves weight,
                           int decrement) {
    if (cycle.size() < 2) throw std::invalid_argument("cycles have at least two vertices");
    if (cycle.size() == 2) {
        match(cycle[0], cycle[1], weight);
    } else {
        for (std::size_t i = 0; i < cycle.size(); ++i)
            match(cycle[i], cycle[(i + 1) % cycle.size()], weight);
    }
    for (AgentId v : cycle) residual_[v] -= decrement;
    ++stats_.cycles;
}

std::vector<AgentId> find_cycle(TtcState& state) {
    const Instance& inst = state.instance();
    AgentId start = -1;
    for (AgentId v = 0; v < inst.n() && start < 0; ++v)
        if (state.successor(v) >= 0) start = v;
    if (start < 0) throw std::invalid_argument("find_cycle: the successor graph has no arcs");

    // Every walk target has a successor itself (its predecessor is active and
    // unmatched to it), so the walk closes a cycle within n steps.
    std::vector<int> pos(inst.n(), -1);
    std::vector<AgentId> path;
    AgentId v = start;
    while (pos[v] < 0) {
        pos[v] = static_cast<int>(path.size());
        path.push_back(v);
        v = state.successor(v);
        ++state.stats().walk_steps;
    }
    return std::vector<AgentId>(path.begin() + pos[v], path.end());
}

namespace {

// Shared driver: pick_decrement decides edge weight and capacity decrement
// from the found cycle.
template <typename Rule>
void run_rounds(TtcState& st, Rule&& rule) {
    while (st.has_arcs()) {
        const std::vector<AgentId> cycle = find_cycle(st);
        const auto [weight, dec] = rule(st, cycle);
        st.apply_cycle(cycle, weight, dec);
    }
}

}  // namespace

NearFeasibleResult solve_near_feasible(const Instance& inst) {
    TtcState st(inst);
    run_rounds(st, [](TtcState&, const std::vector<AgentId>& cycle) {
        return cycle.size() == 2 ? std::pair<WeightHalves, int>{2, 1}
                                 : std::pair<WeightHalves, int>{2, 2};
    });

    std::vector<Edge> edges;
    edges.reserve(st.matched_edges().size());
    for (const auto& [e, w] : st.matched_edges()) edges.push_back(e);
    Matching m(inst.n(), std::move(edges));

    NearFeasibleResult res{std::move(m), std::vector<int>(inst.n()), {}, st.stats()};
    for (AgentId a = 0; a < inst.n(); ++a) {
        res.modified_cap[a] = std::max(inst.cap(a), res.matching.degree(a));
        if (res.matching.degree(a) > inst.cap(a)) res.violations.push_back(a);
    }
    return res;
}

HalfMatching solve_half_integral(const Instance& inst, TtcStats* stats) {
    TtcState st(inst);
    run_rounds(st, [](TtcState& s, const std::vector<AgentId>& cycle) {
        if (cycle.size() == 2) return std::pair<WeightHalves, int>{2, 1};
        const bool tight = std::any_of(cycle.begin(), cycle.end(),
                                       [&](AgentId v) { return s.residual(v) == 1; });
        return tight ? std::pair<WeightHalves, int>{1, 1} : std::pair<WeightHalves, int>{2, 2};
    });
    if (stats) *stats = st.stats();
    return HalfMatching(inst.n(), st.matched_edges());
}

}  // namespace lexmatch
