#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "lexmatch/model.hpp"
#include "lexmatch/oracles.hpp"
#include "lexmatch/reductions.hpp"

// Shared test utilities. The brute-force routines here re-derive results
// straight from the definitions and stay independent of the library's
// search machinery; they are the oracles the fast paths are checked against.
namespace testutil {

using namespace lexmatch;

inline Matching m_of(const Instance& inst,
                     const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<Edge> edges;
    for (const auto& [u, v] : pairs) edges.push_back(make_edge(inst.id_of(u), inst.id_of(v)));
    return Matching(inst.n(), std::move(edges));
}

inline HalfMatching hm_of(const Instance& inst,
                          const std::vector<std::tuple<std::string, std::string, int>>& entries) {
    std::vector<std::pair<Edge, WeightHalves>> es;
    for (const auto& [u, v, w] : entries)
        es.emplace_back(make_edge(inst.id_of(u), inst.id_of(v)), static_cast<WeightHalves>(w));
    return HalfMatching(inst.n(), std::move(es));
}

// All blocking pairs by literal re-derivation: scan each non-matching edge
// and each endpoint's current partners.
inline std::vector<Edge> blocking_pairs_brute(const Instance& inst, const Matching& m) {
    std::vector<Edge> out;
    for (Edge e : inst.edges()) {
        if (m.contains(e)) continue;
        auto wants = [&](AgentId a, AgentId b) {
            if (m.degree(a) < inst.cap(a)) return true;
            for (AgentId c : m.partners(a))
                if (inst.rank(a, b) < inst.rank(a, c)) return true;
            return false;
        };
        if (wants(e.u, e.v) && wants(e.v, e.u)) out.push_back(e);
    }
    return out;
}

// Maximum matching size through plain enumeration.
inline int max_matching_size_brute(const Instance& inst, const std::vector<Edge>& forced) {
    int best = -1;
    for_each_matching(inst, [&](const Matching& m) {
        for (Edge f : forced)
            if (!m.contains(f)) return true;
        best = std::max(best, m.size());
        return true;
    });
    return best;
}

inline bool pareto_optimal_brute(const Instance& inst, const Matching& m) {
    bool dominated = false;
    for_each_matching(inst, [&](const Matching& b) {
        if (pareto_dominates(inst, b, m)) {
            dominated = true;
            return false;
        }
        return true;
    });
    return !dominated;
}

// Literal half-integral weak-block search: every coalition, every feasible
// half-integral assignment on the induced subgraph. Exponential twice over;
// keep the inputs tiny.
inline bool half_blocked_naive(const Instance& inst, const HalfMatching& hm) {
    const int n = inst.n();
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
        std::vector<int> sub;
        for (int ei = 0; ei < static_cast<int>(inst.edges().size()); ++ei) {
            const Edge e = inst.edges()[ei];
            if ((s >> e.u & 1) && (s >> e.v & 1)) sub.push_back(ei);
        }
        std::vector<std::pair<Edge, WeightHalves>> cur;
        bool found = false;
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (found) return;
            if (i == sub.size()) {
                HalfMatching dev(n, cur);
                if (!is_feasible(inst, dev)) return;
                bool strict = false;
                for (AgentId a = 0; a < n; ++a) {
                    if (!(s >> a & 1)) continue;
                    const Cmp c = compare_bundles(inst, dev, hm, a);
                    if (c == Cmp::Less) return;
                    if (c == Cmp::Greater) strict = true;
                }
                found = strict;
                return;
            }
            const Edge e = inst.edges()[sub[i]];
            for (WeightHalves w : {WeightHalves{0}, WeightHalves{1}, WeightHalves{2}}) {
                if (w > 0) cur.emplace_back(e, w);
                self(self, i + 1);
                if (w > 0) cur.pop_back();
                if (found) return;
            }
        };
        rec(rec, 0);
        if (found) return true;
    }
    return false;
}

// Seeded corpus: both kinds, at most 10 agents, 12 edges, capacity 3. The
// density backs off deterministically until the edge bound holds.
inline Instance corpus_instance(int i) {
    const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(i);
    const int n = 4 + i % 7;
    const Kind kind = i % 2 == 0 ? Kind::Bipartite : Kind::Fixtures;
    const int max_cap = 1 + i % 3;
    double density = 0.25 + 0.05 * (i % 8);
    Instance inst = random_instance(seed, n, kind, max_cap, density);
    while (static_cast<int>(inst.edges().size()) > 12) {
        density *= 0.7;
        inst = random_instance(seed, n, kind, max_cap, density);
    }
    return inst;
}

inline Instance corpus_bipartite(int i) {
    const std::uint64_t seed = 5000 + static_cast<std::uint64_t>(i);
    const int n = 4 + i % 7;
    const int max_cap = 1 + i % 3;
    double density = 0.3 + 0.05 * (i % 7);
    Instance inst = random_instance(seed, n, Kind::Bipartite, max_cap, density);
    while (static_cast<int>(inst.edges().size()) > 12) {
        density *= 0.7;
        inst = random_instance(seed, n, Kind::Bipartite, max_cap, density);
    }
    return inst;
}

// Deterministic pick of a feasible matching: the k-th in canonical order,
// with k derived from the seed.
inline Matching some_feasible_matching(const Instance& inst, std::uint64_t seed) {
    std::size_t count = 0;
    for_each_matching(inst, [&](const Matching&) {
        ++count;
        return true;
    });
    const std::size_t target = seed % count;
    Matching picked;
    std::size_t at = 0;
    for_each_matching(inst, [&](const Matching& m) {
        if (at++ == target) {
            picked = m;
            return false;
        }
        return true;
    });
    return picked;
}

inline Instance with_caps(const Instance& inst, const std::vector<int>& caps) {
    std::vector<std::string> names;
    std::vector<Side> sides;
    std::vector<std::vector<AgentId>> prefs;
    for (AgentId a = 0; a < inst.n(); ++a) {
        names.push_back(inst.name(a));
        sides.push_back(inst.side(a));
        prefs.push_back(inst.prefs(a));
    }
    return inst.kind() == Kind::Bipartite
               ? Instance::bipartite(std::move(names), std::move(sides), caps, std::move(prefs))
               : Instance::fixtures(std::move(names), caps, std::move(prefs));
}

}  // namespace testutil
