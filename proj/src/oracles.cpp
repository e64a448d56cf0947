#include "lexmatch/oracles.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace lexmatch {

namespace {

std::string pow_estimate(int base, int exp) {
    std::ostringstream os;
    os << base << "^" << exp;
    if ((base == 2 && exp <= 62) || (base == 3 && exp <= 39)) {
        unsigned long long v = 1;
        for (int i = 0; i < exp; ++i) v *= base;
        os << " = " << v;
    }
    return os.str();
}

void check_bound(const Instance& inst, int max_edges, int base) {
    const int ne = static_cast<int>(inst.edges().size());
    // 62 for the integral engines (one bit per edge), 31 for the
    // half-integral one (two bits per preference coordinate)
    const int engine_limit = base == 2 ? 62 : 31;
    if (ne > std::min(max_edges, engine_limit))
        throw EnumerationBoundError(ne, std::min(max_edges, engine_limit),
                                    pow_estimate(base, ne));
}

// Per-agent incident edges as (canonical edge index, other endpoint).
struct Adjacency {
    std::vector<std::vector<std::pair<int, AgentId>>> inc;
    explicit Adjacency(const Instance& inst) : inc(inst.n()) {
        const auto& es = inst.edges();
        for (int i = 0; i < static_cast<int>(es.size()); ++i) {
            inc[es[i].u].emplace_back(i, es[i].v);
            inc[es[i].v].emplace_back(i, es[i].u);
        }
    }
};

// Bundle of an agent under an edge-set bitmask, packed so that the numeric
// order of keys equals the lexicographic order of characteristic vectors
// (best-ranked partner in the highest bit).
struct IntKeys {
    std::vector<std::vector<std::pair<int, std::uint64_t>>> slots;
    explicit IntKeys(const Instance& inst) : slots(inst.n()) {
        for (AgentId a = 0; a < inst.n(); ++a) {
            const auto& p = inst.prefs(a);
            const int len = static_cast<int>(p.size());
            for (int i = 0; i < len; ++i)
                slots[a].emplace_back(inst.edge_index(make_edge(a, p[i])),
                                      std::uint64_t{1} << (len - 1 - i));
        }
    }
    std::uint64_t key(std::uint64_t mask, AgentId a) const {
        std::uint64_t k = 0;
        for (auto [ei, bit] : slots[a])
            if (mask >> ei & 1) k |= bit;
        return k;
    }
};

// Same packing with two bits per coordinate, for half-integral weights.
// List lengths are bounded by the edge count, which check_bound caps at 31
// before this is ever built.
struct HalfKeys {
    std::vector<std::vector<std::pair<int, int>>> shifts;  // (edge index, bit shift)
    explicit HalfKeys(const Instance& inst) : shifts(inst.n()) {
        for (AgentId a = 0; a < inst.n(); ++a) {
            const auto& p = inst.prefs(a);
            const int len = static_cast<int>(p.size());
            for (int i = 0; i < len; ++i)
                shifts[a].emplace_back(inst.edge_index(make_edge(a, p[i])), 2 * (len - 1 - i));
        }
    }
    std::uint64_t key(const std::vector<WeightHalves>& w, AgentId a) const {
        std::uint64_t k = 0;
        for (auto [ei, sh] : shifts[a]) k |= std::uint64_t{w[ei]} << sh;
        return k;
    }
};

// DFS over a (sub)set of canonical edges; bit positions in the emitted masks
// are always full edge indices. Exclude branch first, so the empty matching
// is emitted first and the order is a fixed canonical one.
struct MaskDfs {
    const Instance& inst;
    std::vector<int> eidx;  // edge indices to branch over
    std::vector<int> load;

    explicit MaskDfs(const Instance& inst_) : inst(inst_), load(inst_.n(), 0) {
        eidx.resize(inst.edges().size());
        for (std::size_t i = 0; i < eidx.size(); ++i) eidx[i] = static_cast<int>(i);
    }
    MaskDfs(const Instance& inst_, std::vector<int> sub)
        : inst(inst_), eidx(std::move(sub)), load(inst_.n(), 0) {}

    template <class F>
    bool run(F&& leaf) {
        return go(0, 0, leaf);
    }

    template <class F>
    bool go(std::size_t i, std::uint64_t mask, F&& leaf) {
        if (i == eidx.size()) return leaf(mask);
        if (!go(i + 1, mask, leaf)) return false;
        const Edge e = inst.edges()[eidx[i]];
        if (load[e.u] < inst.cap(e.u) && load[e.v] < inst.cap(e.v)) {
            ++load[e.u];
            ++load[e.v];
            const bool keep = go(i + 1, mask | (std::uint64_t{1} << eidx[i]), leaf);
            --load[e.u];
            --load[e.v];
            if (!keep) return false;
        }
        return true;
    }
};

std::uint64_t mask_of(const Instance& inst, const Matching& m) {
    std::uint64_t mask = 0;
    for (Edge e : m.edges()) {
        const int ei = inst.edge_index(e);
        if (ei < 0) throw std::invalid_argument("matching uses an edge outside the instance");
        mask |= std::uint64_t{1} << ei;
    }
    return mask;
}

Matching matching_from_mask(const Instance& inst, std::uint64_t mask) {
    std::vector<Edge> edges;
    while (mask) {
        edges.push_back(inst.edges()[std::countr_zero(mask)]);
        mask &= mask - 1;
    }
    return Matching(inst.n(), std::move(edges));
}

struct ClosureScratch {
    // 64-bit stamps: the nested scans in strong_core_elements can run past
    // 2^31 closure checks, and a wrapped stamp would silently skip improvers.
    std::vector<std::int64_t> stamp;
    std::int64_t cur = 0;
    std::vector<AgentId> queue;
    explicit ClosureScratch(int n) : stamp(n, 0) {}
};

// If bmask weakly blocks the matching whose bundle keys are mkeys, returns
// the lowest-id strict improver and its (sorted) component under bmask.
std::optional<std::pair<AgentId, std::vector<AgentId>>> closure_block(
    const Instance& inst, const Adjacency& adj, const IntKeys& keys,
    const std::vector<std::uint64_t>& mkeys, std::uint64_t bmask, ClosureScratch& scr) {
    ++scr.cur;
    for (AgentId a = 0; a < inst.n(); ++a) {
        if (scr.stamp[a] == scr.cur) continue;
        if (keys.key(bmask, a) <= mkeys[a]) continue;
        scr.queue.clear();
        scr.queue.push_back(a);
        scr.stamp[a] = scr.cur;
        bool ok = true;
        for (std::size_t qi = 0; qi < scr.queue.size(); ++qi) {
            const AgentId x = scr.queue[qi];
            if (keys.key(bmask, x) < mkeys[x]) ok = false;
            for (auto [ei, y] : adj.inc[x])
                if ((bmask >> ei & 1) && scr.stamp[y] != scr.cur) {
                    scr.stamp[y] = scr.cur;
                    scr.queue.push_back(y);
                }
        }
        if (ok) {
            std::vector<AgentId> comp = scr.queue;
            std::sort(comp.begin(), comp.end());
            return {{a, std::move(comp)}};
        }
        // the whole component is burned for this bmask; improvers inside it
        // stay stamped and are skipped
    }
    return std::nullopt;
}

BlockingWitness make_int_witness(const Instance& inst, std::uint64_t bmask, AgentId improver,
                                 std::vector<AgentId> coalition) {
    std::vector<std::pair<Edge, WeightHalves>> entries;
    std::uint64_t mask = bmask;
    std::vector<char> in(inst.n(), 0);
    for (AgentId x : coalition) in[x] = 1;
    while (mask) {
        const Edge e = inst.edges()[std::countr_zero(mask)];
        mask &= mask - 1;
        if (in[e.u]) entries.emplace_back(e, WeightHalves{2});
    }
    return BlockingWitness{std::move(coalition), HalfMatching(inst.n(), std::move(entries)),
                           improver};
}

std::vector<std::uint64_t> bundle_keys(const Instance& inst, const IntKeys& keys,
                                       std::uint64_t mask) {
    std::vector<std::uint64_t> out(inst.n());
    for (AgentId a = 0; a < inst.n(); ++a) out[a] = keys.key(mask, a);
    return out;
}

void require_feasible(const Instance& inst, const Matching& m, const char* who) {
    if (auto why = feasibility_violation(inst, m))
        throw std::invalid_argument(std::string(who) + ": infeasible matching: " + *why);
}

}  // namespace

EnumerationBoundError::EnumerationBoundError(int edge_count_, int bound_,
                                             const std::string& estimate)
    : std::runtime_error("exhaustive search refused: " + std::to_string(edge_count_) +
                         " edges exceeds bound " + std::to_string(bound_) + " (up to " + estimate +
                         " candidates)"),
      edge_count(edge_count_),
      bound(bound_) {}

void for_each_matching(const Instance& inst, const std::function<bool(const Matching&)>& visit,
                       int max_edges) {
    check_bound(inst, max_edges, 2);
    MaskDfs dfs(inst);
    dfs.run([&](std::uint64_t mask) { return visit(matching_from_mask(inst, mask)); });
}

std::vector<Matching> enumerate_matchings(const Instance& inst, int max_edges) {
    std::vector<Matching> out;
    for_each_matching(
        inst,
        [&](const Matching& m) {
            out.push_back(m);
            return true;
        },
        max_edges);
    return out;
}

bool pareto_dominates(const Instance& inst, const Matching& b, const Matching& m) {
    bool strict = false;
    for (AgentId a = 0; a < inst.n(); ++a) {
        switch (compare_bundles(inst, b, m, a)) {
            case Cmp::Less: return false;
            case Cmp::Greater: strict = true; break;
            case Cmp::Equal: break;
        }
    }
    return strict;
}

ParetoCheck is_pareto_optimal(const Instance& inst, const Matching& m, int max_edges) {
    check_bound(inst, max_edges, 2);
    require_feasible(inst, m, "is_pareto_optimal");
    const IntKeys keys(inst);
    const auto mkeys = bundle_keys(inst, keys, mask_of(inst, m));
    std::optional<Matching> dominator;
    MaskDfs dfs(inst);
    dfs.run([&](std::uint64_t bmask) {
        bool strict = false;
        for (AgentId a = 0; a < inst.n(); ++a) {
            const std::uint64_t kb = keys.key(bmask, a);
            if (kb < mkeys[a]) return true;
            if (kb > mkeys[a]) strict = true;
        }
        if (!strict) return true;
        dominator = matching_from_mask(inst, bmask);
        return false;
    });
    return ParetoCheck{!dominator.has_value(), std::move(dominator)};
}

namespace {

CoreCheck strong_core_closure(const Instance& inst, const Matching& m, int max_edges) {
    check_bound(inst, max_edges, 2);
    const Adjacency adj(inst);
    const IntKeys keys(inst);
    const auto mkeys = bundle_keys(inst, keys, mask_of(inst, m));
    ClosureScratch scr(inst.n());
    std::optional<BlockingWitness> witness;
    MaskDfs dfs(inst);
    dfs.run([&](std::uint64_t bmask) {
        if (auto hit = closure_block(inst, adj, keys, mkeys, bmask, scr)) {
            witness = make_int_witness(inst, bmask, hit->first, std::move(hit->second));
            return false;
        }
        return true;
    });
    return CoreCheck{!witness.has_value(), std::move(witness)};
}

CoreCheck strong_core_naive(const Instance& inst, const Matching& m, int max_edges) {
    check_bound(inst, max_edges, 2);
    if (inst.n() > 16)
        throw EnumerationBoundError(inst.n(), 16, pow_estimate(2, inst.n()) + " coalitions");
    const IntKeys keys(inst);
    const auto mkeys = bundle_keys(inst, keys, mask_of(inst, m));
    const int n = inst.n();

    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
        std::vector<AgentId> members;
        for (int a = 0; a < n; ++a)
            if (s >> a & 1) members.push_back(a);
        std::vector<int> sub;
        for (int ei = 0; ei < static_cast<int>(inst.edges().size()); ++ei) {
            const Edge e = inst.edges()[ei];
            if ((s >> e.u & 1) && (s >> e.v & 1)) sub.push_back(ei);
        }
        std::optional<BlockingWitness> witness;
        MaskDfs dfs(inst, sub);
        dfs.run([&](std::uint64_t bmask) {
            AgentId improver = -1;
            for (AgentId a : members) {
                const std::uint64_t kb = keys.key(bmask, a);
                if (kb < mkeys[a]) return true;
                if (kb > mkeys[a] && improver < 0) improver = a;
            }
            if (improver < 0) return true;
            std::vector<std::pair<Edge, WeightHalves>> entries;
            std::uint64_t rest = bmask;
            while (rest) {
                entries.emplace_back(inst.edges()[std::countr_zero(rest)], WeightHalves{2});
                rest &= rest - 1;
            }
            witness = BlockingWitness{members, HalfMatching(inst.n(), std::move(entries)),
                                      improver};
            return false;
        });
        if (witness) return CoreCheck{false, std::move(witness)};
    }
    return CoreCheck{true, std::nullopt};
}

}  // namespace

CoreCheck is_in_strong_core(const Instance& inst, const Matching& m, CoreEngine engine,
                            int max_edges) {
    require_feasible(inst, m, "is_in_strong_core");
    return engine == CoreEngine::Closure ? strong_core_closure(inst, m, max_edges)
                                         : strong_core_naive(inst, m, max_edges);
}

std::vector<Matching> strong_core_elements(const Instance& inst, int max_edges) {
    check_bound(inst, max_edges, 2);
    const Adjacency adj(inst);
    const IntKeys keys(inst);
    const int ne = static_cast<int>(inst.edges().size());

    // Both loops stream: candidate matchings outside, deviations inside.
    // Two pre-passes kill most candidates before the inner scan: single-edge
    // deviations, then deviations that blocked earlier candidates (gadget
    // markets reuse the same few trade patterns over and over). The cache
    // only short-circuits the blocked/unblocked decision, so the returned
    // list is independent of it.
    ClosureScratch scr(inst.n());
    std::vector<std::uint64_t> mkeys;
    std::vector<std::uint64_t> known_blockers;
    std::size_t cache_slot = 0;
    std::vector<Matching> core;
    MaskDfs outer(inst);
    outer.run([&](std::uint64_t mmask) {
        mkeys = bundle_keys(inst, keys, mmask);
        bool blocked = false;
        for (int ei = 0; ei < ne && !blocked; ++ei) {
            if (mmask >> ei & 1) continue;
            const Edge e = inst.edges()[ei];
            const std::uint64_t b = std::uint64_t{1} << ei;
            const std::uint64_t ku = keys.key(b, e.u), kv = keys.key(b, e.v);
            blocked =
                ku >= mkeys[e.u] && kv >= mkeys[e.v] && (ku > mkeys[e.u] || kv > mkeys[e.v]);
        }
        for (std::size_t k = 0; k < known_blockers.size() && !blocked; ++k)
            blocked = closure_block(inst, adj, keys, mkeys, known_blockers[k], scr).has_value();
        if (!blocked) {
            MaskDfs inner(inst);
            inner.run([&](std::uint64_t bmask) {
                if (!closure_block(inst, adj, keys, mkeys, bmask, scr)) return true;
                blocked = true;
                if (known_blockers.size() < 512) {
                    known_blockers.push_back(bmask);
                } else {
                    known_blockers[cache_slot] = bmask;
                    cache_slot = (cache_slot + 1) % known_blockers.size();
                }
                return false;
            });
        }
        if (!blocked) core.push_back(matching_from_mask(inst, mmask));
        return true;
    });
    return core;
}

std::vector<Matching> enumerate_stable(const Instance& inst, int max_edges) {
    check_bound(inst, max_edges, 2);
    const int n = inst.n();
    const int ne = static_cast<int>(inst.edges().size());
    std::vector<Matching> out;
    std::vector<int> deg(n), worst(n);
    MaskDfs dfs(inst);
    dfs.run([&](std::uint64_t mask) {
        std::fill(deg.begin(), deg.end(), 0);
        std::fill(worst.begin(), worst.end(), -1);
        std::uint64_t rest = mask;
        while (rest) {
            const Edge e = inst.edges()[std::countr_zero(rest)];
            rest &= rest - 1;
            ++deg[e.u];
            ++deg[e.v];
            worst[e.u] = std::max(worst[e.u], inst.rank(e.u, e.v));
            worst[e.v] = std::max(worst[e.v], inst.rank(e.v, e.u));
        }
        auto wants = [&](AgentId a, AgentId b) {
            return deg[a] < inst.cap(a) || inst.rank(a, b) < worst[a];
        };
        for (int ei = 0; ei < ne; ++ei) {
            if (mask >> ei & 1) continue;
            const Edge e = inst.edges()[ei];
            if (wants(e.u, e.v) && wants(e.v, e.u)) return true;  // blocked, not stable
        }
        out.push_back(matching_from_mask(inst, mask));
        return true;
    });
    return out;
}

std::optional<BlockingWitness> half_integral_block_search(const Instance& inst,
                                                          const HalfMatching& hm, int max_edges) {
    check_bound(inst, max_edges, 3);
    if (auto why = feasibility_violation(inst, hm))
        throw std::invalid_argument(std::string("half_integral_block_search: ") + *why);
    const int n = inst.n();
    const int ne = static_cast<int>(inst.edges().size());
    const Adjacency adj(inst);
    const HalfKeys keys(inst);

    std::vector<WeightHalves> hw(ne, 0);
    for (const auto& [e, w] : hm.entries()) hw[inst.edge_index(e)] = w;
    std::vector<std::uint64_t> hkeys(n);
    for (AgentId a = 0; a < n; ++a) hkeys[a] = keys.key(hw, a);

    std::vector<WeightHalves> w(ne, 0);
    std::vector<int> load(n, 0);  // halves
    ClosureScratch scr(n);
    std::optional<BlockingWitness> witness;

    auto leaf = [&]() {
        ++scr.cur;
        for (AgentId a = 0; a < n && !witness; ++a) {
            if (scr.stamp[a] == scr.cur) continue;
            if (keys.key(w, a) <= hkeys[a]) continue;
            scr.queue.clear();
            scr.queue.push_back(a);
            scr.stamp[a] = scr.cur;
            bool ok = true;
            for (std::size_t qi = 0; qi < scr.queue.size(); ++qi) {
                const AgentId x = scr.queue[qi];
                if (keys.key(w, x) < hkeys[x]) ok = false;
                for (auto [ei, y] : adj.inc[x])
                    if (w[ei] > 0 && scr.stamp[y] != scr.cur) {
                        scr.stamp[y] = scr.cur;
                        scr.queue.push_back(y);
                    }
            }
            if (!ok) continue;
            std::vector<AgentId> comp = scr.queue;
            std::sort(comp.begin(), comp.end());
            std::vector<char> in(n, 0);
            for (AgentId x : comp) in[x] = 1;
            std::vector<std::pair<Edge, WeightHalves>> entries;
            for (int ei = 0; ei < ne; ++ei)
                if (w[ei] > 0 && in[inst.edges()[ei].u]) entries.emplace_back(inst.edges()[ei], w[ei]);
            witness = BlockingWitness{std::move(comp), HalfMatching(n, std::move(entries)), a};
        }
        return !witness.has_value();
    };

    auto go = [&](auto&& self, int i) -> bool {
        if (i == ne) return leaf();
        const Edge e = inst.edges()[i];
        for (WeightHalves wh : {WeightHalves{0}, WeightHalves{1}, WeightHalves{2}}) {
            if (load[e.u] + wh > 2 * inst.cap(e.u) || load[e.v] + wh > 2 * inst.cap(e.v)) break;
            w[i] = wh;
            load[e.u] += wh;
            load[e.v] += wh;
            const bool keep = self(self, i + 1);
            load[e.u] -= wh;
            load[e.v] -= wh;
            w[i] = 0;
            if (!keep) return false;
        }
        return true;
    };
    go(go, 0);
    return witness;
}

bool is_complete(const Instance& inst, const Matching& m) {
    for (AgentId a = 0; a < inst.n(); ++a)
        if (m.degree(a) != inst.cap(a)) return false;
    return true;
}

namespace {

template <typename Current>
bool witness_valid_impl(const Instance& inst, const Current& m, const BlockingWitness& w) {
    if (w.coalition.empty()) return false;
    if (!std::is_sorted(w.coalition.begin(), w.coalition.end())) return false;
    std::vector<char> in(inst.n(), 0);
    for (AgentId a : w.coalition) {
        if (a < 0 || a >= inst.n() || in[a]) return false;
        in[a] = 1;
    }
    if (w.strict_improver < 0 || !in[w.strict_improver]) return false;
    if (!is_feasible(inst, w.deviation)) return false;
    for (const auto& [e, wt] : w.deviation.entries())
        if (!in[e.u] || !in[e.v]) return false;
    for (AgentId a : w.coalition)
        if (compare_bundles(inst, w.deviation, m, a) == Cmp::Less) return false;
    return compare_bundles(inst, w.deviation, m, w.strict_improver) == Cmp::Greater;
}

}  // namespace

bool blocking_witness_valid(const Instance& inst, const Matching& m, const BlockingWitness& w) {
    return witness_valid_impl(inst, m, w);
}
bool blocking_witness_valid(const Instance& inst, const HalfMatching& m,
                            const BlockingWitness& w) {
    return witness_valid_impl(inst, m, w);
}

}  // namespace lexmatch
