#include "lexmatch/model.hpp"

#include <algorithm>
#include <sstream>

namespace lexmatch {

Edge make_edge(AgentId a, AgentId b) {
    if (a == b) throw std::invalid_argument("edge endpoints must differ");
    return a < b ? Edge{a, b} : Edge{b, a};
}

Instance Instance::bipartite(std::vector<std::string> names, std::vector<Side> sides,
                             std::vector<int> caps, std::vector<std::vector<AgentId>> prefs) {
    Instance inst;
    inst.kind_ = Kind::Bipartite;
    inst.names_ = std::move(names);
    inst.sides_ = std::move(sides);
    inst.caps_ = std::move(caps);
    inst.prefs_ = std::move(prefs);
    if (inst.sides_.size() != inst.caps_.size())
        throw std::invalid_argument("side tags must cover every agent");
    inst.finish("bipartite instance");
    return inst;
}

Instance Instance::fixtures(std::vector<std::string> names, std::vector<int> caps,
                            std::vector<std::vector<AgentId>> prefs) {
    Instance inst;
    inst.kind_ = Kind::Fixtures;
    inst.names_ = std::move(names);
    inst.sides_.assign(caps.size(), Side::A);
    inst.caps_ = std::move(caps);
    inst.prefs_ = std::move(prefs);
    inst.finish("fixtures instance");
    return inst;
}

void Instance::finish(const char* what) {
    const int n = static_cast<int>(caps_.size());
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(std::string(what) + ": " + msg);
    };
    if (names_.size() != caps_.size() || prefs_.size() != caps_.size())
        fail("names, capacities and preference lists must have one entry per agent");
    for (int a = 0; a < n; ++a) {
        if (caps_[a] < 1) fail("capacity of " + names_[a] + " must be at least 1");
        for (int b = a + 1; b < n; ++b)
            if (names_[a] == names_[b]) fail("duplicate display name " + names_[a]);
    }

    ranks_.assign(static_cast<std::size_t>(n) * n, kUnranked);
    for (int a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < prefs_[a].size(); ++i) {
            AgentId b = prefs_[a][i];
            if (b < 0 || b >= n) fail("preference of " + names_[a] + " references unknown agent");
            if (b == a) fail(names_[a] + " lists itself");
            if (ranks_[flat(a, b)] != kUnranked)
                fail(names_[a] + " lists " + names_[b] + " twice");
            ranks_[flat(a, b)] = static_cast<int>(i);
        }
    }
    for (int a = 0; a < n; ++a)
        for (AgentId b : prefs_[a]) {
            if (ranks_[flat(b, a)] == kUnranked)
                fail("acceptability is not mutual: " + names_[a] + " lists " + names_[b] +
                     " but not vice versa");
            if (kind_ == Kind::Bipartite && sides_[a] == sides_[b])
                fail("edge " + names_[a] + "-" + names_[b] + " does not cross sides");
        }

    edge_index_.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
        for (AgentId b : prefs_[a])
            if (a < b) edges_.push_back(Edge{a, b});
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        edge_index_[flat(edges_[i].u, edges_[i].v)] = static_cast<int>(i);
        edge_index_[flat(edges_[i].v, edges_[i].u)] = static_cast<int>(i);
    }
}

AgentId Instance::id_of(std::string_view name) const {
    for (int a = 0; a < n(); ++a)
        if (names_[a] == name) return a;
    return -1;
}

Matching::Matching(int n_agents, std::vector<Edge> edges)
    : edges_(std::move(edges)), partners_(n_agents) {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge e = edges_[i];
        if (e.u < 0 || e.v >= n_agents || e.u >= e.v)
            throw std::invalid_argument("matching edge out of range or not canonical");
        if (i > 0 && edges_[i - 1] == e) throw std::invalid_argument("duplicate matching edge");
        partners_[e.u].push_back(e.v);
        partners_[e.v].push_back(e.u);
    }
    for (auto& p : partners_) std::sort(p.begin(), p.end());
}

bool Matching::contains(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

HalfMatching::HalfMatching(int n_agents, std::vector<std::pair<Edge, WeightHalves>> entries)
    : entries_(std::move(entries)), loads_(n_agents, 0) {
    std::erase_if(entries_, [](const auto& e) { return e.second == 0; });
    std::sort(entries_.begin(), entries_.end());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& [e, w] = entries_[i];
        if (e.u < 0 || e.v >= n_agents || e.u >= e.v)
            throw std::invalid_argument("half-matching edge out of range or not canonical");
        if (w > 2) throw std::invalid_argument("weights must be 0, 1/2 or 1");
        if (i > 0 && entries_[i - 1].first == e)
            throw std::invalid_argument("duplicate half-matching edge");
        loads_[e.u] += w;
        loads_[e.v] += w;
    }
}

HalfMatching HalfMatching::from_matching(const Matching& m) {
    std::vector<std::pair<Edge, WeightHalves>> entries;
    entries.reserve(m.edges().size());
    for (Edge e : m.edges()) entries.emplace_back(e, WeightHalves{2});
    return HalfMatching(m.n_agents(), std::move(entries));
}

WeightHalves HalfMatching::weight_halves(Edge e) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                               [](const auto& ent, Edge key) { return ent.first < key; });
    return (it != entries_.end() && it->first == e) ? it->second : WeightHalves{0};
}

bool HalfMatching::integral() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& ent) { return ent.second == 2; });
}

Matching HalfMatching::to_matching() const {
    if (!integral()) throw std::invalid_argument("half-matching carries fractional weights");
    std::vector<Edge> edges;
    edges.reserve(entries_.size());
    for (const auto& [e, w] : entries_) edges.push_back(e);
    return Matching(n_agents(), std::move(edges));
}

LexVector lex_vector_of(const Instance& inst, const Matching& m, AgentId a) {
    LexVector v{a, {}};
    v.coords.reserve(inst.prefs(a).size());
    const auto& p = m.partners(a);
    for (AgentId b : inst.prefs(a))
        v.coords.push_back(std::binary_search(p.begin(), p.end(), b) ? 2 : 0);
    return v;
}

LexVector lex_vector_of(const Instance& inst, const HalfMatching& m, AgentId a) {
    LexVector v{a, {}};
    v.coords.reserve(inst.prefs(a).size());
    for (AgentId b : inst.prefs(a)) v.coords.push_back(m.weight_halves(make_edge(a, b)));
    return v;
}

Cmp lex_compare(const LexVector& s, const LexVector& t) {
    if (s.owner != t.owner) throw std::invalid_argument("lex_compare across different owners");
    if (s.coords.size() != t.coords.size())
        throw std::invalid_argument("lex_compare length mismatch");
    for (std::size_t i = 0; i < s.coords.size(); ++i) {
        if (s.coords[i] != t.coords[i]) return s.coords[i] > t.coords[i] ? Cmp::Greater : Cmp::Less;
    }
    return Cmp::Equal;
}

template <typename M1, typename M2>
static Cmp compare_bundles_impl(const Instance& inst, const M1& m1, const M2& m2, AgentId a) {
    return lex_compare(lex_vector_of(inst, m1, a), lex_vector_of(inst, m2, a));
}

Cmp compare_bundles(const Instance& inst, const Matching& m1, const Matching& m2, AgentId a) {
    return compare_bundles_impl(inst, m1, m2, a);
}
Cmp compare_bundles(const Instance& inst, const HalfMatching& m1, const HalfMatching& m2,
                    AgentId a) {
    return compare_bundles_impl(inst, m1, m2, a);
}
Cmp compare_bundles(const Instance& inst, const Matching& m1, const HalfMatching& m2, AgentId a) {
    return compare_bundles_impl(inst, m1, m2, a);
}
Cmp compare_bundles(const Instance& inst, const HalfMatching& m1, const Matching& m2, AgentId a) {
    return compare_bundles_impl(inst, m1, m2, a);
}

std::optional<std::string> feasibility_violation(const Instance& inst, const Matching& m) {
    if (m.n_agents() != inst.n()) return "matching sized for a different instance";
    for (Edge e : m.edges())
        if (!inst.has_edge(e))
            return "edge " + inst.name(e.u) + "-" + inst.name(e.v) + " is not mutually acceptable";
    for (AgentId a = 0; a < inst.n(); ++a)
        if (m.degree(a) > inst.cap(a)) {
            std::ostringstream os;
            os << inst.name(a) << " holds " << m.degree(a) << " partners but has capacity "
               << inst.cap(a);
            return os.str();
        }
    return std::nullopt;
}

std::optional<std::string> feasibility_violation(const Instance& inst, const HalfMatching& m) {
    if (m.n_agents() != inst.n()) return "matching sized for a different instance";
    for (const auto& [e, w] : m.entries())
        if (!inst.has_edge(e))
            return "edge " + inst.name(e.u) + "-" + inst.name(e.v) + " is not mutually acceptable";
    for (AgentId a = 0; a < inst.n(); ++a)
        if (m.load_halves(a) > 2 * inst.cap(a)) {
            std::ostringstream os;
            os << inst.name(a) << " carries load " << m.load_halves(a) << "/2 but has capacity "
               << inst.cap(a);
            return os.str();
        }
    return std::nullopt;
}

bool is_feasible(const Instance& inst, const Matching& m) {
    return !feasibility_violation(inst, m).has_value();
}
bool is_feasible(const Instance& inst, const HalfMatching& m) {
    return !feasibility_violation(inst, m).has_value();
}

std::optional<Edge> find_blocking_pair(const Instance& inst, const Matching& m) {
    // worst[a]: rank of a's least preferred current partner, -1 when unmatched.
    std::vector<int> worst(inst.n(), -1);
    for (AgentId a = 0; a < inst.n(); ++a)
        for (AgentId b : m.partners(a)) worst[a] = std::max(worst[a], inst.rank(a, b));
    auto wants = [&](AgentId a, AgentId b) {
        if (m.degree(a) < inst.cap(a)) return true;
        return inst.rank(a, b) < worst[a];
    };
    for (Edge e : inst.edges()) {
        if (m.contains(e)) continue;
        if (wants(e.u, e.v) && wants(e.v, e.u)) return e;
    }
    return std::nullopt;
}

}  // namespace lexmatch
