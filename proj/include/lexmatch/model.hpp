#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lexmatch {

// Agents are dense 0..n-1 indices into an Instance; display names exist for
// file formats and reports only.
using AgentId = int;

enum class Kind { Bipartite, Fixtures };
enum class Side : std::uint8_t { A, B };

// Unordered agent pair, canonically stored with u < v.
struct Edge {
    AgentId u = -1;
    AgentId v = -1;
    auto operator<=>(const Edge&) const = default;
};

Edge make_edge(AgentId a, AgentId b);

// Three-way outcome of a lexicographic bundle comparison.
enum class Cmp { Less, Equal, Greater };

// A matching market: agents with capacities and strict preference lists over
// mutually acceptable partners. The edge set is derived from the lists;
// construction rejects non-mutual mentions, self-mentions, duplicates and
// (for bipartite instances) same-side pairs.
class Instance {
public:
    static Instance bipartite(std::vector<std::string> names, std::vector<Side> sides,
                              std::vector<int> caps, std::vector<std::vector<AgentId>> prefs);
    static Instance fixtures(std::vector<std::string> names, std::vector<int> caps,
                             std::vector<std::vector<AgentId>> prefs);

    Kind kind() const { return kind_; }
    int n() const { return static_cast<int>(caps_.size()); }
    int cap(AgentId a) const { return caps_[a]; }
    Side side(AgentId a) const { return sides_[a]; }
    const std::vector<AgentId>& prefs(AgentId a) const { return prefs_[a]; }
    const std::string& name(AgentId a) const { return names_[a]; }

    // -1 when no agent carries that name.
    AgentId id_of(std::string_view name) const;

    // Position of b in prefs(a); kUnranked when b is not acceptable to a.
    int rank(AgentId a, AgentId b) const { return ranks_[flat(a, b)]; }
    bool acceptable(AgentId a, AgentId b) const { return ranks_[flat(a, b)] != kUnranked; }

    // Canonical edge order: sorted by (min id, max id). All deterministic
    // scans in this library follow it.
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_index(Edge e) const { return edge_index_[flat(e.u, e.v)]; }
    bool has_edge(Edge e) const { return edge_index(e) >= 0; }

    static constexpr int kUnranked = std::numeric_limits<int>::max();

private:
    Instance() = default;
    void finish(const char* what);
    std::size_t flat(AgentId a, AgentId b) const {
        return static_cast<std::size_t>(a) * caps_.size() + static_cast<std::size_t>(b);
    }

    Kind kind_ = Kind::Fixtures;
    std::vector<std::string> names_;
    std::vector<Side> sides_;
    std::vector<int> caps_;
    std::vector<std::vector<AgentId>> prefs_;
    std::vector<Edge> edges_;
    std::vector<int> ranks_;       // n*n, kUnranked where not acceptable
    std::vector<int> edge_index_;  // n*n, -1 where no edge
};

// Integral matching: a duplicate-free set of edges plus per-agent partner
// views. Holds no reference to an Instance; feasibility is checked by
// is_feasible below.
class Matching {
public:
    Matching() = default;
    Matching(int n_agents, std::vector<Edge> edges);

    const std::vector<Edge>& edges() const { return edges_; }
    int size() const { return static_cast<int>(edges_.size()); }
    bool empty() const { return edges_.empty(); }
    // Partners of a, ascending by id.
    const std::vector<AgentId>& partners(AgentId a) const { return partners_[a]; }
    int degree(AgentId a) const { return static_cast<int>(partners_[a].size()); }
    bool contains(Edge e) const;
    int n_agents() const { return static_cast<int>(partners_.size()); }

    bool operator==(const Matching& o) const { return edges_ == o.edges_; }

private:
    std::vector<Edge> edges_;  // sorted canonical
    std::vector<std::vector<AgentId>> partners_;
};

// Edge weights live in {0, 1/2, 1}; stored exactly as halves so lexicographic
// comparison never touches floating point.
using WeightHalves = std::uint8_t;  // 0, 1 or 2

class HalfMatching {
public:
    HalfMatching() = default;
    explicit HalfMatching(int n_agents) : loads_(n_agents, 0) {}
    // Zero-weight entries are dropped; duplicates rejected.
    HalfMatching(int n_agents, std::vector<std::pair<Edge, WeightHalves>> entries);
    static HalfMatching from_matching(const Matching& m);

    const std::vector<std::pair<Edge, WeightHalves>>& entries() const { return entries_; }
    WeightHalves weight_halves(Edge e) const;
    int load_halves(AgentId a) const { return loads_[a]; }
    int n_agents() const { return static_cast<int>(loads_.size()); }
    bool integral() const;
    // Requires integral(); drops the weights.
    Matching to_matching() const;

    bool operator==(const HalfMatching& o) const { return entries_ == o.entries_; }

private:
    std::vector<std::pair<Edge, WeightHalves>> entries_;  // sorted by edge, weights > 0
    std::vector<int> loads_;                              // in halves
};

// Characteristic vector of a partner bundle, coordinates in the owner's
// preference order, values in halves.
struct LexVector {
    AgentId owner = -1;
    std::vector<WeightHalves> coords;
};

LexVector lex_vector_of(const Instance& inst, const Matching& m, AgentId a);
LexVector lex_vector_of(const Instance& inst, const HalfMatching& m, AgentId a);

// Lexicographic comparison of two bundles of the same owner.
// Greater means s is strictly preferred by the owner.
Cmp lex_compare(const LexVector& s, const LexVector& t);

Cmp compare_bundles(const Instance& inst, const Matching& m1, const Matching& m2, AgentId a);
Cmp compare_bundles(const Instance& inst, const HalfMatching& m1, const HalfMatching& m2, AgentId a);
Cmp compare_bundles(const Instance& inst, const Matching& m1, const HalfMatching& m2, AgentId a);
Cmp compare_bundles(const Instance& inst, const HalfMatching& m1, const Matching& m2, AgentId a);

// Empty when feasible, otherwise a one-line diagnostic naming the first
// violation in canonical order.
std::optional<std::string> feasibility_violation(const Instance& inst, const Matching& m);
std::optional<std::string> feasibility_violation(const Instance& inst, const HalfMatching& m);

bool is_feasible(const Instance& inst, const Matching& m);
bool is_feasible(const Instance& inst, const HalfMatching& m);

// First blocking pair in canonical edge order, or nullopt when m is pairwise
// stable. A pair ab not in M blocks when each endpoint is unsaturated or
// holds some strictly worse partner.
std::optional<Edge> find_blocking_pair(const Instance& inst, const Matching& m);

}  // namespace lexmatch
