#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lexmatch/model.hpp"

namespace lexmatch {

// A built-in example market, together with its
// named reference matchings.
struct Fixture {
    Instance inst;
    std::vector<std::pair<std::string, Matching>> reference;
    const Matching& ref(const std::string& name) const;
};

// Known names: example1, example2, example3, empty_core.
Fixture fixture(const std::string& name);
const std::vector<std::string>& fixture_names();

// Stable marriage with ties and incomplete lists, restricted so that men
// have strict lists and each tied woman's list is one tie of exactly two men
// (the form the strong-core gadget consumes). Sought: a complete weakly
// stable matching.
struct ComSmtiInstance {
    struct Woman {
        bool tie = false;
        std::vector<int> list;  // strict order, or the unordered tie members
    };
    std::vector<std::string> man_names;
    std::vector<std::string> woman_names;
    std::vector<std::vector<int>> men_prefs;
    std::vector<Woman> women;

    int n_men() const { return static_cast<int>(men_prefs.size()); }
    int n_women() const { return static_cast<int>(women.size()); }
    void validate() const;  // throws std::invalid_argument
};

// Exact cover by 3-sets: 3n items, m triples, sought n disjoint triples
// covering every item.
struct X3cInstance {
    std::vector<std::string> item_names;       // size 3n
    std::vector<std::array<int, 3>> triples;   // ascending item indices

    int n() const { return static_cast<int>(item_names.size()) / 3; }
    int m() const { return static_cast<int>(triples.size()); }
    void validate() const;
};

struct Provenance {
    std::string reduction;
    std::string source_digest;
};

struct CoreReduction {
    Instance inst;
    Provenance prov;
};

// The strong-core hardness gadget: unit copies of men and strict-list women,
// a four-agent gadget per tied woman, one copy of the empty-core instance,
// and a special agent g wired to every man. The strong core of the output is
// nonempty iff the source has a complete weakly stable matching.
CoreReduction reduce_comsmti_to_core(const ComSmtiInstance& src);

// The strong-core member the construction prescribes for a complete weakly
// stable source matching (woman index per man).
Matching comsmti_core_matching(const ComSmtiInstance& src, const Instance& reduced,
                               const std::vector<int>& partner_of_man);

struct X3cParetoReduction {
    Instance inst;
    Matching m;  // the complete matching whose Pareto-optimality encodes the cover question
    Provenance prov;
};

X3cParetoReduction reduce_x3c_to_pareto(const X3cInstance& src);

// The dominating matching prescribed for an exact cover (ascending triple
// indices); Pareto-dominates the reduction's matching m.
Matching x3c_pareto_dominator(const X3cInstance& src, const Instance& inst,
                              const std::vector<int>& cover);

struct X3cFixturesReduction {
    Instance inst;
    Matching complete_m;  // the canonical complete matching of the output
    Provenance prov;
};

// Fixtures-flavoured variant: every a_i b_i and a_i b_{i-1} edge is replaced
// by an 11-agent gadget block (a copy of example3 plus a connector agent).
// All capacities stay at most 4.
X3cFixturesReduction reduce_x3c_to_fixtures(const X3cInstance& src);

Matching x3c_fixtures_dominator(const X3cInstance& src, const Instance& inst,
                                const std::vector<int>& cover);

struct CoreCheckReduction {
    Instance inst;
    Matching m;
    Provenance prov;
};

// Pareto-check-to-strong-core-check gadget: two fresh agents a*, b* placed on
// top of every list, all capacities raised by one, and the matching extended
// with one star edge per agent. m is Pareto-optimal in the source iff the
// extension is in the strong core of the output.
CoreCheckReduction reduce_pareto_to_core_check(const Instance& inst, const Matching& m);

// Exhaustive source-problem solvers used to validate the reductions at tiny
// scale. Both refuse instances beyond their bounds.
std::optional<std::vector<int>> solve_comsmti_brute(const ComSmtiInstance& src);
std::optional<std::vector<int>> solve_x3c_brute(const X3cInstance& src);

// Reproducible random instance: same arguments, same instance.
Instance random_instance(std::uint64_t seed, int n, Kind kind, int max_cap, double density);

}  // namespace lexmatch
