#include "lexmatch/reductions.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

#include "lexmatch/oracles.hpp"
#include "lexmatch/textio.hpp"

namespace lexmatch {

namespace {

// Assembles an Instance from display names; ids follow insertion order.
struct Builder {
    Kind kind;
    std::vector<std::string> names;
    std::vector<Side> sides;
    std::vector<int> caps;
    std::vector<std::vector<std::string>> lists;

    explicit Builder(Kind k) : kind(k) {}

    void agent(std::string name, int cap, Side side = Side::A) {
        names.push_back(std::move(name));
        caps.push_back(cap);
        sides.push_back(side);
        lists.emplace_back();
    }
    void prefs(const std::string& who, std::vector<std::string> list) {
        lists[index(who)] = std::move(list);
    }
    int index(const std::string& who) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == who) return static_cast<int>(i);
        throw std::invalid_argument("builder: unknown agent " + who);
    }
    Instance build() const {
        std::vector<std::vector<AgentId>> prefs(names.size());
        for (std::size_t a = 0; a < names.size(); ++a)
            for (const auto& nm : lists[a]) prefs[a].push_back(index(nm));
        return kind == Kind::Bipartite
                   ? Instance::bipartite(names, sides, caps, std::move(prefs))
                   : Instance::fixtures(names, caps, std::move(prefs));
    }
};

Matching matching_by_names(const Instance& inst,
                           const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
        const AgentId a = inst.id_of(u), b = inst.id_of(v);
        if (a < 0 || b < 0) throw std::invalid_argument("unknown agent in reference matching");
        edges.push_back(make_edge(a, b));
    }
    return Matching(inst.n(), std::move(edges));
}

void push_unique(std::vector<std::string>& list, std::string name) {
    if (std::find(list.begin(), list.end(), name) == list.end()) list.push_back(std::move(name));
}

// The 12-agent empty-core table; reused verbatim by the strong-core gadget.
struct EmptyCoreRow {
    const char* name;
    int cap;
    Side side;
    std::vector<const char*> list;
};

const std::vector<EmptyCoreRow>& empty_core_rows() {
    static const std::vector<EmptyCoreRow> rows = {
        {"a", 2, Side::A, {"u", "y", "v", "a'", "x"}},
        {"b", 2, Side::A, {"v", "x", "u", "b'", "y"}},
        {"c", 1, Side::A, {"x", "y"}},
        {"d", 1, Side::A, {"y", "x"}},
        {"x'", 1, Side::A, {"x"}},
        {"y'", 1, Side::A, {"y"}},
        {"x", 2, Side::B, {"d", "a", "c", "x'", "b"}},
        {"y", 2, Side::B, {"c", "b", "d", "y'", "a"}},
        {"u", 1, Side::B, {"b", "a"}},
        {"v", 1, Side::B, {"a", "b"}},
        {"a'", 1, Side::B, {"a"}},
        {"b'", 1, Side::B, {"b"}},
    };
    return rows;
}

Fixture make_example1() {
    Builder b(Kind::Bipartite);
    for (const char* nm : {"a", "b", "c", "d"}) b.agent(nm, 2, Side::A);
    for (const char* nm : {"x", "y", "z", "w"}) b.agent(nm, 2, Side::B);
    b.prefs("a", {"x", "z", "w", "y"});
    b.prefs("b", {"y", "z", "w", "x"});
    b.prefs("c", {"x", "y"});
    b.prefs("d", {"x", "y"});
    b.prefs("x", {"b", "c", "d", "a"});
    b.prefs("y", {"a", "c", "d", "b"});
    b.prefs("z", {"a", "b"});
    b.prefs("w", {"a", "b"});
    Instance inst = b.build();
    Matching stable = matching_by_names(
        inst, {{"a", "z"}, {"a", "w"}, {"b", "z"}, {"b", "w"}, {"c", "x"}, {"c", "y"}, {"d", "x"}, {"d", "y"}});
    Matching core = matching_by_names(inst, {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}});
    return Fixture{std::move(inst), {{"stable", std::move(stable)}, {"strong-core", std::move(core)}}};
}

Fixture make_example2() {
    Builder b(Kind::Bipartite);
    for (const char* nm : {"a", "b", "c", "d", "p"}) b.agent(nm, 2, Side::A);
    for (const char* nm : {"x", "y", "z", "w", "q"}) b.agent(nm, 2, Side::B);
    b.prefs("a", {"x", "y", "z", "q", "w"});
    b.prefs("b", {"y", "x", "w", "q", "z"});
    b.prefs("c", {"z", "w", "x", "q", "y"});
    b.prefs("d", {"w", "z", "y", "q", "x"});
    b.prefs("p", {"x", "y", "z", "w", "q"});
    b.prefs("x", {"d", "c", "b", "p", "a"});
    b.prefs("y", {"c", "d", "a", "p", "b"});
    b.prefs("z", {"b", "a", "d", "p", "c"});
    b.prefs("w", {"a", "b", "c", "p", "d"});
    b.prefs("q", {"a", "b", "c", "d", "p"});
    Instance inst = b.build();
    Matching stable = matching_by_names(inst, {{"a", "y"},
                                               {"a", "z"},
                                               {"b", "x"},
                                               {"b", "w"},
                                               {"c", "w"},
                                               {"c", "x"},
                                               {"d", "z"},
                                               {"d", "y"},
                                               {"p", "q"}});
    Matching core = matching_by_names(inst, {{"a", "x"},
                                             {"a", "w"},
                                             {"b", "y"},
                                             {"b", "z"},
                                             {"c", "z"},
                                             {"c", "y"},
                                             {"d", "w"},
                                             {"d", "x"},
                                             {"p", "q"}});
    return Fixture{std::move(inst), {{"stable", std::move(stable)}, {"strong-core", std::move(core)}}};
}

Fixture make_example3() {
    Builder b(Kind::Fixtures);
    b.agent("x1", 2);
    b.agent("x2", 2);
    for (int i = 3; i <= 10; ++i) b.agent("x" + std::to_string(i), 1);
    b.prefs("x1", {"x2", "x4", "x3"});
    b.prefs("x2", {"x1", "x5", "x6"});
    b.prefs("x3", {"x7", "x1"});
    b.prefs("x4", {"x8", "x1"});
    b.prefs("x5", {"x9", "x2"});
    b.prefs("x6", {"x10", "x2"});
    b.prefs("x7", {"x3", "x8"});
    b.prefs("x8", {"x4", "x7"});
    b.prefs("x9", {"x5", "x10"});
    b.prefs("x10", {"x6", "x9"});
    Instance inst = b.build();
    Matching complete = matching_by_names(
        inst, {{"x1", "x3"}, {"x1", "x4"}, {"x2", "x5"}, {"x2", "x6"}, {"x7", "x8"}, {"x9", "x10"}});
    Matching dominating = matching_by_names(
        inst, {{"x1", "x2"}, {"x3", "x7"}, {"x4", "x8"}, {"x5", "x9"}, {"x6", "x10"}});
    return Fixture{std::move(inst),
                   {{"complete", std::move(complete)}, {"dominating", std::move(dominating)}}};
}

Fixture make_empty_core() {
    Builder b(Kind::Bipartite);
    for (const auto& row : empty_core_rows()) b.agent(row.name, row.cap, row.side);
    for (const auto& row : empty_core_rows()) {
        std::vector<std::string> list(row.list.begin(), row.list.end());
        b.prefs(row.name, std::move(list));
    }
    return Fixture{b.build(), {}};
}

}  // namespace

const Matching& Fixture::ref(const std::string& name) const {
    for (const auto& [nm, m] : reference)
        if (nm == name) return m;
    throw std::invalid_argument("fixture has no reference matching named " + name);
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = {"example1", "example2", "example3",
                                                   "empty_core"};
    return names;
}

Fixture fixture(const std::string& name) {
    if (name == "example1") return make_example1();
    if (name == "example2") return make_example2();
    if (name == "example3") return make_example3();
    if (name == "empty_core") return make_empty_core();
    throw std::invalid_argument("unknown fixture " + name);
}

void ComSmtiInstance::validate() const {
    if (man_names.size() != men_prefs.size() || woman_names.size() != women.size())
        throw std::invalid_argument("comsmti: names and lists out of step");
    const int nm = n_men(), nw = n_women();
    for (int i = 0; i < nm; ++i) {
        std::vector<char> seen(nw, 0);
        for (int w : men_prefs[i]) {
            if (w < 0 || w >= nw) throw std::invalid_argument("comsmti: man lists unknown woman");
            if (seen[w]) throw std::invalid_argument("comsmti: duplicate woman in a man's list");
            seen[w] = 1;
        }
    }
    for (int w = 0; w < nw; ++w) {
        std::vector<char> seen(nm, 0);
        for (int m : women[w].list) {
            if (m < 0 || m >= nm) throw std::invalid_argument("comsmti: woman lists unknown man");
            if (seen[m]) throw std::invalid_argument("comsmti: duplicate man in a woman's list");
            seen[m] = 1;
        }
        if (women[w].tie && women[w].list.size() != 2)
            throw std::invalid_argument(
                "comsmti: a tied woman's list must be a single tie of exactly two men (the "
                "strong-core gadget connects one copy per tie member)");
    }
    for (int i = 0; i < nm; ++i)
        for (int w : men_prefs[i]) {
            const auto& wl = women[w].list;
            if (std::find(wl.begin(), wl.end(), i) == wl.end())
                throw std::invalid_argument("comsmti: acceptability is not mutual");
        }
    for (int w = 0; w < nw; ++w)
        for (int m : women[w].list) {
            const auto& ml = men_prefs[m];
            if (std::find(ml.begin(), ml.end(), w) == ml.end())
                throw std::invalid_argument("comsmti: acceptability is not mutual");
        }
}

void X3cInstance::validate() const {
    const int items = static_cast<int>(item_names.size());
    if (items == 0 || items % 3 != 0)
        throw std::invalid_argument("x3c: the item count must be a positive multiple of 3");
    for (int i = 0; i < items; ++i)
        for (int j = i + 1; j < items; ++j)
            if (item_names[i] == item_names[j])
                throw std::invalid_argument("x3c: duplicate item name " + item_names[i]);
    for (const auto& t : triples) {
        if (t[0] < 0 || t[2] >= items || t[0] >= t[1] || t[1] >= t[2])
            throw std::invalid_argument("x3c: triples need three distinct in-range items");
    }
    for (std::size_t i = 0; i < triples.size(); ++i)
        for (std::size_t j = i + 1; j < triples.size(); ++j)
            if (triples[i] == triples[j]) throw std::invalid_argument("x3c: duplicate triple");
}

CoreReduction reduce_comsmti_to_core(const ComSmtiInstance& src) {
    src.validate();
    Builder b(Kind::Bipartite);

    auto man = [&](int i) { return src.man_names[i] + "'"; };
    // Strict-list women keep one primed copy; tied women get two. The lower-
    // indexed tie member attaches to the single-primed copy.
    auto woman_copy_for = [&](int w, int m) {
        if (!src.women[w].tie) return src.woman_names[w] + "'";
        const int lo = std::min(src.women[w].list[0], src.women[w].list[1]);
        return src.woman_names[w] + (m == lo ? "'" : "''");
    };

    for (int i = 0; i < src.n_men(); ++i) b.agent(man(i), 1, Side::A);
    for (int w = 0; w < src.n_women(); ++w)
        if (!src.women[w].tie) b.agent(src.woman_names[w] + "'", 1, Side::B);
    for (int w = 0; w < src.n_women(); ++w) {
        if (!src.women[w].tie) continue;
        const std::string& wn = src.woman_names[w];
        b.agent(wn + "'", 2, Side::B);
        b.agent(wn + "''", 2, Side::B);
        b.agent("c." + wn, 2, Side::A);
        b.agent("d." + wn, 1, Side::A);
    }
    for (const auto& row : empty_core_rows())
        b.agent(std::string("G.") + row.name, row.cap, row.side);
    b.agent("g", 1, Side::B);

    for (int i = 0; i < src.n_men(); ++i) {
        std::vector<std::string> list;
        for (int w : src.men_prefs[i]) list.push_back(woman_copy_for(w, i));
        list.push_back("g");
        b.prefs(man(i), std::move(list));
    }
    for (int w = 0; w < src.n_women(); ++w) {
        const std::string& wn = src.woman_names[w];
        if (!src.women[w].tie) {
            std::vector<std::string> list;
            for (int m : src.women[w].list) list.push_back(man(m));
            b.prefs(wn + "'", std::move(list));
        } else {
            const int lo = std::min(src.women[w].list[0], src.women[w].list[1]);
            const int hi = std::max(src.women[w].list[0], src.women[w].list[1]);
            b.prefs("c." + wn, {wn + "'", wn + "''"});
            b.prefs("d." + wn, {wn + "''", wn + "'"});
            b.prefs(wn + "'", {"c." + wn, "d." + wn, man(lo)});
            b.prefs(wn + "''", {"c." + wn, "d." + wn, man(hi)});
        }
    }
    for (const auto& row : empty_core_rows()) {
        std::vector<std::string> list;
        if (std::string(row.name) == "a") list.push_back("g");
        for (const char* nm : row.list) list.push_back(std::string("G.") + nm);
        b.prefs(std::string("G.") + row.name, std::move(list));
    }
    {
        std::vector<std::string> glist;
        for (int i = 0; i < src.n_men(); ++i) glist.push_back(man(i));
        glist.push_back("G.a");
        b.prefs("g", std::move(glist));
    }

    return CoreReduction{b.build(), {"comsmti-to-core", digest_of_text(serialize_comsmti(src))}};
}

Matching comsmti_core_matching(const ComSmtiInstance& src, const Instance& reduced,
                               const std::vector<int>& partner_of_man) {
    if (static_cast<int>(partner_of_man.size()) != src.n_men())
        throw std::invalid_argument("need one woman per man");
    std::vector<std::pair<std::string, std::string>> pairs;

    std::vector<int> partner_of_woman(src.n_women(), -1);
    for (int i = 0; i < src.n_men(); ++i) {
        const int w = partner_of_man[i];
        if (w < 0 || w >= src.n_women() || partner_of_woman[w] >= 0)
            throw std::invalid_argument("not a complete matching of the source");
        partner_of_woman[w] = i;
    }

    for (int i = 0; i < src.n_men(); ++i) {
        const int w = partner_of_man[i];
        const std::string& wn = src.woman_names[w];
        if (!src.women[w].tie) {
            pairs.push_back({src.man_names[i] + "'", wn + "'"});
        } else {
            const int lo = std::min(src.women[w].list[0], src.women[w].list[1]);
            pairs.push_back({src.man_names[i] + "'", wn + (i == lo ? "'" : "''")});
        }
    }
    for (int w = 0; w < src.n_women(); ++w) {
        if (!src.women[w].tie) continue;
        const std::string& wn = src.woman_names[w];
        const int lo = std::min(src.women[w].list[0], src.women[w].list[1]);
        pairs.push_back({"c." + wn, wn + "'"});
        pairs.push_back({"c." + wn, wn + "''"});
        if (partner_of_woman[w] < 0) throw std::invalid_argument("tied woman left unmatched");
        // d takes the copy the matched man does not use.
        pairs.push_back({"d." + wn, wn + (partner_of_woman[w] == lo ? "''" : "'")});
    }
    pairs.push_back({"G.a", "g"});
    pairs.push_back({"G.a", "G.v"});
    pairs.push_back({"G.b", "G.u"});
    pairs.push_back({"G.y", "G.d"});
    pairs.push_back({"G.y", "G.y'"});
    pairs.push_back({"G.x", "G.c"});
    pairs.push_back({"G.x", "G.x'"});
    pairs.push_back({"G.b", "G.b'"});
    return matching_by_names(reduced, pairs);
}

namespace {

// Shared tables for the two exact-cover constructions. All indices 1-based
// to follow the printed rows; wraparound closes the a/b and c/d rings.
struct X3cNames {
    int N, n, m;
    explicit X3cNames(const X3cInstance& src) : N(3 * src.n()), n(src.n()), m(src.m()) {}

    static std::string nm(const char* g, int i) { return std::string(g) + std::to_string(i); }
    std::string a(int i) const { return nm("a", wrap(i, N)); }
    std::string b(int i) const { return nm("b", wrap(i, N)); }
    std::string c(int k) const { return nm("c", wrap(k, n)); }
    std::string d(int k) const { return nm("d", wrap(k, n)); }
    std::string p(int i) const { return nm("p", i); }
    std::string q(int i) const { return nm("q", i); }
    std::string s(int j) const { return nm("s", j); }
    std::string t(int j) const { return nm("t", j); }
    std::string u(int l) const { return nm("u", l); }
    std::string v(int l) const { return nm("v", l); }
    static int wrap(int i, int mod) { return (i - 1 + mod) % mod + 1; }
    static int grp(int i) { return (i + 2) / 3; }
};

// Adds the ten agent groups and every preference row of the Pareto-hardness
// table. A and B rows are parameterized because the fixtures variant splices
// connector agents into them. The printed table's p_n / a_{3(n-1)+2} / Q_n
// irregularities are read pattern-consistently (p_i for all i, a_{3n-1},
// Q_j); for n = 1 the wrapped c/d entries collapse and the duplicate mention
// is dropped.
void add_x3c_base(Builder& bld, const X3cInstance& src, const X3cNames& g,
                  const std::function<std::vector<std::string>(int)>& a_row,
                  const std::function<std::vector<std::string>(int)>& b_row, bool with_sides) {
    const Side A = Side::A, B = Side::B;
    auto side = [&](Side s) { return with_sides ? s : Side::A; };

    for (int i = 1; i <= g.N; ++i) bld.agent(g.a(i), 2, side(A));
    for (int i = 1; i <= g.N; ++i) bld.agent(g.b(i), 2, side(B));
    for (int k = 1; k <= g.n; ++k) bld.agent(g.c(k), 3, side(A));
    for (int k = 1; k <= g.n; ++k) bld.agent(g.d(k), 3, side(B));
    for (int i = 1; i <= g.N; ++i) bld.agent(g.p(i), 1, side(A));
    for (int i = 1; i <= g.N; ++i) bld.agent(g.q(i), 1, side(B));
    for (int j = 1; j <= g.m; ++j) bld.agent(g.s(j), 4, side(A));
    for (int j = 1; j <= g.m; ++j) bld.agent(g.t(j), 4, side(B));
    for (int l = 1; l <= 4 * g.m; ++l) bld.agent(g.u(l), 1, side(A));
    for (int l = 1; l <= 4 * g.m; ++l) bld.agent(g.v(l), 1, side(B));

    auto covering = [&](int i) {  // ascending triple indices containing item i (1-based)
        std::vector<int> js;
        for (int j = 1; j <= g.m; ++j) {
            const auto& t = src.triples[j - 1];
            if (t[0] == i - 1 || t[1] == i - 1 || t[2] == i - 1) js.push_back(j);
        }
        return js;
    };

    for (int i = 1; i <= g.N; ++i) bld.prefs(g.a(i), a_row(i));
    for (int i = 1; i <= g.N; ++i) bld.prefs(g.b(i), b_row(i));
    for (int k = 1; k <= g.n; ++k) {
        std::vector<std::string> row;
        push_unique(row, g.d(k));
        push_unique(row, g.b(3 * k - 2));
        push_unique(row, g.b(3 * k - 1));
        push_unique(row, g.b(3 * k));
        push_unique(row, g.d(k - 1));
        for (int j = 1; j <= g.m; ++j) row.push_back(g.t(j));
        bld.prefs(g.c(k), std::move(row));
    }
    for (int k = 1; k <= g.n; ++k) {
        std::vector<std::string> row;
        push_unique(row, g.c(k + 1));
        push_unique(row, g.a(3 * k - 2));
        push_unique(row, g.a(3 * k - 1));
        push_unique(row, g.a(3 * k));
        push_unique(row, g.c(k));
        for (int j = 1; j <= g.m; ++j) row.push_back(g.s(j));
        bld.prefs(g.d(k), std::move(row));
    }
    for (int i = 1; i <= g.N; ++i) {
        std::vector<std::string> prow, qrow;
        for (int j : covering(i)) prow.push_back(g.t(j));
        prow.push_back(g.b(i));
        for (int j : covering(i)) qrow.push_back(g.s(j));
        qrow.push_back(g.a(i));
        bld.prefs(g.p(i), std::move(prow));
        bld.prefs(g.q(i), std::move(qrow));
    }
    for (int j = 1; j <= g.m; ++j) {
        std::vector<std::string> srow, trow;
        for (int k = 1; k <= g.n; ++k) srow.push_back(g.d(k));
        for (int l = 4 * j - 3; l <= 4 * j; ++l) srow.push_back(g.v(l));
        for (int k = 0; k < 3; ++k) srow.push_back(g.q(src.triples[j - 1][k] + 1));
        for (int k = 1; k <= g.n; ++k) trow.push_back(g.c(k));
        for (int l = 4 * j - 3; l <= 4 * j; ++l) trow.push_back(g.u(l));
        for (int k = 0; k < 3; ++k) trow.push_back(g.p(src.triples[j - 1][k] + 1));
        bld.prefs(g.s(j), std::move(srow));
        bld.prefs(g.t(j), std::move(trow));
    }
    for (int l = 1; l <= 4 * g.m; ++l) {
        bld.prefs(g.u(l), {g.v(l), g.t((l + 3) / 4)});
        bld.prefs(g.v(l), {g.u(l), g.s((l + 3) / 4)});
    }
}

// Edges every construction shares: A against Q and D, B against C and P,
// S against V, T against U. Saturates everyone outside the gadget blocks.
void add_base_complete_edges(const X3cNames& g,
                             std::vector<std::pair<std::string, std::string>>& pairs) {
    for (int i = 1; i <= g.N; ++i) {
        pairs.push_back({g.a(i), g.q(i)});
        pairs.push_back({g.a(i), g.d(X3cNames::grp(i))});
        pairs.push_back({g.b(i), g.p(i)});
        pairs.push_back({g.b(i), g.c(X3cNames::grp(i))});
    }
    for (int j = 1; j <= g.m; ++j)
        for (int l = 4 * j - 3; l <= 4 * j; ++l) {
            pairs.push_back({g.s(j), g.v(l)});
            pairs.push_back({g.t(j), g.u(l)});
        }
}

void check_cover(const X3cInstance& src, const std::vector<int>& cover) {
    if (static_cast<int>(cover.size()) != src.n())
        throw std::invalid_argument("a cover needs exactly n triples");
    std::vector<char> hit(src.item_names.size(), 0);
    for (int j : cover) {
        if (j < 0 || j >= src.m()) throw std::invalid_argument("cover index out of range");
        for (int it : src.triples[j]) {
            if (hit[it]) throw std::invalid_argument("cover triples overlap");
            hit[it] = 1;
        }
    }
}

// Cover-driven part of the dominating matchings, identical in both
// constructions: the r-th chosen triple's s and t agents take the covered
// q/p agents plus the r-th d/c slot; untouched s/t rows keep their M edges.
void add_cover_edges(const X3cInstance& src, const X3cNames& g, const std::vector<int>& cover,
                     std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<char> chosen(g.m + 1, 0);
    std::vector<int> sorted = cover;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t r = 0; r < sorted.size(); ++r) {
        const int j = sorted[r] + 1;
        chosen[j] = 1;
        for (int it : src.triples[j - 1]) {
            pairs.push_back({g.s(j), g.q(it + 1)});
            pairs.push_back({g.t(j), g.p(it + 1)});
        }
        pairs.push_back({g.s(j), g.d(static_cast<int>(r) + 1)});
        pairs.push_back({g.t(j), g.c(static_cast<int>(r) + 1)});
        for (int l = 4 * j - 3; l <= 4 * j; ++l) pairs.push_back({g.u(l), g.v(l)});
    }
    for (int j = 1; j <= g.m; ++j) {
        if (chosen[j]) continue;
        for (int l = 4 * j - 3; l <= 4 * j; ++l) {
            pairs.push_back({g.s(j), g.v(l)});
            pairs.push_back({g.t(j), g.u(l)});
        }
    }
}

void add_cd_complete_edges(const X3cNames& g,
                           std::vector<std::pair<std::string, std::string>>& pairs) {
    for (int k = 1; k <= g.n; ++k) {
        pairs.push_back({g.c(k), g.d(k)});
        if (g.n > 1) pairs.push_back({g.c(k), g.d(k - 1)});
    }
}

}  // namespace

X3cParetoReduction reduce_x3c_to_pareto(const X3cInstance& src) {
    src.validate();
    X3cNames g(src);
    Builder bld(Kind::Bipartite);
    add_x3c_base(
        bld, src, g,
        [&](int i) {
            return std::vector<std::string>{g.b(i), g.q(i), g.d(X3cNames::grp(i)), g.b(i - 1)};
        },
        [&](int i) {
            return std::vector<std::string>{g.a(i + 1), g.p(i), g.c(X3cNames::grp(i)), g.a(i)};
        },
        true);
    Instance inst = bld.build();

    std::vector<std::pair<std::string, std::string>> pairs;
    add_base_complete_edges(g, pairs);
    Matching m = matching_by_names(inst, pairs);
    return X3cParetoReduction{std::move(inst), std::move(m),
                              {"x3c-to-pareto", digest_of_text(serialize_x3c(src))}};
}

Matching x3c_pareto_dominator(const X3cInstance& src, const Instance& inst,
                              const std::vector<int>& cover) {
    check_cover(src, cover);
    X3cNames g(src);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 1; i <= g.N; ++i) {
        pairs.push_back({g.a(i), g.b(i)});
        pairs.push_back({g.a(i), g.b(i - 1)});
    }
    add_cd_complete_edges(g, pairs);
    add_cover_edges(src, g, cover, pairs);
    return matching_by_names(inst, pairs);
}

X3cFixturesReduction reduce_x3c_to_fixtures(const X3cInstance& src) {
    src.validate();
    X3cNames g(src);
    auto gi = [](int i) { return "g" + std::to_string(i); };
    auto hi = [&](int i) { return "h" + std::to_string(X3cNames::wrap(i, g.N)); };
    auto gx = [](int i, int k) { return "G" + std::to_string(i) + ".x" + std::to_string(k); };
    auto hy = [](int i, int k) { return "H" + std::to_string(i) + ".y" + std::to_string(k); };

    Builder bld(Kind::Fixtures);
    add_x3c_base(
        bld, src, g,
        [&](int i) {
            return std::vector<std::string>{gi(i), g.q(i), g.d(X3cNames::grp(i)), hi(i)};
        },
        [&](int i) {
            return std::vector<std::string>{hi(i + 1), g.p(i), g.c(X3cNames::grp(i)), gi(i)};
        },
        false);

    // One example3 copy per replaced edge, plus its connector agent.
    auto add_block = [&](const std::function<std::string(int)>& x, const std::string& conn,
                         const std::string& top, const std::string& bottom) {
        bld.agent(x(1), 2);
        bld.agent(x(2), 2);
        for (int k = 3; k <= 10; ++k) bld.agent(x(k), 1);
        bld.agent(conn, 2);
        bld.prefs(x(1), {x(2), x(4), x(3)});
        bld.prefs(x(2), {x(1), x(5), x(6)});
        bld.prefs(x(3), {x(7), x(1)});
        bld.prefs(x(4), {x(8), x(1)});
        bld.prefs(x(5), {x(9), x(2)});
        bld.prefs(x(6), {x(10), x(2)});
        bld.prefs(x(7), {x(3), x(8), conn});
        bld.prefs(x(8), {x(4), x(7), conn});
        bld.prefs(x(9), {x(5), x(10)});
        bld.prefs(x(10), {x(6), x(9)});
        bld.prefs(conn, {top, x(7), x(8), bottom});
    };
    for (int i = 1; i <= g.N; ++i) {
        add_block([&](int k) { return gx(i, k); }, gi(i), g.b(i), g.a(i));
        add_block([&](int k) { return hy(i, k); }, hi(i), g.a(i), g.b(i - 1));
    }
    Instance inst = bld.build();

    std::vector<std::pair<std::string, std::string>> pairs;
    add_base_complete_edges(g, pairs);
    auto block_complete = [&](const std::function<std::string(int)>& x, const std::string& conn) {
        pairs.push_back({x(1), x(3)});
        pairs.push_back({x(1), x(4)});
        pairs.push_back({x(2), x(5)});
        pairs.push_back({x(2), x(6)});
        pairs.push_back({x(9), x(10)});
        pairs.push_back({conn, x(7)});
        pairs.push_back({conn, x(8)});
    };
    for (int i = 1; i <= g.N; ++i) {
        block_complete([&](int k) { return gx(i, k); }, gi(i));
        block_complete([&](int k) { return hy(i, k); }, hi(i));
    }
    Matching complete = matching_by_names(inst, pairs);
    return X3cFixturesReduction{std::move(inst), std::move(complete),
                                {"x3c-to-fixtures", digest_of_text(serialize_x3c(src))}};
}

Matching x3c_fixtures_dominator(const X3cInstance& src, const Instance& inst,
                                const std::vector<int>& cover) {
    check_cover(src, cover);
    X3cNames g(src);
    auto gi = [](int i) { return "g" + std::to_string(i); };
    auto hi = [&](int i) { return "h" + std::to_string(X3cNames::wrap(i, g.N)); };
    auto gx = [](int i, int k) { return "G" + std::to_string(i) + ".x" + std::to_string(k); };
    auto hy = [](int i, int k) { return "H" + std::to_string(i) + ".y" + std::to_string(k); };

    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 1; i <= g.N; ++i) {
        pairs.push_back({g.a(i), gi(i)});
        pairs.push_back({g.a(i), hi(i)});
        pairs.push_back({g.b(i), gi(i)});
        pairs.push_back({g.b(i), hi(i + 1)});
    }
    add_cd_complete_edges(g, pairs);
    add_cover_edges(src, g, cover, pairs);
    auto block_best = [&](const std::function<std::string(int)>& x) {
        pairs.push_back({x(1), x(2)});
        pairs.push_back({x(3), x(7)});
        pairs.push_back({x(4), x(8)});
        pairs.push_back({x(5), x(9)});
        pairs.push_back({x(6), x(10)});
    };
    for (int i = 1; i <= g.N; ++i) {
        block_best([&](int k) { return gx(i, k); });
        block_best([&](int k) { return hy(i, k); });
    }
    return matching_by_names(inst, pairs);
}

CoreCheckReduction reduce_pareto_to_core_check(const Instance& inst, const Matching& m) {
    if (inst.kind() != Kind::Bipartite)
        throw std::invalid_argument("reduce_pareto_to_core_check needs a bipartite instance");
    if (auto why = feasibility_violation(inst, m))
        throw std::invalid_argument("reduce_pareto_to_core_check: " + *why);

    const int n = inst.n();
    int count_a = 0, count_b = 0;
    for (AgentId v = 0; v < n; ++v) (inst.side(v) == Side::A ? count_a : count_b)++;

    Builder b(Kind::Bipartite);
    for (AgentId v = 0; v < n; ++v) b.agent(inst.name(v), inst.cap(v) + 1, inst.side(v));
    b.agent("a*", count_b + 1, Side::A);
    b.agent("b*", count_a + 1, Side::B);

    for (AgentId v = 0; v < n; ++v) {
        std::vector<std::string> list{inst.side(v) == Side::A ? "b*" : "a*"};
        for (AgentId w : inst.prefs(v)) list.push_back(inst.name(w));
        b.prefs(inst.name(v), std::move(list));
    }
    std::vector<std::string> astar{"b*"}, bstar{"a*"};
    for (AgentId v = 0; v < n; ++v) (inst.side(v) == Side::B ? astar : bstar).push_back(inst.name(v));
    b.prefs("a*", std::move(astar));
    b.prefs("b*", std::move(bstar));

    Instance extended = b.build();
    std::vector<Edge> edges;
    for (Edge e : m.edges())
        edges.push_back(make_edge(extended.id_of(inst.name(e.u)), extended.id_of(inst.name(e.v))));
    const AgentId astar_id = extended.id_of("a*"), bstar_id = extended.id_of("b*");
    edges.push_back(make_edge(astar_id, bstar_id));
    for (AgentId v = 0; v < n; ++v) {
        const AgentId self = extended.id_of(inst.name(v));
        edges.push_back(make_edge(self, inst.side(v) == Side::A ? bstar_id : astar_id));
    }
    Matching extended_m(extended.n(), std::move(edges));

    const std::string digest =
        digest_of_text(serialize_instance(inst) + serialize_matching(inst, m));
    return CoreCheckReduction{std::move(extended), std::move(extended_m),
                              {"pareto-to-core-check", digest}};
}

std::optional<std::vector<int>> solve_comsmti_brute(const ComSmtiInstance& src) {
    src.validate();
    if (src.n_men() > 6 || src.n_women() > 6)
        throw EnumerationBoundError(std::max(src.n_men(), src.n_women()), 6,
                                    "more than 6+6 comsmti agents");
    if (src.n_men() != src.n_women()) return std::nullopt;
    const int n = src.n_men();

    std::vector<std::vector<int>> wrank(n, std::vector<int>(n, -1));
    for (int w = 0; w < n; ++w)
        for (std::size_t r = 0; r < src.women[w].list.size(); ++r)
            wrank[w][src.women[w].list[r]] = src.women[w].tie ? 0 : static_cast<int>(r);

    std::vector<int> partner(n, -1), taken(n, 0);

    auto weakly_stable = [&]() {
        for (int i = 0; i < n; ++i) {
            for (std::size_t r = 0; r < src.men_prefs[i].size(); ++r) {
                const int w = src.men_prefs[i][r];
                if (w == partner[i]) break;  // no strictly better woman left
                // man i strictly prefers w; does w strictly prefer i back?
                int cur = -1;
                for (int j = 0; j < n; ++j)
                    if (partner[j] == w) cur = j;
                if (wrank[w][i] < wrank[w][cur]) return false;
            }
        }
        return true;
    };

    auto search = [&](auto&& self, int i) -> bool {
        if (i == n) return weakly_stable();
        for (int w : src.men_prefs[i]) {
            if (taken[w]) continue;
            partner[i] = w;
            taken[w] = 1;
            if (self(self, i + 1)) return true;
            taken[w] = 0;
            partner[i] = -1;
        }
        return false;
    };
    if (search(search, 0)) return partner;
    return std::nullopt;
}

std::optional<std::vector<int>> solve_x3c_brute(const X3cInstance& src) {
    src.validate();
    if (src.m() > 12)
        throw EnumerationBoundError(src.m(), 12, "more than 12 triples");
    const int need = src.n();
    std::vector<int> chosen;
    std::vector<char> hit(src.item_names.size(), 0);

    auto search = [&](auto&& self, int from) -> bool {
        if (static_cast<int>(chosen.size()) == need)
            return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
        for (int j = from; j < src.m(); ++j) {
            const auto& t = src.triples[j];
            if (hit[t[0]] || hit[t[1]] || hit[t[2]]) continue;
            hit[t[0]] = hit[t[1]] = hit[t[2]] = 1;
            chosen.push_back(j);
            if (self(self, j + 1)) return true;
            chosen.pop_back();
            hit[t[0]] = hit[t[1]] = hit[t[2]] = 0;
        }
        return false;
    };
    if (search(search, 0)) return chosen;
    return std::nullopt;
}

Instance random_instance(std::uint64_t seed, int n, Kind kind, int max_cap, double density) {
    if (n < 1) throw std::invalid_argument("random_instance: n must be positive");
    if (max_cap < 1) throw std::invalid_argument("random_instance: max_cap must be positive");
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("random_instance: density must lie in [0, 1]");

    std::mt19937_64 rng(seed);
    // Hand-rolled draws: std::uniform_*_distribution is not pinned across
    // standard library implementations, and same seed must mean same instance.
    auto below = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };
    auto coin = [&](double p) { return (rng() >> 11) * 0x1.0p-53 < p; };

    std::vector<std::string> names;
    std::vector<Side> sides(n, Side::A);
    const int na = (n + 1) / 2;
    for (int i = 0; i < n; ++i) {
        if (kind == Kind::Bipartite) {
            sides[i] = i < na ? Side::A : Side::B;
            names.push_back((i < na ? "a" : "b") + std::to_string(i));
        } else {
            names.push_back("v" + std::to_string(i));
        }
    }
    std::vector<int> caps(n);
    for (int i = 0; i < n; ++i) caps[i] = 1 + below(max_cap);

    std::vector<std::vector<AgentId>> prefs(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (kind == Kind::Bipartite && sides[i] == sides[j]) continue;
            if (!coin(density)) continue;
            prefs[i].push_back(j);
            prefs[j].push_back(i);
        }
    for (int i = 0; i < n; ++i)
        for (int k = static_cast<int>(prefs[i].size()) - 1; k > 0; --k)
            std::swap(prefs[i][k], prefs[i][below(k + 1)]);

    return kind == Kind::Bipartite
               ? Instance::bipartite(std::move(names), std::move(sides), std::move(caps),
                                     std::move(prefs))
               : Instance::fixtures(std::move(names), std::move(caps), std::move(prefs));
}

}  // namespace lexmatch
