#include "lexmatch/textio.hpp"

#include <algorithm>
#include <sstream>

namespace lexmatch {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::istringstream ls(raw);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty() || tokens.front().starts_with('#')) continue;
        lines.push_back({number, std::move(tokens)});
    }
    return lines;
}

[[noreturn]] void fail(ParseCode code, int line, const std::string& detail) {
    throw ParseError(code, line, detail);
}

void check_name(const std::string& name, int line) {
    if (name.empty() || name.find_first_of(":#, \t") != std::string::npos)
        fail(ParseCode::BadName, line, "invalid agent name '" + name + "'");
}

// "prefs <name>:" carries the colon on the name token.
std::string strip_colon(const std::string& tok, int line) {
    if (tok.size() < 2 || tok.back() != ':') fail(ParseCode::BadLine, line, "expected '<name>:'");
    return tok.substr(0, tok.size() - 1);
}

int parse_cap(const std::string& tok, int line) {
    int cap = 0;
    try {
        std::size_t used = 0;
        cap = std::stoi(tok, &used);
        if (used != tok.size()) cap = 0;
    } catch (const std::exception&) {
        cap = 0;
    }
    if (cap < 1) fail(ParseCode::BadCapacity, line, "capacity '" + tok + "' must be a positive integer");
    return cap;
}

}  // namespace

const char* parse_code_name(ParseCode code) {
    switch (code) {
        case ParseCode::EmptyInput: return "EMPTY_INPUT";
        case ParseCode::BadHeader: return "BAD_HEADER";
        case ParseCode::BadLine: return "BAD_LINE";
        case ParseCode::BadName: return "BAD_NAME";
        case ParseCode::DuplicateAgent: return "DUPLICATE_AGENT";
        case ParseCode::BadCapacity: return "BAD_CAPACITY";
        case ParseCode::MissingSide: return "MISSING_SIDE";
        case ParseCode::UnexpectedSide: return "UNEXPECTED_SIDE";
        case ParseCode::BadSide: return "BAD_SIDE";
        case ParseCode::UnknownAgent: return "UNKNOWN_AGENT";
        case ParseCode::SelfPreference: return "SELF_PREFERENCE";
        case ParseCode::DuplicatePreference: return "DUPLICATE_PREFERENCE";
        case ParseCode::DuplicatePrefsLine: return "DUPLICATE_PREFS_LINE";
        case ParseCode::NonMutual: return "NON_MUTUAL";
        case ParseCode::NotCrossSide: return "NOT_CROSS_SIDE";
        case ParseCode::BadWeight: return "BAD_WEIGHT";
        case ParseCode::DuplicateEdge: return "DUPLICATE_EDGE";
        case ParseCode::NotAnEdge: return "NOT_AN_EDGE";
        case ParseCode::MissingDigest: return "MISSING_DIGEST";
        case ParseCode::DigestMismatch: return "DIGEST_MISMATCH";
        case ParseCode::BadSource: return "BAD_SOURCE";
    }
    return "UNKNOWN";
}

ParseError::ParseError(ParseCode code_, int line_, const std::string& detail)
    : std::runtime_error(std::string(parse_code_name(code_)) +
                         (line_ > 0 ? " at line " + std::to_string(line_) : std::string()) + ": " +
                         detail),
      code(code_),
      line(line_) {}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream os;
    os << "problem: " << (inst.kind() == Kind::Bipartite ? "bipartite" : "fixtures") << "\n";
    for (AgentId a = 0; a < inst.n(); ++a) {
        os << "agent " << inst.name(a) << " cap " << inst.cap(a);
        if (inst.kind() == Kind::Bipartite)
            os << " side " << (inst.side(a) == Side::A ? 'A' : 'B');
        os << "\n";
    }
    for (AgentId a = 0; a < inst.n(); ++a) {
        os << "prefs " << inst.name(a) << ":";
        for (AgentId b : inst.prefs(a)) os << " " << inst.name(b);
        os << "\n";
    }
    return os.str();
}

Instance parse_instance(const std::string& text) {
    const auto lines = tokenize(text);
    if (lines.empty()) fail(ParseCode::EmptyInput, 0, "no instance data");

    const auto& head = lines.front();
    if (head.tokens.size() != 2 || head.tokens[0] != "problem:")
        fail(ParseCode::BadHeader, head.number, "expected 'problem: bipartite|fixtures'");
    Kind kind;
    if (head.tokens[1] == "bipartite")
        kind = Kind::Bipartite;
    else if (head.tokens[1] == "fixtures")
        kind = Kind::Fixtures;
    else
        fail(ParseCode::BadHeader, head.number, "unknown problem kind '" + head.tokens[1] + "'");

    std::vector<std::string> names;
    std::vector<Side> sides;
    std::vector<int> caps;
    std::vector<std::vector<std::string>> pref_names;
    std::vector<int> prefs_line;

    auto find_agent = [&](const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    };

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& [number, tok] = lines[li];
        if (tok[0] == "agent") {
            if (tok.size() != 4 && tok.size() != 6)
                fail(ParseCode::BadLine, number, "expected 'agent <name> cap <k> [side A|B]'");
            check_name(tok[1], number);
            if (find_agent(tok[1]) >= 0)
                fail(ParseCode::DuplicateAgent, number, "agent '" + tok[1] + "' declared twice");
            if (tok[2] != "cap") fail(ParseCode::BadLine, number, "expected 'cap'");
            const int cap = parse_cap(tok[3], number);
            Side side = Side::A;
            if (tok.size() == 6) {
                if (kind != Kind::Bipartite)
                    fail(ParseCode::UnexpectedSide, number,
                         "side tags are only valid for bipartite instances");
                if (tok[4] != "side") fail(ParseCode::BadLine, number, "expected 'side'");
                if (tok[5] == "A")
                    side = Side::A;
                else if (tok[5] == "B")
                    side = Side::B;
                else
                    fail(ParseCode::BadSide, number, "side must be A or B, got '" + tok[5] + "'");
            } else if (kind == Kind::Bipartite) {
                fail(ParseCode::MissingSide, number,
                     "bipartite agents need a side tag: agent '" + tok[1] + "'");
            }
            names.push_back(tok[1]);
            sides.push_back(side);
            caps.push_back(cap);
            pref_names.emplace_back();
            prefs_line.push_back(0);
        } else if (tok[0] == "prefs") {
            if (tok.size() < 2) fail(ParseCode::BadLine, number, "expected 'prefs <name>: ...'");
            const std::string who = strip_colon(tok[1], number);
            const int a = find_agent(who);
            if (a < 0) fail(ParseCode::UnknownAgent, number, "prefs for unknown agent '" + who + "'");
            if (prefs_line[a] != 0)
                fail(ParseCode::DuplicatePrefsLine, number,
                     "agent '" + who + "' already has a prefs line " + std::to_string(prefs_line[a]));
            prefs_line[a] = number;
            pref_names[a].assign(tok.begin() + 2, tok.end());
        } else {
            fail(ParseCode::BadLine, number, "unrecognized directive '" + tok[0] + "'");
        }
    }
    if (names.empty()) fail(ParseCode::EmptyInput, 0, "no agents declared");

    const int n = static_cast<int>(names.size());
    std::vector<std::vector<AgentId>> prefs(n);
    for (int a = 0; a < n; ++a) {
        const int number = prefs_line[a];
        for (const std::string& pname : pref_names[a]) {
            const int b = find_agent(pname);
            if (b < 0) fail(ParseCode::UnknownAgent, number, "unknown agent '" + pname + "'");
            if (b == a)
                fail(ParseCode::SelfPreference, number, "agent '" + pname + "' lists itself");
            if (std::find(prefs[a].begin(), prefs[a].end(), b) != prefs[a].end())
                fail(ParseCode::DuplicatePreference, number,
                     "'" + pname + "' appears twice in the list of '" + names[a] + "'");
            if (kind == Kind::Bipartite && sides[a] == sides[b])
                fail(ParseCode::NotCrossSide, number,
                     "'" + names[a] + "' and '" + pname + "' are on the same side");
            prefs[a].push_back(b);
        }
    }
    for (int a = 0; a < n; ++a)
        for (AgentId b : prefs[a])
            if (std::find(prefs[b].begin(), prefs[b].end(), a) == prefs[b].end())
                fail(ParseCode::NonMutual, prefs_line[a],
                     "'" + names[a] + "' lists '" + names[b] + "' but not vice versa");

    try {
        return kind == Kind::Bipartite
                   ? Instance::bipartite(std::move(names), std::move(sides), std::move(caps),
                                         std::move(prefs))
                   : Instance::fixtures(std::move(names), std::move(caps), std::move(prefs));
    } catch (const std::invalid_argument& e) {
        fail(ParseCode::BadSource, 0, e.what());
    }
}

std::string digest_of_text(const std::string& text) {
    // FNV-1a, 64 bit
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

std::string instance_digest(const Instance& inst) { return digest_of_text(serialize_instance(inst)); }

std::string serialize_matching(const Instance& inst, const HalfMatching& m) {
    std::ostringstream os;
    os << "matching for: " << instance_digest(inst) << "\n";
    for (const auto& [e, w] : m.entries())
        os << "edge " << inst.name(e.u) << " " << inst.name(e.v) << " " << (w == 2 ? "1" : "1/2")
           << "\n";
    return os.str();
}

std::string serialize_matching(const Instance& inst, const Matching& m) {
    return serialize_matching(inst, HalfMatching::from_matching(m));
}

HalfMatching parse_matching(const std::string& text, const Instance& inst) {
    const auto lines = tokenize(text);
    if (lines.empty()) fail(ParseCode::EmptyInput, 0, "no matching data");
    const auto& head = lines.front();
    if (head.tokens.size() != 3 || head.tokens[0] != "matching" || head.tokens[1] != "for:")
        fail(ParseCode::MissingDigest, head.number, "expected 'matching for: <digest>'");
    if (head.tokens[2] != instance_digest(inst))
        fail(ParseCode::DigestMismatch, head.number,
             "matching was computed for digest " + head.tokens[2] + ", instance has " +
                 instance_digest(inst));

    std::vector<std::pair<Edge, WeightHalves>> entries;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& [number, tok] = lines[li];
        if (tok[0] != "edge" || (tok.size() != 3 && tok.size() != 4))
            fail(ParseCode::BadLine, number, "expected 'edge <name> <name> [1|1/2]'");
        const AgentId u = inst.id_of(tok[1]);
        const AgentId v = inst.id_of(tok[2]);
        if (u < 0) fail(ParseCode::UnknownAgent, number, "unknown agent '" + tok[1] + "'");
        if (v < 0) fail(ParseCode::UnknownAgent, number, "unknown agent '" + tok[2] + "'");
        if (u == v) fail(ParseCode::SelfPreference, number, "edge endpoints coincide");
        const Edge e = make_edge(u, v);
        if (!inst.has_edge(e))
            fail(ParseCode::NotAnEdge, number,
                 "'" + tok[1] + "' and '" + tok[2] + "' are not mutually acceptable");
        WeightHalves w = 2;
        if (tok.size() == 4) {
            if (tok[3] == "1")
                w = 2;
            else if (tok[3] == "1/2")
                w = 1;
            else
                fail(ParseCode::BadWeight, number, "weight must be 1 or 1/2, got '" + tok[3] + "'");
        }
        for (const auto& [prev, pw] : entries)
            if (prev == e) fail(ParseCode::DuplicateEdge, number, "edge listed twice");
        entries.emplace_back(e, w);
    }
    return HalfMatching(inst.n(), std::move(entries));
}

std::string serialize_comsmti(const ComSmtiInstance& src) {
    std::ostringstream os;
    os << "comsmti\n";
    for (int i = 0; i < src.n_men(); ++i) {
        os << "man " << src.man_names[i] << ":";
        for (int w : src.men_prefs[i]) os << " " << src.woman_names[w];
        os << "\n";
    }
    for (int w = 0; w < src.n_women(); ++w) {
        os << (src.women[w].tie ? "woman-tie " : "woman ") << src.woman_names[w] << ":";
        for (int m : src.women[w].list) os << " " << src.man_names[m];
        os << "\n";
    }
    return os.str();
}

ComSmtiInstance parse_comsmti(const std::string& text) {
    const auto lines = tokenize(text);
    if (lines.empty()) fail(ParseCode::EmptyInput, 0, "no source data");
    if (lines.front().tokens != std::vector<std::string>{"comsmti"})
        fail(ParseCode::BadHeader, lines.front().number, "expected 'comsmti'");

    ComSmtiInstance src;
    std::vector<std::vector<std::string>> man_lists, woman_lists;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& [number, tok] = lines[li];
        if (tok.size() < 2) fail(ParseCode::BadLine, number, "expected '<kind> <name>: ...'");
        const std::string name = strip_colon(tok[1], number);
        check_name(name, number);
        std::vector<std::string> rest(tok.begin() + 2, tok.end());
        if (tok[0] == "man") {
            src.man_names.push_back(name);
            man_lists.push_back(std::move(rest));
        } else if (tok[0] == "woman" || tok[0] == "woman-tie") {
            src.woman_names.push_back(name);
            src.women.push_back({tok[0] == "woman-tie", {}});
            woman_lists.push_back(std::move(rest));
        } else {
            fail(ParseCode::BadLine, number, "unrecognized directive '" + tok[0] + "'");
        }
    }
    auto index_of = [](const std::vector<std::string>& pool, const std::string& name) {
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (pool[i] == name) return static_cast<int>(i);
        return -1;
    };
    for (std::size_t i = 0; i < man_lists.size(); ++i) {
        src.men_prefs.emplace_back();
        for (const auto& wn : man_lists[i]) {
            const int w = index_of(src.woman_names, wn);
            if (w < 0) fail(ParseCode::UnknownAgent, 0, "unknown woman '" + wn + "'");
            src.men_prefs.back().push_back(w);
        }
    }
    for (std::size_t w = 0; w < woman_lists.size(); ++w)
        for (const auto& mn : woman_lists[w]) {
            const int m = index_of(src.man_names, mn);
            if (m < 0) fail(ParseCode::UnknownAgent, 0, "unknown man '" + mn + "'");
            src.women[w].list.push_back(m);
        }
    try {
        src.validate();
    } catch (const std::invalid_argument& e) {
        fail(ParseCode::BadSource, 0, e.what());
    }
    return src;
}

std::string serialize_x3c(const X3cInstance& src) {
    std::ostringstream os;
    os << "x3c\nitems";
    for (const auto& it : src.item_names) os << " " << it;
    os << "\n";
    for (const auto& t : src.triples)
        os << "triple " << src.item_names[t[0]] << " " << src.item_names[t[1]] << " "
           << src.item_names[t[2]] << "\n";
    return os.str();
}

X3cInstance parse_x3c(const std::string& text) {
    const auto lines = tokenize(text);
    if (lines.empty()) fail(ParseCode::EmptyInput, 0, "no source data");
    if (lines.front().tokens != std::vector<std::string>{"x3c"})
        fail(ParseCode::BadHeader, lines.front().number, "expected 'x3c'");

    X3cInstance src;
    bool saw_items = false;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& [number, tok] = lines[li];
        if (tok[0] == "items") {
            if (saw_items) fail(ParseCode::BadLine, number, "second 'items' line");
            saw_items = true;
            src.item_names.assign(tok.begin() + 1, tok.end());
            for (const auto& nm : src.item_names) check_name(nm, number);
        } else if (tok[0] == "triple") {
            if (!saw_items) fail(ParseCode::BadLine, number, "'triple' before 'items'");
            if (tok.size() != 4) fail(ParseCode::BadLine, number, "expected 'triple <a> <b> <c>'");
            std::array<int, 3> t{};
            for (int k = 0; k < 3; ++k) {
                auto it = std::find(src.item_names.begin(), src.item_names.end(), tok[k + 1]);
                if (it == src.item_names.end())
                    fail(ParseCode::UnknownAgent, number, "unknown item '" + tok[k + 1] + "'");
                t[k] = static_cast<int>(it - src.item_names.begin());
            }
            std::sort(t.begin(), t.end());
            src.triples.push_back(t);
        } else {
            fail(ParseCode::BadLine, number, "unrecognized directive '" + tok[0] + "'");
        }
    }
    try {
        src.validate();
    } catch (const std::invalid_argument& e) {
        fail(ParseCode::BadSource, 0, e.what());
    }
    return src;
}

}  // namespace lexmatch
