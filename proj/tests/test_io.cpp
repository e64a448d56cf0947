#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lexmatch/reductions.hpp"
#include "lexmatch/textio.hpp"
#include "lexmatch/ttc.hpp"

using namespace lexmatch;
using namespace testutil;

namespace {

ParseCode code_of(const std::string& text) {
    try {
        (void)parse_instance(text);
    } catch (const ParseError& e) {
        return e.code;
    }
    FAIL("expected a parse error");
    return ParseCode::BadLine;
}

}  // namespace

TEST_CASE("instances round-trip bit-exactly") {
    for (const std::string& name : fixture_names()) {
        const Fixture fix = fixture(name);
        const std::string text = serialize_instance(fix.inst);
        const Instance back = parse_instance(text);
        CHECK(serialize_instance(back) == text);
        CHECK(instance_digest(back) == instance_digest(fix.inst));
    }
    for (int i = 0; i < 40; ++i) {
        const Instance inst = corpus_instance(i);
        const std::string text = serialize_instance(inst);
        CHECK(serialize_instance(parse_instance(text)) == text);
    }
}

TEST_CASE("matchings round-trip, including half weights") {
    const Fixture ec = fixture("empty_core");
    const HalfMatching hm = solve_half_integral(ec.inst);
    const std::string text = serialize_matching(ec.inst, hm);
    const HalfMatching back = parse_matching(text, ec.inst);
    CHECK(back == hm);
    CHECK(serialize_matching(ec.inst, back) == text);

    const Fixture e1 = fixture("example1");
    const std::string mtext = serialize_matching(e1.inst, e1.ref("stable"));
    const HalfMatching mback = parse_matching(mtext, e1.inst);
    REQUIRE(mback.integral());
    CHECK(mback.to_matching() == e1.ref("stable"));

    // weight defaults to 1 when omitted
    const Instance pair = Instance::fixtures({"a", "b"}, {1, 1}, {{1}, {0}});
    const HalfMatching def =
        parse_matching("matching for: " + instance_digest(pair) + "\nedge a b\n", pair);
    CHECK(def.weight_halves(Edge{0, 1}) == 2);
}

TEST_CASE("instance parse errors carry distinct codes") {
    CHECK(code_of("") == ParseCode::EmptyInput);
    CHECK(code_of("# only a comment\n") == ParseCode::EmptyInput);
    CHECK(code_of("problem: bipartite\n") == ParseCode::EmptyInput);
    CHECK(code_of("agents first\n") == ParseCode::BadHeader);
    CHECK(code_of("problem: tripartite\n") == ParseCode::BadHeader);
    CHECK(code_of("problem: fixtures\nagent a cap 1\nagent a cap 1\n") ==
          ParseCode::DuplicateAgent);
    CHECK(code_of("problem: fixtures\nagent a cap 0\n") == ParseCode::BadCapacity);
    CHECK(code_of("problem: fixtures\nagent a cap x\n") == ParseCode::BadCapacity);
    CHECK(code_of("problem: bipartite\nagent a cap 1\n") == ParseCode::MissingSide);
    CHECK(code_of("problem: fixtures\nagent a cap 1 side A\n") == ParseCode::UnexpectedSide);
    CHECK(code_of("problem: bipartite\nagent a cap 1 side C\n") == ParseCode::BadSide);
    CHECK(code_of("problem: fixtures\nagent a cap 1\nprefs a: b\n") == ParseCode::UnknownAgent);
    CHECK(code_of("problem: fixtures\nagent a cap 1\nprefs b: a\n") == ParseCode::UnknownAgent);
    CHECK(code_of("problem: fixtures\nagent a cap 1\nprefs a: a\n") ==
          ParseCode::SelfPreference);
    CHECK(code_of("problem: fixtures\nagent a cap 1\nagent b cap 1\nprefs a: b b\nprefs b: a\n") ==
          ParseCode::DuplicatePreference);
    CHECK(code_of("problem: fixtures\nagent a cap 1\nagent b cap 1\nprefs a: b\nprefs b: a\n"
                  "prefs a: b\n") == ParseCode::DuplicatePrefsLine);
    CHECK(code_of("problem: fixtures\nagent a cap 1\nagent b cap 1\nprefs a: b\nprefs b:\n") ==
          ParseCode::NonMutual);
    CHECK(code_of("problem: bipartite\nagent a cap 1 side A\nagent b cap 1 side A\n"
                  "prefs a: b\nprefs b: a\n") == ParseCode::NotCrossSide);
    CHECK(code_of("problem: fixtures\nagent a: cap 1\n") == ParseCode::BadName);
    CHECK(code_of("problem: fixtures\nagent a cap 1\nmystery line\n") == ParseCode::BadLine);
}

TEST_CASE("parse errors report the offending line") {
    try {
        (void)parse_instance("problem: fixtures\nagent a cap 1\nagent b cap 1\nprefs a: b\n"
                             "prefs b:\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.code == ParseCode::NonMutual);
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("NON_MUTUAL") != std::string::npos);
    }
}

TEST_CASE("matching parse errors") {
    const Fixture e1 = fixture("example1");
    const std::string head = "matching for: " + instance_digest(e1.inst) + "\n";
    auto mcode = [&](const std::string& text) {
        try {
            (void)parse_matching(text, e1.inst);
        } catch (const ParseError& e) {
            return e.code;
        }
        FAIL("expected a parse error");
        return ParseCode::BadLine;
    };
    CHECK(mcode("") == ParseCode::EmptyInput);
    CHECK(mcode("edge a z 1\n") == ParseCode::MissingDigest);
    CHECK(mcode("matching for: 0000000000000000\nedge a z 1\n") == ParseCode::DigestMismatch);
    CHECK(mcode(head + "edge a nobody 1\n") == ParseCode::UnknownAgent);
    CHECK(mcode(head + "edge a b 1\n") == ParseCode::NotAnEdge);
    CHECK(mcode(head + "edge a z 2/3\n") == ParseCode::BadWeight);
    CHECK(mcode(head + "edge a z 1\nedge a z 1\n") == ParseCode::DuplicateEdge);
}

TEST_CASE("reduction sources round-trip") {
    ComSmtiInstance src;
    src.man_names = {"u1", "u2"};
    src.woman_names = {"w1", "w2"};
    src.men_prefs = {{0, 1}, {1}};
    src.women = {{false, {0}}, {true, {0, 1}}};
    const std::string text = serialize_comsmti(src);
    const ComSmtiInstance back = parse_comsmti(text);
    CHECK(serialize_comsmti(back) == text);
    CHECK(back.women[1].tie);

    X3cInstance x;
    x.item_names = {"x1", "x2", "x3", "x4", "x5", "x6"};
    x.triples = {{0, 1, 2}, {3, 4, 5}};
    const std::string xt = serialize_x3c(x);
    const X3cInstance xback = parse_x3c(xt);
    CHECK(serialize_x3c(xback) == xt);

    CHECK_THROWS_AS((void)parse_comsmti("comsmti\nman u1: ghost\n"), ParseError);
    CHECK_THROWS_AS((void)parse_x3c("x3c\nitems x1 x2 x3\ntriple x1 x2 x9\n"), ParseError);
    CHECK_THROWS_AS((void)parse_x3c("x3c\nitems x1 x2\n"), ParseError);
}

TEST_CASE("parser survives mangled input with typed errors only") {
    std::mt19937 rng(7);
    const std::string base = serialize_instance(fixture("example1").inst);
    const std::string noise = " :#/\\\t\nabz019";
    for (int round = 0; round < 400; ++round) {
        std::string text = base.substr(0, rng() % (base.size() + 1));
        for (int k = rng() % 6; k > 0; --k) {
            if (text.empty()) break;
            text[rng() % text.size()] = noise[rng() % noise.size()];
        }
        try {
            const Instance inst = parse_instance(text);
            CHECK(serialize_instance(parse_instance(serialize_instance(inst))) ==
                  serialize_instance(inst));
        } catch (const ParseError&) {
        }
    }
}

TEST_CASE("matching parser survives mangled input with typed errors only") {
    std::mt19937 rng(11);
    const Fixture e1 = fixture("example1");
    const std::string base = serialize_matching(e1.inst, e1.ref("stable"));
    for (int round = 0; round < 400; ++round) {
        std::string text = base.substr(0, rng() % (base.size() + 1));
        for (int k = rng() % 6; k > 0; --k) {
            if (text.empty()) break;
            text[rng() % text.size()] = static_cast<char>('0' + rng() % 75);
        }
        try {
            (void)parse_matching(text, e1.inst);
        } catch (const ParseError&) {
        }
    }
}

TEST_CASE("digest is stable across textual noise") {
    const Fixture e1 = fixture("example1");
    const std::string noisy =
        "# a comment\n\n" + serialize_instance(e1.inst) + "\n# trailing comment\n";
    CHECK(instance_digest(parse_instance(noisy)) == instance_digest(e1.inst));
}
