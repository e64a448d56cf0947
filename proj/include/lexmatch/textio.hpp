#pragma once

#include <string>

#include "lexmatch/model.hpp"
#include "lexmatch/reductions.hpp"

namespace lexmatch {

// Every malformed construct maps to its own code so tools can act on the
// failure class rather than the message text.
enum class ParseCode {
    EmptyInput,
    BadHeader,
    BadLine,
    BadName,
    DuplicateAgent,
    BadCapacity,
    MissingSide,
    UnexpectedSide,
    BadSide,
    UnknownAgent,
    SelfPreference,
    DuplicatePreference,
    DuplicatePrefsLine,
    NonMutual,
    NotCrossSide,
    BadWeight,
    DuplicateEdge,
    NotAnEdge,
    MissingDigest,
    DigestMismatch,
    BadSource,
};

const char* parse_code_name(ParseCode code);

struct ParseError : std::runtime_error {
    ParseCode code;
    int line;  // 1-based; 0 when not tied to a line
    ParseError(ParseCode code, int line, const std::string& detail);
};

// Canonical line-oriented instance format:
//   problem: bipartite|fixtures
//   agent <name> cap <k> [side A|B]
//   prefs <name>: <name> <name> ...
// '#' lines are comments; blank lines are ignored. Agent names may not
// contain whitespace, ':', '#' or ','.
std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

// Stable content hash over the canonical serialization; binds matchings to
// the instance they were computed for.
std::string instance_digest(const Instance& inst);
std::string digest_of_text(const std::string& text);

// Matching format:
//   matching for: <instance digest>
//   edge <name> <name> 1|1/2
std::string serialize_matching(const Instance& inst, const HalfMatching& m);
std::string serialize_matching(const Instance& inst, const Matching& m);
HalfMatching parse_matching(const std::string& text, const Instance& inst);

// Reduction source formats.
//   comsmti                          x3c
//   man <name>: <w> ...              items <name> ...
//   woman <name>: <m> ...            triple <a> <b> <c>
//   woman-tie <name>: <m> <m>
std::string serialize_comsmti(const ComSmtiInstance& src);
ComSmtiInstance parse_comsmti(const std::string& text);
std::string serialize_x3c(const X3cInstance& src);
X3cInstance parse_x3c(const std::string& text);

}  // namespace lexmatch
