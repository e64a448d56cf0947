#include "lexmatch/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lexmatch/model.hpp"
#include "lexmatch/oracles.hpp"
#include "lexmatch/polysolve.hpp"
#include "lexmatch/reductions.hpp"
#include "lexmatch/textio.hpp"
#include "lexmatch/ttc.hpp"

namespace lexmatch::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kRefused = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

std::string edge_list(const Instance& inst, const Matching& m) {
    std::string s;
    for (Edge e : m.edges()) {
        if (!s.empty()) s += ",";
        s += inst.name(e.u) + " " + inst.name(e.v);
    }
    return s;
}

void print_witness(const Instance& inst, const BlockingWitness& w, std::ostream& out) {
    out << "witness-coalition:";
    for (AgentId a : w.coalition) out << " " << inst.name(a);
    out << "\n";
    out << "witness-improver: " << inst.name(w.strict_improver) << "\n";
    for (const auto& [e, wt] : w.deviation.entries())
        out << "witness-edge: " << inst.name(e.u) << " " << inst.name(e.v) << " "
            << (wt == 2 ? "1" : "1/2") << "\n";
}

struct SolveArgs {
    std::string alg, in, out_path;
};
struct CheckArgs {
    std::string property, in, matching;
    int bound = -1;  // -1: per-property default
};
struct EnumArgs {
    std::string what, in;
    int bound = 20;
};
struct ReduceArgs {
    std::string from, in, matching, out_path, out_matching;
};
struct ExampleArgs {
    std::string name, matching;
};
struct GenArgs {
    std::uint64_t seed = 1;
    int n = 6;
    std::string kind = "bipartite";
    int max_cap = 2;
    double density = 0.5;
    std::string out_path;
};

int run_solve(const SolveArgs& a, bool machine, std::ostream& out) {
    const Instance inst = parse_instance(read_file(a.in));
    std::string text;
    std::ostringstream report;
    if (a.alg == "ttc-near") {
        const NearFeasibleResult res = solve_near_feasible(inst);
        std::ostringstream extra;
        for (AgentId v : res.violations) extra << "# violation " << inst.name(v) << "\n";
        for (AgentId v = 0; v < inst.n(); ++v)
            if (res.modified_cap[v] != inst.cap(v))
                extra << "# modified-cap " << inst.name(v) << " " << res.modified_cap[v] << "\n";
        text = extra.str() + serialize_matching(inst, res.matching);
        report << "alg: ttc-near\nedges: " << res.matching.size() << "\nviolations:";
        for (AgentId v : res.violations) report << " " << inst.name(v);
        report << "\n";
    } else if (a.alg == "ttc-half") {
        const HalfMatching hm = solve_half_integral(inst);
        text = serialize_matching(inst, hm);
        report << "alg: ttc-half\nedges: " << hm.entries().size() << "\n";
    } else if (a.alg == "da") {
        const Matching m = deferred_acceptance(inst);
        text = serialize_matching(inst, m);
        report << "alg: da\nedges: " << m.size() << "\n";
    } else if (a.alg == "pareto-max") {
        const Matching m = solve_pareto_max(inst);
        text = serialize_matching(inst, m);
        report << "alg: pareto-max\nedges: " << m.size() << "\nsize: " << m.size() << "\n";
    } else {
        throw std::invalid_argument("unknown algorithm " + a.alg);
    }
    if (a.out_path.empty()) {
        out << text;
    } else {
        write_file(a.out_path, text);
        if (machine)
            out << report.str();
        else
            out << "wrote " << a.out_path << "\n" << report.str();
    }
    return kOk;
}

int run_check(const CheckArgs& a, std::ostream& out) {
    const Instance inst = parse_instance(read_file(a.in));
    const HalfMatching hm = parse_matching(read_file(a.matching), inst);
    const int bound = a.bound > 0 ? a.bound : (a.property == "half-core" ? 12 : 20);

    auto integral = [&]() {
        if (!hm.integral())
            throw std::invalid_argument("property '" + a.property +
                                        "' needs an integral matching, got 1/2 weights");
        return hm.to_matching();
    };

    out << "property: " << a.property << "\n";
    bool pass = false;
    std::ostringstream detail;
    if (a.property == "feasible") {
        const auto why = feasibility_violation(inst, hm);
        pass = !why.has_value();
        if (why) detail << "violation: " << *why << "\n";
    } else if (a.property == "stable") {
        const Matching m = integral();
        if (auto why = feasibility_violation(inst, m)) {
            pass = false;
            detail << "violation: " << *why << "\n";
        } else if (auto e = find_blocking_pair(inst, m)) {
            pass = false;
            detail << "witness-blocking-pair: " << inst.name(e->u) << " " << inst.name(e->v)
                   << "\n";
        } else {
            pass = true;
        }
    } else if (a.property == "pareto") {
        const auto res = is_pareto_optimal(inst, integral(), bound);
        pass = res.optimal;
        if (res.dominator) detail << "witness-dominator: " << edge_list(inst, *res.dominator) << "\n";
    } else if (a.property == "strong-core") {
        const auto res = is_in_strong_core(inst, integral(), CoreEngine::Closure, bound);
        pass = res.in_core;
        if (res.witness) print_witness(inst, *res.witness, detail);
    } else if (a.property == "half-core") {
        const auto res = half_integral_block_search(inst, hm, bound);
        pass = !res.has_value();
        if (res) print_witness(inst, *res, detail);
    } else if (a.property == "complete") {
        const Matching m = integral();
        pass = is_complete(inst, m);
        if (!pass)
            for (AgentId v = 0; v < inst.n(); ++v)
                if (m.degree(v) != inst.cap(v)) {
                    detail << "witness-unsaturated: " << inst.name(v) << "\n";
                    break;
                }
    } else {
        throw std::invalid_argument("unknown property " + a.property);
    }
    out << "status: " << (pass ? "PASS" : "FAIL") << "\n" << detail.str();
    return pass ? kOk : kFail;
}

int run_enumerate(const EnumArgs& a, std::ostream& out) {
    const Instance inst = parse_instance(read_file(a.in));
    out << "what: " << a.what << "\n";
    std::size_t count = 0;
    if (a.what == "matchings") {
        for_each_matching(
            inst,
            [&](const Matching& m) {
                out << "matching: " << edge_list(inst, m) << "\n";
                ++count;
                return true;
            },
            a.bound);
    } else if (a.what == "stable" || a.what == "strong-core") {
        const auto list =
            a.what == "stable" ? enumerate_stable(inst, a.bound) : strong_core_elements(inst, a.bound);
        for (const Matching& m : list) out << "matching: " << edge_list(inst, m) << "\n";
        count = list.size();
    } else {
        throw std::invalid_argument("unknown enumeration target " + a.what);
    }
    out << "count: " << count << "\n";
    return kOk;
}

int run_reduce(const ReduceArgs& a, bool machine, std::ostream& out) {
    std::string inst_text;
    std::string ref_text;
    Provenance prov;
    std::string ref_name;

    if (a.from == "comsmti") {
        const ComSmtiInstance src = parse_comsmti(read_file(a.in));
        CoreReduction red = reduce_comsmti_to_core(src);
        prov = red.prov;
        inst_text = serialize_instance(red.inst);
    } else if (a.from == "x3c-pareto") {
        const X3cInstance src = parse_x3c(read_file(a.in));
        X3cParetoReduction red = reduce_x3c_to_pareto(src);
        prov = red.prov;
        inst_text = serialize_instance(red.inst);
        ref_text = serialize_matching(red.inst, red.m);
        ref_name = "complete";
    } else if (a.from == "x3c-fixtures") {
        const X3cInstance src = parse_x3c(read_file(a.in));
        X3cFixturesReduction red = reduce_x3c_to_fixtures(src);
        prov = red.prov;
        inst_text = serialize_instance(red.inst);
        ref_text = serialize_matching(red.inst, red.complete_m);
        ref_name = "complete";
    } else if (a.from == "pareto-core") {
        if (a.matching.empty())
            throw std::invalid_argument("reduce --from pareto-core needs --matching");
        const Instance inst = parse_instance(read_file(a.in));
        const HalfMatching hm = parse_matching(read_file(a.matching), inst);
        if (!hm.integral()) throw std::invalid_argument("pareto-core needs an integral matching");
        CoreCheckReduction red = reduce_pareto_to_core_check(inst, hm.to_matching());
        prov = red.prov;
        inst_text = serialize_instance(red.inst);
        ref_text = serialize_matching(red.inst, red.m);
        ref_name = "extended";
    } else {
        throw std::invalid_argument("unknown reduction " + a.from);
    }

    const std::string header =
        "# reduction: " + prov.reduction + "\n# source-digest: " + prov.source_digest + "\n";
    if (a.out_path.empty()) {
        out << header << inst_text;
    } else {
        write_file(a.out_path, header + inst_text);
        if (!machine) out << "wrote " << a.out_path << "\n";
        out << "reduction: " << prov.reduction << "\nsource-digest: " << prov.source_digest
            << "\n";
        if (!ref_name.empty()) out << "reference-matching: " << ref_name << "\n";
    }
    if (!a.out_matching.empty()) {
        if (ref_text.empty())
            throw std::invalid_argument("reduction " + a.from + " defines no reference matching");
        write_file(a.out_matching, ref_text);
    }
    return kOk;
}

int run_example(const ExampleArgs& a, std::ostream& out) {
    const Fixture fix = fixture(a.name);
    if (a.matching.empty())
        out << serialize_instance(fix.inst);
    else
        out << serialize_matching(fix.inst, fix.ref(a.matching));
    return kOk;
}

int run_gen(const GenArgs& a, std::ostream& out) {
    const Kind kind = [&] {
        if (a.kind == "bipartite") return Kind::Bipartite;
        if (a.kind == "fixtures") return Kind::Fixtures;
        throw std::invalid_argument("unknown kind " + a.kind);
    }();
    const Instance inst = random_instance(a.seed, a.n, kind, a.max_cap, a.density);
    const std::string text = serialize_instance(inst);
    if (a.out_path.empty())
        out << text;
    else
        write_file(a.out_path, text);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"solver and verifier toolkit for multiple-partners matching markets"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "human";
    app.add_option("--format", format)->check(CLI::IsMember({"human", "machine"}));

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "run a solver and write a matching file");
    solve->add_option("--alg", solve_args.alg, "ttc-near|ttc-half|da|pareto-max")->required();
    solve->add_option("--in", solve_args.in, "instance file")->required();
    solve->add_option("--out", solve_args.out_path, "matching output file");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "verify a property of a matching");
    check
        ->add_option("--property", check_args.property,
                     "feasible|stable|pareto|strong-core|half-core|complete")
        ->required();
    check->add_option("--in", check_args.in, "instance file")->required();
    check->add_option("--matching", check_args.matching, "matching file")->required();
    check->add_option("--bound", check_args.bound, "enumeration bound (edges)");

    EnumArgs enum_args;
    auto* enumerate = app.add_subcommand("enumerate", "stream matchings of a given class");
    enumerate->add_option("--what", enum_args.what, "matchings|stable|strong-core")->required();
    enumerate->add_option("--in", enum_args.in, "instance file")->required();
    enumerate->add_option("--bound", enum_args.bound, "enumeration bound (edges)");

    ReduceArgs reduce_args;
    auto* reduce = app.add_subcommand("reduce", "construct a hardness-reduction instance");
    reduce
        ->add_option("--from", reduce_args.from, "comsmti|x3c-pareto|x3c-fixtures|pareto-core")
        ->required();
    reduce->add_option("--in", reduce_args.in, "source file")->required();
    reduce->add_option("--matching", reduce_args.matching, "matching file (pareto-core)");
    reduce->add_option("--out", reduce_args.out_path, "instance output file");
    reduce->add_option("--out-matching", reduce_args.out_matching, "reference matching output");

    ExampleArgs example_args;
    auto* example = app.add_subcommand("example", "print a built-in fixture");
    example->add_option("name", example_args.name, "example1|example2|example3|empty_core")
        ->required();
    example->add_option("--matching", example_args.matching, "print this reference matching");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "print a reproducible random instance");
    gen->add_option("--seed", gen_args.seed);
    gen->add_option("--n", gen_args.n)->required();
    gen->add_option("--kind", gen_args.kind)->check(CLI::IsMember({"bipartite", "fixtures"}));
    gen->add_option("--max-cap", gen_args.max_cap);
    gen->add_option("--density", gen_args.density);
    gen->add_option("--out", gen_args.out_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    const bool machine = format == "machine";
    try {
        if (solve->parsed()) return run_solve(solve_args, machine, out);
        if (check->parsed()) return run_check(check_args, out);
        if (enumerate->parsed()) return run_enumerate(enum_args, out);
        if (reduce->parsed()) return run_reduce(reduce_args, machine, out);
        if (example->parsed()) return run_example(example_args, out);
        if (gen->parsed()) return run_gen(gen_args, out);
        err << "usage error: no subcommand\n";
        return kUsage;
    } catch (const EnumerationBoundError& e) {
        err << "refused: " << e.what() << "\n";
        return kRefused;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace lexmatch::cli
