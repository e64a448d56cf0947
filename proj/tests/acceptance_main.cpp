// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Each criterion prints PASS/FAIL, its wall time, and a short detail when
// something does not hold.

#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "lexmatch/cli.hpp"
#include "lexmatch/oracles.hpp"
#include "lexmatch/polysolve.hpp"
#include "lexmatch/reductions.hpp"
#include "lexmatch/textio.hpp"
#include "lexmatch/ttc.hpp"

using namespace lexmatch;
using namespace testutil;

namespace {

int failures = 0;

void criterion(int id, const std::string& name,
               const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d. %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

// ---- criterion 9a: exhaustive COM-SMTI family ------------------------------

// Men: every strict order of each acceptable set. Women: every strict order,
// plus the single-tie variant when the acceptable set has exactly two men.
void expand_sources(int n, const std::vector<std::vector<int>>& acc_m,
                    const std::vector<std::vector<int>>& acc_w,
                    const std::function<void(const ComSmtiInstance&)>& sink) {
    std::vector<std::vector<std::vector<int>>> men_orders(n), women_options(n);
    std::vector<std::vector<char>> women_tie(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> perm = acc_m[i];
        std::sort(perm.begin(), perm.end());
        do {
            men_orders[i].push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (int w = 0; w < n; ++w) {
        std::vector<int> perm = acc_w[w];
        std::sort(perm.begin(), perm.end());
        do {
            women_options[w].push_back(perm);
            women_tie[w].push_back(0);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (acc_w[w].size() == 2) {
            std::vector<int> tie = acc_w[w];
            std::sort(tie.begin(), tie.end());
            women_options[w].push_back(tie);
            women_tie[w].push_back(1);
        }
    }
    ComSmtiInstance src;
    for (int i = 0; i < n; ++i) src.man_names.push_back("u" + std::to_string(i + 1));
    for (int w = 0; w < n; ++w) src.woman_names.push_back("w" + std::to_string(w + 1));
    src.men_prefs.resize(n);
    src.women.resize(n);

    std::vector<std::size_t> mi(n, 0), wi(n, 0);
    for (;;) {
        for (int i = 0; i < n; ++i) src.men_prefs[i] = men_orders[i][mi[i]];
        for (int w = 0; w < n; ++w)
            src.women[w] = {women_tie[w][wi[w]] != 0, women_options[w][wi[w]]};
        sink(src);
        int k = 0;
        for (; k < n; ++k) {
            if (++mi[k] < men_orders[k].size()) break;
            mi[k] = 0;
        }
        if (k < n) continue;
        for (k = 0; k < n; ++k) {
            if (++wi[k] < women_options[k].size()) break;
            wi[k] = 0;
        }
        if (k == n) return;
    }
}

void comsmti_family(const std::function<void(const ComSmtiInstance&)>& sink) {
    for (int n = 1; n <= 2; ++n) {
        const int pairs = n * n;
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pairs); ++mask) {
            std::vector<std::vector<int>> acc_m(n), acc_w(n);
            for (int i = 0; i < n; ++i)
                for (int w = 0; w < n; ++w)
                    if (mask >> (i * n + w) & 1) {
                        acc_m[i].push_back(w);
                        acc_w[w].push_back(i);
                    }
            expand_sources(n, acc_m, acc_w, sink);
        }
    }
    // n = 3 over subgraphs of two interleaved perfect matchings, at most four
    // edges (denser graphs push the reduced instances past honest
    // exhaustive-verification reach)
    const int n = 3;
    std::vector<std::pair<int, int>> candidates;
    for (int i = 0; i < n; ++i) {
        candidates.push_back({i, i});
        candidates.push_back({i, (i + 1) % n});
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << candidates.size()); ++mask) {
        if (std::popcount(mask) > 4) continue;
        std::vector<std::vector<int>> acc_m(n), acc_w(n);
        for (std::size_t k = 0; k < candidates.size(); ++k)
            if (mask >> k & 1) {
                acc_m[candidates[k].first].push_back(candidates[k].second);
                acc_w[candidates[k].second].push_back(candidates[k].first);
            }
        expand_sources(n, acc_m, acc_w, sink);
    }
}

}  // namespace

int main() {
    criterion(1, "four-by-four market: unique stable matching, strong core, pareto facts",
              [](std::string& detail) {
                  const Fixture fix = fixture("example1");
                  const auto stable = enumerate_stable(fix.inst);
                  bool ok = stable.size() == 1 && stable[0] == fix.ref("stable");
                  if (!ok) detail += "stable enumeration mismatch; ";

                  const auto core = strong_core_elements(fix.inst);
                  const bool core_exact = core.size() == 1 && core[0] == fix.ref("strong-core");
                  if (!core_exact) {
                      std::ostringstream os;
                      os << "strong core has " << core.size()
                         << " matchings, expected exactly 1; the named matching "
                         << (std::find(core.begin(), core.end(), fix.ref("strong-core")) !=
                                     core.end()
                                 ? "is"
                                 : "is not")
                         << " among them";
                      detail += os.str();
                  }
                  ok = ok && core_exact;

                  if (!is_pareto_optimal(fix.inst, fix.ref("stable")).optimal ||
                      !is_pareto_optimal(fix.inst, fix.ref("strong-core")).optimal) {
                      ok = false;
                      detail += "; pareto facts failed";
                  }
                  return ok;
              });

    criterion(2, "five-by-five market: unique stable matching is pareto-dominated",
              [](std::string& detail) {
                  const Fixture fix = fixture("example2");
                  const auto stable = enumerate_stable(fix.inst, 25);
                  bool ok = stable.size() == 1 && stable[0] == fix.ref("stable");
                  if (!ok) detail += "stable enumeration mismatch; ";
                  const auto pareto = is_pareto_optimal(fix.inst, fix.ref("stable"), 25);
                  if (pareto.optimal) {
                      ok = false;
                      detail += "stable matching not dominated; ";
                  }
                  if (!pareto_dominates(fix.inst, fix.ref("strong-core"), fix.ref("stable"))) {
                      ok = false;
                      detail += "printed dominator rejected";
                  }
                  return ok;
              });

    criterion(3, "ten-agent fixtures market: no complete pareto-optimal matching",
              [](std::string& detail) {
                  const Fixture fix = fixture("example3");
                  std::vector<Matching> complete;
                  for_each_matching(fix.inst, [&](const Matching& m) {
                      if (is_complete(fix.inst, m)) complete.push_back(m);
                      return true;
                  });
                  bool ok = complete.size() == 1 && complete[0] == fix.ref("complete");
                  if (!ok) detail += "complete matching not unique; ";
                  if (!pareto_dominates(fix.inst, fix.ref("dominating"), fix.ref("complete"))) {
                      ok = false;
                      detail += "printed dominator rejected; ";
                  }
                  for (const Matching& m : complete)
                      if (is_pareto_optimal(fix.inst, m).optimal) {
                          ok = false;
                          detail += "a complete pareto-optimal matching exists";
                      }
                  return ok;
              });

    criterion(4, "twelve-agent market has an empty strong core", [](std::string& detail) {
        const auto core = strong_core_elements(fixture("empty_core").inst);
        if (!core.empty()) detail = "found " + std::to_string(core.size()) + " elements";
        return core.empty();
    });

    criterion(5, "near-feasible rounds: capacity excess at most one, core of relaxed instance",
              [](std::string& detail) {
                  for (int i = 0; i < 500; ++i) {
                      const Instance inst = corpus_instance(i);
                      const NearFeasibleResult res = solve_near_feasible(inst);
                      for (AgentId v = 0; v < inst.n(); ++v)
                          if (res.matching.degree(v) > inst.cap(v) + 1) {
                              detail =
                                  "capacity excess above one at instance " + std::to_string(i);
                              return false;
                          }
                      const Instance relaxed = with_caps(inst, res.modified_cap);
                      if (!is_in_strong_core(relaxed, res.matching).in_core) {
                          detail =
                              "relaxed-core membership failed at instance " + std::to_string(i);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(6, "half-integral rounds: feasible, half-integral, unblocked",
              [](std::string& detail) {
                  int blocked = 0;
                  std::string first;
                  for (int i = 0; i < 500; ++i) {
                      const Instance inst = corpus_instance(i);
                      const HalfMatching hm = solve_half_integral(inst);
                      if (!is_feasible(inst, hm)) {
                          detail = "infeasible output at instance " + std::to_string(i);
                          return false;
                      }
                      for (const auto& [e, w] : hm.entries())
                          if (w != 1 && w != 2) {
                              detail =
                                  "non-half-integral weight at instance " + std::to_string(i);
                              return false;
                          }
                      if (half_integral_block_search(inst, hm).has_value()) {
                          if (blocked == 0) first = std::to_string(i);
                          ++blocked;
                      }
                  }
                  if (blocked > 0) {
                      detail = std::to_string(blocked) +
                               "/500 outputs weakly blocked within the half-integral class "
                               "(first at instance " +
                               first +
                               "); a deviation may raise an existing 1/2 edge to weight 1, a "
                               "move the trade rounds never perform";
                      return false;
                  }
                  return true;
              });

    criterion(7, "greedy maximum matching is maximum and pareto-optimal",
              [](std::string& detail) {
                  for (int i = 0; i < 500; ++i) {
                      const Instance inst = corpus_bipartite(i);
                      const Matching m = solve_pareto_max(inst);
                      if (m.size() != max_matching_size(inst, {})) {
                          detail = "not maximum at instance " + std::to_string(i);
                          return false;
                      }
                      if (!is_pareto_optimal(inst, m).optimal) {
                          detail = "not pareto-optimal at instance " + std::to_string(i);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(8, "deferred acceptance: stability everywhere, exact example matchings",
              [](std::string& detail) {
                  for (int i = 0; i < 500; ++i) {
                      const Instance inst = corpus_bipartite(i);
                      if (find_blocking_pair(inst, deferred_acceptance(inst))) {
                          detail = "blocking pair at instance " + std::to_string(i);
                          return false;
                      }
                  }
                  const Fixture e1 = fixture("example1");
                  const Fixture e2 = fixture("example2");
                  if (deferred_acceptance(e1.inst) != e1.ref("stable") ||
                      deferred_acceptance(e2.inst) != e2.ref("stable")) {
                      detail = "example reproduction failed";
                      return false;
                  }
                  return true;
              });

    criterion(9, "reduction equivalences at desk scale", [](std::string& detail) {
        // (a) exhaustive COM-SMTI family: solvable source iff nonempty core
        int sources = 0, positives = 0;
        bool ok = true;
        std::string bad;
        comsmti_family([&](const ComSmtiInstance& src) {
            if (!ok) return;
            ++sources;
            const auto stable = solve_comsmti_brute(src);
            const CoreReduction red = reduce_comsmti_to_core(src);
            const int bound = static_cast<int>(red.inst.edges().size());
            if (stable) {
                ++positives;
                const Matching cand = comsmti_core_matching(src, red.inst, *stable);
                if (!is_in_strong_core(red.inst, cand, CoreEngine::Closure, bound).in_core) {
                    ok = false;
                    bad = "constructed matching not in core for " + serialize_comsmti(src);
                }
            } else if (!strong_core_elements(red.inst, bound).empty()) {
                ok = false;
                bad = "nonempty core for unsolvable " + serialize_comsmti(src);
            }
        });
        if (!ok) {
            detail = bad;
            return false;
        }
        std::ostringstream note;
        note << "comsmti family " << sources << " sources (" << positives << " solvable)";

        // (b) pareto-optimality iff strong-core membership of the extension
        for (int i = 0; i < 100; ++i) {
            const Instance inst = corpus_bipartite(i);
            const Matching m = some_feasible_matching(inst, 311 * i + 13);
            const bool pareto = is_pareto_optimal(inst, m).optimal;
            const CoreCheckReduction red = reduce_pareto_to_core_check(inst, m);
            const int bound = static_cast<int>(red.inst.edges().size());
            if (is_in_strong_core(red.inst, red.m, CoreEngine::Closure, bound).in_core !=
                pareto) {
                detail = "extension equivalence failed at instance " + std::to_string(i);
                return false;
            }
        }

        // (c) cover replays and structural facts for both exact-cover reductions
        std::vector<X3cInstance> family;
        {
            X3cInstance one;
            one.item_names = {"x1", "x2", "x3"};
            one.triples = {{0, 1, 2}};
            family.push_back(one);
            X3cInstance two;
            two.item_names = {"x1", "x2", "x3", "x4", "x5", "x6"};
            two.triples = {{0, 1, 2}, {3, 4, 5}, {0, 1, 3}, {2, 4, 5}};
            family.push_back(two);
            X3cInstance three = two;
            three.triples.push_back({1, 2, 3});
            family.push_back(three);
            X3cInstance none;
            none.item_names = two.item_names;
            none.triples = {{0, 1, 2}, {1, 2, 3}};
            family.push_back(none);
        }
        for (std::size_t k = 0; k < family.size(); ++k) {
            const X3cInstance& src = family[k];
            const auto cover = solve_x3c_brute(src);
            const X3cParetoReduction pr = reduce_x3c_to_pareto(src);
            if (pr.inst.n() != 14 * src.n() + 10 * src.m() || !is_complete(pr.inst, pr.m)) {
                detail = "pareto reduction structure failed at source " + std::to_string(k);
                return false;
            }
            const X3cFixturesReduction fr = reduce_x3c_to_fixtures(src);
            for (AgentId a = 0; a < fr.inst.n(); ++a)
                if (fr.inst.cap(a) > 4) {
                    detail = "capacity above four in the fixtures reduction";
                    return false;
                }
            if (!is_complete(fr.inst, fr.complete_m)) {
                detail = "fixtures reduction canonical matching not complete";
                return false;
            }
            if (cover) {
                if (!pareto_dominates(pr.inst, x3c_pareto_dominator(src, pr.inst, *cover),
                                      pr.m) ||
                    !pareto_dominates(fr.inst, x3c_fixtures_dominator(src, fr.inst, *cover),
                                      fr.complete_m)) {
                    detail = "cover replay failed at source " + std::to_string(k);
                    return false;
                }
            }
        }
        detail = note.str();
        return true;
    });

    criterion(10, "both strong-core engines agree on a thousand random instances",
              [](std::string& detail) {
                  for (int i = 0; i < 1000; ++i) {
                      const std::uint64_t seed = 40000 + static_cast<std::uint64_t>(i);
                      const Kind kind = i % 2 ? Kind::Fixtures : Kind::Bipartite;
                      const int n = 4 + i % 5;
                      double density = 0.45;
                      Instance inst = random_instance(seed, n, kind, 1 + i % 3, density);
                      while (static_cast<int>(inst.edges().size()) > 10) {
                          density *= 0.7;
                          inst = random_instance(seed, n, kind, 1 + i % 3, density);
                      }
                      const Matching m = some_feasible_matching(inst, 17 * i + 3);
                      const auto closure = is_in_strong_core(inst, m, CoreEngine::Closure);
                      const auto naive = is_in_strong_core(inst, m, CoreEngine::Naive);
                      if (closure.in_core != naive.in_core) {
                          detail = "engines disagree at instance " + std::to_string(i);
                          return false;
                      }
                      if (closure.witness &&
                          !blocking_witness_valid(inst, m, *closure.witness)) {
                          detail = "closure witness failed replay at " + std::to_string(i);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(11, "solvers and command-line runs are deterministic", [](std::string& detail) {
        for (int i = 0; i < 50; ++i) {
            const Instance inst = corpus_instance(i);
            if (!(solve_near_feasible(inst).matching == solve_near_feasible(inst).matching) ||
                !(solve_half_integral(inst) == solve_half_integral(inst))) {
                detail = "solver nondeterminism at instance " + std::to_string(i);
                return false;
            }
            if (inst.kind() == Kind::Bipartite &&
                (!(deferred_acceptance(inst) == deferred_acceptance(inst)) ||
                 !(solve_pareto_max(inst) == solve_pareto_max(inst)))) {
                detail = "bipartite solver nondeterminism at instance " + std::to_string(i);
                return false;
            }
        }
        const char* tmp = std::getenv("TMPDIR");
        const std::string dir = tmp ? tmp : "/tmp";
        const std::string inst_path = dir + "/lexmatch_acceptance_e1.txt";
        const std::string m_path = dir + "/lexmatch_acceptance_e1m.txt";
        {
            std::ofstream f(inst_path);
            f << serialize_instance(fixture("example1").inst);
            std::ofstream g(m_path);
            g << serialize_matching(fixture("example1").inst, fixture("example1").ref("stable"));
        }
        const std::vector<std::vector<std::string>> runs = {
            {"solve", "--alg", "ttc-near", "--in", inst_path},
            {"solve", "--alg", "ttc-half", "--in", inst_path},
            {"solve", "--alg", "da", "--in", inst_path},
            {"solve", "--alg", "pareto-max", "--in", inst_path},
            {"check", "--property", "strong-core", "--in", inst_path, "--matching", m_path},
            {"check", "--property", "stable", "--in", inst_path, "--matching", m_path},
            {"enumerate", "--what", "matchings", "--in", inst_path},
            {"enumerate", "--what", "stable", "--in", inst_path},
            {"enumerate", "--what", "strong-core", "--in", inst_path},
            {"example", "example2"},
            {"example", "empty_core"},
            {"gen", "--seed", "12", "--n", "8", "--kind", "bipartite"},
        };
        for (const auto& args : runs) {
            std::ostringstream o1, e1, o2, e2;
            const int c1 = cli::run(args, o1, e1);
            const int c2 = cli::run(args, o2, e2);
            if (c1 != c2 || o1.str() != o2.str() || e1.str() != e2.str()) {
                detail = "command output differs between runs: " + args[0];
                return false;
            }
        }
        return true;
    });

    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
