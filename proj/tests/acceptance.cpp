/*
 * Copyright 2026 the eqdesign authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// End-to-end acceptance: each criterion prints one pass/fail line; the
// process exits with the number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <eqdesign/cli.hpp>
#include <eqdesign/game_io.hpp>
#include <eqdesign/oracle.hpp>
#include <eqdesign/random_gen.hpp>
#include <eqdesign/solver.hpp>

#include "fixtures.hpp"

using namespace eqdesign;

namespace {

int failures = 0;

void criterion(int number, const std::string& text, double budget_s,
               const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    double elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start).count();
    if (budget_s > 0 && elapsed > budget_s) {
        detail << (detail.str().empty() ? "" : "; ") << "over time budget "
               << budget_s << "s";
        ok = false;
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << " ("
              << elapsed << "s): " << text;
    if (!detail.str().empty()) std::cout << " [" << detail.str() << "]";
    std::cout << "\n" << std::flush;
}

void weak_compositions(int m, std::int64_t total, std::vector<std::int64_t>& cur,
                       std::int64_t& count) {
    if (m == 1) {
        ++count;
        return;
    }
    for (std::int64_t v = 0; v <= total; ++v)
        weak_compositions(m - 1, total - v, cur, count);
}

Game g1() { return tests::g1(); }

WalkGraph pruned_to_walkgraph(const Game& g, const PrunedGame& pg,
                              const std::vector<Rational>& z) {
    WalkGraph wg;
    wg.num_vertices = g.num_states();
    wg.out.assign(g.num_states(), {});
    for (int s = 0; s < g.num_states(); ++s) {
        if (!pg.state_retained[s]) continue;
        std::set<int> targets;
        for (int c = 0; c < g.arena.profile_count(s); ++c)
            if (pg.edge_retained[s][c]) targets.insert(g.arena.successor(s, c));
        wg.out[s].assign(targets.begin(), targets.end());
    }
    wg.visit_weight.assign(g.num_players(), std::vector<std::int64_t>(g.num_states(), 0));
    for (int i = 0; i < g.num_players(); ++i) {
        Int p = numerator(z[i]);
        Int q = denominator(z[i]);
        for (int s = 0; s < g.num_states(); ++s)
            wg.visit_weight[i][s] = static_cast<std::int64_t>(Int(q * g.weights[i][s] - p));
    }
    return wg;
}

std::vector<int> retained_states(const PrunedGame& pg, int n) {
    std::vector<int> out;
    for (int s = 0; s < n; ++s)
        if (pg.state_retained[s]) out.push_back(s);
    return out;
}

} // namespace

int main() {
    // 1. Scheme counting against exhaustive weak-composition enumeration.
    criterion(1, "count_schemes matches enumeration for m <= 8, beta <= 5", 5.0,
              [](std::ostringstream& detail) {
        for (int m = 1; m <= 8; ++m)
            for (std::int64_t beta = 0; beta <= 5; ++beta) {
                std::int64_t count = 0;
                for (std::int64_t b = 0; b <= beta; ++b) {
                    std::vector<std::int64_t> cur;
                    weak_compositions(m, b, cur, count);
                }
                if (count_schemes(m, beta) != Int(count)) {
                    detail << "mismatch at m=" << m << " beta=" << beta;
                    return false;
                }
            }
        return true;
    });

    // 2. Mean-payoff solver vs positional brute force.
    criterion(2, "solve_mpg equals positional brute force on 200 random games", 60.0,
              [](std::ostringstream& detail) {
        Rng rng(1002);
        for (int t = 0; t < 200; ++t) {
            TurnBasedMpg g = random_mpg(rng, 6, 2);
            if (solve_mpg_values(g) != oracle_mpg_values(g)) {
                detail << "mismatch at instance " << t;
                return false;
            }
        }
        return true;
    });

    // 3. Equilibrium characterisation: oracle filter vs grid certification.
    criterion(3, "NE lasso sets agree on 100 random games", 300.0,
              [](std::ostringstream& detail) {
        Rng rng(1003);
        RandomGameSpec spec;
        spec.min_states = 2;
        spec.max_states = 4;
        spec.max_players = 2;
        spec.max_actions = 2;
        spec.weight_abs = 2;
        for (int t = 0; t < 100; ++t) {
            Game g = random_game(rng, spec);
            PunMatrix pun = punishment_values(g);
            std::vector<LassoPath> all = enumerate_lassos(g);
            std::vector<LassoPath> ne = brute_force_ne_lassos(g);
            auto oracle_member = [&](const LassoPath& p) {
                for (const auto& q : ne)
                    if (same_path(p, q)) return true;
                return false;
            };
            for (const auto& path : all) {
                if (certify_ne_lasso(g, pun, path) != oracle_member(path)) {
                    detail << "instance " << t << ", lasso "
                           << lasso_to_string(g, path);
                    return false;
                }
            }
        }
        return true;
    });

    // 4. Path search vs exhaustive bounded lasso search, all four modes.
    criterion(4, "check_path_exists agrees with lasso search in all four modes", 600.0,
              [](std::ostringstream& detail) {
        Rng rng(1004);
        RandomGameSpec spec;
        spec.min_states = 2;
        spec.max_states = 4;
        spec.max_players = 2;
        spec.max_actions = 2;
        spec.weight_abs = 2;
        for (int t = 0; t < 100; ++t) {
            Game g = random_game(rng, spec);
            Gr1Formula f = random_formula(rng, g, 1, 1);
            std::vector<StateSet> psis, thetas;
            for (const auto& e : f.antecedents) psis.push_back(satisfying_states(g, e));
            for (const auto& e : f.consequents) thetas.push_back(satisfying_states(g, e));
            OracleConfig cfg;
            const int cap = cfg.phi_cycle_cap(g, f);

            PunMatrix pun = punishment_values(g);
            for (const auto& z : punishment_grid(pun)) {
                PrunedGame pg = prune(g, pun, z);
                if (pg.empty()) continue;
                WalkGraph base = pruned_to_walkgraph(g, pg, z);
                std::vector<int> anchors = retained_states(pg, g.num_states());

                auto compare = [&](const char* mode, bool solver, bool oracle) {
                    if (solver != oracle) {
                        detail << "instance " << t << " mode " << mode
                               << " solver=" << solver << " oracle=" << oracle;
                        return false;
                    }
                    return true;
                };

                // ne-only
                {
                    bool solver = static_cast<bool>(
                        check_path_exists(pg, PathQuery::ne_only()));
                    WalkGraph wg = base;
                    bool oracle = bounded_cycle_exists(wg, anchors, cap,
                                                       [](unsigned) { return true; });
                    if (!compare("ne-only", solver, oracle)) return false;
                }
                // visit-all
                {
                    bool solver = static_cast<bool>(
                        check_path_exists(pg, PathQuery::visit_all(thetas)));
                    WalkGraph wg = base;
                    wg.track_sets = thetas;
                    unsigned full = (1u << thetas.size()) - 1;
                    bool oracle = bounded_cycle_exists(
                        wg, anchors, cap, [&](unsigned m) { return m == full; });
                    if (!compare("visit-all", solver, oracle)) return false;
                }
                // avoid, per psi
                for (std::size_t l = 0; l < psis.size(); ++l) {
                    bool solver = static_cast<bool>(
                        check_path_exists(pg, PathQuery::avoid_set(psis[l])));
                    WalkGraph wg = base;
                    wg.track_sets = {psis[l]};
                    bool oracle = bounded_cycle_exists(
                        wg, anchors, cap, [](unsigned m) { return m == 0; });
                    if (!compare("avoid", solver, oracle)) return false;
                }
                // neg-gr1, per theta
                for (std::size_t r = 0; r < thetas.size(); ++r) {
                    bool solver = static_cast<bool>(check_path_exists(
                        pg, PathQuery::neg_gr1(psis, thetas[r], static_cast<int>(r))));
                    WalkGraph wg = base;
                    wg.track_sets = psis;
                    wg.track_sets.push_back(thetas[r]);
                    unsigned psi_full = (1u << psis.size()) - 1;
                    unsigned theta_bit = 1u << psis.size();
                    bool oracle = bounded_cycle_exists(
                        wg, anchors, cap, [&](unsigned m) {
                            return (m & psi_full) == psi_full && !(m & theta_bit);
                        });
                    if (!compare("neg-gr1", solver, oracle)) return false;
                }
            }
        }
        return true;
    });

    // 5. The g1 fixture ladder.
    criterion(5, "g1 ladder: weak/strong verdicts, optima, exactness, uniqueness", 60.0,
              [](std::ostringstream& detail) {
        Game g = g1();
        Gr1Formula f = parse_formula("true -> GF p");
        auto expect = [&](bool cond, const char* what) {
            if (!cond) detail << (detail.str().empty() ? "" : "; ") << what;
            return cond;
        };
        bool ok = true;
        // oracle sweeps first: the derived ladder
        ok &= expect(!brute_force_weak(g, f, 0), "oracle weak(0) should be no");
        ok &= expect(brute_force_weak(g, f, 1), "oracle weak(1) should be yes");
        ok &= expect(!brute_force_strong(g, f, 0), "oracle strong(0) should be no");
        ok &= expect(!brute_force_strong(g, f, 1), "oracle strong(1) should be no");
        ok &= expect(brute_force_strong(g, f, 2), "oracle strong(2) should be yes");
        // solver ladder
        ok &= expect(!weak_implementation(g, f, 0), "weak(0)");
        ok &= expect(static_cast<bool>(weak_implementation(g, f, 1)), "weak(1)");
        ok &= expect(!strong_implementation(g, f, 0), "strong(0)");
        ok &= expect(!strong_implementation(g, f, 1), "strong(1)");
        ok &= expect(static_cast<bool>(strong_implementation(g, f, 2)), "strong(2)");
        auto ow = opt_weak(g, f);
        ok &= expect(ow && ow->first == 1, "opt_weak = 1");
        auto os = opt_strong(g, f);
        ok &= expect(os && os->first == 2, "opt_strong = 2");
        ok &= expect(exact_weak(g, f, 1), "exact_weak(1)");
        ok &= expect(!exact_weak(g, f, 0), "exact_weak(0) should be false");
        auto u = unique_opt_weak(g, f);
        ok &= expect(u.has_value() && *u, "unique_opt_weak");
        return ok;
    });

    // 6. Monotonicity and containment over random instances.
    criterion(6, "monotonicity, strong => weak, opt_strong >= opt_weak (100 instances)",
              900.0, [](std::ostringstream& detail) {
        Rng rng(1006);
        RandomGameSpec spec;
        spec.min_states = 2;
        spec.max_states = 3;
        spec.max_players = 2;
        spec.max_actions = 2;
        spec.weight_abs = 1;
        for (int t = 0; t < 100; ++t) {
            Game g = random_game(rng, spec);
            Gr1Formula f = random_formula(rng, g, 1, 1);
            std::int64_t beta = rng.uniform(0, 1);
            bool weak_now = static_cast<bool>(weak_implementation(g, f, beta));
            bool weak_next = static_cast<bool>(weak_implementation(g, f, beta + 1));
            if (weak_now && !weak_next) {
                detail << "monotonicity violated at instance " << t;
                return false;
            }
            bool strong_now = static_cast<bool>(strong_implementation(g, f, beta));
            if (strong_now && !weak_now) {
                detail << "strong-without-weak at instance " << t;
                return false;
            }
            auto ow = opt_weak(g, f);
            auto os = opt_strong(g, f);
            if (ow && os && os->first < ow->first) {
                detail << "opt_strong < opt_weak at instance " << t;
                return false;
            }
            if (os && !ow) {
                detail << "strong optimum without weak optimum at instance " << t;
                return false;
            }
        }
        return true;
    });

    // 7. Reduction sanity: trivial objective, zero budget = NE existence.
    criterion(7, "check-weak with top formula equals oracle NE existence", 300.0,
              [](std::ostringstream& detail) {
        Rng rng(1007);
        RandomGameSpec spec;
        spec.min_states = 2;
        spec.max_states = 4;
        spec.max_players = 2;
        spec.max_actions = 2;
        spec.weight_abs = 2;
        Gr1Formula top = parse_formula("true -> true");
        for (int t = 0; t < 100; ++t) {
            Game g = random_game(rng, spec);
            bool solver = static_cast<bool>(weak_implementation(g, top, 0));
            bool oracle = brute_force_weak(g, top, 0);
            if (solver != oracle) {
                detail << "instance " << t << " solver=" << solver
                       << " oracle=" << oracle;
                return false;
            }
        }
        return true;
    });

    // 8. Determinism of the structured selftest output.
    criterion(8, "selftest --seed 42 is byte-identical across runs and thread counts",
              600.0, [](std::ostringstream& detail) {
        auto run_selftest = [](const char* threads) {
            std::ostringstream out, err;
            int code = cli::run({"selftest", "--seed", "42", "--cases", "8",
                                 "--json", "--threads", threads}, out, err);
            return std::make_pair(code, out.str());
        };
        auto a = run_selftest("1");
        auto b = run_selftest("1");
        auto c = run_selftest("8");
        auto d = run_selftest("8");
        if (a.first != cli::kExitYes) {
            detail << "selftest reported disagreements";
            return false;
        }
        if (a.second != b.second || a.second != c.second || c.second != d.second) {
            detail << "outputs differ";
            return false;
        }
        return true;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED")
              << " (" << failures << " failures)\n";
    return failures;
}
