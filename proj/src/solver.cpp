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

#include <eqdesign/solver.hpp>

#include <atomic>
#include <thread>

#include <eqdesign/errors.hpp>

namespace eqdesign {

std::vector<Rational> PunishmentCache::row(const Game& g, int player,
                                           std::int64_t iter_cap) {
    auto key = std::make_pair(player, g.weights[player]);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = rows_.find(key);
        if (it != rows_.end()) return it->second;
    }
    TurnBasedMpg pg = build_punishment_game(g, player);
    std::vector<Rational> values = solve_mpg_values(pg, iter_cap);
    std::vector<Rational> row(g.num_states());
    for (int s = 0; s < g.num_states(); ++s) row[s] = values[pg.state_node[s]];
    std::lock_guard<std::mutex> lock(mutex_);
    return rows_.emplace(std::move(key), std::move(row)).first->second;
}

namespace {

PunMatrix cached_punishment(const Game& g, PunishmentCache& cache,
                            std::int64_t iter_cap) {
    PunMatrix pun(g.num_players());
    for (int i = 0; i < g.num_players(); ++i)
        pun[i] = cache.row(g, i, iter_cap);
    return pun;
}

struct FormulaSets {
    std::vector<StateSet> psi;
    std::vector<StateSet> theta;
};

// V-sets depend only on the labelling, never on subsidies.
FormulaSets formula_sets(const Game& g, const Gr1Formula& f) {
    FormulaSets sets;
    for (const auto& e : f.antecedents) sets.psi.push_back(satisfying_states(g, e));
    for (const auto& e : f.consequents) sets.theta.push_back(satisfying_states(g, e));
    return sets;
}

struct PerSchemeStats {
    std::int64_t grids = 0;
    PathSearchStats path;
};

// The per-kappa body of the weak procedure: sweep the punishment grid, and
// per z try the all-theta route, then each finite-psi route.
std::optional<WeakWitness> weak_for_scheme(const Game& g, const SubsidyScheme& scheme,
                                           const FormulaSets& sets,
                                           PunishmentCache& cache,
                                           const SolveOptions& opt,
                                           PerSchemeStats& st) {
    Game subsidized = apply_subsidy(g, scheme);
    PunMatrix pun = cached_punishment(subsidized, cache, opt.mpg_iter_cap);
    for (const auto& z : punishment_grid(pun)) {
        ++st.grids;
        PrunedGame pg = prune(subsidized, pun, z);
        if (pg.empty()) continue;

        if (auto path = check_path_exists(pg, PathQuery::visit_all(sets.theta),
                                          &st.path, opt.dump_lp, opt.pivot_cap))
            return WeakWitness{scheme, z, std::move(*path)};
        if (!sets.theta.empty()) {
            for (const auto& psi : sets.psi) {
                if (auto path = check_path_exists(pg, PathQuery::avoid_set(psi),
                                                  &st.path, opt.dump_lp, opt.pivot_cap))
                    return WeakWitness{scheme, z, std::move(*path)};
            }
        }
    }
    return std::nullopt;
}

std::optional<StrongWitness> strong_for_scheme(const Game& g, const SubsidyScheme& scheme,
                                               const FormulaSets& sets,
                                               PunishmentCache& cache,
                                               const SolveOptions& opt,
                                               PerSchemeStats& st) {
    Game subsidized = apply_subsidy(g, scheme);
    PunMatrix pun = cached_punishment(subsidized, cache, opt.mpg_iter_cap);
    std::vector<std::vector<Rational>> grid = punishment_grid(pun);

    std::vector<PrunedGame> pruned;
    pruned.reserve(grid.size());
    for (const auto& z : grid) {
        ++st.grids;
        pruned.push_back(prune(subsidized, pun, z));
    }

    // f_exists: some z admits an equilibrium path at all.
    std::optional<std::pair<std::size_t, LassoPath>> ne;
    for (std::size_t zi = 0; zi < grid.size() && !ne; ++zi) {
        if (pruned[zi].empty()) continue;
        if (auto path = check_path_exists(pruned[zi], PathQuery::ne_only(),
                                          &st.path, opt.dump_lp, opt.pivot_cap))
            ne = {zi, std::move(*path)};
    }
    if (!ne) return std::nullopt;

    // f_forall: no z admits an equilibrium path violating the formula.
    // Violations need every psi recurrent and some theta starved; with no
    // theta the negation is unsatisfiable.
    std::int64_t neg_failed = 0;
    for (std::size_t zi = 0; zi < grid.size(); ++zi) {
        if (pruned[zi].empty()) continue;
        for (std::size_t r = 0; r < sets.theta.size(); ++r) {
            if (check_path_exists(pruned[zi],
                                  PathQuery::neg_gr1(sets.psi, sets.theta[r],
                                                     static_cast<int>(r)),
                                  &st.path, opt.dump_lp, opt.pivot_cap))
                return std::nullopt;
            ++neg_failed;
        }
    }

    StrongWitness witness;
    witness.scheme = scheme;
    witness.z = grid[ne->first];
    witness.path = std::move(ne->second);
    witness.grid_checked = static_cast<std::int64_t>(grid.size());
    witness.neg_lps_failed = neg_failed;
    return witness;
}

int effective_threads(const SolveOptions& opt) {
    if (opt.dump_lp) return 1;
    if (opt.threads > 0) return opt.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Deterministic parallel sweep: schemes are pulled in enumeration order in
// chunks; within a chunk workers race, and the lowest-index hit wins.
template <typename W>
std::optional<W> sweep_schemes(
        const Game& g, std::int64_t budget, bool exact_cost,
        const SolveOptions& opt, SolveStats* stats,
        const std::function<std::optional<W>(const SubsidyScheme&, PerSchemeStats&)>& body) {
    SchemeEnumerator en(g, budget, opt.scheme_cap);
    if (exact_cost) {
        en.seek_cost(budget);
        en.restrict_to_exact_cost(true);
    }
    const int threads = effective_threads(opt);
    constexpr int kChunk = 64;

    while (true) {
        std::vector<SubsidyScheme> chunk;
        while (static_cast<int>(chunk.size()) < kChunk) {
            auto k = en.next();
            if (!k) break;
            chunk.push_back(std::move(*k));
        }
        if (chunk.empty()) return std::nullopt;

        std::vector<std::optional<W>> results(chunk.size());
        std::vector<PerSchemeStats> per(chunk.size());
        std::vector<std::exception_ptr> errors(chunk.size());

        if (threads <= 1 || chunk.size() == 1) {
            for (std::size_t j = 0; j < chunk.size(); ++j) {
                if (stats) ++stats->schemes_examined;
                results[j] = body(chunk[j], per[j]);
                if (stats) {
                    stats->grids_examined += per[j].grids;
                    stats->merge(per[j].path);
                }
                if (results[j]) return results[j];
            }
            continue;
        }

        std::atomic<std::size_t> cursor{0};
        std::atomic<std::size_t> found{chunk.size()};
        auto worker = [&]() {
            while (true) {
                std::size_t j = cursor.fetch_add(1);
                if (j >= chunk.size() || j > found.load()) break;
                try {
                    results[j] = body(chunk[j], per[j]);
                    if (results[j]) {
                        std::size_t cur = found.load();
                        while (j < cur && !found.compare_exchange_weak(cur, j)) {}
                    }
                } catch (...) {
                    errors[j] = std::current_exception();
                    std::size_t cur = found.load();
                    while (j < cur && !found.compare_exchange_weak(cur, j)) {}
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();

        for (std::size_t j = 0; j < chunk.size(); ++j) {
            if (stats) {
                ++stats->schemes_examined;
                stats->grids_examined += per[j].grids;
                stats->merge(per[j].path);
            }
            if (errors[j]) std::rethrow_exception(errors[j]);
            if (results[j]) return results[j];
        }
    }
}

} // namespace

std::optional<WeakWitness> weak_implementation(const Game& g, const Gr1Formula& f,
                                               std::int64_t budget,
                                               const SolveOptions& opt,
                                               SolveStats* stats) {
    FormulaSets sets = formula_sets(g, f);
    PunishmentCache cache;
    return sweep_schemes<WeakWitness>(
        g, budget, false, opt, stats,
        [&](const SubsidyScheme& k, PerSchemeStats& st) {
            return weak_for_scheme(g, k, sets, cache, opt, st);
        });
}

std::optional<StrongWitness> strong_implementation(const Game& g, const Gr1Formula& f,
                                                   std::int64_t budget,
                                                   const SolveOptions& opt,
                                                   SolveStats* stats) {
    FormulaSets sets = formula_sets(g, f);
    PunishmentCache cache;
    return sweep_schemes<StrongWitness>(
        g, budget, false, opt, stats,
        [&](const SubsidyScheme& k, PerSchemeStats& st) {
            return strong_for_scheme(g, k, sets, cache, opt, st);
        });
}

std::int64_t budget_upper_bound(const Game& g, const SolveOptions& opt) {
    PunMatrix pun = punishment_values(g, opt.mpg_iter_cap);
    Rational bound = 0;
    for (int i = 0; i < g.num_players(); ++i) {
        Rational top = 0;
        for (int s = 0; s < g.num_states(); ++s)
            if (pun[i][s] > top) top = pun[i][s];
        bound += top;
    }
    bound *= g.num_states() - 1;
    return static_cast<std::int64_t>(rational_ceil(bound));
}

namespace {

// Shared skeleton for the two optimisation problems.
template <typename W>
std::optional<std::pair<std::int64_t, W>> optimize(
        const Game& g, const SolveOptions& opt, SolveStats* stats,
        const std::function<std::optional<W>(std::int64_t)>& solve_at) {
    std::int64_t bound = budget_upper_bound(g, opt);
    if (opt.linear_scan) {
        for (std::int64_t b = 0; b <= bound; ++b)
            if (auto w = solve_at(b)) return std::make_pair(b, std::move(*w));
        return std::nullopt;
    }
    auto top = solve_at(bound);
    if (!top) return std::nullopt;
    std::int64_t lo = 0, hi = bound;
    W best = std::move(*top);
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (auto w = solve_at(mid)) {
            best = std::move(*w);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return std::make_pair(lo, std::move(best));
}

} // namespace

std::optional<std::pair<std::int64_t, WeakWitness>> opt_weak(
        const Game& g, const Gr1Formula& f, const SolveOptions& opt,
        SolveStats* stats) {
    return optimize<WeakWitness>(g, opt, stats, [&](std::int64_t b) {
        return weak_implementation(g, f, b, opt, stats);
    });
}

std::optional<std::pair<std::int64_t, StrongWitness>> opt_strong(
        const Game& g, const Gr1Formula& f, const SolveOptions& opt,
        SolveStats* stats) {
    return optimize<StrongWitness>(g, opt, stats, [&](std::int64_t b) {
        return strong_implementation(g, f, b, opt, stats);
    });
}

bool exact_weak(const Game& g, const Gr1Formula& f, std::int64_t b,
                const SolveOptions& opt, SolveStats* stats) {
    if (b < 0) throw SemanticError("budget must be nonnegative");
    if (!weak_implementation(g, f, b, opt, stats)) return false;
    return b == 0 || !weak_implementation(g, f, b - 1, opt, stats);
}

bool exact_strong(const Game& g, const Gr1Formula& f, std::int64_t b,
                  const SolveOptions& opt, SolveStats* stats) {
    if (b < 0) throw SemanticError("budget must be nonnegative");
    if (!strong_implementation(g, f, b, opt, stats)) return false;
    return b == 0 || !strong_implementation(g, f, b - 1, opt, stats);
}

namespace {

// Counts implementing schemes of exactly optimal cost, stopping at two.
template <typename W>
std::optional<bool> unique_optimum(
        const Game& g, const SolveOptions& opt, SolveStats* stats,
        const std::function<std::optional<std::pair<std::int64_t, W>>()>& optimum,
        const std::function<std::optional<W>(const SubsidyScheme&, PerSchemeStats&)>& body) {
    auto best = optimum();
    if (!best) return std::nullopt;
    std::int64_t star = best->first;

    SchemeEnumerator en(g, star, opt.scheme_cap);
    en.seek_cost(star);
    en.restrict_to_exact_cost(true);
    int hits = 0;
    while (auto k = en.next()) {
        PerSchemeStats st;
        if (stats) ++stats->schemes_examined;
        bool ok = static_cast<bool>(body(*k, st));
        if (stats) {
            stats->grids_examined += st.grids;
            stats->merge(st.path);
        }
        if (ok && ++hits >= 2) return false;
    }
    return hits == 1;
}

} // namespace

std::optional<bool> unique_opt_weak(const Game& g, const Gr1Formula& f,
                                    const SolveOptions& opt, SolveStats* stats) {
    FormulaSets sets = formula_sets(g, f);
    PunishmentCache cache;
    return unique_optimum<WeakWitness>(
        g, opt, stats,
        [&]() { return opt_weak(g, f, opt, stats); },
        [&](const SubsidyScheme& k, PerSchemeStats& st) {
            return weak_for_scheme(g, k, sets, cache, opt, st);
        });
}

std::optional<bool> unique_opt_strong(const Game& g, const Gr1Formula& f,
                                      const SolveOptions& opt, SolveStats* stats) {
    FormulaSets sets = formula_sets(g, f);
    PunishmentCache cache;
    return unique_optimum<StrongWitness>(
        g, opt, stats,
        [&]() { return opt_strong(g, f, opt, stats); },
        [&](const SubsidyScheme& k, PerSchemeStats& st) {
            return strong_for_scheme(g, k, sets, cache, opt, st);
        });
}

bool certify_ne_lasso(const Game& g, const PunMatrix& pun, const LassoPath& path) {
    for (const auto& z : punishment_grid(pun)) {
        bool pay_ok = true;
        for (int i = 0; i < g.num_players() && pay_ok; ++i)
            if (mean_payoff(path, g, i) < z[i]) pay_ok = false;
        if (!pay_ok) continue;

        PrunedGame pg = prune(g, pun, z);
        if (pg.empty()) continue;
        bool contained = true;
        auto check_step = [&](int s, int move) {
            if (!pg.state_retained[s] || !pg.edge_retained[s][move]) contained = false;
        };
        for (std::size_t j = 0; j < path.prefix.size() && contained; ++j)
            check_step(path.prefix[j], path.prefix_moves[j]);
        for (std::size_t j = 0; j < path.cycle.size() && contained; ++j)
            check_step(path.cycle[j], path.cycle_moves[j]);
        if (contained) return true;
    }
    return false;
}

} // namespace eqdesign
