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

#ifndef EQDESIGN_SOLVER_HPP
#define EQDESIGN_SOLVER_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

#include <eqdesign/game.hpp>
#include <eqdesign/gr1.hpp>
#include <eqdesign/lp.hpp>
#include <eqdesign/mpg.hpp>
#include <eqdesign/path_search.hpp>
#include <eqdesign/schemes.hpp>

namespace eqdesign {

struct SolveOptions {
    int threads = 0;  // 0 = available parallelism
    bool linear_scan = false;
    std::int64_t scheme_cap = kDefaultSchemeCap;
    std::int64_t mpg_iter_cap = kDefaultMpgIterCap;
    std::int64_t pivot_cap = kDefaultPivotCap;
    LpDumpFn dump_lp;  // when set, candidates run sequentially
};

struct SolveStats {
    std::int64_t schemes_examined = 0;
    std::int64_t grids_examined = 0;
    std::int64_t lps_solved = 0;

    void merge(const PathSearchStats& ps) { lps_solved += ps.lps_solved; }
};

/** Everything a "yes" to Weak Implementation needs: the scheme, the
 *  threshold vector, and an equilibrium lasso satisfying the formula. */
struct WeakWitness {
    SubsidyScheme scheme;
    std::vector<Rational> z;
    LassoPath path;
};

/** For Strong Implementation: an equilibrium witness plus the record that
 *  the violation search came back empty across the whole grid. */
struct StrongWitness {
    SubsidyScheme scheme;
    std::vector<Rational> z;
    LassoPath path;
    std::int64_t grid_checked = 0;   // z vectors swept in the forall part
    std::int64_t neg_lps_failed = 0; // violation searches that returned none
};

/** Punishment values memoised per (player, weight row); the reduction for
 *  player i only reads player i's weights, so rows are shared across all
 *  schemes touching other players. */
class PunishmentCache {
public:
    std::vector<Rational> row(const Game& g, int player, std::int64_t iter_cap);

private:
    std::map<std::pair<int, std::vector<std::int64_t>>, std::vector<Rational>> rows_;
    std::mutex mutex_;
};

std::optional<WeakWitness> weak_implementation(const Game& g, const Gr1Formula& f,
                                               std::int64_t budget,
                                               const SolveOptions& opt = {},
                                               SolveStats* stats = nullptr);

std::optional<StrongWitness> strong_implementation(const Game& g, const Gr1Formula& f,
                                                   std::int64_t budget,
                                                   const SolveOptions& opt = {},
                                                   SolveStats* stats = nullptr);

/** ceil(sum_i max(0, max_s pun_i(s)) * (|St| - 1)) on the base game. */
std::int64_t budget_upper_bound(const Game& g, const SolveOptions& opt = {});

std::optional<std::pair<std::int64_t, WeakWitness>> opt_weak(
    const Game& g, const Gr1Formula& f, const SolveOptions& opt = {},
    SolveStats* stats = nullptr);

std::optional<std::pair<std::int64_t, StrongWitness>> opt_strong(
    const Game& g, const Gr1Formula& f, const SolveOptions& opt = {},
    SolveStats* stats = nullptr);

bool exact_weak(const Game& g, const Gr1Formula& f, std::int64_t b,
                const SolveOptions& opt = {}, SolveStats* stats = nullptr);
bool exact_strong(const Game& g, const Gr1Formula& f, std::int64_t b,
                  const SolveOptions& opt = {}, SolveStats* stats = nullptr);

/** True iff exactly one scheme of optimal cost implements the formula;
 *  nullopt when no budget works at all. */
std::optional<bool> unique_opt_weak(const Game& g, const Gr1Formula& f,
                                    const SolveOptions& opt = {},
                                    SolveStats* stats = nullptr);
std::optional<bool> unique_opt_strong(const Game& g, const Gr1Formula& f,
                                      const SolveOptions& opt = {},
                                      SolveStats* stats = nullptr);

/** Does some grid z certify the lasso per the equilibrium characterisation
 *  (containment in the pruned game and payoffs above z)? */
bool certify_ne_lasso(const Game& g, const PunMatrix& pun, const LassoPath& path);

} // namespace eqdesign

#endif
