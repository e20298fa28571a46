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

#ifndef EQDESIGN_ORACLE_HPP
#define EQDESIGN_ORACLE_HPP

#include <cstdint>
#include <vector>

#include <eqdesign/game.hpp>
#include <eqdesign/gr1.hpp>
#include <eqdesign/mpg.hpp>
#include <eqdesign/rational.hpp>

namespace eqdesign {

/**
 * Brute-force reference implementations for desk-scale validation.  Never
 * on the fast path: the solver is checked against these, so they share no
 * algorithmic machinery with it beyond the plain data model.
 */
struct OracleConfig {
    int max_prefix = -1;        // default |St|
    int max_cycle = -1;         // default |St|; phi checks use |St|*(n+m+1)
    int max_states = 8;
    std::int64_t max_strategy_pairs = 4'000'000;
    std::int64_t scheme_cap = 1'000'000;

    int prefix_cap(const Game& g) const;
    int cycle_cap(const Game& g) const;
    /** Cycle bound for formula checks: walks stitched from up to
     *  (m + n + 1) simple cycles. */
    int phi_cycle_cap(const Game& g, const Gr1Formula& f) const;
};

/** Every lasso with a simple prefix and simple cycle (with action
 *  witnesses), canonicalized and deduplicated. */
std::vector<LassoPath> enumerate_lassos(const Game& g, const OracleConfig& cfg = {});

/** Positional min-max on a free-standing turn-based game: minimizer
 *  strategies enumerated outright, each answered by the best reachable
 *  cycle mean of the induced one-player game. */
std::vector<Rational> oracle_mpg_values(const TurnBasedMpg& g,
                                        std::int64_t max_pairs = 4'000'000);

/** pun_player(s) for every s, by exhaustive positional play of the
 *  coalition-moves-first punishment game (built independently here). */
std::vector<Rational> brute_force_punishment(const Game& g, int player,
                                             const OracleConfig& cfg = {});

/** Lassos of enumerate_lassos that satisfy both Nash conditions: every
 *  step deviation-capped by the punishment values, and payoffs above the
 *  induced threshold. */
std::vector<LassoPath> brute_force_ne_lassos(const Game& g, const OracleConfig& cfg = {});

/** Is this particular lasso sustained by an equilibrium?  Checked from
 *  first principles: no player's best deviation anywhere along the path
 *  beats their payoff.  Used to confirm solver witnesses independently. */
bool brute_force_is_ne(const Game& g, const LassoPath& path,
                       const OracleConfig& cfg = {});

/** Exhaustive weak implementation check: some admissible scheme has an NE
 *  lasso satisfying the formula (cycles searched up to the phi cap). */
bool brute_force_weak(const Game& g, const Gr1Formula& f, std::int64_t budget,
                      const OracleConfig& cfg = {});

/** Exhaustive strong implementation check per the two-flag procedure:
 *  some NE exists and no NE lasso violates the formula. */
bool brute_force_strong(const Game& g, const Gr1Formula& f, std::int64_t budget,
                        const OracleConfig& cfg = {});

/**
 * Bounded closed-walk existence over an explicit arc graph: is there a
 * cycle through `arcs` of length <= max_len, reachable-anchored at some
 * vertex of `anchors`, with every per-player shifted visit total
 * nonnegative, whose set-hit mask satisfies `accept`?  Exposed for
 * cross-checking the search against raw enumeration in tests.
 */
struct WalkGraph {
    int num_vertices = 0;
    std::vector<std::vector<int>> out;                    // vertex -> vertices
    std::vector<std::vector<std::int64_t>> visit_weight;  // [player][vertex]
    std::vector<StateSet> track_sets;                     // bit i of the mask
};

bool bounded_cycle_exists(const WalkGraph& graph, const std::vector<int>& anchors,
                          int max_len, const std::function<bool(unsigned)>& accept);

} // namespace eqdesign

#endif
