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

#ifndef EQDESIGN_MPG_HPP
#define EQDESIGN_MPG_HPP

#include <cstdint>
#include <vector>

#include <eqdesign/game.hpp>
#include <eqdesign/rational.hpp>

namespace eqdesign {

/**
 * Turn-based two-player zero-sum mean-payoff game.  In the punishment
 * reduction the coalition (minimizer) owns the state nodes and commits a
 * partial profile first; the protagonist (maximizer) owns the intermediate
 * choice nodes and answers with their own action.  Both halves of a round
 * carry the same weight, so means transfer unchanged.
 */
struct TurnBasedMpg {
    enum class Owner { Max, Min };

    struct Node {
        Owner owner;
        std::int64_t weight;
        std::vector<int> succ;  // nonempty
    };

    std::vector<Node> nodes;

    // Punishment-reduction bookkeeping (empty for free-standing games):
    // state_node[s] = minimizer node of state s; choice nodes record the
    // (state, coalition profile code) pair they answer.
    std::vector<int> state_node;
    std::vector<std::pair<int, int>> choice_info;  // node id -> (state, coalition code)

    int size() const { return static_cast<int>(nodes.size()); }
    std::int64_t max_abs_weight() const;
};

constexpr std::int64_t kDefaultMpgIterCap = 50'000'000;  // cap on n^3 * W

/**
 * Exact values of every node, via finite-horizon value iteration: run
 * k = 4 n^3 W steps; each node's value is the unique rational with
 * denominator <= n within 2nW/k of nu_k/k.
 */
std::vector<Rational> solve_mpg_values(const TurnBasedMpg& g,
                                       std::int64_t iter_cap = kDefaultMpgIterCap);

struct MpgSolution {
    std::vector<Rational> value;
    // chosen successor index (into Node::succ) per node; the maximizer's
    // strategy secures >= value, the minimizer's <= value, each against
    // arbitrary play of the other side.
    std::vector<int> max_choice;
    std::vector<int> min_choice;
};

/** Values plus positional strategies achieving/defending them. */
MpgSolution solve_mpg(const TurnBasedMpg& g,
                      std::int64_t iter_cap = kDefaultMpgIterCap);

/** The zero-sum game behind pun_player: coalition commits a_{-i}, the
 *  protagonist answers a'_i, play moves to tr(s, (a_{-i}, a'_i)). */
TurnBasedMpg build_punishment_game(const Game& g, int player);

/** pun[i][s], exact. */
using PunMatrix = std::vector<std::vector<Rational>>;

/** Punishment values for every (player, state). */
PunMatrix punishment_values(const Game& g,
                            std::int64_t iter_cap = kDefaultMpgIterCap);

struct PunishmentTable {
    PunMatrix values;
    // coalition[i][s][j]: action index of player j in the punishment
    // strategy against player i from state s; entry j == i is -1.
    std::vector<std::vector<std::vector<int>>> coalition;
};

/** Values plus memoryless coalition punishment strategies. */
PunishmentTable punishment_table(const Game& g,
                                 std::int64_t iter_cap = kDefaultMpgIterCap);

/** True iff every unilateral deviation from (s, profile) lands at
 *  punishment value <= z for the deviating player. */
bool is_z_secure(const Game& g, const PunMatrix& pun, int state, int profile,
                 const std::vector<Rational>& z);

/**
 * (G, kappa)[z]: the subsidized game restricted to z-secure transitions,
 * with blocked states removed to a fixpoint and the rest restricted to
 * what is reachable from the initial state.
 */
struct PrunedGame {
    const Game* game = nullptr;
    std::vector<Rational> z;
    StateSet state_retained;
    std::vector<std::vector<bool>> edge_retained;  // [s][profile]

    bool empty() const { return !state_retained[game->arena.initial]; }
    int num_retained_states() const;
    std::int64_t num_retained_edges() const;
};

PrunedGame prune(const Game& g, const PunMatrix& pun, const std::vector<Rational>& z);

/** All z vectors with z_i drawn from player i's punishment-value set,
 *  deduplicated, in a fixed deterministic order. */
std::vector<std::vector<Rational>> punishment_grid(const PunMatrix& pun);

} // namespace eqdesign

#endif
