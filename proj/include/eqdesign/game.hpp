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

#ifndef EQDESIGN_GAME_HPP
#define EQDESIGN_GAME_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <eqdesign/rational.hpp>

namespace eqdesign {

/** Set of states, as a membership mask indexed by state id. */
using StateSet = std::vector<bool>;

/**
 * The dynamic structure of a concurrent game: states, per-player action
 * sets, a deterministic transition function on joint action profiles, and a
 * propositional labelling.
 *
 * Players, states, actions and atoms are referred to by dense indices;
 * the name tables keep the external identifiers.  Action profiles at a
 * state are encoded as a single integer in mixed radix, player 0 being the
 * least significant digit.
 *
 * Instances are immutable after construction (by convention; all solver
 * code takes them by const reference).
 */
struct Arena {
    std::vector<std::string> players;
    std::vector<std::string> states;
    std::vector<std::string> atoms;   // alphabet: union of all label sets, sorted
    int initial = 0;

    // actions[s][i]: nonempty action names for player i at state s
    std::vector<std::vector<std::vector<std::string>>> actions;
    // transitions[s][profile]: successor state
    std::vector<std::vector<int>> transitions;
    // labels[s]: sorted atom indices
    std::vector<std::vector<int>> labels;

    int num_players() const { return static_cast<int>(players.size()); }
    int num_states() const { return static_cast<int>(states.size()); }
    int num_actions(int s, int i) const { return static_cast<int>(actions[s][i].size()); }

    int profile_count(int s) const {
        int c = 1;
        for (int i = 0; i < num_players(); ++i) c *= num_actions(s, i);
        return c;
    }

    int encode_profile(int s, const std::vector<int>& a) const {
        int code = 0;
        for (int i = num_players() - 1; i >= 0; --i)
            code = code * num_actions(s, i) + a[i];
        return code;
    }

    std::vector<int> decode_profile(int s, int code) const {
        std::vector<int> a(num_players());
        for (int i = 0; i < num_players(); ++i) {
            a[i] = code % num_actions(s, i);
            code /= num_actions(s, i);
        }
        return a;
    }

    /** Profile code with player i's digit replaced by action. */
    int replace_action(int s, int code, int i, int action) const {
        std::vector<int> a = decode_profile(s, code);
        a[i] = action;
        return encode_profile(s, a);
    }

    int successor(int s, int profile) const { return transitions[s][profile]; }

    bool state_has_atom(int s, int atom) const;
    int atom_index(const std::string& name) const;  // -1 when absent

    bool operator==(const Arena&) const = default;
};

/** An arena together with one integer weight per (player, state). */
struct Game {
    Arena arena;
    // weights[i][s]
    std::vector<std::vector<std::int64_t>> weights;

    int num_players() const { return arena.num_players(); }
    int num_states() const { return arena.num_states(); }

    bool operator==(const Game&) const = default;
};

/** Per-(player, state) natural-number reward added by the principal. */
struct SubsidyScheme {
    // subsidy[i][s] >= 0
    std::vector<std::vector<std::int64_t>> subsidy;

    static SubsidyScheme zero(const Game& g);

    bool operator==(const SubsidyScheme&) const = default;
};

/** Total amount handed out by the scheme. */
std::int64_t scheme_cost(const SubsidyScheme& scheme);

/** (G, kappa): weights increased pointwise, arena untouched. */
Game apply_subsidy(const Game& g, const SubsidyScheme& scheme);

/**
 * Ultimately periodic path: finite prefix followed by a repeated cycle,
 * with the action profile witnessing each transition.
 *
 * moves: prefix_moves[j] takes prefix[j] to prefix[j+1] (the last one to
 * cycle[0]); cycle_moves[j] takes cycle[j] to cycle[(j+1) % L].  When the
 * prefix is empty the path starts at cycle[0].
 */
struct LassoPath {
    std::vector<int> prefix;
    std::vector<int> cycle;
    std::vector<int> prefix_moves;
    std::vector<int> cycle_moves;

    bool operator==(const LassoPath&) const = default;
};

/** Checks transition consistency and shape; throws SemanticError. */
void validate_lasso(const Game& g, const LassoPath& path);

/** Cycle average of the player's weights; the prefix never matters. */
Rational mean_payoff(const LassoPath& path, const Game& g, int player);

/**
 * Canonical form of the induced infinite path: primitive cycle, shortest
 * prefix (trailing prefix steps that replay the cycle are folded into it).
 * Two lassos denote the same path iff their canonical forms are equal.
 */
LassoPath canonical_lasso(const LassoPath& path);

bool same_path(const LassoPath& a, const LassoPath& b);

/** States appearing on the cycle, as a set. */
StateSet cycle_state_set(const Game& g, const LassoPath& path);

std::string lasso_to_string(const Game& g, const LassoPath& path);

} // namespace eqdesign

#endif
