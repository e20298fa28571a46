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

#ifndef EQDESIGN_RANDOM_GEN_HPP
#define EQDESIGN_RANDOM_GEN_HPP

#include <cstdint>
#include <random>

#include <eqdesign/game.hpp>
#include <eqdesign/gr1.hpp>
#include <eqdesign/mpg.hpp>

namespace eqdesign {

/** Deterministic RNG wrapper.  mt19937_64 output is pinned by the standard
 *  and the draw helpers avoid distribution objects, so a seed produces the
 *  same stream everywhere. */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(engine_() %
                   static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(int percent) { return uniform(0, 99) < percent; }

private:
    std::mt19937_64 engine_;
};

struct RandomGameSpec {
    int min_states = 2;
    int max_states = 4;
    int min_players = 1;
    int max_players = 2;
    int max_actions = 2;
    int weight_abs = 2;
    int num_atoms = 2;       // drawn from a fixed pool
    int label_percent = 40;  // chance an atom labels a state
};

Game random_game(Rng& rng, const RandomGameSpec& spec);

/** Formula over the game's alphabet; sides up to the given lengths.
 *  Falls back to constants when the game has no atoms. */
Gr1Formula random_formula(Rng& rng, const Game& g, int max_ante, int max_cons);

/** Free-standing turn-based game with random owners, weights and edges. */
TurnBasedMpg random_mpg(Rng& rng, int max_nodes, int weight_abs);

} // namespace eqdesign

#endif
