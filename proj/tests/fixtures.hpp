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

#ifndef EQDESIGN_TESTS_FIXTURES_HPP
#define EQDESIGN_TESTS_FIXTURES_HPP

#include <string>

#include <eqdesign/game_io.hpp>

namespace eqdesign::tests {

// Two-choice micro-game: a transient start, a p-labelled loop worth 0 and
// an unlabelled loop worth 1.
inline const char* kG1 = R"({
  "players": ["p1"],
  "states": [
    {"id": "s0", "label": [], "weights": {"p1": 0}},
    {"id": "a", "label": ["p"], "weights": {"p1": 0}},
    {"id": "b", "label": [], "weights": {"p1": 1}}
  ],
  "initial": "s0",
  "actions": {
    "s0": {"p1": ["go_a", "go_b"]},
    "a": {"p1": ["stay"]},
    "b": {"p1": ["stay"]}
  },
  "transitions": [
    {"from": "s0", "profile": {"p1": "go_a"}, "to": "a"},
    {"from": "s0", "profile": {"p1": "go_b"}, "to": "b"},
    {"from": "a", "profile": {"p1": "stay"}, "to": "a"},
    {"from": "b", "profile": {"p1": "stay"}, "to": "b"}
  ]
})";

inline Game g1() { return parse_game(kG1); }

// One state, one player, one action.
inline const char* kLoop = R"({
  "players": ["p1"],
  "states": [{"id": "s0", "label": ["p"], "weights": {"p1": 5}}],
  "initial": "s0",
  "actions": {"s0": {"p1": ["stay"]}},
  "transitions": [{"from": "s0", "profile": {"p1": "stay"}, "to": "s0"}]
})";

inline Game loop_game() { return parse_game(kLoop); }

} // namespace eqdesign::tests

#endif
