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

#ifndef EQDESIGN_GAME_IO_HPP
#define EQDESIGN_GAME_IO_HPP

#include <string>

#include <eqdesign/game.hpp>

namespace eqdesign {

/**
 * Parses a game-description document.
 *
 * The document is JSON with top-level keys:
 *   players:     list of player ids
 *   states:      list of {id, label: [props], weights: {player: int}}
 *   initial:     state id
 *   actions:     {state: {player: [action ids]}}
 *   transitions: list of {from, profile: {player: action}, to}
 *
 * Transitions must cover every (state, action profile) exactly once.
 * Omitted weights default to 0; label and weights keys may be left out.
 *
 * Throws SyntaxError (position-annotated) for malformed JSON and
 * SemanticError for totality/consistency violations.
 */
Game parse_game(const std::string& text);

Game load_game_file(const std::string& path);

/** Canonical serialization: object keys sorted, lists in declaration order.
 *  parse_game(serialize_game(g)) == g for every valid game. */
std::string serialize_game(const Game& g);

} // namespace eqdesign

#endif
