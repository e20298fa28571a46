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

#include <eqdesign/game_io.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include <eqdesign/errors.hpp>

namespace eqdesign {

using nlohmann::json;

namespace {

int index_of(const std::vector<std::string>& names, const std::string& name,
             const char* what) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw SemanticError(std::string("undefined ") + what + " '" + name + "'");
    return static_cast<int>(it - names.begin());
}

const json& require(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw SemanticError(std::string("missing required key '") + key + "'");
    return *it;
}

std::string profile_to_string(const Arena& a, int s, int code) {
    std::vector<int> acts = a.decode_profile(s, code);
    std::ostringstream os;
    os << "{";
    for (int i = 0; i < a.num_players(); ++i) {
        if (i) os << ", ";
        os << a.players[i] << ": " << a.actions[s][i][acts[i]];
    }
    os << "}";
    return os.str();
}

} // namespace

Game parse_game(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.what(), e.byte);
    }
    if (!doc.is_object())
        throw SemanticError("game document must be a JSON object");

    Game g;
    Arena& a = g.arena;

    for (const auto& p : require(doc, "players")) {
        std::string name = p.get<std::string>();
        if (std::find(a.players.begin(), a.players.end(), name) != a.players.end())
            throw SemanticError("duplicate player '" + name + "'");
        a.players.push_back(name);
    }
    if (a.players.empty())
        throw SemanticError("a game needs at least one player");

    // First pass over states: ids and the atom alphabet.
    const json& states = require(doc, "states");
    std::set<std::string> atom_set;
    for (const auto& st : states) {
        std::string id = require(st, "id").get<std::string>();
        if (std::find(a.states.begin(), a.states.end(), id) != a.states.end())
            throw SemanticError("duplicate state '" + id + "'");
        a.states.push_back(id);
        if (st.contains("label"))
            for (const auto& atom : st["label"])
                atom_set.insert(atom.get<std::string>());
    }
    if (a.states.empty())
        throw SemanticError("a game needs at least one state");
    a.atoms.assign(atom_set.begin(), atom_set.end());

    int n = a.num_players();
    int ns = a.num_states();
    a.labels.assign(ns, {});
    g.weights.assign(n, std::vector<std::int64_t>(ns, 0));

    int s = 0;
    for (const auto& st : states) {
        if (st.contains("label")) {
            std::set<int> lbl;
            for (const auto& atom : st["label"])
                lbl.insert(a.atom_index(atom.get<std::string>()));
            a.labels[s].assign(lbl.begin(), lbl.end());
        }
        if (st.contains("weights")) {
            for (const auto& [player, w] : st["weights"].items()) {
                int i = index_of(a.players, player, "player");
                if (!w.is_number_integer())
                    throw SemanticError("weight of " + player + " at state '" +
                                        a.states[s] + "' must be an integer");
                g.weights[i][s] = w.get<std::int64_t>();
            }
        }
        ++s;
    }

    a.initial = index_of(a.states, require(doc, "initial").get<std::string>(), "state");

    const json& actions = require(doc, "actions");
    a.actions.assign(ns, std::vector<std::vector<std::string>>(n));
    for (const auto& [state_id, per_player] : actions.items()) {
        int si = index_of(a.states, state_id, "state");
        for (const auto& [player, acts] : per_player.items()) {
            int i = index_of(a.players, player, "player");
            for (const auto& act : acts)
                a.actions[si][i].push_back(act.get<std::string>());
        }
    }
    for (int si = 0; si < ns; ++si)
        for (int i = 0; i < n; ++i)
            if (a.actions[si][i].empty())
                throw SemanticError("empty action set for player " + a.players[i] +
                                    " at state '" + a.states[si] + "'");

    // Transitions: total, no duplicates.
    a.transitions.assign(ns, {});
    for (int si = 0; si < ns; ++si)
        a.transitions[si].assign(a.profile_count(si), -1);

    for (const auto& tr : require(doc, "transitions")) {
        int from = index_of(a.states, require(tr, "from").get<std::string>(), "state");
        int to = index_of(a.states, require(tr, "to").get<std::string>(), "state");
        const json& profile = require(tr, "profile");
        std::vector<int> acts(n, -1);
        for (const auto& [player, act] : profile.items()) {
            int i = index_of(a.players, player, "player");
            const auto& available = a.actions[from][i];
            auto it = std::find(available.begin(), available.end(), act.get<std::string>());
            if (it == available.end())
                throw SemanticError("action '" + act.get<std::string>() +
                                    "' is not available to " + player +
                                    " at state '" + a.states[from] + "'");
            acts[i] = static_cast<int>(it - available.begin());
        }
        for (int i = 0; i < n; ++i)
            if (acts[i] < 0)
                throw SemanticError("transition from '" + a.states[from] +
                                    "' does not fix an action for " + a.players[i]);
        int code = a.encode_profile(from, acts);
        if (a.transitions[from][code] != -1)
            throw SemanticError("duplicate transition at state '" + a.states[from] +
                                "' for profile " + profile_to_string(a, from, code));
        a.transitions[from][code] = to;
    }
    for (int si = 0; si < ns; ++si)
        for (int code = 0; code < a.profile_count(si); ++code)
            if (a.transitions[si][code] == -1)
                throw SemanticError("missing transition at state '" + a.states[si] +
                                    "' for profile " + profile_to_string(a, si, code));

    return g;
}

Game load_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SemanticError("cannot open game file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_game(buf.str());
}

std::string serialize_game(const Game& g) {
    const Arena& a = g.arena;
    json doc;

    doc["players"] = a.players;

    json states = json::array();
    for (int s = 0; s < a.num_states(); ++s) {
        json st;
        st["id"] = a.states[s];
        json label = json::array();
        for (int atom : a.labels[s]) label.push_back(a.atoms[atom]);
        st["label"] = label;
        json weights;
        for (int i = 0; i < a.num_players(); ++i)
            weights[a.players[i]] = g.weights[i][s];
        st["weights"] = weights;
        states.push_back(st);
    }
    doc["states"] = states;

    doc["initial"] = a.states[a.initial];

    json actions;
    for (int s = 0; s < a.num_states(); ++s) {
        json per_player;
        for (int i = 0; i < a.num_players(); ++i)
            per_player[a.players[i]] = a.actions[s][i];
        actions[a.states[s]] = per_player;
    }
    doc["actions"] = actions;

    json transitions = json::array();
    for (int s = 0; s < a.num_states(); ++s) {
        for (int code = 0; code < a.profile_count(s); ++code) {
            std::vector<int> acts = a.decode_profile(s, code);
            json tr;
            tr["from"] = a.states[s];
            json profile;
            for (int i = 0; i < a.num_players(); ++i)
                profile[a.players[i]] = a.actions[s][i][acts[i]];
            tr["profile"] = profile;
            tr["to"] = a.states[a.successor(s, code)];
            transitions.push_back(tr);
        }
    }
    doc["transitions"] = transitions;

    return doc.dump(2) + "\n";
}

} // namespace eqdesign
