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

#include <eqdesign/random_gen.hpp>

#include <algorithm>
#include <set>

namespace eqdesign {

Game random_game(Rng& rng, const RandomGameSpec& spec) {
    static const char* kAtomPool[] = {"p", "q", "r", "t"};

    Game g;
    Arena& a = g.arena;

    int ns = static_cast<int>(rng.uniform(spec.min_states, spec.max_states));
    int np = static_cast<int>(rng.uniform(spec.min_players, spec.max_players));
    for (int i = 0; i < np; ++i) a.players.push_back("p" + std::to_string(i + 1));
    for (int s = 0; s < ns; ++s) a.states.push_back("s" + std::to_string(s));
    a.initial = 0;

    int atom_count = std::min(spec.num_atoms, 4);
    std::set<std::string> used_atoms;
    std::vector<std::vector<std::string>> raw_labels(ns);
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < atom_count; ++t)
            if (rng.chance(spec.label_percent)) {
                raw_labels[s].push_back(kAtomPool[t]);
                used_atoms.insert(kAtomPool[t]);
            }
    a.atoms.assign(used_atoms.begin(), used_atoms.end());
    a.labels.resize(ns);
    for (int s = 0; s < ns; ++s) {
        std::set<int> lbl;
        for (const auto& atom : raw_labels[s]) lbl.insert(a.atom_index(atom));
        a.labels[s].assign(lbl.begin(), lbl.end());
    }

    a.actions.resize(ns);
    for (int s = 0; s < ns; ++s) {
        a.actions[s].resize(np);
        for (int i = 0; i < np; ++i) {
            int count = static_cast<int>(rng.uniform(1, spec.max_actions));
            for (int c = 0; c < count; ++c)
                a.actions[s][i].push_back("a" + std::to_string(c));
        }
    }

    a.transitions.resize(ns);
    for (int s = 0; s < ns; ++s) {
        a.transitions[s].resize(a.profile_count(s));
        for (int code = 0; code < a.profile_count(s); ++code)
            a.transitions[s][code] = static_cast<int>(rng.uniform(0, ns - 1));
    }

    g.weights.assign(np, std::vector<std::int64_t>(ns, 0));
    for (int i = 0; i < np; ++i)
        for (int s = 0; s < ns; ++s)
            g.weights[i][s] = rng.uniform(-spec.weight_abs, spec.weight_abs);

    return g;
}

namespace {

BoolExpr random_bool(Rng& rng, const Game& g) {
    const auto& atoms = g.arena.atoms;
    if (atoms.empty())
        return rng.chance(50) ? BoolExpr::make_true() : BoolExpr::make_false();
    auto atom = [&]() {
        return BoolExpr::make_atom(atoms[rng.uniform(0, static_cast<std::int64_t>(atoms.size()) - 1)]);
    };
    switch (rng.uniform(0, 5)) {
    case 0: return BoolExpr::make_not(atom());
    case 1: return BoolExpr::make_and(atom(), atom());
    case 2: return BoolExpr::make_or(atom(), atom());
    case 3: return BoolExpr::make_or(atom(), BoolExpr::make_not(atom()));
    default: return atom();
    }
}

} // namespace

Gr1Formula random_formula(Rng& rng, const Game& g, int max_ante, int max_cons) {
    Gr1Formula f;
    int m = static_cast<int>(rng.uniform(0, max_ante));
    int n = static_cast<int>(rng.uniform(0, max_cons));
    for (int l = 0; l < m; ++l) f.antecedents.push_back(random_bool(rng, g));
    for (int r = 0; r < n; ++r) f.consequents.push_back(random_bool(rng, g));
    return f;
}

TurnBasedMpg random_mpg(Rng& rng, int max_nodes, int weight_abs) {
    TurnBasedMpg g;
    int n = static_cast<int>(rng.uniform(1, max_nodes));
    for (int v = 0; v < n; ++v) {
        TurnBasedMpg::Node node;
        node.owner = rng.chance(50) ? TurnBasedMpg::Owner::Max : TurnBasedMpg::Owner::Min;
        node.weight = rng.uniform(-weight_abs, weight_abs);
        int degree = static_cast<int>(rng.uniform(1, std::min(3, n)));
        std::set<int> succ;
        while (static_cast<int>(succ.size()) < degree)
            succ.insert(static_cast<int>(rng.uniform(0, n - 1)));
        node.succ.assign(succ.begin(), succ.end());
        g.nodes.push_back(std::move(node));
    }
    return g;
}

} // namespace eqdesign
