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

#include <eqdesign/game.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

#include <eqdesign/errors.hpp>

namespace eqdesign {

bool Arena::state_has_atom(int s, int atom) const {
    const auto& l = labels[s];
    return std::binary_search(l.begin(), l.end(), atom);
}

int Arena::atom_index(const std::string& name) const {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), name);
    if (it == atoms.end() || *it != name) return -1;
    return static_cast<int>(it - atoms.begin());
}

SubsidyScheme SubsidyScheme::zero(const Game& g) {
    SubsidyScheme k;
    k.subsidy.assign(g.num_players(), std::vector<std::int64_t>(g.num_states(), 0));
    return k;
}

std::int64_t scheme_cost(const SubsidyScheme& scheme) {
    std::int64_t total = 0;
    for (const auto& row : scheme.subsidy)
        total = std::accumulate(row.begin(), row.end(), total);
    return total;
}

Game apply_subsidy(const Game& g, const SubsidyScheme& scheme) {
    if (static_cast<int>(scheme.subsidy.size()) != g.num_players())
        throw SemanticError("subsidy scheme does not match the game's players");
    Game out = g;
    for (int i = 0; i < g.num_players(); ++i) {
        if (static_cast<int>(scheme.subsidy[i].size()) != g.num_states())
            throw SemanticError("subsidy scheme does not match the game's states");
        for (int s = 0; s < g.num_states(); ++s) {
            if (scheme.subsidy[i][s] < 0)
                throw SemanticError("subsidies must be nonnegative");
            out.weights[i][s] += scheme.subsidy[i][s];
        }
    }
    return out;
}

void validate_lasso(const Game& g, const LassoPath& path) {
    const Arena& a = g.arena;
    if (path.cycle.empty())
        throw SemanticError("lasso cycle must be nonempty");
    if (path.prefix_moves.size() != path.prefix.size())
        throw SemanticError("lasso prefix needs one move per prefix state");
    if (path.cycle_moves.size() != path.cycle.size())
        throw SemanticError("lasso cycle needs one move per cycle state");

    int start = path.prefix.empty() ? path.cycle.front() : path.prefix.front();
    if (start != a.initial)
        throw SemanticError("lasso must start at the initial state");

    auto check_step = [&](int from, int move, int to) {
        if (from < 0 || from >= a.num_states())
            throw SemanticError("lasso references an undefined state");
        if (move < 0 || move >= a.profile_count(from))
            throw SemanticError("lasso move is not a valid action profile");
        if (a.successor(from, move) != to)
            throw SemanticError("lasso step " + a.states[from] +
                                " -> " + a.states[to] +
                                " is inconsistent with the transition function");
    };

    for (std::size_t j = 0; j < path.prefix.size(); ++j) {
        int to = (j + 1 < path.prefix.size()) ? path.prefix[j + 1] : path.cycle.front();
        check_step(path.prefix[j], path.prefix_moves[j], to);
    }
    for (std::size_t j = 0; j < path.cycle.size(); ++j) {
        int to = path.cycle[(j + 1) % path.cycle.size()];
        check_step(path.cycle[j], path.cycle_moves[j], to);
    }
}

Rational mean_payoff(const LassoPath& path, const Game& g, int player) {
    Int total = 0;
    for (int s : path.cycle) total += g.weights[player][s];
    return Rational(total, Int(path.cycle.size()));
}

namespace {

// Smallest period of the (state, move) cycle sequence.
std::size_t primitive_period(const std::vector<int>& st, const std::vector<int>& mv) {
    std::size_t n = st.size();
    for (std::size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t j = p; j < n && ok; ++j)
            ok = st[j] == st[j - p] && mv[j] == mv[j - p];
        if (ok) return p;
    }
    return n;
}

} // namespace

LassoPath canonical_lasso(const LassoPath& path) {
    LassoPath out = path;

    std::size_t p = primitive_period(out.cycle, out.cycle_moves);
    out.cycle.resize(p);
    out.cycle_moves.resize(p);

    // Fold prefix steps that already replay the tail of the cycle: the last
    // prefix step equals the cycle's last step iff rotating the cycle right
    // absorbs it.
    while (!out.prefix.empty() &&
           out.prefix.back() == out.cycle.back() &&
           out.prefix_moves.back() == out.cycle_moves.back()) {
        out.prefix.pop_back();
        out.prefix_moves.pop_back();
        out.cycle.insert(out.cycle.begin(), out.cycle.back());
        out.cycle.pop_back();
        out.cycle_moves.insert(out.cycle_moves.begin(), out.cycle_moves.back());
        out.cycle_moves.pop_back();
    }
    return out;
}

bool same_path(const LassoPath& a, const LassoPath& b) {
    return canonical_lasso(a) == canonical_lasso(b);
}

StateSet cycle_state_set(const Game& g, const LassoPath& path) {
    StateSet set(g.num_states(), false);
    for (int s : path.cycle) set[s] = true;
    return set;
}

std::string lasso_to_string(const Game& g, const LassoPath& path) {
    std::ostringstream os;
    for (int s : path.prefix) os << g.arena.states[s] << " ";
    os << "(";
    for (std::size_t j = 0; j < path.cycle.size(); ++j) {
        if (j) os << " ";
        os << g.arena.states[path.cycle[j]];
    }
    os << ")^w";
    return os.str();
}

} // namespace eqdesign
