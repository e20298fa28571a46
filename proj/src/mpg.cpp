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

#include <eqdesign/mpg.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include <eqdesign/errors.hpp>

namespace eqdesign {

std::int64_t TurnBasedMpg::max_abs_weight() const {
    std::int64_t w = 0;
    for (const auto& node : nodes)
        w = std::max(w, node.weight < 0 ? -node.weight : node.weight);
    return w;
}

namespace {

// One horizon-k sweep table.  Weights fit easily: |nu_t| <= t * W and the
// iteration cap keeps 4 n^3 W^2 far below the int64 range, which is checked
// before the fast path is taken; otherwise the loop runs on cpp_int.
template <typename Num>
std::vector<Num> iterate(const TurnBasedMpg& g, std::vector<Num> nu, std::int64_t steps) {
    const int n = g.size();
    std::vector<Num> next(n);
    for (std::int64_t t = 0; t < steps; ++t) {
        for (int v = 0; v < n; ++v) {
            const auto& node = g.nodes[v];
            Num best = nu[node.succ[0]];
            if (node.owner == TurnBasedMpg::Owner::Max) {
                for (std::size_t j = 1; j < node.succ.size(); ++j)
                    best = std::max(best, nu[node.succ[j]]);
            } else {
                for (std::size_t j = 1; j < node.succ.size(); ++j)
                    best = std::min(best, nu[node.succ[j]]);
            }
            next[v] = Num(node.weight) + best;
        }
        nu.swap(next);
    }
    return nu;
}

// Unique rational with denominator <= n within radius of x, or nullopt when
// the ball holds two candidates (boundary ties; the caller then doubles the
// horizon).
std::optional<Rational> recover_value(const Rational& x, int n, const Rational& radius) {
    std::optional<Rational> found;
    for (int q = 1; q <= n; ++q) {
        Int p = rational_round(x * q);
        Rational cand(p, Int(q));
        if (abs(cand - x) <= radius) {
            if (found && *found != cand) return std::nullopt;
            if (!found) found = cand;
        }
    }
    return found;  // engaged unless no candidate (cannot happen for k >= 1)
}

template <typename Num>
std::optional<std::vector<Rational>> try_solve(const TurnBasedMpg& g,
                                               std::int64_t k_base, int doublings) {
    const int n = g.size();
    const std::int64_t W = std::max<std::int64_t>(1, g.max_abs_weight());
    std::vector<Num> nu(n, Num(0));
    std::int64_t k = 0;
    for (int round = 0; round <= doublings; ++round) {
        std::int64_t target = k_base << round;
        nu = iterate<Num>(g, std::move(nu), target - k);
        k = target;
        Rational radius(Int(2) * n * W, Int(k));
        std::vector<Rational> values(n);
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            Rational x(Int(nu[v]), Int(k));
            auto val = recover_value(x, n, radius);
            if (!val) ok = false;
            else values[v] = *val;
        }
        if (ok) return values;
    }
    return std::nullopt;
}

} // namespace

std::vector<Rational> solve_mpg_values(const TurnBasedMpg& g, std::int64_t iter_cap) {
    const int n = g.size();
    if (n == 0) return {};
    for (const auto& node : g.nodes)
        if (node.succ.empty())
            throw SemanticError("every mean-payoff game node needs a successor");

    const std::int64_t W = std::max<std::int64_t>(1, g.max_abs_weight());
    const std::int64_t n3 = static_cast<std::int64_t>(n) * n * n;
    if (n3 > iter_cap / W)
        throw ResourceLimitError("mean-payoff value iteration needs n^3*W = " +
                                 std::to_string(n3) + "*" + std::to_string(W) +
                                 " steps, above the configured cap");
    std::int64_t k = 4 * n3 * W;

    // |nu| <= k*W; the extra doubling rounds for boundary ties need 4x headroom.
    constexpr std::int64_t kInt64Safe = std::numeric_limits<std::int64_t>::max() / 16;
    std::optional<std::vector<Rational>> values;
    if (W != 0 && k <= kInt64Safe / W)
        values = try_solve<std::int64_t>(g, k, 2);
    else
        values = try_solve<Int>(g, k, 2);
    if (!values)
        values = try_solve<Int>(g, k << 3, 4);
    if (!values)
        throw Error("internal: mean-payoff value recovery did not converge");
    return *values;
}

namespace {

// Restricting a node to one of its successors never changes the value when
// the choice belongs to an optimal positional strategy, and some choice
// always does; scanning candidates in order and keeping the first
// value-preserving one therefore pins a correct strategy node by node.
std::vector<int> fix_side(const TurnBasedMpg& g, TurnBasedMpg::Owner side,
                          const std::vector<Rational>& base_values,
                          std::int64_t iter_cap) {
    TurnBasedMpg restricted = g;
    std::vector<int> choice(g.size(), 0);
    for (int v = 0; v < g.size(); ++v) {
        if (g.nodes[v].owner != side || g.nodes[v].succ.size() <= 1) continue;
        bool fixed = false;
        for (std::size_t c = 0; c < g.nodes[v].succ.size() && !fixed; ++c) {
            std::vector<int> saved = restricted.nodes[v].succ;
            restricted.nodes[v].succ = {g.nodes[v].succ[c]};
            if (solve_mpg_values(restricted, iter_cap) == base_values) {
                choice[v] = static_cast<int>(c);
                fixed = true;
            } else {
                restricted.nodes[v].succ = saved;
            }
        }
        if (!fixed)
            throw Error("internal: no value-preserving choice at a game node");
    }
    return choice;
}

} // namespace

MpgSolution solve_mpg(const TurnBasedMpg& g, std::int64_t iter_cap) {
    MpgSolution out;
    out.value = solve_mpg_values(g, iter_cap);
    out.max_choice = fix_side(g, TurnBasedMpg::Owner::Max, out.value, iter_cap);
    out.min_choice = fix_side(g, TurnBasedMpg::Owner::Min, out.value, iter_cap);
    return out;
}

TurnBasedMpg build_punishment_game(const Game& g, int player) {
    const Arena& a = g.arena;
    const int n = a.num_players();
    TurnBasedMpg out;
    out.state_node.assign(a.num_states(), -1);

    for (int s = 0; s < a.num_states(); ++s) {
        out.state_node[s] = out.size();
        out.nodes.push_back({TurnBasedMpg::Owner::Min, g.weights[player][s], {}});
        out.choice_info.emplace_back(-1, -1);
    }

    for (int s = 0; s < a.num_states(); ++s) {
        // Coalition profiles: mixed radix over the other players' actions.
        int coalition_count = 1;
        for (int j = 0; j < n; ++j)
            if (j != player) coalition_count *= a.num_actions(s, j);

        for (int code = 0; code < coalition_count; ++code) {
            std::vector<int> acts(n, 0);
            int rest = code;
            for (int j = 0; j < n; ++j) {
                if (j == player) continue;
                acts[j] = rest % a.num_actions(s, j);
                rest /= a.num_actions(s, j);
            }
            int choice_node = out.size();
            out.nodes.push_back({TurnBasedMpg::Owner::Max, g.weights[player][s], {}});
            out.choice_info.emplace_back(s, code);
            for (int reply = 0; reply < a.num_actions(s, player); ++reply) {
                acts[player] = reply;
                int target = a.successor(s, a.encode_profile(s, acts));
                out.nodes[choice_node].succ.push_back(out.state_node[target]);
            }
            out.nodes[out.state_node[s]].succ.push_back(choice_node);
        }
    }
    return out;
}

PunMatrix punishment_values(const Game& g, std::int64_t iter_cap) {
    PunMatrix pun(g.num_players());
    for (int i = 0; i < g.num_players(); ++i) {
        TurnBasedMpg pg = build_punishment_game(g, i);
        std::vector<Rational> values = solve_mpg_values(pg, iter_cap);
        pun[i].resize(g.num_states());
        for (int s = 0; s < g.num_states(); ++s)
            pun[i][s] = values[pg.state_node[s]];
    }
    return pun;
}

PunishmentTable punishment_table(const Game& g, std::int64_t iter_cap) {
    const Arena& a = g.arena;
    const int n = a.num_players();
    PunishmentTable table;
    table.values.resize(n);
    table.coalition.resize(n);
    for (int i = 0; i < n; ++i) {
        TurnBasedMpg pg = build_punishment_game(g, i);
        MpgSolution sol = solve_mpg(pg, iter_cap);
        table.values[i].resize(a.num_states());
        table.coalition[i].assign(a.num_states(), std::vector<int>(n, -1));
        for (int s = 0; s < a.num_states(); ++s) {
            int node = pg.state_node[s];
            table.values[i][s] = sol.value[node];
            int choice_node = pg.nodes[node].succ[sol.min_choice[node]];
            int code = pg.choice_info[choice_node].second;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                table.coalition[i][s][j] = code % a.num_actions(s, j);
                code /= a.num_actions(s, j);
            }
        }
    }
    return table;
}

bool is_z_secure(const Game& g, const PunMatrix& pun, int state, int profile,
                 const std::vector<Rational>& z) {
    const Arena& a = g.arena;
    for (int i = 0; i < a.num_players(); ++i) {
        for (int dev = 0; dev < a.num_actions(state, i); ++dev) {
            int target = a.successor(state, a.replace_action(state, profile, i, dev));
            if (pun[i][target] > z[i]) return false;
        }
    }
    return true;
}

int PrunedGame::num_retained_states() const {
    int c = 0;
    for (bool b : state_retained) c += b;
    return c;
}

std::int64_t PrunedGame::num_retained_edges() const {
    std::int64_t c = 0;
    for (const auto& row : edge_retained)
        for (bool b : row) c += b;
    return c;
}

PrunedGame prune(const Game& g, const PunMatrix& pun, const std::vector<Rational>& z) {
    const Arena& a = g.arena;
    const int ns = a.num_states();

    PrunedGame out;
    out.game = &g;
    out.z = z;
    out.edge_retained.assign(ns, {});

    std::vector<bool> alive(ns, true);
    for (int s = 0; s < ns; ++s) {
        out.edge_retained[s].assign(a.profile_count(s), false);
        for (int code = 0; code < a.profile_count(s); ++code)
            out.edge_retained[s][code] = is_z_secure(g, pun, s, code, z);
    }

    // Paths are infinite: drop states with no secure continuation, then any
    // edges into them, to a fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < ns; ++s) {
            if (!alive[s]) continue;
            bool has_out = false;
            for (int code = 0; code < a.profile_count(s); ++code) {
                if (!out.edge_retained[s][code]) continue;
                if (!alive[a.successor(s, code)]) {
                    out.edge_retained[s][code] = false;
                    changed = true;
                } else {
                    has_out = true;
                }
            }
            if (!has_out) {
                alive[s] = false;
                changed = true;
            }
        }
    }

    // Restrict to the part reachable from the initial state.
    out.state_retained.assign(ns, false);
    if (alive[a.initial]) {
        std::deque<int> queue{a.initial};
        out.state_retained[a.initial] = true;
        while (!queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            for (int code = 0; code < a.profile_count(s); ++code) {
                if (!out.edge_retained[s][code]) continue;
                int t = a.successor(s, code);
                if (!out.state_retained[t]) {
                    out.state_retained[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    for (int s = 0; s < ns; ++s)
        if (!out.state_retained[s])
            std::fill(out.edge_retained[s].begin(), out.edge_retained[s].end(), false);

    return out;
}

std::vector<std::vector<Rational>> punishment_grid(const PunMatrix& pun) {
    const int n = static_cast<int>(pun.size());
    std::vector<std::vector<Rational>> per_player(n);
    for (int i = 0; i < n; ++i) {
        std::set<Rational> values(pun[i].begin(), pun[i].end());
        per_player[i].assign(values.begin(), values.end());
    }
    std::vector<std::vector<Rational>> grid;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<Rational> z(n);
        for (int i = 0; i < n; ++i) z[i] = per_player[i][idx[i]];
        grid.push_back(std::move(z));
        int i = n - 1;
        while (i >= 0 && ++idx[i] == per_player[i].size()) idx[i--] = 0;
        if (i < 0) break;
    }
    return grid;
}

} // namespace eqdesign
