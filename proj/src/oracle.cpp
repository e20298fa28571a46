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

#include <eqdesign/oracle.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include <eqdesign/errors.hpp>
#include <eqdesign/schemes.hpp>

namespace eqdesign {

int OracleConfig::prefix_cap(const Game& g) const {
    return max_prefix >= 0 ? max_prefix : g.num_states();
}

int OracleConfig::cycle_cap(const Game& g) const {
    return max_cycle >= 0 ? max_cycle : g.num_states();
}

int OracleConfig::phi_cycle_cap(const Game& g, const Gr1Formula& f) const {
    if (max_cycle >= 0) return max_cycle;
    int pieces = static_cast<int>(f.antecedents.size() + f.consequents.size()) + 1;
    return g.num_states() * pieces;
}

namespace {

void check_size(const Game& g, const OracleConfig& cfg) {
    if (g.num_states() > cfg.max_states)
        throw ResourceLimitError("oracle capped at " + std::to_string(cfg.max_states) +
                                 " states, game has " + std::to_string(g.num_states()));
}

} // namespace

namespace {

struct LassoEnumerator {
    const Game& g;
    const Arena& a;
    int prefix_cap;
    int cycle_cap;
    std::set<std::vector<int>> seen;
    std::vector<LassoPath> out;

    LassoEnumerator(const Game& game, const OracleConfig& cfg)
        : g(game), a(game.arena),
          prefix_cap(cfg.prefix_cap(game)),
          cycle_cap(std::min(cfg.cycle_cap(game), game.num_states())) {}

    void emit(const std::vector<int>& pre, const std::vector<int>& pre_moves,
              const std::vector<int>& cyc, const std::vector<int>& cyc_moves) {
        LassoPath lasso{pre, cyc, pre_moves, cyc_moves};
        LassoPath canon = canonical_lasso(lasso);
        std::vector<int> key = canon.prefix;
        key.push_back(-1);
        key.insert(key.end(), canon.prefix_moves.begin(), canon.prefix_moves.end());
        key.push_back(-1);
        key.insert(key.end(), canon.cycle.begin(), canon.cycle.end());
        key.push_back(-1);
        key.insert(key.end(), canon.cycle_moves.begin(), canon.cycle_moves.end());
        if (seen.insert(std::move(key)).second) out.push_back(std::move(canon));
    }

    // Simple cycles anchored at cyc.front(), every hop with every witness.
    void extend_cycle(const std::vector<int>& pre, const std::vector<int>& pre_moves,
                      std::vector<int>& cyc, std::vector<int>& moves) {
        int anchor = cyc.front();
        int cur = cyc.back();
        for (int code = 0; code < a.profile_count(cur); ++code) {
            int next = a.successor(cur, code);
            if (next == anchor) {
                moves.push_back(code);
                emit(pre, pre_moves, cyc, moves);
                moves.pop_back();
            } else if (static_cast<int>(cyc.size()) < cycle_cap &&
                       std::find(cyc.begin(), cyc.end(), next) == cyc.end()) {
                cyc.push_back(next);
                moves.push_back(code);
                extend_cycle(pre, pre_moves, cyc, moves);
                cyc.pop_back();
                moves.pop_back();
            }
        }
    }

    // Simple prefixes from the initial state; the walk's last state anchors
    // the cycle search.
    void extend_prefix(std::vector<int>& walk, std::vector<int>& walk_moves) {
        int cur = walk.back();
        {
            std::vector<int> pre(walk.begin(), walk.end() - 1);
            std::vector<int> cyc{cur};
            std::vector<int> moves;
            extend_cycle(pre, walk_moves, cyc, moves);
        }
        if (static_cast<int>(walk.size()) - 1 >= prefix_cap) return;
        for (int code = 0; code < a.profile_count(cur); ++code) {
            int next = a.successor(cur, code);
            if (std::find(walk.begin(), walk.end(), next) != walk.end()) continue;
            walk.push_back(next);
            walk_moves.push_back(code);
            extend_prefix(walk, walk_moves);
            walk.pop_back();
            walk_moves.pop_back();
        }
    }
};

} // namespace

std::vector<LassoPath> enumerate_lassos(const Game& g, const OracleConfig& cfg) {
    check_size(g, cfg);
    LassoEnumerator en(g, cfg);
    std::vector<int> walk{g.arena.initial};
    std::vector<int> walk_moves;
    en.extend_prefix(walk, walk_moves);
    return std::move(en.out);
}

std::vector<Rational> oracle_mpg_values(const TurnBasedMpg& g, std::int64_t max_pairs) {
    const int n = g.size();
    std::vector<int> min_nodes;
    for (int v = 0; v < n; ++v)
        if (g.nodes[v].owner == TurnBasedMpg::Owner::Min) min_nodes.push_back(v);

    std::int64_t combos = 1;
    for (int v : min_nodes) {
        combos *= static_cast<std::int64_t>(g.nodes[v].succ.size());
        if (combos > max_pairs)
            throw ResourceLimitError("positional brute force above the strategy cap");
    }

    std::vector<Rational> best(n);
    std::vector<std::size_t> choice(min_nodes.size(), 0);
    bool first = true;
    while (true) {
        // One-player game induced by the fixed minimizer strategy: the
        // maximizer's best is the best cycle mean reachable per node.
        std::vector<std::vector<int>> succ(n);
        for (int v = 0; v < n; ++v) {
            if (g.nodes[v].owner == TurnBasedMpg::Owner::Min) continue;
            succ[v] = g.nodes[v].succ;
        }
        for (std::size_t j = 0; j < min_nodes.size(); ++j)
            succ[min_nodes[j]] = {g.nodes[min_nodes[j]].succ[choice[j]]};

        // Every simple cycle of the induced graph.
        std::vector<std::pair<std::vector<int>, Rational>> cycles;
        std::vector<int> stack;
        std::vector<bool> on_stack(n, false);
        std::function<void(int, int)> dfs_cycles = [&](int v, int anchor) {
            stack.push_back(v);
            on_stack[v] = true;
            for (int w : succ[v]) {
                if (w == anchor) {
                    Int total = 0;
                    for (int u : stack) total += g.nodes[u].weight;
                    cycles.push_back({stack, Rational(total, Int(stack.size()))});
                } else if (!on_stack[w] && w > anchor) {
                    dfs_cycles(w, anchor);
                }
            }
            stack.pop_back();
            on_stack[v] = false;
        };
        for (int anchor = 0; anchor < n; ++anchor) dfs_cycles(anchor, anchor);

        // value(v) = max cycle mean reachable from v.
        std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
        for (int v = 0; v < n; ++v) {
            std::deque<int> queue{v};
            reach[v][v] = true;
            while (!queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                for (int w : succ[x])
                    if (!reach[v][w]) {
                        reach[v][w] = true;
                        queue.push_back(w);
                    }
            }
        }
        std::vector<Rational> value(n);
        std::vector<bool> valued(n, false);
        for (const auto& [cyc, mean] : cycles)
            for (int v = 0; v < n; ++v)
                if (reach[v][cyc.front()] && (!valued[v] || mean > value[v])) {
                    value[v] = mean;
                    valued[v] = true;
                }
        for (int v = 0; v < n; ++v)
            if (!valued[v])
                throw Error("internal: induced play reaches no cycle");

        if (first) {
            best = value;
            first = false;
        } else {
            for (int v = 0; v < n; ++v)
                if (value[v] < best[v]) best[v] = value[v];
        }

        std::size_t j = 0;
        while (j < min_nodes.size() && ++choice[j] == g.nodes[min_nodes[j]].succ.size())
            choice[j++] = 0;
        if (j == min_nodes.size()) break;
        if (min_nodes.empty()) break;
    }
    return best;
}

std::vector<Rational> brute_force_punishment(const Game& g, int player,
                                             const OracleConfig& cfg) {
    check_size(g, cfg);
    const Arena& a = g.arena;
    const int n = a.num_players();

    // Own copy of the coalition-moves-first reduction.
    TurnBasedMpg pg;
    std::vector<int> state_node(a.num_states());
    for (int s = 0; s < a.num_states(); ++s) {
        state_node[s] = pg.size();
        pg.nodes.push_back({TurnBasedMpg::Owner::Min, g.weights[player][s], {}});
    }
    for (int s = 0; s < a.num_states(); ++s) {
        std::vector<int> others;
        for (int j = 0; j < n; ++j)
            if (j != player) others.push_back(j);
        std::vector<int> pick(others.size(), 0);
        while (true) {
            std::vector<int> acts(n, 0);
            for (std::size_t j = 0; j < others.size(); ++j) acts[others[j]] = pick[j];
            int node = pg.size();
            pg.nodes.push_back({TurnBasedMpg::Owner::Max, g.weights[player][s], {}});
            for (int reply = 0; reply < a.num_actions(s, player); ++reply) {
                acts[player] = reply;
                pg.nodes[node].succ.push_back(
                    state_node[a.successor(s, a.encode_profile(s, acts))]);
            }
            pg.nodes[state_node[s]].succ.push_back(node);

            std::size_t j = 0;
            while (j < others.size() &&
                   ++pick[j] == static_cast<std::size_t>(a.num_actions(s, others[j])))
                pick[j++] = 0;
            if (j == others.size()) break;
            if (others.empty()) break;
        }
    }

    std::vector<Rational> values = oracle_mpg_values(pg, cfg.max_strategy_pairs);
    std::vector<Rational> out(a.num_states());
    for (int s = 0; s < a.num_states(); ++s) out[s] = values[state_node[s]];
    return out;
}

namespace {

// Largest punishment value player i could secure by deviating anywhere
// along the lasso; the path is Nash-sustainable iff no player beats their
// own payoff this way.
Rational deviation_threshold(const Game& g, const PunMatrix& pun,
                             const LassoPath& path, int player) {
    const Arena& a = g.arena;
    std::optional<Rational> worst;
    auto visit_step = [&](int s, int profile) {
        for (int dev = 0; dev < a.num_actions(s, player); ++dev) {
            int target = a.successor(s, a.replace_action(s, profile, player, dev));
            Rational v = pun[player][target];
            if (!worst || v > *worst) worst = v;
        }
    };
    for (std::size_t j = 0; j < path.prefix.size(); ++j)
        visit_step(path.prefix[j], path.prefix_moves[j]);
    for (std::size_t j = 0; j < path.cycle.size(); ++j)
        visit_step(path.cycle[j], path.cycle_moves[j]);
    return *worst;
}

} // namespace

std::vector<LassoPath> brute_force_ne_lassos(const Game& g, const OracleConfig& cfg) {
    PunMatrix pun(g.num_players());
    for (int i = 0; i < g.num_players(); ++i)
        pun[i] = brute_force_punishment(g, i, cfg);

    std::vector<LassoPath> out;
    for (const LassoPath& path : enumerate_lassos(g, cfg)) {
        bool sustained = true;
        for (int i = 0; i < g.num_players() && sustained; ++i)
            if (deviation_threshold(g, pun, path, i) > mean_payoff(path, g, i))
                sustained = false;
        if (sustained) out.push_back(path);
    }
    return out;
}

bool brute_force_is_ne(const Game& g, const LassoPath& path, const OracleConfig& cfg) {
    validate_lasso(g, path);
    for (int i = 0; i < g.num_players(); ++i) {
        std::vector<Rational> pun = brute_force_punishment(g, i, cfg);
        PunMatrix one_row(g.num_players());
        one_row[i] = pun;
        if (deviation_threshold(g, one_row, path, i) > mean_payoff(path, g, i))
            return false;
    }
    return true;
}

namespace {

bool dominates_ge(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

} // namespace

bool bounded_cycle_exists(const WalkGraph& graph, const std::vector<int>& anchors,
                          int max_len, const std::function<bool(unsigned)>& accept) {
    const int players = static_cast<int>(graph.visit_weight.size());
    const int sets = static_cast<int>(graph.track_sets.size());

    struct Entry {
        std::vector<std::int64_t> sums;
        int vertex;
        unsigned mask;
        int length;
    };

    for (int anchor : anchors) {
        // Walks whose smallest vertex is the anchor: each closed walk is
        // found exactly where its minimum lives.
        std::map<std::pair<int, unsigned>, std::vector<std::vector<std::int64_t>>> pareto;
        std::vector<Entry> frontier;

        unsigned mask0 = 0;
        for (int b = 0; b < sets; ++b)
            if (graph.track_sets[b][anchor]) mask0 |= 1u << b;
        frontier.push_back({std::vector<std::int64_t>(players, 0), anchor, mask0, 0});

        for (int stage = 1; stage <= max_len && !frontier.empty(); ++stage) {
            std::vector<Entry> next;
            for (const Entry& cur : frontier) {
                for (int w : graph.out[cur.vertex]) {
                    if (w < anchor) continue;
                    Entry e;
                    e.sums = cur.sums;
                    for (int i = 0; i < players; ++i)
                        e.sums[i] += graph.visit_weight[i][cur.vertex];
                    e.vertex = w;
                    e.mask = cur.mask;
                    for (int b = 0; b < sets; ++b)
                        if (graph.track_sets[b][w]) e.mask |= 1u << b;
                    e.length = cur.length + 1;

                    if (e.vertex == anchor && accept(e.mask)) {
                        bool all_nonneg = true;
                        for (int i = 0; i < players; ++i)
                            if (e.sums[i] < 0) all_nonneg = false;
                        if (all_nonneg) return true;
                    }

                    auto& cell = pareto[{e.vertex, e.mask}];
                    bool dominated = false;
                    for (const auto& sums : cell)
                        if (dominates_ge(sums, e.sums)) { dominated = true; break; }
                    if (dominated) continue;
                    std::erase_if(cell, [&](const auto& sums) {
                        return dominates_ge(e.sums, sums);
                    });
                    cell.push_back(e.sums);
                    next.push_back(std::move(e));
                }
            }
            frontier = std::move(next);
        }
    }
    return false;
}

namespace {

struct SecureGraph {
    WalkGraph graph;
    std::vector<int> anchors;  // reachable vertices, ascending
};

// z-secure subgraph of (G, kappa), collapsed to state arcs, with shifted
// visit weights; built from first principles for independence from the
// solver's pruning.
SecureGraph secure_graph(const Game& g, const PunMatrix& pun,
                         const std::vector<Rational>& z,
                         const std::vector<StateSet>& track_sets) {
    const Arena& a = g.arena;
    SecureGraph out;
    out.graph.num_vertices = a.num_states();
    out.graph.out.assign(a.num_states(), {});
    out.graph.track_sets = track_sets;

    for (int s = 0; s < a.num_states(); ++s) {
        std::set<int> targets;
        for (int code = 0; code < a.profile_count(s); ++code) {
            bool secure = true;
            for (int i = 0; i < a.num_players() && secure; ++i)
                for (int dev = 0; dev < a.num_actions(s, i) && secure; ++dev) {
                    int t = a.successor(s, a.replace_action(s, code, i, dev));
                    if (pun[i][t] > z[i]) secure = false;
                }
            if (secure) targets.insert(a.successor(s, code));
        }
        out.graph.out[s].assign(targets.begin(), targets.end());
    }

    out.graph.visit_weight.assign(a.num_players(),
                                  std::vector<std::int64_t>(a.num_states(), 0));
    for (int i = 0; i < a.num_players(); ++i) {
        Int p = numerator(z[i]);
        Int q = denominator(z[i]);
        for (int s = 0; s < a.num_states(); ++s) {
            Int v = q * g.weights[i][s] - p;
            out.graph.visit_weight[i][s] = static_cast<std::int64_t>(v);
        }
    }

    std::vector<bool> reachable(a.num_states(), false);
    std::deque<int> queue{a.initial};
    reachable[a.initial] = true;
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        for (int t : out.graph.out[s])
            if (!reachable[t]) {
                reachable[t] = true;
                queue.push_back(t);
            }
    }
    for (int s = 0; s < a.num_states(); ++s)
        if (reachable[s]) out.anchors.push_back(s);
    return out;
}

std::vector<std::vector<Rational>> oracle_grid(const PunMatrix& pun) {
    return punishment_grid(pun);
}

} // namespace

bool brute_force_weak(const Game& g, const Gr1Formula& f, std::int64_t budget,
                      const OracleConfig& cfg) {
    check_size(g, cfg);
    const int m = static_cast<int>(f.antecedents.size());
    const int n = static_cast<int>(f.consequents.size());
    const int cap = cfg.phi_cycle_cap(g, f);

    std::vector<StateSet> track_sets;
    for (const auto& psi : f.antecedents) track_sets.push_back(satisfying_states(g, psi));
    for (const auto& theta : f.consequents) track_sets.push_back(satisfying_states(g, theta));

    const unsigned psi_mask = (1u << m) - 1;
    const unsigned theta_mask = ((1u << (m + n)) - 1) & ~psi_mask;
    auto phi_holds = [&](unsigned mask) {
        if ((mask & theta_mask) == theta_mask) return true;   // all thetas recur
        return (mask & psi_mask) != psi_mask;                 // some psi goes quiet
    };

    SchemeEnumerator schemes(g, budget, cfg.scheme_cap);
    while (auto scheme = schemes.next()) {
        Game subsidized = apply_subsidy(g, *scheme);
        PunMatrix pun(g.num_players());
        for (int i = 0; i < g.num_players(); ++i)
            pun[i] = brute_force_punishment(subsidized, i, cfg);
        for (const auto& z : oracle_grid(pun)) {
            SecureGraph sg = secure_graph(subsidized, pun, z, track_sets);
            if (bounded_cycle_exists(sg.graph, sg.anchors, cap, phi_holds))
                return true;
        }
    }
    return false;
}

bool brute_force_strong(const Game& g, const Gr1Formula& f, std::int64_t budget,
                        const OracleConfig& cfg) {
    check_size(g, cfg);
    const int m = static_cast<int>(f.antecedents.size());
    const int n = static_cast<int>(f.consequents.size());
    const int cap = cfg.phi_cycle_cap(g, f);

    std::vector<StateSet> track_sets;
    for (const auto& psi : f.antecedents) track_sets.push_back(satisfying_states(g, psi));
    for (const auto& theta : f.consequents) track_sets.push_back(satisfying_states(g, theta));

    const unsigned psi_mask = (1u << m) - 1;
    const unsigned theta_mask = ((1u << (m + n)) - 1) & ~psi_mask;
    auto any_mask = [](unsigned) { return true; };
    auto violates_phi = [&](unsigned mask) {
        // not phi: every psi recurs and some theta does not
        if ((mask & psi_mask) != psi_mask) return false;
        return (mask & theta_mask) != theta_mask;
    };

    SchemeEnumerator schemes(g, budget, cfg.scheme_cap);
    while (auto scheme = schemes.next()) {
        Game subsidized = apply_subsidy(g, *scheme);
        PunMatrix pun(g.num_players());
        for (int i = 0; i < g.num_players(); ++i)
            pun[i] = brute_force_punishment(subsidized, i, cfg);

        bool has_ne = false;
        bool all_satisfy = true;
        for (const auto& z : oracle_grid(pun)) {
            SecureGraph sg = secure_graph(subsidized, pun, z, track_sets);
            if (!has_ne && bounded_cycle_exists(sg.graph, sg.anchors, cap, any_mask))
                has_ne = true;
            if (n > 0 && all_satisfy &&
                bounded_cycle_exists(sg.graph, sg.anchors, cap, violates_phi))
                all_satisfy = false;
        }
        if (has_ne && all_satisfy) return true;
    }
    return false;
}

} // namespace eqdesign
