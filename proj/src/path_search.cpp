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

#include <eqdesign/path_search.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include <eqdesign/errors.hpp>

namespace eqdesign {

PathQuery PathQuery::visit_all(std::vector<StateSet> sets) {
    PathQuery q;
    q.mode = Mode::VisitAll;
    q.visit = std::move(sets);
    return q;
}

PathQuery PathQuery::avoid_set(StateSet set) {
    PathQuery q;
    q.mode = Mode::Avoid;
    q.avoid = std::move(set);
    return q;
}

PathQuery PathQuery::ne_only() {
    PathQuery q;
    q.mode = Mode::NeOnly;
    return q;
}

PathQuery PathQuery::neg_gr1(std::vector<StateSet> psi_sets, StateSet theta_set,
                             int index) {
    PathQuery q;
    q.mode = Mode::NegGr1;
    q.visit = std::move(psi_sets);
    q.avoid = std::move(theta_set);
    q.theta_index = index;
    return q;
}

namespace {

// Parallel profile-edges between the same states carry identical source
// weights, so one representative (the smallest code) stands for all of
// them in the cycle search.
struct Arc {
    int src;
    int trg;
    int profile;
};

struct Collapsed {
    std::vector<Arc> arcs;                  // sorted by (src, trg)
    std::vector<std::vector<int>> out;      // state -> arc ids
};

Collapsed collapse(const PrunedGame& pg) {
    const Arena& a = pg.game->arena;
    Collapsed c;
    c.out.resize(a.num_states());
    for (int s = 0; s < a.num_states(); ++s) {
        if (!pg.state_retained[s]) continue;
        std::map<int, int> best;  // target -> smallest profile
        for (int code = 0; code < a.profile_count(s); ++code)
            if (pg.edge_retained[s][code])
                best.try_emplace(a.successor(s, code), code);
        for (const auto& [t, code] : best) {
            c.out[s].push_back(static_cast<int>(c.arcs.size()));
            c.arcs.push_back({s, t, code});
        }
    }
    return c;
}

// Iterative Tarjan over the collapsed graph; components reported as sorted
// state lists, ordered by smallest member.
std::vector<std::vector<int>> strongly_connected_components(
        const Collapsed& c, const std::vector<int>& vertices) {
    std::map<int, int> index_of;
    std::vector<int> low(vertices.size()), idx(vertices.size(), -1);
    std::vector<bool> on_stack(vertices.size(), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> components;
    for (std::size_t i = 0; i < vertices.size(); ++i) index_of[vertices[i]] = static_cast<int>(i);

    int counter = 0;
    struct Frame { int v; std::size_t arc; };
    for (std::size_t root = 0; root < vertices.size(); ++root) {
        if (idx[root] != -1) continue;
        std::vector<Frame> frames{{static_cast<int>(root), 0}};
        idx[root] = low[root] = counter++;
        stack.push_back(static_cast<int>(root));
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            int state = vertices[f.v];
            const auto& arcs = c.out[state];
            bool descended = false;
            while (f.arc < arcs.size()) {
                const Arc& arc = c.arcs[arcs[f.arc]];
                ++f.arc;
                auto it = index_of.find(arc.trg);
                if (it == index_of.end()) continue;
                int w = it->second;
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[f.v] = std::min(low[f.v], idx[w]);
            }
            if (descended) continue;
            if (low[f.v] == idx[f.v]) {
                std::vector<int> comp;
                while (true) {
                    int w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(vertices[w]);
                    if (w == f.v) break;
                }
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
            int child = f.v;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().v] = std::min(low[frames.back().v], low[child]);
        }
    }
    std::sort(components.begin(), components.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return components;
}

bool is_strongly_connected(const std::vector<int>& vertices,
                           const std::vector<Arc>& arcs) {
    if (vertices.empty()) return false;
    auto reach = [&](bool reversed) {
        std::map<int, std::vector<int>> adj;
        for (const Arc& arc : arcs)
            adj[reversed ? arc.trg : arc.src].push_back(reversed ? arc.src : arc.trg);
        std::map<int, bool> seen;
        std::deque<int> queue{vertices.front()};
        seen[vertices.front()] = true;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[v])
                if (!seen[w]) { seen[w] = true; queue.push_back(w); }
        }
        for (int v : vertices)
            if (!seen[v]) return false;
        return true;
    };
    return reach(false) && reach(true);
}

// Shifted weight of one visit to state s for player i: q_i w'_i(s) - p_i.
// A closed walk has mean >= z_i for all i iff all its shifted sums are >= 0.
std::vector<std::vector<std::int64_t>> shifted_weights(const PrunedGame& pg) {
    const Game& g = *pg.game;
    std::vector<std::vector<std::int64_t>> sw(g.num_players(),
                                              std::vector<std::int64_t>(g.num_states(), 0));
    for (int i = 0; i < g.num_players(); ++i) {
        Int p = numerator(pg.z[i]);
        Int q = denominator(pg.z[i]);
        for (int s = 0; s < g.num_states(); ++s) {
            Int v = q * g.weights[i][s] - p;
            if (v > std::numeric_limits<std::int64_t>::max() / 4 ||
                v < std::numeric_limits<std::int64_t>::min() / 4)
                throw ResourceLimitError("shifted weights exceed the supported range");
            sw[i][s] = static_cast<std::int64_t>(v);
        }
    }
    return sw;
}

// ---- bounded covering-tour search -----------------------------------------
//
// Over a fixed candidate support T (induced strongly connected), any lasso
// cycle through exactly T splits as one covering closed walk of length at
// most |T|^2 plus a circulation on T's arcs: excising closed subwalks that
// keep coverage intact shortens any witness below the bound, and gluing a
// circulation back onto a covering walk stays a single cycle.  The search
// therefore Pareto-tracks shifted-sum vectors of bounded covering walks
// anchored at T's smallest state; a small LP then decides whether some
// circulation makes all totals nonnegative.

struct TourEntry {
    std::vector<std::int64_t> sums;
    int vertex;        // local index
    unsigned mask;
    int parent;        // entry id, -1 for the seed
    int via_arc;       // local arc id taken to get here
    int length;
};

struct TourSearch {
    std::vector<TourEntry> entries;
    std::vector<std::vector<std::vector<int>>> pareto;  // [vertex][mask] -> entry ids
};

bool dominates(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

// All Pareto-maximal shifted-sum vectors of closed walks from local vertex 0
// covering T, of length <= |T|^2.
std::vector<int> covering_tours(TourSearch& ts, int t,
                                const std::vector<std::vector<std::pair<int, int>>>& out,
                                const std::vector<std::vector<std::int64_t>>& vertex_sw) {
    const int players = static_cast<int>(vertex_sw.size());
    const unsigned full = (t >= 32) ? 0 : ((1u << t) - 1);
    const int max_len = t * t;

    ts.entries.clear();
    ts.pareto.assign(t, std::vector<std::vector<int>>(full + 1));

    auto insert = [&](TourEntry e) -> int {
        auto& cell = ts.pareto[e.vertex][e.mask];
        for (int id : cell)
            if (dominates(ts.entries[id].sums, e.sums)) return -1;
        std::erase_if(cell, [&](int id) {
            return dominates(e.sums, ts.entries[id].sums) &&
                   !dominates(ts.entries[id].sums, e.sums);
        });
        int id = static_cast<int>(ts.entries.size());
        ts.entries.push_back(std::move(e));
        cell.push_back(id);
        return id;
    };

    std::vector<int> frontier;
    // Seed: the empty walk at the anchor; kept out of the Pareto cells so a
    // genuine closed walk is never shadowed by it.
    TourEntry seed{std::vector<std::int64_t>(players, 0), 0, 1u, -1, -1, 0};
    ts.entries.push_back(seed);
    frontier.push_back(0);

    for (int stage = 1; stage <= max_len && !frontier.empty(); ++stage) {
        std::vector<int> next;
        for (int id : frontier) {
            TourEntry cur = ts.entries[id];  // copy: entries may reallocate
            for (const auto& [w, arc] : out[cur.vertex]) {
                TourEntry e;
                e.sums = cur.sums;
                for (int i = 0; i < players; ++i) e.sums[i] += vertex_sw[i][cur.vertex];
                e.vertex = w;
                e.mask = cur.mask | (1u << w);
                e.parent = id;
                e.via_arc = arc;
                e.length = cur.length + 1;
                int nid = insert(std::move(e));
                if (nid >= 0) next.push_back(nid);
            }
        }
        frontier = std::move(next);
    }
    // Acceptors: closed at the anchor with full coverage.
    std::vector<int> result = ts.pareto[0][full];
    std::erase_if(result, [&](int id) { return ts.entries[id].length == 0; });
    std::sort(result.begin(), result.end(), [&](int x, int y) {
        return ts.entries[x].sums > ts.entries[y].sums ||
               (ts.entries[x].sums == ts.entries[y].sums && x < y);
    });
    return result;
}

// ---- witness assembly ------------------------------------------------------

// Shortest path of retained moves; returns the states strictly before `to`
// (the result plus its moves form a lasso prefix opening a cycle at `to`).
std::vector<int> bfs_path(const Collapsed& c, int from, int to,
                          std::vector<int>& moves_out) {
    std::vector<int> parent(c.out.size(), -2);
    std::vector<int> via(c.out.size(), -1);
    std::deque<int> queue{from};
    parent[from] = -1;
    while (!queue.empty() && parent[to] == -2) {
        int v = queue.front();
        queue.pop_front();
        for (int arc_id : c.out[v]) {
            const Arc& arc = c.arcs[arc_id];
            if (parent[arc.trg] == -2) {
                parent[arc.trg] = v;
                via[arc.trg] = arc_id;
                queue.push_back(arc.trg);
            }
        }
    }
    if (parent[to] == -2)
        throw Error("internal: lasso anchor not reachable from the initial state");
    std::vector<int> states;
    std::vector<int> moves;
    for (int v = to; v != from; v = parent[v]) {
        moves.push_back(c.arcs[via[v]].profile);
        states.push_back(parent[v]);
    }
    std::reverse(states.begin(), states.end());
    std::reverse(moves.begin(), moves.end());
    moves_out = std::move(moves);
    return states;
}

std::optional<LassoPath> assemble_witness(
        const PrunedGame& pg, const Collapsed& collapsed,
        const std::vector<Arc>& local_arcs, const std::vector<int>& vertex_states,
        const std::vector<Int>& arc_counts, const PathQuery& q) {
    const Game& g = *pg.game;

    Int total_len = std::accumulate(arc_counts.begin(), arc_counts.end(), Int(0));
    if (total_len > 1'000'000)
        throw ResourceLimitError("witness cycle would need " + total_len.str() + " steps");

    // Pick the cycle entry point closest to the initial state.
    std::vector<int> dist(g.num_states(), -1);
    std::deque<int> queue{g.arena.initial};
    dist[g.arena.initial] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int arc_id : collapsed.out[v]) {
            const Arc& arc = collapsed.arcs[arc_id];
            if (dist[arc.trg] == -1) {
                dist[arc.trg] = dist[v] + 1;
                queue.push_back(arc.trg);
            }
        }
    }
    int start = -1;
    for (std::size_t v = 0; v < vertex_states.size(); ++v) {
        bool touched = false;
        for (std::size_t e = 0; e < local_arcs.size(); ++e)
            if (arc_counts[e] > 0 &&
                (local_arcs[e].src == vertex_states[v] || local_arcs[e].trg == vertex_states[v]))
                touched = true;
        if (!touched) continue;
        int s = vertex_states[v];
        if (dist[s] < 0) continue;
        if (start < 0 || dist[s] < dist[start] || (dist[s] == dist[start] && s < start))
            start = s;
    }
    if (start < 0)
        throw Error("internal: no reachable start vertex on the witness cycle");

    // Hierholzer over the integer multigraph: conservation plus connected
    // support make an Eulerian circuit through every counted copy.
    std::map<int, std::vector<std::pair<int, Int>>> remaining;  // src -> (arc, count)
    for (std::size_t e = 0; e < local_arcs.size(); ++e)
        if (arc_counts[e] > 0)
            remaining[local_arcs[e].src].emplace_back(static_cast<int>(e), arc_counts[e]);

    std::vector<int> circuit;  // arc ids in walk order
    std::vector<std::pair<int, int>> stack{{start, -1}};  // (vertex, arc taken into it)
    while (!stack.empty()) {
        int v = stack.back().first;
        int chosen = -1;
        for (auto& [arc_id, count] : remaining[v]) {
            if (count == 0) continue;
            --count;
            chosen = arc_id;
            break;
        }
        if (chosen >= 0) {
            stack.push_back({local_arcs[chosen].trg, chosen});
        } else {
            if (stack.back().second >= 0) circuit.push_back(stack.back().second);
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());

    LassoPath path;
    for (int arc_id : circuit) {
        path.cycle.push_back(local_arcs[arc_id].src);
        path.cycle_moves.push_back(local_arcs[arc_id].profile);
    }

    std::vector<int> prefix_moves;
    std::vector<int> prefix = bfs_path(collapsed, g.arena.initial, start, prefix_moves);
    path.prefix = std::move(prefix);
    path.prefix_moves = std::move(prefix_moves);

    validate_lasso(g, path);

    // The construction guarantees the contract; re-check it all the same.
    for (int i = 0; i < g.num_players(); ++i)
        if (mean_payoff(path, g, i) < pg.z[i])
            throw Error("internal: witness payoff below z");
    StateSet on_cycle = cycle_state_set(g, path);
    for (const auto& v : q.visit) {
        bool met = false;
        for (int s = 0; s < g.num_states(); ++s)
            if (v[s] && on_cycle[s]) met = true;
        if (!met) throw Error("internal: witness misses a visit set");
    }
    if (!q.avoid.empty())
        for (int s = 0; s < g.num_states(); ++s)
            if (q.avoid[s] && on_cycle[s] &&
                (q.mode == PathQuery::Mode::Avoid || q.mode == PathQuery::Mode::NegGr1))
                throw Error("internal: witness enters the avoid set");

    return path;
}

} // namespace

std::optional<LassoPath> check_path_exists(const PrunedGame& pg, const PathQuery& q,
                                           PathSearchStats* stats,
                                           const LpDumpFn& dump,
                                           std::int64_t pivot_cap) {
    const Game& g = *pg.game;
    const Arena& a = g.arena;
    if (pg.empty()) return std::nullopt;

    const bool avoiding = q.mode == PathQuery::Mode::Avoid || q.mode == PathQuery::Mode::NegGr1;
    Collapsed collapsed = collapse(pg);
    std::vector<std::vector<std::int64_t>> sw = shifted_weights(pg);

    std::vector<int> retained;
    for (int s = 0; s < a.num_states(); ++s)
        if (pg.state_retained[s]) retained.push_back(s);

    PathSearchStats local_stats;
    PathSearchStats& st = stats ? *stats : local_stats;

    for (const auto& component : strongly_connected_components(collapsed, retained)) {
        // Candidate supports live inside one component, outside the avoid set.
        std::vector<int> pool;
        for (int s : component)
            if (!avoiding || !q.avoid[s]) pool.push_back(s);
        if (pool.empty()) continue;
        bool sets_ok = true;
        for (const auto& v : q.visit) {
            bool meets = false;
            for (int s : pool)
                if (v[s]) meets = true;
            if (!meets) sets_ok = false;
        }
        if (!sets_ok) continue;

        // Component-level LP: a sound relaxation that prunes the subset scan.
        {
            StateSet in_comp(a.num_states(), false);
            for (int s : component) in_comp[s] = true;
            std::vector<FlowEdge> edges;
            for (int s : component)
                for (int code = 0; code < a.profile_count(s); ++code)
                    if (pg.edge_retained[s][code] && in_comp[a.successor(s, code)])
                        edges.push_back({s, code, a.successor(s, code)});
            if (edges.empty()) continue;
            FlowLp lp = build_base_lp(pg, edges);
            if (avoiding) lp = add_avoid_constraint(std::move(lp), q.avoid);
            if (!q.visit.empty()) lp = add_visit_constraints(std::move(lp), q.visit);
            if (dump) dump(lp);
            ++st.lps_solved;
            if (!lp_feasible(lp, pivot_cap)) continue;
        }

        if (pool.size() > 18)
            throw ResourceLimitError("cycle-support search over " +
                                     std::to_string(pool.size()) +
                                     " states is above the supported size");

        for (unsigned mask = 1; mask < (1u << pool.size()); ++mask) {
            std::vector<int> support;
            for (std::size_t j = 0; j < pool.size(); ++j)
                if (mask & (1u << j)) support.push_back(pool[j]);

            bool ok = true;
            for (const auto& v : q.visit) {
                bool meets = false;
                for (int s : support)
                    if (v[s]) meets = true;
                if (!meets) { ok = false; break; }
            }
            if (!ok) continue;

            // No player may see only negative shifted weights on the support.
            for (int i = 0; i < g.num_players() && ok; ++i) {
                bool nonneg = false;
                for (int s : support)
                    if (sw[i][s] >= 0) nonneg = true;
                if (!nonneg) ok = false;
            }
            if (!ok) continue;

            std::vector<int> local_of(a.num_states(), -1);
            for (std::size_t j = 0; j < support.size(); ++j) local_of[support[j]] = static_cast<int>(j);
            std::vector<Arc> local_arcs;
            std::vector<std::vector<std::pair<int, int>>> out(support.size());
            for (int s : support)
                for (int arc_id : collapsed.out[s]) {
                    const Arc& arc = collapsed.arcs[arc_id];
                    if (local_of[arc.trg] < 0) continue;
                    out[local_of[arc.src]].emplace_back(local_of[arc.trg],
                                                        static_cast<int>(local_arcs.size()));
                    local_arcs.push_back(arc);
                }

            bool has_out = true;
            for (const auto& o : out)
                if (o.empty()) has_out = false;
            if (!has_out || !is_strongly_connected(support, local_arcs)) continue;

            ++st.supports_tried;

            std::vector<std::vector<std::int64_t>> vertex_sw(
                g.num_players(), std::vector<std::int64_t>(support.size()));
            for (int i = 0; i < g.num_players(); ++i)
                for (std::size_t j = 0; j < support.size(); ++j)
                    vertex_sw[i][j] = sw[i][support[j]];

            TourSearch ts;
            std::vector<int> tours = covering_tours(ts, static_cast<int>(support.size()),
                                                    out, vertex_sw);

            for (int tour_id : tours) {
                // sums(tour) + sums(circulation) >= 0, per player.
                FlowLp lp;
                lp.num_vars = static_cast<int>(local_arcs.size());
                lp.var_src.resize(lp.num_vars);
                lp.var_names.resize(lp.num_vars);
                for (int e = 0; e < lp.num_vars; ++e) {
                    lp.var_src[e] = local_arcs[e].src;
                    lp.var_names[e] = "d(" + a.states[local_arcs[e].src] + "->" +
                                      a.states[local_arcs[e].trg] + ")";
                }
                for (std::size_t j = 0; j < support.size(); ++j) {
                    FlowLp::Row row{std::vector<Rational>(lp.num_vars, 0),
                                    FlowLp::Rel::Eq, 0, "Eq5"};
                    for (int e = 0; e < lp.num_vars; ++e) {
                        if (local_arcs[e].src == support[j]) row.coeff[e] += 1;
                        if (local_arcs[e].trg == support[j]) row.coeff[e] -= 1;
                    }
                    lp.rows.push_back(std::move(row));
                }
                for (int i = 0; i < g.num_players(); ++i) {
                    FlowLp::Row row{std::vector<Rational>(lp.num_vars, 0),
                                    FlowLp::Rel::Ge,
                                    Rational(-ts.entries[tour_id].sums[i]),
                                    "Eq3[" + a.players[i] + "]"};
                    for (int e = 0; e < lp.num_vars; ++e)
                        row.coeff[e] = Rational(sw[i][local_arcs[e].src]);
                    lp.rows.push_back(std::move(row));
                }
                if (dump) dump(lp);
                ++st.lps_solved;
                auto sol = lp_feasible(lp, pivot_cap);
                if (!sol) continue;

                // Integer witness: lambda copies of the tour plus the scaled
                // circulation.
                Int lambda = 1;
                for (const auto& x : sol->x)
                    lambda = boost::multiprecision::lcm(lambda, denominator(x));
                std::vector<Int> counts(local_arcs.size(), 0);
                for (int id = tour_id; ts.entries[id].parent >= 0; id = ts.entries[id].parent)
                    counts[ts.entries[id].via_arc] += lambda;
                for (std::size_t e = 0; e < counts.size(); ++e)
                    counts[e] += numerator(Rational(sol->x[e] * lambda));

                return assemble_witness(pg, collapsed, local_arcs, support, counts, q);
            }
        }
    }
    return std::nullopt;
}

} // namespace eqdesign
