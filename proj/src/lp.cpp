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

#include <eqdesign/lp.hpp>

#include <ostream>

#include <eqdesign/errors.hpp>

namespace eqdesign {

std::vector<FlowEdge> pruned_edges(const PrunedGame& pg) {
    const Arena& a = pg.game->arena;
    std::vector<FlowEdge> edges;
    for (int s = 0; s < a.num_states(); ++s) {
        if (!pg.state_retained[s]) continue;
        for (int code = 0; code < a.profile_count(s); ++code)
            if (pg.edge_retained[s][code])
                edges.push_back({s, code, a.successor(s, code)});
    }
    return edges;
}

FlowLp build_base_lp(const PrunedGame& pg, const std::vector<FlowEdge>& edges) {
    const Game& g = *pg.game;
    const Arena& a = g.arena;
    const int ne = static_cast<int>(edges.size());

    FlowLp lp;
    lp.num_vars = ne;
    lp.var_src.resize(ne);
    lp.var_names.resize(ne);
    for (int e = 0; e < ne; ++e) {
        lp.var_src[e] = edges[e].src;
        lp.var_names[e] = "x(" + a.states[edges[e].src] + "," +
                          std::to_string(edges[e].profile) + "->" +
                          a.states[edges[e].trg] + ")";
    }

    // Eq1: x_e >= 0.
    for (int e = 0; e < ne; ++e) {
        FlowLp::Row row{std::vector<Rational>(ne, 0), FlowLp::Rel::Ge, 0, "Eq1"};
        row.coeff[e] = 1;
        lp.rows.push_back(std::move(row));
    }

    // Eq2: at least one edge is chosen.
    {
        FlowLp::Row row{std::vector<Rational>(ne, 1), FlowLp::Rel::Ge, 1, "Eq2"};
        lp.rows.push_back(std::move(row));
    }

    // Eq3 per player: q_i * w'_i(src(e)) - p_i, an integer shift of the
    // weights by z_i, must total nonnegative.
    for (int i = 0; i < g.num_players(); ++i) {
        Int p = numerator(pg.z[i]);
        Int q = denominator(pg.z[i]);
        FlowLp::Row row{std::vector<Rational>(ne, 0), FlowLp::Rel::Ge, 0,
                        "Eq3[" + a.players[i] + "]"};
        for (int e = 0; e < ne; ++e)
            row.coeff[e] = Rational(q * g.weights[i][edges[e].src] - p);
        lp.rows.push_back(std::move(row));
    }

    // Eq5: conservation at every vertex touched by an edge.
    for (int v = 0; v < a.num_states(); ++v) {
        if (!pg.state_retained[v]) continue;
        FlowLp::Row row{std::vector<Rational>(ne, 0), FlowLp::Rel::Eq, 0, "Eq5"};
        bool touched = false;
        for (int e = 0; e < ne; ++e) {
            Rational c = 0;
            if (edges[e].src == v) c += 1;
            if (edges[e].trg == v) c -= 1;
            if (c != 0) {
                row.coeff[e] = c;
                touched = true;
            }
        }
        if (touched) lp.rows.push_back(std::move(row));
    }
    return lp;
}

FlowLp build_base_lp(const PrunedGame& pg) {
    return build_base_lp(pg, pruned_edges(pg));
}

FlowLp add_avoid_constraint(FlowLp lp, const StateSet& V) {
    FlowLp::Row row{std::vector<Rational>(lp.num_vars, 0), FlowLp::Rel::Eq, 0, "Eq4"};
    for (int e = 0; e < lp.num_vars; ++e)
        if (V[lp.var_src[e]]) row.coeff[e] = 1;
    lp.rows.push_back(std::move(row));
    return lp;
}

FlowLp add_visit_constraints(FlowLp lp, const std::vector<StateSet>& Vs) {
    for (const auto& V : Vs) {
        FlowLp::Row row{std::vector<Rational>(lp.num_vars, 0), FlowLp::Rel::Ge, 1, "Eq4"};
        for (int e = 0; e < lp.num_vars; ++e)
            if (V[lp.var_src[e]]) row.coeff[e] = 1;
        lp.rows.push_back(std::move(row));
    }
    return lp;
}

namespace {

// Rows of the shape x_j >= 0 are already enforced by variable
// nonnegativity and would only bloat the tableau.
bool implied_by_nonnegativity(const FlowLp::Row& row) {
    if (row.rel != FlowLp::Rel::Ge || row.rhs != 0) return false;
    int nonzero = 0;
    for (const auto& c : row.coeff) {
        if (c < 0) return false;
        if (c != 0) ++nonzero;
    }
    return nonzero <= 1;
}

} // namespace

std::optional<FlowSolution> lp_feasible(const FlowLp& lp, std::int64_t pivot_cap) {
    std::vector<const FlowLp::Row*> rows;
    for (const auto& row : lp.rows)
        if (!implied_by_nonnegativity(row)) rows.push_back(&row);

    const int m = static_cast<int>(rows.size());
    const int nv = lp.num_vars;
    if (m == 0) return FlowSolution{std::vector<Rational>(nv, 0)};

    int surplus = 0;
    for (const auto* row : rows)
        if (row->rel == FlowLp::Rel::Ge) ++surplus;

    // Columns: original vars, surplus vars, artificials; phase-one simplex
    // minimising the artificial total, Bland's rule throughout.
    const int cols = nv + surplus + m;
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1, 0));
    std::vector<int> basis(m);

    int next_surplus = nv;
    for (int r = 0; r < m; ++r) {
        const FlowLp::Row& row = *rows[r];
        for (int j = 0; j < nv; ++j) T[r][j] = row.coeff[j];
        if (row.rel == FlowLp::Rel::Ge) T[r][next_surplus++] = -1;
        T[r][cols] = row.rhs;
        if (T[r][cols] < 0)
            for (auto& c : T[r]) c = -c;
        T[r][nv + surplus + r] = 1;
        basis[r] = nv + surplus + r;
    }

    // Reduced-cost row for the artificial objective.
    std::vector<Rational> obj(cols + 1, 0);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= cols; ++j)
            obj[j] -= T[r][j];
    for (int r = 0; r < m; ++r)
        obj[nv + surplus + r] += 1;  // cost 1 on artificials

    std::int64_t pivots = 0;
    while (true) {
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (obj[j] < 0) { enter = j; break; }
        }
        if (enter < 0) break;

        int leave = -1;
        Rational best_ratio;
        for (int r = 0; r < m; ++r) {
            if (T[r][enter] <= 0) continue;
            Rational ratio = T[r][cols] / T[r][enter];
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0)
            throw Error("internal: phase-one objective unbounded");

        if (++pivots > pivot_cap)
            throw ResourceLimitError("simplex exceeded the pivot cap of " +
                                     std::to_string(pivot_cap));

        Rational pivot = T[leave][enter];
        for (int j = 0; j <= cols; ++j) T[leave][j] /= pivot;
        for (int r = 0; r < m; ++r) {
            if (r == leave || T[r][enter] == 0) continue;
            Rational factor = T[r][enter];
            for (int j = 0; j <= cols; ++j) T[r][j] -= factor * T[leave][j];
        }
        if (obj[enter] != 0) {
            Rational factor = obj[enter];
            for (int j = 0; j <= cols; ++j) obj[j] -= factor * T[leave][j];
        }
        basis[leave] = enter;
    }

    Rational artificial_total = 0;
    for (int r = 0; r < m; ++r)
        if (basis[r] >= nv + surplus) artificial_total += T[r][cols];
    if (artificial_total != 0) return std::nullopt;

    FlowSolution sol;
    sol.x.assign(nv, 0);
    for (int r = 0; r < m; ++r)
        if (basis[r] < nv) sol.x[basis[r]] = T[r][cols];
    return sol;
}

void dump_lp(const FlowLp& lp, std::ostream& os) {
    os << "# vars:";
    for (const auto& name : lp.var_names) os << " " << name;
    os << "\n";
    for (const auto& row : lp.rows) {
        for (const auto& c : row.coeff) os << rational_to_string(c) << " ";
        os << (row.rel == FlowLp::Rel::Ge ? ">=" : "=") << " "
           << rational_to_string(row.rhs) << "  # " << row.family << "\n";
    }
}

} // namespace eqdesign
