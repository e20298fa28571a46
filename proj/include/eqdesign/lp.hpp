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

#ifndef EQDESIGN_LP_HPP
#define EQDESIGN_LP_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <eqdesign/game.hpp>
#include <eqdesign/mpg.hpp>
#include <eqdesign/rational.hpp>

namespace eqdesign {

/** A retained transition of a pruned game, viewed as a flow edge. */
struct FlowEdge {
    int src;
    int profile;
    int trg;
};

/**
 * Linear constraint system over one variable x_e per edge, all variables
 * implicitly nonnegative (family Eq1).  Families are tagged for audit:
 *   Eq1  x_e >= 0
 *   Eq2  sum x_e >= 1
 *   Eq3  per player, shifted-weight total nonnegative
 *   Eq4  visit (>= 1) / avoid (= 0) rows over V-sets
 *   Eq5  flow conservation per vertex
 */
struct FlowLp {
    enum class Rel { Ge, Eq };

    struct Row {
        std::vector<Rational> coeff;
        Rel rel;
        Rational rhs;
        std::string family;
    };

    int num_vars = 0;
    std::vector<int> var_src;       // source state per edge variable
    std::vector<std::string> var_names;
    std::vector<Row> rows;
};

struct FlowSolution {
    std::vector<Rational> x;
};

/** Flattened retained edge list of a pruned game, in deterministic order. */
std::vector<FlowEdge> pruned_edges(const PrunedGame& pg);

/**
 * Eq1 + Eq2 + Eq3 + Eq5 over the given edges.  Eq3 uses integer
 * coefficients q_i * w'_i(src(e)) - p_i with z_i = p_i / q_i, so the row
 * says exactly "mean >= z_i" for the flow's cycle.
 */
FlowLp build_base_lp(const PrunedGame& pg, const std::vector<FlowEdge>& edges);
FlowLp build_base_lp(const PrunedGame& pg);

/** Appends the Eq4 row: no flow leaves a state of V. */
FlowLp add_avoid_constraint(FlowLp lp, const StateSet& V);

/** Appends one Eq4 row per set: each V_r carries at least one unit. */
FlowLp add_visit_constraints(FlowLp lp, const std::vector<StateSet>& Vs);

constexpr std::int64_t kDefaultPivotCap = 200'000;

/**
 * Exact feasibility via phase-one simplex with Bland's rule; returns a
 * witness point when the system has one.  Throws ResourceLimitError past
 * the pivot cap.
 */
std::optional<FlowSolution> lp_feasible(const FlowLp& lp,
                                        std::int64_t pivot_cap = kDefaultPivotCap);

/** One constraint per line: coefficients, relation, constant. */
void dump_lp(const FlowLp& lp, std::ostream& os);

} // namespace eqdesign

#endif
