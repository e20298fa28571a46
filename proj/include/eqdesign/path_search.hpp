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

#ifndef EQDESIGN_PATH_SEARCH_HPP
#define EQDESIGN_PATH_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <eqdesign/game.hpp>
#include <eqdesign/lp.hpp>
#include <eqdesign/mpg.hpp>

namespace eqdesign {

/**
 * What the wanted lasso's cycle must do, on top of pay_i >= z_i:
 *   VisitAll  every set in `visit` meets the cycle (theta route; an empty
 *             list degenerates to NeOnly)
 *   Avoid     the cycle misses `avoid` (finite-psi route)
 *   NeOnly    nothing extra
 *   NegGr1    every psi set in `visit` meets the cycle and the chosen
 *             theta set (`avoid`, index theta_index) misses it
 */
struct PathQuery {
    enum class Mode { VisitAll, Avoid, NeOnly, NegGr1 };

    Mode mode = Mode::NeOnly;
    std::vector<StateSet> visit;
    StateSet avoid;
    int theta_index = -1;

    static PathQuery visit_all(std::vector<StateSet> sets);
    static PathQuery avoid_set(StateSet set);
    static PathQuery ne_only();
    static PathQuery neg_gr1(std::vector<StateSet> psi_sets, StateSet theta_set,
                             int index);
};

struct PathSearchStats {
    std::int64_t lps_solved = 0;
    std::int64_t supports_tried = 0;
};

using LpDumpFn = std::function<void(const FlowLp&)>;

/**
 * Decides whether the pruned game contains a lasso from the initial state
 * whose payoffs dominate z and whose cycle satisfies the query; returns a
 * validated witness when one exists.
 *
 * The search runs per reachable SCC.  A feasible flow alone is not enough:
 * a solution can split into disconnected cycles no single lasso realises,
 * so candidate cycle supports (induced strongly connected state subsets)
 * are enumerated; for each, a bounded covering-tour search plus a
 * circulation LP decides exactly whether one closed walk with the required
 * means exists through exactly those states.
 */
std::optional<LassoPath> check_path_exists(const PrunedGame& pg, const PathQuery& q,
                                           PathSearchStats* stats = nullptr,
                                           const LpDumpFn& dump = nullptr,
                                           std::int64_t pivot_cap = kDefaultPivotCap);

} // namespace eqdesign

#endif
