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

#ifndef EQDESIGN_SCHEMES_HPP
#define EQDESIGN_SCHEMES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <eqdesign/game.hpp>
#include <eqdesign/rational.hpp>

namespace eqdesign {

/** Number of subsidy schemes of cost at most budget over m cells:
 *  ((budget+1)/m) * C(budget+m, budget+1), computed exactly. */
Int count_schemes(std::int64_t m, std::int64_t budget);

constexpr std::int64_t kDefaultSchemeCap = 10'000'000;

/**
 * Streams every scheme with cost <= budget exactly once: nondecreasing
 * cost, ascending lexicographic within equal cost over the canonical
 * (player, state) cell order (player-major).
 *
 * Construction throws ResourceLimitError when the total count exceeds
 * the cap.
 */
class SchemeEnumerator {
public:
    SchemeEnumerator(const Game& g, std::int64_t budget,
                     std::int64_t cap = kDefaultSchemeCap);

    std::optional<SubsidyScheme> next();

    /** Restricts the stream to schemes of cost exactly `cost`. */
    void seek_cost(std::int64_t cost);
    void restrict_to_exact_cost(bool on) { exact_cost_only_ = on; }

    Int total_count() const { return total_; }

private:
    SubsidyScheme make_scheme() const;
    bool advance_composition();

    int players_ = 0;
    int states_ = 0;
    std::int64_t budget_ = 0;
    std::int64_t cost_ = 0;
    bool exact_cost_only_ = false;
    bool done_ = false;
    bool fresh_cost_ = true;
    std::vector<std::int64_t> cells_;
    Int total_;
};

/** Collects the full stream; intended for desk-scale tests. */
std::vector<SubsidyScheme> enumerate_schemes(const Game& g, std::int64_t budget,
                                             std::int64_t cap = kDefaultSchemeCap);

} // namespace eqdesign

#endif
