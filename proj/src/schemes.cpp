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

#include <eqdesign/schemes.hpp>

#include <eqdesign/errors.hpp>

namespace eqdesign {

Int count_schemes(std::int64_t m, std::int64_t budget) {
    if (m < 1)
        throw SemanticError("count_schemes needs at least one (player, state) cell");
    if (budget < 0)
        throw SemanticError("budget must be nonnegative");
    // ((budget+1)/m) * C(budget+m, budget+1); the product is always divisible.
    Int binom = 1;
    for (std::int64_t j = 1; j <= m - 1; ++j) {
        binom *= budget + 1 + j;
        binom /= j;
    }
    Int total = binom * (budget + 1);
    // total = (budget+1) * C(budget+m, m-1); equal to the closed form above.
    if (total % m != 0)
        throw Error("internal: scheme count not divisible");
    return total / m;
}

SchemeEnumerator::SchemeEnumerator(const Game& g, std::int64_t budget,
                                   std::int64_t cap)
    : players_(g.num_players()),
      states_(g.num_states()),
      budget_(budget) {
    if (budget < 0)
        throw SemanticError("budget must be nonnegative");
    std::int64_t m = static_cast<std::int64_t>(players_) * states_;
    total_ = count_schemes(m, budget);
    if (total_ > cap)
        throw ResourceLimitError("scheme enumeration would produce " + total_.str() +
                                 " schemes, above the cap of " + std::to_string(cap));
    cells_.assign(m, 0);
}

SubsidyScheme SchemeEnumerator::make_scheme() const {
    SubsidyScheme k;
    k.subsidy.assign(players_, std::vector<std::int64_t>(states_, 0));
    for (int i = 0; i < players_; ++i)
        for (int s = 0; s < states_; ++s)
            k.subsidy[i][s] = cells_[static_cast<std::size_t>(i) * states_ + s];
    return k;
}

void SchemeEnumerator::seek_cost(std::int64_t cost) {
    cost_ = cost;
    done_ = cost_ > budget_;
    fresh_cost_ = true;
}

// Lexicographic successor among weak compositions of cost_: move one unit
// of the rightmost available suffix mass one cell to the left, dumping the
// remainder into the last cell.
bool SchemeEnumerator::advance_composition() {
    std::size_t m = cells_.size();
    std::int64_t suffix = 0;
    for (std::size_t p = m; p-- > 1;) {
        suffix += cells_[p];
        if (suffix > 0) {
            ++cells_[p - 1];
            for (std::size_t j = p; j < m; ++j) cells_[j] = 0;
            cells_[m - 1] = suffix - 1;
            return true;
        }
    }
    return false;
}

std::optional<SubsidyScheme> SchemeEnumerator::next() {
    while (!done_) {
        if (fresh_cost_) {
            fresh_cost_ = false;
            std::fill(cells_.begin(), cells_.end(), 0);
            cells_.back() = cost_;
            return make_scheme();
        }
        if (advance_composition())
            return make_scheme();
        if (exact_cost_only_ || cost_ >= budget_) {
            done_ = true;
            return std::nullopt;
        }
        ++cost_;
        fresh_cost_ = true;
    }
    return std::nullopt;
}

std::vector<SubsidyScheme> enumerate_schemes(const Game& g, std::int64_t budget,
                                             std::int64_t cap) {
    SchemeEnumerator en(g, budget, cap);
    std::vector<SubsidyScheme> out;
    while (auto k = en.next()) out.push_back(std::move(*k));
    return out;
}

} // namespace eqdesign
