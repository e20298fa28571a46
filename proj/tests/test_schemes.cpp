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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include <eqdesign/errors.hpp>
#include <eqdesign/schemes.hpp>

#include "fixtures.hpp"

using namespace eqdesign;

namespace {

// Independent reference: recursive weak-composition enumeration.
void compositions(int m, std::int64_t total, std::vector<std::int64_t>& cur,
                  std::set<std::vector<std::int64_t>>& out) {
    if (static_cast<int>(cur.size()) == m - 1) {
        cur.push_back(total);
        out.insert(cur);
        cur.pop_back();
        return;
    }
    for (std::int64_t v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions(m, total - v, cur, out);
        cur.pop_back();
    }
}

Int count_by_enumeration(int m, std::int64_t budget) {
    Int total = 0;
    for (std::int64_t b = 0; b <= budget; ++b) {
        std::set<std::vector<std::int64_t>> out;
        std::vector<std::int64_t> cur;
        compositions(m, b, cur, out);
        total += static_cast<std::int64_t>(out.size());
    }
    return total;
}

std::vector<std::int64_t> flatten(const SubsidyScheme& k) {
    std::vector<std::int64_t> cells;
    for (const auto& row : k.subsidy)
        cells.insert(cells.end(), row.begin(), row.end());
    return cells;
}

} // namespace

TEST_CASE("closed-form counts") {
    CHECK(count_schemes(1, 0) == 1);
    CHECK(count_schemes(2, 1) == 3);
    CHECK(count_schemes(6, 2) == 28);   // 1 + 6 + 21
    CHECK(count_schemes(3, 2) == 10);   // 1 + 3 + 6
}

TEST_CASE("count matches exhaustive weak-composition enumeration") {
    for (int m = 1; m <= 8; ++m)
        for (std::int64_t b = 0; b <= 5; ++b)
            CHECK(count_schemes(m, b) == count_by_enumeration(m, b));
}

TEST_CASE("enumeration order and exactness") {
    Game g = tests::g1();  // one player, three states -> 3 cells

    SUBCASE("single cell streams 0..budget") {
        Game one = tests::loop_game();
        auto all = enumerate_schemes(one, 3);
        REQUIRE(all.size() == 4);
        for (std::int64_t v = 0; v <= 3; ++v)
            CHECK(all[static_cast<std::size_t>(v)].subsidy[0][0] == v);
    }

    SUBCASE("nondecreasing cost, lexicographic within a cost") {
        auto all = enumerate_schemes(g, 2);
        CHECK(Int(static_cast<std::int64_t>(all.size())) == count_schemes(3, 2));
        std::int64_t last_cost = 0;
        std::vector<std::int64_t> last_cells;
        std::set<std::vector<std::int64_t>> seen;
        for (const auto& k : all) {
            std::int64_t cost = scheme_cost(k);
            CHECK(cost >= last_cost);
            CHECK(cost <= 2);
            auto cells = flatten(k);
            if (cost == last_cost && !last_cells.empty())
                CHECK(last_cells < cells);
            CHECK(seen.insert(cells).second);  // exactly once
            last_cost = cost;
            last_cells = cells;
        }
    }

    SUBCASE("stream length matches the counting formula across sizes") {
        for (std::int64_t budget = 0; budget <= 3; ++budget) {
            auto all = enumerate_schemes(g, budget);
            CHECK(Int(static_cast<std::int64_t>(all.size())) == count_schemes(3, budget));
        }
    }

    SUBCASE("every streamed scheme respects the budget") {
        for (const auto& k : enumerate_schemes(g, 3))
            CHECK(scheme_cost(k) <= 3);
    }
}

TEST_CASE("exact-cost restriction") {
    Game g = tests::g1();
    SchemeEnumerator en(g, 2);
    en.seek_cost(2);
    en.restrict_to_exact_cost(true);
    int n = 0;
    while (auto k = en.next()) {
        CHECK(scheme_cost(*k) == 2);
        ++n;
    }
    CHECK(n == 6);  // compositions of 2 into 3 parts
}

TEST_CASE("cap exceeded raises a resource-limit error") {
    Game g = tests::g1();
    CHECK_THROWS_AS(SchemeEnumerator(g, 100, 10), ResourceLimitError);
}
