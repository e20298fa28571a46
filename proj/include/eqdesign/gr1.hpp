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

#ifndef EQDESIGN_GR1_HPP
#define EQDESIGN_GR1_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include <eqdesign/game.hpp>

namespace eqdesign {

/** Propositional formula over atomic propositions. */
struct BoolExpr {
    enum class Kind { True, False, Atom, Not, And, Or };

    Kind kind = Kind::True;
    std::string atom;                  // Kind::Atom
    std::vector<BoolExpr> children;    // 1 for Not, 2 for And/Or

    static BoolExpr make_true() { return BoolExpr{Kind::True, {}, {}}; }
    static BoolExpr make_false() { return BoolExpr{Kind::False, {}, {}}; }
    static BoolExpr make_atom(std::string a) { return BoolExpr{Kind::Atom, std::move(a), {}}; }
    static BoolExpr make_not(BoolExpr e);
    static BoolExpr make_and(BoolExpr l, BoolExpr r);
    static BoolExpr make_or(BoolExpr l, BoolExpr r);
};

/**
 * (GF psi_1 & ... & GF psi_m) -> (GF theta_1 & ... & GF theta_n)
 * with every psi/theta a Boolean combination of atoms.  An empty side is
 * the empty conjunction, i.e. true.
 */
struct Gr1Formula {
    std::vector<BoolExpr> antecedents;  // psi
    std::vector<BoolExpr> consequents;  // theta
};

/** Parses a Boolean combination; precedence ! > & > |, parentheses allowed. */
BoolExpr parse_bool(const std::string& text);

/**
 * Parses `GF <bool> (& GF <bool>)* -> GF <bool> (& GF <bool>)*`.
 * Either side may be `true`; a missing antecedent side ("GF p") means the
 * antecedent is true.  Nested temporal operators are rejected.
 */
Gr1Formula parse_formula(const std::string& text);

void collect_atoms(const BoolExpr& e, std::set<std::string>& out);
std::set<std::string> formula_atoms(const Gr1Formula& f);

bool eval_bool(const BoolExpr& e, const Game& g, int state);

/** { s : label(s) |= c }.  Throws SemanticError on atoms outside the
 *  game's alphabet. */
StateSet satisfying_states(const Game& g, const BoolExpr& c);

/**
 * GF truth on a lasso is decided by the cycle alone: the formula holds
 * iff every V(theta_r) meets the cycle or some V(psi_l) misses it.
 */
bool eval_on_lasso(const Gr1Formula& f, const Game& g, const LassoPath& path);

std::string to_string(const BoolExpr& e);
std::string to_string(const Gr1Formula& f);

} // namespace eqdesign

#endif
