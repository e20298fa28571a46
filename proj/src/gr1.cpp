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

#include <eqdesign/gr1.hpp>

#include <cctype>
#include <sstream>

#include <eqdesign/errors.hpp>

namespace eqdesign {

BoolExpr BoolExpr::make_not(BoolExpr e) {
    BoolExpr out{Kind::Not, {}, {}};
    out.children.push_back(std::move(e));
    return out;
}

BoolExpr BoolExpr::make_and(BoolExpr l, BoolExpr r) {
    BoolExpr out{Kind::And, {}, {}};
    out.children.push_back(std::move(l));
    out.children.push_back(std::move(r));
    return out;
}

BoolExpr BoolExpr::make_or(BoolExpr l, BoolExpr r) {
    BoolExpr out{Kind::Or, {}, {}};
    out.children.push_back(std::move(l));
    out.children.push_back(std::move(r));
    return out;
}

namespace {

struct Token {
    enum class Kind { Ident, GF, True, False, Not, And, Or, LParen, RParen, Arrow, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) {
        std::size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
            std::size_t start = i;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                    ++j;
                std::string word = text.substr(i, j - i);
                Token::Kind k = Token::Kind::Ident;
                if (word == "GF") k = Token::Kind::GF;
                else if (word == "true") k = Token::Kind::True;
                else if (word == "false") k = Token::Kind::False;
                tokens_.push_back({k, word, start});
                i = j;
            } else if (c == '!') {
                tokens_.push_back({Token::Kind::Not, "!", start}); ++i;
            } else if (c == '&') {
                tokens_.push_back({Token::Kind::And, "&", start}); ++i;
            } else if (c == '|') {
                tokens_.push_back({Token::Kind::Or, "|", start}); ++i;
            } else if (c == '(') {
                tokens_.push_back({Token::Kind::LParen, "(", start}); ++i;
            } else if (c == ')') {
                tokens_.push_back({Token::Kind::RParen, ")", start}); ++i;
            } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
                tokens_.push_back({Token::Kind::Arrow, "->", start}); i += 2;
            } else {
                throw SyntaxError(std::string("unexpected character '") + c + "'", start);
            }
        }
        tokens_.push_back({Token::Kind::End, "", text.size()});
    }

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t j = cursor_ + ahead;
        if (j >= tokens_.size()) j = tokens_.size() - 1;
        return tokens_[j];
    }
    Token take() { return tokens_[std::min(cursor_++, tokens_.size() - 1)]; }
    bool at(Token::Kind k) const { return peek().kind == k; }

private:
    std::vector<Token> tokens_;
    std::size_t cursor_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    // Inside a GF argument a top-level '&' followed by GF belongs to the
    // GF list, not to the Boolean combination.
    BoolExpr parse_expr(bool gf_context) {
        BoolExpr left = parse_term(gf_context);
        while (lex_.at(Token::Kind::Or)) {
            lex_.take();
            BoolExpr right = parse_term(gf_context);
            left = BoolExpr::make_or(std::move(left), std::move(right));
        }
        return left;
    }

    BoolExpr parse_term(bool gf_context) {
        BoolExpr left = parse_factor();
        while (lex_.at(Token::Kind::And)) {
            if (gf_context && lex_.peek(1).kind == Token::Kind::GF) break;
            lex_.take();
            BoolExpr right = parse_factor();
            left = BoolExpr::make_and(std::move(left), std::move(right));
        }
        return left;
    }

    BoolExpr parse_factor() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Token::Kind::Not:
            lex_.take();
            return BoolExpr::make_not(parse_factor());
        case Token::Kind::LParen: {
            lex_.take();
            BoolExpr inner = parse_expr(false);
            expect(Token::Kind::RParen, "expected ')'");
            return inner;
        }
        case Token::Kind::Ident:
            return BoolExpr::make_atom(lex_.take().text);
        case Token::Kind::True:
            lex_.take();
            return BoolExpr::make_true();
        case Token::Kind::False:
            lex_.take();
            return BoolExpr::make_false();
        case Token::Kind::GF:
            throw SyntaxError("nested temporal operator: GF may not appear "
                              "inside a Boolean combination", t.pos);
        default:
            throw SyntaxError("expected a Boolean combination, found '" + t.text + "'", t.pos);
        }
    }

    // side := 'true' | GF <bool> ('&' GF <bool>)*
    std::vector<BoolExpr> parse_side() {
        std::vector<BoolExpr> out;
        if (lex_.at(Token::Kind::True) &&
            (lex_.peek(1).kind == Token::Kind::Arrow || lex_.peek(1).kind == Token::Kind::End)) {
            lex_.take();
            return out;  // empty conjunction
        }
        expect(Token::Kind::GF, "expected 'GF' or 'true'");
        out.push_back(parse_expr(true));
        while (lex_.at(Token::Kind::And)) {
            lex_.take();
            expect(Token::Kind::GF, "expected 'GF' after '&'");
            out.push_back(parse_expr(true));
        }
        return out;
    }

    Gr1Formula parse_formula() {
        Gr1Formula f;
        std::vector<BoolExpr> first = parse_side();
        if (lex_.at(Token::Kind::Arrow)) {
            lex_.take();
            f.antecedents = std::move(first);
            f.consequents = parse_side();
        } else {
            f.consequents = std::move(first);  // "GF p" means true -> GF p
        }
        expect(Token::Kind::End, "trailing input after formula");
        return f;
    }

    BoolExpr parse_bool_only() {
        BoolExpr e = parse_expr(false);
        expect(Token::Kind::End, "trailing input after Boolean combination");
        return e;
    }

private:
    void expect(Token::Kind k, const char* message) {
        const Token& t = lex_.peek();
        if (t.kind != k)
            throw SyntaxError(std::string(message) + ", found '" +
                              (t.kind == Token::Kind::End ? "<end>" : t.text) + "'", t.pos);
        lex_.take();
    }

    Lexer lex_;
};

} // namespace

BoolExpr parse_bool(const std::string& text) {
    return Parser(text).parse_bool_only();
}

Gr1Formula parse_formula(const std::string& text) {
    return Parser(text).parse_formula();
}

void collect_atoms(const BoolExpr& e, std::set<std::string>& out) {
    if (e.kind == BoolExpr::Kind::Atom) out.insert(e.atom);
    for (const auto& c : e.children) collect_atoms(c, out);
}

std::set<std::string> formula_atoms(const Gr1Formula& f) {
    std::set<std::string> out;
    for (const auto& e : f.antecedents) collect_atoms(e, out);
    for (const auto& e : f.consequents) collect_atoms(e, out);
    return out;
}

bool eval_bool(const BoolExpr& e, const Game& g, int state) {
    switch (e.kind) {
    case BoolExpr::Kind::True: return true;
    case BoolExpr::Kind::False: return false;
    case BoolExpr::Kind::Atom: {
        int atom = g.arena.atom_index(e.atom);
        if (atom < 0)
            throw SemanticError("unknown proposition '" + e.atom + "'");
        return g.arena.state_has_atom(state, atom);
    }
    case BoolExpr::Kind::Not: return !eval_bool(e.children[0], g, state);
    case BoolExpr::Kind::And: return eval_bool(e.children[0], g, state) &&
                                     eval_bool(e.children[1], g, state);
    case BoolExpr::Kind::Or: return eval_bool(e.children[0], g, state) ||
                                    eval_bool(e.children[1], g, state);
    }
    return false;
}

StateSet satisfying_states(const Game& g, const BoolExpr& c) {
    std::set<std::string> atoms;
    collect_atoms(c, atoms);
    for (const auto& atom : atoms)
        if (g.arena.atom_index(atom) < 0)
            throw SemanticError("unknown proposition '" + atom + "'");
    StateSet out(g.num_states(), false);
    for (int s = 0; s < g.num_states(); ++s)
        out[s] = eval_bool(c, g, s);
    return out;
}

bool eval_on_lasso(const Gr1Formula& f, const Game& g, const LassoPath& path) {
    StateSet on_cycle = cycle_state_set(g, path);
    auto meets_cycle = [&](const BoolExpr& e) {
        StateSet v = satisfying_states(g, e);
        for (int s = 0; s < g.num_states(); ++s)
            if (v[s] && on_cycle[s]) return true;
        return false;
    };
    for (const auto& psi : f.antecedents)
        if (!meets_cycle(psi)) return true;   // some psi seen finitely often
    for (const auto& theta : f.consequents)
        if (!meets_cycle(theta)) return false;
    return true;
}

std::string to_string(const BoolExpr& e) {
    switch (e.kind) {
    case BoolExpr::Kind::True: return "true";
    case BoolExpr::Kind::False: return "false";
    case BoolExpr::Kind::Atom: return e.atom;
    case BoolExpr::Kind::Not: return "!" + to_string(e.children[0]);
    case BoolExpr::Kind::And:
        return "(" + to_string(e.children[0]) + " & " + to_string(e.children[1]) + ")";
    case BoolExpr::Kind::Or:
        return "(" + to_string(e.children[0]) + " | " + to_string(e.children[1]) + ")";
    }
    return "?";
}

std::string to_string(const Gr1Formula& f) {
    std::ostringstream os;
    if (f.antecedents.empty()) {
        os << "true";
    } else {
        for (std::size_t l = 0; l < f.antecedents.size(); ++l) {
            if (l) os << " & ";
            os << "GF " << to_string(f.antecedents[l]);
        }
    }
    os << " -> ";
    if (f.consequents.empty()) {
        os << "true";
    } else {
        for (std::size_t r = 0; r < f.consequents.size(); ++r) {
            if (r) os << " & ";
            os << "GF " << to_string(f.consequents[r]);
        }
    }
    return os.str();
}

} // namespace eqdesign
