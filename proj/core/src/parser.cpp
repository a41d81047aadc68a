#include "bip/parser.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "bip/errors.hpp"

namespace bip {
namespace {

enum class Tok {
    Ident, Top, Bot, One, Em, Ea,
    And, Or, Star, Arrow, Wand,
    Comma, Semi, LParen, RParen, Turnstile,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t at, std::string text = {}) {
        out.push_back(Token{k, std::move(text), at});
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        std::size_t at = i;
        switch (c) {
        case '(': push(Tok::LParen, at); ++i; continue;
        case ')': push(Tok::RParen, at); ++i; continue;
        case ',': push(Tok::Comma, at); ++i; continue;
        case ';': push(Tok::Semi, at); ++i; continue;
        case '&': push(Tok::And, at); ++i; continue;
        case '*': push(Tok::Star, at); ++i; continue;
        case '|':
            if (i + 1 < src.size() && src[i + 1] == '-') { push(Tok::Turnstile, at); i += 2; }
            else { push(Tok::Or, at); ++i; }
            continue;
        case '-':
            if (i + 1 < src.size() && src[i + 1] == '>') { push(Tok::Arrow, at); i += 2; continue; }
            if (i + 1 < src.size() && src[i + 1] == '*') { push(Tok::Wand, at); i += 2; continue; }
            throw ParseError("unknown token at offset " + std::to_string(at), at);
        case '1': push(Tok::One, at); ++i; continue;
        default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
                ++j;
            std::string word(src.substr(i, j - i));
            i = j;
            if (word == "top") push(Tok::Top, at);
            else if (word == "bot") push(Tok::Bot, at);
            else if (word == "Em") push(Tok::Em, at);
            else if (word == "Ea") push(Tok::Ea, at);
            else push(Tok::Ident, at, std::move(word));
            continue;
        }
        throw ParseError("unknown token at offset " + std::to_string(at), at);
    }
    push(Tok::End, src.size());
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    FormulaPtr formula_entry() {
        FormulaPtr f = formula();
        expect_end();
        return f;
    }

    BunchPtr bunch_entry() {
        BunchPtr b = bunch();
        expect_end();
        return b;
    }

    RawSequent sequent_entry() {
        if (peek().kind == Tok::Turnstile)
            throw ParseError("empty antecedent at offset " + std::to_string(peek().offset) +
                                 " (write Em or Ea explicitly)",
                             peek().offset);
        BunchPtr ant = bunch();
        if (peek().kind != Tok::Turnstile)
            throw ParseError("missing turnstile at offset " + std::to_string(peek().offset),
                             peek().offset);
        ++pos_;
        FormulaPtr suc = formula();
        if (peek().kind == Tok::Turnstile)
            throw ParseError("duplicate turnstile at offset " + std::to_string(peek().offset),
                             peek().offset);
        expect_end();
        return RawSequent{std::move(ant), std::move(suc)};
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    void expect_end() {
        if (peek().kind != Tok::End)
            throw ParseError("unexpected token at offset " + std::to_string(peek().offset),
                             peek().offset);
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at offset " + std::to_string(peek().offset), peek().offset);
    }

    void expect_rparen() {
        if (peek().kind != Tok::RParen) {
            // Distinguish a missing closer from other junk: it is by far the
            // most common slip when writing formulas by hand.
            if (peek().kind == Tok::End) fail("unbalanced parenthesis");
            fail("expected ')'");
        }
        ++pos_;
    }

    // formula := impterm, where an impterm is a chain of or-terms joined by a
    // single implication flavour (right-associative).  "p -> q -* r" is
    // rejected rather than silently picking a grouping.
    FormulaPtr formula() {
        std::vector<FormulaPtr> terms;
        std::vector<Tok> ops;
        terms.push_back(orterm());
        while (peek().kind == Tok::Arrow || peek().kind == Tok::Wand) {
            ops.push_back(peek().kind);
            ++pos_;
            terms.push_back(orterm());
        }
        if (ops.empty()) return terms[0];
        for (Tok op : ops)
            if (op != ops[0]) fail("mixing '->' and '-*' without parentheses");
        FormulaPtr acc = terms.back();
        for (std::size_t i = terms.size() - 1; i-- > 0;)
            acc = Formula::make(ops[0] == Tok::Arrow ? FormulaKind::Imp : FormulaKind::Wand,
                                terms[i], std::move(acc));
        return acc;
    }

    FormulaPtr orterm() {
        FormulaPtr f = andterm();
        while (peek().kind == Tok::Or) {
            ++pos_;
            f = forr(std::move(f), andterm());
        }
        return f;
    }

    FormulaPtr andterm() {
        FormulaPtr f = starterm();
        while (peek().kind == Tok::And) {
            ++pos_;
            f = fand(std::move(f), starterm());
        }
        return f;
    }

    FormulaPtr starterm() {
        FormulaPtr f = atom();
        while (peek().kind == Tok::Star) {
            ++pos_;
            f = ftensor(std::move(f), atom());
        }
        return f;
    }

    FormulaPtr atom() {
        switch (peek().kind) {
        case Tok::Ident: {
            FormulaPtr f = Formula::var(peek().text);
            ++pos_;
            return f;
        }
        case Tok::Top: ++pos_; return Formula::top();
        case Tok::Bot: ++pos_; return Formula::bot();
        case Tok::One: ++pos_; return Formula::one();
        case Tok::LParen: {
            ++pos_;
            FormulaPtr f = formula();
            expect_rparen();
            return f;
        }
        default: fail("expected a formula");
        }
    }

    // bunch := semi, semi := comma (";" comma)*, comma := bitem ("," bitem)*.
    BunchPtr bunch() {
        BunchPtr b = comma_chain();
        while (peek().kind == Tok::Semi) {
            ++pos_;
            b = Bunch::semi(std::move(b), comma_chain());
        }
        return b;
    }

    BunchPtr comma_chain() {
        BunchPtr b = bitem();
        while (peek().kind == Tok::Comma) {
            ++pos_;
            b = Bunch::comma(std::move(b), bitem());
        }
        return b;
    }

    // A parenthesis may open either a formula or a bunch group here, so try
    // the formula reading first and fall back on the bunch reading.
    BunchPtr bitem() {
        switch (peek().kind) {
        case Tok::Em: ++pos_; return Bunch::empty_m();
        case Tok::Ea: ++pos_; return Bunch::empty_a();
        default: break;
        }
        std::size_t save = pos_;
        try {
            return Bunch::leaf(formula());
        } catch (const ParseError&) {
            pos_ = save;
        }
        if (peek().kind != Tok::LParen) fail("expected a bunch item");
        ++pos_;
        BunchPtr b = bunch();
        expect_rparen();
        return b;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).formula_entry(); }
BunchPtr parse_bunch(std::string_view text) { return Parser(text).bunch_entry(); }
RawSequent parse_sequent(std::string_view text) { return Parser(text).sequent_entry(); }

} // namespace bip
