#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "bip/bunch.hpp"
#include "bip/errors.hpp"
#include "bip/formula.hpp"
#include "bip/parser.hpp"
#include "bip/render.hpp"
#include "generators.hpp"
#include "json.hpp"

using namespace bip;

namespace {
FormulaPtr P() { return Formula::var("p"); }
FormulaPtr Q() { return Formula::var("q"); }
FormulaPtr R() { return Formula::var("r"); }
} // namespace

TEST_CASE("formula construction and accessors") {
    auto f = fwand(P(), ftensor(Q(), R()));
    CHECK(f->kind() == FormulaKind::Wand);
    CHECK(f->left()->kind() == FormulaKind::Var);
    CHECK(f->left()->name() == "p");
    CHECK(f->right()->kind() == FormulaKind::Tensor);
    CHECK(is_binary(f->kind()));
    CHECK(is_atom(Formula::top()->kind()));
    CHECK_FALSE(is_atom(f->kind()));
}

TEST_CASE("formula equality and ordering") {
    CHECK(formula_equal(fand(P(), Q()), fand(P(), Q())));
    CHECK_FALSE(formula_equal(fand(P(), Q()), fand(Q(), P())));
    CHECK(formula_compare(P(), Q()) < 0);
    CHECK(formula_compare(Q(), P()) > 0);
    CHECK(formula_compare(P(), P()) == 0);
    // Connective rank: Var < Top < Bot < One < And < Or < Imp < Tensor < Wand.
    CHECK(formula_compare(P(), Formula::top()) < 0);
    CHECK(formula_compare(Formula::top(), Formula::bot()) < 0);
    CHECK(formula_compare(Formula::bot(), Formula::one()) < 0);
    CHECK(formula_compare(fand(P(), P()), forr(P(), P())) < 0);
    CHECK(formula_compare(fimp(P(), P()), ftensor(P(), P())) < 0);
    CHECK(formula_compare(ftensor(P(), P()), fwand(P(), P())) < 0);
}

TEST_CASE("formula size") {
    CHECK(formula_size(P()) == 1);
    CHECK(formula_size(Formula::one()) == 1);
    CHECK(formula_size(fand(P(), Q())) == 3);
    CHECK(formula_size(fimp(fand(P(), Q()), R())) == 5);
}

TEST_CASE("formula size equals node count") {
    gen::Rng rng(101);
    for (int i = 0; i < 500; ++i) {
        auto f = gen::random_formula(rng, 4);
        // Count nodes directly.
        std::size_t nodes = 0;
        std::vector<FormulaPtr> stack{f};
        while (!stack.empty()) {
            auto g = stack.back();
            stack.pop_back();
            ++nodes;
            if (is_binary(g->kind())) {
                stack.push_back(g->left());
                stack.push_back(g->right());
            }
        }
        CHECK(formula_size(f) == nodes);
    }
}

TEST_CASE("parse_formula: precedence and associativity") {
    auto f = parse_formula("p -* (q * r)");
    CHECK(formula_equal(f, fwand(P(), ftensor(Q(), R()))));

    auto g = parse_formula("p & q -> r");
    CHECK(formula_equal(g, fimp(fand(P(), Q()), R())));

    // * binds tighter than &, & tighter than |, | tighter than ->.
    CHECK(formula_equal(parse_formula("p * q & r"), fand(ftensor(P(), Q()), R())));
    CHECK(formula_equal(parse_formula("p & q | r"), forr(fand(P(), Q()), R())));
    CHECK(formula_equal(parse_formula("p | q -> r"), fimp(forr(P(), Q()), R())));

    // Implications are right-associative.
    CHECK(formula_equal(parse_formula("p -> q -> r"), fimp(P(), fimp(Q(), R()))));
    CHECK(formula_equal(parse_formula("p -* q -* r"), fwand(P(), fwand(Q(), R()))));

    // Constants.
    CHECK(formula_equal(parse_formula("top"), Formula::top()));
    CHECK(formula_equal(parse_formula("bot"), Formula::bot()));
    CHECK(formula_equal(parse_formula("1"), Formula::one()));
    CHECK(formula_equal(parse_formula("1 -* p"), fwand(Formula::one(), P())));
}

TEST_CASE("parse_formula: errors carry positions") {
    CHECK_THROWS_AS(parse_formula("(p & q"), ParseError);
    try {
        parse_formula("(p & q");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()) == "unbalanced parenthesis at offset 6");
        CHECK(e.offset() == 6);
    }
    CHECK_THROWS_AS(parse_formula("p -> q -* r"), ParseError);
    CHECK_THROWS_AS(parse_formula("p -* q -> r"), ParseError);
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("p &"), ParseError);
    CHECK_THROWS_AS(parse_formula("p ? q"), ParseError);
    CHECK_THROWS_AS(parse_formula("p q"), ParseError);
}

TEST_CASE("parse_sequent: shapes and errors") {
    auto s = parse_sequent("p, p |- p * p");
    CHECK(s.antecedent->kind() == BunchKind::Comma);
    CHECK(formula_equal(s.antecedent->left()->formula(), P()));
    CHECK(formula_equal(s.antecedent->right()->formula(), P()));
    CHECK(formula_equal(s.succedent, ftensor(P(), P())));

    auto u = parse_sequent("Em |- 1");
    CHECK(u.antecedent->kind() == BunchKind::EmptyM);
    CHECK(formula_equal(u.succedent, Formula::one()));

    // Comma binds tighter than semicolon; both left-associated.
    auto t = parse_sequent("p ; q , r |- q");
    CHECK(t.antecedent->kind() == BunchKind::Semi);
    CHECK(t.antecedent->left()->kind() == BunchKind::Leaf);
    CHECK(t.antecedent->right()->kind() == BunchKind::Comma);

    auto assoc = parse_bunch("p, q, r");
    CHECK(assoc->kind() == BunchKind::Comma);
    CHECK(assoc->left()->kind() == BunchKind::Comma); // (p,q),r

    CHECK_THROWS_AS(parse_sequent("p, q"), ParseError);          // missing turnstile
    CHECK_THROWS_AS(parse_sequent("p |- q |- r"), ParseError);   // duplicate turnstile
    CHECK_THROWS_AS(parse_sequent("|- p"), ParseError);          // empty antecedent
    CHECK_THROWS_AS(parse_sequent("p |-"), ParseError);          // empty succedent
    CHECK_THROWS_AS(parse_sequent("p |- Em"), ParseError);       // unit is not a formula
}

TEST_CASE("render: text examples") {
    CHECK(render(ftensor(P(), Q())) == "p * q");
    CHECK(render(Formula::one()) == "1");
    CHECK(render(Bunch::empty_a()) == "Ea");
    CHECK(render(Bunch::empty_m()) == "Em");
    auto s = parse_sequent("p, p |- p * p");
    CHECK(render(s) == "p, p |- p * p");
}

TEST_CASE("render: latex examples") {
    CHECK(render(Bunch::empty_a(), Style::Latex) == "\\varnothing_{a}");
    CHECK(render(Bunch::empty_m(), Style::Latex) == "\\varnothing_{m}");
    CHECK(render(ftensor(P(), Q()), Style::Latex) == "p \\otimes q");
    CHECK(render(fwand(P(), Q()), Style::Latex) == "p \\multimap q");
    CHECK(render(Formula::top(), Style::Latex) == "\\top");
}

TEST_CASE("render: json examples") {
    auto got = nlohmann::json::parse(render(fwand(P(), P()), Style::Json));
    auto want = nlohmann::json::parse(R"({"op":"wand","l":{"var":"p"},"r":{"var":"p"}})");
    CHECK(got == want);

    auto b = nlohmann::json::parse(render(parse_bunch("p, Ea"), Style::Json));
    CHECK(b["op"] == "comma");
    CHECK(b["l"]["leaf"]["var"] == "p");
    CHECK(b["r"]["unit"] == "Ea");

    auto s = nlohmann::json::parse(render(parse_sequent("Em |- 1"), Style::Json));
    CHECK(s["antecedent"]["unit"] == "Em");
    CHECK(s["succedent"]["op"] == "one");
}

TEST_CASE("subformulas of a raw sequent") {
    auto one = subformulas(parse_sequent("p |- p"));
    CHECK(one.size() == 1);

    auto two = subformulas(parse_sequent("p & q |- q"));
    REQUIRE(two.size() == 3); // p, q, p&q
    CHECK(formula_equal(two[0], P()));
    CHECK(formula_equal(two[1], Q()));
    CHECK(formula_equal(two[2], fand(P(), Q())));

    auto three = subformulas(parse_sequent("p, p |- p * p"));
    CHECK(three.size() == 2); // p, p*p

    // Cardinality bound: |sf(s)| <= sum of formula sizes in s.
    gen::Rng rng(55);
    for (int i = 0; i < 200; ++i) {
        auto s = gen::random_raw_sequent(rng);
        std::size_t total = formula_size(s.succedent);
        std::vector<BunchPtr> stack{s.antecedent};
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            if (x->kind() == BunchKind::Leaf) total += formula_size(x->formula());
            if (x->kind() == BunchKind::Comma || x->kind() == BunchKind::Semi) {
                stack.push_back(x->left());
                stack.push_back(x->right());
            }
        }
        CHECK(subformulas(s).size() <= total);
    }
}

TEST_CASE("parse after render is the identity (formulas)") {
    gen::Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        auto f = gen::random_formula(rng, 4);
        CAPTURE(render(f));
        CHECK(formula_equal(parse_formula(render(f)), f));
    }
}

TEST_CASE("parse after render is the identity (sequents)") {
    gen::Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        auto s = gen::random_raw_sequent(rng);
        CAPTURE(render(s));
        auto back = parse_sequent(render(s));
        CHECK(bunch_equal(back.antecedent, s.antecedent));
        CHECK(formula_equal(back.succedent, s.succedent));
    }
}
