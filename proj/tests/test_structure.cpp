#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "bip/parser.hpp"
#include "bip/render.hpp"
#include "bip/structure.hpp"
#include "generators.hpp"

using namespace bip;

namespace {

StarPtr star_of(const char* text) { return star(parse_bunch(text)); }
NormalBunch norm(const char* text) { return reduce(star_of(text)); }

FormulaPtr P() { return Formula::var("p"); }
FormulaPtr Q() { return Formula::var("q"); }

} // namespace

TEST_CASE("star flattens nested same-connective nodes") {
    // ((p->q, Ea) ; (p->q, Ea)), ((p-*1 ; Ea), (Em, r*s))
    auto x = star_of("((p -> q, Ea) ; (p -> q, Ea)), ((p -* 1 ; Ea), (Em, r * s))");
    REQUIRE(x->kind() == StructKind::Comma);
    REQUIRE(x->children().size() == 4);
    // CommaN[ SemiN[CommaN[p->q,Ea], CommaN[p->q,Ea]], SemiN[p-*1, Ea], Em, r*s ]
    auto c0 = x->children()[0];
    REQUIRE(c0->kind() == StructKind::Semi);
    REQUIRE(c0->children().size() == 2);
    CHECK(c0->children()[0]->kind() == StructKind::Comma);
    CHECK(c0->children()[0]->children().size() == 2);
    CHECK(formula_equal(c0->children()[0]->children()[0]->formula(), fimp(P(), Q())));
    CHECK(c0->children()[0]->children()[1]->kind() == StructKind::EmptyA);
    auto c1 = x->children()[1];
    REQUIRE(c1->kind() == StructKind::Semi);
    CHECK(formula_equal(c1->children()[0]->formula(), fwand(P(), Formula::one())));
    CHECK(c1->children()[1]->kind() == StructKind::EmptyA);
    CHECK(x->children()[2]->kind() == StructKind::EmptyM);
    CHECK(formula_equal(x->children()[3]->formula(), ftensor(Formula::var("r"), Formula::var("s"))));
    CHECK(is_star(x));
}

TEST_CASE("star on leaves and simple chains") {
    auto p = star_of("p");
    CHECK(p->kind() == StructKind::Leaf);

    auto c = star_of("(p, q), r");
    REQUIRE(c->kind() == StructKind::Comma);
    REQUIRE(c->children().size() == 3);
    CHECK(formula_equal(c->children()[0]->formula(), P()));
    CHECK(formula_equal(c->children()[2]->formula(), Formula::var("r")));

    auto c2 = star_of("p, (q, r)");
    CHECK(c2->children().size() == 3);
}

TEST_CASE("reduce: worked example") {
    auto n = norm("((p -> q, Ea) ; (p -> q, Ea)), ((p -* 1 ; Ea), (Em, r * s))");
    // CommaN[p->q, Ea, p-*1, r*s] in canonical child order.
    REQUIRE(n.node()->kind() == StructKind::Comma);
    REQUIRE(n.node()->children().size() == 4);
    CHECK(render(n) == "p -> q, r * s, p -* 1, Ea");
    CHECK(is_normal(n.node()));
    // Same multiset of children, order aside.
    auto want = norm("p -> q, Ea, p -* 1, r * s");
    CHECK(normal_equal(n, want));
}

TEST_CASE("reduce: dedup, unit absorption, collapse") {
    // SemiN[p,p] -> p
    auto a = reduce(star_of("p ; p"));
    CHECK(a.node()->kind() == StructKind::Leaf);
    CHECK(formula_equal(a.node()->formula(), P()));

    // CommaN[Em,Em] -> Em
    auto b = reduce(star_of("Em, Em"));
    CHECK(b.node()->kind() == StructKind::EmptyM);

    // SemiN[Ea,Ea] -> Ea
    auto c = reduce(star_of("Ea ; Ea"));
    CHECK(c.node()->kind() == StructKind::EmptyA);

    // Em dropped under comma, Ea dropped under semicolon.
    CHECK(render(norm("p, Em, q")) == "p, q");
    CHECK(render(norm("p ; Ea ; q")) == "p ; q");

    // Ea under comma and Em under semicolon are kept.
    CHECK(render(norm("p, Ea")) == "p, Ea");
    CHECK(render(norm("p ; Em")) == "p ; Em"); // leaves sort before units

    // Collapse can cascade: (p ; p), q is comma[leaf,leaf] after dedup.
    auto d = norm("(p ; p), q");
    CHECK(render(d) == "p, q");

    // Collapse re-exposes flattening: ((p;p), q), r must end up one comma node.
    auto e = norm("((p ; p), q), r");
    REQUIRE(e.node()->kind() == StructKind::Comma);
    CHECK(e.node()->children().size() == 3);
}

TEST_CASE("reduce is idempotent") {
    gen::Rng rng(21);
    for (int i = 0; i < 500; ++i) {
        auto x = star(gen::random_bunch(rng, 4));
        auto once = reduce(x);
        auto twice = reduce(once.node());
        CHECK(normal_equal(once, twice));
        CHECK(is_normal(once.node()));
        CHECK(is_star(once.node()));
    }
}

TEST_CASE("reduce is compositional over joins") {
    gen::Rng rng(22);
    for (int i = 0; i < 300; ++i) {
        auto x = star(gen::random_bunch(rng, 3));
        auto y = star(gen::random_bunch(rng, 3));
        for (StructKind op : {StructKind::Comma, StructKind::Semi}) {
            auto lhs = reduce(star_join(op, reduce(x).node(), y));
            auto rhs = reduce(star_join(op, x, y));
            CHECK(normal_equal(lhs, rhs));
        }
    }
}

TEST_CASE("tree_size: worked example and units") {
    CHECK(tree_size(star_of("p & q, (p ; (Ea, q, 1 & r) ; p -* q)")) == 10);
    CHECK(tree_size(StarBunch::empty_a()) == 0);
    CHECK(tree_size(StarBunch::empty_m()) == 0);
    CHECK(tree_size(star_of("p, q")) == 3);
    CHECK(tree_size(star_of("p ; q")) == 1);
    // Size never increases under reduce.
    gen::Rng rng(23);
    for (int i = 0; i < 300; ++i) {
        auto x = star(gen::random_bunch(rng, 4));
        CHECK(reduce(x).size() <= tree_size(x));
    }
}

TEST_CASE("tree_height: worked examples") {
    CHECK(tree_height(star_of("p")) == 0);
    CHECK(tree_height(StarBunch::empty_m()) == 0);
    CHECK(tree_height(star_of("p & q, (p ; (Ea, q, 1 & r) ; p -* q)")) == 3);

    // Boundary term: height 4 = 2*2 with size exactly 2, already canonical.
    auto b = star_of("Em ; (Ea, (Em ; (Ea, Ea)))");
    CHECK(tree_height(b) == 4);
    CHECK(tree_size(b) == 2);
    auto nb = reduce(b);
    CHECK(tree_equal(nb.node(), b));
    CHECK(nb.height() == 4);
    CHECK(nb.size() == 2);
}

TEST_CASE("height at least 2n forces size at least n") {
    gen::Rng rng(24);
    for (int i = 0; i < 1000; ++i) {
        auto n = reduce(star(gen::random_bunch(rng, 5)));
        std::size_t h = n.height(), sz = n.size();
        for (std::size_t k = 1; 2 * k <= h; ++k) CHECK(sz >= k);
    }
}

TEST_CASE("canonical_compare is a strict total order consistent with equality") {
    CHECK(canonical_compare(norm("p"), norm("q")) < 0);
    CHECK(canonical_compare(norm("p ; q"), norm("p ; q")) == 0);
    CHECK(canonical_compare(norm("Ea"), norm("p, q")) < 0);
    // Variant rank: Leaf < EmptyA < EmptyM < SemiN < CommaN.
    CHECK(canonical_compare(norm("p"), norm("Ea")) < 0);
    CHECK(canonical_compare(norm("Ea"), norm("Em")) < 0);
    CHECK(canonical_compare(norm("Em"), norm("p ; q")) < 0);
    CHECK(canonical_compare(norm("p ; q"), norm("p, q")) < 0);

    gen::Rng rng(25);
    std::vector<NormalBunch> xs;
    for (int i = 0; i < 60; ++i) xs.push_back(reduce(star(gen::random_bunch(rng, 3))));
    for (const auto& a : xs)
        for (const auto& b : xs) {
            auto ab = canonical_compare(a, b), ba = canonical_compare(b, a);
            CHECK((ab == 0) == normal_equal(a, b));
            CHECK((ab < 0) == (ba > 0));
            for (const auto& c : xs)
                if (ab < 0 && canonical_compare(b, c) < 0) CHECK(canonical_compare(a, c) < 0);
        }
}

TEST_CASE("interpretation maps structure to formulas") {
    auto x = star_join(StructKind::Comma, StarBunch::leaf(P()),
                       star_join(StructKind::Semi, StarBunch::leaf(Q()), StarBunch::leaf(Formula::var("r"))));
    CHECK(formula_equal(interpret(x), ftensor(P(), fand(Q(), Formula::var("r")))));
    CHECK(formula_equal(interpret(StarBunch::empty_m()), Formula::one()));
    CHECK(formula_equal(interpret(StarBunch::empty_a()), Formula::top()));
    // n-ary comma associates left: p,q,r -> (p*q)*r.
    CHECK(formula_equal(interpret(star_of("p, q, r")),
                        ftensor(ftensor(P(), Q()), Formula::var("r"))));
}

TEST_CASE("sequent normalization, equality, hashing") {
    auto s = to_sequent(parse_sequent("p, p |- p * p"));
    CHECK(render(s) == "p, p |- p * p");
    CHECK(s.antecedent.node()->children().size() == 2);

    // Structurally different writings of the same canonical sequent.
    auto a = to_sequent(parse_sequent("(p ; p), (q, Em) |- r"));
    auto b = to_sequent(parse_sequent("q, p |- r"));
    CHECK(sequent_equal(a, b));
    CHECK(sequent_hash(a) == sequent_hash(b));
    CHECK(sequent_compare(a, b) == 0);

    auto c = to_sequent(parse_sequent("p, q |- r"));
    CHECK(sequent_equal(b, c)); // comma children sorted canonically

    auto d = to_sequent(parse_sequent("p, q |- q"));
    CHECK_FALSE(sequent_equal(c, d));
}

TEST_CASE("subformulas of a canonical sequent") {
    auto s = to_sequent(parse_sequent("p & q, (p -* 1) |- p & q"));
    auto sf = subformulas(s);
    // p, q, 1, p&q, p-*1 — five distinct subformulae.
    CHECK(sf.size() == 5);
    for (std::size_t i = 1; i < sf.size(); ++i) CHECK(formula_compare(sf[i - 1], sf[i]) < 0);
}

TEST_CASE("rendering canonical structures") {
    auto n = norm("p, (q ; r)");
    CHECK(render(n) == "p, (q ; r)");
    CHECK(render(n, Style::Latex) == "p , (q ; r)");
    auto s = to_sequent(parse_sequent("Em |- 1"));
    CHECK(render(s) == "Em |- 1");
    CHECK(render(s, Style::Latex) == "\\varnothing_{m} \\vdash \\mathbf{1}");

    // Canonical text reparses to the same canonical value.
    gen::Rng rng(26);
    for (int i = 0; i < 300; ++i) {
        auto x = reduce(star(gen::random_bunch(rng, 4)));
        auto back = reduce(star(parse_bunch(render(x))));
        CHECK(normal_equal(x, back));
    }
}
