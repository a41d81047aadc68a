#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "bip/measure.hpp"
#include "bip/parser.hpp"
#include "bip/render.hpp"
#include "bip/structure.hpp"
#include "generators.hpp"

using namespace bip;

namespace {

Sequent seq(const char* text) { return to_sequent(parse_sequent(text)); }

bool has_pair(const std::vector<CriticalPair>& ps, const char* left, const char* right,
              PairKind kind) {
    auto l = reduce(star(parse_bunch(left)));
    auto r = reduce(star(parse_bunch(right)));
    return std::any_of(ps.begin(), ps.end(), [&](const CriticalPair& p) {
        return p.kind == kind && normal_equal(p.left, l) && normal_equal(p.right, r);
    });
}

} // namespace

TEST_CASE("critical pairs: identity sequent collapses to one pair") {
    auto ps = critical_pairs(seq("p |- p"));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].kind == PairKind::Root); // root outranks the coinciding diagonals
    CHECK(ps[0].size() == 2);
}

TEST_CASE("critical pairs: multiplicative pairing") {
    auto ps = critical_pairs(seq("p, p |- p * p"));
    REQUIRE(ps.size() == 3);
    CHECK(has_pair(ps, "p, p", "p * p", PairKind::Root));
    CHECK(has_pair(ps, "p", "p", PairKind::Diagonal));
    CHECK(has_pair(ps, "p * p", "p * p", PairKind::Diagonal));
}

TEST_CASE("critical pairs: semicolon node contributes antecedent pairs") {
    auto ps = critical_pairs(seq("p ; q |- r"));
    REQUIRE(ps.size() == 6);
    CHECK(has_pair(ps, "p ; q", "r", PairKind::Root));
    CHECK(has_pair(ps, "p", "p", PairKind::Diagonal));
    CHECK(has_pair(ps, "q", "q", PairKind::Diagonal));
    CHECK(has_pair(ps, "r", "r", PairKind::Diagonal));
    CHECK(has_pair(ps, "q", "p", PairKind::Antecedent));
    CHECK(has_pair(ps, "p", "q", PairKind::Antecedent));
}

TEST_CASE("critical pairs: joined siblings under wider semicolon nodes") {
    // Antecedent SemiN[p, q, r]: sibling join for p is q;r, etc.
    auto ps = critical_pairs(seq("p ; q ; r |- p"));
    CHECK(has_pair(ps, "q ; r", "p", PairKind::Antecedent));
    CHECK(has_pair(ps, "p ; r", "q", PairKind::Antecedent));
    CHECK(has_pair(ps, "p ; q", "r", PairKind::Antecedent));
    // Non-leaf children contribute no antecedent pair of their own.
    auto qs = critical_pairs(seq("p ; (q, r) |- p"));
    CHECK(has_pair(qs, "q, r", "p", PairKind::Antecedent));
    for (const auto& cp : qs)
        if (cp.kind == PairKind::Antecedent) CHECK(cp.right.node()->kind() == StructKind::Leaf);
}

TEST_CASE("weight: frozen values") {
    CHECK(weight(seq("p |- p")) == 2);
    CHECK(weight(seq("p, p |- p * p")) == 6);
    CHECK(weight(seq("p ; q |- r")) == 2);
    CHECK(weight(seq("Em |- 1")) == 2);
}

TEST_CASE("weight agrees with the maximum over materialized pairs") {
    gen::Rng rng(31);
    for (int i = 0; i < 800; ++i) {
        auto s = gen::random_sequent(rng);
        std::size_t m = 0;
        for (const auto& p : critical_pairs(s)) m = std::max(m, p.size());
        CAPTURE(render(s));
        CHECK(weight(s) == m);
        CHECK(weight(s) >= 2);
    }
}

TEST_CASE("weight bounds every comma list length in the antecedent") {
    gen::Rng rng(32);
    for (int i = 0; i < 500; ++i) {
        auto s = gen::random_sequent(rng, 4);
        std::size_t w = weight(s);
        std::vector<StarPtr> stack{s.antecedent.node()};
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            if (x->kind() == StructKind::Comma) CHECK(x->children().size() <= w);
            for (const auto& c : x->children()) stack.push_back(c);
        }
    }
}
