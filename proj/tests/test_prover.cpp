#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "bip/measure.hpp"
#include "bip/parser.hpp"
#include "bip/prover.hpp"
#include "json.hpp"

using namespace bip;

namespace {

Sequent seq(const std::string& text) { return to_sequent(parse_sequent(text)); }

Outcome outcome_of(const std::string& text) { return decide_text(text).outcome; }

} // namespace

TEST_CASE("decides frozen provable sequents") {
    const char* provable[] = {
        "p |- p",
        "p & q |- p & q",
        "Ea |- top",
        "1 |- top",
        "bot |- q",
        "Em |- 1",
        "p, p |- p * p",
        "p, q |- q * p",
        "p * q |- q * p",
        "p & q |- q & p",
        "p ; q |- p & q",
        "p |- p & p",
        "1 |- p -> p",
        "Em |- (p * q) -* (q * p)",
        "Ea |- (p -> q) -> ((q -> r) -> (p -> r))",
        "p * (q | r) |- (p * q) | (p * r)",
        "(p * q) | (p * r) |- p * (q | r)",
        "p -> (p -> q) ; p |- q",
        "p -* (p -* q), p, p |- q",
        "(q, q -* a) ; (p, p -* q) |- a",
    };
    for (const char* text : provable) {
        CAPTURE(std::string(text));
        CHECK(outcome_of(text) == Outcome::Provable);
    }
}

TEST_CASE("decides frozen unprovable sequents") {
    const char* unprovable[] = {
        "p |- q",
        "p |- p * p",
        "p, p, p |- p * p",
        "p * q |- p",
        "p & q |- p * q",
        "p * q |- p & q",
        "p -> q |- p -* q",
        "p -* q |- p -> q",
        "top |- 1",
        "p -* (p -* q), p |- q",
    };
    for (const char* text : unprovable) {
        CAPTURE(std::string(text));
        CHECK(outcome_of(text) == Outcome::Unprovable);
    }
}

TEST_CASE("provable results carry a derivation that verifies") {
    const char* provable[] = {
        "p, p |- p * p",
        "p * (q | r) |- (p * q) | (p * r)",
        "(q, q -* a) ; (p, p -* q) |- a",
        "p -> (p -> q) ; p |- q",
        "Ea |- (p -> q) -> ((q -> r) -> (p -> r))",
    };
    for (const char* text : provable) {
        CAPTURE(std::string(text));
        Result r = decide_text(text);
        REQUIRE(r.outcome == Outcome::Provable);
        REQUIRE(r.derivation != nullptr);
        CHECK(sequent_equal(r.derivation->sequent, seq(text)));
        CHECK(verify(r.derivation));
    }
}

TEST_CASE("unprovable and resource-limited results carry no derivation") {
    Result u = decide_text("p |- q");
    CHECK(u.outcome == Outcome::Unprovable);
    CHECK(u.derivation == nullptr);

    SearchConfig tight;
    tight.max_visited = 1;
    Result limited = decide(seq("p, p |- p * p"), tight);
    CHECK(limited.outcome == Outcome::ResourceLimit);
    CHECK(limited.derivation == nullptr);
}

TEST_CASE("verify rejects tampered derivations") {
    CHECK_FALSE(verify(nullptr));

    // A bare claim with no premises is only a proof when the rule is an axiom.
    auto bogus = std::make_shared<Derivation>(
        Derivation{seq("p |- q"), RuleName::Id, std::nullopt, VariantDescriptor{}, {}});
    CHECK_FALSE(verify(bogus));

    Result r = decide_text("p, p |- p * p");
    REQUIRE(r.outcome == Outcome::Provable);
    REQUIRE(verify(r.derivation));

    // Swap the root rule for one that does not match the inference.
    auto wrong_rule = std::make_shared<Derivation>(
        Derivation{r.derivation->sequent, RuleName::AndR, r.derivation->position,
                   r.derivation->variant, r.derivation->children});
    CHECK_FALSE(verify(wrong_rule));

    // Replace the proved sequent with a different one under the same subtree.
    auto wrong_root = std::make_shared<Derivation>(
        Derivation{seq("p, q |- p * p"), r.derivation->rule, r.derivation->position,
                   r.derivation->variant, r.derivation->children});
    CHECK_FALSE(verify(wrong_root));

    // Drop a premise subtree from an inference that needs it.
    REQUIRE(r.derivation->children.size() == 2);
    auto missing_child = std::make_shared<Derivation>(
        Derivation{r.derivation->sequent, r.derivation->rule, r.derivation->position,
                   r.derivation->variant, {r.derivation->children[0]}});
    CHECK_FALSE(verify(missing_child));
}

TEST_CASE("search bounds are frozen for reference sequents") {
    SearchBounds b1 = search_bounds(seq("p, p |- p * p"));
    CHECK(b1.weight == 6);
    CHECK(b1.height_bound == 13);
    CHECK(b1.subformula_count == 2);

    SearchBounds b2 = search_bounds(seq("p |- p"));
    CHECK(b2.weight == 2);
    CHECK(b2.height_bound == 5);
    CHECK(b2.subformula_count == 1);

    SearchBounds b3 = search_bounds(seq("Em |- 1"));
    CHECK(b3.weight == 2);
    CHECK(b3.height_bound == 5);
    CHECK(b3.subformula_count == 1);

    CHECK(space_bound_symbolic(seq("p, p |- p * p")) == "|Omega(14)| * 2");
}

TEST_CASE("axioms decide even under a zero node budget") {
    SearchConfig zero;
    zero.max_visited = 0;
    CHECK(decide(seq("p |- p"), zero).outcome == Outcome::Provable);
    CHECK(decide(seq("Ea |- top"), zero).outcome == Outcome::Provable);
    CHECK(decide(seq("p, p |- p * p"), zero).outcome == Outcome::ResourceLimit);
}

TEST_CASE("a prover keeps its memo across calls and stays correct") {
    Prover shared;
    Result first = shared.decide(seq("p, p |- p * p"));
    CHECK(first.outcome == Outcome::Provable);
    CHECK(shared.memo_size() > 0);

    // Same sequent again: answered from the memo without expanding anything.
    Result again = shared.decide(seq("p, p |- p * p"));
    CHECK(again.outcome == Outcome::Provable);
    CHECK(again.stats.nodes_expanded == 0);
    CHECK(again.stats.memo_hits == 1);
    CHECK(verify(again.derivation));

    // A related sequent benefits from shared subgoals but must agree with a
    // fresh run.
    Result related_shared = shared.decide(seq("p, p, p |- p * p"));
    Result related_fresh = decide(seq("p, p, p |- p * p"));
    CHECK(related_shared.outcome == related_fresh.outcome);

    shared.clear();
    CHECK(shared.memo_size() == 0);
    CHECK(shared.decide(seq("p, p |- p * p")).stats.nodes_expanded > 0);
}

TEST_CASE("a resource-limited prover recovers once the budget is raised") {
    SearchConfig tight;
    tight.max_visited = 2;
    Prover prover(tight);
    Result limited = prover.decide(seq("Ea |- (p -> q) -> ((q -> r) -> (p -> r))"));
    CHECK(limited.outcome == Outcome::ResourceLimit);

    // Entries cached before the cutoff remain valid; only the budget changed.
    Prover roomy; // default config: no budget
    Result full = roomy.decide(seq("Ea |- (p -> q) -> ((q -> r) -> (p -> r))"));
    CHECK(full.outcome == Outcome::Provable);
}

TEST_CASE("search is deterministic across fresh provers") {
    const char* texts[] = {
        "p, p |- p * p",
        "(q, q -* a) ; (p, p -* q) |- a",
        "p -* (p -* q), p |- q",
    };
    for (const char* text : texts) {
        CAPTURE(std::string(text));
        Result a = decide_text(text);
        Result b = decide_text(text);
        CHECK(a.outcome == b.outcome);
        CHECK(a.stats.nodes_expanded == b.stats.nodes_expanded);
        CHECK(a.stats.max_stack_depth == b.stats.max_stack_depth);
        CHECK(a.stats.distinct_sequents == b.stats.distinct_sequents);
        CHECK(render(a.derivation) == render(b.derivation));
    }
}

TEST_CASE("stats respect the declared search invariants") {
    const char* texts[] = {
        "p, p |- p * p",
        "p, p, p |- p * p",
        "(q, q -* a) ; (p, p -* q) |- a",
        "p * (q | r) |- (p * q) | (p * r)",
        "p -> q |- p -* q",
    };
    for (const char* text : texts) {
        CAPTURE(std::string(text));
        Sequent s = seq(text);
        Result r = decide(s);
        CHECK(r.stats.root_weight == weight(s));
        CHECK(r.stats.max_height_seen < 2 * (r.stats.root_weight + 1));
        CHECK(r.stats.nodes_expanded >= 1);
        CHECK(r.stats.distinct_sequents >= 1);
        CHECK(r.stats.max_stack_depth >= 1);
    }
}

TEST_CASE("stat collection and derivation emission can be switched off") {
    SearchConfig lean;
    lean.collect_stats = false;
    lean.emit_derivation = false;
    Result r = decide(seq("p, p |- p * p"), lean);
    CHECK(r.outcome == Outcome::Provable);
    CHECK(r.derivation == nullptr);
    CHECK(r.stats.distinct_sequents == 0);
    CHECK(r.stats.nodes_expanded > 0); // counters stay on; only the set is gated
}

TEST_CASE("text rendering lists each inference with its rule") {
    Result r = decide_text("p, p |- p * p");
    REQUIRE(r.outcome == Outcome::Provable);
    std::string text = render(r.derivation);
    CHECK(text.find("p, p |- p * p   [TensorR]") != std::string::npos);
    CHECK(text.find("  p |- p   [Id]") != std::string::npos);
    CHECK(render(DerivationPtr{}) == "");
}

TEST_CASE("latex rendering produces a bussproofs tree") {
    Result r = decide_text("p, p |- p * p");
    REQUIRE(r.outcome == Outcome::Provable);
    std::string tex = render(r.derivation, Style::Latex);
    CHECK(tex.find("\\begin{prooftree}") == 0);
    CHECK(tex.find("\\end{prooftree}") != std::string::npos);
    CHECK(tex.find("\\BinaryInfC") != std::string::npos);
    CHECK(tex.find("\\AxiomC{}") != std::string::npos);
    CHECK(tex.find("TensorR") != std::string::npos);
}

TEST_CASE("json rendering mirrors the derivation tree") {
    Result r = decide_text("p, p |- p * p");
    REQUIRE(r.outcome == Outcome::Provable);
    nlohmann::json j = nlohmann::json::parse(render(r.derivation, Style::Json));
    CHECK(j["sequent"] == "p, p |- p * p");
    CHECK(j["rule"] == "TensorR");
    REQUIRE(j["children"].size() == 2);
    CHECK(j["children"][0]["rule"] == "Id");
    CHECK(j["children"][0]["children"].empty());
    CHECK(j["variant"].contains("split_left"));
}

TEST_CASE("stats json reports counters and bounds") {
    Sequent s = seq("p, p |- p * p");
    Result r = decide(s);
    nlohmann::json j = nlohmann::json::parse(stats_json(r.stats, s));
    CHECK(j["root_weight"] == 6);
    CHECK(j["height_bound"] == 13);
    CHECK(j["subformula_count"] == 2);
    CHECK(j["space_bound"] == "|Omega(14)| * 2");
    CHECK(j["nodes_expanded"].get<std::size_t>() >= 1);
    CHECK(j.contains("memo_hits"));
    CHECK(j.contains("max_stack_depth"));
    CHECK(j.contains("distinct_sequents"));
    CHECK(j.contains("max_height_seen"));
}

TEST_CASE("outcome names are stable") {
    CHECK(std::string(outcome_name(Outcome::Provable)) == "provable");
    CHECK(std::string(outcome_name(Outcome::Unprovable)) == "unprovable");
    CHECK(std::string(outcome_name(Outcome::ResourceLimit)) == "resource-limit");
}

TEST_CASE("random sequents: shared and fresh searches agree, proofs verify") {
    std::mt19937_64 rng(20260816);
    SearchConfig budget;
    budget.max_visited = 8000;
    Prover shared(budget);
    int decided = 0, proved = 0;
    for (int i = 0; i < 120; ++i) {
        Sequent s = gen::random_sequent(rng, 2, 2);
        CAPTURE(render(s));
        Result with_memo = shared.decide(s);
        Result fresh = decide(s, budget);
        if (with_memo.outcome == Outcome::ResourceLimit ||
            fresh.outcome == Outcome::ResourceLimit)
            continue;
        ++decided;
        CHECK(with_memo.outcome == fresh.outcome);
        CHECK(fresh.stats.max_height_seen < 2 * (fresh.stats.root_weight + 1));
        if (fresh.outcome == Outcome::Provable) {
            ++proved;
            CHECK(verify(fresh.derivation));
            CHECK(verify(with_memo.derivation));
        }
    }
    // The generator must exercise both verdicts for the loop to mean anything.
    CHECK(decided > 60);
    CHECK(proved > 10);
    CHECK(proved < decided);
}
