#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bip/bunch.hpp"
#include "bip/structure.hpp"

namespace bip {

// Bounds for an exhaustively enumerable corpus of small sequents: every
// formula over the variables up to the size bound, every canonical antecedent
// over that stock up to the leaf bound, and every pairing of the two.
struct CorpusSpec {
    std::vector<std::string> variables;
    std::size_t max_formula_size = 3;
    std::size_t max_antecedent_leaves = 3;
    // When set, top/bot/1 join the formula stock and the units Em/Ea may
    // appear as antecedent leaves. A unit occurrence counts toward the leaf
    // bound — units are erasable, so not charging them would make the space
    // of canonical antecedents infinite.
    bool include_units = false;
};

// All sequents within the bounds, deduplicated, in a deterministic order:
// antecedents grouped by leaf count, succedents cycling fastest. Throws
// CorpusTooLarge when any stage would exceed an internal ceiling (about one
// million items) and std::invalid_argument when a bound is zero or the
// formula stock would be empty.
std::vector<Sequent> enumerate_sequents(const CorpusSpec& spec);

enum class OracleOutcome : std::uint8_t {
    Provable,     // an explicit derivation within the height bound was found
    Inconclusive, // no derivation within the bound; says nothing beyond it
};

const char* oracle_outcome_name(OracleOutcome o) noexcept;

struct OracleVerdict {
    OracleOutcome outcome = OracleOutcome::Inconclusive;
    // True when the depth bound cut off at least one unexplored branch (or an
    // oversized duplication was declined), so a deeper search might still
    // succeed. Since contraction is applicable at every position, this
    // accompanies essentially every Inconclusive answer.
    bool depth_exhausted = false;
};

// Whether the sequent, read literally, is an initial sequent of the
// reference calculus: identity on any formula, the multiplicative unit axiom
// Em |- 1, falsum anywhere in the antecedent, or top on the right.
bool lbi_initial(const RawSequent& s);

// Reference prover, used as an independent check on the decision procedure.
// It searches the calculus with explicit weakening and contraction, working
// modulo the reversible structural rules (associativity, exchange, and the
// unit laws read in both directions): antecedents are kept as sorted,
// unit-erased trees that preserve duplicate siblings — the exact invariant
// those rules generate — except that semicolon multiplicities above two are
// clamped, which is an equivalence rather than an approximation (one
// weakening, respectively one contraction, interderives the two- and
// three-copy forms). Every proper rule (the logical rules, weakening,
// contraction, the rule replacing 1 by Em) is enumerated over all the
// arrangements the structural group could expose: sibling regroupings,
// duplications, splits with an empty side. The depth bound counts those
// proper steps, an initial sequent counting one; the reversible
// rearrangements cost nothing.
//
// Treating the reversible rules as explicit search edges instead is a trap
// twice over: memoizing bounded failures by fully canonical form is unsound
// (two arrangements of one bunch differ in the structural steps they still
// need, so one arrangement's bounded failure wrongly blocks another that a
// few more rearrangements would have saved), and memoizing them by exact
// arrangement diverges (unit introduction alone gives every bunch infinitely
// many arrangements). Working modulo the group removes the edges entirely:
// verdicts become functions of the state, the memo is sound, and the search
// terminates.
//
// Provable is trustworthy as-is — a depth-d answer unfolds into an explicit
// derivation in the reference calculus, each step one proper rule plus
// finitely many reversible rearrangements. Inconclusive only rules out
// proofs within the bound. The search shares nothing with the
// canonical-form rule engine beyond the syntax types; in particular it keeps
// duplicate semicolon siblings apart, applies contraction as an explicit
// costed step, and never consults weights.
class LbiOracle {
public:
    OracleVerdict prove(const RawSequent& s, std::size_t height_bound);

    std::size_t memo_size() const noexcept { return memo_.size(); }
    void clear();

private:
    struct State {
        StarPtr antecedent; // sorted, unit-erased, duplicates preserved
        FormulaPtr goal;
    };
    struct StateHash {
        std::size_t operator()(const State& s) const noexcept;
    };
    struct StateEq {
        bool operator()(const State& a, const State& b) const;
    };
    struct Entry {
        static constexpr std::size_t kNone = ~std::size_t{0};
        static constexpr std::size_t kForever = ~std::size_t{0}; // definitive failure
        std::size_t proved_at = kNone; // least bound known to admit a proof
        std::size_t failed_to = 0;     // largest bound exhausted without one
    };

    // One bounded attempt: closure of the reachable states, then the least
    // proof depth of every node as a fixpoint. True iff the root proves.
    bool attempt(const State& root, std::size_t budget);

    std::unordered_map<State, Entry, StateHash, StateEq> memo_;
    bool cut_ = false;    // some branch of the current query was cut short
    bool capped_ = false; // the closure itself overflowed its size cap
};

// One-shot convenience wrapper around a fresh LbiOracle.
OracleVerdict brute_force_lbi(const RawSequent& s, std::size_t height_bound);

// Binary image of a canonical sequent, n-ary nodes folded to the right;
// normalizing the result gives back the argument.
RawSequent to_raw(const Sequent& s);

// Outcome of checking the decision procedure against the reference prover
// over a corpus. A disagreement is any of: the reference prover derives a
// sequent the decision procedure rejects; the decision procedure proves a
// sequent whose derivation fails the independent checker; or the reference
// prover cannot re-derive a proved sequent even at the confirmation bound.
struct CrossValidationReport {
    std::size_t total = 0;
    std::size_t depth_bound = 0;
    std::size_t confirm_depth = 0;
    std::size_t decide_provable = 0;
    std::size_t decide_unprovable = 0;
    std::size_t decide_resource_limited = 0;
    std::size_t oracle_provable = 0;
    std::size_t oracle_inconclusive = 0;
    std::size_t verified_derivations = 0;
    std::size_t oracle_confirmed = 0;
    std::vector<std::string> disagreements;

    bool agreed() const noexcept { return disagreements.empty(); }
};

// Runs both provers over the corpus and collects every disagreement, with the
// offending sequent and both sides' evidence in the message. The reference
// prover first runs at depth_bound; sequents the decision procedure proves
// are confirmed at depth_bound + 2. Memo tables are shared across the corpus
// and shed periodically so long runs keep a flat footprint.
CrossValidationReport cross_validate(const std::vector<Sequent>& corpus, std::size_t depth_bound);
CrossValidationReport cross_validate(const CorpusSpec& spec, std::size_t depth_bound);
CrossValidationReport cross_validate(const Sequent& s, std::size_t depth_bound);

// Plain-text / JSON summaries of a report: the counts plus every
// disagreement verbatim.
std::string report_text(const CrossValidationReport& r);
std::string report_json(const CrossValidationReport& r);

} // namespace bip
