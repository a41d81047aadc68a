#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bip/calculus.hpp"
#include "bip/render.hpp"
#include "bip/structure.hpp"

namespace bip {

// One node of a proof: the sequent, the rule application that yields it, and
// the sub-proofs of the premises. Leaves carry axiom rules. Nodes are
// immutable and freely shared between proofs (the search memoizes sub-proofs).
struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    Sequent sequent;
    RuleName rule;
    std::optional<Path> position;
    VariantDescriptor variant;
    std::vector<DerivationPtr> children;
};

enum class Outcome : std::uint8_t {
    Provable,
    Unprovable,
    ResourceLimit, // visit cap hit or a rule enumeration overflowed its guard
};

const char* outcome_name(Outcome o) noexcept;

struct SearchConfig {
    // Hard cap on expanded nodes; unset means the search runs to completion
    // (always finite, but potentially large).
    std::optional<std::size_t> max_visited;
    // Gates the per-call distinct-sequent set (the one stat with a real cost);
    // the plain counters are always tracked.
    bool collect_stats = true;
    // When false no proof objects are built; Provable results carry a null
    // derivation. A Prover instance must keep one setting for its lifetime.
    bool emit_derivation = true;
};

struct SearchStats {
    std::size_t nodes_expanded = 0;   // frames that ran rule enumeration
    std::size_t memo_hits = 0;        // premises resolved from the memo table
    std::size_t max_stack_depth = 0;  // deepest branch explored
    std::size_t distinct_sequents = 0; // unique sequents visited (0 when not collected)
    std::size_t root_weight = 0;
    std::size_t max_height_seen = 0;  // max antecedent height over visited sequents
};

struct Result {
    Outcome outcome = Outcome::Unprovable;
    DerivationPtr derivation; // set iff Provable and emit_derivation
    SearchStats stats;
};

// Backward proof search evaluated as a tabled least fixed point over the
// shared goal graph: every distinct sequent is expanded at most once per
// Prover lifetime, and a strongly connected cluster of goals that completes
// without producing a proof fails as a whole. Both verdicts are independent
// of how the goal was reached, so the persistent memo table is sound to
// reuse across a batch of related sequents.
class Prover {
public:
    explicit Prover(SearchConfig cfg = {});

    Result decide(const Sequent& s);

    void clear();                  // drop the memo table
    std::size_t memo_size() const; // sequents with a cached verdict

private:
    struct MemoEntry {
        Outcome outcome;
        DerivationPtr derivation;
    };

    SearchConfig cfg_;
    std::unordered_map<Sequent, MemoEntry, SequentHash, SequentEq> memo_;
};

// One-shot search. Provable iff the sequent has a derivation in which no
// branch repeats a sequent (equivalent to plain derivability: splicing at the
// first repetition shrinks any derivation into a repetition-free one).
Result decide(const Sequent& s, const SearchConfig& cfg = {});

// parse -> flatten -> normalize -> decide. By conservativity of the
// normalized calculus, the verdict answers derivability of the raw sequent.
Result decide_text(std::string_view text, const SearchConfig& cfg = {});

// Independent proof checking: every node must be a valid rule instance per
// check_instance and every leaf an axiom. Does not consult the search.
bool verify(const DerivationPtr& d);

// Diagnostics derived from the root sequent: its weight, the strict bound on
// antecedent heights during search (2*weight + 1), and the subformula count.
struct SearchBounds {
    std::size_t weight = 0;
    std::size_t height_bound = 0;
    std::size_t subformula_count = 0;
};

SearchBounds search_bounds(const Sequent& s);

// The theoretical sequent-space bound, reported symbolically (it is far too
// loose to materialize): "|Omega(2w+2)| * sf" with the numbers filled in.
std::string space_bound_symbolic(const Sequent& s);

// Proof rendering. Text: one sequent per line, children indented two spaces,
// rule names in brackets. Latex: a bussproofs prooftree. Json:
// {"sequent": <text render>, "rule": <name>, "variant": {...}, "children":
// [...]} where variant holds position (omitted for right rules/axioms),
// duplicated, sibling_roles, y_includes_principal, split_left, removed.
std::string render(const DerivationPtr& d, Style style = Style::Text);

// Stats as a stable JSON object: the SearchStats fields plus the bound
// diagnostics and the symbolic space bound for the given root sequent.
std::string stats_json(const SearchStats& st, const Sequent& root);

} // namespace bip
