#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "bip/structure.hpp"

namespace bip {

// The rules of the reduced n-ary calculus: Fig.-1 groups (A), (C), (D)
// without (ctr). The associativity/exchange/unit group and explicit
// contraction are absorbed by canonical antecedents plus the preimage
// variants below.
enum class RuleName : std::uint8_t {
    Id,
    OneR,
    BotL,
    TopR,
    OneL,
    Weak,
    AndL1,
    AndL2,
    AndR,
    OrL,
    OrR1,
    OrR2,
    ImpL,
    ImpR,
    WandL,
    WandR,
    TensorL,
    TensorR,
};

const char* rule_name(RuleName r) noexcept;
std::optional<RuleName> rule_from_name(std::string_view name);
bool is_axiom_rule(RuleName r) noexcept; // Id, OneR, BotL, TopR

// Child-index path from the antecedent root to a node, in canonical child
// order. The empty path is the root.
using Path = std::vector<std::size_t>;

// Role of one sibling of the principal formula when an implication-left rule
// splits its parent node: stay behind (Context), move into the auxiliary
// antecedent Y (Moved), or be implicitly contracted into both (Both —
// semicolon parents only, since the comma has no contraction).
enum class SiblingRole : std::uint8_t { Context, Moved, Both };

// Everything needed to replay one rule application deterministically.
struct VariantDescriptor {
    // Left rules: prefixes of `position`, outermost first; each marked node
    // of the principal path is replaced by a semicolon pair of itself before
    // the rule fires (the implicit-contraction schema).
    std::vector<Path> duplicated;
    // ImpL/WandL: one role per sibling of the principal leaf in the
    // duplicated tree, in child order with the principal excluded. WandL
    // never uses Both.
    std::vector<SiblingRole> sibling_roles;
    // ImpL only: whether the principal implication itself also joins Y (an
    // implicit contraction of the principal across its semicolon parent).
    // Always false for WandL — reusing the principal there would require
    // comma-contraction, which the logic rejects.
    bool y_includes_principal = false;
    // TensorR: indices of the conclusion's top-level comma children sent to
    // the left premise (the rest go right).
    std::vector<std::size_t> split_left;
    // Weak: indices of the semicolon node's children that are deleted.
    std::vector<std::size_t> removed;
};

struct RuleApplication {
    RuleName rule;
    std::optional<Path> position; // left rules: the principal leaf; Weak: the semicolon node
    VariantDescriptor variant;
    std::vector<Sequent> premises; // empty iff rule is an axiom
};

// Axiom recognition: Id (antecedent exactly the succedent leaf), OneR
// (EmptyM |- 1), BotL (any antecedent leaf is bot), TopR (succedent top).
// Reporting priority when several close: TopR > BotL > Id > OneR.
std::optional<RuleName> axioms(const Sequent& s);

// One preimage of the canonical antecedent under reduce, together with where
// the tracked leaf went.
struct PreimageVariant {
    StarPtr tree;                // W with reduce(W) = z
    Path leaf;                   // the designated copy of the tracked leaf, in W
    std::vector<Path> duplicated; // which path nodes of z were duplicated
};

// All 2^(path length + 1) duplication variants of the root-to-`pos` path:
// each subset of path nodes (the leaf included) is replaced by a semicolon
// pair of itself, designated copy first, alternation maintained by merging.
// Ordered by number of duplications, the identity variant first.
std::vector<PreimageVariant> preimage_variants(const NormalBunch& z, const Path& pos);

// Every rule application of the reduced calculus whose conclusion is s,
// premises canonical, deduplicated by (rule, premise list) keeping the
// variant with the fewest duplications. Axioms are reported by axioms(), not
// here.
std::vector<RuleApplication> expand(const Sequent& s);

// Independent instance check: recomputes the premise list from the variant
// descriptor alone (no enumeration) and compares with app.premises; for
// premise-free applications, checks axioms(conclusion) == app.rule.
bool check_instance(const Sequent& conclusion, const RuleApplication& app);

} // namespace bip
