#pragma once

#include <cstddef>
#include <vector>

#include "bip/structure.hpp"

namespace bip {

// Where a critical pair comes from. When the same (left, right) structures
// arise from several sources the pair is reported once, tagged with the
// smallest rank here.
enum class PairKind : std::uint8_t {
    Root,       // <X : A> for the whole sequent X |- A
    Diagonal,   // <B : B> for a formula occurrence B (an antecedent leaf or the succedent)
    Antecedent, // <U : B> for a leaf child B of a semicolon node, U the join of its siblings
};

const char* pair_kind_name(PairKind k) noexcept;

struct CriticalPair {
    NormalBunch left;
    NormalBunch right; // a Leaf, or the succedent viewed as structure
    PairKind kind;

    std::size_t size() const { return left.size() + right.size(); }
};

// The complete critical-pair set of a canonical sequent:
//   (i)  the root pair <X : A>;
//   (ii) a diagonal pair <B : B> per formula occurrence (each antecedent leaf
//        and the succedent);
//   (iii) per semicolon node and per Leaf child B of it, the antecedent pair
//        <U : B> where U is the semicolon-join of all remaining children of
//        that node (the child itself when only one remains).
// Deduplicated on (left, right); deterministic order.
std::vector<CriticalPair> critical_pairs(const Sequent& s);

// The maximum critical-pair size. At least 2 for any sequent (the succedent's
// diagonal pair contributes |A| + |A|).
std::size_t weight(const Sequent& s);

// Size of the largest formula occurring in the sequent (antecedent leaves and
// the succedent). Always at least 1, and at most weight(s) / 2 via the
// diagonal pairs.
std::size_t max_formula_size(const Sequent& s);

// Weight can exceed the conclusion's on backward steps that collapse a binary
// comma node under a semicolon: OneL dropping the unit, WandL moving every
// sibling, and Weak when deleting semicolon children reduces one to Em and
// the comma-unit law then erases it. The survivor becomes semicolon-separated
// and forms a new antecedent pair <U : f> with |U| <= |X| and f a formula of
// the conclusion. This is the resulting sound ceiling for any premise of any
// rule applied backwards to s: max(weight(s), |X| + max_formula_size(s)).
std::size_t premise_weight_bound(const Sequent& s);

} // namespace bip
