#pragma once

#include <cstdint>
#include <memory>

#include "bip/formula.hpp"

namespace bip {

// Antecedent trees exactly as written: binary combination nodes plus the two
// structural units. The comma has no weakening or contraction; the semicolon
// has both. This "raw" shape is what the parser produces; search works on the
// flattened canonical shape instead (see structure.hpp).
enum class BunchKind : std::uint8_t {
    Leaf,   // a formula
    EmptyM, // multiplicative unit
    EmptyA, // additive unit
    Comma,  // multiplicative combination
    Semi,   // additive combination
};

class Bunch;
using BunchPtr = std::shared_ptr<const Bunch>;

class Bunch {
public:
    static BunchPtr leaf(FormulaPtr f);
    static BunchPtr empty_m();
    static BunchPtr empty_a();
    static BunchPtr comma(BunchPtr left, BunchPtr right);
    static BunchPtr semi(BunchPtr left, BunchPtr right);

    BunchKind kind() const noexcept { return kind_; }
    const FormulaPtr& formula() const { return formula_; } // Leaf only
    const BunchPtr& left() const { return left_; }         // Comma/Semi only
    const BunchPtr& right() const { return right_; }       // Comma/Semi only

private:
    Bunch(BunchKind kind, FormulaPtr formula, BunchPtr left, BunchPtr right);

    BunchKind kind_;
    FormulaPtr formula_;
    BunchPtr left_;
    BunchPtr right_;
};

bool bunch_equal(const BunchPtr& a, const BunchPtr& b);

// A sequent exactly as parsed, before any normalization.
struct RawSequent {
    BunchPtr antecedent;
    FormulaPtr succedent;
};

// Formula image of a bunch: comma becomes Tensor, semicolon becomes And
// (left-associated), EmptyM becomes One, EmptyA becomes Top.
FormulaPtr interpret(const BunchPtr& x);

// All subformulae of the sequent's formulas, closed under the subformula
// relation, deduplicated, in canonical formula order.
std::vector<FormulaPtr> subformulas(const RawSequent& s);

} // namespace bip
