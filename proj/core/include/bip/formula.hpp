#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bip {

// Propositional language: the free combination of additive (intuitionistic)
// and multiplicative (linear) connectives over a shared stock of variables.
enum class FormulaKind : std::uint8_t {
    Var,    // propositional variable
    Top,    // additive truth
    Bot,    // falsum
    One,    // multiplicative unit
    And,    // additive conjunction
    Or,     // disjunction
    Imp,    // additive (intuitionistic) implication
    Tensor, // multiplicative conjunction
    Wand,   // multiplicative implication
};

bool is_atom(FormulaKind k) noexcept;   // Var or a constant
bool is_binary(FormulaKind k) noexcept; // And/Or/Imp/Tensor/Wand

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Size and hash are cached at construction, so both
// are O(1) after the fact; equality short-circuits through them.
class Formula {
public:
    static FormulaPtr var(std::string name);
    static FormulaPtr top();
    static FormulaPtr bot();
    static FormulaPtr one();
    static FormulaPtr make(FormulaKind op, FormulaPtr left, FormulaPtr right);

    FormulaKind kind() const noexcept { return kind_; }
    const std::string& name() const { return name_; } // Var only
    const FormulaPtr& left() const { return left_; }   // binary only
    const FormulaPtr& right() const { return right_; } // binary only

    std::size_t size() const noexcept { return size_; } // atoms count 1, C op D counts |C|+|D|+1
    std::uint64_t hash() const noexcept { return hash_; }

private:
    Formula(FormulaKind kind, std::string name, FormulaPtr left, FormulaPtr right);

    FormulaKind kind_;
    std::string name_;
    FormulaPtr left_;
    FormulaPtr right_;
    std::size_t size_;
    std::uint64_t hash_;
};

// Convenience constructors matching the connective names.
FormulaPtr fand(FormulaPtr l, FormulaPtr r);
FormulaPtr forr(FormulaPtr l, FormulaPtr r);
FormulaPtr fimp(FormulaPtr l, FormulaPtr r);
FormulaPtr ftensor(FormulaPtr l, FormulaPtr r);
FormulaPtr fwand(FormulaPtr l, FormulaPtr r);

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

// Total order: by connective rank (the FormulaKind declaration order), then
// recursively on operands, with variables compared by name.
std::strong_ordering formula_compare(const FormulaPtr& a, const FormulaPtr& b);

std::size_t formula_size(const FormulaPtr& f);

struct FormulaPtrHash {
    std::size_t operator()(const FormulaPtr& f) const noexcept { return static_cast<std::size_t>(f->hash()); }
};
struct FormulaPtrEq {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return formula_equal(a, b); }
};
struct FormulaPtrLess {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return formula_compare(a, b) < 0; }
};

} // namespace bip
