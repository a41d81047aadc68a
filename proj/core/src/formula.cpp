#include "bip/formula.hpp"

#include "bip/errors.hpp"

namespace bip {

bool is_atom(FormulaKind k) noexcept {
    return k == FormulaKind::Var || k == FormulaKind::Top || k == FormulaKind::Bot ||
           k == FormulaKind::One;
}

bool is_binary(FormulaKind k) noexcept { return !is_atom(k); }

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t string_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

Formula::Formula(FormulaKind kind, std::string name, FormulaPtr left, FormulaPtr right)
    : kind_(kind), name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {
    if (kind_ == FormulaKind::Var) {
        size_ = 1;
        hash_ = mix(0x56, string_hash(name_));
    } else if (is_atom(kind_)) {
        size_ = 1;
        hash_ = mix(0xC0, static_cast<std::uint64_t>(kind_));
    } else {
        size_ = left_->size() + right_->size() + 1;
        std::uint64_t h = mix(0xB1, static_cast<std::uint64_t>(kind_));
        h = mix(h, left_->hash());
        hash_ = mix(h, right_->hash());
    }
}

FormulaPtr Formula::var(std::string name) {
    if (name.empty()) throw LogicError("variable name must be nonempty");
    return FormulaPtr(new Formula(FormulaKind::Var, std::move(name), nullptr, nullptr));
}

FormulaPtr Formula::top() {
    static const FormulaPtr f(new Formula(FormulaKind::Top, {}, nullptr, nullptr));
    return f;
}

FormulaPtr Formula::bot() {
    static const FormulaPtr f(new Formula(FormulaKind::Bot, {}, nullptr, nullptr));
    return f;
}

FormulaPtr Formula::one() {
    static const FormulaPtr f(new Formula(FormulaKind::One, {}, nullptr, nullptr));
    return f;
}

FormulaPtr Formula::make(FormulaKind op, FormulaPtr left, FormulaPtr right) {
    if (!is_binary(op)) throw LogicError("Formula::make expects a binary connective");
    if (!left || !right) throw LogicError("Formula::make expects two operands");
    return FormulaPtr(new Formula(op, {}, std::move(left), std::move(right)));
}

FormulaPtr fand(FormulaPtr l, FormulaPtr r) { return Formula::make(FormulaKind::And, std::move(l), std::move(r)); }
FormulaPtr forr(FormulaPtr l, FormulaPtr r) { return Formula::make(FormulaKind::Or, std::move(l), std::move(r)); }
FormulaPtr fimp(FormulaPtr l, FormulaPtr r) { return Formula::make(FormulaKind::Imp, std::move(l), std::move(r)); }
FormulaPtr ftensor(FormulaPtr l, FormulaPtr r) { return Formula::make(FormulaKind::Tensor, std::move(l), std::move(r)); }
FormulaPtr fwand(FormulaPtr l, FormulaPtr r) { return Formula::make(FormulaKind::Wand, std::move(l), std::move(r)); }

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
    if (a->kind() == FormulaKind::Var) return a->name() == b->name();
    if (is_atom(a->kind())) return true;
    return formula_equal(a->left(), b->left()) && formula_equal(a->right(), b->right());
}

std::strong_ordering formula_compare(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return std::strong_ordering::equal;
    if (auto c = a->kind() <=> b->kind(); c != 0) return c;
    if (a->kind() == FormulaKind::Var) return a->name() <=> b->name();
    if (is_atom(a->kind())) return std::strong_ordering::equal;
    if (auto c = formula_compare(a->left(), b->left()); c != 0) return c;
    return formula_compare(a->right(), b->right());
}

std::size_t formula_size(const FormulaPtr& f) { return f->size(); }

} // namespace bip
