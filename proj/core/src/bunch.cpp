#include "bip/bunch.hpp"

#include <algorithm>

#include "bip/errors.hpp"

namespace bip {

Bunch::Bunch(BunchKind kind, FormulaPtr formula, BunchPtr left, BunchPtr right)
    : kind_(kind), formula_(std::move(formula)), left_(std::move(left)), right_(std::move(right)) {}

BunchPtr Bunch::leaf(FormulaPtr f) {
    if (!f) throw LogicError("Bunch::leaf expects a formula");
    return BunchPtr(new Bunch(BunchKind::Leaf, std::move(f), nullptr, nullptr));
}

BunchPtr Bunch::empty_m() {
    static const BunchPtr b(new Bunch(BunchKind::EmptyM, nullptr, nullptr, nullptr));
    return b;
}

BunchPtr Bunch::empty_a() {
    static const BunchPtr b(new Bunch(BunchKind::EmptyA, nullptr, nullptr, nullptr));
    return b;
}

BunchPtr Bunch::comma(BunchPtr left, BunchPtr right) {
    if (!left || !right) throw LogicError("Bunch::comma expects two parts");
    return BunchPtr(new Bunch(BunchKind::Comma, nullptr, std::move(left), std::move(right)));
}

BunchPtr Bunch::semi(BunchPtr left, BunchPtr right) {
    if (!left || !right) throw LogicError("Bunch::semi expects two parts");
    return BunchPtr(new Bunch(BunchKind::Semi, nullptr, std::move(left), std::move(right)));
}

bool bunch_equal(const BunchPtr& a, const BunchPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->kind() != b->kind()) return false;
    switch (a->kind()) {
    case BunchKind::Leaf: return formula_equal(a->formula(), b->formula());
    case BunchKind::EmptyM:
    case BunchKind::EmptyA: return true;
    default: return bunch_equal(a->left(), b->left()) && bunch_equal(a->right(), b->right());
    }
}

FormulaPtr interpret(const BunchPtr& x) {
    switch (x->kind()) {
    case BunchKind::Leaf: return x->formula();
    case BunchKind::EmptyM: return Formula::one();
    case BunchKind::EmptyA: return Formula::top();
    case BunchKind::Comma: return ftensor(interpret(x->left()), interpret(x->right()));
    case BunchKind::Semi: return fand(interpret(x->left()), interpret(x->right()));
    }
    throw LogicError("interpret: unreachable");
}

namespace {

void collect_subformulas(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    out.push_back(f);
    if (is_binary(f->kind())) {
        collect_subformulas(f->left(), out);
        collect_subformulas(f->right(), out);
    }
}

void collect_leaf_formulas(const BunchPtr& x, std::vector<FormulaPtr>& out) {
    switch (x->kind()) {
    case BunchKind::Leaf: collect_subformulas(x->formula(), out); break;
    case BunchKind::Comma:
    case BunchKind::Semi:
        collect_leaf_formulas(x->left(), out);
        collect_leaf_formulas(x->right(), out);
        break;
    default: break;
    }
}

} // namespace

std::vector<FormulaPtr> subformulas(const RawSequent& s) {
    std::vector<FormulaPtr> out;
    collect_leaf_formulas(s.antecedent, out);
    collect_subformulas(s.succedent, out);
    std::sort(out.begin(), out.end(), FormulaPtrLess{});
    out.erase(std::unique(out.begin(), out.end(), FormulaPtrEq{}), out.end());
    return out;
}

} // namespace bip
