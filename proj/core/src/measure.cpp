#include "bip/measure.hpp"

#include <algorithm>

#include "bip/errors.hpp"

namespace bip {
namespace {

NormalBunch as_structure(const FormulaPtr& f) { return reduce(StarBunch::leaf(f)); }

void collect(const StarPtr& node, std::vector<CriticalPair>& out) {
    if (node->kind() == StructKind::Leaf) {
        NormalBunch self = as_structure(node->formula());
        out.push_back(CriticalPair{self, self, PairKind::Diagonal});
        return;
    }
    if (node->kind() == StructKind::Semi) {
        for (std::size_t i = 0; i < node->children().size(); ++i) {
            const StarPtr& child = node->children()[i];
            if (child->kind() != StructKind::Leaf) continue;
            std::vector<StarPtr> rest;
            rest.reserve(node->children().size() - 1);
            for (std::size_t j = 0; j < node->children().size(); ++j)
                if (j != i) rest.push_back(node->children()[j]);
            NormalBunch u = reduce(star_join(StructKind::Semi, std::move(rest)));
            out.push_back(CriticalPair{u, as_structure(child->formula()), PairKind::Antecedent});
        }
    }
    for (const StarPtr& child : node->children()) collect(child, out);
}

} // namespace

const char* pair_kind_name(PairKind k) noexcept {
    switch (k) {
    case PairKind::Root: return "root";
    case PairKind::Diagonal: return "diagonal";
    case PairKind::Antecedent: return "antecedent";
    }
    return "?";
}

std::vector<CriticalPair> critical_pairs(const Sequent& s) {
    std::vector<CriticalPair> out;
    out.push_back(CriticalPair{s.antecedent, as_structure(s.succedent), PairKind::Root});
    NormalBunch succ = as_structure(s.succedent);
    out.push_back(CriticalPair{succ, succ, PairKind::Diagonal});
    collect(s.antecedent.node(), out);

    // Deduplicate on (left, right), keeping the smallest PairKind rank; the
    // sort also fixes the output order.
    std::sort(out.begin(), out.end(), [](const CriticalPair& a, const CriticalPair& b) {
        if (auto c = canonical_compare(a.left, b.left); c != 0) return c < 0;
        if (auto c = canonical_compare(a.right, b.right); c != 0) return c < 0;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const CriticalPair& a, const CriticalPair& b) {
                              return normal_equal(a.left, b.left) && normal_equal(a.right, b.right);
                          }),
              out.end());
    return out;
}

namespace {

// Allocation-free maximum over the pair set: the join U of a semicolon
// node's remaining children has additive size, i.e. the maximum of their
// individual sizes, so no joined structure needs to be built to know |U|.
std::size_t max_pair_size(const StarPtr& node) {
    std::size_t best = 0;
    if (node->kind() == StructKind::Leaf) return 2 * node->size();
    if (node->kind() == StructKind::Semi) {
        const auto kids = node->children();
        // Top two child sizes give max_{j != i} size_j for every i.
        std::size_t top1 = 0, top2 = 0;
        for (const StarPtr& c : kids) {
            std::size_t sz = c->size();
            if (sz >= top1) {
                top2 = top1;
                top1 = sz;
            } else if (sz > top2) {
                top2 = sz;
            }
        }
        for (const StarPtr& c : kids)
            if (c->kind() == StructKind::Leaf)
                best = std::max(best, (c->size() == top1 ? top2 : top1) + c->size());
    }
    for (const StarPtr& c : node->children()) best = std::max(best, max_pair_size(c));
    return best;
}

} // namespace

std::size_t weight(const Sequent& s) {
    std::size_t best = s.antecedent.size() + s.succedent->size(); // root pair
    best = std::max(best, 2 * s.succedent->size());               // succedent diagonal
    return std::max(best, max_pair_size(s.antecedent.node()));
}

namespace {

std::size_t max_leaf_size(const StarPtr& node) {
    if (node->kind() == StructKind::Leaf) return node->size();
    std::size_t best = 0;
    for (const StarPtr& c : node->children()) best = std::max(best, max_leaf_size(c));
    return best;
}

} // namespace

std::size_t max_formula_size(const Sequent& s) {
    return std::max(s.succedent->size(), max_leaf_size(s.antecedent.node()));
}

std::size_t premise_weight_bound(const Sequent& s) {
    return std::max(weight(s), s.antecedent.size() + max_formula_size(s));
}

} // namespace bip
