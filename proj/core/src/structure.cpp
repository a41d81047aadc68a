#include "bip/structure.hpp"

#include <algorithm>
#include <functional>

#include "bip/errors.hpp"

namespace bip {
namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

StructKind unit_of(StructKind op) {
    return op == StructKind::Comma ? StructKind::EmptyM : StructKind::EmptyA;
}

} // namespace

StarBunch::StarBunch(StructKind kind, FormulaPtr formula, std::vector<StarPtr> children)
    : kind_(kind), formula_(std::move(formula)), children_(std::move(children)) {
    std::uint64_t h = mix(0xA7, static_cast<std::uint64_t>(kind_));
    if (formula_) h = mix(h, formula_->hash());
    for (const StarPtr& c : children_) h = mix(h, c->hash());
    hash_ = h;

    switch (kind_) {
    case StructKind::Leaf:
        size_ = formula_->size();
        height_ = 0;
        break;
    case StructKind::EmptyM:
    case StructKind::EmptyA:
        size_ = 0;
        height_ = 0;
        break;
    case StructKind::Comma: {
        size_ = children_.size() - 1;
        height_ = 0;
        for (const StarPtr& c : children_) {
            size_ += c->size_;
            height_ = std::max(height_, c->height_ + 1);
        }
        break;
    }
    case StructKind::Semi: {
        size_ = 0;
        height_ = 0;
        for (const StarPtr& c : children_) {
            size_ = std::max(size_, c->size_);
            height_ = std::max(height_, c->height_ + 1);
        }
        break;
    }
    }
}

StarPtr StarBunch::leaf(FormulaPtr f) {
    if (!f) throw LogicError("StarBunch::leaf expects a formula");
    return StarPtr(new StarBunch(StructKind::Leaf, std::move(f), {}));
}

StarPtr StarBunch::empty_m() {
    static const StarPtr x(new StarBunch(StructKind::EmptyM, nullptr, {}));
    return x;
}

StarPtr StarBunch::empty_a() {
    static const StarPtr x(new StarBunch(StructKind::EmptyA, nullptr, {}));
    return x;
}

StarPtr StarBunch::comma(std::vector<StarPtr> children) {
    if (children.size() < 2) throw LogicError("comma node needs at least two children");
    return StarPtr(new StarBunch(StructKind::Comma, nullptr, std::move(children)));
}

StarPtr StarBunch::semi(std::vector<StarPtr> children) {
    if (children.size() < 2) throw LogicError("semi node needs at least two children");
    return StarPtr(new StarBunch(StructKind::Semi, nullptr, std::move(children)));
}

bool tree_equal(const StarPtr& a, const StarPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->hash() != b->hash() || a->kind() != b->kind()) return false;
    if (a->kind() == StructKind::Leaf) return formula_equal(a->formula(), b->formula());
    auto ca = a->children(), cb = b->children();
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (!tree_equal(ca[i], cb[i])) return false;
    return true;
}

namespace {

int variant_rank(StructKind k) {
    switch (k) {
    case StructKind::Leaf: return 0;
    case StructKind::EmptyA: return 1;
    case StructKind::EmptyM: return 2;
    case StructKind::Semi: return 3;
    case StructKind::Comma: return 4;
    }
    throw LogicError("variant_rank: unreachable");
}

} // namespace

std::strong_ordering tree_compare(const StarPtr& a, const StarPtr& b) {
    if (a.get() == b.get()) return std::strong_ordering::equal;
    if (auto c = variant_rank(a->kind()) <=> variant_rank(b->kind()); c != 0) return c;
    if (a->kind() == StructKind::Leaf) return formula_compare(a->formula(), b->formula());
    auto ca = a->children(), cb = b->children();
    std::size_t n = std::min(ca.size(), cb.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = tree_compare(ca[i], cb[i]); c != 0) return c;
    return ca.size() <=> cb.size();
}

std::size_t tree_size(const StarPtr& x) { return x->size(); }

std::size_t tree_height(const StarPtr& x) { return x->height(); }

bool is_star(const StarPtr& x) {
    switch (x->kind()) {
    case StructKind::Leaf:
    case StructKind::EmptyM:
    case StructKind::EmptyA: return x->children().empty();
    case StructKind::Comma:
    case StructKind::Semi:
        if (x->children().size() < 2) return false;
        for (const StarPtr& c : x->children()) {
            if (c->kind() == x->kind()) return false;
            if (!is_star(c)) return false;
        }
        return true;
    }
    return false;
}

bool is_normal(const StarPtr& x) {
    switch (x->kind()) {
    case StructKind::Leaf:
    case StructKind::EmptyM:
    case StructKind::EmptyA: return x->children().empty();
    case StructKind::Comma:
    case StructKind::Semi: {
        if (x->children().size() < 2) return false;
        StructKind forbidden_unit = unit_of(x->kind());
        const bool semi = x->kind() == StructKind::Semi;
        for (std::size_t i = 0; i < x->children().size(); ++i) {
            const StarPtr& c = x->children()[i];
            if (c->kind() == x->kind() || c->kind() == forbidden_unit) return false;
            if (!is_normal(c)) return false;
            if (i > 0) {
                auto ord = tree_compare(x->children()[i - 1], c);
                if (semi ? ord >= 0 : ord > 0) return false;
            }
        }
        return true;
    }
    }
    return false;
}

StarPtr star(const BunchPtr& x) {
    switch (x->kind()) {
    case BunchKind::Leaf: return StarBunch::leaf(x->formula());
    case BunchKind::EmptyM: return StarBunch::empty_m();
    case BunchKind::EmptyA: return StarBunch::empty_a();
    case BunchKind::Comma: return star_join(StructKind::Comma, star(x->left()), star(x->right()));
    case BunchKind::Semi: return star_join(StructKind::Semi, star(x->left()), star(x->right()));
    }
    throw LogicError("star: unreachable");
}

StarPtr star_join(StructKind op, const StarPtr& a, const StarPtr& b) {
    if (op != StructKind::Comma && op != StructKind::Semi)
        throw LogicError("star_join expects a combination connective");
    std::vector<StarPtr> children;
    if (a->kind() == op) children.insert(children.end(), a->children().begin(), a->children().end());
    else children.push_back(a);
    if (b->kind() == op) children.insert(children.end(), b->children().begin(), b->children().end());
    else children.push_back(b);
    return op == StructKind::Comma ? StarBunch::comma(std::move(children))
                                   : StarBunch::semi(std::move(children));
}

StarPtr star_join(StructKind op, std::vector<StarPtr> parts) {
    if (parts.empty())
        return op == StructKind::Comma ? StarBunch::empty_m() : StarBunch::empty_a();
    StarPtr acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = star_join(op, acc, parts[i]);
    return acc;
}

namespace {

// Core of reduce(): returns a fully normalized equivalent of x. Children are
// normalized first; same-kind children (which can appear once a grandchild
// collapses) are spliced in, redundant units dropped, semicolon duplicates
// merged, single survivors unwrapped, and the rest sorted.
StarPtr reduce_node(const StarPtr& x) {
    if (x->reduced_flag()) return x;
    switch (x->kind()) {
    case StructKind::Leaf:
    case StructKind::EmptyM:
    case StructKind::EmptyA:
        x->mark_reduced();
        return x;
    default: break;
    }

    const StructKind op = x->kind();
    const StructKind drop = unit_of(op);
    std::vector<StarPtr> kids;
    kids.reserve(x->children().size());
    for (const StarPtr& raw : x->children()) {
        StarPtr c = reduce_node(raw);
        if (c->kind() == op) {
            // Splice: the child's children are already normalized non-op
            // non-unit nodes.
            kids.insert(kids.end(), c->children().begin(), c->children().end());
        } else if (c->kind() != drop) {
            kids.push_back(c);
        }
    }

    if (kids.empty())
        return op == StructKind::Comma ? StarBunch::empty_m() : StarBunch::empty_a();

    std::sort(kids.begin(), kids.end(),
              [](const StarPtr& a, const StarPtr& b) { return tree_compare(a, b) < 0; });
    if (op == StructKind::Semi)
        kids.erase(std::unique(kids.begin(), kids.end(),
                               [](const StarPtr& a, const StarPtr& b) { return tree_equal(a, b); }),
                   kids.end());

    if (kids.size() == 1) return kids[0];

    StarPtr out = op == StructKind::Comma ? StarBunch::comma(std::move(kids))
                                          : StarBunch::semi(std::move(kids));
    out->mark_reduced();
    return out;
}

} // namespace

NormalBunch reduce(const StarPtr& x) { return NormalBunch(reduce_node(x)); }

bool normal_equal(const NormalBunch& a, const NormalBunch& b) { return tree_equal(a.node(), b.node()); }

std::strong_ordering canonical_compare(const NormalBunch& a, const NormalBunch& b) {
    return tree_compare(a.node(), b.node());
}

FormulaPtr interpret(const StarPtr& x) {
    switch (x->kind()) {
    case StructKind::Leaf: return x->formula();
    case StructKind::EmptyM: return Formula::one();
    case StructKind::EmptyA: return Formula::top();
    case StructKind::Comma:
    case StructKind::Semi: {
        FormulaPtr acc = interpret(x->children()[0]);
        for (std::size_t i = 1; i < x->children().size(); ++i) {
            FormulaPtr rhs = interpret(x->children()[i]);
            acc = x->kind() == StructKind::Comma ? ftensor(std::move(acc), std::move(rhs))
                                                 : fand(std::move(acc), std::move(rhs));
        }
        return acc;
    }
    }
    throw LogicError("interpret: unreachable");
}

FormulaPtr interpret(const NormalBunch& x) { return interpret(x.node()); }

Sequent to_sequent(const RawSequent& raw) {
    return Sequent{reduce(star(raw.antecedent)), raw.succedent};
}

bool sequent_equal(const Sequent& a, const Sequent& b) {
    return formula_equal(a.succedent, b.succedent) && normal_equal(a.antecedent, b.antecedent);
}

std::strong_ordering sequent_compare(const Sequent& a, const Sequent& b) {
    if (auto c = canonical_compare(a.antecedent, b.antecedent); c != 0) return c;
    return formula_compare(a.succedent, b.succedent);
}

std::uint64_t sequent_hash(const Sequent& s) {
    return mix(s.antecedent.hash(), s.succedent->hash());
}

namespace {

void collect_subformulas_rec(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    out.push_back(f);
    if (is_binary(f->kind())) {
        collect_subformulas_rec(f->left(), out);
        collect_subformulas_rec(f->right(), out);
    }
}

void collect_tree_formulas(const StarPtr& x, std::vector<FormulaPtr>& out) {
    if (x->kind() == StructKind::Leaf) collect_subformulas_rec(x->formula(), out);
    for (const StarPtr& c : x->children()) collect_tree_formulas(c, out);
}

} // namespace

std::vector<FormulaPtr> subformulas(const Sequent& s) {
    std::vector<FormulaPtr> out;
    collect_tree_formulas(s.antecedent.node(), out);
    collect_subformulas_rec(s.succedent, out);
    std::sort(out.begin(), out.end(), FormulaPtrLess{});
    out.erase(std::unique(out.begin(), out.end(), FormulaPtrEq{}), out.end());
    return out;
}

namespace {

std::string tree_text(const StarPtr& x, bool under_comma) {
    switch (x->kind()) {
    case StructKind::Leaf: return render(x->formula(), Style::Text);
    case StructKind::EmptyM: return "Em";
    case StructKind::EmptyA: return "Ea";
    case StructKind::Comma: {
        std::string s;
        for (std::size_t i = 0; i < x->children().size(); ++i) {
            if (i) s += ", ";
            s += tree_text(x->children()[i], true);
        }
        return s;
    }
    case StructKind::Semi: {
        std::string s;
        for (std::size_t i = 0; i < x->children().size(); ++i) {
            if (i) s += " ; ";
            s += tree_text(x->children()[i], false);
        }
        return under_comma ? "(" + s + ")" : s;
    }
    }
    throw LogicError("tree_text: unreachable");
}

std::string tree_latex(const StarPtr& x, bool under_comma) {
    switch (x->kind()) {
    case StructKind::Leaf: return render(x->formula(), Style::Latex);
    case StructKind::EmptyM: return "\\varnothing_{m}";
    case StructKind::EmptyA: return "\\varnothing_{a}";
    case StructKind::Comma: {
        std::string s;
        for (std::size_t i = 0; i < x->children().size(); ++i) {
            if (i) s += " , ";
            s += tree_latex(x->children()[i], true);
        }
        return s;
    }
    case StructKind::Semi: {
        std::string s;
        for (std::size_t i = 0; i < x->children().size(); ++i) {
            if (i) s += " ; ";
            s += tree_latex(x->children()[i], false);
        }
        return under_comma ? "(" + s + ")" : s;
    }
    }
    throw LogicError("tree_latex: unreachable");
}

} // namespace

std::string render(const StarPtr& x, Style style) {
    switch (style) {
    case Style::Text: return tree_text(x, false);
    case Style::Latex: return tree_latex(x, false);
    case Style::Json: {
        // Reuse the binary-bunch schema: rebuild a binary view on the fly.
        std::function<BunchPtr(const StarPtr&)> bin = [&](const StarPtr& t) -> BunchPtr {
            switch (t->kind()) {
            case StructKind::Leaf: return Bunch::leaf(t->formula());
            case StructKind::EmptyM: return Bunch::empty_m();
            case StructKind::EmptyA: return Bunch::empty_a();
            default: {
                BunchPtr acc = bin(t->children()[0]);
                for (std::size_t i = 1; i < t->children().size(); ++i) {
                    BunchPtr rhs = bin(t->children()[i]);
                    acc = t->kind() == StructKind::Comma ? Bunch::comma(std::move(acc), std::move(rhs))
                                                         : Bunch::semi(std::move(acc), std::move(rhs));
                }
                return acc;
            }
            }
        };
        return render(bin(x), Style::Json);
    }
    }
    throw LogicError("render: unreachable");
}

std::string render(const NormalBunch& x, Style style) { return render(x.node(), style); }

std::string render(const Sequent& s, Style style) {
    switch (style) {
    case Style::Text: return render(s.antecedent, Style::Text) + " |- " + render(s.succedent, Style::Text);
    case Style::Latex:
        return render(s.antecedent, Style::Latex) + " \\vdash " + render(s.succedent, Style::Latex);
    case Style::Json:
        return std::string("{\"antecedent\":") + render(s.antecedent, Style::Json) +
               ",\"succedent\":" + render(s.succedent, Style::Json) + "}";
    }
    throw LogicError("render: unreachable");
}

} // namespace bip
