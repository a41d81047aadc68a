#include "bip/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "bip/errors.hpp"
#include "bip/prover.hpp"
#include "bip/render.hpp"

#include "json.hpp"

namespace bip {

namespace {

constexpr std::size_t kCorpusCeiling = std::size_t{1} << 20;

void ceiling_check(std::size_t count, const char* what) {
    if (count > kCorpusCeiling)
        throw CorpusTooLarge(std::string(what) + " would exceed the ceiling of " +
                             std::to_string(kCorpusCeiling) + " items");
}

// The formula stock, grouped by size then sorted, smaller sizes first.
std::vector<FormulaPtr> formula_stock(const CorpusSpec& spec) {
    std::vector<std::string> vars = spec.variables;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());

    std::vector<std::vector<FormulaPtr>> by_size(spec.max_formula_size + 1);
    for (const std::string& v : vars) by_size[1].push_back(Formula::var(v));
    if (spec.include_units) {
        by_size[1].push_back(Formula::top());
        by_size[1].push_back(Formula::bot());
        by_size[1].push_back(Formula::one());
    }

    static constexpr FormulaKind ops[] = {FormulaKind::And, FormulaKind::Or, FormulaKind::Imp,
                                          FormulaKind::Tensor, FormulaKind::Wand};
    std::size_t total = by_size[1].size();
    for (std::size_t n = 2; n <= spec.max_formula_size; ++n) {
        for (std::size_t ln = 1; ln + 1 < n; ++ln) {
            for (const FormulaPtr& l : by_size[ln]) {
                for (const FormulaPtr& r : by_size[n - 1 - ln]) {
                    for (FormulaKind op : ops) {
                        by_size[n].push_back(Formula::make(op, l, r));
                        ceiling_check(++total, "the formula stock");
                    }
                }
            }
        }
    }

    std::vector<FormulaPtr> out;
    out.reserve(total);
    for (auto& bucket : by_size) {
        std::sort(bucket.begin(), bucket.end(), FormulaPtrLess{});
        out.insert(out.end(), bucket.begin(), bucket.end());
    }
    return out;
}

struct PoolItem {
    StarPtr tree;
    StructKind root;
    std::size_t leaves;
};

// Child multisets (or sets, when `distinct`) drawn from `cands` in index
// order, using exactly `remaining` leaves over at least two children.
template <typename Emit>
void choose_children(const std::vector<PoolItem>& cands, std::size_t start, std::size_t remaining,
                     bool distinct, std::vector<StarPtr>& acc, Emit&& emit) {
    if (remaining == 0) {
        if (acc.size() >= 2) emit(acc);
        return;
    }
    for (std::size_t i = start; i < cands.size(); ++i) {
        if (cands[i].leaves > remaining) continue;
        acc.push_back(cands[i].tree);
        choose_children(cands, distinct ? i + 1 : i, remaining - cands[i].leaves, distinct, acc,
                        emit);
        acc.pop_back();
    }
}

BunchPtr raw_of(const StarPtr& x) {
    switch (x->kind()) {
        case StructKind::Leaf: return Bunch::leaf(x->formula());
        case StructKind::EmptyM: return Bunch::empty_m();
        case StructKind::EmptyA: return Bunch::empty_a();
        default: break;
    }
    const auto kids = x->children();
    BunchPtr acc = raw_of(kids.back());
    for (std::size_t i = kids.size() - 1; i-- > 0;) {
        BunchPtr l = raw_of(kids[i]);
        acc = x->kind() == StructKind::Comma ? Bunch::comma(std::move(l), std::move(acc))
                                             : Bunch::semi(std::move(l), std::move(acc));
    }
    return acc;
}

bool contains_bot(const BunchPtr& x) {
    switch (x->kind()) {
        case BunchKind::Leaf: return x->formula()->kind() == FormulaKind::Bot;
        case BunchKind::Comma:
        case BunchKind::Semi: return contains_bot(x->left()) || contains_bot(x->right());
        default: return false;
    }
}

} // namespace

std::vector<Sequent> enumerate_sequents(const CorpusSpec& spec) {
    if (spec.max_formula_size == 0 || spec.max_antecedent_leaves == 0)
        throw std::invalid_argument("corpus bounds must be positive");
    if (spec.variables.empty() && !spec.include_units)
        throw std::invalid_argument("corpus needs at least one variable or the units");

    const std::vector<FormulaPtr> stock = formula_stock(spec);

    std::vector<std::vector<PoolItem>> pools(spec.max_antecedent_leaves + 1);
    for (const FormulaPtr& f : stock)
        pools[1].push_back({StarBunch::leaf(f), StructKind::Leaf, 1});
    if (spec.include_units) {
        pools[1].push_back({StarBunch::empty_m(), StructKind::EmptyM, 1});
        pools[1].push_back({StarBunch::empty_a(), StructKind::EmptyA, 1});
    }

    std::size_t total_trees = pools[1].size();
    ceiling_check(total_trees, "the antecedent pool");
    for (std::size_t k = 2; k <= spec.max_antecedent_leaves; ++k) {
        std::vector<PoolItem> cands;
        for (std::size_t j = 1; j < k; ++j)
            cands.insert(cands.end(), pools[j].begin(), pools[j].end());
        for (StructKind head : {StructKind::Comma, StructKind::Semi}) {
            // Alternation and canonicity: children never repeat the head
            // connective and never carry its own (erasable) unit, so joining
            // and normalizing preserves the leaf count and every choice
            // yields a distinct canonical tree.
            const StructKind own_unit =
                head == StructKind::Comma ? StructKind::EmptyM : StructKind::EmptyA;
            std::vector<PoolItem> filtered;
            for (const PoolItem& item : cands)
                if (item.root != head && item.root != own_unit) filtered.push_back(item);
            std::vector<StarPtr> acc;
            choose_children(filtered, 0, k, head == StructKind::Semi, acc,
                            [&](const std::vector<StarPtr>& kids) {
                                NormalBunch nb = reduce(star_join(head, kids));
                                pools[k].push_back({nb.node(), head, k});
                                ceiling_check(++total_trees, "the antecedent pool");
                            });
        }
    }

    if (!stock.empty() && total_trees > kCorpusCeiling / stock.size())
        throw CorpusTooLarge("the corpus would exceed the ceiling of " +
                             std::to_string(kCorpusCeiling) + " items (" +
                             std::to_string(total_trees) + " antecedents times " +
                             std::to_string(stock.size()) + " succedents)");

    std::vector<Sequent> out;
    out.reserve(total_trees * stock.size());
    for (std::size_t k = 1; k <= spec.max_antecedent_leaves; ++k)
        for (const PoolItem& item : pools[k])
            for (const FormulaPtr& f : stock) out.push_back(Sequent{reduce(item.tree), f});
    return out;
}

const char* oracle_outcome_name(OracleOutcome o) noexcept {
    switch (o) {
        case OracleOutcome::Provable: return "Provable";
        case OracleOutcome::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

bool lbi_initial(const RawSequent& s) {
    if (s.succedent->kind() == FormulaKind::Top) return true;
    if (s.antecedent->kind() == BunchKind::EmptyM && s.succedent->kind() == FormulaKind::One)
        return true;
    if (s.antecedent->kind() == BunchKind::Leaf &&
        formula_equal(s.antecedent->formula(), s.succedent))
        return true;
    return contains_bot(s.antecedent);
}

namespace {

// ---- search states modulo the reversible structural rules ----
//
// A state keeps the antecedent flattened, sorted, and free of redundant
// units, but with duplicate siblings preserved: exactly the invariant the
// reversible rules (associativity, exchange, both unit laws) generate, and
// nothing more. Two raw antecedents map to the same state precisely when
// those rules interconvert them, so the state may stand for the whole orbit.

// Canonical node constructor for oracle states: flattens same-kind children,
// erases the node's own unit among them, collapses empty and single-child
// results, and sorts. Comma duplicates are kept as they are; semicolon
// duplicates are kept up to two copies. Two is exact, not a heuristic: with
// weakening and contraction both available on semicolon siblings, a node
// with three equal siblings and the node with two interderive in one
// structural step each, so higher multiplicities never change provability,
// while dropping to one copy would lose the genuine use-twice readings.
StarPtr onorm(StructKind kind, std::vector<StarPtr> kids) {
    const StructKind own_unit =
        kind == StructKind::Comma ? StructKind::EmptyM : StructKind::EmptyA;
    std::vector<StarPtr> flat;
    flat.reserve(kids.size());
    for (StarPtr& k : kids) {
        if (k->kind() == kind) {
            auto sub = k->children();
            flat.insert(flat.end(), sub.begin(), sub.end());
        } else if (k->kind() != own_unit) {
            flat.push_back(std::move(k));
        }
    }
    std::sort(flat.begin(), flat.end(),
              [](const StarPtr& a, const StarPtr& b) { return tree_compare(a, b) < 0; });
    if (kind == StructKind::Semi) {
        std::size_t kept = 0;
        for (std::size_t i = 0; i < flat.size(); ++i) {
            if (kept >= 2 && tree_equal(flat[i], flat[kept - 1]) &&
                tree_equal(flat[i], flat[kept - 2]))
                continue;
            flat[kept++] = flat[i];
        }
        flat.resize(kept);
    }
    if (flat.empty())
        return kind == StructKind::Comma ? StarBunch::empty_m() : StarBunch::empty_a();
    if (flat.size() == 1) return flat.front();
    return kind == StructKind::Comma ? StarBunch::comma(std::move(flat))
                                     : StarBunch::semi(std::move(flat));
}

StarPtr state_of(const BunchPtr& x) {
    switch (x->kind()) {
        case BunchKind::Leaf: return StarBunch::leaf(x->formula());
        case BunchKind::EmptyM: return StarBunch::empty_m();
        case BunchKind::EmptyA: return StarBunch::empty_a();
        case BunchKind::Comma:
            return onorm(StructKind::Comma, {state_of(x->left()), state_of(x->right())});
        case BunchKind::Semi:
            return onorm(StructKind::Semi, {state_of(x->left()), state_of(x->right())});
    }
    return StarBunch::empty_m();
}

bool star_contains_bot(const StarPtr& x) {
    switch (x->kind()) {
        case StructKind::Leaf: return x->formula()->kind() == FormulaKind::Bot;
        case StructKind::Comma:
        case StructKind::Semi:
            for (const StarPtr& k : x->children())
                if (star_contains_bot(k)) return true;
            return false;
        default: return false;
    }
}

// Initial sequents, read on the state: the orbit of a state contains an
// initial arrangement exactly when the state itself passes these checks
// (unit erasure already happened, and leaf multisets are orbit-invariant).
bool state_initial(const StarPtr& ant, const FormulaPtr& goal) {
    if (goal->kind() == FormulaKind::Top) return true;
    if (ant->kind() == StructKind::EmptyM && goal->kind() == FormulaKind::One) return true;
    if (ant->kind() == StructKind::Leaf && formula_equal(ant->formula(), goal)) return true;
    return star_contains_bot(ant);
}

// Positions in a state: child indices from the root. Subtrees equal to a
// previous sibling are skipped — they would reproduce identical steps.
using NodePath = std::vector<std::size_t>;

struct NodeRef {
    NodePath path;
    StarPtr node;
    StructKind parent; // Leaf stands in for "no parent" at the root
};

void collect_nodes(const StarPtr& x, StructKind parent, NodePath& cur,
                   std::vector<NodeRef>& out) {
    out.push_back(NodeRef{cur, x, parent});
    if (x->kind() != StructKind::Comma && x->kind() != StructKind::Semi) return;
    const auto kids = x->children();
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i > 0 && tree_equal(kids[i], kids[i - 1])) continue;
        cur.push_back(i);
        collect_nodes(kids[i], x->kind(), cur, out);
        cur.pop_back();
    }
}

// Replace the node at `p` and renormalize every node along the spine, so the
// result is again a state (the replacement may be a unit, which the spine
// then erases or keeps as the context dictates).
StarPtr graft(const StarPtr& x, const NodePath& p, std::size_t i, const StarPtr& repl) {
    if (i == p.size()) return repl;
    const auto kids = x->children();
    std::vector<StarPtr> next(kids.begin(), kids.end());
    next[p[i]] = graft(next[p[i]], p, i + 1, repl);
    return onorm(x->kind(), std::move(next));
}

// Distinct sub-multisets of a sorted child list, each emitted together with
// its complement. Returns false without emitting when the count would exceed
// `cap`, so callers can decline an oversized node instead of exploding.
template <typename Emit>
bool each_split(std::span<const StarPtr> kids, std::size_t cap, Emit&& emit) {
    std::vector<std::pair<StarPtr, std::size_t>> groups;
    for (const StarPtr& k : kids) {
        if (!groups.empty() && tree_equal(groups.back().first, k))
            ++groups.back().second;
        else
            groups.emplace_back(k, 1);
    }
    std::size_t combos = 1;
    for (const auto& g : groups) {
        combos *= g.second + 1;
        if (combos > cap) return false;
    }
    std::vector<StarPtr> chosen, rest;
    auto rec = [&](auto&& self, std::size_t gi) -> void {
        if (gi == groups.size()) {
            emit(std::as_const(chosen), std::as_const(rest));
            return;
        }
        const auto& [node, count] = groups[gi];
        for (std::size_t take = 0; take <= count; ++take) {
            for (std::size_t j = 0; j < take; ++j) chosen.push_back(node);
            for (std::size_t j = take; j < count; ++j) rest.push_back(node);
            self(self, gi + 1);
            chosen.resize(chosen.size() - take);
            rest.resize(rest.size() - (count - take));
        }
    };
    rec(rec, 0);
    return true;
}

// Formulas that can never expose anything but inert multiplicative material:
// variables, the additive constants, and tensors of such. Splitting a tensor
// of this shape only yields comma-joined material of the same shape, and
// comma material can never vanish (its unit would need the rule on 1, which
// this class excludes), so none of it can ever become the lone matching leaf
// an initial sequent needs.
bool mult_atomic(const FormulaPtr& f) {
    switch (f->kind()) {
        case FormulaKind::Var:
        case FormulaKind::Top:
        case FormulaKind::Bot: return true;
        case FormulaKind::Tensor: return mult_atomic(f->left()) && mult_atomic(f->right());
        default: return false;
    }
}

// Whether every leaf is inert in the sense above, so no left logical rule can
// change what is reachable — in this state or any descendant, since splits,
// contraction, and weakening all preserve the property.
bool atomic_leaves_only(const StarPtr& x) {
    switch (x->kind()) {
        case StructKind::Leaf: return mult_atomic(x->formula());
        case StructKind::Comma:
        case StructKind::Semi:
            for (const StarPtr& kid : x->children())
                if (!atomic_leaves_only(kid)) return false;
            return true;
        default: return true;
    }
}

// Fewest weakening steps that reduce the antecedent to the exact shape the
// goal's initial sequent needs: the lone matching leaf, or the multiplicative
// unit when the goal is 1. One weakening deletes all the other siblings of a
// semicolon node; comma material can never vanish (its unit only arises from
// the rule on 1, which atomic leaves rule out), so a comma node is a dead
// end. Returns kNoWeaks when unreachable.
constexpr std::size_t kNoWeaks = ~std::size_t{0};

std::size_t weaks_needed(const StarPtr& x, const FormulaPtr& goal) {
    if (goal->kind() == FormulaKind::One) {
        if (x->kind() == StructKind::EmptyM) return 0;
    } else if (x->kind() == StructKind::Leaf && formula_equal(x->formula(), goal)) {
        return 0;
    }
    if (x->kind() != StructKind::Semi) return kNoWeaks;
    std::size_t best = kNoWeaks;
    for (const StarPtr& kid : x->children()) {
        const std::size_t w = weaks_needed(kid, goal);
        if (w != kNoWeaks && w + 1 < best) best = w + 1;
    }
    return best;
}

struct OSeq {
    StarPtr ant;
    FormulaPtr goal;
};

struct OStep {
    const char* rule;
    std::vector<OSeq> premises;
};

constexpr std::size_t kSplitCap = 4096;  // sub-multisets enumerated per node
constexpr std::size_t kStepCap = 1 << 17; // steps enumerated per state

// Every proper backward step available to some arrangement of the state:
// the logical rules, weakening, contraction, and the rule replacing 1 by Em,
// each quantified over the groupings the reversible rules could expose —
// sibling blocks as rule contexts, duplications of whole blocks, splits with
// an empty side (an arrangement may always introduce a unit first). Returns
// false when an oversized node forced part of the enumeration to be
// declined; what was emitted is still sound to use.
bool oracle_steps(const StarPtr& ant, const FormulaPtr& goal, std::vector<OStep>& out) {
    bool complete = true;
    auto add = [&](const char* rule, std::vector<OSeq> premises) {
        if (out.size() >= kStepCap) {
            complete = false;
            return;
        }
        out.push_back(OStep{rule, std::move(premises)});
    };
    const StarPtr unit_m = StarBunch::empty_m();
    const StarPtr unit_a = StarBunch::empty_a();

    switch (goal->kind()) {
        case FormulaKind::And:
            add("&R", {OSeq{ant, goal->left()}, OSeq{ant, goal->right()}});
            break;
        case FormulaKind::Or:
            add("|R", {OSeq{ant, goal->left()}});
            add("|R", {OSeq{ant, goal->right()}});
            break;
        case FormulaKind::Imp:
            add("->R",
                {OSeq{onorm(StructKind::Semi, {ant, StarBunch::leaf(goal->left())}),
                      goal->right()}});
            break;
        case FormulaKind::Wand:
            add("-*R",
                {OSeq{onorm(StructKind::Comma, {ant, StarBunch::leaf(goal->left())}),
                      goal->right()}});
            break;
        case FormulaKind::Tensor: {
            // Splits of the root comma block, both sides possibly empty.
            std::vector<StarPtr> parts;
            if (ant->kind() == StructKind::Comma) {
                auto kids = ant->children();
                parts.assign(kids.begin(), kids.end());
            } else if (ant->kind() != StructKind::EmptyM) {
                parts.push_back(ant);
            }
            complete &= each_split(
                parts, kSplitCap,
                [&](const std::vector<StarPtr>& lhs, const std::vector<StarPtr>& rhs) {
                    add("*R", {OSeq{onorm(StructKind::Comma, lhs), goal->left()},
                               OSeq{onorm(StructKind::Comma, rhs), goal->right()}});
                });
            break;
        }
        default: break;
    }

    std::vector<NodeRef> nodes;
    NodePath scratch;
    collect_nodes(ant, StructKind::Leaf, scratch, nodes);

    for (const NodeRef& ref : nodes) {
        const StarPtr& u = ref.node;
        auto rewrite = [&](const StarPtr& nu) { return OSeq{graft(ant, ref.path, 0, nu), goal}; };
        switch (u->kind()) {
            case StructKind::Leaf: {
                const FormulaPtr& f = u->formula();
                switch (f->kind()) {
                    case FormulaKind::One: add("1L", {rewrite(unit_m)}); break;
                    case FormulaKind::And:
                        add("&L", {rewrite(StarBunch::leaf(f->left()))});
                        add("&L", {rewrite(StarBunch::leaf(f->right()))});
                        break;
                    case FormulaKind::Or:
                        add("|L", {rewrite(StarBunch::leaf(f->left())),
                                   rewrite(StarBunch::leaf(f->right()))});
                        break;
                    case FormulaKind::Tensor:
                        add("*L", {rewrite(onorm(StructKind::Comma,
                                                 {StarBunch::leaf(f->left()),
                                                  StarBunch::leaf(f->right())}))});
                        break;
                    case FormulaKind::Imp:
                        // Principal with no semicolon siblings: the premise
                        // context is the additive unit. In-block contexts are
                        // enumerated at the enclosing semicolon node.
                        if (ref.parent != StructKind::Semi) {
                            add("->L", {OSeq{unit_a, f->left()},
                                        rewrite(StarBunch::leaf(f->right()))});
                        }
                        break;
                    case FormulaKind::Wand:
                        if (ref.parent != StructKind::Comma) {
                            add("-*L", {OSeq{unit_m, f->left()},
                                        rewrite(StarBunch::leaf(f->right()))});
                        }
                        break;
                    default: break;
                }
                break;
            }
            case StructKind::Comma: {
                const auto kids = u->children();
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    if (i > 0 && tree_equal(kids[i], kids[i - 1])) continue;
                    const StarPtr& c = kids[i];
                    if (c->kind() != StructKind::Leaf ||
                        c->formula()->kind() != FormulaKind::Wand)
                        continue;
                    const FormulaPtr& w = c->formula();
                    std::vector<StarPtr> rest(kids.begin(), kids.end());
                    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                    complete &= each_split(
                        rest, kSplitCap,
                        [&](const std::vector<StarPtr>& y, const std::vector<StarPtr>& keep) {
                            std::vector<StarPtr> after(keep.begin(), keep.end());
                            after.push_back(StarBunch::leaf(w->right()));
                            add("-*L",
                                {OSeq{onorm(StructKind::Comma, y), w->left()},
                                 rewrite(onorm(StructKind::Comma, std::move(after)))});
                        });
                }
                // Contraction of a proper sibling block (whole nodes and
                // single children are handled by the uniform pass below).
                complete &= each_split(
                    kids, kSplitCap,
                    [&](const std::vector<StarPtr>& block, const std::vector<StarPtr>& keep) {
                        if (block.size() < 2 || block.size() == kids.size()) return;
                        StarPtr g = onorm(StructKind::Comma, block);
                        std::vector<StarPtr> after(keep.begin(), keep.end());
                        after.push_back(onorm(StructKind::Semi, {g, g}));
                        add("ctr", {rewrite(onorm(StructKind::Comma, std::move(after)))});
                    });
                break;
            }
            case StructKind::Semi: {
                const auto kids = u->children();
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    if (i > 0 && tree_equal(kids[i], kids[i - 1])) continue;
                    const StarPtr& c = kids[i];
                    if (c->kind() != StructKind::Leaf ||
                        c->formula()->kind() != FormulaKind::Imp)
                        continue;
                    const FormulaPtr& im = c->formula();
                    std::vector<StarPtr> rest(kids.begin(), kids.end());
                    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                    complete &= each_split(
                        rest, kSplitCap,
                        [&](const std::vector<StarPtr>& y, const std::vector<StarPtr>& keep) {
                            std::vector<StarPtr> after(keep.begin(), keep.end());
                            after.push_back(StarBunch::leaf(im->right()));
                            add("->L",
                                {OSeq{onorm(StructKind::Semi, y), im->left()},
                                 rewrite(onorm(StructKind::Semi, std::move(after)))});
                        });
                }
                // Weakening deletes any nonempty sibling block; deleting all
                // of them leaves the additive unit. No block form is needed
                // for contraction here: duplicating a sibling block is a
                // chain of single-sibling duplications, which the uniform
                // pass below supplies.
                complete &= each_split(
                    kids, kSplitCap,
                    [&](const std::vector<StarPtr>& gone, const std::vector<StarPtr>& keep) {
                        if (gone.empty()) return;
                        add("weak", {rewrite(onorm(StructKind::Semi, keep))});
                    });
                break;
            }
            default: break;
        }
    }

    // The uniform enlarging and discarding passes, tried last: contract any
    // node whole, or weaken any node away to the additive unit (a semicolon
    // context for either is always one unit introduction away).
    for (const NodeRef& ref : nodes) {
        const StarPtr& u = ref.node;
        auto rewrite = [&](const StarPtr& nu) { return OSeq{graft(ant, ref.path, 0, nu), goal}; };
        if (u->kind() == StructKind::EmptyA) continue;
        if (u->kind() != StructKind::Semi) add("weak", {rewrite(unit_a)});
        // Contraction. Under a semicolon parent the duplicate flattens into
        // an extra sibling, where it can later be consumed separately.
        // Anywhere else it forms a lone pair node, worthwhile only when the
        // copies can still be told apart by a logical rule; for inert
        // material the pair is interchangeable with the single copy (one
        // weakening one way, one contraction the other), so it is skipped.
        if (ref.parent != StructKind::Semi && atomic_leaves_only(u)) continue;
        add("ctr", {rewrite(onorm(StructKind::Semi, {u, u}))});
    }

    return complete;
}

} // namespace

std::size_t LbiOracle::StateHash::operator()(const State& s) const noexcept {
    const std::uint64_t a = s.antecedent->hash();
    const std::uint64_t b = s.goal->hash();
    return static_cast<std::size_t>(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

bool LbiOracle::StateEq::operator()(const State& a, const State& b) const {
    return formula_equal(a.goal, b.goal) && tree_equal(a.antecedent, b.antecedent);
}

bool LbiOracle::attempt(const State& start, std::size_t budget_bound) {
    constexpr std::size_t kClosureCap = std::size_t{1} << 16;

    // One node per distinct state reached this query. `budget` is the depth
    // remaining at its shallowest occurrence; `value`, once known, is the
    // least proof depth. Unexpanded nodes (settled by the memo, initial, out
    // of budget, or past the closure cap) keep no steps.
    struct QNode {
        State st;
        std::size_t budget;
        std::size_t value = Entry::kNone;
        bool expanded = false;
        std::vector<std::vector<std::size_t>> steps; // premise node ids
    };
    std::vector<QNode> nodes;
    std::unordered_map<State, std::size_t, StateHash, StateEq> index;

    auto intern = [&](State st, std::size_t budget) {
        auto [it, inserted] = index.emplace(std::move(st), nodes.size());
        if (inserted) nodes.push_back(QNode{it->first, budget, Entry::kNone, false, {}});
        return it->second;
    };

    intern(start, budget_bound);

    // Breadth-first closure of everything reachable within the budget: the
    // vector doubles as the queue, so budgets are non-increasing and the
    // first reach of a state is its deepest. Each state is expanded at most
    // once; the fixpoint below does the rest, so cycles cost nothing.
    for (std::size_t qi = 0; qi < nodes.size(); ++qi) {
        const State st = nodes[qi].st;
        const std::size_t budget = nodes[qi].budget;
        if (state_initial(st.antecedent, st.goal)) {
            nodes[qi].value = 1;
            Entry& e = memo_[st];
            if (e.proved_at > 1) e.proved_at = 1;
            continue;
        }
        if (auto it = memo_.find(st); it != memo_.end()) {
            if (it->second.proved_at <= budget) {
                nodes[qi].value = it->second.proved_at;
                continue;
            }
            if (it->second.failed_to >= budget) {
                if (it->second.failed_to != Entry::kForever) cut_ = true;
                continue;
            }
        }
        // Atomic goal over atomic leaves: no logical rule can ever apply
        // again, so the state settles in closed form instead of expanding
        // into the contraction jungle.
        const FormulaKind gk = st.goal->kind();
        const bool has_right_rule = gk == FormulaKind::And || gk == FormulaKind::Or ||
                                    gk == FormulaKind::Imp || gk == FormulaKind::Wand ||
                                    gk == FormulaKind::Tensor;
        if (!has_right_rule && atomic_leaves_only(st.antecedent)) {
            const std::size_t w = weaks_needed(st.antecedent, st.goal);
            if (w == kNoWeaks) {
                memo_[st].failed_to = Entry::kForever; // unprovable at any depth
            } else {
                nodes[qi].value = w + 1; // the weakenings plus the initial sequent
                Entry& e = memo_[st];
                if (w + 1 < e.proved_at) e.proved_at = w + 1;
                if (w + 1 > budget) cut_ = true;
            }
            continue;
        }
        if (nodes.size() >= kClosureCap) {
            cut_ = true;
            capped_ = true;
            continue;
        }
        if (budget == 0) {
            cut_ = true;
            continue;
        }
        std::vector<OStep> steps;
        if (!oracle_steps(st.antecedent, st.goal, steps)) cut_ = true;
        std::vector<std::vector<std::size_t>> premise_ids;
        premise_ids.reserve(steps.size());
        for (OStep& step : steps) {
            std::vector<std::size_t> ids;
            ids.reserve(step.premises.size());
            for (OSeq& premise : step.premises)
                ids.push_back(
                    intern(State{std::move(premise.ant), std::move(premise.goal)}, budget - 1));
            premise_ids.push_back(std::move(ids));
        }
        nodes[qi].expanded = true;
        nodes[qi].steps = std::move(premise_ids);
    }

    // Least proof depth as a decreasing fixpoint: an initial state costs one,
    // a step costs one plus its worst premise. Positive step costs rule out
    // cyclic self-support, so the stable point is exact over the closure.
    // Sweeping premises (later ids) before conclusions converges quickly.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t qi = nodes.size(); qi-- > 0;) {
            QNode& q = nodes[qi];
            if (!q.expanded) continue;
            std::size_t best = Entry::kNone;
            for (const auto& step : q.steps) {
                std::size_t worst = 0;
                bool all = true;
                for (std::size_t pid : step) {
                    const std::size_t v = nodes[pid].value;
                    if (v == Entry::kNone) {
                        all = false;
                        break;
                    }
                    worst = std::max(worst, v);
                }
                if (all && worst + 1 < best) best = worst + 1;
            }
            if (best < q.value) {
                q.value = best;
                changed = true;
            }
        }
    }

    // Publish what this query settled: values are genuine proof depths, and
    // an expanded node without one was saturated to its whole budget.
    for (const QNode& q : nodes) {
        Entry& e = memo_[q.st];
        if (q.value != Entry::kNone) {
            if (q.value < e.proved_at) e.proved_at = q.value;
        } else if (q.expanded && q.budget > e.failed_to) {
            e.failed_to = q.budget;
        }
    }

    const QNode& root = nodes.front();
    return root.value != Entry::kNone && root.value <= budget_bound;
}

OracleVerdict LbiOracle::prove(const RawSequent& s, std::size_t height_bound) {
    const State start{state_of(s.antecedent), s.succedent};
    // Iterative deepening: a small proof should only ever pay for a small
    // closure, and an attempt that saturates without cutting anything has
    // settled unprovability outright, at any depth.
    std::size_t budget = std::min<std::size_t>(height_bound, 4);
    for (;;) {
        cut_ = false;
        capped_ = false;
        if (attempt(start, budget)) return {OracleOutcome::Provable, false};
        // A capped closure is final: a deeper attempt reaches a superset of
        // the same states and caps again, so deepening cannot help.
        if (!cut_ || capped_ || budget >= height_bound)
            return {OracleOutcome::Inconclusive, cut_};
        budget = std::min(height_bound, budget + 2);
    }
}

void LbiOracle::clear() { memo_.clear(); }

OracleVerdict brute_force_lbi(const RawSequent& s, std::size_t height_bound) {
    LbiOracle oracle;
    return oracle.prove(s, height_bound);
}

RawSequent to_raw(const Sequent& s) {
    return RawSequent{raw_of(s.antecedent.node()), s.succedent};
}

CrossValidationReport cross_validate(const std::vector<Sequent>& corpus,
                                     std::size_t depth_bound) {
    CrossValidationReport rep;
    rep.total = corpus.size();
    rep.depth_bound = depth_bound;
    rep.confirm_depth = depth_bound + 2;

    SearchConfig cfg;
    cfg.collect_stats = false;
    Prover prover(cfg);
    LbiOracle oracle;

    for (const Sequent& s : corpus) {
        // The tables are pure accelerators; shedding them periodically keeps
        // a long run's footprint flat.
        if (prover.memo_size() > 1'500'000) prover.clear();
        if (oracle.memo_size() > 3'000'000) oracle.clear();

        const RawSequent raw = to_raw(s);
        const OracleVerdict ov = oracle.prove(raw, depth_bound);
        if (ov.outcome == OracleOutcome::Provable)
            ++rep.oracle_provable;
        else
            ++rep.oracle_inconclusive;

        const Result pr = prover.decide(s);
        switch (pr.outcome) {
            case Outcome::Provable: ++rep.decide_provable; break;
            case Outcome::Unprovable: ++rep.decide_unprovable; break;
            case Outcome::ResourceLimit: ++rep.decide_resource_limited; break;
        }

        if (ov.outcome == OracleOutcome::Provable && pr.outcome != Outcome::Provable)
            rep.disagreements.push_back(
                render(s) + ": the reference search derives this within height " +
                std::to_string(depth_bound) + " but decide answers " + outcome_name(pr.outcome));

        if (pr.outcome == Outcome::Provable) {
            if (verify(pr.derivation))
                ++rep.verified_derivations;
            else
                rep.disagreements.push_back(
                    render(s) + ": decide's derivation fails the independent checker\n" +
                    render(pr.derivation));
            OracleVerdict confirm = ov;
            if (confirm.outcome != OracleOutcome::Provable)
                confirm = oracle.prove(raw, rep.confirm_depth);
            if (confirm.outcome == OracleOutcome::Provable)
                ++rep.oracle_confirmed;
            else
                rep.disagreements.push_back(
                    render(s) +
                    ": decide proves this but the reference search finds no derivation within "
                    "height " +
                    std::to_string(rep.confirm_depth) + "\n" + render(pr.derivation));
        }
    }
    return rep;
}

CrossValidationReport cross_validate(const CorpusSpec& spec, std::size_t depth_bound) {
    return cross_validate(enumerate_sequents(spec), depth_bound);
}

CrossValidationReport cross_validate(const Sequent& s, std::size_t depth_bound) {
    return cross_validate(std::vector<Sequent>{s}, depth_bound);
}

std::string report_text(const CrossValidationReport& r) {
    std::string out;
    out += "sequents:       " + std::to_string(r.total) + "\n";
    out += "decide:         provable " + std::to_string(r.decide_provable) + ", unprovable " +
           std::to_string(r.decide_unprovable) + ", resource-limited " +
           std::to_string(r.decide_resource_limited) + "\n";
    out += "reference:      provable " + std::to_string(r.oracle_provable) + ", inconclusive " +
           std::to_string(r.oracle_inconclusive) + " (height bound " +
           std::to_string(r.depth_bound) + ")\n";
    out += "confirmation:   " + std::to_string(r.verified_derivations) +
           " derivations checked, " + std::to_string(r.oracle_confirmed) +
           " re-derived by the reference search (height bound " +
           std::to_string(r.confirm_depth) + ")\n";
    if (r.agreed()) {
        out += "disagreements:  none\n";
    } else {
        out += "disagreements:  " + std::to_string(r.disagreements.size()) + "\n";
        for (const std::string& d : r.disagreements) out += "  - " + d + "\n";
    }
    return out;
}

std::string report_json(const CrossValidationReport& r) {
    nlohmann::json j;
    j["total"] = r.total;
    j["depth_bound"] = r.depth_bound;
    j["confirm_depth"] = r.confirm_depth;
    j["decide"] = {{"provable", r.decide_provable},
                   {"unprovable", r.decide_unprovable},
                   {"resource_limited", r.decide_resource_limited}};
    j["oracle"] = {{"provable", r.oracle_provable}, {"inconclusive", r.oracle_inconclusive}};
    j["verified_derivations"] = r.verified_derivations;
    j["oracle_confirmed"] = r.oracle_confirmed;
    j["disagreements"] = r.disagreements;
    return j.dump(2);
}

} // namespace bip
