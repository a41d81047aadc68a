#include "bip/calculus.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_map>

#include "bip/errors.hpp"

namespace bip {
namespace {

constexpr std::array<const char*, 18> kRuleNames = {
    "Id",   "OneR", "BotL",  "TopR",  "OneL", "Weak",  "AndL1",   "AndL2",   "AndR",
    "OrL",  "OrR1", "OrR2",  "ImpL",  "ImpR", "WandL", "WandR",   "TensorL", "TensorR"};

// ---- tree helpers ---------------------------------------------------------

StarPtr unit_node(StructKind op) {
    return op == StructKind::Comma ? StarBunch::empty_m() : StarBunch::empty_a();
}

// Build a combination node from an arbitrary child list: the empty list is
// the connective's unit, a single child stands alone, and same-kind children
// are spliced so alternation is preserved.
StarPtr make_node(StructKind op, std::vector<StarPtr> kids) {
    if (op != StructKind::Comma && op != StructKind::Semi)
        throw LogicError("make_node expects a combination connective");
    std::vector<StarPtr> flat;
    flat.reserve(kids.size());
    for (StarPtr& k : kids) {
        if (k->kind() == op)
            flat.insert(flat.end(), k->children().begin(), k->children().end());
        else
            flat.push_back(std::move(k));
    }
    if (flat.empty()) return unit_node(op);
    if (flat.size() == 1) return flat[0];
    return op == StructKind::Comma ? StarBunch::comma(std::move(flat))
                                   : StarBunch::semi(std::move(flat));
}

const StarPtr* node_at(const StarPtr& root, const Path& path) {
    const StarPtr* cur = &root;
    for (std::size_t idx : path) {
        if (idx >= (*cur)->children().size()) return nullptr;
        cur = &(*cur)->children()[idx];
    }
    return cur;
}

StarPtr subst(const StarPtr& node, const Path& path, std::size_t i, const StarPtr& repl) {
    if (i == path.size()) return repl;
    std::vector<StarPtr> kids(node->children().begin(), node->children().end());
    kids[path[i]] = subst(kids[path[i]], path, i + 1, repl);
    return make_node(node->kind(), std::move(kids));
}

void collect_leaves(const StarPtr& node, Path& cur, std::vector<std::pair<Path, FormulaPtr>>& out) {
    if (node->kind() == StructKind::Leaf) {
        out.emplace_back(cur, node->formula());
        return;
    }
    for (std::size_t i = 0; i < node->children().size(); ++i) {
        cur.push_back(i);
        collect_leaves(node->children()[i], cur, out);
        cur.pop_back();
    }
}

void collect_semi_nodes(const StarPtr& node, Path& cur, std::vector<Path>& out) {
    if (node->kind() == StructKind::Semi) out.push_back(cur);
    for (std::size_t i = 0; i < node->children().size(); ++i) {
        cur.push_back(i);
        collect_semi_nodes(node->children()[i], cur, out);
        cur.pop_back();
    }
}

bool has_bot_leaf(const StarPtr& node) {
    if (node->kind() == StructKind::Leaf) return node->formula()->kind() == FormulaKind::Bot;
    for (const StarPtr& c : node->children())
        if (has_bot_leaf(c)) return true;
    return false;
}

// All ways to pick a sub-multiset of xs, reported as sorted index vectors.
// Equal elements are interchangeable, so only the "first k of each equality
// class" representatives are produced; the list includes the empty and the
// full choice.
std::vector<std::vector<std::size_t>> submultiset_choices(std::span<const StarPtr> xs) {
    std::vector<std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        bool placed = false;
        for (auto& b : buckets)
            if (tree_equal(xs[b[0]], xs[i])) {
                b.push_back(i);
                placed = true;
                break;
            }
        if (!placed) buckets.push_back({i});
    }
    std::size_t total = 1;
    for (const auto& b : buckets) {
        total *= b.size() + 1;
        if (total > (std::size_t{1} << 16))
            throw EnumerationLimit("sub-multiset enumeration too large");
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> counts(buckets.size(), 0);
    while (true) {
        std::vector<std::size_t> pick;
        for (std::size_t b = 0; b < buckets.size(); ++b)
            for (std::size_t k = 0; k < counts[b]; ++k) pick.push_back(buckets[b][k]);
        std::sort(pick.begin(), pick.end());
        out.push_back(std::move(pick));
        std::size_t b = 0;
        while (b < buckets.size()) {
            if (++counts[b] <= buckets[b].size()) break;
            counts[b] = 0;
            ++b;
        }
        if (b == buckets.size()) break;
    }
    return out;
}

// The top-level comma-child list a multiplicative split operates over: a
// comma node contributes its children, the multiplicative unit contributes
// nothing, and anything else is the one-element list.
std::vector<StarPtr> comma_child_list(const StarPtr& x) {
    switch (x->kind()) {
    case StructKind::Comma: return {x->children().begin(), x->children().end()};
    case StructKind::EmptyM: return {};
    default: return {x};
    }
}

// ---- preimage construction (shared with check_instance) -------------------

// Replace the path nodes selected by `mask` (bit d = node at depth d, the
// leaf at depth |pos| included) each by a semicolon pair of itself, the
// designated copy's children first; returns the transformed subtree and the
// path to the designated leaf inside it. Merging keeps alternation intact.
std::pair<StarPtr, Path> dup_build(const StarPtr& node, const Path& pos, std::size_t depth,
                                   std::uint32_t mask) {
    StarPtr t;
    Path rel;
    if (depth == pos.size()) {
        t = node;
    } else {
        std::size_t idx = pos[depth];
        auto [child, crel] = dup_build(node->children()[idx], pos, depth + 1, mask);
        std::vector<StarPtr> kids(node->children().begin(), node->children().end());
        if (child->kind() == node->kind()) {
            kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(idx));
            kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(idx), child->children().begin(),
                        child->children().end());
            rel.push_back(idx + crel[0]);
            rel.insert(rel.end(), crel.begin() + 1, crel.end());
        } else {
            kids[idx] = child;
            rel.push_back(idx);
            rel.insert(rel.end(), crel.begin(), crel.end());
        }
        t = node->kind() == StructKind::Comma ? StarBunch::comma(std::move(kids))
                                              : StarBunch::semi(std::move(kids));
    }
    if (mask & (std::uint32_t{1} << depth)) {
        if (t->kind() == StructKind::Semi) {
            // The original node is a semicolon too; merge the pristine copy's
            // children after the designated ones.
            std::vector<StarPtr> kids(t->children().begin(), t->children().end());
            kids.insert(kids.end(), node->children().begin(), node->children().end());
            t = StarBunch::semi(std::move(kids));
        } else {
            t = StarBunch::semi({t, node});
            rel.insert(rel.begin(), 0);
        }
    }
    return {std::move(t), std::move(rel)};
}

std::vector<Path> mask_to_prefixes(const Path& pos, std::uint32_t mask) {
    std::vector<Path> out;
    for (std::size_t d = 0; d <= pos.size(); ++d)
        if (mask & (std::uint32_t{1} << d)) out.emplace_back(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(d));
    return out;
}

std::uint32_t prefixes_to_mask(const Path& pos, const std::vector<Path>& duplicated, bool& ok) {
    ok = true;
    std::uint32_t mask = 0;
    for (const Path& p : duplicated) {
        if (p.size() > pos.size() || !std::equal(p.begin(), p.end(), pos.begin())) {
            ok = false;
            return 0;
        }
        std::uint32_t bit = std::uint32_t{1} << p.size();
        if (mask & bit) {
            ok = false; // the same node twice
            return 0;
        }
        mask |= bit;
    }
    return mask;
}

// ---- premise recomputation shared by expand and check_instance ------------

Sequent mk_premise(const StarPtr& antecedent, const FormulaPtr& succedent) {
    return Sequent{reduce(antecedent), succedent};
}

struct PrincipalSite {
    StarPtr tree;   // W
    Path leaf;      // principal leaf in W
    FormulaPtr f;   // its formula
};

// Premises of an implication-left instance at the given site, per the
// descriptor's sibling roles and Y flag. `additive` selects ImpL (semicolon
// parent, roles may include Both) versus WandL (comma parent, no Both).
// Returns nullopt if the descriptor does not fit the site.
std::optional<std::vector<Sequent>> implication_premises(const PrincipalSite& site,
                                                         const VariantDescriptor& v, bool additive,
                                                         const FormulaPtr& succedent) {
    const StructKind parent_kind = additive ? StructKind::Semi : StructKind::Comma;
    const FormulaPtr& c = site.f->left();
    const FormulaPtr& d = site.f->right();

    const StarPtr* parent = nullptr;
    Path parent_path;
    if (!site.leaf.empty()) {
        parent_path.assign(site.leaf.begin(), site.leaf.end() - 1);
        parent = node_at(site.tree, parent_path);
        if (!parent) return std::nullopt;
        if ((*parent)->kind() != parent_kind) parent = nullptr;
    }

    const std::size_t sibling_count = parent ? (*parent)->children().size() - 1 : 0;
    if (v.sibling_roles.size() != sibling_count) return std::nullopt;
    if (!additive) {
        // Comma material cannot be duplicated: a sibling in both premises or
        // the principal reused in Y would need a comma-contraction witness,
        // which normalization never produces.
        if (v.y_includes_principal) return std::nullopt;
        for (SiblingRole r : v.sibling_roles)
            if (r == SiblingRole::Both) return std::nullopt;
    }

    std::vector<StarPtr> y_parts;
    StarPtr right_tree;
    if (parent) {
        const std::size_t principal_idx = site.leaf.back();
        std::vector<StarPtr> kept;
        std::size_t sib = 0;
        for (std::size_t j = 0; j < (*parent)->children().size(); ++j) {
            if (j == principal_idx) {
                kept.push_back(StarBunch::leaf(d));
                continue;
            }
            SiblingRole role = v.sibling_roles[sib++];
            if (role == SiblingRole::Moved || role == SiblingRole::Both)
                y_parts.push_back((*parent)->children()[j]);
            if (role == SiblingRole::Context || role == SiblingRole::Both)
                kept.push_back((*parent)->children()[j]);
        }
        right_tree = subst(site.tree, parent_path, 0, make_node(parent_kind, std::move(kept)));
    } else {
        right_tree = subst(site.tree, site.leaf, 0, StarBunch::leaf(d));
    }
    if (v.y_includes_principal) y_parts.push_back(StarBunch::leaf(site.f));

    StarPtr y = star_join(parent_kind, std::move(y_parts));
    return std::vector<Sequent>{mk_premise(y, c), mk_premise(right_tree, succedent)};
}

int rule_priority(RuleName r) {
    switch (r) {
    case RuleName::OrR1: return 0;
    case RuleName::OrR2: return 1;
    case RuleName::ImpR: return 2;
    case RuleName::WandR: return 3;
    case RuleName::AndR: return 4;
    case RuleName::TensorR: return 5;
    case RuleName::OneL: return 6;
    case RuleName::AndL1: return 7;
    case RuleName::AndL2: return 8;
    case RuleName::TensorL: return 9;
    case RuleName::Weak: return 10;
    case RuleName::OrL: return 11;
    case RuleName::ImpL: return 12;
    case RuleName::WandL: return 13;
    default: return 14; // axioms never appear in expand results
    }
}

std::uint64_t premises_key(RuleName rule, const std::vector<Sequent>& premises) {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(rule);
    for (const Sequent& p : premises) {
        h ^= sequent_hash(p) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace

// ---- public API ------------------------------------------------------------

const char* rule_name(RuleName r) noexcept { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<RuleName> rule_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kRuleNames.size(); ++i)
        if (name == kRuleNames[i]) return static_cast<RuleName>(i);
    return std::nullopt;
}

bool is_axiom_rule(RuleName r) noexcept {
    return r == RuleName::Id || r == RuleName::OneR || r == RuleName::BotL || r == RuleName::TopR;
}

std::optional<RuleName> axioms(const Sequent& s) {
    if (s.succedent->kind() == FormulaKind::Top) return RuleName::TopR;
    if (has_bot_leaf(s.antecedent.node())) return RuleName::BotL;
    const StarPtr& x = s.antecedent.node();
    if (x->kind() == StructKind::Leaf && formula_equal(x->formula(), s.succedent))
        return RuleName::Id;
    if (x->kind() == StructKind::EmptyM && s.succedent->kind() == FormulaKind::One)
        return RuleName::OneR;
    return std::nullopt;
}

std::vector<PreimageVariant> preimage_variants(const NormalBunch& z, const Path& pos) {
    const StarPtr* leaf = node_at(z.node(), pos);
    if (!leaf || (*leaf)->kind() != StructKind::Leaf)
        throw LogicError("preimage_variants: position does not resolve to a leaf");
    const std::size_t nodes = pos.size() + 1;
    if (nodes > 14) throw EnumerationLimit("duplication variant enumeration too large");

    std::vector<std::uint32_t> masks;
    masks.reserve(std::size_t{1} << nodes);
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << nodes); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });

    std::vector<PreimageVariant> out;
    out.reserve(masks.size());
    for (std::uint32_t m : masks) {
        auto [tree, rel] = dup_build(z.node(), pos, 0, m);
        out.push_back(PreimageVariant{std::move(tree), std::move(rel), mask_to_prefixes(pos, m)});
    }
    return out;
}

std::vector<RuleApplication> expand(const Sequent& s) {
    std::vector<RuleApplication> out;
    const FormulaPtr& a = s.succedent;
    const StarPtr& x = s.antecedent.node();

    auto push = [&](RuleName rule, std::optional<Path> position, VariantDescriptor variant,
                    std::vector<Sequent> premises) {
        // Per-mechanism guards above bound each enumeration; this bounds their
        // product so one expansion can never hold more than ~10^5 applications.
        if (out.size() >= (std::size_t{1} << 17))
            throw EnumerationLimit("rule application enumeration too large");
        out.push_back(RuleApplication{rule, std::move(position), std::move(variant), std::move(premises)});
    };

    // Right rules.
    switch (a->kind()) {
    case FormulaKind::Or:
        push(RuleName::OrR1, std::nullopt, {}, {Sequent{s.antecedent, a->left()}});
        push(RuleName::OrR2, std::nullopt, {}, {Sequent{s.antecedent, a->right()}});
        break;
    case FormulaKind::Imp:
        push(RuleName::ImpR, std::nullopt, {},
             {mk_premise(star_join(StructKind::Semi, x, StarBunch::leaf(a->left())), a->right())});
        break;
    case FormulaKind::Wand:
        push(RuleName::WandR, std::nullopt, {},
             {mk_premise(star_join(StructKind::Comma, x, StarBunch::leaf(a->left())), a->right())});
        break;
    case FormulaKind::And:
        push(RuleName::AndR, std::nullopt, {},
             {Sequent{s.antecedent, a->left()}, Sequent{s.antecedent, a->right()}});
        break;
    case FormulaKind::Tensor: {
        std::vector<StarPtr> parts = comma_child_list(x);
        for (std::vector<std::size_t>& left_idx : submultiset_choices(parts)) {
            std::vector<StarPtr> lhs, rhs;
            std::size_t k = 0;
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (k < left_idx.size() && left_idx[k] == j) {
                    lhs.push_back(parts[j]);
                    ++k;
                } else {
                    rhs.push_back(parts[j]);
                }
            }
            VariantDescriptor v;
            v.split_left = std::move(left_idx);
            push(RuleName::TensorR, std::nullopt, std::move(v),
                 {mk_premise(make_node(StructKind::Comma, std::move(lhs)), a->left()),
                  mk_premise(make_node(StructKind::Comma, std::move(rhs)), a->right())});
        }
        break;
    }
    default: break;
    }

    // Left rules, per principal leaf and per preimage variant.
    std::vector<std::pair<Path, FormulaPtr>> leaves;
    {
        Path cur;
        collect_leaves(x, cur, leaves);
    }
    for (const auto& [pos, f] : leaves) {
        if (is_atom(f->kind()) && f->kind() != FormulaKind::One) continue;
        for (PreimageVariant& pv : preimage_variants(s.antecedent, pos)) {
            VariantDescriptor base;
            base.duplicated = pv.duplicated;
            switch (f->kind()) {
            case FormulaKind::One:
                push(RuleName::OneL, pos, base,
                     {mk_premise(subst(pv.tree, pv.leaf, 0, StarBunch::empty_m()), a)});
                break;
            case FormulaKind::And:
                push(RuleName::AndL1, pos, base,
                     {mk_premise(subst(pv.tree, pv.leaf, 0, StarBunch::leaf(f->left())), a)});
                push(RuleName::AndL2, pos, base,
                     {mk_premise(subst(pv.tree, pv.leaf, 0, StarBunch::leaf(f->right())), a)});
                break;
            case FormulaKind::Tensor:
                push(RuleName::TensorL, pos, base,
                     {mk_premise(subst(pv.tree, pv.leaf, 0,
                                       make_node(StructKind::Comma,
                                                 {StarBunch::leaf(f->left()), StarBunch::leaf(f->right())})),
                                 a)});
                break;
            case FormulaKind::Or:
                push(RuleName::OrL, pos, base,
                     {mk_premise(subst(pv.tree, pv.leaf, 0, StarBunch::leaf(f->left())), a),
                      mk_premise(subst(pv.tree, pv.leaf, 0, StarBunch::leaf(f->right())), a)});
                break;
            case FormulaKind::Imp: {
                PrincipalSite site{pv.tree, pv.leaf, f};
                std::size_t sibling_count = 0;
                if (!pv.leaf.empty()) {
                    Path parent_path(pv.leaf.begin(), pv.leaf.end() - 1);
                    const StarPtr* parent = node_at(pv.tree, parent_path);
                    if (parent && (*parent)->kind() == StructKind::Semi)
                        sibling_count = (*parent)->children().size() - 1;
                }
                if (sibling_count > 12)
                    throw EnumerationLimit("sibling role enumeration too large");
                std::size_t assignments = 1;
                for (std::size_t i = 0; i < sibling_count; ++i) assignments *= 3;
                for (std::size_t code = 0; code < assignments; ++code) {
                    VariantDescriptor v = base;
                    std::size_t rest = code;
                    for (std::size_t i = 0; i < sibling_count; ++i) {
                        v.sibling_roles.push_back(static_cast<SiblingRole>(rest % 3));
                        rest /= 3;
                    }
                    for (bool y : {false, true}) {
                        v.y_includes_principal = y;
                        auto prem = implication_premises(site, v, /*additive=*/true, a);
                        if (prem) push(RuleName::ImpL, pos, v, std::move(*prem));
                    }
                }
                break;
            }
            case FormulaKind::Wand: {
                PrincipalSite site{pv.tree, pv.leaf, f};
                std::vector<StarPtr> siblings;
                if (!pv.leaf.empty()) {
                    Path parent_path(pv.leaf.begin(), pv.leaf.end() - 1);
                    const StarPtr* parent = node_at(pv.tree, parent_path);
                    if (parent && (*parent)->kind() == StructKind::Comma) {
                        for (std::size_t j = 0; j < (*parent)->children().size(); ++j)
                            if (j != pv.leaf.back()) siblings.push_back((*parent)->children()[j]);
                    }
                }
                for (const std::vector<std::size_t>& moved : submultiset_choices(siblings)) {
                    VariantDescriptor v = base;
                    std::size_t k = 0;
                    for (std::size_t i = 0; i < siblings.size(); ++i) {
                        bool is_moved = k < moved.size() && moved[k] == i;
                        if (is_moved) ++k;
                        v.sibling_roles.push_back(is_moved ? SiblingRole::Moved : SiblingRole::Context);
                    }
                    auto prem = implication_premises(site, v, /*additive=*/false, a);
                    if (prem) push(RuleName::WandL, pos, v, std::move(*prem));
                }
                break;
            }
            default: break;
            }
        }
    }

    // Weakening: per semicolon node, delete any nonempty proper child subset.
    {
        std::vector<Path> semis;
        Path cur;
        collect_semi_nodes(x, cur, semis);
        for (const Path& q : semis) {
            const StarPtr& node = *node_at(x, q);
            const std::size_t n = node->children().size();
            if (n > 16) throw EnumerationLimit("weakening enumeration too large");
            for (std::uint32_t m = 1; m + 1 < (std::uint32_t{1} << n); ++m) {
                std::vector<StarPtr> kept;
                VariantDescriptor v;
                for (std::size_t j = 0; j < n; ++j) {
                    if (m & (std::uint32_t{1} << j))
                        v.removed.push_back(j);
                    else
                        kept.push_back(node->children()[j]);
                }
                push(RuleName::Weak, q, std::move(v),
                     {mk_premise(subst(x, q, 0, make_node(StructKind::Semi, std::move(kept))), a)});
            }
        }
    }

    // Deduplicate by (rule, premise list), keeping the earliest (fewest
    // duplications) representative, then order by rule priority.
    std::vector<RuleApplication> kept;
    kept.reserve(out.size());
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
    for (RuleApplication& app : out) {
        std::uint64_t key = premises_key(app.rule, app.premises);
        bool duplicate = false;
        for (std::size_t idx : seen[key]) {
            const RuleApplication& other = kept[idx];
            if (other.rule != app.rule || other.premises.size() != app.premises.size()) continue;
            bool same = true;
            for (std::size_t i = 0; i < app.premises.size() && same; ++i)
                same = sequent_equal(other.premises[i], app.premises[i]);
            if (same) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            seen[key].push_back(kept.size());
            kept.push_back(std::move(app));
        }
    }
    std::stable_sort(kept.begin(), kept.end(), [](const RuleApplication& a, const RuleApplication& b) {
        return rule_priority(a.rule) < rule_priority(b.rule);
    });
    return kept;
}

bool check_instance(const Sequent& c, const RuleApplication& app) {
    const FormulaPtr& a = c.succedent;
    const StarPtr& x = c.antecedent.node();
    const VariantDescriptor& v = app.variant;

    auto premises_equal = [&](const std::vector<Sequent>& want) {
        if (app.premises.size() != want.size()) return false;
        for (std::size_t i = 0; i < want.size(); ++i)
            if (!sequent_equal(app.premises[i], want[i])) return false;
        return true;
    };
    auto descriptor_clean = [&](bool dup, bool roles, bool split, bool rem) {
        return (dup || v.duplicated.empty()) && (roles || (v.sibling_roles.empty() && !v.y_includes_principal)) &&
               (split || v.split_left.empty()) && (rem || v.removed.empty());
    };

    if (app.premises.empty()) {
        return is_axiom_rule(app.rule) && !app.position &&
               descriptor_clean(false, false, false, false) && axioms(c) == app.rule;
    }
    if (is_axiom_rule(app.rule)) return false;

    switch (app.rule) {
    case RuleName::OrR1:
        return a->kind() == FormulaKind::Or && !app.position && descriptor_clean(false, false, false, false) &&
               premises_equal({Sequent{c.antecedent, a->left()}});
    case RuleName::OrR2:
        return a->kind() == FormulaKind::Or && !app.position && descriptor_clean(false, false, false, false) &&
               premises_equal({Sequent{c.antecedent, a->right()}});
    case RuleName::ImpR:
        return a->kind() == FormulaKind::Imp && !app.position && descriptor_clean(false, false, false, false) &&
               premises_equal(
                   {mk_premise(star_join(StructKind::Semi, x, StarBunch::leaf(a->left())), a->right())});
    case RuleName::WandR:
        return a->kind() == FormulaKind::Wand && !app.position && descriptor_clean(false, false, false, false) &&
               premises_equal(
                   {mk_premise(star_join(StructKind::Comma, x, StarBunch::leaf(a->left())), a->right())});
    case RuleName::AndR:
        return a->kind() == FormulaKind::And && !app.position && descriptor_clean(false, false, false, false) &&
               premises_equal({Sequent{c.antecedent, a->left()}, Sequent{c.antecedent, a->right()}});
    case RuleName::TensorR: {
        if (a->kind() != FormulaKind::Tensor || app.position || !descriptor_clean(false, false, true, false))
            return false;
        std::vector<StarPtr> parts = comma_child_list(x);
        std::vector<StarPtr> lhs, rhs;
        std::size_t k = 0;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (k < v.split_left.size() && v.split_left[k] == j) {
                lhs.push_back(parts[j]);
                ++k;
            } else {
                rhs.push_back(parts[j]);
            }
        }
        if (k != v.split_left.size()) return false; // out-of-range or unsorted indices
        return premises_equal({mk_premise(make_node(StructKind::Comma, std::move(lhs)), a->left()),
                               mk_premise(make_node(StructKind::Comma, std::move(rhs)), a->right())});
    }
    case RuleName::Weak: {
        if (!app.position || !descriptor_clean(false, false, false, true)) return false;
        const StarPtr* node = node_at(x, *app.position);
        if (!node || (*node)->kind() != StructKind::Semi) return false;
        const std::size_t n = (*node)->children().size();
        if (v.removed.empty() || v.removed.size() >= n) return false;
        std::vector<StarPtr> kept;
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (k < v.removed.size() && v.removed[k] == j)
                ++k;
            else
                kept.push_back((*node)->children()[j]);
        }
        if (k != v.removed.size()) return false;
        return premises_equal({mk_premise(subst(x, *app.position, 0, make_node(StructKind::Semi, std::move(kept))), a)});
    }
    default: break;
    }

    // Remaining rules are leaf rules over a preimage variant.
    if (!app.position) return false;
    const StarPtr* leaf = node_at(x, *app.position);
    if (!leaf || (*leaf)->kind() != StructKind::Leaf) return false;
    const FormulaPtr f = (*leaf)->formula();

    bool ok = false;
    std::uint32_t mask = prefixes_to_mask(*app.position, v.duplicated, ok);
    if (!ok || app.position->size() + 1 > 31) return false;
    auto [w, pleaf] = dup_build(x, *app.position, 0, mask);

    switch (app.rule) {
    case RuleName::OneL:
        return f->kind() == FormulaKind::One && descriptor_clean(true, false, false, false) &&
               premises_equal({mk_premise(subst(w, pleaf, 0, StarBunch::empty_m()), a)});
    case RuleName::AndL1:
        return f->kind() == FormulaKind::And && descriptor_clean(true, false, false, false) &&
               premises_equal({mk_premise(subst(w, pleaf, 0, StarBunch::leaf(f->left())), a)});
    case RuleName::AndL2:
        return f->kind() == FormulaKind::And && descriptor_clean(true, false, false, false) &&
               premises_equal({mk_premise(subst(w, pleaf, 0, StarBunch::leaf(f->right())), a)});
    case RuleName::TensorL:
        return f->kind() == FormulaKind::Tensor && descriptor_clean(true, false, false, false) &&
               premises_equal({mk_premise(
                   subst(w, pleaf, 0,
                         make_node(StructKind::Comma, {StarBunch::leaf(f->left()), StarBunch::leaf(f->right())})),
                   a)});
    case RuleName::OrL:
        return f->kind() == FormulaKind::Or && descriptor_clean(true, false, false, false) &&
               premises_equal({mk_premise(subst(w, pleaf, 0, StarBunch::leaf(f->left())), a),
                               mk_premise(subst(w, pleaf, 0, StarBunch::leaf(f->right())), a)});
    case RuleName::ImpL: {
        if (f->kind() != FormulaKind::Imp || !descriptor_clean(true, true, false, false)) return false;
        auto prem = implication_premises(PrincipalSite{w, pleaf, f}, v, /*additive=*/true, a);
        return prem && premises_equal(*prem);
    }
    case RuleName::WandL: {
        if (f->kind() != FormulaKind::Wand || !descriptor_clean(true, true, false, false)) return false;
        auto prem = implication_premises(PrincipalSite{w, pleaf, f}, v, /*additive=*/false, a);
        return prem && premises_equal(*prem);
    }
    default: return false;
    }
}

} // namespace bip
