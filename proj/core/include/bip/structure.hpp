#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bip/bunch.hpp"
#include "bip/formula.hpp"
#include "bip/render.hpp"

namespace bip {

// Flattened antecedent trees: combination nodes are n-ary (n >= 2) and
// alternate, i.e. no comma node has a comma child and no semicolon node has a
// semicolon child. Child order is irrelevant for meaning; reduce() (below)
// additionally imposes a canonical order.
enum class StructKind : std::uint8_t {
    Leaf,
    EmptyM,
    EmptyA,
    Comma,
    Semi,
};

class StarBunch;
using StarPtr = std::shared_ptr<const StarBunch>;

class StarBunch {
public:
    static StarPtr leaf(FormulaPtr f);
    static StarPtr empty_m();
    static StarPtr empty_a();
    static StarPtr comma(std::vector<StarPtr> children); // size >= 2
    static StarPtr semi(std::vector<StarPtr> children);  // size >= 2

    StructKind kind() const noexcept { return kind_; }
    const FormulaPtr& formula() const { return formula_; } // Leaf only
    std::span<const StarPtr> children() const { return children_; }

    std::uint64_t hash() const noexcept { return hash_; }
    std::size_t size() const noexcept { return size_; }     // cached tree_size
    std::size_t height() const noexcept { return height_; } // cached tree_height

    // Set by reduce() on nodes it has fully normalized; lets later passes
    // skip untouched subtrees.
    bool reduced_flag() const noexcept { return reduced_; }
    void mark_reduced() const noexcept { reduced_ = true; }

private:
    StarBunch(StructKind kind, FormulaPtr formula, std::vector<StarPtr> children);

    StructKind kind_;
    FormulaPtr formula_;
    std::vector<StarPtr> children_;
    std::uint64_t hash_;
    std::size_t size_;
    std::size_t height_;
    mutable bool reduced_ = false;
};

bool tree_equal(const StarPtr& a, const StarPtr& b);

// Strict total order on trees: by node variant in the order
// Leaf < EmptyA < EmptyM < Semi < Comma, leaves by formula order, composite
// nodes lexicographically by their child sequences.
std::strong_ordering tree_compare(const StarPtr& a, const StarPtr& b);

// |Ea| = |Em| = 0; a leaf weighs its formula; a comma node sums its children
// plus one per separator; a semicolon node takes the maximum child.
std::size_t tree_size(const StarPtr& x);

// Number of nodes minus one along the longest root-to-leaf branch.
std::size_t tree_height(const StarPtr& x);

bool is_star(const StarPtr& x);   // alternation + arity invariants
bool is_normal(const StarPtr& x); // is_star + unit/duplicate/order invariants

// Flattening: collapses nested same-connective combinations into n-ary nodes,
// bottom-up, preserving child order. Leaves and units map to themselves.
StarPtr star(const BunchPtr& x);

// Combine two trees under a connective, flattening same-kind heads so the
// alternation invariant is maintained.
StarPtr star_join(StructKind op, const StarPtr& a, const StarPtr& b);
StarPtr star_join(StructKind op, std::vector<StarPtr> parts); // empty -> the unit of op

// A tree in reduced canonical form: no EmptyM child of a comma, no EmptyA
// child of a semicolon, no node whose children are all its own unit,
// semicolon children pairwise distinct, children canonically sorted (comma
// children non-decreasing, semicolon children strictly increasing).
// Instances are only obtainable through reduce(), so holding a NormalBunch is
// proof of the invariants.
class NormalBunch {
public:
    const StarPtr& node() const noexcept { return node_; }

    std::size_t size() const { return tree_size(node_); }
    std::size_t height() const { return tree_height(node_); }
    std::uint64_t hash() const noexcept { return node_->hash(); }

    friend NormalBunch reduce(const StarPtr& x);

private:
    explicit NormalBunch(StarPtr node) : node_(std::move(node)) {}
    StarPtr node_;
};

// The normalization function: drops redundant units, deduplicates semicolon
// children, collapses single-child and all-unit nodes, re-flattens, and sorts
// children canonically. Idempotent, and compositional over star_join.
NormalBunch reduce(const StarPtr& x);

bool normal_equal(const NormalBunch& a, const NormalBunch& b);
std::strong_ordering canonical_compare(const NormalBunch& a, const NormalBunch& b);

FormulaPtr interpret(const StarPtr& x);
FormulaPtr interpret(const NormalBunch& x);

// A sequent with its antecedent in reduced canonical form; the working
// representation for measures, rule enumeration, and search.
struct Sequent {
    NormalBunch antecedent;
    FormulaPtr succedent;
};

Sequent to_sequent(const RawSequent& raw); // star then reduce
bool sequent_equal(const Sequent& a, const Sequent& b);
std::strong_ordering sequent_compare(const Sequent& a, const Sequent& b);
std::uint64_t sequent_hash(const Sequent& s);

std::vector<FormulaPtr> subformulas(const Sequent& s);

struct SequentHash {
    std::size_t operator()(const Sequent& s) const noexcept { return static_cast<std::size_t>(sequent_hash(s)); }
};
struct SequentEq {
    bool operator()(const Sequent& a, const Sequent& b) const { return sequent_equal(a, b); }
};

std::string render(const StarPtr& x, Style style = Style::Text);
std::string render(const NormalBunch& x, Style style = Style::Text);
std::string render(const Sequent& s, Style style = Style::Text);

} // namespace bip
