#include "bip/prover.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_set>

#include "bip/errors.hpp"
#include "bip/measure.hpp"
#include "bip/parser.hpp"
#include "json.hpp"

namespace bip {

namespace {

const char* sibling_role_name(SiblingRole r) noexcept {
    switch (r) {
    case SiblingRole::Context: return "context";
    case SiblingRole::Moved: return "moved";
    case SiblingRole::Both: return "both";
    }
    return "?";
}

} // namespace

const char* outcome_name(Outcome o) noexcept {
    switch (o) {
    case Outcome::Provable: return "provable";
    case Outcome::Unprovable: return "unprovable";
    case Outcome::ResourceLimit: return "resource-limit";
    }
    return "?";
}

Prover::Prover(SearchConfig cfg) : cfg_(cfg) {}

void Prover::clear() { memo_.clear(); }

std::size_t Prover::memo_size() const { return memo_.size(); }

// Depth-first backward search, evaluated as the least fixed point of the
// and-or graph the rules span: a sequent is provable iff some application
// has every premise provable. Each distinct sequent is expanded at most
// once; repetitions meet an already-active node instead of regrowing the
// branch. Provability propagates through per-application counters the
// moment a premise is settled, and when a strongly connected component of
// still-active nodes completes without a proof, every remaining member is
// unprovable outright (a well-founded derivation cannot live entirely
// inside a cycle). Both verdicts are therefore context-free, which is what
// makes the global memo sound — failure caching keyed to a particular
// branch would not be.
Result Prover::decide(const Sequent& root) {
    Result result;
    SearchStats& st = result.stats;
    st.root_weight = weight(root);

    const std::size_t height_limit = 2 * (st.root_weight + 1); // strict

    enum class Status : std::uint8_t { Active, Proved, Failed };

    struct App {
        RuleName rule;
        std::optional<Path> position;
        VariantDescriptor variant;
        std::vector<Sequent> premises;
        std::vector<std::uint32_t> premise_ids; // filled as premises resolve
        std::size_t pending = 0;                // premise entries not yet proved
        bool dead = false;                      // some premise is unprovable
    };

    struct Node {
        Sequent s;
        Status status = Status::Active;
        DerivationPtr deriv;
        std::vector<App> apps;
        // (watching node, application index) per premise entry that met this
        // node while it was still active.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> watchers;
        std::uint32_t index = 0;   // discovery order
        std::uint32_t lowlink = 0; // oldest active node reachable from here
        bool on_component_stack = false;
        std::size_t cap_strict = 0;   // weight(s)
        std::size_t cap_collapse = 0; // premise_weight_bound(s)

        explicit Node(Sequent q) : s(std::move(q)) {}
    };

    struct Frame {
        std::uint32_t node;
        std::uint32_t app_idx = 0;
        std::uint32_t prem_idx = 0;
        std::size_t cap_strict = 0;
        std::size_t cap_collapse = 0;
    };

    std::vector<Node> nodes;
    std::unordered_map<Sequent, std::uint32_t, SequentHash, SequentEq> table;
    std::vector<std::uint32_t> component_stack;
    std::vector<Frame> frames;
    std::unordered_set<Sequent, SequentHash, SequentEq> distinct;

    struct DistinctCounter {
        SearchStats& st;
        const std::unordered_set<Sequent, SequentHash, SequentEq>& seen;
        ~DistinctCounter() { st.distinct_sequents = seen.size(); }
    } distinct_counter{st, distinct};

    // Resource guards beyond the node budget: a cap on premise sequents held
    // alive in the table at once (so duplication-heavy searches cannot exhaust
    // memory before exhausting the budget) and a premise-visit allowance
    // proportional to the budget (so they cannot grind through enormous
    // application lists either). Both surface as ResourceLimit.
    constexpr std::size_t kLivePremiseCap = std::size_t{1} << 19;
    std::size_t live_premises = 0;
    std::size_t visits = 0;

    auto note_visited = [&](const Sequent& q) {
        ++visits;
        if (cfg_.max_visited && st.nodes_expanded > 0 &&
            visits > 8 * (*cfg_.max_visited + 1))
            throw EnumerationLimit("premise visit allowance exhausted");
        st.max_height_seen = std::max(st.max_height_seen, q.antecedent.height());
        if (q.antecedent.height() >= height_limit)
            throw LogicError("search invariant violated: antecedent height reached the bound");
        // Alternation: a normal bunch of height 2n has at least n comma
        // separators, so height can never exceed twice the size plus one.
        if (q.antecedent.height() > 2 * q.antecedent.size() + 1)
            throw LogicError("search invariant violated: antecedent height exceeds its size bound");
        if (cfg_.collect_stats) distinct.insert(q);
    };

    // Premise vectors are dropped as soon as nothing can read them again: an
    // application that died or finished its walk, or a node whose verdict is
    // settled. Derivations are rebuilt from premise_ids, never from these.
    auto release_app_premises = [&](App& a) {
        live_premises -= a.premises.size();
        std::vector<Sequent>().swap(a.premises);
    };
    auto release_apps = [&](Node& n) {
        for (App& a : n.apps) live_premises -= a.premises.size();
        std::vector<App>().swap(n.apps);
    };

    // Mark a node proved and cascade through the watcher lists: any
    // application whose last unproved premise this was proves its own
    // conclusion in turn. Verdicts go to the global memo immediately.
    auto propagate_proved = [&](std::uint32_t start, DerivationPtr start_deriv) {
        nodes[start].status = Status::Proved;
        nodes[start].deriv = std::move(start_deriv);
        memo_.emplace(nodes[start].s, MemoEntry{Outcome::Provable, nodes[start].deriv});
        release_apps(nodes[start]);
        std::vector<std::uint32_t> queue{start};
        while (!queue.empty()) {
            const std::uint32_t id = queue.back();
            queue.pop_back();
            for (auto [watcher, app_idx] : nodes[id].watchers) {
                Node& w = nodes[watcher];
                if (w.status != Status::Active) continue;
                App& a = w.apps[app_idx];
                if (a.dead || --a.pending > 0) continue;
                w.status = Status::Proved;
                if (cfg_.emit_derivation) {
                    std::vector<DerivationPtr> children;
                    children.reserve(a.premise_ids.size());
                    for (std::uint32_t pid : a.premise_ids)
                        children.push_back(nodes[pid].deriv);
                    w.deriv = std::make_shared<Derivation>(Derivation{
                        w.s, a.rule, a.position, a.variant, std::move(children)});
                }
                memo_.emplace(w.s, MemoEntry{Outcome::Provable, w.deriv});
                release_apps(w);
                queue.push_back(watcher);
            }
            nodes[id].watchers.clear();
        }
    };

    enum class Res : std::uint8_t { Proved, Failed, Active, Pushed, Limit };

    // Bring a premise sequent into the node table: settled verdicts come from
    // the global memo or the axioms; an active node signals a cycle; anything
    // new is expanded and pushed as a search frame.
    auto resolve = [&](const Sequent& q) -> std::pair<Res, std::uint32_t> {
        if (auto it = table.find(q); it != table.end()) {
            const Status status = nodes[it->second].status;
            if (status == Status::Active) return {Res::Active, it->second};
            ++st.memo_hits;
            return {status == Status::Proved ? Res::Proved : Res::Failed, it->second};
        }
        if (auto it = memo_.find(q); it != memo_.end()) {
            ++st.memo_hits;
            const std::uint32_t id = static_cast<std::uint32_t>(nodes.size());
            nodes.emplace_back(q);
            nodes.back().status = it->second.outcome == Outcome::Provable
                                      ? Status::Proved
                                      : Status::Failed;
            nodes.back().deriv = it->second.derivation;
            table.emplace(q, id);
            return {nodes.back().status == Status::Proved ? Res::Proved : Res::Failed, id};
        }
        if (auto ax = axioms(q)) {
            const std::uint32_t id = static_cast<std::uint32_t>(nodes.size());
            nodes.emplace_back(q);
            nodes.back().status = Status::Proved;
            if (cfg_.emit_derivation)
                nodes.back().deriv = std::make_shared<Derivation>(
                    Derivation{q, *ax, std::nullopt, VariantDescriptor{}, {}});
            table.emplace(q, id);
            memo_.emplace(q, MemoEntry{Outcome::Provable, nodes.back().deriv});
            return {Res::Proved, id};
        }
        if (cfg_.max_visited && st.nodes_expanded >= *cfg_.max_visited)
            return {Res::Limit, 0};
        ++st.nodes_expanded;
        const std::uint32_t id = static_cast<std::uint32_t>(nodes.size());
        nodes.emplace_back(q);
        Node& n = nodes.back();
        n.index = n.lowlink = id;
        n.on_component_stack = true;
        n.cap_strict = weight(q);
        n.cap_collapse = premise_weight_bound(q);
        for (RuleApplication& ra : expand(q)) {
            App a;
            a.rule = ra.rule;
            a.position = std::move(ra.position);
            a.variant = std::move(ra.variant);
            a.premises = std::move(ra.premises);
            a.premise_ids.assign(a.premises.size(), 0);
            a.pending = a.premises.size();
            live_premises += a.premises.size();
            n.apps.push_back(std::move(a));
        }
        if (live_premises > kLivePremiseCap)
            throw EnumerationLimit("stored premise allowance exhausted");
        table.emplace(q, id);
        component_stack.push_back(id);
        frames.push_back(Frame{id, 0, 0, n.cap_strict, n.cap_collapse});
        st.max_stack_depth = std::max(st.max_stack_depth, frames.size());
        return {Res::Pushed, id};
    };

    try {
        {
            note_visited(root);
            auto [res, id] = resolve(root);
            if (res == Res::Proved) {
                result.outcome = Outcome::Provable;
                result.derivation = nodes[id].deriv;
                return result;
            }
            if (res == Res::Failed) {
                result.outcome = Outcome::Unprovable;
                return result;
            }
            if (res == Res::Limit) {
                result.outcome = Outcome::ResourceLimit;
                return result;
            }
        }

        while (!frames.empty()) {
            if (nodes[0].status == Status::Proved) break; // root settled early

            // Note: resolve() below may reallocate both `nodes` and `frames`;
            // the Pushed branch touches neither reference afterwards, and the
            // other branches re-take what they need.
            Frame& f = frames.back();
            const std::uint32_t vid = f.node;

            if (nodes[vid].status == Status::Proved) {
                frames.pop_back();
                continue; // the parent frame re-reads the settled verdict
            }

            if (f.app_idx == nodes[vid].apps.size()) {
                // Every application is either dead or blocked on an active
                // cycle. If this node heads its strongly connected component,
                // the component has no support left: fail all unproved
                // members for good. Otherwise leave the node active; its fate
                // is settled when the component head completes.
                if (nodes[vid].lowlink == nodes[vid].index) {
                    while (true) {
                        const std::uint32_t member = component_stack.back();
                        component_stack.pop_back();
                        Node& m = nodes[member];
                        m.on_component_stack = false;
                        if (m.status == Status::Active) {
                            m.status = Status::Failed;
                            release_apps(m);
                            m.watchers.clear();
                            memo_.emplace(m.s, MemoEntry{Outcome::Unprovable, nullptr});
                        }
                        if (member == vid) break;
                    }
                } else if (frames.size() > 1) {
                    Node& parent = nodes[frames[frames.size() - 2].node];
                    parent.lowlink = std::min(parent.lowlink, nodes[vid].lowlink);
                }
                frames.pop_back();
                continue;
            }

            App& app = nodes[vid].apps[f.app_idx];
            if (app.dead) {
                ++f.app_idx;
                f.prem_idx = 0;
                continue;
            }

            if (f.prem_idx == app.premises.size()) {
                if (app.pending == 0) {
                    // All premises already proved: conclude immediately.
                    DerivationPtr d;
                    if (cfg_.emit_derivation) {
                        std::vector<DerivationPtr> children;
                        children.reserve(app.premise_ids.size());
                        for (std::uint32_t pid : app.premise_ids)
                            children.push_back(nodes[pid].deriv);
                        d = std::make_shared<Derivation>(Derivation{
                            nodes[vid].s, app.rule, app.position, app.variant,
                            std::move(children)});
                    }
                    propagate_proved(vid, std::move(d));
                    frames.pop_back();
                    continue;
                }
                // Blocked on active premises; watchers may still finish it.
                release_app_premises(app);
                ++f.app_idx;
                f.prem_idx = 0;
                continue;
            }

            const Sequent premise = app.premises[f.prem_idx];
            const std::size_t wp = weight(premise);
            const bool collapses = app.rule == RuleName::OneL ||
                                   app.rule == RuleName::WandL ||
                                   app.rule == RuleName::Weak;
            if (wp > (collapses ? f.cap_collapse : f.cap_strict))
                throw LogicError(
                    "search invariant violated: premise weight exceeds its step bound");
            note_visited(premise);

            auto [res, id] = resolve(premise);
            // resolve may grow the node vector; re-take the references.
            Node& v = nodes[vid];
            App& a = v.apps[f.app_idx];
            switch (res) {
            case Res::Proved:
                a.premise_ids[f.prem_idx] = id;
                --a.pending;
                ++f.prem_idx;
                break;
            case Res::Failed:
                a.dead = true;
                release_app_premises(a);
                ++f.app_idx;
                f.prem_idx = 0;
                break;
            case Res::Active:
                v.lowlink = std::min(v.lowlink, nodes[id].index);
                nodes[id].watchers.emplace_back(vid, f.app_idx);
                a.premise_ids[f.prem_idx] = id;
                ++f.prem_idx;
                break;
            case Res::Pushed:
                break; // the child frame runs first; this premise is retried
            case Res::Limit:
                result.outcome = Outcome::ResourceLimit;
                return result;
            }
        }

        if (nodes[0].status == Status::Proved) {
            result.outcome = Outcome::Provable;
            result.derivation = nodes[0].deriv;
            return result;
        }
        result.outcome = Outcome::Unprovable;
        return result;
    } catch (const EnumerationLimit&) {
        result.outcome = Outcome::ResourceLimit;
        return result;
    }
}

Result decide(const Sequent& s, const SearchConfig& cfg) { return Prover(cfg).decide(s); }

Result decide_text(std::string_view text, const SearchConfig& cfg) {
    return decide(to_sequent(parse_sequent(text)), cfg);
}

bool verify(const DerivationPtr& d) {
    if (!d) return false;
    std::vector<const Derivation*> todo{d.get()};
    while (!todo.empty()) {
        const Derivation* n = todo.back();
        todo.pop_back();
        if (n->children.empty() && !is_axiom_rule(n->rule)) return false;
        RuleApplication app{n->rule, n->position, n->variant, {}};
        app.premises.reserve(n->children.size());
        for (const DerivationPtr& c : n->children) {
            if (!c) return false;
            app.premises.push_back(c->sequent);
            todo.push_back(c.get());
        }
        if (!check_instance(n->sequent, app)) return false;
    }
    return true;
}

SearchBounds search_bounds(const Sequent& s) {
    SearchBounds b;
    b.weight = weight(s);
    b.height_bound = 2 * b.weight + 1;
    b.subformula_count = subformulas(s).size();
    return b;
}

std::string space_bound_symbolic(const Sequent& s) {
    SearchBounds b = search_bounds(s);
    std::ostringstream os;
    os << "|Omega(" << (2 * b.weight + 2) << ")| * " << b.subformula_count;
    return os.str();
}

namespace {

void render_text(const Derivation& d, std::size_t depth, std::string& out) {
    out.append(2 * depth, ' ');
    out += render(d.sequent);
    out += "   [";
    out += rule_name(d.rule);
    out += "]\n";
    for (const DerivationPtr& c : d.children) render_text(*c, depth + 1, out);
}

void render_latex(const Derivation& d, std::string& out) {
    for (const DerivationPtr& c : d.children) render_latex(*c, out);
    if (d.children.empty()) out += "\\AxiomC{}\n";
    out += "\\RightLabel{(\\textsf{";
    out += rule_name(d.rule);
    out += "})}\n";
    out += d.children.size() == 2 ? "\\BinaryInfC{$" : "\\UnaryInfC{$";
    out += render(d.sequent, Style::Latex);
    out += "$}\n";
}

nlohmann::json variant_json(const Derivation& d) {
    nlohmann::json v;
    if (d.position) v["position"] = *d.position;
    v["duplicated"] = d.variant.duplicated;
    nlohmann::json roles = nlohmann::json::array();
    for (SiblingRole r : d.variant.sibling_roles) roles.push_back(sibling_role_name(r));
    v["sibling_roles"] = std::move(roles);
    v["y_includes_principal"] = d.variant.y_includes_principal;
    v["split_left"] = d.variant.split_left;
    v["removed"] = d.variant.removed;
    return v;
}

nlohmann::json derivation_json(const Derivation& d) {
    nlohmann::json j;
    j["sequent"] = render(d.sequent);
    j["rule"] = rule_name(d.rule);
    j["variant"] = variant_json(d);
    nlohmann::json kids = nlohmann::json::array();
    for (const DerivationPtr& c : d.children) kids.push_back(derivation_json(*c));
    j["children"] = std::move(kids);
    return j;
}

} // namespace

std::string render(const DerivationPtr& d, Style style) {
    if (!d) return {};
    switch (style) {
    case Style::Text: {
        std::string out;
        render_text(*d, 0, out);
        return out;
    }
    case Style::Latex: {
        std::string out = "\\begin{prooftree}\n";
        render_latex(*d, out);
        out += "\\end{prooftree}\n";
        return out;
    }
    case Style::Json:
        return derivation_json(*d).dump(2);
    }
    return {};
}

std::string stats_json(const SearchStats& st, const Sequent& root) {
    SearchBounds b = search_bounds(root);
    nlohmann::json j;
    j["nodes_expanded"] = st.nodes_expanded;
    j["memo_hits"] = st.memo_hits;
    j["max_stack_depth"] = st.max_stack_depth;
    j["distinct_sequents"] = st.distinct_sequents;
    j["root_weight"] = st.root_weight;
    j["max_height_seen"] = st.max_height_seen;
    j["height_bound"] = b.height_bound;
    j["subformula_count"] = b.subformula_count;
    j["space_bound"] = space_bound_symbolic(root);
    return j.dump(2);
}

} // namespace bip
