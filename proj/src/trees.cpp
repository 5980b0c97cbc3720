#include "bisimkit/trees.hpp"

#include <functional>

namespace bisimkit {

MultiTree::Ptr mt_leaf() { return std::make_shared<const MultiTree>(); }

MultiTree::Ptr mt_node(std::map<std::string, std::vector<std::pair<MultiTree::Ptr, Count>>> children) {
    MultiTree t;
    t.children = std::move(children);
    mt_validate(t);
    return std::make_shared<const MultiTree>(std::move(t));
}

void mt_validate(const MultiTree& t) {
    for (const auto& [label, kids] : t.children) {
        if (kids.empty()) throw std::invalid_argument("label '" + label + "' has no children");
        for (const auto& [child, count] : kids) {
            if (!child) throw std::invalid_argument("null child under label '" + label + "'");
            if (count.is_zero()) throw std::invalid_argument("zero multiplicity under label '" + label + "'");
        }
    }
}

std::uint64_t mt_root_rank(const MultiTree& t) {
    std::uint64_t r = 0;
    for (const auto& [label, kids] : t.children)
        for (const auto& [child, count] : kids) r = std::max(r, mt_root_rank(*child) + 1);
    return r;
}

Ordinal mt_tree_rank(const MultiTree& t) { return Ordinal::natural(mt_root_rank(t) + 1); }

std::size_t mt_distinct_size(const MultiTree& t) {
    std::size_t n = 1;
    for (const auto& [label, kids] : t.children)
        for (const auto& [child, count] : kids) n += mt_distinct_size(*child);
    return n;
}

namespace {

MultiTree::Ptr explicit_sub(const ExplicitTree& T, const ExplicitTree::Seq& u) {
    MultiTree t;
    for (auto c : T.children(u)) {
        auto v = u;
        v.push_back(c);
        t.children[kTreeLabel].emplace_back(explicit_sub(T, v), Count(1));
    }
    return std::make_shared<const MultiTree>(std::move(t));
}

MultiTree::Ptr mtree_sub(const MTree& T, const MTree::Seq& u) {
    MultiTree t;
    for (const auto& c : T.children(u)) {
        auto v = u;
        v.push_back(c);
        t.children[c.label].emplace_back(mtree_sub(T, v), Count(1));
    }
    return std::make_shared<const MultiTree>(std::move(t));
}

void materialize(const MultiTree& t, std::uint64_t width, ExplicitTree::Seq& prefix, ExplicitTree& out) {
    out.insert(prefix);
    std::uint64_t next = 0;
    for (const auto& [label, kids] : t.children)
        for (const auto& [child, count] : kids) {
            std::uint64_t copies = count.is_omega() ? width : count.value();
            for (std::uint64_t i = 0; i < copies; ++i) {
                prefix.push_back(next++);
                materialize(*child, width, prefix, out);
                prefix.pop_back();
            }
        }
}

}  // namespace

MultiTree::Ptr explicit_to_multitree(const ExplicitTree& T) {
    if (T.empty()) throw std::invalid_argument("the empty tree has no root");
    return explicit_sub(T, {});
}

MultiTree::Ptr mtree_to_multitree(const MTree& T) {
    if (T.empty()) throw std::invalid_argument("the empty tree has no root");
    return mtree_sub(T, {});
}

ExplicitTree multitree_to_explicit(const MultiTree& t, std::uint64_t width) {
    ExplicitTree out;
    ExplicitTree::Seq prefix;
    materialize(t, width, prefix, out);
    return out;
}

SymbolicTree SymbolicTree::chain(std::uint64_t k) {
    SymbolicTree t;
    t.kind = Kind::Chain;
    t.k = k;
    return t;
}

SymbolicTree SymbolicTree::a_tree(EPSet x) {
    SymbolicTree t;
    t.kind = Kind::A;
    t.set = std::move(x);
    return t;
}

SymbolicTree SymbolicTree::b_tree(EPSet x) {
    SymbolicTree t;
    t.kind = Kind::B;
    t.set = std::move(x);
    return t;
}

SymbolicTree SymbolicTree::glue(std::vector<SymbolicTree> children) {
    SymbolicTree t;
    t.kind = Kind::Glue;
    t.children = std::move(children);
    return t;
}

namespace {

Ordinal sym_root_rank(const SymbolicTree& t) {
    using K = SymbolicTree::Kind;
    switch (t.kind) {
        case K::Chain: return Ordinal::natural(t.k);
        case K::A: return ep_sup_succ(t.set);
        case K::B: return t.set.is_finite() ? Ordinal::omega() : Ordinal::omega_plus(1);
        case K::Glue: {
            std::vector<Ordinal> rs;
            for (const auto& c : t.children) rs.push_back(sym_root_rank(c).succ());
            return ord_sup(rs);
        }
    }
    return Ordinal();
}

bool is_leaf(const SymbolicTree& t) {
    using K = SymbolicTree::Kind;
    switch (t.kind) {
        case K::Chain: return t.k == 0;
        case K::A: return t.set.is_empty();
        case K::B: return false;
        case K::Glue: return t.children.empty();
    }
    return false;
}

void truncate_into(const SymbolicTree& t, std::uint64_t depth, std::uint64_t width, ExplicitTree::Seq& prefix,
                   ExplicitTree& out) {
    using K = SymbolicTree::Kind;
    out.insert(prefix);
    if (depth == 0) return;
    auto child = [&](const SymbolicTree& c, std::uint64_t index) {
        prefix.push_back(index);
        truncate_into(c, depth - 1, width, prefix, out);
        prefix.pop_back();
    };
    switch (t.kind) {
        case K::Chain:
            if (t.k > 0 && width > 0) child(SymbolicTree::chain(t.k - 1), 0);
            break;
        case K::A:
            for (auto k : t.set.elements_below(width)) child(SymbolicTree::chain(k), k);
            break;
        case K::B:
            for (std::uint64_t n = 0; n < width; ++n) child(SymbolicTree::a_tree(t.set.modification(n)), n);
            break;
        case K::Glue:
            for (std::uint64_t i = 0; i < width && i < t.children.size(); ++i) child(t.children[i], i);
            break;
    }
}

bool rank_cmp(const Ordinal& r, const Ordinal& alpha, RankCmp cmp) {
    switch (cmp) {
        case RankCmp::Less: return r < alpha;
        case RankCmp::LessEq: return r <= alpha;
        case RankCmp::Eq: return r == alpha;
        case RankCmp::GreaterEq: return r >= alpha;
        case RankCmp::Greater: return r > alpha;
    }
    return false;
}

// Largest finite constant mentioned by a rank or set atom of f.
std::uint64_t formula_constant(const ModalFormula& f) {
    using K = FormulaNode::Kind;
    std::uint64_t c = 0;
    if (f->kind == K::RankAtLeast)
        if (auto n = f->rank.as_natural()) c = *n;
    if (f->kind == K::CharSet)
        if (auto m = f->set.max_element()) c = *m;
    for (const auto& a : f->args) c = std::max(c, formula_constant(a));
    return c;
}

// Chains of length ≥ chain_threshold(f) all agree on f.
std::uint64_t chain_threshold(const ModalFormula& f) { return modal_depth(f) + formula_constant(f) + 2; }

// Scans f at an A-tree root: diamonds look at chains, atoms at the root itself.
void a_level_scan(const ModalFormula& f, std::uint64_t& bound, std::vector<EPSet>& sets) {
    using K = FormulaNode::Kind;
    switch (f->kind) {
        case K::Dia: bound = std::max(bound, chain_threshold(f->args[0])); return;
        case K::RankAtLeast:
            if (auto n = f->rank.as_natural()) bound = std::max(bound, *n);
            return;
        case K::CharSet:
            if (std::find(sets.begin(), sets.end(), f->set) == sets.end()) sets.push_back(f->set);
            return;
        default:
            for (const auto& a : f->args) a_level_scan(a, bound, sets);
    }
}

constexpr std::uint64_t kMaxPatternBits = 16;

struct SymEvaluator {
    bool at(const SymbolicTree& t, const ModalFormula& f) {
        using K = FormulaNode::Kind;
        switch (f->kind) {
            case K::Top: return true;
            case K::Neg: return !at(t, f->args[0]);
            case K::And:
                for (const auto& a : f->args)
                    if (!at(t, a)) return false;
                return true;
            case K::Or:
                for (const auto& a : f->args)
                    if (at(t, a)) return true;
                return false;
            case K::RankAtLeast: return sym_root_rank(t) >= f->rank;
            case K::CharSet: return leaf_distances(t) == f->set;
            case K::Dia:
                if (f->label != kTreeLabel) return false;
                return dia(t, f->args[0]);
        }
        return false;
    }

    bool dia(const SymbolicTree& t, const ModalFormula& g) {
        using K = SymbolicTree::Kind;
        switch (t.kind) {
            case K::Chain: return t.k > 0 && at(SymbolicTree::chain(t.k - 1), g);
            case K::Glue:
                for (const auto& c : t.children)
                    if (at(c, g)) return true;
                return false;
            case K::A: {
                auto th = chain_threshold(g);
                for (auto k : t.set.elements_below(th + 1))
                    if (at(SymbolicTree::chain(k), g)) return true;
                return t.set.has_element_at_least(th + 1) && at(SymbolicTree::chain(th + 1), g);
            }
            case K::B: return b_dia(t.set, g);
        }
        return false;
    }

    // Some A(w) with w E₀ x satisfies g. The truth of g at A(w) depends only on
    // w ∩ [0,T], on whether w reaches beyond T, and on which set atoms of g
    // equal w; the candidates below realize every such combination.
    bool b_dia(const EPSet& x, const ModalFormula& g) {
        std::uint64_t T = 0;
        std::vector<EPSet> sets;
        a_level_scan(g, T, sets);
        if (T + 1 > kMaxPatternBits)
            throw UnsupportedFormula("formula needs a pattern search over " + std::to_string(T + 1) +
                                     " positions under a B-tree root");
        for (const auto& z : sets)
            if (ep_finite_difference(x, z) && at(SymbolicTree::a_tree(z), g)) return true;
        std::set<std::uint64_t> low;
        for (auto k : x.elements_below(T + 1)) low.insert(k);
        const std::uint64_t variants = sets.size() + 1;
        for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << (T + 1)); ++pattern) {
            auto bits = modification_mask(pattern);
            std::set<std::uint64_t> flip;
            std::set_symmetric_difference(low.begin(), low.end(), bits.begin(), bits.end(),
                                          std::inserter(flip, flip.end()));
            EPSet base = x.xor_finite(flip);
            std::vector<EPSet> cands;
            if (x.is_finite()) {
                base = EPSet::finite(bits);
                cands.push_back(base);
            }
            for (std::uint64_t j = 0; j < variants; ++j) {
                if (x.is_finite())
                    cands.push_back(base.xor_finite({T + 1 + j}));
                else
                    cands.push_back(j == 0 ? base : base.xor_finite({T + j}));
            }
            for (const auto& w : cands)
                if (at(SymbolicTree::a_tree(w), g)) return true;
        }
        return false;
    }
};

}  // namespace

SymRank sym_rank(const SymbolicTree& t) {
    auto r = sym_root_rank(t);
    return {r, r.succ()};
}

ExplicitTree sym_truncate(const SymbolicTree& t, std::uint64_t depth, std::uint64_t width) {
    ExplicitTree out;
    ExplicitTree::Seq prefix;
    truncate_into(t, depth, width, prefix, out);
    return out;
}

bool psi_sat(const ExplicitTree& T, const Ordinal& alpha) { return node_rank(T, {}) >= alpha; }

bool psi_sat(const SymbolicTree& t, const Ordinal& alpha) { return sym_root_rank(t) >= alpha; }

bool wf_class(const ExplicitTree& T, const Ordinal& alpha, RankCmp cmp) { return rank_cmp(tree_rank(T), alpha, cmp); }

bool wf_class(const SymbolicTree& t, const Ordinal& alpha, RankCmp cmp) {
    return rank_cmp(sym_rank(t).tree, alpha, cmp);
}

EPSet leaf_distances(const SymbolicTree& t) {
    using K = SymbolicTree::Kind;
    switch (t.kind) {
        case K::Chain: return t.k == 0 ? EPSet() : EPSet::finite({t.k - 1});
        case K::A: return t.set;
        // Children are A(w) for w E₀ x; a leaf child A(∅) occurs iff x is finite.
        case K::B: return t.set.is_finite() ? EPSet::all() : EPSet::from_bits("0", "1");
        case K::Glue: {
            EPSet out;
            for (const auto& c : t.children) {
                out = out.unite(leaf_distances(c).shift_up());
                if (is_leaf(c)) out = out.unite(EPSet::finite({0}));
            }
            return out;
        }
    }
    return EPSet();
}

bool sym_eval(const SymbolicTree& t, const ModalFormula& f) {
    SymEvaluator ev;
    return ev.at(t, f);
}

PointedLTS tree_to_lts(const ExplicitTree& T) {
    if (T.empty()) throw std::invalid_argument("the empty tree has no root");
    std::vector<std::string> names;
    std::map<ExplicitTree::Seq, StateId> index;
    for (const auto& u : T.nodes()) {
        std::string name = "[";
        for (std::size_t i = 0; i < u.size(); ++i) name += (i ? "," : "") + std::to_string(u[i]);
        index.emplace(u, names.size());
        names.push_back(name + "]");
    }
    PointedLTS L({kTreeLabel}, names, 0);
    for (const auto& u : T.nodes())
        if (!u.empty()) L.add_edge(index.at(ExplicitTree::Seq(u.begin(), u.end() - 1)), 0, index.at(u));
    return L;
}

}  // namespace bisimkit
