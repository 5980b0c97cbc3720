#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bisimkit/count.hpp"
#include "bisimkit/epset.hpp"
#include "bisimkit/lts.hpp"
#include "bisimkit/ordinal.hpp"

namespace bisimkit {

/// A finite tree as a prefix-closed set of sequences over Sym.
template <class Sym>
class BasicTree {
public:
    using Seq = std::vector<Sym>;

    /// The empty tree.
    BasicTree() = default;
    /// Throws std::invalid_argument unless the set is prefix closed.
    explicit BasicTree(std::set<Seq> nodes) : nodes_(std::move(nodes)) {
        for (const auto& u : nodes_)
            if (!u.empty() && !nodes_.count(Seq(u.begin(), u.end() - 1)))
                throw std::invalid_argument("node set is not closed under initial segments");
    }
    static BasicTree leaf() { return BasicTree(std::set<Seq>{Seq{}}); }

    /// Inserts u together with all its initial segments.
    void insert(const Seq& u) {
        for (std::size_t i = 0; i <= u.size(); ++i) nodes_.emplace(u.begin(), u.begin() + i);
    }

    bool contains(const Seq& u) const { return nodes_.count(u) > 0; }
    bool empty() const { return nodes_.empty(); }
    std::size_t size() const { return nodes_.size(); }
    const std::set<Seq>& nodes() const { return nodes_; }

    /// Immediate extensions of u, in symbol order.
    std::vector<Sym> children(const Seq& u) const {
        std::vector<Sym> out;
        for (auto it = nodes_.upper_bound(u); it != nodes_.end(); ++it) {
            if (it->size() <= u.size() || !std::equal(u.begin(), u.end(), it->begin())) break;
            if (it->size() == u.size() + 1) out.push_back(it->back());
        }
        return out;
    }

    friend bool operator==(const BasicTree&, const BasicTree&) = default;

private:
    std::set<Seq> nodes_;
};

using ExplicitTree = BasicTree<std::uint64_t>;

/// Path entry (state, label, copy index) of an ω-indexed path.
struct MEntry {
    std::uint64_t state = 0;
    std::string label;
    std::uint64_t index = 0;
    friend auto operator<=>(const MEntry&, const MEntry&) = default;
};

using MTree = BasicTree<MEntry>;

/// ρ_T(u) for every node, by one bottom-up pass.
template <class Sym>
std::map<std::vector<Sym>, std::uint64_t> node_ranks(const BasicTree<Sym>& T) {
    std::map<std::vector<Sym>, std::uint64_t> rank;
    for (auto it = T.nodes().rbegin(); it != T.nodes().rend(); ++it) {
        auto r = rank.emplace(*it, 0).first->second;
        if (!it->empty()) {
            auto& parent = rank[std::vector<Sym>(it->begin(), it->end() - 1)];
            parent = std::max(parent, r + 1);
        }
    }
    return rank;
}

/// ρ_T(u); zero for u ∉ T.
template <class Sym>
Ordinal node_rank(const BasicTree<Sym>& T, const std::vector<Sym>& u) {
    if (!T.contains(u)) return Ordinal();
    auto ranks = node_ranks(T);
    return Ordinal::natural(ranks.at(u));
}

/// ρ(T) = ρ_T(∅)+1 for nonempty T, 0 for the empty tree.
template <class Sym>
Ordinal tree_rank(const BasicTree<Sym>& T) {
    if (T.empty()) return Ordinal();
    return node_rank(T, {}).succ();
}

/// T_s = {t | s⌢t ∈ T}
template <class Sym>
BasicTree<Sym> section(const BasicTree<Sym>& T, const std::vector<Sym>& s) {
    std::set<std::vector<Sym>> out;
    for (auto it = T.nodes().lower_bound(s); it != T.nodes().end(); ++it) {
        if (it->size() < s.size() || !std::equal(s.begin(), s.end(), it->begin())) break;
        out.emplace(it->begin() + s.size(), it->end());
    }
    return BasicTree<Sym>(std::move(out));
}

/// Drops the first entry; throws std::invalid_argument on the empty sequence.
template <class Sym>
std::vector<Sym> tail(const std::vector<Sym>& u) {
    if (u.empty()) throw std::invalid_argument("tail of the empty sequence");
    return std::vector<Sym>(u.begin() + 1, u.end());
}

/// Labelled tree whose children carry multiplicities in ℕ ∪ {ω}.
struct MultiTree {
    using Ptr = std::shared_ptr<const MultiTree>;
    std::map<std::string, std::vector<std::pair<Ptr, Count>>> children;
};

MultiTree::Ptr mt_leaf();
MultiTree::Ptr mt_node(std::map<std::string, std::vector<std::pair<MultiTree::Ptr, Count>>> children);
/// Throws std::invalid_argument on zero counts or empty label entries.
void mt_validate(const MultiTree& t);
std::uint64_t mt_root_rank(const MultiTree& t);
Ordinal mt_tree_rank(const MultiTree& t);
/// Number of nodes of the underlying tree with every ω count read as one copy.
std::size_t mt_distinct_size(const MultiTree& t);

/// Every node gets its children with count one under kTreeLabel.
MultiTree::Ptr explicit_to_multitree(const ExplicitTree& T);
/// Children grouped under the label of their last path entry, count one each.
MultiTree::Ptr mtree_to_multitree(const MTree& T);
/// Materializes counts, replacing ω by `width` copies. Children are numbered
/// consecutively across labels in label order.
ExplicitTree multitree_to_explicit(const MultiTree& t, std::uint64_t width);

/// Finitely described single-label tree.
struct SymbolicTree {
    enum class Kind { Chain, A, B, Glue };
    Kind kind = Kind::Chain;
    std::uint64_t k = 0;                 // Chain
    EPSet set;                           // A, B
    std::vector<SymbolicTree> children;  // Glue

    static SymbolicTree chain(std::uint64_t k);
    static SymbolicTree a_tree(EPSet x);
    static SymbolicTree b_tree(EPSet x);
    static SymbolicTree glue(std::vector<SymbolicTree> children);
};

struct SymRank {
    Ordinal root;
    Ordinal tree;
};

SymRank sym_rank(const SymbolicTree& t);
/// Nodes of depth ≤ depth whose branching indices are all < width. Child n of a
/// B-tree root carries A(m_n(x)); child i of a glue carries its i-th tree.
ExplicitTree sym_truncate(const SymbolicTree& t, std::uint64_t depth, std::uint64_t width);

/// Root rank reading: holds iff ρ_T(∅) ≥ α.
bool psi_sat(const ExplicitTree& T, const Ordinal& alpha);
bool psi_sat(const SymbolicTree& t, const Ordinal& alpha);

enum class RankCmp { Less, LessEq, Eq, GreaterEq, Greater };
/// Compares the tree rank ρ(T) = ρ_T(∅)+1 with α.
bool wf_class(const ExplicitTree& T, const Ordinal& alpha, RankCmp cmp);
bool wf_class(const SymbolicTree& t, const Ordinal& alpha, RankCmp cmp);

/// Evaluates a formula at the root of a symbolic tree. Diamonds over labels
/// other than kTreeLabel are false. Throws UnsupportedFormula when a diamond
/// under a B-tree root would need a pattern search wider than 2^16.
bool sym_eval(const SymbolicTree& t, const ModalFormula& f);
/// {n | the root satisfies ◇^{n+1}¬◇⊤}
EPSet leaf_distances(const SymbolicTree& t);

/// The single-label LTS of a finite tree: one state per node, root first.
PointedLTS tree_to_lts(const ExplicitTree& T);

}  // namespace bisimkit
