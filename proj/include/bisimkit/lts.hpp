#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bisimkit/epset.hpp"
#include "bisimkit/ordinal.hpp"
#include "bisimkit/relation.hpp"

namespace bisimkit {

using LabelId = std::size_t;

/// Label used when a single-label tree is viewed as a transition system.
inline const std::string kTreeLabel = "*";

/// Finite pointed labelled transition system. Labels and states keep their
/// declaration order; successor lists are sorted and duplicate free.
class PointedLTS {
public:
    struct Edge {
        StateId src;
        LabelId label;
        StateId dst;
        friend auto operator<=>(const Edge&, const Edge&) = default;
    };

    PointedLTS() = default;
    PointedLTS(std::vector<std::string> labels, std::vector<std::string> states, StateId root = 0);

    /// Adds an edge by index; throws std::out_of_range for unknown endpoints.
    void add_edge(StateId src, LabelId label, StateId dst);
    void add_edge(const std::string& src, const std::string& label, const std::string& dst);
    void set_root(StateId root);

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::string>& states() const { return states_; }
    std::size_t size() const { return states_.size(); }
    StateId root() const { return root_; }

    std::optional<LabelId> label_index(const std::string& name) const;
    std::optional<StateId> state_index(const std::string& name) const;

    const std::vector<StateId>& successors(StateId s, LabelId a) const { return succ_[a][s]; }
    std::vector<StateId> all_successors(StateId s) const;
    bool is_terminal(StateId s) const;
    std::vector<Edge> edges() const;
    std::size_t edge_count() const;

private:
    std::vector<std::string> labels_;
    std::vector<std::string> states_;
    StateId root_ = 0;
    std::vector<std::vector<std::vector<StateId>>> succ_;  // [label][state]
};

/// Element of ωLTS with finitely many edges: a root number and, per label, a
/// finite edge set on ℕ × ℕ.
struct OmegaLTSCode {
    std::uint64_t root = 0;
    std::map<std::string, std::set<std::pair<std::uint64_t, std::uint64_t>>> edges;
    friend bool operator==(const OmegaLTSCode&, const OmegaLTSCode&) = default;
};

/// Pointed LTS on the part reachable from the code's root. States are named by
/// their decimal numbers and listed in breadth-first order. Throws
/// std::length_error when more than reachable_bound states are reachable.
PointedLTS code_to_lts(const OmegaLTSCode& c, std::size_t reachable_bound);
/// Encodes L through an injective numbering of its states (all states).
OmegaLTSCode lts_to_code(const PointedLTS& L, const std::vector<std::uint64_t>& numbering);
/// Uses the decimal state names when they all parse, else the state indices.
OmegaLTSCode lts_to_code(const PointedLTS& L);
/// The code with edges out of unreachable numbers removed.
OmegaLTSCode code_reachable_part(const OmegaLTSCode& c);

StateSet reachable(const PointedLTS& L, StateId s);

/// Largest bisimulation between L and L′; labels are matched by name.
Rel greatest_bisim(const PointedLTS& L, const PointedLTS& Lp);
/// Zig and zag hold for every pair of R.
bool is_bisimulation(const PointedLTS& L, const PointedLTS& Lp, const Rel& R);
/// Classes of the largest bisimulation on a single system, each sorted, ordered
/// by least member.
std::vector<std::vector<StateId>> bisim_partition(const PointedLTS& L);
/// The d-th approximant: R_0 total, R_{i+1} the zig/zag refinement of R_i.
Rel d_bisim(const PointedLTS& L, const PointedLTS& Lp, std::size_t d);

struct FormulaNode;
using ModalFormula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    enum class Kind { Top, Neg, And, Or, Dia, RankAtLeast, CharSet };
    Kind kind = Kind::Top;
    std::vector<ModalFormula> args;
    std::string label;  // Dia
    Ordinal rank;       // RankAtLeast
    EPSet set;          // CharSet
};

ModalFormula f_top();
ModalFormula f_bot();
ModalFormula f_neg(ModalFormula a);
ModalFormula f_and(std::vector<ModalFormula> args);
ModalFormula f_or(std::vector<ModalFormula> args);
ModalFormula f_dia(std::string label, ModalFormula a);
ModalFormula f_rank_at_least(Ordinal alpha);
ModalFormula f_charset(EPSet z);

std::size_t modal_depth(const ModalFormula& f);
std::string formula_to_string(const ModalFormula& f);

/// Thrown when a formula node has no meaning on the structure it is evaluated on.
class UnsupportedFormula : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool eval_formula(const PointedLTS& L, StateId s, const ModalFormula& f);
StateSet sem_set(const PointedLTS& L, const ModalFormula& f);

/// Rank of every state; nullopt marks ∞ (a cycle is reachable).
std::vector<std::optional<std::uint64_t>> state_ranks(const PointedLTS& L);
std::optional<Ordinal> state_rank(const PointedLTS& L, StateId s);
StateSet wf_part(const PointedLTS& L);

/// φ_α over the given labels: explicit for α < ω, RankAtLeast(α) otherwise.
ModalFormula build_phi(const Ordinal& alpha, const std::vector<std::string>& labels);
/// ψ_α = ◇^α⊤ over kTreeLabel, symbolic for α ≥ ω.
ModalFormula build_psi(const Ordinal& alpha);

}  // namespace bisimkit
