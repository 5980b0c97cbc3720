#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bisimkit/lts.hpp"
#include "bisimkit/rational.hpp"
#include "bisimkit/relation.hpp"

namespace bisimkit {

/// Finitely supported subprobability measure: state ↦ positive weight, total
/// mass ≤ 1. The zero measure is the empty map.
using SubProbMeasure = std::map<StateId, Rational>;

Rational mass(const SubProbMeasure& mu, const StateSet& q);
Rational total_mass(const SubProbMeasure& mu);
StateSet support(const SubProbMeasure& mu, std::size_t universe);
/// Throws std::invalid_argument unless weights are positive, total ≤ 1 and
/// every support point is below `universe`.
void validate_measure(const SubProbMeasure& mu, std::size_t universe);
std::string measure_to_string(const SubProbMeasure& mu, const std::vector<std::string>& names);

/// Finite nondeterministic labelled Markov process whose transition sets are
/// finite sets of finitely supported measures (powerset σ-algebra).
class PointmassNLMP {
public:
    PointmassNLMP() = default;
    PointmassNLMP(std::vector<std::string> labels, std::vector<std::string> states);

    /// Adds μ to T_a(s); duplicates are ignored. Validates μ.
    void add_measure(StateId s, LabelId a, SubProbMeasure mu);

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::string>& states() const { return states_; }
    std::size_t size() const { return states_.size(); }
    std::optional<LabelId> label_index(const std::string& name) const;
    std::optional<StateId> state_index(const std::string& name) const;

    /// T_a(s), sorted and duplicate free.
    const std::vector<SubProbMeasure>& trans(StateId s, LabelId a) const { return trans_[s][a]; }

    friend bool operator==(const PointmassNLMP&, const PointmassNLMP&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::string> states_;
    std::vector<std::vector<std::vector<SubProbMeasure>>> trans_;  // [state][label]
};

/// Atoms of Σ(R) for R on S: weakly connected components of R ∪ R⁻¹, ordered
/// by least member. A set is R-closed iff it is a union of atoms.
std::vector<StateSet> rclosed_atoms(const Rel& r);

/// Atoms of the R-closed pairs for R ⊆ S × S′.
struct ClosedPairAtoms {
    std::vector<std::pair<StateSet, StateSet>> components;
    StateSet isolated_left;
    StateSet isolated_right;
};
ClosedPairAtoms closed_pair_atoms(const Rel& r);

bool is_rclosed(const Rel& r, const StateSet& e);
/// R[E] ⊆ E′ and R⁻¹[E′] ⊆ E.
bool is_closed_pair(const Rel& r, const StateSet& e, const StateSet& ep);

struct NotZClosed : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// μ(Q) = μ′(Q) for every R-closed Q.
bool lift_internal(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r);
/// μ(Q) = μ′(Q′) for every R-closed pair (Q, Q′).
bool lift_external(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r);
/// Support characterization of the external lift for z-closed R: both support
/// conditions plus the requirement that every support point is R-related to
/// something. Throws NotZClosed.
bool lift_support(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r);

/// Requires R symmetric (std::invalid_argument otherwise).
bool is_state_bisim(const PointmassNLMP& n, const Rel& r);
/// Labels are matched by name; a missing label means an empty transition set.
bool is_ext_state_bisim(const PointmassNLMP& n, const PointmassNLMP& np, const Rel& r);
Rel greatest_state_bisim(const PointmassNLMP& n);
Rel greatest_ext_bisim(const PointmassNLMP& n, const PointmassNLMP& np);

/// Requires R symmetric (std::invalid_argument otherwise).
bool is_hit_bisim(const PointmassNLMP& n, const Rel& r);
/// Λ is any family of subsets of S; it is closed to σ(Λ) internally.
bool is_event_bisim(const PointmassNLMP& n, const std::vector<StateSet>& lambda);
/// Atoms of σ(Λ) on S: classes of equal membership pattern, by least member.
std::vector<StateSet> sigma_atoms(std::size_t universe, const std::vector<StateSet>& lambda);

}  // namespace bisimkit
