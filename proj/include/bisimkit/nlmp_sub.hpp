#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "bisimkit/nlmp.hpp"

namespace bisimkit {

struct NotThick : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// On a finite space with the powerset σ-algebra: μ(A) = μ(S), i.e. supp μ ⊆ A.
bool is_thick(const StateSet& a, const SubProbMeasure& mu);
/// μ_A; global state indices are kept. Throws NotThick.
SubProbMeasure restrict_measure(const SubProbMeasure& mu, const StateSet& a);

/// Substructure on a carrier A: the induced process uses local indices
/// 0..|A|-1 in increasing global order.
struct Substructure {
    StateSet carrier;
    std::vector<StateId> to_global;
    std::vector<std::optional<StateId>> to_local;
    PointmassNLMP induced;
};

/// Throws NotThick naming the first (s, a, μ) whose support leaves A.
Substructure substructure(const PointmassNLMP& n, const StateSet& a);

/// T̃_a(s): union of the supports of the measures in T_a(s).
StateSet tilde_T(const PointmassNLMP& n, StateId s, LabelId a);
/// A_s: least set containing s and closed under every T̃_a.
StateSet reach_A_s(const PointmassNLMP& n, StateId s);

/// R↓ = R ∩ (A × A′), on the ambient indices.
Rel restrict_rel(const Rel& r, const StateSet& a, const StateSet& ap);
/// R ⊆ A × A′ on ambient indices re-expressed on the local indices of the two
/// substructures; pairs outside the carriers are dropped.
Rel localize_rel(const Rel& r, const Substructure& a, const Substructure& ap);
/// Inverse of localize_rel, back on the ambient indices.
Rel globalize_rel(const Rel& r, const Substructure& a, const Substructure& ap);
/// id↾A from the ambient space to the local indices of the substructure.
Rel inclusion_rel(const Substructure& a);

/// Sum process: left states first, prefixed "l:", then right states,
/// prefixed "r:". Labels are the union by name.
PointmassNLMP sum_nlmp(const PointmassNLMP& n, const PointmassNLMP& np);
inline StateId inl(StateId s) { return s; }
inline StateId inr(const PointmassNLMP& n, StateId sp) { return n.size() + sp; }
/// ⌜R⌝ = {(inl s, inr s′) | s R s′} on the sum of sizes n + m.
Rel rel_lift(const Rel& r);
/// R_× = {(s, s′) | inl s R inr s′}.
Rel rel_descent(const Rel& r, std::size_t n, std::size_t m);

/// 𝓡(Σ(R)) for R on S: the equivalence whose classes are the atoms of Σ(R).
Rel r_sigma_closure(const Rel& r);
/// 𝓡^×(Σ^×(R)) for R ⊆ S × S′: pairs lying in a common component.
Rel rx_closure(const Rel& r);

}  // namespace bisimkit
