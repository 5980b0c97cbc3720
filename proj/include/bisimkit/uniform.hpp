#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bisimkit/lts.hpp"
#include "bisimkit/nlmp.hpp"
#include "bisimkit/trees.hpp"

namespace bisimkit {

/// One summand r_{k,n,a}(s) δ_{t_{k,n,a}(s)}.
struct UniformEntry {
    Rational r;
    StateId t;
    friend bool operator==(const UniformEntry&, const UniformEntry&) = default;
};
/// Row n of the table at (s, a): index k ↦ (r, t).
using UniformRow = std::vector<UniformEntry>;

/// Finite uniform structure: rows[s][a] lists the rows n of T_a(s); an empty
/// list means T_a(s) = ∅. Labels follow the process's label order.
struct UniformStructure {
    std::vector<std::vector<std::vector<UniformRow>>> rows;
    friend bool operator==(const UniformStructure&, const UniformStructure&) = default;
};

/// Σ_k r_k δ_{t_k} with zero weights dropped.
SubProbMeasure row_measure(const UniformRow& row);

/// One row per measure of T_a(s) in sorted order, one entry per support point.
UniformStructure derive_uniform(const PointmassNLMP& n);
/// First discrepancy between the table and the process, naming (s, a, n) or
/// the missing measure; nullopt when the table reconstructs every T_a(s).
std::optional<std::string> uniform_mismatch(const PointmassNLMP& n, const UniformStructure& u);
inline bool validate_uniform(const PointmassNLMP& n, const UniformStructure& u) {
    return !uniform_mismatch(n, u);
}

/// X_s in enumeration order: x_0(s) = s, then values of compositions of the
/// maps t_{k,n,a} breadth first by composition length and table order,
/// duplicates removed, at most `bound` values.
std::vector<StateId> x_enum(const UniformStructure& u, StateId s, std::size_t bound);
/// X_s as a set over a space of `universe` states.
StateSet x_set(const UniformStructure& u, StateId s, std::size_t universe);

/// T_a(s) = {δ_t | t ∈ T̃_a(s)} for every edge relation of the LTS.
PointmassNLMP nlmp_from_lts(const PointedLTS& l);
/// Inverse of nlmp_from_lts; throws std::invalid_argument unless every
/// measure is a Dirac measure.
PointedLTS lts_from_nlmp(const PointmassNLMP& n, StateId root = 0);
/// UMLTS table: t_{0,n,a}(s) is the n-th successor with weight 1, padded by
/// t_{1,n,a}(s) = s with weight 0.
UniformStructure umlts_structure(const PointedLTS& l);

/// h(s): the reachable part A_s renumbered by f(r) = least n with x_n(s) = r.
OmegaLTSCode h_map(const PointedLTS& l, StateId s);

/// Index set J_{x,x′,R,n,k} for label a: the j with r_{j,n,a}(x) ≠ 0 such that
/// t_{k,n,a}(x) and t_{j,n,a}(x) share an R-partner among `witnesses`.
std::set<std::size_t> j_set(const UniformStructure& u, StateId x, const Rel& r, LabelId a, std::size_t n,
                            std::size_t k, const std::vector<StateId>& witnesses);
/// G = Σ {r_{j,n,a}(x) | j ∈ J}.
Rational g_value(const UniformStructure& u, StateId x, const Rel& r, LabelId a, std::size_t n, std::size_t k,
                 const std::vector<StateId>& witnesses);
/// G′ = Σ {r_{j′,n′,a}(x′) | r ≠ 0, t_{k,n,a}(x) R t_{j′,n′,a}(x′)}.
Rational g_prime_value(const UniformStructure& u, StateId x, const UniformStructure& up, StateId xp, const Rel& r,
                       LabelId a, std::size_t n, std::size_t np, std::size_t k);

/// Zig/zag condition between row n at x and row n′ at x′ through the G/K
/// sums: for every k with r_k ≠ 0, k ∈ J and G = G′; and symmetrically with
/// K, K′ for the primed side. Witness ranges are X_{x′} and X_x.
bool gk_block(const UniformStructure& u, StateId x, const UniformStructure& up, StateId xp, const Rel& r, LabelId a,
              std::size_t n, std::size_t np);

struct UniformSearchResult {
    bool bisimilar = false;
    /// Ambient indices, supported on X_s × X_{s′}.
    Rel witness;
    bool z_closed = false;
    /// Every related pair passes the emptiness clause and the G/K blocks.
    bool gk_ok = false;
};

/// Greatest external bisimulation between the substructures on X_s and X_{s′}
/// of the same process, with its z-closure and G/K verification.
UniformSearchResult uniform_bisim_search(const PointmassNLMP& n, const UniformStructure& u, StateId s, StateId sp);

/// The single-label process on the nodes of T with edges s → s⌢m.
PointedLTS f_process(const ExplicitTree& t);

struct RankExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// canon(Ω(h(s))) = canon(Ω(h(t))). Throws RankExceeded unless both states
/// have finite rank ≤ α.
bool pipeline_rank_bounded_bisim(const PointedLTS& l, StateId s, StateId t, std::uint64_t alpha);
/// Canonical form of the expansion of h(s); the pipeline compares these.
std::string pipeline_canon(const PointedLTS& l, StateId s, std::uint64_t alpha);

}  // namespace bisimkit
