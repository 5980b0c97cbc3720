#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bisimkit/epset.hpp"
#include "bisimkit/lts.hpp"
#include "bisimkit/nlmp.hpp"
#include "bisimkit/trees.hpp"
#include "bisimkit/uniform.hpp"

namespace bisimkit::verify {

/// Seeded source whose draws depend only on the raw engine output, so streams
/// are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
    Rng fork() { return Rng(eng_()); }

private:
    std::mt19937_64 eng_;
};

std::vector<std::string> label_names(std::size_t n);

/// Random LTS with n states; each possible edge present with probability pct/100.
PointedLTS random_lts(Rng& rng, std::size_t n, std::size_t labels, std::uint64_t pct);
/// As random_lts but edges only go from higher to lower indices (acyclic).
PointedLTS random_wf_lts(Rng& rng, std::size_t n, std::size_t labels, std::uint64_t pct);

EPSet random_epset(Rng& rng, std::size_t max_prefix, std::size_t max_period);
ExplicitTree random_explicit_tree(Rng& rng, std::size_t max_nodes, std::uint64_t max_branch);
/// Random MultiTree of root rank ≤ max_rank over the given labels.
MultiTree::Ptr random_multitree(Rng& rng, std::size_t max_rank, std::size_t max_children,
                                const std::vector<std::string>& labels);
/// Isomorphic copy: children reordered, ω entries sometimes split in two and
/// finite counts sometimes split into unit entries.
MultiTree::Ptr permute_multitree(Rng& rng, const MultiTree& t);
/// Copy with one random local change (count, label, or a child added/removed);
/// the result may still happen to be isomorphic.
MultiTree::Ptr mutate_multitree(Rng& rng, const MultiTree& t, const std::vector<std::string>& labels);
/// Every MultiTree with at most max_nodes distinct nodes, labels from `labels`
/// and counts from {1, 2, ω}.
std::vector<MultiTree::Ptr> all_multitrees(std::size_t max_nodes, const std::vector<std::string>& labels);
/// Every tree over ℕ with at most n nodes, up to reordering of siblings.
std::vector<ExplicitTree> all_explicit_trees(std::size_t n);

/// Random measure on {0..n-1} with at most max_support points and weights over
/// a small denominator, so that mass coincidences are common.
SubProbMeasure random_measure(Rng& rng, std::size_t n, std::size_t max_support);
/// Each (state, label) gets up to max_measures measures with probability pct/100.
PointmassNLMP random_nlmp(Rng& rng, std::size_t n, std::size_t labels, std::size_t max_measures,
                          std::size_t max_support, std::uint64_t pct);
Rel random_rel(Rng& rng, std::size_t n, std::size_t m, std::uint64_t pct);
/// Disjoint union of complete bipartite blocks; some points left unrelated.
Rel random_z_closed_rel(Rng& rng, std::size_t n, std::size_t m);
/// Moves the mass of μ inside each component of R to random points of the
/// partner side, giving a measure externally related to μ when μ vanishes off
/// dom R.
SubProbMeasure transport_measure(Rng& rng, const SubProbMeasure& mu, const Rel& r);
/// Same transition sets, different table: rows shuffled, entries shuffled and
/// some zero-weight entries to random states inserted.
UniformStructure scramble_uniform(Rng& rng, const UniformStructure& u);

}  // namespace bisimkit::verify
