#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bisimkit/epset.hpp"
#include "bisimkit/lts.hpp"
#include "bisimkit/trees.hpp"

namespace bisimkit {

/// m_n(x) = x △ {positions of the set bits of n}; m_0 is the identity.
EPSet mod_n(const EPSet& x, std::uint64_t n);
SymbolicTree build_A(const EPSet& x);
/// Child n of the root carries A(m_n(x)).
SymbolicTree build_B(const EPSet& x);

/// ◇^{k+1}¬◇⊤ over the tree label.
ModalFormula diamond_k_formula(std::uint64_t k);
/// (A(x), ∅) ⊨ ◇^{k+1}¬◇⊤, evaluated symbolically.
bool diamond_k_sat(const EPSet& x, std::uint64_t k);
/// (A(w), ∅) ⊨ φ(z), evaluated symbolically.
bool char_sat(const EPSet& w, const EPSet& z);

struct BBisimVerdict {
    bool bisimilar = false;
    /// x △ y when it is finite.
    std::optional<std::set<std::uint64_t>> difference;
    /// ◇φ(x) when the trees are separated; it holds at B(x) and fails at B(y).
    ModalFormula distinguisher;
};

/// Decides (B(x), ∅) ∼ (B(y), ∅). A finite difference yields the matching of
/// root children (checked on a prefix of indices); otherwise ◇φ(x) is
/// evaluated on both trees and must separate them (std::logic_error if not).
BBisimVerdict b_bisim_verdict(const EPSet& x, const EPSet& y);
inline bool b_bisim(const EPSet& x, const EPSet& y) { return b_bisim_verdict(x, y).bisimilar; }

/// Pairs (n, n′) for n < count with m_n(x) = m_{n′}(y), where
/// mask(n′) = mask(n) △ (x △ y). Throws std::invalid_argument unless x E₀ y.
std::vector<std::pair<std::uint64_t, std::uint64_t>> matching_bijection(const EPSet& x, const EPSet& y,
                                                                        std::uint64_t count);

/// Truncation of B(y) whose child i carries A(m_{n′}(y)) for the partner n′
/// of i under matching_bijection(x, y, width).
ExplicitTree b_truncate_matched(const EPSet& x, const EPSet& y, std::uint64_t depth, std::uint64_t width);

}  // namespace bisimkit
