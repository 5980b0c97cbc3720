#pragma once

#include <cstdint>
#include <stdexcept>

#include "bisimkit/lts.hpp"
#include "bisimkit/trees.hpp"

namespace bisimkit {

class IllFounded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// ω-expansion of (L, s): under label a, one child of count ω per a-successor.
/// Throws IllFounded when a cycle is reachable from s.
MultiTree::Ptr omega_expand(const PointedLTS& L, StateId s);
/// The expansion cut after d steps; defined for every state.
MultiTree::Ptr omega_expand_truncated(const PointedLTS& L, StateId s, std::size_t d);

/// Ω(c) up to the multiplicity quotient.
MultiTree::Ptr omega_code_expand(const OmegaLTSCode& c);
/// ω-indexed paths (t, a, n) from the root with n < width and length ≤ depth.
MTree omega_code_tree(const OmegaLTSCode& c, std::size_t depth, std::uint64_t width);

}  // namespace bisimkit
