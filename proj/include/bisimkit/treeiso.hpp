#pragma once

#include <string>

#include "bisimkit/ordinal.hpp"
#include "bisimkit/trees.hpp"

namespace bisimkit {

/// Canonical serialization of a MultiTree.
///
///   node  := "(" entry* ")"
///   entry := <byte length of label> ":" label "[" child* "]"
///   child := node "^" ("w" | <decimal count>)
///
/// Entries follow label byte order; children of one label are merged when their
/// forms coincide (counts add, saturating at ω) and sorted by form. A leaf is "()".
std::string canon(const MultiTree& t);
bool iso(const MultiTree& t, const MultiTree& tp);

/// ≡_α: both tree ranks equal α and the trees are isomorphic, decided by
/// comparing per label the multiplicity of every child type, with child types
/// compared by the same recursion.
bool cong_alpha(const MultiTree& t, const MultiTree& tp, const Ordinal& alpha);

/// forth^α_k ∧ back^α_k on materialized root children. A child of count ω
/// contributes k copies, which is all a k-tuple can use.
bool forth_back_k(const MultiTree& t, const MultiTree& tp, const Ordinal& alpha, std::size_t k);

}  // namespace bisimkit
