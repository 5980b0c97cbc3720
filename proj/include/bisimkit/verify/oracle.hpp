#pragma once

#include <cstdint>
#include <functional>

#include "bisimkit/lts.hpp"
#include "bisimkit/nlmp.hpp"

namespace bisimkit::verify {

/// Brute-force reference implementations. They follow the definitions
/// literally (subset enumeration, relation enumeration) and share no code
/// with the library algorithms beyond the data types.

/// Calls f on every relation in 2^(n×m); n·m ≤ 20.
void for_each_relation(std::size_t n, std::size_t m, const std::function<void(const Rel&)>& f);
/// Calls f on every subset of {0..n-1}; n ≤ 20.
void for_each_subset(std::size_t n, const std::function<void(const StateSet&)>& f);

bool oracle_lts_is_bisim(const PointedLTS& l, const PointedLTS& m, const Rel& r);
/// Union of all relations passing oracle_lts_is_bisim.
Rel oracle_greatest_bisim(const PointedLTS& l, const PointedLTS& m);

/// Pairwise membership loops, no image operations.
bool oracle_closed_pair(const Rel& r, const StateSet& e, const StateSet& ep);
bool oracle_rclosed(const Rel& r, const StateSet& e);
Rational oracle_mass(const SubProbMeasure& mu, const StateSet& q);
/// Every closed set (pair) enumerated explicitly.
bool oracle_lift_internal(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r);
bool oracle_lift_external(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r);

bool oracle_is_state_bisim(const PointmassNLMP& n, const Rel& r);
bool oracle_is_ext_state_bisim(const PointmassNLMP& n, const PointmassNLMP& np, const Rel& r);
/// Union of all symmetric relations passing oracle_is_state_bisim.
Rel oracle_greatest_state_bisim(const PointmassNLMP& n);
Rel oracle_greatest_ext_bisim(const PointmassNLMP& n, const PointmassNLMP& np);

}  // namespace bisimkit::verify
