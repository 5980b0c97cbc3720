#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace bisimkit {

/// Exact rational; always kept reduced with a positive denominator.
using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed text or a
/// zero denominator.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

}  // namespace bisimkit
