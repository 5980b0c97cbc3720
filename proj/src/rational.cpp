#include "bisimkit/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace bisimkit {

namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed rational '" + whole + "'");
    return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string_view sv = text;
    auto slash = sv.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(sv, text));
    std::int64_t num = parse_int(sv.substr(0, slash), text);
    std::int64_t den = parse_int(sv.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("rational '" + text + "' has zero denominator");
    return Rational(num, den);
}

std::string format_rational(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace bisimkit
