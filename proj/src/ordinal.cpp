#include "bisimkit/ordinal.hpp"

#include <algorithm>
#include <stdexcept>

namespace bisimkit {

Ordinal::Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coefficient == 0)
            throw std::invalid_argument("ordinal term with zero coefficient");
        if (i > 0 && terms_[i - 1].exponent <= terms_[i].exponent)
            throw std::invalid_argument("ordinal exponents must be strictly decreasing");
    }
}

Ordinal Ordinal::natural(std::uint64_t n) {
    Ordinal o;
    if (n > 0) o.terms_.push_back({0, n});
    return o;
}

Ordinal Ordinal::omega_times(std::uint64_t k) {
    Ordinal o;
    if (k > 0) o.terms_.push_back({1, k});
    return o;
}

Ordinal Ordinal::omega_plus(std::uint64_t n) { return omega().plus_natural(n); }

std::optional<std::uint64_t> Ordinal::as_natural() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1 && terms_[0].exponent == 0) return terms_[0].coefficient;
    return std::nullopt;
}

Ordinal Ordinal::plus_natural(std::uint64_t n) const {
    if (n == 0) return *this;
    Ordinal o = *this;
    if (!o.terms_.empty() && o.terms_.back().exponent == 0)
        o.terms_.back().coefficient += n;
    else
        o.terms_.push_back({0, n});
    return o;
}

Ordinal Ordinal::succ() const { return plus_natural(1); }

std::string Ordinal::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += "+";
        if (t.exponent == 0) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += "w";
        if (t.exponent > 1) out += "^" + std::to_string(t.exponent);
        if (t.coefficient > 1) out += "*" + std::to_string(t.coefficient);
    }
    return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (x[i].exponent != y[i].exponent) return x[i].exponent <=> y[i].exponent;
        if (x[i].coefficient != y[i].coefficient) return x[i].coefficient <=> y[i].coefficient;
    }
    return x.size() <=> y.size();
}

Cmp ord_compare(const Ordinal& a, const Ordinal& b) {
    auto c = a <=> b;
    if (c < 0) return Cmp::LT;
    if (c > 0) return Cmp::GT;
    return Cmp::EQ;
}

Ordinal ord_sup(std::span<const Ordinal> items) {
    Ordinal best;
    for (const auto& o : items)
        if (o > best) best = o;
    return best;
}

}  // namespace bisimkit
