#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bisimkit {

/// Ordinal below ω^ω in Cantor normal form.
///
/// Stored as terms (exponent, coefficient) with strictly decreasing exponents
/// and positive coefficients; the empty term list is 0. Ranks of every
/// finitely presented tree handled by the library stay well below ω^ω.
class Ordinal {
public:
    struct Term {
        std::uint32_t exponent = 0;
        std::uint64_t coefficient = 0;
        friend bool operator==(const Term&, const Term&) = default;
    };

    Ordinal() = default;
    explicit Ordinal(std::vector<Term> terms);  // validates CNF, throws std::invalid_argument

    static Ordinal natural(std::uint64_t n);
    static Ordinal omega() { return omega_times(1); }
    static Ordinal omega_times(std::uint64_t k);
    static Ordinal omega_plus(std::uint64_t n);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const { return terms_.empty() || terms_.front().exponent == 0; }
    /// Value of a finite ordinal; nullopt for α ≥ ω.
    std::optional<std::uint64_t> as_natural() const;
    bool is_limit() const { return !terms_.empty() && terms_.back().exponent > 0; }

    Ordinal succ() const;
    Ordinal plus_natural(std::uint64_t n) const;

    std::string to_string() const;

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b) = default;

private:
    std::vector<Term> terms_;
};

enum class Cmp { LT, EQ, GT };

Cmp ord_compare(const Ordinal& a, const Ordinal& b);

/// Least upper bound; sup of the empty family is 0.
Ordinal ord_sup(std::span<const Ordinal> items);

}  // namespace bisimkit
