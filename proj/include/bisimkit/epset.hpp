#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bisimkit/ordinal.hpp"

namespace bisimkit {

/// Eventually periodic subset of ℕ: a finite prefix followed by a repeating
/// period. Always held in canonical form (shortest period, then shortest
/// prefix), so structural equality is extensional equality.
class EPSet {
public:
    /// The empty set.
    EPSet() : period_{false} {}
    EPSet(std::vector<bool> prefix, std::vector<bool> period);

    /// Parses bit strings such as ("0101", "10"); throws std::invalid_argument.
    static EPSet from_bits(const std::string& prefix, const std::string& period);
    static EPSet finite(const std::set<std::uint64_t>& elems);
    static EPSet all() { return from_bits("", "1"); }
    static EPSet evens() { return from_bits("", "10"); }
    static EPSet odds() { return from_bits("", "01"); }

    const std::vector<bool>& prefix() const { return prefix_; }
    const std::vector<bool>& period() const { return period_; }
    std::string prefix_bits() const;
    std::string period_bits() const;

    bool contains(std::uint64_t n) const;
    bool is_finite() const;
    bool is_empty() const { return is_finite() && !max_element(); }
    /// Largest element of a finite nonempty set.
    std::optional<std::uint64_t> max_element() const;
    /// Some element n ≥ bound exists.
    bool has_element_at_least(std::uint64_t bound) const;
    /// Elements below bound, ascending.
    std::vector<std::uint64_t> elements_below(std::uint64_t bound) const;

    /// Symmetric difference with a finite mask.
    EPSet xor_finite(const std::set<std::uint64_t>& mask) const;
    /// The n-th finite modification: flip the positions of the set bits of n.
    EPSet modification(std::uint64_t n) const;
    EPSet unite(const EPSet& other) const;
    /// {n+1 | n ∈ this}
    EPSet shift_up() const;

    std::string to_string() const;

    friend bool operator==(const EPSet&, const EPSet&) = default;
    friend auto operator<=>(const EPSet& a, const EPSet& b) {
        if (auto c = a.prefix_ <=> b.prefix_; c != 0) return c;
        return a.period_ <=> b.period_;
    }

private:
    void canonicalize();

    std::vector<bool> prefix_;
    std::vector<bool> period_;
};

/// Positions of the set bits of n, i.e. the mask of the n-th modification.
std::set<std::uint64_t> modification_mask(std::uint64_t n);
/// Index n with modification_mask(n) == mask; nullopt if a position exceeds 63.
std::optional<std::uint64_t> modification_index(const std::set<std::uint64_t>& mask);

bool ep_member(const EPSet& x, std::uint64_t n);
bool ep_is_finite(const EPSet& x);
bool ep_equal(const EPSet& x, const EPSet& y);
EPSet ep_xor_finite(const EPSet& x, const std::set<std::uint64_t>& mask);
/// sup{n+1 | n ∈ x}: 0 for ∅, max+1 for finite sets, ω otherwise.
Ordinal ep_sup_succ(const EPSet& x);
/// Eventual agreement (the E₀ relation).
bool ep_e0(const EPSet& x, const EPSet& y);
/// x △ y when finite.
std::optional<std::set<std::uint64_t>> ep_finite_difference(const EPSet& x, const EPSet& y);

}  // namespace bisimkit
