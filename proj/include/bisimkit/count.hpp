#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace bisimkit {

/// Element of ℕ ∪ {ω}; addition saturates at ω.
class Count {
public:
    constexpr Count() = default;
    constexpr explicit Count(std::uint64_t n) : value_(n) {}
    static constexpr Count omega() {
        Count c;
        c.omega_ = true;
        return c;
    }

    constexpr bool is_omega() const { return omega_; }
    constexpr std::uint64_t value() const { return value_; }
    constexpr bool is_zero() const { return !omega_ && value_ == 0; }

    friend constexpr Count operator+(Count a, Count b) {
        if (a.omega_ || b.omega_) return omega();
        return Count(a.value_ + b.value_);
    }
    Count& operator+=(Count b) { return *this = *this + b; }

    friend constexpr bool operator==(const Count&, const Count&) = default;
    friend constexpr std::strong_ordering operator<=>(const Count& a, const Count& b) {
        if (a.omega_ != b.omega_) return a.omega_ ? std::strong_ordering::greater : std::strong_ordering::less;
        if (a.omega_) return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }

    std::string to_string() const { return omega_ ? "omega" : std::to_string(value_); }

private:
    std::uint64_t value_ = 0;
    bool omega_ = false;
};

}  // namespace bisimkit
