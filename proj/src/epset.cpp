#include "bisimkit/epset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bisimkit {

namespace {

std::vector<bool> parse_bits(const std::string& s, const char* what) {
    std::vector<bool> out;
    out.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument(std::string("EPSet ") + what + " must be a bit string, got '" + s + "'");
        out.push_back(c == '1');
    }
    return out;
}

std::string bits_to_string(const std::vector<bool>& bits) {
    std::string s;
    for (bool b : bits) s += b ? '1' : '0';
    return s;
}

// Characteristic sequence on [0, len).
std::vector<bool> unroll(const EPSet& x, std::size_t len) {
    std::vector<bool> out(len);
    for (std::size_t i = 0; i < len; ++i) out[i] = x.contains(i);
    return out;
}

}  // namespace

EPSet::EPSet(std::vector<bool> prefix, std::vector<bool> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) throw std::invalid_argument("EPSet period must be nonempty");
    canonicalize();
}

EPSet EPSet::from_bits(const std::string& prefix, const std::string& period) {
    return EPSet(parse_bits(prefix, "prefix"), parse_bits(period, "period"));
}

EPSet EPSet::finite(const std::set<std::uint64_t>& elems) { return EPSet().xor_finite(elems); }

void EPSet::canonicalize() {
    // Primitive period: smallest d dividing |period| with period d-periodic.
    const std::size_t q = period_.size();
    for (std::size_t d = 1; d <= q; ++d) {
        if (q % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < q && ok; ++i) ok = period_[i] == period_[i - d];
        if (ok) {
            period_.resize(d);
            break;
        }
    }
    // Absorb trailing prefix bits into a rotated period.
    while (!prefix_.empty() && prefix_.back() == period_.back()) {
        prefix_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

std::string EPSet::prefix_bits() const { return bits_to_string(prefix_); }
std::string EPSet::period_bits() const { return bits_to_string(period_); }

bool EPSet::contains(std::uint64_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    return period_[(n - prefix_.size()) % period_.size()];
}

bool EPSet::is_finite() const {
    return std::none_of(period_.begin(), period_.end(), [](bool b) { return b; });
}

std::optional<std::uint64_t> EPSet::max_element() const {
    if (!is_finite()) return std::nullopt;
    for (std::size_t i = prefix_.size(); i-- > 0;)
        if (prefix_[i]) return i;
    return std::nullopt;
}

bool EPSet::has_element_at_least(std::uint64_t bound) const {
    if (!is_finite()) return true;
    auto m = max_element();
    return m && *m >= bound;
}

std::vector<std::uint64_t> EPSet::elements_below(std::uint64_t bound) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < bound; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

EPSet EPSet::xor_finite(const std::set<std::uint64_t>& mask) const {
    if (mask.empty()) return *this;
    const std::size_t len = std::max<std::size_t>(prefix_.size(), *mask.rbegin() + 1);
    // Re-anchor the period so that it starts at len.
    std::vector<bool> prefix = unroll(*this, len);
    std::vector<bool> period(period_.size());
    for (std::size_t i = 0; i < period.size(); ++i) period[i] = contains(len + i);
    for (auto m : mask) prefix[m] = !prefix[m];
    return EPSet(std::move(prefix), std::move(period));
}

EPSet EPSet::modification(std::uint64_t n) const { return xor_finite(modification_mask(n)); }

EPSet EPSet::unite(const EPSet& other) const {
    const std::size_t p = std::max(prefix_.size(), other.prefix_.size());
    const std::size_t q = std::lcm(period_.size(), other.period_.size());
    std::vector<bool> prefix(p), period(q);
    for (std::size_t i = 0; i < p; ++i) prefix[i] = contains(i) || other.contains(i);
    for (std::size_t i = 0; i < q; ++i) period[i] = contains(p + i) || other.contains(p + i);
    return EPSet(std::move(prefix), std::move(period));
}

EPSet EPSet::shift_up() const {
    std::vector<bool> prefix;
    prefix.reserve(prefix_.size() + 1);
    prefix.push_back(false);
    prefix.insert(prefix.end(), prefix_.begin(), prefix_.end());
    return EPSet(std::move(prefix), period_);
}

std::string EPSet::to_string() const {
    return "EPSet(" + prefix_bits() + "|" + period_bits() + ")";
}

std::set<std::uint64_t> modification_mask(std::uint64_t n) {
    std::set<std::uint64_t> out;
    for (std::uint64_t i = 0; n != 0; ++i, n >>= 1)
        if (n & 1u) out.insert(i);
    return out;
}

std::optional<std::uint64_t> modification_index(const std::set<std::uint64_t>& mask) {
    std::uint64_t n = 0;
    for (auto i : mask) {
        if (i >= 64) return std::nullopt;
        n |= std::uint64_t{1} << i;
    }
    return n;
}

bool ep_member(const EPSet& x, std::uint64_t n) { return x.contains(n); }
bool ep_is_finite(const EPSet& x) { return x.is_finite(); }
bool ep_equal(const EPSet& x, const EPSet& y) { return x == y; }

EPSet ep_xor_finite(const EPSet& x, const std::set<std::uint64_t>& mask) { return x.xor_finite(mask); }

Ordinal ep_sup_succ(const EPSet& x) {
    if (!x.is_finite()) return Ordinal::omega();
    auto m = x.max_element();
    return m ? Ordinal::natural(*m + 1) : Ordinal{};
}

bool ep_e0(const EPSet& x, const EPSet& y) {
    const std::size_t p = std::max(x.prefix().size(), y.prefix().size());
    const std::size_t q = std::lcm(x.period().size(), y.period().size());
    for (std::size_t n = p; n < p + q; ++n)
        if (x.contains(n) != y.contains(n)) return false;
    return true;
}

std::optional<std::set<std::uint64_t>> ep_finite_difference(const EPSet& x, const EPSet& y) {
    if (!ep_e0(x, y)) return std::nullopt;
    const std::size_t p = std::max(x.prefix().size(), y.prefix().size());
    std::set<std::uint64_t> diff;
    for (std::size_t n = 0; n < p; ++n)
        if (x.contains(n) != y.contains(n)) diff.insert(n);
    return diff;
}

}  // namespace bisimkit
