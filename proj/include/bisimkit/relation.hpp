#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace bisimkit {

using StateId = std::size_t;
using StateSet = boost::dynamic_bitset<>;

StateSet make_set(std::size_t universe, std::initializer_list<StateId> members = {});
std::vector<StateId> members(const StateSet& s);

/// Finite binary relation R ⊆ S × S′ over state indices, stored row-wise.
class Rel {
public:
    Rel() = default;
    Rel(std::size_t left_size, std::size_t right_size);

    static Rel empty(std::size_t n, std::size_t m) { return Rel(n, m); }
    static Rel total(std::size_t n, std::size_t m);
    static Rel identity(std::size_t n);
    static Rel from_pairs(std::size_t n, std::size_t m, const std::vector<std::pair<StateId, StateId>>& pairs);

    std::size_t left_size() const { return left_; }
    std::size_t right_size() const { return right_; }

    bool contains(StateId s, StateId t) const { return rows_[s].test(t); }
    void insert(StateId s, StateId t) { rows_[s].set(t); }
    void erase(StateId s, StateId t) { rows_[s].reset(t); }
    const StateSet& row(StateId s) const { return rows_[s]; }

    std::size_t pair_count() const;
    bool is_empty() const { return pair_count() == 0; }
    std::vector<std::pair<StateId, StateId>> pairs() const;

    Rel inverse() const;
    /// R[Q] = {t | ∃ s ∈ Q, s R t}
    StateSet image(const StateSet& q) const;
    /// R⁻¹[Q′] = {s | ∃ t ∈ Q′, s R t}
    StateSet preimage(const StateSet& q) const;
    StateSet image_of(StateId s) const { return rows_[s]; }
    StateSet preimage_of(StateId t) const;

    bool is_symmetric() const;
    bool is_reflexive() const;
    /// Difunctional: x R y, x′ R y, x′ R y′ ⇒ x R y′.
    bool is_z_closed() const;
    bool subset_of(const Rel& other) const;

    Rel unite(const Rel& other) const;
    Rel intersect(const Rel& other) const;

    friend bool operator==(const Rel& a, const Rel& b) {
        return a.left_ == b.left_ && a.right_ == b.right_ && a.rows_ == b.rows_;
    }

private:
    std::size_t left_ = 0;
    std::size_t right_ = 0;
    std::vector<StateSet> rows_;
};

bool is_z_closed(const Rel& r);

}  // namespace bisimkit
