#include "bisimkit/relation.hpp"

#include <stdexcept>

namespace bisimkit {

StateSet make_set(std::size_t universe, std::initializer_list<StateId> ms) {
    StateSet s(universe);
    for (auto m : ms) s.set(m);
    return s;
}

std::vector<StateId> members(const StateSet& s) {
    std::vector<StateId> out;
    for (auto i = s.find_first(); i != StateSet::npos; i = s.find_next(i)) out.push_back(i);
    return out;
}

Rel::Rel(std::size_t left_size, std::size_t right_size)
    : left_(left_size), right_(right_size), rows_(left_size, StateSet(right_size)) {}

Rel Rel::total(std::size_t n, std::size_t m) {
    Rel r(n, m);
    for (auto& row : r.rows_) row.set();
    return r;
}

Rel Rel::identity(std::size_t n) {
    Rel r(n, n);
    for (std::size_t i = 0; i < n; ++i) r.rows_[i].set(i);
    return r;
}

Rel Rel::from_pairs(std::size_t n, std::size_t m, const std::vector<std::pair<StateId, StateId>>& pairs) {
    Rel r(n, m);
    for (auto [s, t] : pairs) {
        if (s >= n || t >= m) throw std::out_of_range("relation pair outside its state spaces");
        r.insert(s, t);
    }
    return r;
}

std::size_t Rel::pair_count() const {
    std::size_t c = 0;
    for (const auto& row : rows_) c += row.count();
    return c;
}

std::vector<std::pair<StateId, StateId>> Rel::pairs() const {
    std::vector<std::pair<StateId, StateId>> out;
    for (StateId s = 0; s < left_; ++s)
        for (auto t = rows_[s].find_first(); t != StateSet::npos; t = rows_[s].find_next(t))
            out.emplace_back(s, t);
    return out;
}

Rel Rel::inverse() const {
    Rel r(right_, left_);
    for (auto [s, t] : pairs()) r.insert(t, s);
    return r;
}

StateSet Rel::image(const StateSet& q) const {
    StateSet out(right_);
    for (auto s = q.find_first(); s != StateSet::npos; s = q.find_next(s)) out |= rows_[s];
    return out;
}

StateSet Rel::preimage(const StateSet& q) const {
    StateSet out(left_);
    for (StateId s = 0; s < left_; ++s)
        if (rows_[s].intersects(q)) out.set(s);
    return out;
}

StateSet Rel::preimage_of(StateId t) const {
    StateSet out(left_);
    for (StateId s = 0; s < left_; ++s)
        if (rows_[s].test(t)) out.set(s);
    return out;
}

bool Rel::is_symmetric() const {
    if (left_ != right_) return false;
    for (auto [s, t] : pairs())
        if (!contains(t, s)) return false;
    return true;
}

bool Rel::is_reflexive() const {
    if (left_ != right_) return false;
    for (StateId s = 0; s < left_; ++s)
        if (!contains(s, s)) return false;
    return true;
}

bool Rel::is_z_closed() const {
    // Rows sharing a column must be identical.
    for (StateId a = 0; a < left_; ++a)
        for (StateId b = a + 1; b < left_; ++b)
            if (rows_[a].intersects(rows_[b]) && rows_[a] != rows_[b]) return false;
    return true;
}

bool Rel::subset_of(const Rel& other) const {
    if (left_ != other.left_ || right_ != other.right_) return false;
    for (StateId s = 0; s < left_; ++s)
        if (!rows_[s].is_subset_of(other.rows_[s])) return false;
    return true;
}

Rel Rel::unite(const Rel& other) const {
    if (left_ != other.left_ || right_ != other.right_) throw std::invalid_argument("relation shapes differ");
    Rel r = *this;
    for (StateId s = 0; s < left_; ++s) r.rows_[s] |= other.rows_[s];
    return r;
}

Rel Rel::intersect(const Rel& other) const {
    if (left_ != other.left_ || right_ != other.right_) throw std::invalid_argument("relation shapes differ");
    Rel r = *this;
    for (StateId s = 0; s < left_; ++s) r.rows_[s] &= other.rows_[s];
    return r;
}

bool is_z_closed(const Rel& r) { return r.is_z_closed(); }

}  // namespace bisimkit
