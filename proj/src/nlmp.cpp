#include "bisimkit/nlmp.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace bisimkit {

Rational mass(const SubProbMeasure& mu, const StateSet& q) {
    Rational m(0);
    for (const auto& [s, w] : mu)
        if (s < q.size() && q.test(s)) m += w;
    return m;
}

Rational total_mass(const SubProbMeasure& mu) {
    Rational m(0);
    for (const auto& [s, w] : mu) m += w;
    return m;
}

StateSet support(const SubProbMeasure& mu, std::size_t universe) {
    StateSet out(universe);
    for (const auto& [s, w] : mu) out.set(s);
    return out;
}

void validate_measure(const SubProbMeasure& mu, std::size_t universe) {
    for (const auto& [s, w] : mu) {
        if (s >= universe) throw std::invalid_argument("measure has a support point outside the state space");
        if (w <= Rational(0)) throw std::invalid_argument("measure weights must be positive");
    }
    if (total_mass(mu) > Rational(1)) throw std::invalid_argument("measure has total mass above 1");
}

std::string measure_to_string(const SubProbMeasure& mu, const std::vector<std::string>& names) {
    std::string out = "{";
    for (const auto& [s, w] : mu) {
        if (out.size() > 1) out += ", ";
        out += (s < names.size() ? names[s] : std::to_string(s)) + ": " + format_rational(w);
    }
    return out + "}";
}

PointmassNLMP::PointmassNLMP(std::vector<std::string> labels, std::vector<std::string> states)
    : labels_(std::move(labels)),
      states_(std::move(states)),
      trans_(states_.size(), std::vector<std::vector<SubProbMeasure>>(labels_.size())) {}

void PointmassNLMP::add_measure(StateId s, LabelId a, SubProbMeasure mu) {
    if (s >= size() || a >= labels_.size()) throw std::out_of_range("transition source or label out of range");
    validate_measure(mu, size());
    auto& v = trans_[s][a];
    auto it = std::lower_bound(v.begin(), v.end(), mu);
    if (it == v.end() || *it != mu) v.insert(it, std::move(mu));
}

std::optional<LabelId> PointmassNLMP::label_index(const std::string& name) const {
    auto it = std::find(labels_.begin(), labels_.end(), name);
    if (it == labels_.end()) return std::nullopt;
    return LabelId(it - labels_.begin());
}

std::optional<StateId> PointmassNLMP::state_index(const std::string& name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) return std::nullopt;
    return StateId(it - states_.begin());
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::vector<StateSet> rclosed_atoms(const Rel& r) {
    const auto n = r.left_size();
    UnionFind uf(n);
    for (auto [s, t] : r.pairs()) uf.join(s, t);
    std::map<std::size_t, StateSet> blocks;
    for (StateId s = 0; s < n; ++s) {
        auto& b = blocks.try_emplace(uf.find(s), StateSet(n)).first->second;
        b.set(s);
    }
    std::vector<StateSet> out;
    for (auto& [root, b] : blocks) out.push_back(std::move(b));
    return out;
}

ClosedPairAtoms closed_pair_atoms(const Rel& r) {
    const auto n = r.left_size(), m = r.right_size();
    UnionFind uf(n + m);
    StateSet related_left(n), related_right(m);
    for (auto [s, t] : r.pairs()) {
        uf.join(s, n + t);
        related_left.set(s);
        related_right.set(t);
    }
    std::map<std::size_t, std::pair<StateSet, StateSet>> comps;
    auto slot = [&](std::size_t x) -> std::pair<StateSet, StateSet>& {
        return comps.try_emplace(uf.find(x), StateSet(n), StateSet(m)).first->second;
    };
    for (StateId s = 0; s < n; ++s)
        if (related_left.test(s)) slot(s).first.set(s);
    for (StateId t = 0; t < m; ++t)
        if (related_right.test(t)) slot(n + t).second.set(t);
    ClosedPairAtoms out;
    for (auto& [root, c] : comps) out.components.push_back(std::move(c));
    out.isolated_left = ~related_left;
    out.isolated_right = ~related_right;
    return out;
}

bool is_rclosed(const Rel& r, const StateSet& e) {
    return r.image(e).is_subset_of(e) && r.preimage(e).is_subset_of(e);
}

bool is_closed_pair(const Rel& r, const StateSet& e, const StateSet& ep) {
    return r.image(e).is_subset_of(ep) && r.preimage(ep).is_subset_of(e);
}

namespace {

bool lift_on_atoms(const SubProbMeasure& mu, const SubProbMeasure& mup, const std::vector<StateSet>& atoms) {
    for (const auto& q : atoms)
        if (mass(mu, q) != mass(mup, q)) return false;
    return true;
}

bool lift_on_pairs(const SubProbMeasure& mu, const SubProbMeasure& mup, const ClosedPairAtoms& atoms) {
    if (mass(mu, atoms.isolated_left) != Rational(0) || mass(mup, atoms.isolated_right) != Rational(0)) return false;
    for (const auto& [q, qp] : atoms.components)
        if (mass(mu, q) != mass(mup, qp)) return false;
    return true;
}

}  // namespace

bool lift_internal(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r) {
    return lift_on_atoms(mu, mup, rclosed_atoms(r));
}

bool lift_external(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r) {
    return lift_on_pairs(mu, mup, closed_pair_atoms(r));
}

bool lift_support(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r) {
    if (!r.is_z_closed()) throw NotZClosed("support lifting requires a z-closed relation");
    const auto supp = support(mu, r.left_size());
    const auto suppp = support(mup, r.right_size());
    for (const auto& [x, w] : mu) {
        auto rx = r.image_of(x);
        if (rx.none()) return false;
        if (mass(mu, r.preimage(rx) & supp) != mass(mup, rx & suppp)) return false;
    }
    for (const auto& [y, w] : mup) {
        auto ry = r.preimage_of(y);
        if (ry.none()) return false;
        if (mass(mu, ry & supp) != mass(mup, r.image(ry) & suppp)) return false;
    }
    return true;
}

namespace {

const std::vector<SubProbMeasure>& trans_or_empty(const PointmassNLMP& n, StateId s, std::optional<LabelId> a) {
    static const std::vector<SubProbMeasure> none;
    return a ? n.trans(s, *a) : none;
}

// Label names of both processes, each resolved on either side.
std::vector<std::pair<std::optional<LabelId>, std::optional<LabelId>>> align(const PointmassNLMP& n,
                                                                            const PointmassNLMP& np) {
    std::vector<std::string> names = n.labels();
    for (const auto& l : np.labels())
        if (!n.label_index(l)) names.push_back(l);
    std::vector<std::pair<std::optional<LabelId>, std::optional<LabelId>>> out;
    for (const auto& l : names) out.emplace_back(n.label_index(l), np.label_index(l));
    return out;
}

template <class Lift>
bool covered(const std::vector<SubProbMeasure>& from, const std::vector<SubProbMeasure>& to, const Lift& lift) {
    for (const auto& mu : from)
        if (std::none_of(to.begin(), to.end(), [&](const SubProbMeasure& nu) { return lift(mu, nu); })) return false;
    return true;
}

bool zig_internal(const PointmassNLMP& n, const std::vector<StateSet>& atoms, StateId s, StateId t) {
    auto lift = [&](const SubProbMeasure& a, const SubProbMeasure& b) { return lift_on_atoms(a, b, atoms); };
    for (LabelId a = 0; a < n.labels().size(); ++a)
        if (!covered(n.trans(s, a), n.trans(t, a), lift)) return false;
    return true;
}

bool zig_zag_external(const PointmassNLMP& n, const PointmassNLMP& np,
                      const std::vector<std::pair<std::optional<LabelId>, std::optional<LabelId>>>& al,
                      const ClosedPairAtoms& atoms, StateId s, StateId t) {
    auto lift = [&](const SubProbMeasure& a, const SubProbMeasure& b) { return lift_on_pairs(a, b, atoms); };
    auto rlift = [&](const SubProbMeasure& b, const SubProbMeasure& a) { return lift_on_pairs(a, b, atoms); };
    for (auto [a, ap] : al) {
        const auto& left = trans_or_empty(n, s, a);
        const auto& right = trans_or_empty(np, t, ap);
        if (!covered(left, right, lift) || !covered(right, left, rlift)) return false;
    }
    return true;
}

void require_symmetric(const Rel& r) {
    if (!r.is_symmetric()) throw std::invalid_argument("relation must be symmetric");
}

}  // namespace

bool is_state_bisim(const PointmassNLMP& n, const Rel& r) {
    require_symmetric(r);
    auto atoms = rclosed_atoms(r);
    for (auto [s, t] : r.pairs())
        if (!zig_internal(n, atoms, s, t)) return false;
    return true;
}

bool is_ext_state_bisim(const PointmassNLMP& n, const PointmassNLMP& np, const Rel& r) {
    auto al = align(n, np);
    auto atoms = closed_pair_atoms(r);
    for (auto [s, t] : r.pairs())
        if (!zig_zag_external(n, np, al, atoms, s, t)) return false;
    return true;
}

Rel greatest_state_bisim(const PointmassNLMP& n) {
    Rel r = Rel::total(n.size(), n.size());
    bool changed = true;
    while (changed) {
        changed = false;
        auto atoms = rclosed_atoms(r);
        for (StateId s = 0; s < n.size() && !changed; ++s)
            for (StateId t = s; t < n.size() && !changed; ++t)
                if (r.contains(s, t) && (!zig_internal(n, atoms, s, t) || !zig_internal(n, atoms, t, s))) {
                    r.erase(s, t);
                    r.erase(t, s);
                    changed = true;
                }
    }
    return r;
}

Rel greatest_ext_bisim(const PointmassNLMP& n, const PointmassNLMP& np) {
    auto al = align(n, np);
    Rel r = Rel::total(n.size(), np.size());
    bool changed = true;
    while (changed) {
        changed = false;
        auto atoms = closed_pair_atoms(r);
        for (StateId s = 0; s < n.size() && !changed; ++s)
            for (StateId t = 0; t < np.size() && !changed; ++t)
                if (r.contains(s, t) && !zig_zag_external(n, np, al, atoms, s, t)) {
                    r.erase(s, t);
                    changed = true;
                }
    }
    return r;
}

namespace {

using MassVector = std::vector<Rational>;

MassVector mass_vector(const SubProbMeasure& mu, const std::vector<StateSet>& atoms) {
    MassVector v;
    for (const auto& q : atoms) v.push_back(mass(mu, q));
    return v;
}

}  // namespace

bool is_hit_bisim(const PointmassNLMP& n, const Rel& r) {
    require_symmetric(r);
    auto atoms = rclosed_atoms(r);
    auto vectors = [&](StateId s, LabelId a) {
        std::set<MassVector> out;
        for (const auto& mu : n.trans(s, a)) out.insert(mass_vector(mu, atoms));
        return out;
    };
    for (auto [s, t] : r.pairs())
        for (LabelId a = 0; a < n.labels().size(); ++a)
            if (vectors(s, a) != vectors(t, a)) return false;
    return true;
}

std::vector<StateSet> sigma_atoms(std::size_t universe, const std::vector<StateSet>& lambda) {
    std::vector<StateSet> ordered;
    std::map<std::vector<bool>, std::size_t> index;
    for (StateId s = 0; s < universe; ++s) {
        std::vector<bool> sig;
        for (const auto& q : lambda) sig.push_back(q.test(s));
        auto [it, fresh] = index.emplace(sig, ordered.size());
        if (fresh) ordered.emplace_back(universe);
        ordered[it->second].set(s);
    }
    return ordered;
}

bool is_event_bisim(const PointmassNLMP& n, const std::vector<StateSet>& lambda) {
    auto atoms = sigma_atoms(n.size(), lambda);
    // Hit preimages commute with unions, so checking each class of occurring
    // measures covers every union of classes.
    for (LabelId a = 0; a < n.labels().size(); ++a) {
        std::map<MassVector, StateSet> hits;
        for (StateId s = 0; s < n.size(); ++s)
            for (const auto& mu : n.trans(s, a)) {
                auto& h = hits.try_emplace(mass_vector(mu, atoms), StateSet(n.size())).first->second;
                h.set(s);
            }
        for (const auto& [v, h] : hits)
            for (const auto& q : atoms)
                if ((h & q).any() && !q.is_subset_of(h)) return false;
    }
    return true;
}

}  // namespace bisimkit
