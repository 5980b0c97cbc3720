#include "bisimkit/nlmp_sub.hpp"

namespace bisimkit {

bool is_thick(const StateSet& a, const SubProbMeasure& mu) {
    for (const auto& [s, w] : mu)
        if (s >= a.size() || !a.test(s)) return false;
    return true;
}

SubProbMeasure restrict_measure(const SubProbMeasure& mu, const StateSet& a) {
    if (!is_thick(a, mu)) throw NotThick("carrier is not thick for the measure");
    return mu;
}

Substructure substructure(const PointmassNLMP& n, const StateSet& a) {
    if (a.size() != n.size()) throw std::invalid_argument("carrier size differs from the state space");
    Substructure out;
    out.carrier = a;
    out.to_local.assign(n.size(), std::nullopt);
    std::vector<std::string> names;
    for (auto s : members(a)) {
        out.to_local[s] = out.to_global.size();
        out.to_global.push_back(s);
        names.push_back(n.states()[s]);
    }
    out.induced = PointmassNLMP(n.labels(), names);
    for (StateId l = 0; l < out.to_global.size(); ++l) {
        StateId s = out.to_global[l];
        for (LabelId lab = 0; lab < n.labels().size(); ++lab)
            for (const auto& mu : n.trans(s, lab)) {
                if (!is_thick(a, mu))
                    throw NotThick("carrier is not thick for " + measure_to_string(mu, n.states()) + " in T_" +
                                   n.labels()[lab] + "(" + n.states()[s] + ")");
                SubProbMeasure local;
                for (const auto& [t, w] : mu) local[*out.to_local[t]] = w;
                out.induced.add_measure(l, lab, std::move(local));
            }
    }
    return out;
}

StateSet tilde_T(const PointmassNLMP& n, StateId s, LabelId a) {
    StateSet out(n.size());
    for (const auto& mu : n.trans(s, a)) out |= support(mu, n.size());
    return out;
}

StateSet reach_A_s(const PointmassNLMP& n, StateId s) {
    StateSet seen(n.size());
    seen.set(s);
    std::vector<StateId> work{s};
    while (!work.empty()) {
        auto u = work.back();
        work.pop_back();
        for (LabelId a = 0; a < n.labels().size(); ++a)
            for (auto t : members(tilde_T(n, u, a)))
                if (!seen.test(t)) {
                    seen.set(t);
                    work.push_back(t);
                }
    }
    return seen;
}

Rel restrict_rel(const Rel& r, const StateSet& a, const StateSet& ap) {
    Rel out(r.left_size(), r.right_size());
    for (auto [s, t] : r.pairs())
        if (a.test(s) && ap.test(t)) out.insert(s, t);
    return out;
}

Rel localize_rel(const Rel& r, const Substructure& a, const Substructure& ap) {
    Rel out(a.to_global.size(), ap.to_global.size());
    for (auto [s, t] : r.pairs())
        if (a.to_local[s] && ap.to_local[t]) out.insert(*a.to_local[s], *ap.to_local[t]);
    return out;
}

Rel globalize_rel(const Rel& r, const Substructure& a, const Substructure& ap) {
    Rel out(a.to_local.size(), ap.to_local.size());
    for (auto [s, t] : r.pairs()) out.insert(a.to_global[s], ap.to_global[t]);
    return out;
}

Rel inclusion_rel(const Substructure& a) {
    Rel out(a.to_local.size(), a.to_global.size());
    for (StateId l = 0; l < a.to_global.size(); ++l) out.insert(a.to_global[l], l);
    return out;
}

PointmassNLMP sum_nlmp(const PointmassNLMP& n, const PointmassNLMP& np) {
    auto labels = n.labels();
    for (const auto& l : np.labels())
        if (!n.label_index(l)) labels.push_back(l);
    std::vector<std::string> states;
    for (const auto& s : n.states()) states.push_back("l:" + s);
    for (const auto& s : np.states()) states.push_back("r:" + s);
    PointmassNLMP out(labels, states);
    for (LabelId a = 0; a < labels.size(); ++a) {
        if (auto la = n.label_index(labels[a]))
            for (StateId s = 0; s < n.size(); ++s)
                for (const auto& mu : n.trans(s, *la)) out.add_measure(inl(s), a, mu);
        if (auto ra = np.label_index(labels[a]))
            for (StateId s = 0; s < np.size(); ++s)
                for (const auto& mu : np.trans(s, *ra)) {
                    SubProbMeasure pushed;
                    for (const auto& [t, w] : mu) pushed[inr(n, t)] = w;
                    out.add_measure(inr(n, s), a, std::move(pushed));
                }
    }
    return out;
}

Rel rel_lift(const Rel& r) {
    const auto n = r.left_size(), m = r.right_size();
    Rel out(n + m, n + m);
    for (auto [s, t] : r.pairs()) out.insert(s, n + t);
    return out;
}

Rel rel_descent(const Rel& r, std::size_t n, std::size_t m) {
    if (r.left_size() != n + m || r.right_size() != n + m)
        throw std::invalid_argument("relation is not on a sum of the given sizes");
    Rel out(n, m);
    for (StateId s = 0; s < n; ++s)
        for (StateId t = 0; t < m; ++t)
            if (r.contains(s, n + t)) out.insert(s, t);
    return out;
}

Rel r_sigma_closure(const Rel& r) {
    Rel out(r.left_size(), r.left_size());
    for (const auto& q : rclosed_atoms(r))
        for (auto s : members(q))
            for (auto t : members(q)) out.insert(s, t);
    return out;
}

Rel rx_closure(const Rel& r) {
    Rel out(r.left_size(), r.right_size());
    for (const auto& [q, qp] : closed_pair_atoms(r).components)
        for (auto s : members(q))
            for (auto t : members(qp)) out.insert(s, t);
    return out;
}

}  // namespace bisimkit
