#include "bisimkit/verify/oracle.hpp"

#include <stdexcept>

namespace bisimkit::verify {

void for_each_relation(std::size_t n, std::size_t m, const std::function<void(const Rel&)>& f) {
    const std::size_t cells = n * m;
    if (cells > 20) throw std::invalid_argument("relation enumeration limited to 20 cells");
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
        Rel r(n, m);
        for (std::size_t c = 0; c < cells; ++c)
            if (bits >> c & 1) r.insert(c / m, c % m);
        f(r);
    }
}

void for_each_subset(std::size_t n, const std::function<void(const StateSet&)>& f) {
    if (n > 20) throw std::invalid_argument("subset enumeration limited to 20 points");
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        StateSet s(n);
        for (std::size_t i = 0; i < n; ++i)
            if (bits >> i & 1) s.set(i);
        f(s);
    }
}

bool oracle_lts_is_bisim(const PointedLTS& l, const PointedLTS& m, const Rel& r) {
    auto el = l.edges();
    auto em = m.edges();
    auto same = [&](const PointedLTS::Edge& e, const PointedLTS::Edge& f) {
        return l.labels()[e.label] == m.labels()[f.label] && r.contains(e.dst, f.dst);
    };
    for (auto [s, t] : r.pairs()) {
        for (const auto& e : el) {
            if (e.src != s) continue;
            bool found = false;
            for (const auto& f : em) found = found || (f.src == t && same(e, f));
            if (!found) return false;
        }
        for (const auto& f : em) {
            if (f.src != t) continue;
            bool found = false;
            for (const auto& e : el) found = found || (e.src == s && same(e, f));
            if (!found) return false;
        }
    }
    return true;
}

Rel oracle_greatest_bisim(const PointedLTS& l, const PointedLTS& m) {
    Rel best(l.size(), m.size());
    for_each_relation(l.size(), m.size(), [&](const Rel& r) {
        if (oracle_lts_is_bisim(l, m, r)) best = best.unite(r);
    });
    return best;
}

bool oracle_closed_pair(const Rel& r, const StateSet& e, const StateSet& ep) {
    for (StateId s = 0; s < r.left_size(); ++s)
        for (StateId t = 0; t < r.right_size(); ++t)
            if (r.contains(s, t) && e.test(s) != ep.test(t)) return false;
    return true;
}

bool oracle_rclosed(const Rel& r, const StateSet& e) { return oracle_closed_pair(r, e, e); }

Rational oracle_mass(const SubProbMeasure& mu, const StateSet& q) {
    Rational m(0);
    for (StateId s = 0; s < q.size(); ++s) {
        auto it = mu.find(s);
        if (q.test(s) && it != mu.end()) m += it->second;
    }
    return m;
}

bool oracle_lift_internal(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r) {
    bool ok = true;
    for_each_subset(r.left_size(), [&](const StateSet& q) {
        if (ok && oracle_rclosed(r, q) && oracle_mass(mu, q) != oracle_mass(mup, q)) ok = false;
    });
    return ok;
}

bool oracle_lift_external(const SubProbMeasure& mu, const SubProbMeasure& mup, const Rel& r) {
    bool ok = true;
    for_each_subset(r.left_size(), [&](const StateSet& q) {
        for_each_subset(r.right_size(), [&](const StateSet& qp) {
            if (ok && oracle_closed_pair(r, q, qp) && oracle_mass(mu, q) != oracle_mass(mup, qp)) ok = false;
        });
    });
    return ok;
}

namespace {

const std::vector<SubProbMeasure>& trans_by_name(const PointmassNLMP& n, StateId s, const std::string& label) {
    static const std::vector<SubProbMeasure> none;
    auto a = n.label_index(label);
    return a ? n.trans(s, *a) : none;
}

std::vector<std::string> all_labels(const PointmassNLMP& n, const PointmassNLMP& np) {
    auto out = n.labels();
    for (const auto& l : np.labels())
        if (!n.label_index(l)) out.push_back(l);
    return out;
}

}  // namespace

bool oracle_is_state_bisim(const PointmassNLMP& n, const Rel& r) {
    if (!r.is_symmetric()) return false;
    for (auto [s, t] : r.pairs())
        for (LabelId a = 0; a < n.labels().size(); ++a)
            for (const auto& mu : n.trans(s, a)) {
                bool found = false;
                for (const auto& nu : n.trans(t, a)) found = found || oracle_lift_internal(mu, nu, r);
                if (!found) return false;
            }
    return true;
}

bool oracle_is_ext_state_bisim(const PointmassNLMP& n, const PointmassNLMP& np, const Rel& r) {
    for (auto [s, t] : r.pairs())
        for (const auto& l : all_labels(n, np)) {
            const auto& left = trans_by_name(n, s, l);
            const auto& right = trans_by_name(np, t, l);
            for (const auto& mu : left) {
                bool found = false;
                for (const auto& nu : right) found = found || oracle_lift_external(mu, nu, r);
                if (!found) return false;
            }
            for (const auto& nu : right) {
                bool found = false;
                for (const auto& mu : left) found = found || oracle_lift_external(mu, nu, r);
                if (!found) return false;
            }
        }
    return true;
}

Rel oracle_greatest_state_bisim(const PointmassNLMP& n) {
    Rel best(n.size(), n.size());
    for_each_relation(n.size(), n.size(), [&](const Rel& r) {
        if (oracle_is_state_bisim(n, r)) best = best.unite(r);
    });
    return best;
}

Rel oracle_greatest_ext_bisim(const PointmassNLMP& n, const PointmassNLMP& np) {
    Rel best(n.size(), np.size());
    for_each_relation(n.size(), np.size(), [&](const Rel& r) {
        if (oracle_is_ext_state_bisim(n, np, r)) best = best.unite(r);
    });
    return best;
}

}  // namespace bisimkit::verify
