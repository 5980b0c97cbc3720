#include "bisimkit/uniform.hpp"

#include <algorithm>
#include <map>

#include "bisimkit/expansion.hpp"
#include "bisimkit/nlmp_sub.hpp"
#include "bisimkit/treeiso.hpp"

namespace bisimkit {

SubProbMeasure row_measure(const UniformRow& row) {
    SubProbMeasure mu;
    for (const auto& e : row)
        if (e.r != Rational(0)) mu[e.t] += e.r;
    return mu;
}

UniformStructure derive_uniform(const PointmassNLMP& n) {
    UniformStructure u;
    u.rows.assign(n.size(), std::vector<std::vector<UniformRow>>(n.labels().size()));
    for (StateId s = 0; s < n.size(); ++s)
        for (LabelId a = 0; a < n.labels().size(); ++a)
            for (const auto& mu : n.trans(s, a)) {
                UniformRow row;
                for (const auto& [t, w] : mu) row.push_back({w, t});
                u.rows[s][a].push_back(std::move(row));
            }
    return u;
}

std::optional<std::string> uniform_mismatch(const PointmassNLMP& n, const UniformStructure& u) {
    if (u.rows.size() != n.size()) return "table covers " + std::to_string(u.rows.size()) + " states, process has " +
                                          std::to_string(n.size());
    for (StateId s = 0; s < n.size(); ++s) {
        if (u.rows[s].size() != n.labels().size())
            return "table at state " + n.states()[s] + " has the wrong number of labels";
        for (LabelId a = 0; a < n.labels().size(); ++a) {
            const auto& want = n.trans(s, a);
            std::vector<SubProbMeasure> got;
            for (std::size_t i = 0; i < u.rows[s][a].size(); ++i) {
                for (const auto& e : u.rows[s][a][i])
                    if (e.t >= n.size() || e.r < Rational(0))
                        return "row (" + n.states()[s] + ", " + n.labels()[a] + ", " + std::to_string(i) +
                               ") has an invalid entry";
                auto mu = row_measure(u.rows[s][a][i]);
                if (!std::binary_search(want.begin(), want.end(), mu))
                    return "row (" + n.states()[s] + ", " + n.labels()[a] + ", " + std::to_string(i) +
                           ") gives " + measure_to_string(mu, n.states()) + ", not in the transition set";
                got.push_back(std::move(mu));
            }
            for (const auto& mu : want)
                if (std::find(got.begin(), got.end(), mu) == got.end())
                    return "no row at (" + n.states()[s] + ", " + n.labels()[a] + ") gives " +
                           measure_to_string(mu, n.states());
        }
    }
    return std::nullopt;
}

std::vector<StateId> x_enum(const UniformStructure& u, StateId s, std::size_t bound) {
    std::vector<StateId> out;
    if (bound == 0) return out;
    out.push_back(s);
    std::vector<bool> seen(u.rows.size(), false);
    seen[s] = true;
    // Only first occurrences need expanding: a repeated value yields the
    // values already produced by its earlier occurrence.
    for (std::size_t i = 0; i < out.size() && out.size() < bound; ++i)
        for (const auto& label_rows : u.rows[out[i]])
            for (const auto& row : label_rows)
                for (const auto& e : row)
                    if (!seen[e.t] && out.size() < bound) {
                        seen[e.t] = true;
                        out.push_back(e.t);
                    }
    return out;
}

StateSet x_set(const UniformStructure& u, StateId s, std::size_t universe) {
    StateSet out(universe);
    for (auto x : x_enum(u, s, universe)) out.set(x);
    return out;
}

PointmassNLMP nlmp_from_lts(const PointedLTS& l) {
    PointmassNLMP n(l.labels(), l.states());
    for (const auto& e : l.edges()) n.add_measure(e.src, e.label, {{e.dst, Rational(1)}});
    return n;
}

PointedLTS lts_from_nlmp(const PointmassNLMP& n, StateId root) {
    PointedLTS l(n.labels(), n.states(), root);
    for (StateId s = 0; s < n.size(); ++s)
        for (LabelId a = 0; a < n.labels().size(); ++a)
            for (const auto& mu : n.trans(s, a)) {
                if (mu.size() != 1 || mu.begin()->second != Rational(1))
                    throw std::invalid_argument("T_" + n.labels()[a] + "(" + n.states()[s] +
                                                ") contains a measure that is not a Dirac measure");
                l.add_edge(s, a, mu.begin()->first);
            }
    return l;
}

UniformStructure umlts_structure(const PointedLTS& l) {
    UniformStructure u;
    u.rows.assign(l.size(), std::vector<std::vector<UniformRow>>(l.labels().size()));
    for (StateId s = 0; s < l.size(); ++s)
        for (LabelId a = 0; a < l.labels().size(); ++a)
            for (auto t : l.successors(s, a)) u.rows[s][a].push_back({{Rational(1), t}, {Rational(0), s}});
    return u;
}

OmegaLTSCode h_map(const PointedLTS& l, StateId s) {
    auto xs = x_enum(umlts_structure(l), s, l.size());
    std::vector<std::uint64_t> f(l.size(), 0);
    for (std::size_t i = 0; i < xs.size(); ++i) f[xs[i]] = i;
    OmegaLTSCode c;
    c.root = 0;
    for (auto x : xs)
        for (LabelId a = 0; a < l.labels().size(); ++a)
            for (auto y : l.successors(x, a)) c.edges[l.labels()[a]].insert({f[x], f[y]});
    return c;
}

std::set<std::size_t> j_set(const UniformStructure& u, StateId x, const Rel& r, LabelId a, std::size_t n,
                            std::size_t k, const std::vector<StateId>& witnesses) {
    const auto& row = u.rows[x][a][n];
    std::set<std::size_t> out;
    const StateId tk = row[k].t;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j].r == Rational(0)) continue;
        for (auto z : witnesses)
            if (r.contains(tk, z) && r.contains(row[j].t, z)) {
                out.insert(j);
                break;
            }
    }
    return out;
}

Rational g_value(const UniformStructure& u, StateId x, const Rel& r, LabelId a, std::size_t n, std::size_t k,
                 const std::vector<StateId>& witnesses) {
    Rational g(0);
    for (auto j : j_set(u, x, r, a, n, k, witnesses)) g += u.rows[x][a][n][j].r;
    return g;
}

Rational g_prime_value(const UniformStructure& u, StateId x, const UniformStructure& up, StateId xp, const Rel& r,
                       LabelId a, std::size_t n, std::size_t np, std::size_t k) {
    const StateId tk = u.rows[x][a][n][k].t;
    Rational g(0);
    for (const auto& e : up.rows[xp][a][np])
        if (e.r != Rational(0) && r.contains(tk, e.t)) g += e.r;
    return g;
}

namespace {

// For every k with r_k ≠ 0: k ∈ J and G = G′.
bool one_side(const UniformStructure& u, StateId x, const UniformStructure& up, StateId xp, const Rel& r, LabelId a,
              std::size_t n, std::size_t np) {
    const auto witnesses = x_enum(up, xp, up.rows.size());
    const auto& row = u.rows[x][a][n];
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k].r == Rational(0)) continue;
        auto j = j_set(u, x, r, a, n, k, witnesses);
        if (!j.count(k)) return false;
        Rational g(0);
        for (auto i : j) g += row[i].r;
        if (g != g_prime_value(u, x, up, xp, r, a, n, np, k)) return false;
    }
    return true;
}

}  // namespace

bool gk_block(const UniformStructure& u, StateId x, const UniformStructure& up, StateId xp, const Rel& r, LabelId a,
              std::size_t n, std::size_t np) {
    return one_side(u, x, up, xp, r, a, n, np) && one_side(up, xp, u, x, r.inverse(), a, np, n);
}

UniformSearchResult uniform_bisim_search(const PointmassNLMP& n, const UniformStructure& u, StateId s, StateId sp) {
    auto sub = substructure(n, x_set(u, s, n.size()));
    auto subp = substructure(n, x_set(u, sp, n.size()));
    UniformSearchResult out;
    out.witness = globalize_rel(greatest_ext_bisim(sub.induced, subp.induced), sub, subp);
    out.bisimilar = out.witness.contains(s, sp);
    out.z_closed = out.witness.is_z_closed();
    out.gk_ok = true;
    for (auto [x, xp] : out.witness.pairs())
        for (LabelId a = 0; a < n.labels().size() && out.gk_ok; ++a) {
            const auto& rows = u.rows[x][a];
            const auto& rowsp = u.rows[xp][a];
            if (rows.empty() != rowsp.empty()) {
                out.gk_ok = false;
                break;
            }
            for (std::size_t i = 0; i < rows.size() && out.gk_ok; ++i) {
                bool found = false;
                for (std::size_t ip = 0; ip < rowsp.size() && !found; ++ip)
                    found = gk_block(u, x, u, xp, out.witness, a, i, ip);
                out.gk_ok = found;
            }
            for (std::size_t ip = 0; ip < rowsp.size() && out.gk_ok; ++ip) {
                bool found = false;
                for (std::size_t i = 0; i < rows.size() && !found; ++i)
                    found = gk_block(u, x, u, xp, out.witness, a, i, ip);
                out.gk_ok = found;
            }
        }
    return out;
}

PointedLTS f_process(const ExplicitTree& t) { return tree_to_lts(t); }

std::string pipeline_canon(const PointedLTS& l, StateId s, std::uint64_t alpha) {
    auto rank = state_ranks(l)[s];
    if (!rank || *rank > alpha)
        throw RankExceeded("state '" + l.states()[s] + "' has rank " + (rank ? std::to_string(*rank) : "infinity") +
                           ", above the bound " + std::to_string(alpha));
    return canon(*omega_code_expand(h_map(l, s)));
}

bool pipeline_rank_bounded_bisim(const PointedLTS& l, StateId s, StateId t, std::uint64_t alpha) {
    return pipeline_canon(l, s, alpha) == pipeline_canon(l, t, alpha);
}

}  // namespace bisimkit
