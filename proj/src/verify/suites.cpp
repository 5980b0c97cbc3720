#include "bisimkit/verify/suites.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "bisimkit/e0.hpp"
#include "bisimkit/expansion.hpp"
#include "bisimkit/io.hpp"
#include "bisimkit/nlmp_sub.hpp"
#include "bisimkit/treeiso.hpp"
#include "bisimkit/uniform.hpp"
#include "bisimkit/verify/gen.hpp"
#include "bisimkit/verify/oracle.hpp"

namespace bisimkit::verify {

namespace {

constexpr std::size_t kMaxDetails = 5;

class Tally {
public:
    explicit Tally(SuiteResult& r) : r_(r) {}
    void check(bool ok, const std::function<std::string()>& what) {
        ++r_.cases;
        if (ok) return;
        ++r_.failures;
        if (r_.failure_details.size() < kMaxDetails) r_.failure_details.push_back(what());
    }
    void note(std::string s) { r_.notes.push_back(std::move(s)); }

private:
    SuiteResult& r_;
};

std::string dump(const PointedLTS& l) { return io::lts_to_json(l).dump(); }
std::string dump(const PointmassNLMP& n) { return io::nlmp_to_json(n).dump(); }
std::string dump(const Rel& r) {
    std::string out = "{";
    for (auto [s, t] : r.pairs()) out += "(" + std::to_string(s) + "," + std::to_string(t) + ")";
    return out + "}";
}
std::string dump(const SubProbMeasure& mu) {
    std::string out = "{";
    for (const auto& [s, w] : mu) out += std::to_string(s) + ":" + format_rational(w) + " ";
    return out + "}";
}
std::string dump(const StateSet& a) {
    std::string out = "{";
    for (auto s : members(a)) out += (out.size() > 1 ? "," : "") + std::to_string(s);
    return out + "}";
}
std::string dump(const EPSet& x) { return x.to_string(); }

// 1. Lifting oracle equivalence.
void suite_lifting(Rng& rng, Tally& t) {
    std::uint64_t positives = 0, zclosed = 0;
    for (int iter = 0; iter < 600; ++iter) {
        std::size_t n = rng.between(1, 4), m = rng.between(1, 4);
        bool z = rng.chance(1, 2);
        Rel r = z ? random_z_closed_rel(rng, n, m) : random_rel(rng, n, m, 35);
        std::vector<SubProbMeasure> mus, nus;
        for (std::size_t i = rng.between(1, 3); i > 0; --i) mus.push_back(random_measure(rng, n, 3));
        for (std::size_t i = rng.between(1, 3); i > 0; --i) {
            const auto& base = mus[rng.below(mus.size())];
            nus.push_back(rng.chance(2, 3) ? transport_measure(rng, base, r) : random_measure(rng, m, 3));
        }
        for (const auto& mu : mus)
            for (const auto& nu : nus) {
                bool ext = lift_external(mu, nu, r);
                positives += ext;
                t.check(ext == oracle_lift_external(mu, nu, r), [&] {
                    return "lift_external " + dump(mu) + " " + dump(nu) + " R=" + dump(r);
                });
                if (!r.is_z_closed()) continue;
                ++zclosed;
                t.check(lift_support(mu, nu, r) == ext, [&] {
                    return "lift_support " + dump(mu) + " " + dump(nu) + " R=" + dump(r);
                });
            }
    }
    t.note("related measure pairs: " + std::to_string(positives));
    t.note("z-closed comparisons: " + std::to_string(zclosed));
}

// 2. Greatest bisimulations against exhaustive relation enumeration.
void suite_greatest(Rng& rng, Tally& t) {
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
            PointedLTS l({"a"}, names);
            for (std::size_t b = 0; b < n * n; ++b)
                if (mask >> b & 1) l.add_edge(b / n, 0, b % n);
            t.check(greatest_bisim(l, l) == oracle_greatest_bisim(l, l), [&] { return "LTS " + dump(l); });
        }
    for (int iter = 0; iter < 200; ++iter) {
        auto l = random_lts(rng, rng.between(1, 3), 2, 35);
        auto m = random_lts(rng, rng.between(1, 3), 2, 35);
        t.check(greatest_bisim(l, m) == oracle_greatest_bisim(l, m),
                [&] { return "LTS pair " + dump(l) + " " + dump(m); });
    }
    for (int iter = 0; iter < 200; ++iter) {
        auto n = random_nlmp(rng, rng.between(1, 3), rng.between(1, 2), 2, 3, 55);
        t.check(greatest_state_bisim(n) == oracle_greatest_state_bisim(n), [&] { return "NLMP " + dump(n); });
        auto np = random_nlmp(rng, rng.between(1, 3), rng.between(1, 2), 2, 3, 55);
        t.check(greatest_ext_bisim(n, np) == oracle_greatest_ext_bisim(n, np),
                [&] { return "NLMP pair " + dump(n) + " " + dump(np); });
    }
}

// 3. Bisimilarity of well-founded states coincides with equal expansions.
void suite_expansion(Rng& rng, Tally& t) {
    std::uint64_t positives = 0;
    for (int iter = 0; iter < 300; ++iter) {
        auto l = random_wf_lts(rng, rng.between(1, 6), rng.between(1, 2), 30);
        auto m = random_wf_lts(rng, rng.between(1, 6), 2, 30);
        auto g = greatest_bisim(l, m);
        std::vector<std::string> cl, cm;
        for (StateId s = 0; s < l.size(); ++s) cl.push_back(canon(*omega_expand(l, s)));
        for (StateId s = 0; s < m.size(); ++s) cm.push_back(canon(*omega_expand(m, s)));
        for (StateId s = 0; s < l.size(); ++s)
            for (StateId u = 0; u < m.size(); ++u) {
                positives += g.contains(s, u);
                t.check(g.contains(s, u) == (cl[s] == cm[u]), [&] {
                    return "states " + l.states()[s] + ", " + m.states()[u] + " of " + dump(l) + " " + dump(m);
                });
            }
    }
    t.note("bisimilar pairs: " + std::to_string(positives));
}

// 4. State rank, expansion root rank and the φ_n rank agree.
void suite_rank(Rng& rng, Tally& t) {
    for (int iter = 0; iter < 300; ++iter) {
        auto l = random_wf_lts(rng, rng.between(1, 6), rng.between(1, 2), 35);
        auto ranks = state_ranks(l);
        for (StateId s = 0; s < l.size(); ++s) {
            std::uint64_t phi = 0;
            while (phi <= l.size() && eval_formula(l, s, build_phi(Ordinal::natural(phi + 1), l.labels()))) ++phi;
            bool ok = ranks[s] && *ranks[s] == mt_root_rank(*omega_expand(l, s)) && *ranks[s] == phi &&
                      state_rank(l, s) == Ordinal::natural(phi);
            t.check(ok, [&] { return "state " + l.states()[s] + " of " + dump(l); });
        }
    }
}

// 5. Congruence at the tree rank coincides with canonical-form equality.
void suite_treeiso(Rng& rng, Tally& t) {
    auto all = all_multitrees(3, {"a", "b"});
    std::vector<std::string> forms;
    for (const auto& x : all) forms.push_back(canon(*x));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j)
            t.check(cong_alpha(*all[i], *all[j], mt_tree_rank(*all[i])) == (forms[i] == forms[j]),
                    [&] { return "trees " + forms[i] + " " + forms[j]; });
    auto labels = label_names(2);
    std::uint64_t positives = 0;
    for (int iter = 0; iter < 300; ++iter) {
        auto x = random_multitree(rng, 3, 3, labels);
        auto alpha = mt_tree_rank(*x);
        for (const auto& y : {permute_multitree(rng, *x), mutate_multitree(rng, *x, labels)}) {
            bool c = canon(*x) == canon(*y);
            positives += c;
            t.check(cong_alpha(*x, *y, alpha) == c, [&] { return "trees " + canon(*x) + " " + canon(*y); });
        }
    }
    t.note("exhaustive trees: " + std::to_string(all.size()));
    t.note("random congruent pairs: " + std::to_string(positives));
}

std::uint64_t recursive_rank(const ExplicitTree& tree, const ExplicitTree::Seq& u) {
    std::uint64_t r = 0;
    auto v = u;
    for (auto c : tree.children(u)) {
        v.push_back(c);
        r = std::max(r, recursive_rank(tree, v) + 1);
        v.pop_back();
    }
    return r;
}

// 6. ρ_T((n)⌢u′) = ρ_{T_(n)}(u′).
void suite_tail(Rng& rng, Tally& t) {
    for (int iter = 0; iter < 200; ++iter) {
        auto tree = random_explicit_tree(rng, 40, 4);
        bool ok = true;
        for (const auto& u : tree.nodes()) {
            ok = ok && node_rank(tree, u) == Ordinal::natural(recursive_rank(tree, u));
            if (u.empty()) continue;
            auto sec = section(tree, ExplicitTree::Seq{u[0]});
            ok = ok && node_rank(tree, u) == node_rank(sec, tail(u)) &&
                 node_rank(sec, tail(u)) == Ordinal::natural(recursive_rank(sec, tail(u)));
        }
        t.check(ok, [&] { return "tree " + io::tree_to_json(tree).dump(); });
    }
}

// 7. B-trees reduce E₀.
void suite_e0(Rng& rng, Tally& t) {
    std::uint64_t positives = 0;
    for (int iter = 0; iter < 500; ++iter) {
        auto x = random_epset(rng, 6, 4);
        EPSet y;
        switch (iter % 3) {
            case 0: {
                std::set<std::uint64_t> mask;
                for (std::size_t k = rng.below(4); k > 0; --k) mask.insert(rng.below(10));
                y = x.xor_finite(mask);
                break;
            }
            case 1: {
                auto period = x.period();
                period.flip();
                y = EPSet(x.prefix(), period);
                break;
            }
            default: y = random_epset(rng, 6, 4);
        }
        bool b = b_bisim(x, y);
        positives += b;
        t.check(b == ep_e0(x, y), [&] { return "pair " + dump(x) + " " + dump(y); });
        bool diamonds = true;
        for (std::uint64_t k = 0; k <= 32; ++k) diamonds = diamonds && diamond_k_sat(x, k) == ep_member(x, k);
        t.check(diamonds, [&] { return "diamonds at " + dump(x); });
        auto expect = Ordinal::omega_plus(ep_is_finite(x) ? 1 : 2);
        t.check(sym_rank(build_B(x)).tree == expect, [&] { return "rank of B at " + dump(x); });
    }
    t.note("E0-related pairs: " + std::to_string(positives));
}

std::vector<StateSet> thick_carriers(const PointmassNLMP& n) {
    std::vector<StateSet> out;
    for_each_subset(n.size(), [&](const StateSet& a) {
        if (a.none()) return;
        try {
            substructure(n, a);
            out.push_back(a);
        } catch (const NotThick&) {
        }
    });
    return out;
}

// 8. Substructures: up-coherence, transfer, descent, the three-point example.
void suite_substructure(Rng& rng, Tally& t) {
    // Up-coherence.
    for (int iter = 0; iter < 200; ++iter) {
        auto n = random_nlmp(rng, rng.between(1, 5), 2, 2, 3, 50);
        for (const auto& a : thick_carriers(n)) {
            auto sub = substructure(n, a);
            t.check(is_ext_state_bisim(n, sub.induced, inclusion_rel(sub)), [&] { return "up " + dump(n); });
        }
    }
    // Transfer, exhaustive over R ⊆ A × A′; with one ambient process also the
    // symmetrized union.
    std::uint64_t passing = 0;
    for (int iter = 0; iter < 120; ++iter) {
        auto n = random_nlmp(rng, rng.between(1, 4), 1, 2, 2, 60);
        bool same = iter % 2 == 0;
        auto np = same ? n : random_nlmp(rng, rng.between(1, 4), 1, 2, 2, 60);
        auto ca = thick_carriers(n), cap = thick_carriers(np);
        const auto& a = ca[rng.below(ca.size())];
        const auto& ap = cap[rng.below(cap.size())];
        if (a.count() * ap.count() > 9) continue;
        auto sub = substructure(n, a), subp = substructure(np, ap);
        for_each_relation(a.count(), ap.count(), [&](const Rel& local) {
            auto global = globalize_rel(local, sub, subp);
            bool on_sub = is_ext_state_bisim(sub.induced, subp.induced, local);
            passing += on_sub;
            t.check(on_sub == is_ext_state_bisim(n, np, global),
                    [&] { return "transfer " + dump(n) + " " + dump(np) + " R=" + dump(global); });
            if (same && on_sub)
                t.check(is_state_bisim(n, global.unite(global.inverse())),
                        [&] { return "symmetrized union " + dump(n) + " R=" + dump(global); });
        });
    }
    t.note("transfer relations passing: " + std::to_string(passing));
    // Descent for R = 𝓡(Σ(R)); other state bisimulations only logged.
    std::uint64_t not_z = 0, not_ext = 0, descents = 0;
    std::string first_candidate;
    for (int iter = 0; iter < 300; ++iter) {
        auto n = random_nlmp(rng, rng.between(1, 5), 2, 2, 3, 50);
        std::vector<Rel> bisims{greatest_state_bisim(n), Rel::identity(n.size())};
        auto extra = random_rel(rng, n.size(), n.size(), 30);
        extra = extra.unite(extra.inverse()).unite(Rel::identity(n.size()));
        if (is_state_bisim(n, extra)) bisims.push_back(extra);
        std::vector<StateSet> carriers;
        for (StateId s = 0; s < n.size(); ++s) carriers.push_back(reach_A_s(n, s));
        carriers.push_back(make_set(n.size()).flip());
        for (const auto& r : bisims) {
            bool closed = r_sigma_closure(r) == r;
            for (const auto& a : carriers)
                for (const auto& ap : carriers) {
                    auto sub = substructure(n, a), subp = substructure(n, ap);
                    auto down = restrict_rel(r, a, ap);
                    bool z = down.is_z_closed();
                    bool ext = is_ext_state_bisim(sub.induced, subp.induced, localize_rel(down, sub, subp));
                    if (closed) {
                        ++descents;
                        t.check(z && ext, [&] { return "descent " + dump(n) + " R=" + dump(r); });
                    } else {
                        not_z += !z;
                        not_ext += !ext;
                        if (!(z && ext) && first_candidate.empty())
                            first_candidate = dump(n) + " R=" + dump(r) + " A=" + dump(a) + " A'=" + dump(ap);
                    }
                }
        }
    }
    t.note("descent instances: " + std::to_string(descents));
    t.note("outside the hypothesis, restrictions not z-closed: " + std::to_string(not_z));
    t.note("outside the hypothesis, restrictions not external bisimulations: " + std::to_string(not_ext));
    if (!first_candidate.empty()) t.note("first such instance: " + first_candidate);
    // S = {1,2,3} as 0..2, A = {1,2}, A′ = {3}, R = {(1,2),(2,3)}.
    auto r = Rel::from_pairs(3, 3, {{0, 1}, {1, 2}});
    auto a = make_set(3, {0, 1}), ap = make_set(3, {2});
    auto atoms = rclosed_atoms(r);
    t.check(atoms.size() == 1 && atoms[0] == make_set(3, {0, 1, 2}), [] { return "three-point atoms"; });
    t.check(restrict_rel(r_sigma_closure(r), a, ap) == Rel::from_pairs(3, 3, {{0, 2}, {1, 2}}),
            [] { return "three-point closure restriction"; });
    t.check(rx_closure(restrict_rel(r, a, ap)) == Rel::from_pairs(3, 3, {{1, 2}}),
            [] { return "three-point restricted closure"; });
}

// 9. Sum-process properties, exhaustive over R ⊆ S × S′.
void suite_sum(Rng& rng, Tally& t) {
    std::uint64_t passing = 0;
    for (int iter = 0; iter < 60; ++iter) {
        auto n = random_nlmp(rng, rng.between(1, 3), 2, 2, 3, 55);
        auto np = random_nlmp(rng, rng.between(1, 3), 2, 2, 3, 55);
        auto sum = sum_nlmp(n, np);
        const std::size_t k = n.size(), l = np.size();
        for_each_relation(k, l, [&](const Rel& r) {
            auto lifted = rel_lift(r);
            auto sym = lifted.unite(lifted.inverse());
            bool ext = is_ext_state_bisim(n, np, r);
            passing += ext;
            t.check(ext == is_state_bisim(sum, sym), [&] { return "symmetrization " + dump(n) + " " + dump(np); });
            t.check(rel_descent(lifted, k, l) == r, [] { return "descent of lift"; });
            bool transfer = true;
            for_each_subset(k, [&](const StateSet& e) {
                for_each_subset(l, [&](const StateSet& ep) {
                    if (!oracle_closed_pair(r, e, ep)) return;
                    StateSet both(k + l);
                    for (auto s : members(e)) both.set(s);
                    for (auto s : members(ep)) both.set(k + s);
                    transfer = transfer && oracle_rclosed(sym, both);
                });
            });
            t.check(transfer, [&] { return "closed pair transfer R=" + dump(r); });
        });
        auto g = greatest_state_bisim(sum);
        t.check(is_ext_state_bisim(n, np, rel_descent(g, k, l)) &&
                    rel_descent(g, k, l) == greatest_ext_bisim(n, np),
                [&] { return "descent of the sum bisimulation " + dump(n) + " " + dump(np); });
    }
    t.note("external bisimulations found: " + std::to_string(passing));
}

// 10. Uniform search and the G/K block.
void suite_uniform(Rng& rng, Tally& t) {
    std::uint64_t positives = 0;
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t k = rng.between(1, 5);
        auto m = random_nlmp(rng, k, 2, 2, 3, 50);
        auto u = scramble_uniform(rng, derive_uniform(m));
        auto g = greatest_state_bisim(m);
        for (StateId s = 0; s < k; ++s)
            for (StateId sp = 0; sp < k; ++sp) {
                auto res = uniform_bisim_search(m, u, s, sp);
                positives += res.bisimilar;
                t.check(res.bisimilar == g.contains(s, sp) && res.z_closed && res.gk_ok,
                        [&] { return "search " + dump(m) + " at " + m.states()[s] + ", " + m.states()[sp]; });
            }
        auto r = random_z_closed_rel(rng, k, k);
        for (StateId x = 0; x < k; ++x)
            for (StateId xp = 0; xp < k; ++xp) {
                auto rr = restrict_rel(r, x_set(u, x, k), x_set(u, xp, k));
                for (LabelId a = 0; a < m.labels().size(); ++a)
                    for (std::size_t i = 0; i < u.rows[x][a].size(); ++i)
                        for (std::size_t j = 0; j < u.rows[xp][a].size(); ++j) {
                            bool gk = gk_block(u, x, u, xp, rr, a, i, j);
                            t.check(gk == lift_support(row_measure(u.rows[x][a][i]), row_measure(u.rows[xp][a][j]),
                                                       rr),
                                    [&] { return "G/K block " + dump(m) + " R=" + dump(rr); });
                        }
            }
    }
    t.note("bisimilar pairs: " + std::to_string(positives));
}

// 11. The rank-bounded pipeline on F-processes of all small trees.
void suite_umlts(Rng&, Tally& t) {
    std::vector<std::string> names;
    std::vector<PointedLTS> parts;
    std::vector<std::string> labels{kTreeLabel};
    for (std::size_t size = 1; size <= 6; ++size)
        for (const auto& tree : all_explicit_trees(size)) {
            if (tree.size() != size) continue;
            auto f = f_process(tree);
            for (const auto& s : f.states()) names.push_back("t" + std::to_string(parts.size()) + s);
            parts.push_back(std::move(f));
        }
    PointedLTS all(labels, names);
    std::size_t offset = 0;
    for (const auto& f : parts) {
        for (const auto& e : f.edges()) all.add_edge(offset + e.src, 0, offset + e.dst);
        offset += f.size();
    }
    constexpr std::uint64_t alpha = 6;
    std::vector<std::string> forms;
    for (StateId s = 0; s < all.size(); ++s) forms.push_back(pipeline_canon(all, s, alpha));
    auto g = greatest_bisim(all, all);
    for (StateId s = 0; s < all.size(); ++s)
        for (StateId u = 0; u < all.size(); ++u)
            t.check(g.contains(s, u) == (forms[s] == forms[u]),
                    [&] { return "states " + all.states()[s] + ", " + all.states()[u]; });
    bool raised = false;
    try {
        pipeline_canon(all, 0, 0);
    } catch (const RankExceeded&) {
        raised = true;
    }
    t.check(raised || state_ranks(all)[0] == 0u, [] { return "rank bound not enforced"; });
    t.note("trees: " + std::to_string(parts.size()) + ", states: " + std::to_string(all.size()));
}

using SuiteFn = void (*)(Rng&, Tally&);

struct Entry {
    SuiteInfo info;
    SuiteFn fn;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table{
        {{1, "lifting", "lifting oracle equivalence"}, suite_lifting},
        {{2, "greatest", "greatest bisimulation against relation enumeration"}, suite_greatest},
        {{3, "expansion", "bisimilarity equals equal expansions"}, suite_expansion},
        {{4, "rank", "rank coherence"}, suite_rank},
        {{5, "treeiso", "congruence equals canonical-form equality"}, suite_treeiso},
        {{6, "tail", "tail-rank identity"}, suite_tail},
        {{7, "e0", "B-trees reduce eventual equality"}, suite_e0},
        {{8, "substructure", "substructure up-coherence, transfer and descent"}, suite_substructure},
        {{9, "sum", "sum-process properties"}, suite_sum},
        {{10, "uniform", "uniform search and the G/K block"}, suite_uniform},
        {{11, "umlts", "rank-bounded pipeline on F-processes"}, suite_umlts},
    };
    return table;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
    static const std::vector<SuiteInfo> out = [] {
        std::vector<SuiteInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return out;
}

std::optional<int> find_suite(const std::string& key) {
    for (const auto& e : entries())
        if (e.info.name == key || std::to_string(e.info.id) == key) return e.info.id;
    return std::nullopt;
}

SuiteResult run_suite(int id, std::uint64_t seed) {
    for (const auto& e : entries()) {
        if (e.info.id != id) continue;
        SuiteResult r;
        r.id = id;
        r.name = e.info.name;
        Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(id));
        Tally t(r);
        e.fn(rng, t);
        return r;
    }
    throw std::out_of_range("no suite " + std::to_string(id));
}

}  // namespace bisimkit::verify
