#include <random>

#include "bisimkit/lts.hpp"
#include "doctest.h"

using namespace bisimkit;

namespace {

PointedLTS random_lts(std::mt19937_64& rng, std::size_t n, std::size_t labels, double density) {
    std::vector<std::string> ls, ss;
    for (std::size_t a = 0; a < labels; ++a) ls.push_back(std::string(1, char('a' + a)));
    for (std::size_t s = 0; s < n; ++s) ss.push_back("s" + std::to_string(s));
    PointedLTS L(ls, ss, 0);
    std::bernoulli_distribution e(density);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < labels; ++a)
            for (std::size_t t = 0; t < n; ++t)
                if (e(rng)) L.add_edge(s, a, t);
    return L;
}

// Definitional zig/zag over raw edge lists, labels by name.
bool oracle_is_bisim(const PointedLTS& L, const PointedLTS& M, const Rel& R) {
    auto el = L.edges();
    auto em = M.edges();
    for (auto [s, t] : R.pairs()) {
        for (const auto& e : el) {
            if (e.src != s) continue;
            bool found = false;
            for (const auto& f : em)
                if (f.src == t && M.labels()[f.label] == L.labels()[e.label] && R.contains(e.dst, f.dst)) found = true;
            if (!found) return false;
        }
        for (const auto& f : em) {
            if (f.src != t) continue;
            bool found = false;
            for (const auto& e : el)
                if (e.src == s && M.labels()[f.label] == L.labels()[e.label] && R.contains(e.dst, f.dst)) found = true;
            if (!found) return false;
        }
    }
    return true;
}

Rel oracle_greatest(const PointedLTS& L, const PointedLTS& M) {
    std::size_t cells = L.size() * M.size();
    Rel best(L.size(), M.size());
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
        Rel R(L.size(), M.size());
        for (std::size_t c = 0; c < cells; ++c)
            if (bits >> c & 1) R.insert(c / M.size(), c % M.size());
        if (oracle_is_bisim(L, M, R)) best = best.unite(R);
    }
    return best;
}

}  // namespace

TEST_CASE("greatest bisimulation small examples") {
    PointedLTS loop({"a"}, {"x"});
    loop.add_edge(0, 0, 0);
    PointedLTS cyc({"a"}, {"p", "q"});
    cyc.add_edge(0, 0, 1);
    cyc.add_edge(1, 0, 0);
    CHECK(greatest_bisim(loop, cyc) == Rel::total(1, 2));
    CHECK(greatest_bisim(loop, cyc) == oracle_greatest(loop, cyc));

    PointedLTS term({"a"}, {"x"});
    CHECK_FALSE(greatest_bisim(term, loop).contains(0, 0));

    std::mt19937_64 rng(3);
    auto L = random_lts(rng, 4, 2, 0.3);
    CHECK(Rel::identity(4).subset_of(greatest_bisim(L, L)));
}

TEST_CASE("greatest bisimulation agrees with exhaustive enumeration") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 150; ++iter) {
        std::uniform_int_distribution<std::size_t> sz(1, 3), lab(1, 2);
        std::size_t labels = lab(rng);
        auto L = random_lts(rng, sz(rng), labels, 0.35);
        auto M = random_lts(rng, sz(rng), labels, 0.35);
        auto g = greatest_bisim(L, M);
        CHECK(g == oracle_greatest(L, M));
        CHECK(is_bisimulation(L, M, g));
    }
}

TEST_CASE("partition refinement and depth approximants") {
    PointedLTS three({"a"}, {"x", "y", "z"});
    CHECK(bisim_partition(three).size() == 1);
    PointedLTS chain({"a"}, {"s", "t"});
    chain.add_edge(0, 0, 1);
    CHECK(bisim_partition(chain) == std::vector<std::vector<StateId>>{{0}, {1}});

    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 200; ++iter) {
        auto L = random_lts(rng, 6, 2, 0.2);
        auto g = greatest_bisim(L, L);
        for (const auto& block : bisim_partition(L))
            for (auto s : block)
                for (StateId t = 0; t < L.size(); ++t)
                    CHECK(g.contains(s, t) == (std::find(block.begin(), block.end(), t) != block.end()));
        auto M = random_lts(rng, 4, 2, 0.25);
        CHECK(d_bisim(L, M, 0) == Rel::total(L.size(), M.size()));
        for (std::size_t d = 0; d < 6; ++d) CHECK(d_bisim(L, M, d + 1).subset_of(d_bisim(L, M, d)));
        CHECK(d_bisim(L, M, L.size() * M.size()) == greatest_bisim(L, M));
    }
}

TEST_CASE("formula evaluation") {
    PointedLTS chain({"a"}, {"s", "t"});
    chain.add_edge(0, 0, 1);
    CHECK(eval_formula(chain, 0, f_top()));
    CHECK(eval_formula(chain, 0, f_dia("a", f_top())));
    CHECK_FALSE(eval_formula(chain, 1, f_dia("a", f_top())));
    CHECK_THROWS_AS(eval_formula(chain, 0, f_charset(EPSet())), UnsupportedFormula);
    CHECK(sem_set(chain, f_top()).count() == 2);
    CHECK(formula_to_string(build_phi(Ordinal::natural(0), {"a"})) == "T");
    CHECK(formula_to_string(build_phi(Ordinal::natural(2), {"a"})) == "<a><a>T");
    CHECK(build_phi(Ordinal::omega(), {"a"})->kind == FormulaNode::Kind::RankAtLeast);

    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        auto L = random_lts(rng, 5, 2, 0.15);
        auto phi = f_dia("a", f_neg(f_dia("b", f_top())));
        CHECK(sem_set(L, f_neg(phi)) == ~sem_set(L, phi));
        auto phi1 = build_phi(Ordinal::natural(1), L.labels());
        for (StateId s = 0; s < L.size(); ++s) CHECK(eval_formula(L, s, phi1) == !L.is_terminal(s));
        // φ_{n+1} is the union over labels of the preimages of ⟦φ_n⟧.
        for (std::uint64_t n = 0; n < 4; ++n) {
            auto cur = sem_set(L, build_phi(Ordinal::natural(n), L.labels()));
            StateSet pre(L.size());
            for (const auto& e : L.edges())
                if (cur.test(e.dst)) pre.set(e.src);
            CHECK(sem_set(L, build_phi(Ordinal::natural(n + 1), L.labels())) == pre);
        }
    }
}

TEST_CASE("state ranks") {
    PointedLTS chain({"a"}, {"s", "t"});
    chain.add_edge(0, 0, 1);
    CHECK(state_rank(chain, 1) == Ordinal());
    CHECK(state_rank(chain, 0) == Ordinal::natural(1));
    PointedLTS loop({"a"}, {"x", "y"});
    loop.add_edge(0, 0, 0);
    CHECK_FALSE(state_rank(loop, 0).has_value());
    CHECK(wf_part(loop) == make_set(2, {1}));

    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 200; ++iter) {
        auto L = random_lts(rng, 5, 2, 0.12);
        auto ranks = state_ranks(L);
        for (StateId s = 0; s < L.size(); ++s)
            for (std::uint64_t n = 0; n <= L.size(); ++n) {
                bool sat = eval_formula(L, s, build_phi(Ordinal::natural(n), L.labels()));
                CHECK(sat == (!ranks[s] || *ranks[s] >= n));
                CHECK(sat == eval_formula(L, s, f_rank_at_least(Ordinal::natural(n))));
            }
        auto M = random_lts(rng, 4, 2, 0.12);
        auto g = greatest_bisim(L, M);
        auto rm = state_ranks(M);
        for (auto [s, t] : g.pairs()) CHECK(ranks[s] == rm[t]);
    }
}

TEST_CASE("omega codes round trip") {
    OmegaLTSCode c;
    c.root = 0;
    c.edges["a"] = {{0, 1}};
    auto L = code_to_lts(c, 10);
    CHECK(L.size() == 2);
    CHECK(L.successors(0, 0) == std::vector<StateId>{1});
    CHECK(lts_to_code(L) == c);

    OmegaLTSCode lone;
    lone.root = 3;
    auto T = code_to_lts(lone, 1);
    CHECK(T.size() == 1);
    CHECK(T.is_terminal(0));

    std::mt19937_64 rng(53);
    std::uniform_int_distribution<std::uint64_t> num(0, 9);
    for (int iter = 0; iter < 200; ++iter) {
        OmegaLTSCode r;
        r.root = num(rng);
        for (const char* a : {"a", "b"})
            for (int k = 0; k < 6; ++k) r.edges[a].emplace(num(rng), num(rng));
        auto back = lts_to_code(code_to_lts(r, 100));
        CHECK(back == code_reachable_part(r));
    }
    OmegaLTSCode big;
    big.edges["a"] = {{0, 1}, {1, 2}, {2, 3}};
    CHECK_THROWS_AS(code_to_lts(big, 3), std::length_error);
}
