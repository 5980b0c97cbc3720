#include <random>

#include "bisimkit/trees.hpp"
#include "doctest.h"

using namespace bisimkit;

namespace {

ExplicitTree random_tree(std::mt19937_64& rng, std::size_t max_nodes) {
    ExplicitTree T = ExplicitTree::leaf();
    std::uniform_int_distribution<std::size_t> count(1, max_nodes);
    std::size_t target = count(rng);
    while (T.size() < target) {
        std::vector<ExplicitTree::Seq> nodes(T.nodes().begin(), T.nodes().end());
        auto u = nodes[std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(rng)];
        u.push_back(std::uniform_int_distribution<std::uint64_t>(0, 3)(rng));
        T.insert(u);
    }
    return T;
}

// ρ_T(u) straight from the definition: sup over immediate extensions.
std::uint64_t oracle_rank(const ExplicitTree& T, const ExplicitTree::Seq& u) {
    if (!T.contains(u)) return 0;
    std::uint64_t r = 0;
    for (auto c : T.children(u)) {
        auto v = u;
        v.push_back(c);
        r = std::max(r, oracle_rank(T, v) + 1);
    }
    return r;
}

ModalFormula diamonds(std::uint64_t n, ModalFormula f) {
    for (std::uint64_t i = 0; i < n; ++i) f = f_dia(kTreeLabel, f);
    return f;
}

ModalFormula random_formula(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1);
    switch (pick(rng)) {
        case 0: return f_top();
        case 1: return f_neg(f_dia(kTreeLabel, f_top()));
        case 2: return f_neg(random_formula(rng, depth - 1));
        case 3: return f_and({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
        case 4: return f_or({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
        default: return f_dia(kTreeLabel, random_formula(rng, depth - 1));
    }
}

EPSet random_finite(std::mt19937_64& rng, std::uint64_t below) {
    std::set<std::uint64_t> s;
    std::bernoulli_distribution in(0.4);
    for (std::uint64_t i = 0; i < below; ++i)
        if (in(rng)) s.insert(i);
    return EPSet::finite(s);
}

}  // namespace

TEST_CASE("explicit tree ranks and sections") {
    auto leaf = ExplicitTree::leaf();
    CHECK(node_rank(leaf, {}) == Ordinal());
    CHECK(tree_rank(leaf) == Ordinal::natural(1));
    ExplicitTree T(std::set<ExplicitTree::Seq>{{}, {0}, {0, 0}});
    CHECK(node_rank(T, {}) == Ordinal::natural(2));
    CHECK(tree_rank(T) == Ordinal::natural(3));
    CHECK(node_rank(T, {5}) == Ordinal());
    CHECK(section(T, {}) == T);
    ExplicitTree U(std::set<ExplicitTree::Seq>{{}, {1}, {1, 0}});
    CHECK(section(U, {1}) == ExplicitTree(std::set<ExplicitTree::Seq>{{}, {0}}));
    CHECK_THROWS_AS(tail(ExplicitTree::Seq{}), std::invalid_argument);
    CHECK_THROWS_AS(ExplicitTree(std::set<ExplicitTree::Seq>{{}, {0, 1}}), std::invalid_argument);
    CHECK(wf_class(ExplicitTree(), Ordinal(), RankCmp::Eq));
}

TEST_CASE("tail-rank identity on random trees") {
    std::mt19937_64 rng(101);
    for (int iter = 0; iter < 200; ++iter) {
        auto T = random_tree(rng, 40);
        auto ranks = node_ranks(T);
        for (const auto& u : T.nodes()) {
            CHECK(ranks.at(u) == oracle_rank(T, u));
            if (u.empty()) continue;
            auto sec = section(T, ExplicitTree::Seq{u[0]});
            CHECK(node_rank(T, u) == node_rank(sec, tail(u)));
        }
    }
}

TEST_CASE("symbolic ranks and truncations") {
    CHECK(sym_rank(SymbolicTree::chain(3)).root == Ordinal::natural(3));
    CHECK(sym_rank(SymbolicTree::chain(3)).tree == Ordinal::natural(4));
    CHECK(sym_rank(SymbolicTree::a_tree(EPSet::finite({0, 2}))).root == Ordinal::natural(3));
    CHECK(sym_rank(SymbolicTree::b_tree(EPSet::evens())).tree == Ordinal::omega_plus(2));
    CHECK(sym_rank(SymbolicTree::b_tree(EPSet::finite({1}))).tree == Ordinal::omega_plus(1));
    CHECK(sym_truncate(SymbolicTree::chain(2), 5, 5) == ExplicitTree(std::set<ExplicitTree::Seq>{{}, {0}, {0, 0}}));
    CHECK(sym_truncate(SymbolicTree::a_tree(EPSet::finite({1})), 5, 5) ==
          ExplicitTree(std::set<ExplicitTree::Seq>{{}, {1}, {1, 0}}));
    auto a02 = sym_truncate(SymbolicTree::a_tree(EPSet::finite({0, 2})), 5, 5);
    for (ExplicitTree::Seq u : {ExplicitTree::Seq{0}, {2}, {2, 0}, {2, 0, 0}}) CHECK(a02.contains(u));
    CHECK(a02.size() == 5);
    CHECK(psi_sat(ExplicitTree::leaf(), Ordinal()));
    CHECK_FALSE(psi_sat(ExplicitTree::leaf(), Ordinal::natural(1)));
    CHECK(psi_sat(SymbolicTree::a_tree(EPSet::evens()), Ordinal::omega()));
    CHECK(wf_class(SymbolicTree::chain(1), Ordinal::natural(2), RankCmp::Eq));
    CHECK(wf_class(SymbolicTree::b_tree(EPSet::evens()), Ordinal::omega_plus(2), RankCmp::LessEq));

    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        auto x = random_finite(rng, 8);
        auto t = SymbolicTree::a_tree(x);
        std::uint64_t m = x.max_element().value_or(0);
        CHECK(node_rank(sym_truncate(t, m + 2, m + 1), {}) == sym_rank(t).root);
        auto g = SymbolicTree::glue({SymbolicTree::chain(iter % 4), t, SymbolicTree::glue({t})});
        CHECK(node_rank(sym_truncate(g, m + 5, m + 4), {}) == sym_rank(g).root);
        // Growing the window only adds nodes.
        auto small = sym_truncate(SymbolicTree::b_tree(x), 3, 3);
        auto big = sym_truncate(SymbolicTree::b_tree(x), 4, 5);
        for (const auto& u : small.nodes()) CHECK(big.contains(u));
    }
}

TEST_CASE("psi satisfaction matches explicit diamonds") {
    std::mt19937_64 rng(19);
    for (int iter = 0; iter < 200; ++iter) {
        auto T = random_tree(rng, 15);
        auto L = tree_to_lts(T);
        for (std::uint64_t n = 0; n < 8; ++n) {
            CHECK(psi_sat(T, Ordinal::natural(n)) == eval_formula(L, 0, diamonds(n, f_top())));
            CHECK(psi_sat(T, Ordinal::natural(n)) == eval_formula(L, 0, build_psi(Ordinal::natural(n))));
        }
    }
}

TEST_CASE("long chains are indistinguishable at bounded depth") {
    std::mt19937_64 rng(29);
    for (int iter = 0; iter < 300; ++iter) {
        auto f = random_formula(rng, 4);
        auto d = modal_depth(f);
        for (std::uint64_t n = d; n < d + 3; ++n)
            for (std::uint64_t m = d; m < d + 3; ++m) {
                auto ln = tree_to_lts(sym_truncate(SymbolicTree::chain(n), n, 1));
                auto lm = tree_to_lts(sym_truncate(SymbolicTree::chain(m), m, 1));
                CHECK(eval_formula(ln, 0, f) == eval_formula(lm, 0, f));
                CHECK(sym_eval(SymbolicTree::chain(n), f) == eval_formula(ln, 0, f));
            }
    }
}

TEST_CASE("symbolic evaluation agrees with exact materializations") {
    std::mt19937_64 rng(37);
    for (int iter = 0; iter < 300; ++iter) {
        auto f = random_formula(rng, 5);
        auto x = random_finite(rng, 7);
        auto a = SymbolicTree::a_tree(x);
        auto g = SymbolicTree::glue({a, SymbolicTree::chain(iter % 5), SymbolicTree::a_tree(random_finite(rng, 5))});
        // Finite x: a depth-9, width-9 window holds the whole tree.
        auto la = tree_to_lts(sym_truncate(a, 9, 9));
        auto lg = tree_to_lts(sym_truncate(g, 10, 9));
        CHECK(sym_eval(a, f) == eval_formula(la, 0, f));
        CHECK(sym_eval(g, f) == eval_formula(lg, 0, f));
        CHECK(leaf_distances(g) == [&] {
            std::set<std::uint64_t> out;
            for (std::uint64_t n = 0; n < 12; ++n)
                if (eval_formula(lg, 0, diamonds(n + 1, f_neg(f_dia(kTreeLabel, f_top()))))) out.insert(n);
            return EPSet::finite(out);
        }());
    }
}

TEST_CASE("symbolic evaluation under B roots matches wide truncations") {
    // With x ⊆ [0,4) and formulas of depth ≤ 3 every child type of B(x) that
    // matters already occurs among masks below 2^6.
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 150; ++iter) {
        auto f = f_dia(kTreeLabel, random_formula(rng, 2));
        auto x = random_finite(rng, 4);
        auto b = SymbolicTree::b_tree(x);
        auto lb = tree_to_lts(sym_truncate(b, 9, 64));
        CHECK(sym_eval(b, f) == eval_formula(lb, 0, f));
    }
}
