#include "bisimkit/e0.hpp"
#include "bisimkit/verify/gen.hpp"
#include "doctest.h"

using namespace bisimkit;
using namespace bisimkit::verify;

namespace {

bool truncations_d_bisim(const ExplicitTree& a, const ExplicitTree& b, std::size_t d) {
    auto la = tree_to_lts(a);
    auto lb = tree_to_lts(b);
    return d_bisim(la, lb, d).contains(la.root(), lb.root());
}

}  // namespace

TEST_CASE("finite modifications and gadget trees") {
    auto x = EPSet::evens();
    CHECK(mod_n(x, 0) == x);
    CHECK(mod_n(x, 5) == x.xor_finite({0, 2}));
    CHECK(mod_n(mod_n(x, 77), 77) == x);

    auto a02 = sym_truncate(build_A(EPSet::finite({0, 2})), 4, 3);
    CHECK(a02.contains({0}));
    CHECK(a02.contains({2, 0, 0}));
    CHECK(a02.contains({2, 0}));
    CHECK_FALSE(a02.contains({1}));
    CHECK_FALSE(a02.contains({0, 0}));
    CHECK(sym_truncate(build_A(EPSet()), 5, 5).size() == 1);

    auto y = EPSet::finite({1, 3});
    auto b = sym_truncate(build_B(y), 5, 1);
    auto a = sym_truncate(build_A(y), 4, 1);
    for (const auto& u : a.nodes()) {
        ExplicitTree::Seq v{0};
        v.insert(v.end(), u.begin(), u.end());
        CHECK(b.contains(v));
    }
}

TEST_CASE("diamond and characteristic formulas") {
    auto x = EPSet::finite({0, 2});
    CHECK(diamond_k_sat(x, 2));
    CHECK_FALSE(diamond_k_sat(x, 1));
    CHECK(char_sat(x, x));
    CHECK_FALSE(char_sat(EPSet::evens(), EPSet::odds()));

    Rng rng(163);
    for (int iter = 0; iter < 100; ++iter) {
        auto w = random_epset(rng, 6, 4);
        auto z = rng.chance(1, 2) ? w.xor_finite({rng.below(6)}) : random_epset(rng, 6, 4);
        for (std::uint64_t k = 0; k <= 32; ++k) CHECK(diamond_k_sat(w, k) == w.contains(k));
        CHECK(char_sat(w, z) == (w == z));
        // Conjunct audit on a finite prefix.
        bool prefix = true;
        for (std::uint64_t k = 0; k <= 8; ++k) prefix = prefix && (diamond_k_sat(w, k) == z.contains(k));
        if (char_sat(w, z)) CHECK(prefix);
        // Diamond satisfaction against the explicit truncation.
        for (std::uint64_t k = 0; k <= 5; ++k) {
            auto t = sym_truncate(build_A(w), k + 2, k + 2);
            auto l = tree_to_lts(t);
            CHECK(eval_formula(l, l.root(), diamond_k_formula(k)) == w.contains(k));
        }
    }
}

TEST_CASE("B-tree bisimilarity and the matching") {
    auto x = EPSet::from_bits("101", "10");
    CHECK(b_bisim(x, mod_n(x, 6)));
    CHECK_FALSE(b_bisim(EPSet(), EPSet::all()));
    auto verdict = b_bisim_verdict(EPSet::evens(), EPSet::odds());
    CHECK_FALSE(verdict.bisimilar);
    REQUIRE(verdict.distinguisher);
    CHECK_THROWS_AS(matching_bijection(EPSet::evens(), EPSet::odds(), 4), std::invalid_argument);

    Rng rng(167);
    for (int iter = 0; iter < 300; ++iter) {
        auto p = random_epset(rng, 6, 4);
        EPSet q;
        switch (rng.below(3)) {
            case 0: q = p.xor_finite({rng.below(8), rng.below(8)}); break;
            case 1: {
                auto tail = p.period();
                tail.flip();
                q = EPSet(p.prefix(), tail);
                break;
            }
            default: q = random_epset(rng, 6, 4);
        }
        CHECK(b_bisim(p, q) == ep_e0(p, q));
        if (!ep_e0(p, q)) continue;
        auto m = matching_bijection(p, q, 64);
        std::set<std::uint64_t> images;
        for (auto [n, np] : m) {
            CHECK(mod_n(p, n) == mod_n(q, np));
            images.insert(np);
        }
        CHECK(images.size() == m.size());
        for (std::uint64_t d = 1; d <= 4; ++d)
            CHECK(truncations_d_bisim(sym_truncate(build_B(p), d, d), b_truncate_matched(p, q, d, d), d));
    }
}

TEST_CASE("bounded-depth truncations of equal width need not agree") {
    // E₀-related, yet the first five children of B(∅) include the leaf A(∅)
    // while those of B({0,1,2}) do not.
    auto x = EPSet(), y = EPSet::finite({0, 1, 2});
    CHECK(b_bisim(x, y));
    CHECK_FALSE(truncations_d_bisim(sym_truncate(build_B(x), 5, 5), sym_truncate(build_B(y), 5, 5), 5));
    CHECK(truncations_d_bisim(sym_truncate(build_B(x), 5, 5), b_truncate_matched(x, y, 5, 5), 5));
}

TEST_CASE("rank of B-trees") {
    auto w = Ordinal::omega();
    CHECK(sym_rank(build_B(EPSet::evens())).tree == w.plus_natural(2));
    CHECK(sym_rank(build_B(EPSet::finite({3}))).tree == w.plus_natural(1));
    CHECK(sym_rank(build_B(EPSet())).tree == w.plus_natural(1));
}
