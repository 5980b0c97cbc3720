#include <algorithm>
#include <functional>

#include "bisimkit/treeiso.hpp"
#include "bisimkit/verify/gen.hpp"
#include "doctest.h"

using namespace bisimkit;
using namespace bisimkit::verify;

namespace {

struct Flat {
    std::vector<std::vector<std::pair<std::string, std::size_t>>> kids;  // per node: (label, child node)
};

std::size_t flatten(const MultiTree& t, Flat& f) {
    auto id = f.kids.size();
    f.kids.emplace_back();
    for (const auto& [label, kids] : t.children)
        for (const auto& [child, count] : kids)
            for (std::uint64_t i = 0; i < count.value(); ++i) {
                auto c = flatten(*child, f);
                f.kids[id].emplace_back(label, c);
            }
    return id;
}

// Isomorphism by trying every pairing of children; finite counts only.
bool brute_iso(const Flat& a, std::size_t u, const Flat& b, std::size_t v) {
    const auto& ku = a.kids[u];
    const auto& kv = b.kids[v];
    if (ku.size() != kv.size()) return false;
    std::vector<std::size_t> perm(kv.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < ku.size() && ok; ++i)
            ok = ku[i].first == kv[perm[i]].first && brute_iso(a, ku[i].second, b, kv[perm[i]].second);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

bool has_omega(const MultiTree& t) {
    for (const auto& [label, kids] : t.children)
        for (const auto& [child, count] : kids)
            if (count.is_omega() || has_omega(*child)) return true;
    return false;
}

}  // namespace

TEST_CASE("canonical forms") {
    CHECK(canon(*mt_leaf()) == "()");
    auto two = mt_node({{"a", {{mt_leaf(), Count(2)}}}});
    auto three = mt_node({{"a", {{mt_leaf(), Count(3)}}}});
    CHECK(canon(*two) != canon(*three));
    CHECK(canon(*two) == "(1:a[()^2])");
    auto split = mt_node({{"a", {{mt_leaf(), Count(1)}, {mt_leaf(), Count(1)}}}});
    CHECK(iso(*two, *split));
    auto w = mt_node({{"a", {{mt_leaf(), Count::omega()}}}});
    auto ww = mt_node({{"a", {{mt_leaf(), Count::omega()}, {mt_leaf(), Count::omega()}}}});
    CHECK(iso(*w, *ww));
    CHECK(canon(*w) == "(1:a[()^w])");
    CHECK_FALSE(forth_back_k(*two, *three, Ordinal::natural(2), 3));
    CHECK(forth_back_k(*two, *three, Ordinal::natural(2), 2));
    CHECK(forth_back_k(*mt_leaf(), *mt_leaf(), Ordinal::natural(1), 1));
    auto b = mt_node({{"b", {{mt_leaf(), Count(2)}}}});
    CHECK_FALSE(forth_back_k(*two, *b, Ordinal::natural(2), 1));
    CHECK(cong_alpha(*mt_leaf(), *mt_leaf(), Ordinal::natural(1)));
    auto deep = mt_node({{"a", {{two, Count(1)}}}});
    for (std::uint64_t a = 0; a < 6; ++a) CHECK_FALSE(cong_alpha(*two, *deep, Ordinal::natural(a)));
    CHECK_THROWS_AS(mt_node({{"a", {{mt_leaf(), Count(0)}}}}), std::invalid_argument);
}

TEST_CASE("exhaustive small trees: canon, congruence and brute force agree") {
    auto all = all_multitrees(3, {"a", "b"});
    REQUIRE(all.size() > 20);
    for (const auto& t : all)
        for (const auto& u : all) {
            bool c = canon(*t) == canon(*u);
            auto rank = mt_tree_rank(*t);
            CHECK(c == cong_alpha(*t, *u, rank));
            if (!has_omega(*t) && !has_omega(*u)) {
                Flat ft, fu;
                flatten(*t, ft);
                flatten(*u, fu);
                CHECK(c == brute_iso(ft, 0, fu, 0));
            }
            bool all_k = true;
            for (std::size_t k = 1; k <= 5; ++k) all_k = all_k && forth_back_k(*t, *u, rank, k);
            CHECK(c == all_k);
        }
}

TEST_CASE("random trees: permutations are isomorphic, congruence matches canon") {
    Rng rng(61);
    auto labels = label_names(2);
    for (int iter = 0; iter < 300; ++iter) {
        auto t = random_multitree(rng, 3, 3, labels);
        auto p = permute_multitree(rng, *t);
        auto m = mutate_multitree(rng, *t, labels);
        CHECK(iso(*t, *p));
        CHECK(cong_alpha(*t, *p, mt_tree_rank(*t)));
        bool c = canon(*t) == canon(*m);
        CHECK(c == cong_alpha(*t, *m, mt_tree_rank(*t)));
        if (c)
            for (std::size_t k = 1; k <= 4; ++k) CHECK(forth_back_k(*t, *m, mt_tree_rank(*t), k));
        // forth₁/back₁ bound trees to rank ≤ α+1 by construction of the rank clause.
        if (forth_back_k(*t, *m, mt_tree_rank(*t), 1)) CHECK(mt_tree_rank(*m) <= mt_tree_rank(*t).succ());
        CHECK(mt_root_rank(*t) <= 3);
    }
}
