#include "bisimkit/expansion.hpp"
#include "bisimkit/treeiso.hpp"
#include "bisimkit/verify/gen.hpp"
#include "doctest.h"

using namespace bisimkit;
using namespace bisimkit::verify;

namespace {

// Replaces every ω count by `width` so the tree can be compared with a
// width-limited path enumeration.
MultiTree::Ptr with_width(const MultiTree& t, std::uint64_t width) {
    MultiTree out;
    for (const auto& [label, kids] : t.children)
        for (const auto& [child, count] : kids)
            out.children[label].emplace_back(with_width(*child, width), count.is_omega() ? Count(width) : count);
    return std::make_shared<const MultiTree>(std::move(out));
}

}  // namespace

TEST_CASE("expansion basics") {
    PointedLTS term({"a"}, {"s"});
    CHECK(canon(*omega_expand(term, 0)) == "()");
    PointedLTS chain({"a"}, {"s", "t"});
    chain.add_edge(0, 0, 1);
    CHECK(canon(*omega_expand(chain, 0)) == "(1:a[()^w])");
    PointedLTS twin({"a"}, {"s", "t", "u"});
    twin.add_edge(0, 0, 1);
    twin.add_edge(0, 0, 2);
    CHECK(canon(*omega_expand(twin, 0)) == canon(*omega_expand(chain, 0)));

    PointedLTS loop({"a"}, {"s"});
    loop.add_edge(0, 0, 0);
    CHECK_THROWS_AS(omega_expand(loop, 0), IllFounded);
    CHECK(canon(*omega_expand_truncated(loop, 0, 0)) == "()");
    CHECK(canon(*omega_expand_truncated(loop, 0, 2)) == "(1:a[(1:a[()^w])^w])");

    OmegaLTSCode empty;
    CHECK(canon(*omega_code_expand(empty)) == "()");
    CHECK(omega_code_tree(empty, 3, 3) == MTree::leaf());
    OmegaLTSCode c;
    c.edges["a"] = {{0, 1}};
    auto T = omega_code_tree(c, 3, 2);
    CHECK(T.contains({MEntry{1, "a", 0}}));
    CHECK(T.contains({MEntry{1, "a", 1}}));
    CHECK(T.size() == 3);
}

TEST_CASE("expansion equivalence, rank preservation, depth coherence") {
    Rng rng(71);
    for (int iter = 0; iter < 300; ++iter) {
        auto L = random_wf_lts(rng, rng.between(1, 6), rng.between(1, 2), 30);
        auto M = random_wf_lts(rng, rng.between(1, 6), 2, 30);
        auto g = greatest_bisim(L, M);
        auto rl = state_ranks(L);
        for (StateId s = 0; s < L.size(); ++s) {
            auto e = omega_expand(L, s);
            CHECK(mt_root_rank(*e) == *rl[s]);
            CHECK(iso(*e, *omega_expand_truncated(L, s, *rl[s])));
            for (StateId t = 0; t < M.size(); ++t) CHECK(g.contains(s, t) == iso(*e, *omega_expand(M, t)));
        }
    }
    for (int iter = 0; iter < 200; ++iter) {
        auto L = random_lts(rng, rng.between(1, 4), 2, 25);
        for (std::size_t d = 0; d <= 4; ++d) {
            auto R = d_bisim(L, L, d);
            for (StateId s = 0; s < L.size(); ++s)
                for (StateId t = 0; t < L.size(); ++t)
                    CHECK(R.contains(s, t) ==
                          iso(*omega_expand_truncated(L, s, d), *omega_expand_truncated(L, t, d)));
        }
    }
}

TEST_CASE("code expansion matches the path enumeration") {
    Rng rng(79);
    for (int iter = 0; iter < 100; ++iter) {
        auto L = random_wf_lts(rng, rng.between(1, 5), 2, 30);
        auto c = lts_to_code(L);
        auto full = omega_code_expand(c);
        CHECK(iso(*full, *omega_expand(L, L.root())));
        auto depth = mt_root_rank(*full);
        auto paths = omega_code_tree(c, depth, 2);
        CHECK(iso(*mtree_to_multitree(paths), *with_width(*full, 2)));
        for (const auto& u : paths.nodes()) {
            if (u.empty()) continue;
            std::uint64_t from = u.size() == 1 ? c.root : u[u.size() - 2].state;
            CHECK(c.edges.at(u.back().label).count({from, u.back().state}) == 1);
        }
    }
}
