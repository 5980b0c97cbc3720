#include "bisimkit/e0.hpp"
#include "bisimkit/expansion.hpp"
#include "bisimkit/io.hpp"
#include "bisimkit/treeiso.hpp"
#include "bisimkit/verify/gen.hpp"
#include "doctest.h"

using namespace bisimkit;
using namespace bisimkit::io;
using namespace bisimkit::verify;

namespace {

std::string error_of(auto&& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("scalar formats") {
    CHECK(epset_from_json(Json::parse(R"({"prefix":"0101","period":"10"})")) == EPSet::from_bits("0101", "10"));
    CHECK(rational_from_json("3/4") == Rational(3, 4));
    CHECK(rational_from_json(2) == Rational(2));
    CHECK(error_of([] { rational_from_json("2/0", "$.w"); }).find("$.w: rational '2/0' has zero denominator") == 0);
    CHECK(error_of([] { rational_from_json("x"); }).find("malformed") != std::string::npos);
    auto w2 = Ordinal::omega_plus(2);
    CHECK(ordinal_from_json(Json::parse("[[1,1],[0,2]]")) == w2);
    CHECK(ordinal_to_json(w2).dump() == "[[1,1],[0,2]]");
    CHECK_FALSE(error_of([] { ordinal_from_json(Json::parse("[[0,1],[1,1]]")); }).empty());
    CHECK(error_of([] { epset_from_json(Json::parse(R"({"prefix":"012","period":"1"})")); }) ==
          "$.prefix: expected a string of 0 and 1");

    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        auto x = random_epset(rng, 6, 4);
        CHECK(epset_from_json(epset_to_json(x)) == x);
    }
}

TEST_CASE("parse errors carry line and column") {
    auto msg = error_of([] { parse_text("{\n  \"a\": [1,\n}", "in.json"); });
    CHECK(msg.find("in.json: parse error") == 0);
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(error_of([] { read_file("/nonexistent/file.json"); }).find("cannot open") != std::string::npos);
}

TEST_CASE("LTS format") {
    auto j = Json::parse(R"({"labels":["a","b"],"states":["s","t"],"root":"s","edges":[["s","a","t"]]})");
    auto l = lts_from_json(j);
    CHECK(l.size() == 2);
    CHECK(l.successors(0, 0) == std::vector<StateId>{1});
    CHECK(lts_to_json(l) == j);
    j["edges"].push_back({"t", "b", "u"});
    CHECK(error_of([&] { lts_from_json(j); }) == "$.edges[1] (edge [t, b, u]): undeclared state 'u'");
    j["edges"][1] = {"t", "c", "s"};
    CHECK(error_of([&] { lts_from_json(j); }) == "$.edges[1] (edge [t, c, s]): undeclared label 'c'");
    CHECK(error_of([] { lts_from_json(Json::parse(R"({"labels":[],"states":["s","s"],"edges":[]})")); }) ==
          "$.states[1]: duplicate state 's'");
    CHECK(error_of([] { lts_from_json(Json::parse(R"({"labels":[],"states":["s"]})")); }) ==
          "$: missing field 'edges'");

    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        auto r = random_lts(rng, rng.between(1, 6), 2, 30);
        auto back = lts_from_json(lts_to_json(r));
        CHECK(back.edges() == r.edges());
        CHECK(back.states() == r.states());
        auto c = lts_to_code(r);
        CHECK(code_from_json(code_to_json(c)) == c);
    }
}

TEST_CASE("tree and multitree formats") {
    auto t = tree_from_json(Json::parse(R"({"kind":"explicit","nodes":[[],[0],[0,0]]})"));
    REQUIRE(std::holds_alternative<ExplicitTree>(t));
    CHECK(std::get<ExplicitTree>(t).size() == 3);
    CHECK(error_of([] { tree_from_json(Json::parse(R"({"kind":"explicit","nodes":[[],[0,0]]})")); }) ==
          "$.nodes: node [0,0] has no parent in the node list");
    auto g = tree_from_json(Json::parse(
        R"({"kind":"glue","children":[{"kind":"chain","k":3},{"kind":"A","set":{"prefix":"101","period":"0"}},)"
        R"({"kind":"B","set":{"prefix":"","period":"10"}}]})"));
    REQUIRE(std::holds_alternative<SymbolicTree>(g));
    const auto& sym = std::get<SymbolicTree>(g);
    CHECK(sym.children.size() == 3);
    CHECK(std::get<SymbolicTree>(tree_from_json(tree_to_json(sym))).children[2].set == EPSet::evens());
    CHECK(error_of([] { tree_from_json(Json::parse(R"({"kind":"glue","children":[{"kind":"D"}]})")); }) ==
          "$.children[0].kind: unknown tree kind 'D'");

    auto mt = multitree_from_json(Json::parse(R"({"a":[[{},"omega"],[{"b":[[{},2]]},3]]})"));
    CHECK(mt->children.at("a").size() == 2);
    CHECK(canon(*multitree_from_json(multitree_to_json(*mt))) == canon(*mt));
    CHECK(error_of([] { multitree_from_json(Json::parse(R"({"a":[[{},0]]})")); }) ==
          "$.a[0][1]: counts must be positive");

    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        auto r = random_lts(rng, rng.between(1, 5), 2, 30);
        auto e = omega_expand_truncated(r, 0, 3);
        CHECK(canon(*multitree_from_json(multitree_to_json(*e))) == canon(*e));
    }
}

TEST_CASE("NLMP, carrier, uniform table and relation formats") {
    auto j = Json::parse(
        R"({"labels":["a"],"states":["s","t","u"],"trans":{"s":{"a":[{"u":"1/1"}]},"t":{"a":[{"u":"1/1"},{}]}}})");
    auto n = nlmp_from_json(j);
    CHECK(n.trans(0, 0).size() == 1);
    CHECK(n.trans(1, 0).size() == 2);
    CHECK(n.trans(2, 0).empty());
    CHECK(nlmp_from_json(nlmp_to_json(n)) == n);
    auto bad = j;
    bad["trans"]["s"]["a"][0]["u"] = "2/0";
    CHECK(error_of([&] { nlmp_from_json(bad); }) == "$.trans.s.a[0].u: rational '2/0' has zero denominator");
    bad["trans"]["s"]["a"][0] = Json::parse(R"({"t":"2/3","u":"2/3"})");
    CHECK(error_of([&] { nlmp_from_json(bad); }) == "$.trans.s.a[0]: total mass exceeds 1");
    bad["trans"]["s"]["a"][0] = Json::parse(R"({"v":"1/3"})");
    CHECK(error_of([&] { nlmp_from_json(bad); }) == "$.trans.s.a[0].v: undeclared state 'v'");

    auto a = carrier_from_json(Json::parse(R"({"carrier":["t","u"]})"), n);
    CHECK(members(a) == std::vector<StateId>{1, 2});
    CHECK(carrier_from_json(carrier_to_json(a, n), n) == a);

    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
        auto m = random_nlmp(rng, rng.between(1, 4), 2, 2, 3, 60);
        CHECK(nlmp_from_json(nlmp_to_json(m)) == m);
        auto u = scramble_uniform(rng, derive_uniform(m));
        CHECK(uniform_from_json(uniform_to_json(u, m), m) == u);
        auto r = random_rel(rng, m.size(), m.size(), 40);
        CHECK(rel_from_json(rel_to_json(r, m.states(), m.states()), m.states(), m.states()) == r);
    }
}

TEST_CASE("formula format") {
    auto f = formula_from_json(Json::parse(
        R"({"and":[true,{"not":false},{"dia":"a","arg":{"or":[{"rank_at_least":[[1,1]]}]}},)"
        R"({"charset":{"prefix":"1","period":"0"}}]})"));
    CHECK(formula_to_string(formula_from_json(formula_to_json(f))) == formula_to_string(f));
    CHECK(error_of([] { formula_from_json(Json::parse(R"({"dia":"a"})")); }) == "$: missing field 'arg'");
    CHECK(error_of([] { formula_from_json(Json::parse(R"({"box":1})")); }) == "$: unknown formula connective");
}

TEST_CASE("DOT export") {
    PointedLTS l({"a", "b"}, {"s", "t", "u"});
    l.add_edge(0, 0, 1);
    l.add_edge(1, 1, 2);
    l.add_edge(0, 1, 2);
    auto dot = lts_to_dot(l);
    CHECK(count_of(dot, "->") == l.edge_count());
    CHECK(count_of(dot, "[label=") == l.size() + l.edge_count());
    CHECK(dot.find("n0 -> n1 [label=\"a\"]") != std::string::npos);
    CHECK(lts_to_dot(l) == dot);

    // The finite portion of A({0,2,4,...}) up to depth 3 and width 5.
    auto a = sym_truncate(build_A(EPSet::evens()), 3, 5);
    auto adot = tree_to_dot(a);
    CHECK(a.nodes() == std::set<ExplicitTree::Seq>{{}, {0}, {2}, {2, 0}, {2, 0, 0}, {4}, {4, 0}, {4, 0, 0}});
    CHECK(count_of(adot, "->") == a.size() - 1);
    CHECK(tree_to_dot(sym_truncate(build_A(EPSet::evens()), 3, 5)) == adot);
    CHECK(tree_to_dot(sym_truncate(build_B(EPSet::evens()), 3, 4)) ==
          tree_to_dot(sym_truncate(build_B(EPSet::evens()), 3, 4)));

    auto mt = multitree_from_json(Json::parse(R"({"a":[[{},"omega"],[{"b":[[{},2]]},1]]})"));
    auto mdot = multitree_to_dot(*mt);
    CHECK(mdot.find("[label=\"a xomega\"]") != std::string::npos);
    CHECK(mdot.find("[label=\"b x2\"]") != std::string::npos);
    CHECK(mdot.find("[label=\"a\"]") != std::string::npos);

    PointmassNLMP n({"a"}, {"s", "t"});
    n.add_measure(0, 0, {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
    auto ndot = nlmp_to_dot(n);
    CHECK(count_of(ndot, "1/2") == 2);
}
