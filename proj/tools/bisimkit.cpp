#include <cstdlib>
#include <cstring>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bisimkit/e0.hpp"
#include "bisimkit/expansion.hpp"
#include "bisimkit/io.hpp"
#include "bisimkit/nlmp_sub.hpp"
#include "bisimkit/treeiso.hpp"
#include "bisimkit/uniform.hpp"
#include "bisimkit/verify/suites.hpp"

using namespace bisimkit;
using io::InputError;
using io::Json;

namespace {

enum Exit { kHolds = 0, kFails = 1, kInputError = 2 };

struct Options {
    std::string format = "json";
    bool witness = false;
    std::optional<std::uint64_t> seed;
    std::string suite = "all";
    std::optional<std::size_t> bound;
    std::uint64_t depth = 4;
    std::uint64_t width = 4;
    std::vector<std::string> inputs;
    std::string left_state, right_state, state;
    std::string relation, uniform, carrier, type, alpha;
};

/// Report with a verdict, a one-line summary for text output and details.
struct Report {
    std::string verb;
    bool holds = true;
    std::string summary;
    Json body = Json::object();
};

int emit(const Options& opt, const Report& r) {
    if (opt.format == "text") {
        std::cout << r.verb << ": " << (r.holds ? "holds" : "fails") << "\n" << r.summary << "\n";
    } else {
        Json out = r.body;
        out["verb"] = r.verb;
        out["holds"] = r.holds;
        out["summary"] = r.summary;
        std::cout << out.dump(2) << "\n";
    }
    return r.holds ? kHolds : kFails;
}

StateId pick_state(const std::vector<std::string>& states, const std::string& name, StateId fallback,
                   const std::string& flag) {
    if (name.empty()) return fallback;
    for (StateId s = 0; s < states.size(); ++s)
        if (states[s] == name) return s;
    throw InputError(flag + ": undeclared state '" + name + "'");
}

std::string ordinal_text(const std::optional<Ordinal>& a) { return a ? a->to_string() : "infinity"; }
Json ordinal_json(const std::optional<Ordinal>& a) { return a ? io::ordinal_to_json(*a) : Json("infinity"); }

/// Field paths of a file start at its root.
std::string where(const std::string& path) { return path + ": $"; }

Json read_input(const Options& opt, std::size_t i) {
    if (i >= opt.inputs.size()) throw InputError("missing input file " + std::to_string(i + 1));
    return io::read_file(opt.inputs[i]);
}

int cmd_bisim(const Options& opt) {
    auto l = io::lts_from_json(read_input(opt, 0), where(opt.inputs[0]));
    auto m = io::lts_from_json(read_input(opt, 1), where(opt.inputs[1]));
    auto s = pick_state(l.states(), opt.left_state, l.root(), "--left");
    auto t = pick_state(m.states(), opt.right_state, m.root(), "--right");
    auto g = greatest_bisim(l, m);
    Report r{"bisim", g.contains(s, t), "", {}};
    r.summary = "(" + l.states()[s] + ", " + m.states()[t] + ") " + (r.holds ? "bisimilar" : "not bisimilar");
    r.body["left"] = l.states()[s];
    r.body["right"] = m.states()[t];
    if (opt.witness) r.body["relation"] = io::rel_to_json(g, l.states(), m.states());
    return emit(opt, r);
}

int cmd_nlmp_bisim(const Options& opt) {
    auto n = io::nlmp_from_json(read_input(opt, 0), where(opt.inputs[0]));
    bool two = opt.inputs.size() > 1;
    auto np = two ? io::nlmp_from_json(read_input(opt, 1), where(opt.inputs[1])) : n;
    auto s = pick_state(n.states(), opt.left_state, 0, "--left");
    auto t = pick_state(np.states(), opt.right_state, two ? 0 : s, "--right");
    Report r{"nlmp-bisim", false, "", {}};
    r.body["left"] = n.states()[s];
    r.body["right"] = np.states()[t];
    if (!opt.relation.empty()) {
        auto rel = io::rel_from_json(io::read_file(opt.relation), n.states(), np.states(), where(opt.relation));
        r.holds = two ? is_ext_state_bisim(n, np, rel) : (rel.is_symmetric() && is_state_bisim(n, rel));
        r.body["check"] = two ? "external" : "state";
        r.summary = std::string("relation ") + (r.holds ? "is" : "is not") + " a " +
                    (two ? "external" : "symmetric") + " state bisimulation";
        return emit(opt, r);
    }
    if (!opt.uniform.empty()) {
        if (two) throw InputError("--uniform: the uniform search compares states of one process");
        auto u = io::uniform_from_json(io::read_file(opt.uniform), n, where(opt.uniform));
        if (auto bad = uniform_mismatch(n, u)) throw InputError(opt.uniform + ": " + *bad);
        auto res = uniform_bisim_search(n, u, s, t);
        std::size_t bound = opt.bound.value_or(n.size());
        Json xs = Json::array(), xt = Json::array();
        for (auto x : x_enum(u, s, bound)) xs.push_back(n.states()[x]);
        for (auto x : x_enum(u, t, bound)) xt.push_back(n.states()[x]);
        r.holds = res.bisimilar;
        r.body["z_closed"] = res.z_closed;
        r.body["gk_ok"] = res.gk_ok;
        r.body["x_left"] = xs;
        r.body["x_right"] = xt;
        if (opt.witness) r.body["relation"] = io::rel_to_json(res.witness, n.states(), n.states());
        r.summary = "uniform search: (" + n.states()[s] + ", " + n.states()[t] + ") " +
                    (r.holds ? "bisimilar" : "not bisimilar");
        return emit(opt, r);
    }
    auto g = two ? greatest_ext_bisim(n, np) : greatest_state_bisim(n);
    r.holds = g.contains(s, t);
    r.summary = "(" + n.states()[s] + ", " + np.states()[t] + ") " + (r.holds ? "bisimilar" : "not bisimilar");
    if (opt.witness) r.body["relation"] = io::rel_to_json(g, n.states(), np.states());
    return emit(opt, r);
}

int cmd_rank(const Options& opt) {
    auto j = read_input(opt, 0);
    std::optional<Ordinal> alpha;
    if (!opt.alpha.empty()) alpha = io::ordinal_from_json(io::parse_text(opt.alpha, "--at-least"), "--at-least");
    Report r{"rank", true, "", {}};
    std::optional<Ordinal> root, tree;
    if (j.is_object() && j.contains("kind")) {
        auto t = io::tree_from_json(j, where(opt.inputs[0]));
        if (auto* e = std::get_if<ExplicitTree>(&t)) {
            root = e->empty() ? Ordinal() : node_rank(*e, {});
            tree = tree_rank(*e);
            if (alpha) r.holds = psi_sat(*e, *alpha);
        } else {
            auto sr = sym_rank(std::get<SymbolicTree>(t));
            root = sr.root;
            tree = sr.tree;
            if (alpha) r.holds = psi_sat(std::get<SymbolicTree>(t), *alpha);
        }
        r.body["tree_rank"] = io::ordinal_to_json(*tree);
    } else {
        auto l = io::lts_from_json(j, where(opt.inputs[0]));
        auto s = pick_state(l.states(), opt.state, l.root(), "--state");
        root = state_rank(l, s);
        r.body["state"] = l.states()[s];
        if (alpha) r.holds = eval_formula(l, s, f_rank_at_least(*alpha));
    }
    r.body["rank"] = ordinal_json(root);
    r.summary = "rank " + ordinal_text(root) + (tree ? ", tree rank " + tree->to_string() : "");
    if (alpha) {
        r.body["at_least"] = io::ordinal_to_json(*alpha);
        r.summary += (r.holds ? ", at least " : ", below ") + alpha->to_string();
    }
    return emit(opt, r);
}

int cmd_expand(const Options& opt) {
    auto l = io::lts_from_json(read_input(opt, 0), where(opt.inputs[0]));
    auto s = pick_state(l.states(), opt.state, l.root(), "--state");
    Report r{"expand", true, "", {}};
    MultiTree::Ptr e;
    if (state_rank(l, s)) {
        e = omega_expand(l, s);
        r.summary = "expansion of " + l.states()[s];
    } else {
        e = omega_expand_truncated(l, s, opt.depth);
        r.body["truncated_at"] = opt.depth;
        r.summary = "state " + l.states()[s] + " has infinite rank; expansion cut at depth " +
                    std::to_string(opt.depth);
    }
    r.body["state"] = l.states()[s];
    r.body["canon"] = canon(*e);
    r.body["root_rank"] = mt_root_rank(*e);
    r.summary += ": root rank " + std::to_string(mt_root_rank(*e)) + ", canon " + canon(*e);
    if (opt.witness) r.body["tree"] = io::multitree_to_json(*e);
    return emit(opt, r);
}

int cmd_iso(const Options& opt) {
    auto a = io::multitree_from_json(read_input(opt, 0), where(opt.inputs[0]));
    auto b = io::multitree_from_json(read_input(opt, 1), where(opt.inputs[1]));
    Report r{"iso", false, "", {}};
    if (opt.alpha.empty()) {
        r.holds = iso(*a, *b);
    } else {
        auto alpha = io::ordinal_from_json(io::parse_text(opt.alpha, "--alpha"), "--alpha");
        r.holds = cong_alpha(*a, *b, alpha);
        r.body["alpha"] = io::ordinal_to_json(alpha);
    }
    r.summary = r.holds ? "isomorphic" : "not isomorphic";
    if (opt.witness) {
        r.body["canon_left"] = canon(*a);
        r.body["canon_right"] = canon(*b);
    }
    return emit(opt, r);
}

Json index_set(const std::set<std::uint64_t>& s) {
    Json out = Json::array();
    for (auto i : s) out.push_back(i);
    return out;
}

int cmd_e0(const Options& opt, const std::string& mode) {
    auto x = io::epset_from_json(read_input(opt, 0), where(opt.inputs[0]));
    auto y = io::epset_from_json(read_input(opt, 1), where(opt.inputs[1]));
    Report r{"e0 " + mode, false, "", {}};
    auto diff = ep_finite_difference(x, y);
    if (mode == "check") {
        r.holds = ep_e0(x, y);
        r.summary = r.holds ? "eventually equal" : "not eventually equal";
        if (opt.witness && diff) r.body["difference"] = index_set(*diff);
        return emit(opt, r);
    }
    auto v = b_bisim_verdict(x, y);
    r.holds = v.bisimilar;
    if (mode == "reduce") {
        r.summary = std::string("B(x) and B(y) ") + (v.bisimilar ? "bisimilar" : "not bisimilar");
        r.body["b_bisimilar"] = v.bisimilar;
        r.body["e0"] = ep_e0(x, y);
        if (opt.witness && v.difference) r.body["difference"] = index_set(*v.difference);
        if (opt.witness && v.distinguisher) r.body["distinguisher"] = io::formula_to_json(v.distinguisher);
        return emit(opt, r);
    }
    if (v.bisimilar) {
        Json pairs = Json::array();
        for (auto [n, np] : matching_bijection(x, y, opt.width)) pairs.push_back(Json::array({n, np}));
        r.body["matching"] = pairs;
        r.summary = "child n of B(x) matches child n' of B(y) for the listed pairs";
    } else {
        r.body["distinguisher"] = io::formula_to_json(v.distinguisher);
        r.body["holds_at_Bx"] = sym_eval(build_B(x), v.distinguisher);
        r.body["holds_at_By"] = sym_eval(build_B(y), v.distinguisher);
        r.summary = "distinguishing formula " + formula_to_string(v.distinguisher);
    }
    return emit(opt, r);
}

int cmd_substructure(const Options& opt) {
    auto n = io::nlmp_from_json(read_input(opt, 0), where(opt.inputs[0]));
    StateSet a;
    if (opt.inputs.size() > 1) {
        a = io::carrier_from_json(read_input(opt, 1), n, where(opt.inputs[1]));
    } else {
        a = reach_A_s(n, pick_state(n.states(), opt.state, 0, "--state"));
    }
    Report r{"substructure", true, "", {}};
    r.body["carrier"] = io::carrier_to_json(a, n)["carrier"];
    try {
        auto sub = substructure(n, a);
        r.body["induced"] = io::nlmp_to_json(sub.induced);
        r.body["up_coherent"] = is_ext_state_bisim(n, sub.induced, inclusion_rel(sub));
        r.summary = "carrier is thick; induced process has " + std::to_string(sub.induced.size()) + " states";
    } catch (const NotThick& e) {
        r.holds = false;
        r.summary = e.what();
    }
    return emit(opt, r);
}

int cmd_eval(const Options& opt) {
    auto model = read_input(opt, 0);
    auto f = io::formula_from_json(read_input(opt, 1), where(opt.inputs[1]));
    Report r{"eval", false, "", {}};
    if (model.is_object() && model.contains("kind")) {
        auto t = io::tree_from_json(model, where(opt.inputs[0]));
        if (auto* e = std::get_if<ExplicitTree>(&t)) {
            auto l = tree_to_lts(*e);
            r.holds = eval_formula(l, l.root(), f);
        } else {
            r.holds = sym_eval(std::get<SymbolicTree>(t), f);
        }
    } else {
        auto l = io::lts_from_json(model, where(opt.inputs[0]));
        auto s = pick_state(l.states(), opt.state, l.root(), "--state");
        r.holds = eval_formula(l, s, f);
        r.body["state"] = l.states()[s];
    }
    r.body["formula"] = formula_to_string(f);
    r.summary = formula_to_string(f) + (r.holds ? " is satisfied" : " is not satisfied");
    return emit(opt, r);
}

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("BISIMKIT_SEED");
    if (!v || !*v) return std::nullopt;
    try {
        std::size_t used = 0;
        auto s = std::stoull(v, &used);
        if (used != std::strlen(v)) throw std::invalid_argument(v);
        return s;
    } catch (const std::exception&) {
        throw InputError(std::string("BISIMKIT_SEED: expected a natural number, got '") + v + "'");
    }
}

int cmd_verify(const Options& opt) {
    std::uint64_t seed = opt.seed ? *opt.seed : env_seed().value_or(0);
    std::vector<int> ids;
    if (opt.suite == "all") {
        for (const auto& s : verify::suite_catalog()) ids.push_back(s.id);
    } else {
        std::stringstream list(opt.suite);
        std::string key;
        while (std::getline(list, key, ',')) {
            auto id = verify::find_suite(key);
            if (!id) throw InputError("--suite: unknown suite '" + key + "'");
            ids.push_back(*id);
        }
    }
    Report r{"verify", true, "", {}};
    Json suites = Json::array();
    std::ostringstream text;
    for (auto id : ids) {
        auto res = verify::run_suite(id, seed);
        r.holds = r.holds && res.passed();
        suites.push_back({{"id", res.id},
                          {"name", res.name},
                          {"passed", res.passed()},
                          {"cases", res.cases},
                          {"failures", res.failures},
                          {"failure_details", res.failure_details},
                          {"notes", res.notes}});
        text << (res.passed() ? "PASS " : "FAIL ") << res.id << " " << res.name << " (" << res.cases << " cases, "
             << res.failures << " failures)\n";
        for (const auto& d : res.failure_details) text << "  " << d << "\n";
    }
    r.body["seed"] = seed;
    r.body["suites"] = suites;
    r.summary = text.str();
    if (!r.summary.empty()) r.summary.pop_back();
    return emit(opt, r);
}

int cmd_export_dot(const Options& opt) {
    auto j = read_input(opt, 0);
    std::string type = opt.type;
    if (type.empty()) {
        if (!j.is_object()) type = "multitree";
        else if (j.contains("kind")) type = "tree";
        else if (j.contains("edges")) type = "lts";
        else if (j.contains("labels") && j.contains("states")) type = "nlmp";
        else type = "multitree";
    }
    const auto src = where(opt.inputs[0]);
    if (type == "lts") {
        std::cout << io::lts_to_dot(io::lts_from_json(j, src));
    } else if (type == "nlmp") {
        std::cout << io::nlmp_to_dot(io::nlmp_from_json(j, src));
    } else if (type == "multitree") {
        std::cout << io::multitree_to_dot(*io::multitree_from_json(j, src));
    } else if (type == "tree") {
        auto t = io::tree_from_json(j, src);
        if (auto* e = std::get_if<ExplicitTree>(&t)) std::cout << io::tree_to_dot(*e);
        else std::cout << io::tree_to_dot(sym_truncate(std::get<SymbolicTree>(t), opt.depth, opt.width));
    } else {
        throw InputError("--type: unknown value '" + type + "'");
    }
    return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bisimulation, expansion and tree-isomorphism toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&opt](CLI::App* sub, std::size_t inputs_min, std::size_t inputs_max) {
        sub->add_option("inputs", opt.inputs, "Input JSON files")->expected(inputs_min, inputs_max);
        sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--witness", opt.witness, "Include witnesses in the report");
    };

    auto* bisim = app.add_subcommand("bisim", "Bisimilarity of two pointed LTS");
    common(bisim, 2, 2);
    bisim->add_option("--left", opt.left_state, "State of the first LTS (default: its root)");
    bisim->add_option("--right", opt.right_state, "State of the second LTS (default: its root)");

    auto* nb = app.add_subcommand("nlmp-bisim", "State bisimilarity on one NLMP or between two");
    common(nb, 1, 2);
    nb->add_option("--left", opt.left_state, "State of the first process");
    nb->add_option("--right", opt.right_state, "State of the second process");
    nb->add_option("--relation", opt.relation, "Check this relation instead of computing the greatest one");
    nb->add_option("--uniform", opt.uniform, "Uniform table; runs the uniform search");
    nb->add_option("--bound", opt.bound, "Cap on the enumeration of reachable states");

    auto* rank = app.add_subcommand("rank", "Rank of an LTS state or a tree");
    common(rank, 1, 1);
    rank->add_option("--state", opt.state, "LTS state (default: root)");
    rank->add_option("--at-least", opt.alpha, "Ordinal JSON; verdict is rank >= it");

    auto* expand = app.add_subcommand("expand", "Omega-expansion of an LTS state");
    common(expand, 1, 1);
    expand->add_option("--state", opt.state, "LTS state (default: root)");
    expand->add_option("--depth", opt.depth, "Cut depth for states of infinite rank");

    auto* isov = app.add_subcommand("iso", "Isomorphism of two multiplicity trees");
    common(isov, 2, 2);
    isov->add_option("--alpha", opt.alpha, "Ordinal JSON; decides congruence at this rank");

    auto* e0 = app.add_subcommand("e0", "Eventual equality and its B-tree reduction");
    e0->require_subcommand(1);
    std::string e0_mode;
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"check", "Eventual equality of two sets"},
             {"reduce", "Bisimilarity of B(x) and B(y)"},
             {"witness", "Child matching or distinguishing formula"}}) {
        auto* s = e0->add_subcommand(name, help);
        common(s, 2, 2);
        s->add_option("--width", opt.width, "Number of matched children");
        s->callback([&e0_mode, name = name] { e0_mode = name; });
    }

    auto* sub = app.add_subcommand("substructure", "Induced process on a carrier");
    common(sub, 1, 2);
    sub->add_option("--state", opt.state, "Use the reachable carrier of this state");

    auto* ev = app.add_subcommand("eval", "Evaluate a modal formula");
    common(ev, 2, 2);
    ev->add_option("--state", opt.state, "LTS state (default: root)");

    auto* ver = app.add_subcommand("verify", "Run the property suites");
    ver->add_option("--suite", opt.suite, "all, or a comma-separated list of suite names or numbers");
    ver->add_option("--seed", opt.seed, "Seed (default: BISIMKIT_SEED, else 0)");
    ver->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "text"}));

    auto* dot = app.add_subcommand("export-dot", "DOT rendering of an LTS, NLMP, tree or multiplicity tree");
    dot->add_option("inputs", opt.inputs, "Input JSON file")->expected(1, 1);
    dot->add_option("--type", opt.type, "lts, nlmp, tree or multitree (default: detected)");
    dot->add_option("--depth", opt.depth, "Truncation depth for symbolic trees");
    dot->add_option("--width", opt.width, "Truncation width for symbolic trees");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (bisim->parsed()) return cmd_bisim(opt);
        if (nb->parsed()) return cmd_nlmp_bisim(opt);
        if (rank->parsed()) return cmd_rank(opt);
        if (expand->parsed()) return cmd_expand(opt);
        if (isov->parsed()) return cmd_iso(opt);
        if (e0->parsed()) return cmd_e0(opt, e0_mode);
        if (sub->parsed()) return cmd_substructure(opt);
        if (ev->parsed()) return cmd_eval(opt);
        if (ver->parsed()) return cmd_verify(opt);
        if (dot->parsed()) return cmd_export_dot(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
