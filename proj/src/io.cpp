#include "bisimkit/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace bisimkit::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw InputError(where + ": " + msg); }

std::string at(const std::string& where, const std::string& key) { return where + "." + key; }
std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, "missing field '" + key + "'");
    return *it;
}

const Json& array_field(const Json& j, const std::string& key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_array()) fail(at(where, key), "expected an array");
    return v;
}

std::string string_of(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

std::uint64_t natural_of(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned()) {
        if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
        fail(where, "expected a natural number");
    }
    return j.get<std::uint64_t>();
}

std::vector<std::string> names_of(const Json& j, const std::string& what, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of " + what);
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto s = string_of(j[i], at(where, i));
        if (!seen.insert(s).second) fail(at(where, i), "duplicate " + what + " '" + s + "'");
        out.push_back(std::move(s));
    }
    return out;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name, const std::string& what,
                     const std::string& where) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    fail(where, "undeclared " + what + " '" + name + "'");
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Json parse_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // The library message carries the line and column of the offending byte.
        std::string msg = e.what();
        auto p = msg.find("parse error");
        throw InputError(source + ": " + (p == std::string::npos ? msg : msg.substr(p)));
    }
}

Json read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

EPSet epset_from_json(const Json& j, const std::string& where) {
    auto prefix = string_of(field(j, "prefix", where), at(where, "prefix"));
    auto period = string_of(field(j, "period", where), at(where, "period"));
    for (char c : prefix)
        if (c != '0' && c != '1') fail(at(where, "prefix"), "expected a string of 0 and 1");
    if (period.empty()) fail(at(where, "period"), "period must be nonempty");
    for (char c : period)
        if (c != '0' && c != '1') fail(at(where, "period"), "expected a string of 0 and 1");
    try {
        return EPSet::from_bits(prefix, period);
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
}

Json epset_to_json(const EPSet& x) { return Json{{"prefix", x.prefix_bits()}, {"period", x.period_bits()}}; }

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    auto text = string_of(j, where);
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

Ordinal ordinal_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of [exponent, coefficient] terms");
    std::vector<Ordinal::Term> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& t = j[i];
        if (!t.is_array() || t.size() != 2) fail(at(where, i), "expected [exponent, coefficient]");
        auto e = natural_of(t[0], at(at(where, i), 0));
        if (e > UINT32_MAX) fail(at(at(where, i), 0), "exponent too large");
        terms.push_back({static_cast<std::uint32_t>(e), natural_of(t[1], at(at(where, i), 1))});
    }
    try {
        return Ordinal(std::move(terms));
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

Json ordinal_to_json(const Ordinal& a) {
    Json out = Json::array();
    for (const auto& t : a.terms()) out.push_back(Json::array({t.exponent, t.coefficient}));
    return out;
}

PointedLTS lts_from_json(const Json& j, const std::string& where) {
    auto labels = names_of(array_field(j, "labels", where), "label", at(where, "labels"));
    auto states = names_of(array_field(j, "states", where), "state", at(where, "states"));
    if (states.empty()) fail(at(where, "states"), "at least one state is required");
    StateId root = 0;
    if (j.contains("root")) root = index_of(states, string_of(j["root"], at(where, "root")), "state", at(where, "root"));
    PointedLTS l(labels, states, root);
    const auto& edges = array_field(j, "edges", where);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        auto w = at(at(where, "edges"), i);
        if (!e.is_array() || e.size() != 3) fail(w, "expected [source, label, target]");
        auto src = string_of(e[0], at(w, 0)), lab = string_of(e[1], at(w, 1)), dst = string_of(e[2], at(w, 2));
        auto edge = "edge [" + src + ", " + lab + ", " + dst + "]";
        l.add_edge(index_of(states, src, "state", w + " (" + edge + ")"),
                   index_of(labels, lab, "label", w + " (" + edge + ")"),
                   index_of(states, dst, "state", w + " (" + edge + ")"));
    }
    return l;
}

Json lts_to_json(const PointedLTS& l) {
    Json edges = Json::array();
    for (const auto& e : l.edges())
        edges.push_back(Json::array({l.states()[e.src], l.labels()[e.label], l.states()[e.dst]}));
    return Json{{"labels", l.labels()}, {"states", l.states()}, {"root", l.states()[l.root()]}, {"edges", edges}};
}

OmegaLTSCode code_from_json(const Json& j, const std::string& where) {
    OmegaLTSCode c;
    c.root = natural_of(field(j, "root", where), at(where, "root"));
    const auto& edges = field(j, "edges", where);
    if (!edges.is_object()) fail(at(where, "edges"), "expected an object keyed by label");
    for (const auto& [label, list] : edges.items()) {
        auto w = at(at(where, "edges"), label);
        if (!list.is_array()) fail(w, "expected an array of [source, target]");
        auto& set = c.edges[label];
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (!list[i].is_array() || list[i].size() != 2) fail(at(w, i), "expected [source, target]");
            set.emplace(natural_of(list[i][0], at(at(w, i), 0)), natural_of(list[i][1], at(at(w, i), 1)));
        }
    }
    return c;
}

Json code_to_json(const OmegaLTSCode& c) {
    Json edges = Json::object();
    for (const auto& [label, set] : c.edges) {
        Json list = Json::array();
        for (auto [a, b] : set) list.push_back(Json::array({a, b}));
        edges[label] = list;
    }
    return Json{{"root", c.root}, {"edges", edges}};
}

namespace {

SymbolicTree symbolic_from_json(const Json& j, const std::string& where) {
    auto kind = string_of(field(j, "kind", where), at(where, "kind"));
    if (kind == "chain") return SymbolicTree::chain(natural_of(field(j, "k", where), at(where, "k")));
    if (kind == "A") return SymbolicTree::a_tree(epset_from_json(field(j, "set", where), at(where, "set")));
    if (kind == "B") return SymbolicTree::b_tree(epset_from_json(field(j, "set", where), at(where, "set")));
    if (kind == "glue") {
        const auto& kids = array_field(j, "children", where);
        std::vector<SymbolicTree> children;
        for (std::size_t i = 0; i < kids.size(); ++i)
            children.push_back(symbolic_from_json(kids[i], at(at(where, "children"), i)));
        return SymbolicTree::glue(std::move(children));
    }
    if (kind == "explicit") fail(at(where, "kind"), "explicit trees cannot be glued into symbolic trees");
    fail(at(where, "kind"), "unknown tree kind '" + kind + "'");
}

}  // namespace

TreeValue tree_from_json(const Json& j, const std::string& where) {
    auto kind = string_of(field(j, "kind", where), at(where, "kind"));
    if (kind != "explicit") return symbolic_from_json(j, where);
    const auto& nodes = array_field(j, "nodes", where);
    std::set<ExplicitTree::Seq> set;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto w = at(at(where, "nodes"), i);
        if (!nodes[i].is_array()) fail(w, "expected a sequence of naturals");
        ExplicitTree::Seq u;
        for (std::size_t k = 0; k < nodes[i].size(); ++k) u.push_back(natural_of(nodes[i][k], at(w, k)));
        set.insert(std::move(u));
    }
    for (const auto& u : set)
        if (!u.empty() && !set.count(ExplicitTree::Seq(u.begin(), u.end() - 1)))
            fail(at(where, "nodes"), "node " + Json(u).dump() + " has no parent in the node list");
    return ExplicitTree(std::move(set));
}

Json tree_to_json(const ExplicitTree& t) {
    Json nodes = Json::array();
    for (const auto& u : t.nodes()) nodes.push_back(u);
    return Json{{"kind", "explicit"}, {"nodes", nodes}};
}

Json tree_to_json(const SymbolicTree& t) {
    switch (t.kind) {
        case SymbolicTree::Kind::Chain: return Json{{"kind", "chain"}, {"k", t.k}};
        case SymbolicTree::Kind::A: return Json{{"kind", "A"}, {"set", epset_to_json(t.set)}};
        case SymbolicTree::Kind::B: return Json{{"kind", "B"}, {"set", epset_to_json(t.set)}};
        case SymbolicTree::Kind::Glue: break;
    }
    Json kids = Json::array();
    for (const auto& c : t.children) kids.push_back(tree_to_json(c));
    return Json{{"kind", "glue"}, {"children", kids}};
}

MultiTree::Ptr multitree_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object keyed by label");
    std::map<std::string, std::vector<std::pair<MultiTree::Ptr, Count>>> children;
    for (const auto& [label, list] : j.items()) {
        auto w = at(where, label);
        if (!list.is_array() || list.empty()) fail(w, "expected a nonempty array of [subtree, count]");
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto wi = at(w, i);
            if (!list[i].is_array() || list[i].size() != 2) fail(wi, "expected [subtree, count]");
            Count c;
            if (list[i][1].is_string()) {
                if (list[i][1].get<std::string>() != "omega") fail(at(wi, 1), "expected a positive count or \"omega\"");
                c = Count::omega();
            } else {
                c = Count(natural_of(list[i][1], at(wi, 1)));
                if (c.is_zero()) fail(at(wi, 1), "counts must be positive");
            }
            children[label].emplace_back(multitree_from_json(list[i][0], at(wi, 0)), c);
        }
    }
    return mt_node(std::move(children));
}

Json multitree_to_json(const MultiTree& t) {
    Json out = Json::object();
    for (const auto& [label, list] : t.children) {
        Json arr = Json::array();
        for (const auto& [child, c] : list)
            arr.push_back(Json::array({multitree_to_json(*child), c.is_omega() ? Json("omega") : Json(c.value())}));
        out[label] = arr;
    }
    return out;
}

PointmassNLMP nlmp_from_json(const Json& j, const std::string& where) {
    auto labels = names_of(array_field(j, "labels", where), "label", at(where, "labels"));
    auto states = names_of(array_field(j, "states", where), "state", at(where, "states"));
    PointmassNLMP n(labels, states);
    if (!j.contains("trans")) return n;
    const auto& trans = j["trans"];
    auto wt = at(where, "trans");
    if (!trans.is_object()) fail(wt, "expected an object keyed by state");
    for (const auto& [sname, per_label] : trans.items()) {
        auto ws = at(wt, sname);
        auto s = index_of(states, sname, "state", ws);
        if (!per_label.is_object()) fail(ws, "expected an object keyed by label");
        for (const auto& [lname, measures] : per_label.items()) {
            auto wl = at(ws, lname);
            auto a = index_of(labels, lname, "label", wl);
            if (!measures.is_array()) fail(wl, "expected an array of measures");
            for (std::size_t i = 0; i < measures.size(); ++i) {
                auto wm = at(wl, i);
                if (!measures[i].is_object()) fail(wm, "expected a measure object keyed by state");
                SubProbMeasure mu;
                for (const auto& [tname, w] : measures[i].items()) {
                    auto r = rational_from_json(w, at(wm, tname));
                    if (r < Rational(0)) fail(at(wm, tname), "weights must be nonnegative");
                    if (r != Rational(0)) mu[index_of(states, tname, "state", at(wm, tname))] = r;
                }
                if (total_mass(mu) > Rational(1)) fail(wm, "total mass exceeds 1");
                n.add_measure(s, a, std::move(mu));
            }
        }
    }
    return n;
}

Json nlmp_to_json(const PointmassNLMP& n) {
    Json trans = Json::object();
    for (StateId s = 0; s < n.size(); ++s)
        for (LabelId a = 0; a < n.labels().size(); ++a) {
            if (n.trans(s, a).empty()) continue;
            Json list = Json::array();
            for (const auto& mu : n.trans(s, a)) {
                Json m = Json::object();
                for (const auto& [t, w] : mu) m[n.states()[t]] = format_rational(w);
                list.push_back(m);
            }
            trans[n.states()[s]][n.labels()[a]] = list;
        }
    return Json{{"labels", n.labels()}, {"states", n.states()}, {"trans", trans}};
}

StateSet carrier_from_json(const Json& j, const PointmassNLMP& n, const std::string& where) {
    const auto& list = array_field(j, "carrier", where);
    StateSet a(n.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto w = at(at(where, "carrier"), i);
        a.set(index_of(n.states(), string_of(list[i], w), "state", w));
    }
    return a;
}

Json carrier_to_json(const StateSet& a, const PointmassNLMP& n) {
    Json list = Json::array();
    for (auto s : members(a)) list.push_back(n.states()[s]);
    return Json{{"carrier", list}};
}

UniformStructure uniform_from_json(const Json& j, const PointmassNLMP& n, const std::string& where) {
    UniformStructure u;
    u.rows.assign(n.size(), std::vector<std::vector<UniformRow>>(n.labels().size()));
    const auto& rows = field(j, "rows", where);
    auto wr = at(where, "rows");
    if (!rows.is_object()) fail(wr, "expected an object keyed by state");
    for (const auto& [sname, per_label] : rows.items()) {
        auto ws = at(wr, sname);
        auto s = index_of(n.states(), sname, "state", ws);
        if (!per_label.is_object()) fail(ws, "expected an object keyed by label");
        for (const auto& [lname, list] : per_label.items()) {
            auto wl = at(ws, lname);
            auto a = index_of(n.labels(), lname, "label", wl);
            if (!list.is_array()) fail(wl, "expected an array of rows");
            for (std::size_t i = 0; i < list.size(); ++i) {
                auto wi = at(wl, i);
                if (!list[i].is_array()) fail(wi, "expected an array of [weight, state]");
                UniformRow row;
                for (std::size_t k = 0; k < list[i].size(); ++k) {
                    auto wk = at(wi, k);
                    const auto& e = list[i][k];
                    if (!e.is_array() || e.size() != 2) fail(wk, "expected [weight, state]");
                    auto r = rational_from_json(e[0], at(wk, 0));
                    if (r < Rational(0)) fail(at(wk, 0), "weights must be nonnegative");
                    auto t = index_of(n.states(), string_of(e[1], at(wk, 1)), "state", at(wk, 1));
                    row.push_back({r, t});
                }
                u.rows[s][a].push_back(std::move(row));
            }
        }
    }
    return u;
}

Json uniform_to_json(const UniformStructure& u, const PointmassNLMP& n) {
    Json rows = Json::object();
    for (StateId s = 0; s < u.rows.size(); ++s)
        for (LabelId a = 0; a < u.rows[s].size(); ++a) {
            if (u.rows[s][a].empty()) continue;
            Json list = Json::array();
            for (const auto& row : u.rows[s][a]) {
                Json r = Json::array();
                for (const auto& e : row) r.push_back(Json::array({format_rational(e.r), n.states()[e.t]}));
                list.push_back(r);
            }
            rows[n.states()[s]][n.labels()[a]] = list;
        }
    return Json{{"rows", rows}};
}

ModalFormula formula_from_json(const Json& j, const std::string& where) {
    if (j.is_boolean()) return j.get<bool>() ? f_top() : f_bot();
    if (!j.is_object() || j.empty()) fail(where, "expected true, false or a formula object");
    if (j.contains("not")) return f_neg(formula_from_json(j["not"], at(where, "not")));
    for (const char* op : {"and", "or"})
        if (j.contains(op)) {
            const auto& list = array_field(j, op, where);
            std::vector<ModalFormula> args;
            for (std::size_t i = 0; i < list.size(); ++i) args.push_back(formula_from_json(list[i], at(at(where, op), i)));
            return std::string(op) == "and" ? f_and(std::move(args)) : f_or(std::move(args));
        }
    if (j.contains("dia"))
        return f_dia(string_of(j["dia"], at(where, "dia")), formula_from_json(field(j, "arg", where), at(where, "arg")));
    if (j.contains("rank_at_least"))
        return f_rank_at_least(ordinal_from_json(j["rank_at_least"], at(where, "rank_at_least")));
    if (j.contains("charset")) return f_charset(epset_from_json(j["charset"], at(where, "charset")));
    fail(where, "unknown formula connective");
}

Json formula_to_json(const ModalFormula& f) {
    using K = FormulaNode::Kind;
    switch (f->kind) {
        case K::Top: return true;
        case K::Neg:
            if (f->args[0]->kind == K::Top) return false;
            return Json{{"not", formula_to_json(f->args[0])}};
        case K::And:
        case K::Or: {
            Json list = Json::array();
            for (const auto& a : f->args) list.push_back(formula_to_json(a));
            return Json{{f->kind == K::And ? "and" : "or", list}};
        }
        case K::Dia: return Json{{"dia", f->label}, {"arg", formula_to_json(f->args[0])}};
        case K::RankAtLeast: return Json{{"rank_at_least", ordinal_to_json(f->rank)}};
        case K::CharSet: return Json{{"charset", epset_to_json(f->set)}};
    }
    return true;
}

Rel rel_from_json(const Json& j, const std::vector<std::string>& left, const std::vector<std::string>& right,
                  const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of [left, right] pairs");
    Rel r(left.size(), right.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto w = at(where, i);
        if (!j[i].is_array() || j[i].size() != 2) fail(w, "expected [left, right]");
        r.insert(index_of(left, string_of(j[i][0], at(w, 0)), "state", at(w, 0)),
              index_of(right, string_of(j[i][1], at(w, 1)), "state", at(w, 1)));
    }
    return r;
}

Json rel_to_json(const Rel& r, const std::vector<std::string>& left, const std::vector<std::string>& right) {
    Json out = Json::array();
    for (auto [s, t] : r.pairs()) out.push_back(Json::array({left[s], right[t]}));
    return out;
}

std::string lts_to_dot(const PointedLTS& l) {
    std::ostringstream out;
    out << "digraph lts {\n";
    for (StateId s = 0; s < l.size(); ++s)
        out << "  n" << s << " [label=" << quote(l.states()[s]) << (s == l.root() ? ", shape=doublecircle" : "")
            << "];\n";
    for (const auto& e : l.edges())
        out << "  n" << e.src << " -> n" << e.dst << " [label=" << quote(l.labels()[e.label]) << "];\n";
    out << "}\n";
    return out.str();
}

std::string tree_to_dot(const ExplicitTree& t) {
    std::ostringstream out;
    out << "digraph tree {\n";
    std::map<ExplicitTree::Seq, std::size_t> id;
    for (const auto& u : t.nodes()) {
        std::size_t i = id.size();
        id[u] = i;
        out << "  n" << i << " [label=" << quote(Json(u).dump()) << "];\n";
    }
    for (const auto& u : t.nodes())
        if (!u.empty())
            out << "  n" << id[ExplicitTree::Seq(u.begin(), u.end() - 1)] << " -> n" << id[u] << " [label=\""
                << u.back() << "\"];\n";
    out << "}\n";
    return out.str();
}

namespace {

std::size_t emit_multitree(const MultiTree& t, std::ostringstream& out, std::size_t& next) {
    std::size_t me = next++;
    out << "  n" << me << " [label=\"\"];\n";
    for (const auto& [label, list] : t.children)
        for (const auto& [child, c] : list) {
            auto k = emit_multitree(*child, out, next);
            std::string text = label;
            if (c != Count(1)) text += " x" + c.to_string();
            out << "  n" << me << " -> n" << k << " [label=" << quote(text) << "];\n";
        }
    return me;
}

}  // namespace

std::string multitree_to_dot(const MultiTree& t) {
    std::ostringstream out;
    out << "digraph multitree {\n";
    std::size_t next = 0;
    emit_multitree(t, out, next);
    out << "}\n";
    return out.str();
}

std::string nlmp_to_dot(const PointmassNLMP& n) {
    std::ostringstream out;
    out << "digraph nlmp {\n";
    for (StateId s = 0; s < n.size(); ++s) out << "  n" << s << " [label=" << quote(n.states()[s]) << "];\n";
    std::size_t m = 0;
    for (StateId s = 0; s < n.size(); ++s)
        for (LabelId a = 0; a < n.labels().size(); ++a)
            for (const auto& mu : n.trans(s, a)) {
                out << "  m" << m << " [shape=point];\n";
                out << "  n" << s << " -> m" << m << " [label=" << quote(n.labels()[a]) << "];\n";
                for (const auto& [t, w] : mu)
                    out << "  m" << m << " -> n" << t << " [label=\"" << format_rational(w) << "\", style=dashed];\n";
                ++m;
            }
    out << "}\n";
    return out.str();
}

}  // namespace bisimkit::io
