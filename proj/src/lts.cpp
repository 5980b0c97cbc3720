#include "bisimkit/lts.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <unordered_map>

namespace bisimkit {

PointedLTS::PointedLTS(std::vector<std::string> labels, std::vector<std::string> states, StateId root)
    : labels_(std::move(labels)), states_(std::move(states)), root_(root) {
    if (states_.empty()) throw std::invalid_argument("LTS needs at least one state");
    if (root_ >= states_.size()) throw std::out_of_range("root outside the state list");
    succ_.assign(labels_.size(), std::vector<std::vector<StateId>>(states_.size()));
}

void PointedLTS::add_edge(StateId src, LabelId label, StateId dst) {
    if (src >= states_.size() || dst >= states_.size() || label >= labels_.size())
        throw std::out_of_range("edge endpoint or label out of range");
    auto& v = succ_[label][src];
    auto it = std::lower_bound(v.begin(), v.end(), dst);
    if (it == v.end() || *it != dst) v.insert(it, dst);
}

void PointedLTS::add_edge(const std::string& src, const std::string& label, const std::string& dst) {
    auto s = state_index(src);
    auto a = label_index(label);
    auto t = state_index(dst);
    if (!s || !a || !t)
        throw std::out_of_range("edge (" + src + ", " + label + ", " + dst + ") names an undeclared state or label");
    add_edge(*s, *a, *t);
}

void PointedLTS::set_root(StateId root) {
    if (root >= states_.size()) throw std::out_of_range("root outside the state list");
    root_ = root;
}

std::optional<LabelId> PointedLTS::label_index(const std::string& name) const {
    auto it = std::find(labels_.begin(), labels_.end(), name);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<LabelId>(it - labels_.begin());
}

std::optional<StateId> PointedLTS::state_index(const std::string& name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end()) return std::nullopt;
    return static_cast<StateId>(it - states_.begin());
}

std::vector<StateId> PointedLTS::all_successors(StateId s) const {
    std::vector<StateId> out;
    for (const auto& per_label : succ_) out.insert(out.end(), per_label[s].begin(), per_label[s].end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool PointedLTS::is_terminal(StateId s) const {
    for (const auto& per_label : succ_)
        if (!per_label[s].empty()) return false;
    return true;
}

std::vector<PointedLTS::Edge> PointedLTS::edges() const {
    std::vector<Edge> out;
    for (StateId s = 0; s < states_.size(); ++s)
        for (LabelId a = 0; a < labels_.size(); ++a)
            for (StateId t : succ_[a][s]) out.push_back({s, a, t});
    return out;
}

std::size_t PointedLTS::edge_count() const {
    std::size_t n = 0;
    for (const auto& per_label : succ_)
        for (const auto& v : per_label) n += v.size();
    return n;
}

PointedLTS code_to_lts(const OmegaLTSCode& c, std::size_t reachable_bound) {
    std::map<std::uint64_t, std::vector<std::pair<std::size_t, std::uint64_t>>> out;
    std::vector<std::string> labels;
    for (const auto& [name, es] : c.edges) {
        for (auto [u, v] : es) out[u].emplace_back(labels.size(), v);
        labels.push_back(name);
    }
    std::vector<std::uint64_t> order{c.root};
    std::map<std::uint64_t, StateId> index{{c.root, 0}};
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto it = out.find(order[i]);
        if (it == out.end()) continue;
        for (auto [a, v] : it->second) {
            if (index.count(v)) continue;
            if (order.size() >= reachable_bound)
                throw std::length_error("reachable part exceeds bound " + std::to_string(reachable_bound));
            index.emplace(v, order.size());
            order.push_back(v);
        }
    }
    if (order.size() > reachable_bound)
        throw std::length_error("reachable part exceeds bound " + std::to_string(reachable_bound));
    std::vector<std::string> names;
    for (auto n : order) names.push_back(std::to_string(n));
    PointedLTS L(labels, names, 0);
    for (StateId s = 0; s < order.size(); ++s) {
        auto it = out.find(order[s]);
        if (it == out.end()) continue;
        for (auto [a, v] : it->second) L.add_edge(s, a, index.at(v));
    }
    return L;
}

OmegaLTSCode lts_to_code(const PointedLTS& L, const std::vector<std::uint64_t>& numbering) {
    if (numbering.size() != L.size()) throw std::invalid_argument("numbering must cover every state");
    if (std::set<std::uint64_t>(numbering.begin(), numbering.end()).size() != numbering.size())
        throw std::invalid_argument("numbering is not injective");
    OmegaLTSCode c;
    c.root = numbering[L.root()];
    for (const auto& name : L.labels()) c.edges[name];
    for (const auto& e : L.edges()) c.edges[L.labels()[e.label]].emplace(numbering[e.src], numbering[e.dst]);
    return c;
}

OmegaLTSCode lts_to_code(const PointedLTS& L) {
    std::vector<std::uint64_t> numbering;
    for (StateId s = 0; s < L.size(); ++s) {
        const auto& name = L.states()[s];
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), v);
        if (name.empty() || ec != std::errc{} || ptr != name.data() + name.size()) {
            numbering.clear();
            for (StateId i = 0; i < L.size(); ++i) numbering.push_back(i);
            break;
        }
        numbering.push_back(v);
    }
    if (std::set<std::uint64_t>(numbering.begin(), numbering.end()).size() != numbering.size()) {
        numbering.clear();
        for (StateId i = 0; i < L.size(); ++i) numbering.push_back(i);
    }
    return lts_to_code(L, numbering);
}

OmegaLTSCode code_reachable_part(const OmegaLTSCode& c) {
    std::set<std::uint64_t> seen{c.root};
    std::deque<std::uint64_t> queue{c.root};
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (const auto& [name, es] : c.edges)
            for (auto it = es.lower_bound({u, 0}); it != es.end() && it->first == u; ++it)
                if (seen.insert(it->second).second) queue.push_back(it->second);
    }
    OmegaLTSCode r;
    r.root = c.root;
    for (const auto& [name, es] : c.edges) {
        auto& dst = r.edges[name];
        for (auto e : es)
            if (seen.count(e.first)) dst.insert(e);
    }
    return r;
}

StateSet reachable(const PointedLTS& L, StateId s) {
    StateSet seen(L.size());
    std::vector<StateId> stack{s};
    seen.set(s);
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto v : L.all_successors(u))
            if (!seen.test(v)) {
                seen.set(v);
                stack.push_back(v);
            }
    }
    return seen;
}

namespace {

// Successor lists of both systems aligned on the union of label names.
struct LabelAlignment {
    std::vector<std::optional<LabelId>> left, right;
};

LabelAlignment align_labels(const PointedLTS& L, const PointedLTS& Lp) {
    LabelAlignment al;
    std::vector<std::string> names = L.labels();
    for (const auto& n : Lp.labels())
        if (!L.label_index(n)) names.push_back(n);
    for (const auto& n : names) {
        al.left.push_back(L.label_index(n));
        al.right.push_back(Lp.label_index(n));
    }
    return al;
}

const std::vector<StateId>& succ_or_empty(const PointedLTS& L, StateId s, std::optional<LabelId> a) {
    static const std::vector<StateId> none;
    return a ? L.successors(s, *a) : none;
}

bool pair_ok(const PointedLTS& L, const PointedLTS& Lp, const LabelAlignment& al, const Rel& R, StateId s,
             StateId t) {
    for (std::size_t i = 0; i < al.left.size(); ++i) {
        const auto& su = succ_or_empty(L, s, al.left[i]);
        const auto& tv = succ_or_empty(Lp, t, al.right[i]);
        for (auto u : su)
            if (std::none_of(tv.begin(), tv.end(), [&](StateId v) { return R.contains(u, v); })) return false;
        for (auto v : tv)
            if (std::none_of(su.begin(), su.end(), [&](StateId u) { return R.contains(u, v); })) return false;
    }
    return true;
}

}  // namespace

bool is_bisimulation(const PointedLTS& L, const PointedLTS& Lp, const Rel& R) {
    auto al = align_labels(L, Lp);
    for (auto [s, t] : R.pairs())
        if (!pair_ok(L, Lp, al, R, s, t)) return false;
    return true;
}

Rel greatest_bisim(const PointedLTS& L, const PointedLTS& Lp) {
    auto al = align_labels(L, Lp);
    Rel R = Rel::total(L.size(), Lp.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId s = 0; s < L.size(); ++s)
            for (StateId t = 0; t < Lp.size(); ++t)
                if (R.contains(s, t) && !pair_ok(L, Lp, al, R, s, t)) {
                    R.erase(s, t);
                    changed = true;
                }
    }
    return R;
}

Rel d_bisim(const PointedLTS& L, const PointedLTS& Lp, std::size_t d) {
    auto al = align_labels(L, Lp);
    Rel R = Rel::total(L.size(), Lp.size());
    for (std::size_t i = 0; i < d; ++i) {
        Rel next = R;
        for (auto [s, t] : R.pairs())
            if (!pair_ok(L, Lp, al, R, s, t)) next.erase(s, t);
        if (next == R) break;
        R = std::move(next);
    }
    return R;
}

std::vector<std::vector<StateId>> bisim_partition(const PointedLTS& L) {
    std::vector<std::size_t> block(L.size(), 0);
    std::size_t blocks = 1;
    while (true) {
        using Sig = std::pair<std::size_t, std::set<std::pair<LabelId, std::size_t>>>;
        std::map<Sig, std::size_t> ids;
        std::vector<std::size_t> next(L.size());
        for (StateId s = 0; s < L.size(); ++s) {
            Sig sig{block[s], {}};
            for (LabelId a = 0; a < L.labels().size(); ++a)
                for (auto t : L.successors(s, a)) sig.second.emplace(a, block[t]);
            auto [it, fresh] = ids.emplace(std::move(sig), ids.size());
            next[s] = it->second;
        }
        // Renumber by first occurrence so ids are stable across rounds.
        std::vector<std::size_t> remap(ids.size(), SIZE_MAX);
        std::size_t count = 0;
        for (StateId s = 0; s < L.size(); ++s)
            if (remap[next[s]] == SIZE_MAX) remap[next[s]] = count++;
        for (auto& b : next) b = remap[b];
        bool stable = count == blocks;
        block = std::move(next);
        blocks = count;
        if (stable) break;
    }
    std::vector<std::vector<StateId>> out(blocks);
    for (StateId s = 0; s < L.size(); ++s) out[block[s]].push_back(s);
    return out;
}

ModalFormula f_top() { return std::make_shared<const FormulaNode>(); }

ModalFormula f_bot() { return f_neg(f_top()); }

ModalFormula f_neg(ModalFormula a) {
    FormulaNode n;
    n.kind = FormulaNode::Kind::Neg;
    n.args = {std::move(a)};
    return std::make_shared<const FormulaNode>(std::move(n));
}

ModalFormula f_and(std::vector<ModalFormula> args) {
    FormulaNode n;
    n.kind = FormulaNode::Kind::And;
    n.args = std::move(args);
    return std::make_shared<const FormulaNode>(std::move(n));
}

ModalFormula f_or(std::vector<ModalFormula> args) {
    FormulaNode n;
    n.kind = FormulaNode::Kind::Or;
    n.args = std::move(args);
    return std::make_shared<const FormulaNode>(std::move(n));
}

ModalFormula f_dia(std::string label, ModalFormula a) {
    FormulaNode n;
    n.kind = FormulaNode::Kind::Dia;
    n.label = std::move(label);
    n.args = {std::move(a)};
    return std::make_shared<const FormulaNode>(std::move(n));
}

ModalFormula f_rank_at_least(Ordinal alpha) {
    FormulaNode n;
    n.kind = FormulaNode::Kind::RankAtLeast;
    n.rank = std::move(alpha);
    return std::make_shared<const FormulaNode>(std::move(n));
}

ModalFormula f_charset(EPSet z) {
    FormulaNode n;
    n.kind = FormulaNode::Kind::CharSet;
    n.set = std::move(z);
    return std::make_shared<const FormulaNode>(std::move(n));
}

std::size_t modal_depth(const ModalFormula& f) {
    using K = FormulaNode::Kind;
    std::size_t d = 0;
    for (const auto& a : f->args) d = std::max(d, modal_depth(a));
    return f->kind == K::Dia ? d + 1 : d;
}

std::string formula_to_string(const ModalFormula& f) {
    using K = FormulaNode::Kind;
    auto join = [&](const char* op, const char* empty) {
        if (f->args.empty()) return std::string(empty);
        std::string s = "(";
        for (std::size_t i = 0; i < f->args.size(); ++i) {
            if (i) s += op;
            s += formula_to_string(f->args[i]);
        }
        return s + ")";
    };
    switch (f->kind) {
        case K::Top: return "T";
        case K::Neg: return "!" + formula_to_string(f->args[0]);
        case K::And: return join(" & ", "T");
        case K::Or: return join(" | ", "F");
        case K::Dia: return "<" + f->label + ">" + formula_to_string(f->args[0]);
        case K::RankAtLeast: return "rank>=" + f->rank.to_string();
        case K::CharSet: return "char(" + f->set.to_string() + ")";
    }
    return {};
}

namespace {

struct Evaluator {
    const PointedLTS& L;
    std::vector<std::optional<std::uint64_t>> ranks;
    std::unordered_map<const FormulaNode*, StateSet> memo;

    StateSet eval(const ModalFormula& f) {
        if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
        using K = FormulaNode::Kind;
        StateSet out(L.size());
        switch (f->kind) {
            case K::Top: out.set(); break;
            case K::Neg: out = ~eval(f->args[0]); break;
            case K::And:
                out.set();
                for (const auto& a : f->args) out &= eval(a);
                break;
            case K::Or:
                for (const auto& a : f->args) out |= eval(a);
                break;
            case K::Dia: {
                auto inner = eval(f->args[0]);
                if (auto a = L.label_index(f->label))
                    for (StateId s = 0; s < L.size(); ++s)
                        for (auto t : L.successors(s, *a))
                            if (inner.test(t)) {
                                out.set(s);
                                break;
                            }
                break;
            }
            case K::RankAtLeast:
                if (ranks.empty()) ranks = state_ranks(L);
                for (StateId s = 0; s < L.size(); ++s)
                    if (!ranks[s] || Ordinal::natural(*ranks[s]) >= f->rank) out.set(s);
                break;
            case K::CharSet:
                throw UnsupportedFormula("CharSet formulas are only defined on symbolic A-trees");
        }
        memo.emplace(f.get(), out);
        return out;
    }
};

}  // namespace

StateSet sem_set(const PointedLTS& L, const ModalFormula& f) {
    Evaluator ev{L, {}, {}};
    return ev.eval(f);
}

bool eval_formula(const PointedLTS& L, StateId s, const ModalFormula& f) { return sem_set(L, f).test(s); }

std::vector<std::optional<std::uint64_t>> state_ranks(const PointedLTS& L) {
    // Peel terminal layers; whatever never gets a rank reaches a cycle.
    std::vector<std::optional<std::uint64_t>> rank(L.size());
    std::vector<std::vector<StateId>> succ(L.size()), pred(L.size());
    std::vector<std::size_t> pending(L.size());
    for (StateId s = 0; s < L.size(); ++s) {
        succ[s] = L.all_successors(s);
        pending[s] = succ[s].size();
        for (auto t : succ[s]) pred[t].push_back(s);
    }
    std::deque<StateId> ready;
    for (StateId s = 0; s < L.size(); ++s)
        if (pending[s] == 0) ready.push_back(s);
    while (!ready.empty()) {
        auto s = ready.front();
        ready.pop_front();
        std::uint64_t r = 0;
        for (auto t : succ[s]) r = std::max(r, *rank[t] + 1);
        rank[s] = r;
        for (auto p : pred[s])
            if (--pending[p] == 0) ready.push_back(p);
    }
    return rank;
}

std::optional<Ordinal> state_rank(const PointedLTS& L, StateId s) {
    auto r = state_ranks(L)[s];
    if (!r) return std::nullopt;
    return Ordinal::natural(*r);
}

StateSet wf_part(const PointedLTS& L) {
    auto ranks = state_ranks(L);
    StateSet out(L.size());
    for (StateId s = 0; s < L.size(); ++s)
        if (ranks[s]) out.set(s);
    return out;
}

ModalFormula build_phi(const Ordinal& alpha, const std::vector<std::string>& labels) {
    auto n = alpha.as_natural();
    if (!n) return f_rank_at_least(alpha);
    ModalFormula f = f_top();
    for (std::uint64_t i = 0; i < *n; ++i) {
        if (labels.size() == 1) {
            f = f_dia(labels[0], f);
            continue;
        }
        std::vector<ModalFormula> alts;
        for (const auto& a : labels) alts.push_back(f_dia(a, f));
        f = f_or(std::move(alts));
    }
    return f;
}

ModalFormula build_psi(const Ordinal& alpha) { return build_phi(alpha, {kTreeLabel}); }

}  // namespace bisimkit
