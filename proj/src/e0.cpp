#include "bisimkit/e0.hpp"

#include <stdexcept>

namespace bisimkit {

EPSet mod_n(const EPSet& x, std::uint64_t n) { return x.modification(n); }

SymbolicTree build_A(const EPSet& x) { return SymbolicTree::a_tree(x); }

SymbolicTree build_B(const EPSet& x) { return SymbolicTree::b_tree(x); }

ModalFormula diamond_k_formula(std::uint64_t k) {
    auto f = f_neg(f_dia(kTreeLabel, f_top()));
    for (std::uint64_t i = 0; i <= k; ++i) f = f_dia(kTreeLabel, f);
    return f;
}

bool diamond_k_sat(const EPSet& x, std::uint64_t k) { return sym_eval(build_A(x), diamond_k_formula(k)); }

bool char_sat(const EPSet& w, const EPSet& z) { return sym_eval(build_A(w), f_charset(z)); }

namespace {

std::set<std::uint64_t> sym_diff(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b) {
    std::set<std::uint64_t> out;
    for (auto i : a)
        if (!b.count(i)) out.insert(i);
    for (auto i : b)
        if (!a.count(i)) out.insert(i);
    return out;
}

std::uint64_t partner(std::uint64_t n, const std::set<std::uint64_t>& d) {
    auto idx = modification_index(sym_diff(modification_mask(n), d));
    if (!idx) throw std::out_of_range("matching index exceeds 64 bits");
    return *idx;
}

}  // namespace

BBisimVerdict b_bisim_verdict(const EPSet& x, const EPSet& y) {
    BBisimVerdict v;
    v.difference = ep_finite_difference(x, y);
    if (v.difference) {
        // Matching of root children on the indices whose masks reach past the
        // difference, both ways.
        std::uint64_t span = 0;
        for (auto i : *v.difference) span = std::max(span, i + 1);
        const std::uint64_t count = std::uint64_t{1} << std::min<std::uint64_t>(span + 2, 12);
        for (std::uint64_t n = 0; n < count; ++n) {
            if (!ep_equal(mod_n(x, n), mod_n(y, partner(n, *v.difference))) ||
                !ep_equal(mod_n(y, n), mod_n(x, partner(n, *v.difference))))
                throw std::logic_error("finite difference does not match the root children");
        }
        v.bisimilar = true;
        return v;
    }
    v.distinguisher = f_dia(kTreeLabel, f_charset(x));
    if (!sym_eval(build_B(x), v.distinguisher) || sym_eval(build_B(y), v.distinguisher))
        throw std::logic_error("infinite difference but the characteristic formula does not separate");
    v.bisimilar = false;
    return v;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> matching_bijection(const EPSet& x, const EPSet& y,
                                                                        std::uint64_t count) {
    auto d = ep_finite_difference(x, y);
    if (!d) throw std::invalid_argument("sets are not eventually equal; no matching exists");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t n = 0; n < count; ++n) out.emplace_back(n, partner(n, *d));
    return out;
}

ExplicitTree b_truncate_matched(const EPSet& x, const EPSet& y, std::uint64_t depth, std::uint64_t width) {
    std::vector<SymbolicTree> kids;
    for (auto [n, np] : matching_bijection(x, y, width)) kids.push_back(build_A(mod_n(y, np)));
    return sym_truncate(SymbolicTree::glue(std::move(kids)), depth, width);
}

}  // namespace bisimkit
