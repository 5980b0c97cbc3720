#include "bisimkit/expansion.hpp"

#include <limits>
#include <map>

namespace bisimkit {

namespace {

struct Expander {
    const PointedLTS& L;
    std::map<std::pair<StateId, std::size_t>, MultiTree::Ptr> memo;

    // depth == npos means unbounded.
    MultiTree::Ptr at(StateId s, std::size_t depth) {
        auto key = std::make_pair(s, depth);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        MultiTree t;
        if (depth != 0) {
            auto next = depth == std::string::npos ? depth : depth - 1;
            for (LabelId a = 0; a < L.labels().size(); ++a)
                for (auto u : L.successors(s, a)) t.children[L.labels()[a]].emplace_back(at(u, next), Count::omega());
        }
        auto p = std::make_shared<const MultiTree>(std::move(t));
        memo.emplace(key, p);
        return p;
    }
};

}  // namespace

MultiTree::Ptr omega_expand(const PointedLTS& L, StateId s) {
    if (!state_ranks(L)[s])
        throw IllFounded("state '" + L.states()[s] + "' reaches a cycle; its expansion is not well founded");
    Expander e{L, {}};
    return e.at(s, std::string::npos);
}

MultiTree::Ptr omega_expand_truncated(const PointedLTS& L, StateId s, std::size_t d) {
    Expander e{L, {}};
    return e.at(s, d);
}

MultiTree::Ptr omega_code_expand(const OmegaLTSCode& c) {
    auto L = code_to_lts(c, std::numeric_limits<std::size_t>::max());
    return omega_expand(L, L.root());
}

namespace {

void code_paths(const OmegaLTSCode& c, std::uint64_t state, std::size_t depth, std::uint64_t width,
                MTree::Seq& prefix, MTree& out) {
    out.insert(prefix);
    if (depth == 0) return;
    for (const auto& [label, es] : c.edges)
        for (auto it = es.lower_bound({state, 0}); it != es.end() && it->first == state; ++it)
            for (std::uint64_t n = 0; n < width; ++n) {
                prefix.push_back({it->second, label, n});
                code_paths(c, it->second, depth - 1, width, prefix, out);
                prefix.pop_back();
            }
}

}  // namespace

MTree omega_code_tree(const OmegaLTSCode& c, std::size_t depth, std::uint64_t width) {
    MTree out;
    MTree::Seq prefix;
    code_paths(c, c.root, depth, width, prefix, out);
    return out;
}

}  // namespace bisimkit
