#include "bisimkit/treeiso.hpp"

#include <functional>
#include <map>
#include <unordered_map>

namespace bisimkit {

namespace {

struct Canonizer {
    std::unordered_map<const MultiTree*, std::string> memo;

    const std::string& form(const MultiTree& t) {
        if (auto it = memo.find(&t); it != memo.end()) return it->second;
        std::string out = "(";
        for (const auto& [label, kids] : t.children) {
            std::map<std::string, Count> merged;
            for (const auto& [child, count] : kids) merged[form(*child)] += count;
            out += std::to_string(label.size()) + ":" + label + "[";
            for (const auto& [f, count] : merged) out += f + "^" + (count.is_omega() ? "w" : std::to_string(count.value()));
            out += "]";
        }
        out += ")";
        return memo.emplace(&t, std::move(out)).first->second;
    }
};

struct Congruence {
    std::map<std::pair<const MultiTree*, const MultiTree*>, bool> memo;

    bool same(const MultiTree& a, const MultiTree& b) {
        auto key = std::make_pair(&a, &b);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool r = compute(a, b);
        memo.emplace(key, r);
        return r;
    }

    bool compute(const MultiTree& a, const MultiTree& b) {
        if (mt_root_rank(a) != mt_root_rank(b)) return false;
        if (a.children.size() != b.children.size()) return false;
        for (const auto& [label, kids] : a.children) {
            auto it = b.children.find(label);
            if (it == b.children.end()) return false;
            // Group the children of both sides into types; compare per-type totals.
            std::vector<const MultiTree*> reps;
            std::vector<Count> left, right;
            auto classify = [&](const MultiTree& c) {
                for (std::size_t i = 0; i < reps.size(); ++i)
                    if (same(*reps[i], c)) return i;
                reps.push_back(&c);
                left.emplace_back();
                right.emplace_back();
                return reps.size() - 1;
            };
            for (const auto& [child, count] : kids) {
                auto i = classify(*child);
                left[i] += count;
            }
            for (const auto& [child, count] : it->second) {
                auto i = classify(*child);
                right[i] += count;
            }
            if (left != right) return false;
        }
        return true;
    }
};

struct Slot {
    std::string label;
    const MultiTree* tree;
};

std::vector<Slot> materialize_root(const MultiTree& t, std::size_t k) {
    std::vector<Slot> out;
    for (const auto& [label, kids] : t.children)
        for (const auto& [child, count] : kids) {
            std::uint64_t copies = count.is_omega() ? k : std::min<std::uint64_t>(count.value(), k);
            for (std::uint64_t i = 0; i < copies; ++i) out.push_back({label, child.get()});
        }
    return out;
}

bool has_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t right_size) {
    std::vector<std::size_t> owner(right_size, SIZE_MAX);
    std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t u, std::vector<bool>& seen) {
        for (auto v : adj[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            if (owner[v] == SIZE_MAX || augment(owner[v], seen)) {
                owner[v] = u;
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < adj.size(); ++u) {
        std::vector<bool> seen(right_size, false);
        if (!augment(u, seen)) return false;
    }
    return true;
}

// Every injective k-tuple of root children of t has an imitating injective
// k-tuple in tp.
bool forth(const MultiTree& t, const MultiTree& tp, std::size_t k, Congruence& cong) {
    auto src = materialize_root(t, k);
    auto dst = materialize_root(tp, k);
    if (src.size() < k) return true;
    std::vector<std::vector<bool>> ok(src.size(), std::vector<bool>(dst.size()));
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < dst.size(); ++j)
            ok[i][j] = src[i].label == dst[j].label && cong.same(*src[i].tree, *dst[j].tree);
    std::vector<std::size_t> pick(k);
    std::function<bool(std::size_t, std::size_t)> choose = [&](std::size_t pos, std::size_t from) {
        if (pos == k) {
            std::vector<std::vector<std::size_t>> adj(k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < dst.size(); ++j)
                    if (ok[pick[i]][j]) adj[i].push_back(j);
            return has_matching(adj, dst.size());
        }
        for (std::size_t i = from; i + (k - pos) <= src.size(); ++i) {
            pick[pos] = i;
            if (!choose(pos + 1, i + 1)) return false;
        }
        return true;
    };
    return choose(0, 0);
}

}  // namespace

std::string canon(const MultiTree& t) {
    Canonizer c;
    return c.form(t);
}

bool iso(const MultiTree& t, const MultiTree& tp) {
    Canonizer c;
    return c.form(t) == c.form(tp);
}

bool cong_alpha(const MultiTree& t, const MultiTree& tp, const Ordinal& alpha) {
    if (mt_tree_rank(t) != alpha || mt_tree_rank(tp) != alpha) return false;
    Congruence c;
    return c.same(t, tp);
}

bool forth_back_k(const MultiTree& t, const MultiTree& tp, const Ordinal& alpha, std::size_t k) {
    if (mt_tree_rank(t) != alpha || mt_tree_rank(tp) != alpha) return false;
    Congruence c;
    return forth(t, tp, k, c) && forth(tp, t, k, c);
}

}  // namespace bisimkit
