#include "bisimkit/verify/gen.hpp"

#include <algorithm>
#include <functional>

namespace bisimkit::verify {

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased and library independent.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
}

std::vector<std::string> label_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t a = 0; a < n; ++a) out.push_back(std::string(1, char('a' + a)));
    return out;
}

namespace {

PointedLTS lts_shell(Rng& rng, std::size_t n, std::size_t labels) {
    std::vector<std::string> states;
    for (std::size_t s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
    return PointedLTS(label_names(labels), states, rng.below(n));
}

Count random_count(Rng& rng) {
    switch (rng.below(4)) {
        case 0: return Count(1);
        case 1: return Count(2);
        case 2: return Count(3);
        default: return Count::omega();
    }
}

}  // namespace

PointedLTS random_lts(Rng& rng, std::size_t n, std::size_t labels, std::uint64_t pct) {
    auto L = lts_shell(rng, n, labels);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < labels; ++a)
            for (std::size_t t = 0; t < n; ++t)
                if (rng.chance(pct, 100)) L.add_edge(s, a, t);
    return L;
}

PointedLTS random_wf_lts(Rng& rng, std::size_t n, std::size_t labels, std::uint64_t pct) {
    auto L = lts_shell(rng, n, labels);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < labels; ++a)
            for (std::size_t t = 0; t < s; ++t)
                if (rng.chance(pct, 100)) L.add_edge(s, a, t);
    return L;
}

EPSet random_epset(Rng& rng, std::size_t max_prefix, std::size_t max_period) {
    std::vector<bool> prefix(rng.below(max_prefix + 1)), period(rng.between(1, max_period));
    for (auto&& b : prefix) b = rng.chance(1, 2);
    for (auto&& b : period) b = rng.chance(1, 2);
    return EPSet(prefix, period);
}

ExplicitTree random_explicit_tree(Rng& rng, std::size_t max_nodes, std::uint64_t max_branch) {
    auto T = ExplicitTree::leaf();
    std::size_t target = rng.between(1, max_nodes);
    while (T.size() < target) {
        auto it = T.nodes().begin();
        std::advance(it, rng.below(T.size()));
        auto u = *it;
        u.push_back(rng.below(max_branch));
        T.insert(u);
    }
    return T;
}

MultiTree::Ptr random_multitree(Rng& rng, std::size_t max_rank, std::size_t max_children,
                                const std::vector<std::string>& labels) {
    if (max_rank == 0) return mt_leaf();
    MultiTree t;
    for (std::size_t i = rng.below(max_children + 1); i > 0; --i)
        t.children[labels[rng.below(labels.size())]].emplace_back(
            random_multitree(rng, rng.below(max_rank), max_children, labels), random_count(rng));
    return std::make_shared<const MultiTree>(std::move(t));
}

MultiTree::Ptr permute_multitree(Rng& rng, const MultiTree& t) {
    MultiTree out;
    for (const auto& [label, kids] : t.children) {
        std::vector<std::pair<MultiTree::Ptr, Count>> v;
        for (const auto& [child, count] : kids) {
            auto c = permute_multitree(rng, *child);
            if (count.is_omega() && rng.chance(1, 3)) {
                v.emplace_back(c, Count::omega());
                v.emplace_back(permute_multitree(rng, *child), Count::omega());
            } else if (!count.is_omega() && count.value() > 1 && rng.chance(1, 3)) {
                for (std::uint64_t i = 0; i < count.value(); ++i) v.emplace_back(permute_multitree(rng, *child), Count(1));
            } else {
                v.emplace_back(c, count);
            }
        }
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
        out.children[label] = std::move(v);
    }
    return std::make_shared<const MultiTree>(std::move(out));
}

MultiTree::Ptr mutate_multitree(Rng& rng, const MultiTree& t, const std::vector<std::string>& labels) {
    MultiTree out = t;
    std::vector<std::pair<std::string, std::size_t>> slots;
    for (const auto& [label, kids] : t.children)
        for (std::size_t i = 0; i < kids.size(); ++i) slots.emplace_back(label, i);
    auto op = slots.empty() ? 0 : rng.below(4);
    if (op == 0) {
        out.children[labels[rng.below(labels.size())]].emplace_back(mt_leaf(), random_count(rng));
        return std::make_shared<const MultiTree>(std::move(out));
    }
    auto [label, i] = slots[rng.below(slots.size())];
    auto& kids = out.children[label];
    switch (op) {
        case 1: kids[i].second = random_count(rng); break;
        case 2: kids[i].first = mutate_multitree(rng, *kids[i].first, labels); break;
        default: {
            auto entry = kids[i];
            kids.erase(kids.begin() + i);
            if (kids.empty()) out.children.erase(label);
            out.children[labels[rng.below(labels.size())]].push_back(entry);
        }
    }
    return std::make_shared<const MultiTree>(std::move(out));
}

namespace {

// Non-decreasing choices from `items` (each with a size) summing to `total`.
template <class Item, class Emit>
void multisets(const std::vector<std::pair<Item, std::size_t>>& items, std::size_t total, std::size_t from,
               std::vector<Item>& acc, const Emit& emit) {
    if (total == 0) {
        emit(acc);
        return;
    }
    for (std::size_t i = from; i < items.size(); ++i) {
        if (items[i].second > total) continue;
        acc.push_back(items[i].first);
        multisets(items, total - items[i].second, i, acc, emit);
        acc.pop_back();
    }
}

}  // namespace

std::vector<MultiTree::Ptr> all_multitrees(std::size_t max_nodes, const std::vector<std::string>& labels) {
    const Count counts[] = {Count(1), Count(2), Count::omega()};
    std::vector<std::vector<MultiTree::Ptr>> by_size(max_nodes + 1);
    struct Entry {
        std::string label;
        MultiTree::Ptr tree;
        Count count;
    };
    for (std::size_t n = 1; n <= max_nodes; ++n) {
        std::vector<std::pair<Entry, std::size_t>> items;
        for (std::size_t m = 1; m < n; ++m)
            for (const auto& t : by_size[m])
                for (const auto& l : labels)
                    for (auto c : counts) items.push_back({Entry{l, t, c}, m});
        std::vector<Entry> acc;
        multisets(items, n - 1, 0, acc, [&](const std::vector<Entry>& forest) {
            MultiTree t;
            for (const auto& e : forest) t.children[e.label].emplace_back(e.tree, e.count);
            by_size[n].push_back(std::make_shared<const MultiTree>(std::move(t)));
        });
    }
    std::vector<MultiTree::Ptr> out;
    for (const auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
    return out;
}

std::vector<ExplicitTree> all_explicit_trees(std::size_t n) {
    std::vector<std::vector<ExplicitTree>> by_size(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::pair<const ExplicitTree*, std::size_t>> items;
        for (std::size_t m = 1; m < k; ++m)
            for (const auto& t : by_size[m]) items.push_back({&t, m});
        std::vector<const ExplicitTree*> acc;
        multisets(items, k - 1, 0, acc, [&](const std::vector<const ExplicitTree*>& forest) {
            auto T = ExplicitTree::leaf();
            for (std::uint64_t i = 0; i < forest.size(); ++i)
                for (const auto& u : forest[i]->nodes()) {
                    ExplicitTree::Seq v{i};
                    v.insert(v.end(), u.begin(), u.end());
                    T.insert(v);
                }
            by_size[k].push_back(std::move(T));
        });
    }
    std::vector<ExplicitTree> out;
    for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace bisimkit::verify

namespace bisimkit::verify {

SubProbMeasure random_measure(Rng& rng, std::size_t n, std::size_t max_support) {
    static const std::int64_t dens[] = {1, 2, 3, 4, 6};
    const std::int64_t den = dens[rng.below(5)];
    std::size_t k = std::min<std::size_t>({std::size_t(rng.below(max_support + 1)), n, std::size_t(den)});
    SubProbMeasure mu;
    if (k == 0) return mu;
    std::vector<StateId> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(pts[i], pts[i + rng.below(n - i)]);
    const std::int64_t total = rng.chance(1, 2) ? den : std::int64_t(rng.between(k, den));
    // Positive parts of `total`: k - 1 distinct cut points in [1, total - 1].
    std::vector<std::int64_t> cuts;
    while (cuts.size() + 1 < k) {
        auto c = std::int64_t(rng.between(1, total - 1));
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(total);
    std::int64_t prev = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mu[pts[i]] = Rational(cuts[i] - prev, den);
        prev = cuts[i];
    }
    return mu;
}

PointmassNLMP random_nlmp(Rng& rng, std::size_t n, std::size_t labels, std::size_t max_measures,
                          std::size_t max_support, std::uint64_t pct) {
    std::vector<std::string> states;
    for (std::size_t s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
    PointmassNLMP N(label_names(labels), states);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t a = 0; a < labels; ++a)
            if (rng.chance(pct, 100))
                for (std::size_t i = rng.between(1, max_measures); i > 0; --i)
                    N.add_measure(s, a, random_measure(rng, n, max_support));
    return N;
}

Rel random_rel(Rng& rng, std::size_t n, std::size_t m, std::uint64_t pct) {
    Rel r(n, m);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < m; ++t)
            if (rng.chance(pct, 100)) r.insert(s, t);
    return r;
}

Rel random_z_closed_rel(Rng& rng, std::size_t n, std::size_t m) {
    const std::size_t blocks = rng.between(1, std::max<std::size_t>(1, std::max(n, m)));
    // Block index `blocks` means unrelated.
    std::vector<std::size_t> left(n), right(m);
    for (auto& b : left) b = rng.below(blocks + 1);
    for (auto& b : right) b = rng.below(blocks + 1);
    Rel r(n, m);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < m; ++t)
            if (left[s] < blocks && left[s] == right[t]) r.insert(s, t);
    return r;
}

SubProbMeasure transport_measure(Rng& rng, const SubProbMeasure& mu, const Rel& r) {
    SubProbMeasure out;
    for (const auto& [s, w] : mu) {
        auto img = members(r.image_of(s));
        if (img.empty()) continue;
        // Any point of the same component is reachable through R ∪ R⁻¹, so
        // moving to an image point keeps the component masses.
        out[img[rng.below(img.size())]] += w;
    }
    return out;
}

}  // namespace bisimkit::verify

namespace bisimkit::verify {

UniformStructure scramble_uniform(Rng& rng, const UniformStructure& u) {
    auto out = u;
    const std::size_t n = u.rows.size();
    for (auto& per_label : out.rows)
        for (auto& rows : per_label) {
            for (auto& row : rows) {
                if (rng.chance(1, 3)) row.push_back({Rational(0), StateId(rng.below(n))});
                for (std::size_t i = row.size(); i > 1; --i) std::swap(row[i - 1], row[rng.below(i)]);
            }
            for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.below(i)]);
        }
    return out;
}

}  // namespace bisimkit::verify
