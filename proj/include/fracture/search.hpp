#pragma once

// Exact branch-and-bound solvers for the best f and z over colorings of small
// complete hypergraphs, the k <= r spanning-class verifier, and a seeded local
// search for instances too large to exhaust.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "fracture/bounds.hpp"
#include "fracture/core.hpp"

namespace fracture {

struct SearchOptions {
    std::uint64_t node_budget = 2'000'000'000;
    int thread_hint = 1;
    bool symmetry = true;
    bool report_witness = true;
};

enum class Objective { f, z };

struct SearchResult {
    Objective objective = Objective::f;
    Rational value;
    std::optional<Coloring> witness;
    bool exhausted = false;
    std::uint64_t nodes = 0;
};

/// Edge cap for the exact solvers; beyond it exhaustion is hopeless anyway.
inline constexpr std::uint64_t exact_edge_cap = 64;

namespace detail {

// Colors edges one at a time in colex order, keeping per-color vertex
// touch counts and an undoable union-find so every statistic is O(1) to read.
class PartialColoring {
public:
    PartialColoring(const HypergraphShape& shape, int k)
        : n_(shape.n()), r_(shape.r()), k_(k), edges_(all_edges(shape)),
          parent_(static_cast<std::size_t>(k * n_)), size_(static_cast<std::size_t>(k * n_), 1),
          touch_(static_cast<std::size_t>(k * n_), 0), inc_(static_cast<std::size_t>(k), 0),
          merges_(static_cast<std::size_t>(k), 0), count_(static_cast<std::size_t>(k), 0),
          colors_(edges_.size(), -1)
    {
        for (int c = 0; c < k; ++c)
            for (int v = 0; v < n_; ++v)
                parent_[slot(c, v)] = v;
    }

    std::size_t m() const noexcept { return edges_.size(); }
    int k() const noexcept { return k_; }
    int used() const noexcept { return used_; }
    int max_used() const noexcept { return max_used_; }
    int incident(int c) const { return inc_[static_cast<std::size_t>(c)]; }
    int components(int c) const { return inc_[static_cast<std::size_t>(c)] - merges_[static_cast<std::size_t>(c)]; }
    std::uint64_t edge_count(int c) const { return count_[static_cast<std::size_t>(c)]; }
    const std::vector<Color>& colors() const noexcept { return colors_; }

    void assign(std::size_t e, int c)
    {
        const auto& edge = edges_[e];
        auto ci = static_cast<std::size_t>(c);
        colors_[e] = c;
        if (count_[ci]++ == 0)
            ++used_;
        max_used_ = std::max(max_used_, c);
        history_.push_back({-1, -1});
        for (int v : edge)
            if (touch_[slot(c, v)]++ == 0)
                ++inc_[ci];
        for (std::size_t i = 1; i < edge.size(); ++i) {
            int a = find(c, edge[0]), b = find(c, edge[i]);
            if (a == b)
                continue;
            if (size_[slot(c, a)] < size_[slot(c, b)])
                std::swap(a, b);
            parent_[slot(c, b)] = a;
            size_[slot(c, a)] += size_[slot(c, b)];
            ++merges_[ci];
            history_.push_back({c, b});
        }
        max_stack_.push_back(max_used_);
    }

    void undo(std::size_t e)
    {
        int c = colors_[e];
        auto ci = static_cast<std::size_t>(c);
        while (history_.back().first >= 0) {
            auto [cc, b] = history_.back();
            history_.pop_back();
            int a = parent_[slot(cc, b)];
            size_[slot(cc, a)] -= size_[slot(cc, b)];
            parent_[slot(cc, b)] = b;
            --merges_[ci];
        }
        history_.pop_back();
        for (int v : edges_[e])
            if (--touch_[slot(c, v)] == 0)
                --inc_[ci];
        if (--count_[ci] == 0)
            --used_;
        colors_[e] = -1;
        max_stack_.pop_back();
        max_used_ = max_stack_.empty() ? -1 : max_stack_.back();
    }

private:
    std::size_t slot(int c, int v) const { return static_cast<std::size_t>(c * n_ + v); }

    int find(int c, int v) const
    {
        while (parent_[slot(c, v)] != v)
            v = parent_[slot(c, v)];
        return v;
    }

    int n_, r_, k_;
    std::vector<Vertices> edges_;
    std::vector<int> parent_, size_, touch_, inc_, merges_;
    std::vector<std::uint64_t> count_;
    std::vector<Color> colors_;
    std::vector<std::pair<int, int>> history_;
    std::vector<int> max_stack_;
    int used_ = 0;
    int max_used_ = -1;
};

// Everything is phrased as maximizing an integer score: f itself, or minus
// the largest class incidence for z.
class BranchAndBound {
public:
    BranchAndBound(const HypergraphShape& shape, int k, Objective objective, const SearchOptions& opts)
        : shape_(shape), k_(k), objective_(objective), opts_(opts)
    {
        if (objective_ == Objective::f) {
            upper_ = std::min(f_upper_eq1(shape.n(), k, shape.r()), f_upper_trivial(shape.n(), k, shape.r()));
        } else {
            // k classes of at most M vertices hold at most k * C(M, r) edges
            int M = shape.r();
            while (M < shape.n() && BigInt(k) * binomial(M, shape.r()) < shape.m_exact())
                ++M;
            min_incidence_ = M;
        }
    }

    SearchResult run()
    {
        PartialColoring root(shape_, k_);
        const std::size_t m = root.m();
        const std::size_t depth = std::min<std::size_t>(m, prefix_depth);
        std::vector<std::vector<Color>> prefixes;
        std::vector<Color> current;
        enumerate_prefixes(root, 0, depth, current, prefixes);

        results_.assign(prefixes.size(), std::nullopt);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            PartialColoring state(shape_, k_);
            for (;;) {
                std::size_t p = next.fetch_add(1);
                if (p >= prefixes.size() || stop_.load())
                    return;
                for (std::size_t e = 0; e < depth; ++e)
                    state.assign(e, prefixes[p][e]);
                std::uint64_t local = 0;
                dfs(state, depth, p, local);
                nodes_.fetch_add(local % batch);
                for (std::size_t e = depth; e-- > 0;)
                    state.undo(e);
            }
        };
        int threads = std::max(1, opts_.thread_hint);
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back(worker);
            for (auto& t : pool)
                t.join();
        }

        SearchResult out;
        out.objective = objective_;
        out.exhausted = !stop_.load();
        out.nodes = nodes_.load();
        std::optional<std::size_t> winner;
        for (std::size_t p = 0; p < results_.size(); ++p)
            if (results_[p] && (!winner || results_[p]->first > results_[*winner]->first))
                winner = p;
        std::vector<Color> colors;
        if (winner) {
            colors = results_[*winner]->second;
        } else {
            // budget ran out before any complete coloring: fall back to a round robin
            colors.resize(m);
            for (std::size_t e = 0; e < m; ++e)
                colors[e] = static_cast<Color>(e % static_cast<std::size_t>(k_));
        }
        Coloring witness(shape_, k_, std::move(colors));
        auto stats = class_stats(witness);
        out.value = objective_ == Objective::f ? Rational(f_value(stats)) : z_value(stats, shape_.n());
        if (opts_.report_witness)
            out.witness = std::move(witness);
        return out;
    }

private:
    static constexpr std::size_t prefix_depth = 5;
    static constexpr std::uint64_t batch = 4096;

    int color_limit(const PartialColoring& s) const
    {
        return opts_.symmetry ? std::min(k_ - 1, s.max_used() + 1) : k_ - 1;
    }

    bool feasible(const PartialColoring& s, std::size_t depth) const
    {
        // an f witness must use every color
        return objective_ != Objective::f || static_cast<std::size_t>(s.used()) + (s.m() - depth) >= static_cast<std::size_t>(k_);
    }

    void enumerate_prefixes(PartialColoring& s, std::size_t e, std::size_t depth, std::vector<Color>& current,
                            std::vector<std::vector<Color>>& out) const
    {
        if (!feasible(s, e))
            return;
        if (e == depth) {
            out.push_back(current);
            return;
        }
        for (int c = 0; c <= color_limit(s); ++c) {
            s.assign(e, c);
            current.push_back(c);
            enumerate_prefixes(s, e + 1, depth, current, out);
            current.pop_back();
            s.undo(e);
        }
    }

    // Upper bound on the score of any completion of `s`.
    std::int64_t bound(const PartialColoring& s, std::size_t depth) const
    {
        const int n = shape_.n(), r = shape_.r();
        if (objective_ == Objective::f) {
            // a class gains at most one component per r untouched vertices
            std::int64_t b = upper_;
            for (int c = 0; c < k_; ++c)
                if (s.edge_count(c) > 0)
                    b = std::min<std::int64_t>(b, s.components(c) + (n - s.incident(c)) / r);
            return b;
        }
        int M = min_incidence_;
        for (int c = 0; c < k_; ++c)
            M = std::max(M, s.incident(c));
        const std::uint64_t remaining = s.m() - depth;
        for (; M < n; ++M) {
            std::uint64_t room = 0, cap = choose64(M, r);
            for (int c = 0; c < k_ && room < remaining; ++c)
                room += cap > s.edge_count(c) ? cap - s.edge_count(c) : 0;
            if (room >= remaining)
                break;
        }
        return -static_cast<std::int64_t>(M);
    }

    std::int64_t score(const PartialColoring& s) const
    {
        std::int64_t best = objective_ == Objective::f ? std::numeric_limits<std::int64_t>::max() : 0;
        for (int c = 0; c < k_; ++c) {
            if (s.edge_count(c) == 0)
                continue;
            if (objective_ == Objective::f)
                best = std::min<std::int64_t>(best, s.components(c));
            else
                best = std::max<std::int64_t>(best, s.incident(c));
        }
        return objective_ == Objective::f ? best : -best;
    }

    // Prune when no completion can beat the incumbent; ties lose to incumbents
    // from earlier prefixes so the lexicographically first optimum wins.
    bool dominated(std::int64_t b, std::size_t prefix)
    {
        std::lock_guard lock(mutex_);
        if (!best_)
            return false;
        return b < best_->first || (b == best_->first && best_->second <= prefix);
    }

    void offer(std::int64_t value, std::size_t prefix, const std::vector<Color>& colors)
    {
        auto& slot = results_[prefix];
        if (slot && slot->first >= value)
            return;
        slot = std::pair{value, colors};
        std::lock_guard lock(mutex_);
        if (!best_ || value > best_->first || (value == best_->first && prefix < best_->second))
            best_ = std::pair{value, prefix};
    }

    void dfs(PartialColoring& s, std::size_t e, std::size_t prefix, std::uint64_t& local)
    {
        if (stop_.load(std::memory_order_relaxed))
            return;
        if (++local % batch == 0 && nodes_.fetch_add(batch) + batch > opts_.node_budget) {
            stop_.store(true);
            return;
        }
        if (!feasible(s, e) || dominated(bound(s, e), prefix))
            return;
        if (e == s.m()) {
            offer(score(s), prefix, s.colors());
            return;
        }
        for (int c = 0; c <= color_limit(s); ++c) {
            s.assign(e, c);
            dfs(s, e + 1, prefix, local);
            s.undo(e);
            if (stop_.load(std::memory_order_relaxed))
                return;
        }
    }

    HypergraphShape shape_;
    int k_;
    Objective objective_;
    SearchOptions opts_;
    std::int64_t upper_ = 0;
    int min_incidence_ = 0;
    std::mutex mutex_;
    std::optional<std::pair<std::int64_t, std::size_t>> best_;
    std::vector<std::optional<std::pair<std::int64_t, std::vector<Color>>>> results_;
    std::atomic<bool> stop_{false};
    std::atomic<std::uint64_t> nodes_{0};
};

inline void check_exact_instance(int n, int k, int r, const SearchOptions& opts)
{
    HypergraphShape shape(n, r);
    require(k >= 1 && static_cast<std::uint64_t>(k) <= shape.m(), ErrorKind::invalid_input, "need 1 <= k <= C(n,r)");
    require(shape.m() <= exact_edge_cap, ErrorKind::cap_exceeded, "too many edges for exact search");
    require(opts.node_budget > 0, ErrorKind::invalid_input, "node budget must be positive");
}

} // namespace detail

/// Largest f over colorings that use all k colors.
inline SearchResult exact_f(int n, int k, int r, const SearchOptions& opts = {})
{
    detail::check_exact_instance(n, k, r, opts);
    return detail::BranchAndBound(HypergraphShape(n, r), k, Objective::f, opts).run();
}

/// Smallest z over colorings with at most k colors.
inline SearchResult exact_z(int n, int k, int r, const SearchOptions& opts = {})
{
    detail::check_exact_instance(n, k, r, opts);
    return detail::BranchAndBound(HypergraphShape(n, r), k, Objective::z, opts).run();
}

inline constexpr std::uint64_t verify_coloring_cap = 10'000'000;

/// Checks that every coloring with at most k <= r colors has a class that is
/// connected and touches all n vertices.
inline bool verify_k_le_r(int n, int k, int r)
{
    HypergraphShape shape(n, r);
    require(k >= 1 && k <= r, ErrorKind::precondition_failed, "verifier needs 1 <= k <= r");
    BigInt total = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(shape.m()));
    require(total <= verify_coloring_cap, ErrorKind::cap_exceeded, "too many colorings to enumerate");
    const auto edges = all_edges(shape);
    std::vector<Color> colors(edges.size(), 0);
    std::vector<std::vector<Vertices>> classes(static_cast<std::size_t>(k));
    for (;;) {
        for (auto& cls : classes)
            cls.clear();
        for (std::size_t e = 0; e < edges.size(); ++e)
            classes[static_cast<std::size_t>(colors[e])].push_back(edges[e]);
        bool found = false;
        for (int c = 0; c < k && !found; ++c) {
            auto st = stats_of_edges(n, classes[static_cast<std::size_t>(c)], c);
            found = st.incident_vertices == n && st.components == 1;
        }
        if (!found)
            return false;
        std::size_t i = 0;
        while (i < colors.size() && ++colors[i] == k)
            colors[i++] = 0;
        if (i == colors.size())
            return true;
    }
}

namespace detail {

// Stoer-Wagner global minimum cut of the weighted graph induced on `vertices`.
inline std::int64_t min_cut(std::vector<std::vector<std::int64_t>> w, std::vector<int> vertices)
{
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    while (vertices.size() > 1) {
        std::vector<std::int64_t> key(vertices.size(), 0);
        std::vector<char> added(vertices.size(), 0);
        std::size_t prev = 0, last = 0;
        for (std::size_t step = 0; step < vertices.size(); ++step) {
            std::size_t pick = vertices.size();
            for (std::size_t i = 0; i < vertices.size(); ++i)
                if (!added[i] && (pick == vertices.size() || key[i] > key[pick]))
                    pick = i;
            added[pick] = 1;
            prev = last;
            last = pick;
            if (step + 1 == vertices.size())
                best = std::min(best, key[pick]);
            for (std::size_t i = 0; i < vertices.size(); ++i)
                if (!added[i])
                    key[i] += w[static_cast<std::size_t>(vertices[pick])][static_cast<std::size_t>(vertices[i])];
        }
        auto s = static_cast<std::size_t>(vertices[prev]), t = static_cast<std::size_t>(vertices[last]);
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[s][i] += w[t][i];
            w[i][s] = w[s][i];
        }
        vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(last));
    }
    return best;
}

// Ranks colorings by (f, minus the cheapest split over classes at the
// minimum, minus the number of classes at the minimum, total components).
// The split cost is a min cut of the pair multigraph of each component, so a
// single-edge move can make visible progress toward raising f.
inline std::tuple<int, std::int64_t, int, int> local_score(const HypergraphShape& shape, int k,
                                                          const std::vector<Vertices>& edges,
                                                          const std::vector<Color>& colors)
{
    const int n = shape.n();
    auto stats = class_stats(Coloring(shape, k, colors));
    int f = f_value(stats), at_min = 0, total = 0;
    std::vector<char> bottleneck(static_cast<std::size_t>(k), 0);
    for (const auto& s : stats) {
        total += s.components;
        if (s.components == f) {
            ++at_min;
            bottleneck[static_cast<std::size_t>(s.color)] = 1;
        }
    }
    std::int64_t split = 0;
    for (int c = 0; c < k; ++c) {
        if (!bottleneck[static_cast<std::size_t>(c)])
            continue;
        std::vector<std::vector<std::int64_t>> w(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
        DisjointSets dsu(n);
        std::vector<char> touched(static_cast<std::size_t>(n), 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (colors[e] != c)
                continue;
            const auto& edge = edges[e];
            for (std::size_t i = 0; i < edge.size(); ++i) {
                touched[static_cast<std::size_t>(edge[i])] = 1;
                dsu.unite(edge[0], edge[i]);
                for (std::size_t j = i + 1; j < edge.size(); ++j) {
                    ++w[static_cast<std::size_t>(edge[i])][static_cast<std::size_t>(edge[j])];
                    ++w[static_cast<std::size_t>(edge[j])][static_cast<std::size_t>(edge[i])];
                }
            }
        }
        std::vector<std::vector<int>> parts(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            if (touched[static_cast<std::size_t>(v)])
                parts[static_cast<std::size_t>(dsu.find(v))].push_back(v);
        std::int64_t cheapest = std::numeric_limits<std::int64_t>::max();
        for (const auto& part : parts)
            if (part.size() > 1)
                cheapest = std::min(cheapest, min_cut(w, part));
        split += cheapest;
    }
    return {f, -split, -at_min, total};
}

} // namespace detail

/// Seeded single-edge recoloring hill climb over colorings that use all k
/// colors, annealed so the climb can leave plateaus.
inline SearchResult randomized_improve(int n, int k, int r, std::uint64_t seed, std::uint64_t iters)
{
    HypergraphShape shape(n, r);
    require(k >= 1 && static_cast<std::uint64_t>(k) <= shape.m(), ErrorKind::invalid_input, "need 1 <= k <= C(n,r)");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::uint64_t bound) { return static_cast<std::uint64_t>(rng() % bound); };
    const std::uint64_t m = shape.m();

    std::vector<Color> colors(m);
    for (std::uint64_t e = 0; e < m; ++e)
        colors[e] = static_cast<Color>(e < static_cast<std::uint64_t>(k) ? e : pick(static_cast<std::uint64_t>(k)));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(k), 0);
    for (Color c : colors)
        ++counts[static_cast<std::size_t>(c)];

    const auto edges = all_edges(shape);
    auto evaluate = [&] { return detail::local_score(shape, k, edges, colors); };
    auto current = evaluate();
    auto best = current;
    std::vector<Color> best_colors = colors;
    // annealed on a scalar energy; f dominates, the split cost breaks ties
    auto energy = [](const auto& sc) {
        return 1e6 * std::get<0>(sc) + 4.0 * static_cast<double>(std::get<1>(sc)) + std::get<2>(sc);
    };
    const double t_start = 3.0, t_end = 0.05;
    for (std::uint64_t it = 0; it < iters; ++it) {
        double temp = t_start * std::pow(t_end / t_start, static_cast<double>(it) / static_cast<double>(iters));
        std::uint64_t e = pick(m);
        Color old = colors[e];
        Color neu = static_cast<Color>(pick(static_cast<std::uint64_t>(k)));
        if (neu == old || counts[static_cast<std::size_t>(old)] == 1)
            continue;
        colors[e] = neu;
        auto next = evaluate();
        double delta = energy(next) - energy(current);
        double coin = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (delta >= 0 || coin < std::exp(delta / temp)) {
            --counts[static_cast<std::size_t>(old)];
            ++counts[static_cast<std::size_t>(neu)];
            current = next;
            if (current > best) {
                best = current;
                best_colors = colors;
            }
        } else {
            colors[e] = old;
        }
    }

    Coloring witness = canonicalize(Coloring(shape, k, std::move(best_colors)));
    SearchResult out;
    out.objective = Objective::f;
    out.value = f_value(witness);
    out.witness = std::move(witness);
    out.exhausted = false;
    out.nodes = iters;
    return out;
}

} // namespace fracture
