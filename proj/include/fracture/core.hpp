#pragma once

// Complete r-uniform hypergraphs, colex edge indexing, edge colorings and the
// two per-coloring metrics: the fewest components over color classes (f) and
// the largest incident-vertex fraction over color classes (z).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fracture/error.hpp"
#include "fracture/rational.hpp"

namespace fracture {

using Vertices = std::vector<int>;

/// Largest edge count a Coloring will materialize.
inline constexpr std::uint64_t max_materialized_edges = 50'000'000;

inline std::uint64_t choose64(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    unsigned __int128 out = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        out = out * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
        require(out <= std::numeric_limits<std::uint64_t>::max(), ErrorKind::cap_exceeded,
                "binomial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(out);
}

/// K_n^r: n vertices, every r-subset an edge.
class HypergraphShape {
public:
    HypergraphShape(int n, int r) : n_(n), r_(r)
    {
        require(n >= 1, ErrorKind::invalid_input, "n must be >= 1");
        require(r >= 2, ErrorKind::invalid_input, "r must be >= 2");
        require(r <= n, ErrorKind::invalid_input, "r must be <= n");
        BigInt m = binomial(n, r);
        require(m <= max_materialized_edges, ErrorKind::cap_exceeded,
                "C(" + std::to_string(n) + "," + std::to_string(r) + ") too large");
        m_ = static_cast<std::uint64_t>(m);
    }

    int n() const noexcept { return n_; }
    int r() const noexcept { return r_; }
    std::uint64_t m() const noexcept { return m_; }
    BigInt m_exact() const { return binomial(n_, r_); }

    friend bool operator==(const HypergraphShape&, const HypergraphShape&) = default;

private:
    int n_;
    int r_;
    std::uint64_t m_;
};

struct EdgeId {
    std::uint64_t rank = 0;
    friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

inline EdgeId edge_rank(std::span<const int> vertices, const HypergraphShape& shape)
{
    require(static_cast<int>(vertices.size()) == shape.r(), ErrorKind::invalid_input,
            "edge must have exactly r vertices");
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        int v = vertices[i];
        require(v >= 0 && v < shape.n(), ErrorKind::invalid_input, "vertex out of range");
        require(i == 0 || vertices[i - 1] < v, ErrorKind::invalid_input,
                "edge vertices must be strictly increasing");
        rank += choose64(v, static_cast<std::int64_t>(i) + 1);
    }
    return EdgeId{rank};
}

inline Vertices edge_unrank(EdgeId id, const HypergraphShape& shape)
{
    require(id.rank < shape.m(), ErrorKind::invalid_input, "edge rank out of range");
    Vertices out(static_cast<std::size_t>(shape.r()));
    std::uint64_t rest = id.rank;
    int hi = shape.n() - 1;
    for (int i = shape.r(); i >= 1; --i) {
        while (choose64(hi, i) > rest)
            --hi;
        out[static_cast<std::size_t>(i - 1)] = hi;
        rest -= choose64(hi, i);
        --hi;
    }
    return out;
}

/// Calls fn(rank, vertices) for every edge in colex order.
template <typename Fn>
void for_each_edge(const HypergraphShape& shape, Fn&& fn)
{
    const int r = shape.r();
    Vertices s(static_cast<std::size_t>(r));
    std::iota(s.begin(), s.end(), 0);
    for (std::uint64_t rank = 0; rank < shape.m(); ++rank) {
        fn(rank, std::span<const int>(s));
        int i = 0;
        while (i + 1 < r && s[static_cast<std::size_t>(i)] + 1 == s[static_cast<std::size_t>(i) + 1])
            ++i;
        ++s[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j)
            s[static_cast<std::size_t>(j)] = j;
    }
}

inline std::vector<Vertices> all_edges(const HypergraphShape& shape)
{
    std::vector<Vertices> out;
    out.reserve(shape.m());
    for_each_edge(shape, [&](std::uint64_t, std::span<const int> e) { out.emplace_back(e.begin(), e.end()); });
    return out;
}

using Color = int;

/// One color label per edge, indexed by colex rank.
class Coloring {
public:
    Coloring(HypergraphShape shape, int k, std::vector<Color> colors)
        : shape_(shape), k_(k), colors_(std::move(colors))
    {
        require(k >= 1, ErrorKind::invalid_input, "k must be >= 1");
        require(static_cast<std::uint64_t>(k) <= shape_.m(), ErrorKind::invalid_input,
                "k must not exceed the number of edges");
        require(colors_.size() == shape_.m(), ErrorKind::invalid_input,
                "color vector length must equal C(n,r)");
        for (Color c : colors_)
            require(c >= 0 && c < k_, ErrorKind::invalid_input, "color label out of range");
    }

    const HypergraphShape& shape() const noexcept { return shape_; }
    int n() const noexcept { return shape_.n(); }
    int r() const noexcept { return shape_.r(); }
    int k() const noexcept { return k_; }
    std::span<const Color> colors() const noexcept { return colors_; }
    Color color_of(EdgeId id) const { return colors_.at(id.rank); }
    Color color_of(std::span<const int> vertices) const { return colors_[edge_rank(vertices, shape_).rank]; }

    int used_colors() const
    {
        std::vector<char> seen(static_cast<std::size_t>(k_), 0);
        int used = 0;
        for (Color c : colors_) {
            auto& flag = seen[static_cast<std::size_t>(c)];
            if (!flag) {
                flag = 1;
                ++used;
            }
        }
        return used;
    }

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    HypergraphShape shape_;
    int k_;
    std::vector<Color> colors_;
};

/// Relabels colors by first appearance in colex edge order; unused labels keep the tail.
inline Coloring canonicalize(const Coloring& c)
{
    std::vector<int> map(static_cast<std::size_t>(c.k()), -1);
    int next = 0;
    std::vector<Color> out(c.colors().begin(), c.colors().end());
    for (Color& x : out) {
        int& m = map[static_cast<std::size_t>(x)];
        if (m < 0)
            m = next++;
        x = m;
    }
    return Coloring(c.shape(), c.k(), std::move(out));
}

/// Union-find over vertex ids, union by size with path halving.
class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1)
    {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x)
    {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            auto& p = parent_[static_cast<std::size_t>(x)];
            p = parent_[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }

    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)])
            std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
        size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

struct ColorClassStats {
    Color color = 0;
    std::uint64_t edge_count = 0;
    int components = 0;
    int incident_vertices = 0;

    friend bool operator==(const ColorClassStats&, const ColorClassStats&) = default;
};

/// Component and incidence counts for an arbitrary edge list on `n` vertices.
/// Isolated vertices are not components.
inline ColorClassStats stats_of_edges(int n, const std::vector<Vertices>& edges, Color color = 0)
{
    DisjointSets dsu(n);
    std::vector<char> touched(static_cast<std::size_t>(n), 0);
    int incident = 0, merges = 0;
    for (const auto& e : edges) {
        for (int v : e) {
            auto& flag = touched[static_cast<std::size_t>(v)];
            if (!flag) {
                flag = 1;
                ++incident;
            }
        }
        for (std::size_t i = 1; i < e.size(); ++i)
            merges += dsu.unite(e[0], e[i]) ? 1 : 0;
    }
    return ColorClassStats{color, edges.size(), incident - merges, incident};
}

/// Per nonempty color class, sorted by color label.
inline std::vector<ColorClassStats> class_stats(const Coloring& coloring)
{
    const int n = coloring.n(), k = coloring.k();
    std::vector<DisjointSets> dsu(static_cast<std::size_t>(k), DisjointSets(n));
    std::vector<std::vector<char>> touched(static_cast<std::size_t>(k));
    std::vector<std::uint64_t> edges(static_cast<std::size_t>(k), 0);
    std::vector<int> incident(static_cast<std::size_t>(k), 0), merges(static_cast<std::size_t>(k), 0);
    auto colors = coloring.colors();
    for_each_edge(coloring.shape(), [&](std::uint64_t rank, std::span<const int> e) {
        auto c = static_cast<std::size_t>(colors[rank]);
        if (edges[c]++ == 0)
            touched[c].assign(static_cast<std::size_t>(n), 0);
        for (int v : e) {
            auto& flag = touched[c][static_cast<std::size_t>(v)];
            if (!flag) {
                flag = 1;
                ++incident[c];
            }
        }
        for (std::size_t i = 1; i < e.size(); ++i)
            merges[c] += dsu[c].unite(e[0], e[i]) ? 1 : 0;
    });
    std::vector<ColorClassStats> out;
    for (int c = 0; c < k; ++c) {
        auto i = static_cast<std::size_t>(c);
        if (edges[i] > 0)
            out.push_back(ColorClassStats{c, edges[i], incident[i] - merges[i], incident[i]});
    }
    return out;
}

inline int f_value(std::span<const ColorClassStats> stats)
{
    int best = std::numeric_limits<int>::max();
    for (const auto& s : stats)
        best = std::min(best, s.components);
    return best;
}

/// Fewest components over nonempty color classes.
inline int f_value(const Coloring& coloring) { return f_value(class_stats(coloring)); }

inline Rational z_value(std::span<const ColorClassStats> stats, int n)
{
    int best = 0;
    for (const auto& s : stats)
        best = std::max(best, s.incident_vertices);
    return Rational(best, n);
}

/// Largest fraction of vertices incident with a single color.
inline Rational z_value(const Coloring& coloring) { return z_value(class_stats(coloring), coloring.n()); }

/// Builds a coloring by evaluating `color_fn(vertices)` on every edge.
template <typename Fn>
Coloring coloring_from(const HypergraphShape& shape, int k, Fn&& color_fn)
{
    std::vector<Color> colors(shape.m());
    for_each_edge(shape, [&](std::uint64_t rank, std::span<const int> e) { colors[rank] = color_fn(e); });
    return Coloring(shape, k, std::move(colors));
}

} // namespace fracture
