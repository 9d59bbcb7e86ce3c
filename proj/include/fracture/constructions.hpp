#pragma once

// Colorings with provably many components per class: the explicit base
// colorings, designs turned into colorings, the equitable-part blow-up, the
// matching-based colorings for many colors, and the bipartite analog.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "fracture/core.hpp"
#include "fracture/designs.hpp"

namespace fracture {

/// A small coloring used as the pattern for a blow-up.
struct BaseColoring {
    Coloring coloring;
    Rational realized_z;
    Rational epsilon = 0;
    std::string name;
};

/// Colors edge lists: class i gets color i. The lists must partition K_n^r.
inline Coloring coloring_from_classes(int n, int r, int k, const std::vector<std::vector<Vertices>>& classes)
{
    HypergraphShape shape(n, r);
    require(static_cast<int>(classes.size()) <= k, ErrorKind::invalid_input, "more classes than colors");
    std::vector<Color> colors(shape.m(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (const auto& e : classes[c]) {
            auto& slot = colors[edge_rank(e, shape).rank];
            require(slot < 0, ErrorKind::invalid_input, "edge listed in two classes");
            slot = static_cast<Color>(c);
        }
    for (Color c : colors)
        require(c >= 0, ErrorKind::invalid_input, "classes do not cover every edge");
    return Coloring(shape, k, std::move(colors));
}

/// One color per block: each strength-subset takes the color of its unique block.
inline Coloring coloring_from_design(const Design& d)
{
    require(d.lambda == 1 && d.strength >= 2, ErrorKind::invalid_input,
            "only lambda = 1 designs of strength >= 2 partition a complete hypergraph");
    HypergraphShape shape(d.v, d.strength);
    HypergraphShape inner(d.block_size, d.strength);
    std::vector<Color> colors(shape.m(), -1);
    Vertices sub(static_cast<std::size_t>(d.strength));
    for (std::size_t b = 0; b < d.blocks.size(); ++b)
        for_each_edge(inner, [&](std::uint64_t, std::span<const int> pos) {
            for (std::size_t i = 0; i < pos.size(); ++i)
                sub[i] = d.blocks[b][static_cast<std::size_t>(pos[i])];
            auto& slot = colors[edge_rank(sub, shape).rank];
            require(slot < 0, ErrorKind::invalid_input, "design covers some edge twice");
            slot = static_cast<Color>(b);
        });
    for (Color c : colors)
        require(c >= 0, ErrorKind::invalid_input, "design leaves some edge uncovered");
    return canonicalize(Coloring(shape, static_cast<int>(d.blocks.size()), std::move(colors)));
}

inline BaseColoring make_base(Coloring c, std::string name)
{
    c = canonicalize(c);
    Rational z = z_value(c);
    return BaseColoring{std::move(c), z, 0, std::move(name)};
}

inline Coloring rainbow_triangle()
{
    return coloring_from_classes(3, 2, 3, {{{0, 1}}, {{0, 2}}, {{1, 2}}});
}

// Colors i = 0,1,2 on (i,3),(i,4); color 3 on the triangle 012; (3,4) joins color 0.
inline Coloring k5_four()
{
    return canonicalize(coloring_from_classes(
        5, 2, 4,
        {{{0, 3}, {0, 4}, {3, 4}}, {{1, 3}, {1, 4}}, {{2, 3}, {2, 4}}, {{0, 1}, {0, 2}, {1, 2}}}));
}

// Two K5's sharing vertex 4; the K_{4,4} between {0..3} and {5..8} is split
// into a K_{1,4} and two K_{3,2}.
inline Coloring k9_five()
{
    std::vector<std::vector<Vertices>> classes(5);
    for (int a = 0; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b)
            classes[0].push_back({a, b});
    for (int a = 4; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b)
            classes[1].push_back({a, b});
    for (int b = 5; b <= 8; ++b)
        classes[2].push_back({0, b});
    for (int a = 1; a <= 3; ++a) {
        classes[3].push_back({a, 5});
        classes[3].push_back({a, 6});
        classes[4].push_back({a, 7});
        classes[4].push_back({a, 8});
    }
    return canonicalize(coloring_from_classes(9, 2, 5, classes));
}

// Six colors on K_6^3, every color incident with four vertices.
inline Coloring k6r3_six()
{
    return canonicalize(coloring_from_classes(6, 3, 6,
                                              {
                                                  {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}},
                                                  {{0, 1, 4}, {0, 1, 5}, {0, 4, 5}, {1, 4, 5}},
                                                  {{0, 2, 4}, {0, 2, 5}, {2, 4, 5}},
                                                  {{1, 2, 4}, {1, 3, 4}, {2, 3, 4}},
                                                  {{0, 3, 4}, {0, 3, 5}, {3, 4, 5}},
                                                  {{1, 2, 5}, {1, 3, 5}, {2, 3, 5}},
                                              }));
}

inline Coloring trivial_coloring(int n, int r)
{
    HypergraphShape shape(n, r);
    std::vector<Color> colors(shape.m());
    for (std::size_t i = 0; i < colors.size(); ++i)
        colors[i] = static_cast<Color>(i);
    return Coloring(shape, static_cast<int>(shape.m()), std::move(colors));
}

inline Design design_by_kind(const std::string& kind, int param)
{
    if (kind == "pg")
        return projective_plane(param);
    if (kind == "ag")
        return affine_plane(param);
    if (kind == "sqs")
        return boolean_sqs(param);
    if (kind == "inversive")
        return inversive_plane(param);
    fail(ErrorKind::unknown_name, "unknown design kind '" + kind + "'");
}

inline Coloring k4minus_coloring(int n)
{
    auto copies = k4minus_decomposition(n);
    return canonicalize(coloring_from_classes(n, 2, static_cast<int>(copies.size()), copies));
}

/// Named base colorings: rainbow-triangle, k5-four, k9-five, k6r3-six,
/// trivial(n,r), design(pg|ag|sqs|inversive,q) and k4minus(n).
inline BaseColoring base_registry(const std::string& name)
{
    if (name == "rainbow-triangle")
        return make_base(rainbow_triangle(), name);
    if (name == "k5-four")
        return make_base(k5_four(), name);
    if (name == "k9-five")
        return make_base(k9_five(), name);
    if (name == "k6r3-six")
        return make_base(k6r3_six(), name);
    std::smatch m;
    static const std::regex trivial_re(R"(trivial\((\d+),(\d+)\))");
    static const std::regex design_re(R"(design\((pg|ag|sqs|inversive),(\d+)\))");
    static const std::regex k4_re(R"(k4minus\((\d+)\))");
    if (std::regex_match(name, m, trivial_re))
        return make_base(trivial_coloring(std::stoi(m[1]), std::stoi(m[2])), name);
    if (std::regex_match(name, m, design_re))
        return make_base(coloring_from_design(design_by_kind(m[1], std::stoi(m[2]))), name);
    if (std::regex_match(name, m, k4_re))
        return make_base(k4minus_coloring(std::stoi(m[1])), name);
    fail(ErrorKind::unknown_name, "unknown base coloring '" + name + "'");
}

/// Equitable partition of 0..n-1 into t consecutive parts; the first n mod t
/// parts have ceil(n/t) vertices.
struct EquitableParts {
    std::vector<int> start, size, part_of;

    EquitableParts(int n, int t)
    {
        int base = n / t, extra = n % t, at = 0;
        for (int i = 0; i < t; ++i) {
            start.push_back(at);
            size.push_back(base + (i < extra ? 1 : 0));
            at += size.back();
        }
        part_of.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < t; ++i)
            for (int v = start[static_cast<std::size_t>(i)]; v < start[static_cast<std::size_t>(i)] + size[static_cast<std::size_t>(i)]; ++v)
                part_of[static_cast<std::size_t>(v)] = i;
    }
};

/// present[v] lists the colors on edges through base vertex v, ascending.
inline std::vector<std::vector<Color>> colors_at_vertices(const Coloring& c)
{
    std::vector<std::set<Color>> sets(static_cast<std::size_t>(c.n()));
    auto colors = c.colors();
    for_each_edge(c.shape(), [&](std::uint64_t rank, std::span<const int> e) {
        for (int v : e)
            sets[static_cast<std::size_t>(v)].insert(colors[rank]);
    });
    std::vector<std::vector<Color>> out;
    for (const auto& s : sets)
        out.emplace_back(s.begin(), s.end());
    return out;
}

inline std::vector<std::vector<Color>> missing_colors(const std::vector<std::vector<Color>>& present, int k)
{
    std::vector<std::vector<Color>> out;
    for (const auto& p : present) {
        std::vector<Color> miss;
        for (Color c = 0; c < k; ++c)
            if (!std::binary_search(p.begin(), p.end(), c))
                miss.push_back(c);
        out.push_back(std::move(miss));
    }
    return out;
}

/// floor(n/(rt)) * ceil(t(1 - z)) + 1, the component count every class of the blow-up reaches.
inline std::int64_t blow_up_guarantee(int n, int r, int t, const Rational& z)
{
    BigInt slots = ceil_of(Rational(t) * (Rational(1) - z));
    return static_cast<std::int64_t>(BigInt(n / (r * t)) * slots + 1);
}

/// Lifts a coloring of K_t^r to K_n^r. Vertices are split into t equitable
/// parts. An edge meeting a set U of at least two parts takes the base color
/// of the colex-smallest base edge containing U. Inside part i, every color
/// missing at base vertex i gets its own maximum matching from a disjoint
/// family, and the remaining edges take the smallest color present at i.
inline Coloring blow_up(const BaseColoring& base, int n)
{
    const Coloring& bc = base.coloring;
    const int t = bc.n(), r = bc.r(), k = bc.k();
    require(n >= t, ErrorKind::precondition_failed, "n must be at least the base order");
    HypergraphShape shape(n, r);
    EquitableParts parts(n, t);
    auto present = colors_at_vertices(bc);
    auto missing = missing_colors(present, k);

    std::vector<std::vector<Color>> inner(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const int size = parts.size[ui];
        if (size < r)
            continue;
        HypergraphShape local(size, r);
        inner[ui].assign(local.m(), present[ui].front());
        MatchingDecomposition family;
        try {
            family = disjoint_max_matchings(size, r, static_cast<int>(missing[ui].size()));
        } catch (const Error&) {
            fail(ErrorKind::precondition_failed, "part of size " + std::to_string(size) + " cannot host " +
                                                     std::to_string(missing[ui].size()) + " disjoint maximum matchings");
        }
        for (std::size_t f = 0; f < family.factors.size(); ++f)
            for (const auto& e : family.factors[f])
                inner[ui][edge_rank(e, local).rank] = missing[ui][f];
    }
    // Without missing colors every part still needs r vertices for intra edges to exist;
    // an empty part breaks the lift.
    for (int s : parts.size)
        require(s >= 1, ErrorKind::precondition_failed, "empty part");

    Vertices uparts, superset(static_cast<std::size_t>(r)), local(static_cast<std::size_t>(r));
    Coloring out = coloring_from(shape, k, [&](std::span<const int> e) -> Color {
        uparts.clear();
        for (int v : e) {
            int p = parts.part_of[static_cast<std::size_t>(v)];
            if (uparts.empty() || uparts.back() != p)
                uparts.push_back(p);
        }
        if (uparts.size() == 1) {
            const auto ui = static_cast<std::size_t>(uparts[0]);
            for (std::size_t j = 0; j < e.size(); ++j)
                local[j] = e[j] - parts.start[ui];
            return inner[ui][edge_rank(local, HypergraphShape(parts.size[ui], r)).rank];
        }
        // colex-smallest base edge containing U: fill with the smallest other base vertices
        superset = uparts;
        for (int v = 0; static_cast<int>(superset.size()) < r; ++v)
            if (std::find(uparts.begin(), uparts.end(), v) == uparts.end())
                superset.push_back(v);
        std::sort(superset.begin(), superset.end());
        return bc.color_of(superset);
    });
    out = canonicalize(out);
    std::int64_t promised = blow_up_guarantee(n, r, t, base.realized_z);
    require(f_value(out) >= promised, ErrorKind::infeasible, "blow-up missed its component guarantee");
    return out;
}

/// Every class a matching with size in [lo, hi]; returns the first violation.
inline std::optional<std::string> check_matching_classes(const Coloring& c, std::uint64_t lo, std::uint64_t hi)
{
    for (const auto& s : class_stats(c)) {
        if (static_cast<std::uint64_t>(s.incident_vertices) != s.edge_count * static_cast<std::uint64_t>(c.r()))
            return "color " + std::to_string(s.color) + " is not a matching";
        if (s.edge_count < lo || s.edge_count > hi)
            return "color " + std::to_string(s.color) + " has " + std::to_string(s.edge_count) + " edges";
    }
    if (c.used_colors() != c.k())
        return "some color is unused";
    return std::nullopt;
}

inline Coloring coloring_from_decomposition(const MatchingDecomposition& d, int k)
{
    return coloring_from_classes(d.n, d.r, k, d.factors);
}

/// K_n with n-1 colors and floor(n/2) components per class: perfect matchings
/// for even n; for odd n each Hamiltonian cycle splits into a matching of
/// (n-1)/2 edges and a remainder with (n-1)/2 components.
inline Coloring coloring_nminus1(int n)
{
    require(n >= 3, ErrorKind::invalid_input, "coloring_nminus1 needs n >= 3");
    Coloring out = [&] {
        if (n % 2 == 0)
            return coloring_from_decomposition(one_factorization(n), n - 1);
        std::vector<std::vector<Vertices>> classes;
        for (const auto& cycle : hamiltonian_decomposition(n)) {
            std::vector<Vertices> matching, rest;
            for (std::size_t i = 0; i < cycle.size(); ++i)
                (i % 2 == 0 && i + 1 < cycle.size() ? matching : rest).push_back(cycle[i]);
            classes.push_back(std::move(matching));
            classes.push_back(std::move(rest));
        }
        return coloring_from_classes(n, 2, n - 1, classes);
    }();
    out = canonicalize(out);
    require(f_value(out) == n / 2, ErrorKind::infeasible, "coloring_nminus1 failed verification");
    return out;
}

/// K_n with n colors and floor((n-1)/2) components per class: a
/// near-1-factorization for odd n; for even n the (n-1)-coloring of K_{n+1}
/// with vertex n deleted.
inline Coloring coloring_n(int n)
{
    require(n >= 3, ErrorKind::invalid_input, "coloring_n needs n >= 3");
    Coloring out = [&] {
        if (n % 2 == 1)
            return coloring_from_decomposition(near_one_factorization(n), n);
        Coloring big = coloring_nminus1(n + 1);
        // Edges avoiding vertex n are exactly the first C(n,2) in colex order.
        HypergraphShape shape(n, 2);
        std::vector<Color> colors(big.colors().begin(), big.colors().begin() + static_cast<std::ptrdiff_t>(shape.m()));
        return Coloring(shape, n, std::move(colors));
    }();
    out = canonicalize(out);
    require(out.used_colors() == n && f_value(out) == (n - 1) / 2, ErrorKind::infeasible,
            "coloring_n failed verification");
    return out;
}

namespace detail {

// Recolors a proper matching coloring (every class a matching) of `edges`
// until all k class sizes differ by at most one. Moves swap the two colors on
// one component of the conflict graph restricted to a large and a small class,
// which keeps every class a matching. Falls back to a bounded exact search.
inline std::optional<std::vector<Color>> balance_matching_classes(int n, const std::vector<Vertices>& edges, int k,
                                                                  std::vector<Color> assign, std::uint64_t budget)
{
    const std::size_t N = edges.size();
    std::vector<std::vector<std::size_t>> at_vertex(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < N; ++e)
        for (int v : edges[e])
            at_vertex[static_cast<std::size_t>(v)].push_back(e);

    auto sizes_of = [&] {
        std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
        for (Color c : assign)
            ++sizes[static_cast<std::size_t>(c)];
        return sizes;
    };

    for (std::uint64_t step = 0; step < budget; ++step) {
        auto sizes = sizes_of();
        auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
        if (*mx - *mn <= 1)
            return assign;
        bool moved = false;
        std::vector<int> order(static_cast<std::size_t>(k));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sizes[static_cast<std::size_t>(a)] > sizes[static_cast<std::size_t>(b)]; });
        for (std::size_t bi = 0; bi < order.size() && !moved; ++bi) {
            for (std::size_t si = order.size(); si-- > bi + 1 && !moved;) {
                const Color big = order[bi], small = order[si];
                const std::int64_t gap = sizes[static_cast<std::size_t>(big)] - sizes[static_cast<std::size_t>(small)];
                if (gap < 2)
                    break;
                // components of the conflict graph on classes big and small
                std::vector<int> comp(N, -1);
                std::vector<std::vector<std::size_t>> members;
                for (std::size_t e = 0; e < N; ++e) {
                    if (comp[e] >= 0 || (assign[e] != big && assign[e] != small))
                        continue;
                    int id = static_cast<int>(members.size());
                    members.emplace_back();
                    std::vector<std::size_t> stack{e};
                    comp[e] = id;
                    while (!stack.empty()) {
                        std::size_t x = stack.back();
                        stack.pop_back();
                        members.back().push_back(x);
                        for (int v : edges[x])
                            for (std::size_t y : at_vertex[static_cast<std::size_t>(v)])
                                if (comp[y] < 0 && (assign[y] == big || assign[y] == small)) {
                                    comp[y] = id;
                                    stack.push_back(y);
                                }
                    }
                }
                int pick = -1;
                std::int64_t pick_score = 0;
                for (std::size_t c = 0; c < members.size(); ++c) {
                    std::int64_t d = 0;
                    for (std::size_t x : members[c])
                        d += assign[x] == big ? 1 : -1;
                    if (d <= 0 || d >= gap)
                        continue;
                    std::int64_t score = d * (gap - d);
                    if (score > pick_score) {
                        pick_score = score;
                        pick = static_cast<int>(c);
                    }
                }
                if (pick < 0)
                    continue;
                for (std::size_t x : members[static_cast<std::size_t>(pick)])
                    assign[x] = assign[x] == big ? small : big;
                moved = true;
            }
        }
        if (!moved)
            break;
    }

    // Exact search: sizes floor/ceil with the right number of large classes.
    const std::int64_t lo = static_cast<std::int64_t>(N) / k, extra = static_cast<std::int64_t>(N) % k;
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<char>> busy(static_cast<std::size_t>(k), std::vector<char>(static_cast<std::size_t>(n), 0));
    std::vector<Color> out(N, -1);
    std::int64_t big_used = 0;
    std::uint64_t nodes = 0;
    auto search = [&](auto&& self, std::size_t e, int opened) -> bool {
        if (++nodes > budget)
            return false;
        if (e == N)
            return opened == k;
        if (static_cast<std::int64_t>(N - e) < static_cast<std::int64_t>(k - opened))
            return false;
        for (int c = 0; c < std::min(k, opened + 1); ++c) {
            auto uc = static_cast<std::size_t>(c);
            std::int64_t cap = lo + (big_used < extra || sizes[uc] > lo ? 1 : 0);
            if (sizes[uc] >= cap)
                continue;
            bool clash = false;
            for (int v : edges[e])
                clash = clash || busy[uc][static_cast<std::size_t>(v)];
            if (clash)
                continue;
            if (sizes[uc] == lo)
                ++big_used;
            ++sizes[uc];
            for (int v : edges[e])
                busy[uc][static_cast<std::size_t>(v)] = 1;
            out[e] = c;
            if (self(self, e + 1, std::max(opened, c + 1)))
                return true;
            for (int v : edges[e])
                busy[uc][static_cast<std::size_t>(v)] = 0;
            --sizes[uc];
            if (sizes[uc] == lo)
                --big_used;
            if (nodes > budget)
                return false;
        }
        return false;
    };
    if (search(search, 0, 0))
        return out;
    return std::nullopt;
}

} // namespace detail

inline constexpr std::uint64_t repair_budget = 2'000'000;

/// K_n split into k matchings of exactly n(n-1)/(2k) edges (k >= n-1, k | C(n,2)).
inline Coloring coloring_tk2(int n, int k)
{
    require(n >= 2, ErrorKind::invalid_input, "coloring_tk2 needs n >= 2");
    require(n <= 14, ErrorKind::cap_exceeded, "coloring_tk2 capped at n <= 14");
    HypergraphShape shape(n, 2);
    const auto total = static_cast<std::int64_t>(shape.m());
    require(k >= n - 1, ErrorKind::invalid_input, "coloring_tk2 needs k >= n-1");
    require(k >= 1 && total % k == 0, ErrorKind::invalid_input, "k must divide C(n,2)");
    const std::int64_t t = total / k;
    auto base = n == 2 ? MatchingDecomposition{2, 2, true, {{{0, 1}}}}
                       : (n % 2 == 0 ? one_factorization(n) : near_one_factorization(n));
    const auto factor_size = static_cast<std::int64_t>(base.factors.front().size());
    Coloring out = [&] {
        if (factor_size % t == 0) {
            std::vector<std::vector<Vertices>> classes;
            for (const auto& f : base.factors)
                for (std::int64_t s = 0; s < factor_size; s += t)
                    classes.emplace_back(f.begin() + s, f.begin() + s + t);
            return coloring_from_classes(n, 2, k, classes);
        }
        require(static_cast<int>(base.factors.size()) <= k, ErrorKind::invalid_input, "too few colors");
        auto edges = all_edges(shape);
        std::vector<Color> assign(edges.size());
        for (std::size_t f = 0; f < base.factors.size(); ++f)
            for (const auto& e : base.factors[f])
                assign[edge_rank(e, shape).rank] = static_cast<Color>(f);
        auto balanced = detail::balance_matching_classes(n, edges, k, std::move(assign), repair_budget);
        require(balanced.has_value(), ErrorKind::repair_failed, "tK2 repair search exhausted its budget");
        return Coloring(shape, k, std::move(*balanced));
    }();
    out = canonicalize(out);
    if (auto problem = check_matching_classes(out, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(t)))
        fail(ErrorKind::repair_failed, "tK2 postcondition: " + *problem);
    return out;
}

/// Each Baranyai perfect matching of K_n^r split into t consecutive matchings of n/(rt) edges.
inline Coloring coloring_baranyai_split(int n, int r, int t)
{
    require(t >= 1 && r >= 2, ErrorKind::invalid_input, "need t >= 1, r >= 2");
    require(n % (r * t) == 0, ErrorKind::invalid_input, "r*t must divide n");
    auto dec = baranyai(n, r);
    const std::size_t piece = static_cast<std::size_t>(n / (r * t));
    std::vector<std::vector<Vertices>> classes;
    for (const auto& f : dec.factors)
        for (std::size_t s = 0; s < f.size(); s += piece)
            classes.emplace_back(f.begin() + static_cast<std::ptrdiff_t>(s), f.begin() + static_cast<std::ptrdiff_t>(s + piece));
    Coloring out = canonicalize(coloring_from_classes(n, r, static_cast<int>(classes.size()), classes));
    require(f_value(out) == n / (r * t), ErrorKind::infeasible, "baranyai split failed verification");
    return out;
}

inline constexpr std::uint64_t equitable_cap = 2000;

/// k matchings of floor or ceil(C(n,r)/k) edges, for k at least the line-graph degree plus one.
inline Coloring coloring_equitable(int n, int r, int k)
{
    HypergraphShape shape(n, r);
    require(shape.m() <= equitable_cap, ErrorKind::cap_exceeded, "coloring_equitable capped at C(n,r) <= 2000");
    const BigInt threshold = binomial(n, r) - binomial(n - r, r);
    require(k >= threshold, ErrorKind::invalid_input, "k below C(n,r) - C(n-r,r)");
    require(static_cast<std::uint64_t>(k) <= shape.m(), ErrorKind::invalid_input, "k exceeds C(n,r)");
    auto edges = all_edges(shape);
    // Greedy: each edge takes the least-filled color free at all its vertices.
    std::vector<std::vector<char>> busy(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(k), 0));
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    std::vector<Color> assign(edges.size(), -1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        Color best = -1;
        for (Color c = 0; c < k; ++c) {
            bool free = true;
            for (int v : edges[e])
                free = free && !busy[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
            if (free && (best < 0 || sizes[static_cast<std::size_t>(c)] < sizes[static_cast<std::size_t>(best)]))
                best = c;
        }
        require(best >= 0, ErrorKind::infeasible, "greedy line-graph coloring ran out of colors");
        assign[e] = best;
        ++sizes[static_cast<std::size_t>(best)];
        for (int v : edges[e])
            busy[static_cast<std::size_t>(v)][static_cast<std::size_t>(best)] = 1;
    }
    auto balanced = detail::balance_matching_classes(n, edges, k, std::move(assign), repair_budget);
    require(balanced.has_value(), ErrorKind::repair_failed, "equitable repair search exhausted its budget");
    Coloring out = canonicalize(Coloring(shape, k, std::move(*balanced)));
    const std::uint64_t lo = shape.m() / static_cast<std::uint64_t>(k);
    const std::uint64_t hi = lo + (shape.m() % static_cast<std::uint64_t>(k) != 0 ? 1 : 0);
    if (auto problem = check_matching_classes(out, lo, hi))
        fail(ErrorKind::repair_failed, "equitable postcondition: " + *problem);
    return out;
}

/// Coloring of K_{n,n}; cross edge (a_i, b_j) is colors[i*n + j].
struct BipartiteColoring {
    int n = 0;
    int k = 0;
    std::vector<Color> colors;

    Color at(int i, int j) const { return colors[static_cast<std::size_t>(i * n + j)]; }
    friend bool operator==(const BipartiteColoring&, const BipartiteColoring&) = default;
};

inline void validate(const BipartiteColoring& b)
{
    require(b.n >= 1 && b.k >= 1, ErrorKind::invalid_input, "bipartite coloring needs n, k >= 1");
    require(b.colors.size() == static_cast<std::size_t>(b.n) * static_cast<std::size_t>(b.n), ErrorKind::invalid_input,
            "bipartite coloring needs n^2 colors");
    for (Color c : b.colors)
        require(c >= 0 && c < b.k, ErrorKind::invalid_input, "color label out of range");
}

/// Side A vertices are 0..n-1, side B vertices n..2n-1.
inline std::vector<ColorClassStats> class_stats(const BipartiteColoring& b)
{
    validate(b);
    std::vector<std::vector<Vertices>> classes(static_cast<std::size_t>(b.k));
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j)
            classes[static_cast<std::size_t>(b.at(i, j))].push_back({i, b.n + j});
    std::vector<ColorClassStats> out;
    for (int c = 0; c < b.k; ++c)
        if (!classes[static_cast<std::size_t>(c)].empty())
            out.push_back(stats_of_edges(2 * b.n, classes[static_cast<std::size_t>(c)], c));
    return out;
}

/// (a_i, b_j) copies base edge (i,j) for i != j; (a_i, b_i) takes the
/// smallest color at base vertex i. Every color's incidence doubles.
inline BipartiteColoring bipartite_from_clique(const Coloring& base)
{
    require(base.r() == 2, ErrorKind::invalid_input, "bipartite_from_clique needs a graph coloring");
    const int t = base.n();
    auto present = colors_at_vertices(base);
    BipartiteColoring out{t, base.k(), std::vector<Color>(static_cast<std::size_t>(t * t))};
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            out.colors[static_cast<std::size_t>(i * t + j)] =
                i == j ? present[static_cast<std::size_t>(i)].front() : base.color_of(sorted_pair(i, j));
    return out;
}

/// K_{n,n} analog of blow_up over bipartite_from_clique(base): both sides split
/// into the same t equitable groups. Group pair (A_i, B_j), i != j, takes the
/// color of (a_i, b_j). In (A_i, B_i) the colors missing at i take the
/// Latin-square perfect matchings y - x = l (mod m); the rest take the
/// smallest color at i.
inline BipartiteColoring bipartite_blow_up(const BaseColoring& base, int n)
{
    const Coloring& bc = base.coloring;
    require(bc.r() == 2, ErrorKind::invalid_input, "bipartite_blow_up needs a graph base");
    const int t = bc.n(), k = bc.k();
    require(n >= t, ErrorKind::precondition_failed, "n must be at least the base order");
    BipartiteColoring clique = bipartite_from_clique(bc);
    auto missing = missing_colors(colors_at_vertices(bc), k);
    EquitableParts groups(n, t);
    for (int i = 0; i < t; ++i)
        require(static_cast<int>(missing[static_cast<std::size_t>(i)].size()) <= groups.size[static_cast<std::size_t>(i)],
                ErrorKind::precondition_failed, "group too small for its missing colors");
    BipartiteColoring out{n, k, std::vector<Color>(static_cast<std::size_t>(n) * static_cast<std::size_t>(n))};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int gi = groups.part_of[static_cast<std::size_t>(x)], gj = groups.part_of[static_cast<std::size_t>(y)];
            Color c = clique.at(gi, gj);
            if (gi == gj) {
                const auto ug = static_cast<std::size_t>(gi);
                const int m = groups.size[ug];
                int shift = ((y - groups.start[ug]) - (x - groups.start[ug]) + m) % m;
                if (shift < static_cast<int>(missing[ug].size()))
                    c = missing[ug][static_cast<std::size_t>(shift)];
            }
            out.colors[static_cast<std::size_t>(x * n + y)] = c;
        }
    return out;
}

/// Lower bound on the fewest components over classes of bipartite_blow_up.
inline std::int64_t bipartite_blow_up_guarantee(int n, int t, const Rational& z)
{
    BigInt slots = ceil_of(Rational(t) * (Rational(1) - z));
    return static_cast<std::int64_t>(BigInt(n / t) * slots) - t + 1;
}

} // namespace fracture
