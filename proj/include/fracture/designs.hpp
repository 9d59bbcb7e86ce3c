#pragma once

// Block designs and matching decompositions used to seed colorings.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "fracture/core.hpp"

namespace fracture {

inline bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

/// Returns {p, m} with q = p^m, or nullopt when q is not a prime power.
inline std::optional<std::pair<int, int>> prime_power(int q)
{
    if (q < 2)
        return std::nullopt;
    int p = 2;
    while (q % p != 0)
        ++p;
    int m = 0;
    while (q % p == 0) {
        q /= p;
        ++m;
    }
    if (q != 1)
        return std::nullopt;
    return std::pair{p, m};
}

/// GF(p^m) by explicit tables. Elements are 0..q-1; element x encodes the
/// polynomial sum_i d_i t^i where d_i are the base-p digits of x.
class FiniteField {
public:
    static constexpr int max_order = 64;

    FiniteField(int p, int m) : p_(p), m_(m)
    {
        require(is_prime(p), ErrorKind::invalid_input, std::to_string(p) + " is not prime");
        require(m >= 1, ErrorKind::invalid_input, "extension degree must be >= 1");
        q_ = 1;
        for (int i = 0; i < m; ++i) {
            q_ *= p;
            require(q_ <= max_order, ErrorKind::cap_exceeded, "field order exceeds 64");
        }
        modulus_ = find_irreducible();
        build_tables();
    }

    int p() const noexcept { return p_; }
    int m() const noexcept { return m_; }
    int q() const noexcept { return q_; }
    /// Monic modulus coefficients, low degree first (size m+1); {0,1} for prime fields.
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    int add(int a, int b) const { return add_[idx(a, b)]; }
    int mul(int a, int b) const { return mul_[idx(a, b)]; }
    int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int inv(int a) const
    {
        require(a != 0, ErrorKind::invalid_input, "zero has no inverse");
        return inv_[static_cast<std::size_t>(a)];
    }
    int div(int a, int b) const { return mul(a, inv(b)); }

private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * q_ + b); }

    std::vector<int> digits(int x, int len) const
    {
        std::vector<int> d(static_cast<std::size_t>(len), 0);
        for (int i = 0; i < len; ++i, x /= p_)
            d[static_cast<std::size_t>(i)] = x % p_;
        return d;
    }

    // Product of two polynomials (coefficients low degree first) over GF(p).
    std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b) const
    {
        std::vector<int> out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] = (out[i + j] + a[i] * b[j]) % p_;
        return out;
    }

    std::vector<int> monic(int degree, int code) const
    {
        auto c = digits(code, degree);
        c.push_back(1);
        return c;
    }

    // Smallest monic irreducible of degree m, scanning coefficients
    // (c_{m-1}, ..., c_0) lexicographically.
    std::vector<int> find_irreducible() const
    {
        if (m_ == 1)
            return {0, 1};
        std::set<std::vector<int>> reducible;
        for (int da = 1; da <= m_ / 2; ++da) {
            int db = m_ - da;
            int na = 1, nb = 1;
            for (int i = 0; i < da; ++i)
                na *= p_;
            for (int i = 0; i < db; ++i)
                nb *= p_;
            for (int a = 0; a < na; ++a)
                for (int b = 0; b < nb; ++b)
                    reducible.insert(poly_mul(monic(da, a), monic(db, b)));
        }
        for (int code = 0; code < q_; ++code) {
            // code's base-p digits are read most significant first as c_{m-1}..c_0
            std::vector<int> c(static_cast<std::size_t>(m_) + 1, 0);
            c[static_cast<std::size_t>(m_)] = 1;
            int x = code;
            for (int i = 0; i < m_; ++i, x /= p_)
                c[static_cast<std::size_t>(i)] = x % p_;
            if (!reducible.count(c))
                return c;
        }
        fail(ErrorKind::infeasible, "no irreducible polynomial found");
    }

    void build_tables()
    {
        auto sz = static_cast<std::size_t>(q_);
        add_.assign(sz * sz, 0);
        mul_.assign(sz * sz, 0);
        neg_.assign(sz, 0);
        inv_.assign(sz, 0);
        auto encode = [&](const std::vector<int>& d) {
            int x = 0;
            for (int i = m_ - 1; i >= 0; --i)
                x = x * p_ + d[static_cast<std::size_t>(i)];
            return x;
        };
        for (int a = 0; a < q_; ++a) {
            auto da = digits(a, m_);
            for (int b = 0; b < q_; ++b) {
                auto db = digits(b, m_);
                std::vector<int> s(static_cast<std::size_t>(m_));
                for (int i = 0; i < m_; ++i)
                    s[static_cast<std::size_t>(i)] = (da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)]) % p_;
                add_[idx(a, b)] = encode(s);
                auto prod = poly_mul(da, db);
                for (int deg = static_cast<int>(prod.size()) - 1; deg >= m_; --deg) {
                    int lead = prod[static_cast<std::size_t>(deg)];
                    if (lead == 0)
                        continue;
                    for (int i = 0; i <= m_; ++i) {
                        auto& slot = prod[static_cast<std::size_t>(deg - m_ + i)];
                        slot = ((slot - lead * modulus_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
                    }
                }
                prod.resize(static_cast<std::size_t>(m_));
                mul_[idx(a, b)] = encode(prod);
            }
        }
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) {
                if (add_[idx(a, b)] == 0)
                    neg_[static_cast<std::size_t>(a)] = b;
                if (mul_[idx(a, b)] == 1)
                    inv_[static_cast<std::size_t>(a)] = b;
            }
    }

    int p_, m_, q_ = 1;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_;
};

inline FiniteField gf(int p, int m) { return FiniteField(p, m); }

inline FiniteField gf_of_order(int q)
{
    auto pm = prime_power(q);
    require(pm.has_value(), ErrorKind::invalid_input, std::to_string(q) + " is not a prime power");
    return FiniteField(pm->first, pm->second);
}

/// Block system; lambda is 1 throughout.
struct Design {
    int v = 0;
    int strength = 2;
    int block_size = 0;
    int lambda = 1;
    std::vector<Vertices> blocks;

    friend bool operator==(const Design&, const Design&) = default;
};

inline void normalize_blocks(std::vector<Vertices>& blocks)
{
    for (auto& b : blocks)
        std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

/// Exhaustive check that every strength-subset lies in exactly lambda blocks.
inline std::optional<std::string> check_design(const Design& d)
{
    if (d.strength < 2 || d.v < d.block_size || d.block_size < d.strength)
        return "inconsistent design parameters";
    for (const auto& b : d.blocks) {
        if (static_cast<int>(b.size()) != d.block_size)
            return "block of wrong size";
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b[i] < 0 || b[i] >= d.v || (i > 0 && b[i - 1] >= b[i]))
                return "block not a sorted subset of the point set";
    }
    HypergraphShape shape(d.v, d.strength);
    std::vector<int> hits(shape.m(), 0);
    for (const auto& b : d.blocks) {
        HypergraphShape inner(d.block_size, d.strength);
        Vertices sub(static_cast<std::size_t>(d.strength));
        for_each_edge(inner, [&](std::uint64_t, std::span<const int> pos) {
            for (std::size_t i = 0; i < pos.size(); ++i)
                sub[i] = b[static_cast<std::size_t>(pos[i])];
            ++hits[edge_rank(sub, shape).rank];
        });
    }
    for (int h : hits)
        if (h != d.lambda)
            return "some " + std::to_string(d.strength) + "-subset is covered " + std::to_string(h) + " times";
    return std::nullopt;
}

inline void require_desk_plane_order(int q)
{
    require(prime_power(q).has_value(), ErrorKind::invalid_input, std::to_string(q) + " is not a prime power");
    require(q <= 8, ErrorKind::cap_exceeded, "plane order capped at 8");
}

/// PG(2,q): points and lines are the 1-dim subspaces of GF(q)^3.
inline Design projective_plane(int q)
{
    require_desk_plane_order(q);
    FiniteField F = gf_of_order(q);
    std::vector<std::array<int, 3>> points;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c) {
                std::array<int, 3> x{a, b, c};
                int lead = a != 0 ? a : (b != 0 ? b : c);
                if (lead == 1)
                    points.push_back(x);
            }
    Design d{static_cast<int>(points.size()), 2, q + 1, 1, {}};
    for (const auto& line : points) {
        Vertices block;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& x = points[i];
            int dot = F.add(F.add(F.mul(x[0], line[0]), F.mul(x[1], line[1])), F.mul(x[2], line[2]));
            if (dot == 0)
                block.push_back(static_cast<int>(i));
        }
        d.blocks.push_back(std::move(block));
    }
    normalize_blocks(d.blocks);
    return d;
}

/// AG(2,q): point (x,y) is index x*q+y; lines y = mx+b and x = c.
inline Design affine_plane(int q)
{
    require_desk_plane_order(q);
    FiniteField F = gf_of_order(q);
    Design d{q * q, 2, q, 1, {}};
    for (int m = 0; m < q; ++m)
        for (int b = 0; b < q; ++b) {
            Vertices block;
            for (int x = 0; x < q; ++x)
                block.push_back(x * q + F.add(F.mul(m, x), b));
            d.blocks.push_back(std::move(block));
        }
    for (int c = 0; c < q; ++c) {
        Vertices block;
        for (int y = 0; y < q; ++y)
            block.push_back(c * q + y);
        d.blocks.push_back(std::move(block));
    }
    normalize_blocks(d.blocks);
    return d;
}

/// Boolean Steiner quadruple system on 2^m points: 4-sets with zero XOR.
inline Design boolean_sqs(int m)
{
    require(m >= 3, ErrorKind::invalid_input, "boolean SQS needs m >= 3");
    require(m <= 4, ErrorKind::cap_exceeded, "boolean SQS capped at 2^m <= 16");
    int v = 1 << m;
    Design d{v, 3, 4, 1, {}};
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            for (int c = b + 1; c < v; ++c) {
                int x = a ^ b ^ c;
                if (x > c)
                    d.blocks.push_back({a, b, c, x});
            }
    normalize_blocks(d.blocks);
    return d;
}

/// Inversive plane 3-(q^2+1, q+1, 1): images of the GF(q) subline of the
/// projective line over GF(q^2) under fractional-linear maps.
inline Design inversive_plane(int q)
{
    require(q == 2 || q == 3, ErrorKind::cap_exceeded, "inversive plane supported for q in {2,3}");
    FiniteField F(q, 2);
    const int Q = F.q();
    const int inf = Q;
    auto apply = [&](int a, int b, int c, int d, int x) {
        if (x == inf)
            return c == 0 ? inf : F.div(a, c);
        int den = F.add(F.mul(c, x), d);
        if (den == 0)
            return inf;
        return F.div(F.add(F.mul(a, x), b), den);
    };
    // Constant polynomials 0..q-1 form the subfield GF(q).
    Vertices subline;
    for (int x = 0; x < q; ++x)
        subline.push_back(x);
    subline.push_back(inf);
    std::set<Vertices> blocks;
    for (int a = 0; a < Q; ++a)
        for (int b = 0; b < Q; ++b)
            for (int c = 0; c < Q; ++c)
                for (int d = 0; d < Q; ++d) {
                    if (F.sub(F.mul(a, d), F.mul(b, c)) == 0)
                        continue;
                    Vertices img;
                    for (int x : subline)
                        img.push_back(apply(a, b, c, d, x));
                    std::sort(img.begin(), img.end());
                    blocks.insert(std::move(img));
                }
    Design out{Q + 1, 3, q + 1, 1, {blocks.begin(), blocks.end()}};
    return out;
}

/// Pairwise edge-disjoint matchings in K_n^r; `complete` means they partition all edges.
struct MatchingDecomposition {
    int n = 0;
    int r = 2;
    bool complete = false;
    std::vector<std::vector<Vertices>> factors;

    friend bool operator==(const MatchingDecomposition&, const MatchingDecomposition&) = default;
};

/// Checks edge validity, vertex-disjointness inside factors, edge-disjointness
/// across factors, and (when complete) coverage of every edge. `factor_size`
/// of -1 skips the per-factor size check.
inline std::optional<std::string> check_decomposition(const MatchingDecomposition& d, int factor_size = -1)
{
    HypergraphShape shape(d.n, d.r);
    std::vector<char> used(shape.m(), 0);
    std::uint64_t covered = 0;
    for (std::size_t f = 0; f < d.factors.size(); ++f) {
        const auto& factor = d.factors[f];
        if (factor_size >= 0 && static_cast<int>(factor.size()) != factor_size)
            return "factor " + std::to_string(f) + " has " + std::to_string(factor.size()) + " edges";
        std::vector<char> seen(static_cast<std::size_t>(d.n), 0);
        for (const auto& e : factor) {
            EdgeId id;
            try {
                id = edge_rank(e, shape);
            } catch (const Error& err) {
                return std::string("invalid edge: ") + err.what();
            }
            for (int v : e)
                if (seen[static_cast<std::size_t>(v)]++)
                    return "factor " + std::to_string(f) + " is not a matching";
            if (used[id.rank]++)
                return "edge used twice";
            ++covered;
        }
    }
    if (d.complete && covered != shape.m())
        return "decomposition does not cover every edge";
    return std::nullopt;
}

inline Vertices sorted_pair(int a, int b) { return a < b ? Vertices{a, b} : Vertices{b, a}; }

/// Round-robin (circle method) 1-factorization of K_n, n even.
inline MatchingDecomposition one_factorization(int n)
{
    require(n >= 2 && n % 2 == 0, ErrorKind::invalid_input, "one_factorization needs even n >= 2");
    MatchingDecomposition d{n, 2, true, {}};
    const int m = n - 1;
    for (int round = 0; round < m; ++round) {
        std::vector<Vertices> factor{sorted_pair(round, n - 1)};
        for (int j = 1; j < n / 2; ++j)
            factor.push_back(sorted_pair((round + j) % m, (round - j + m) % m));
        d.factors.push_back(std::move(factor));
    }
    return d;
}

/// n matchings of (n-1)/2 edges for odd n; round i leaves vertex i exposed.
inline MatchingDecomposition near_one_factorization(int n)
{
    require(n >= 3 && n % 2 == 1, ErrorKind::invalid_input, "near_one_factorization needs odd n >= 3");
    MatchingDecomposition d{n, 2, true, {}};
    for (int round = 0; round < n; ++round) {
        std::vector<Vertices> factor;
        for (int j = 1; j <= (n - 1) / 2; ++j)
            factor.push_back(sorted_pair((round + j) % n, (round - j + n) % n));
        d.factors.push_back(std::move(factor));
    }
    return d;
}

/// Walecki decomposition of K_n (n odd) into (n-1)/2 Hamiltonian cycles.
/// Each cycle lists its edges in traversal order.
inline std::vector<std::vector<Vertices>> hamiltonian_decomposition(int n)
{
    require(n >= 3 && n % 2 == 1, ErrorKind::invalid_input, "hamiltonian_decomposition needs odd n >= 3");
    const int half = (n - 1) / 2, ring = n - 1, hub = n - 1;
    std::vector<std::vector<Vertices>> cycles;
    for (int i = 0; i < half; ++i) {
        Vertices walk{hub, i};
        for (int j = 1; j <= half; ++j) {
            walk.push_back((i + j) % ring);
            if (j < half)
                walk.push_back((i - j + ring) % ring);
        }
        walk.push_back(hub);
        std::vector<Vertices> edges;
        for (std::size_t s = 0; s + 1 < walk.size(); ++s)
            edges.push_back(sorted_pair(walk[s], walk[s + 1]));
        cycles.push_back(std::move(edges));
    }
    return cycles;
}

/// Cycle check for hamiltonian_decomposition output: each list is a closed
/// walk through all n vertices, and the lists partition the edges of K_n.
inline std::optional<std::string> check_hamiltonian_decomposition(int n, const std::vector<std::vector<Vertices>>& cycles)
{
    HypergraphShape shape(n, 2);
    std::vector<char> used(shape.m(), 0);
    std::uint64_t covered = 0;
    for (const auto& cyc : cycles) {
        if (static_cast<int>(cyc.size()) != n)
            return "cycle of wrong length";
        std::vector<int> degree(static_cast<std::size_t>(n), 0);
        DisjointSets dsu(n);
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const auto& e = cyc[i];
            const auto& next = cyc[(i + 1) % cyc.size()];
            bool shares = e[0] == next[0] || e[0] == next[1] || e[1] == next[0] || e[1] == next[1];
            if (!shares)
                return "consecutive edges do not meet";
            ++degree[static_cast<std::size_t>(e[0])];
            ++degree[static_cast<std::size_t>(e[1])];
            dsu.unite(e[0], e[1]);
            auto id = edge_rank(e, shape);
            if (used[id.rank]++)
                return "edge used twice";
            ++covered;
        }
        for (int v = 0; v < n; ++v)
            if (degree[static_cast<std::size_t>(v)] != 2 || dsu.find(v) != dsu.find(0))
                return "not a Hamiltonian cycle";
    }
    if (covered != shape.m())
        return "cycles do not cover every edge";
    return std::nullopt;
}

namespace detail {

// Dinic max flow over integer capacities.
class MaxFlow {
public:
    explicit MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

    int add_edge(int from, int to, std::int64_t cap)
    {
        adj_[static_cast<std::size_t>(from)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({to, cap});
        adj_[static_cast<std::size_t>(to)].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({from, 0});
        return static_cast<int>(arcs_.size()) - 2;
    }

    std::int64_t flow_on(int arc) const { return arcs_[static_cast<std::size_t>(arc) ^ 1U].cap; }

    std::int64_t run(int s, int t)
    {
        std::int64_t total = 0;
        while (bfs(s, t)) {
            iter_.assign(adj_.size(), 0);
            while (std::int64_t pushed = dfs(s, t, std::numeric_limits<std::int64_t>::max()))
                total += pushed;
        }
        return total;
    }

private:
    struct Arc {
        int to;
        std::int64_t cap;
    };

    bool bfs(int s, int t)
    {
        level_.assign(adj_.size(), -1);
        std::queue<int> q;
        level_[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int a : adj_[static_cast<std::size_t>(u)]) {
                const auto& arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] < 0) {
                    level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(u)] + 1;
                    q.push(arc.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(t)] >= 0;
    }

    std::int64_t dfs(int u, int t, std::int64_t limit)
    {
        if (u == t)
            return limit;
        auto& it = iter_[static_cast<std::size_t>(u)];
        const auto& out = adj_[static_cast<std::size_t>(u)];
        for (; it < out.size(); ++it) {
            int a = out[it];
            auto& arc = arcs_[static_cast<std::size_t>(a)];
            if (arc.cap <= 0 || level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(u)] + 1)
                continue;
            if (std::int64_t got = dfs(arc.to, t, std::min(limit, arc.cap))) {
                arc.cap -= got;
                arcs_[static_cast<std::size_t>(a) ^ 1U].cap += got;
                return got;
            }
        }
        return 0;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<std::size_t> iter_;
};

inline std::uint64_t checked_edge_count(int n, int r, std::uint64_t cap)
{
    BigInt m = binomial(n, r);
    require(m <= cap, ErrorKind::cap_exceeded, "C(n,r) exceeds the desk cap");
    return static_cast<std::uint64_t>(m);
}

inline void sort_factors(std::vector<std::vector<Vertices>>& factors)
{
    for (auto& f : factors)
        std::sort(f.begin(), f.end());
}

} // namespace detail

inline constexpr std::uint64_t baranyai_cap = 100'000;
inline constexpr std::uint64_t baranyai_backtrack_cap = 200;

/// Plain backtracking partition of all r-subsets into perfect matchings
/// (exponential; for tiny instances).
inline std::optional<MatchingDecomposition> baranyai_backtrack(int n, int r, std::uint64_t node_budget = 50'000'000)
{
    require(r >= 2 && r <= n && n % r == 0, ErrorKind::invalid_input, "baranyai needs r | n");
    HypergraphShape shape(n, r);
    auto edges = all_edges(shape);
    const std::size_t per_factor = static_cast<std::size_t>(n / r);
    const std::size_t factor_count = edges.size() / per_factor;
    std::vector<char> used(edges.size(), 0);
    std::vector<std::vector<std::size_t>> factors(factor_count);
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    std::uint64_t nodes = 0;

    // Fill factor f slot by slot; each slot takes the smallest uncovered vertex.
    // Factors are ordered by their edge through vertex 0.
    auto search = [&](auto&& self, std::size_t f) -> bool {
        if (++nodes > node_budget)
            return false;
        if (f == factor_count)
            return true;
        auto& factor = factors[f];
        if (factor.size() == per_factor) {
            std::fill(covered.begin(), covered.end(), 0);
            if (self(self, f + 1))
                return true;
            std::fill(covered.begin(), covered.end(), 1);
            return false;
        }
        int pivot = 0;
        while (covered[static_cast<std::size_t>(pivot)])
            ++pivot;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const auto& edge = edges[e];
            if (used[e] || std::find(edge.begin(), edge.end(), pivot) == edge.end())
                continue;
            bool clash = false;
            for (int v : edge)
                clash = clash || covered[static_cast<std::size_t>(v)];
            if (clash)
                continue;
            const bool opening = factor.empty();
            used[e] = 1;
            for (int v : edge)
                covered[static_cast<std::size_t>(v)] = 1;
            factor.push_back(e);
            if (self(self, f))
                return true;
            factor.pop_back();
            for (int v : edge)
                covered[static_cast<std::size_t>(v)] = 0;
            used[e] = 0;
            if (opening || nodes > node_budget)
                return false;
        }
        return false;
    };
    if (!search(search, 0))
        return std::nullopt;
    MatchingDecomposition d{n, r, true, {}};
    for (const auto& f : factors) {
        std::vector<Vertices> factor;
        for (std::size_t e : f)
            factor.push_back(edges[e]);
        d.factors.push_back(std::move(factor));
    }
    detail::sort_factors(d.factors);
    return d;
}

/// Decomposition of K_n^r (r | n) into C(n-1,r-1) perfect matchings by the
/// vertex-by-vertex integral flow rounding. Each of the C(n-1,r-1) partial
/// partitions holds n/r growing parts; when vertex i is added, an integral
/// max flow picks the part of each partition that receives it, so that every
/// set S of size < r over the first i vertices is extended exactly
/// C(n-i-1, r-|S|-1) times.
inline MatchingDecomposition baranyai(int n, int r)
{
    require(r >= 2 && r <= n, ErrorKind::invalid_input, "baranyai needs 2 <= r <= n");
    require(n % r == 0, ErrorKind::invalid_input, "baranyai needs r | n");
    detail::checked_edge_count(n, r, baranyai_cap);
    const int parts = n / r;
    const auto count = static_cast<std::size_t>(choose64(n - 1, r - 1));
    std::vector<std::vector<Vertices>> partitions(count, std::vector<Vertices>(static_cast<std::size_t>(parts)));

    for (int vertex = 0; vertex < n; ++vertex) {
        std::map<Vertices, int> set_node;
        for (const auto& partition : partitions)
            for (const auto& part : partition)
                if (static_cast<int>(part.size()) < r)
                    set_node.emplace(part, 0);
        int next = static_cast<int>(count) + 1;
        for (auto& [set, id] : set_node)
            id = next++;
        const int source = 0, sink = next;
        detail::MaxFlow flow(sink + 1);
        std::vector<std::vector<std::pair<int, int>>> choice_arcs(count);
        for (std::size_t j = 0; j < count; ++j) {
            flow.add_edge(source, static_cast<int>(j) + 1, 1);
            std::map<int, std::int64_t> multiplicity;
            for (const auto& part : partitions[j])
                if (static_cast<int>(part.size()) < r)
                    ++multiplicity[set_node.at(part)];
            for (auto [node, mult] : multiplicity)
                choice_arcs[j].emplace_back(node, flow.add_edge(static_cast<int>(j) + 1, node, mult));
        }
        for (const auto& [set, id] : set_node)
            flow.add_edge(id, sink, static_cast<std::int64_t>(choose64(n - vertex - 1, r - static_cast<int>(set.size()) - 1)));
        std::int64_t got = flow.run(source, sink);
        require(got == static_cast<std::int64_t>(count), ErrorKind::infeasible, "integral flow rounding failed");

        std::vector<const Vertices*> by_node(static_cast<std::size_t>(next), nullptr);
        for (const auto& [set, id] : set_node)
            by_node[static_cast<std::size_t>(id)] = &set;
        for (std::size_t j = 0; j < count; ++j) {
            for (auto [node, arc] : choice_arcs[j]) {
                if (flow.flow_on(arc) == 0)
                    continue;
                const Vertices target = *by_node[static_cast<std::size_t>(node)];
                auto it = std::find(partitions[j].begin(), partitions[j].end(), target);
                it->push_back(vertex);
                break;
            }
        }
    }
    MatchingDecomposition d{n, r, true, std::move(partitions)};
    detail::sort_factors(d.factors);
    std::sort(d.factors.begin(), d.factors.end());
    if (check_decomposition(d, parts)) {
        if (binomial(n, r) <= baranyai_backtrack_cap)
            if (auto fallback = baranyai_backtrack(n, r))
                return *fallback;
        fail(ErrorKind::infeasible, "baranyai construction failed verification");
    }
    return d;
}

/// t pairwise edge-disjoint matchings of floor(n/r) edges each (not
/// necessarily covering K_n^r). For r = 2 the feasibility rule is n >= t+1.
/// For r >= 3 the matchings come from a Baranyai decomposition of the first
/// r*floor(n/r) vertices, topped up by a bounded greedy search.
inline MatchingDecomposition disjoint_max_matchings(int n, int r, int t)
{
    require(t >= 0, ErrorKind::invalid_input, "t must be >= 0");
    require(r >= 2 && n >= 1, ErrorKind::invalid_input, "need r >= 2 and n >= 1");
    MatchingDecomposition out{n, r, false, {}};
    if (t == 0)
        return out;
    require(n >= r, ErrorKind::infeasible, "no edges: n < r");
    if (r == 2) {
        const int available = n % 2 == 0 ? n - 1 : n;
        require(t <= available, ErrorKind::infeasible,
                "K_" + std::to_string(n) + " has only " + std::to_string(available) + " disjoint maximum matchings");
        if (n == 2) {
            out.factors.push_back({{0, 1}});
            return out;
        }
        auto full = n % 2 == 0 ? one_factorization(n) : near_one_factorization(n);
        full.factors.resize(static_cast<std::size_t>(t));
        full.complete = false;
        return full;
    }
    const int size = n / r, base = size * r;
    std::vector<std::vector<Vertices>> found;
    if (binomial(base, r) <= baranyai_cap)
        found = baranyai(base, r).factors;
    std::set<Vertices> used;
    for (const auto& f : found)
        for (const auto& e : f)
            used.insert(e);
    // Extra matchings over all n vertices from edges not yet used.
    if (static_cast<int>(found.size()) < t && n > base) {
        auto edges = all_edges(HypergraphShape(n, r));
        std::uint64_t budget = 2'000'000;
        while (static_cast<int>(found.size()) < t) {
            std::vector<Vertices> matching;
            std::vector<char> covered(static_cast<std::size_t>(n), 0);
            auto extend = [&](auto&& self, std::size_t from) -> bool {
                if (budget == 0)
                    return false;
                --budget;
                if (static_cast<int>(matching.size()) == size)
                    return true;
                for (std::size_t e = from; e < edges.size(); ++e) {
                    const auto& edge = edges[e];
                    if (used.count(edge))
                        continue;
                    bool clash = false;
                    for (int v : edge)
                        clash = clash || covered[static_cast<std::size_t>(v)];
                    if (clash)
                        continue;
                    for (int v : edge)
                        covered[static_cast<std::size_t>(v)] = 1;
                    matching.push_back(edge);
                    if (self(self, e + 1))
                        return true;
                    matching.pop_back();
                    for (int v : edge)
                        covered[static_cast<std::size_t>(v)] = 0;
                    if (budget == 0)
                        return false;
                }
                return false;
            };
            if (!extend(extend, 0))
                break;
            for (const auto& e : matching)
                used.insert(e);
            std::sort(matching.begin(), matching.end());
            found.push_back(std::move(matching));
        }
    }
    require(static_cast<int>(found.size()) >= t, ErrorKind::infeasible,
            "could not find " + std::to_string(t) + " disjoint maximum matchings in K_" + std::to_string(n) + "^" +
                std::to_string(r));
    found.resize(static_cast<std::size_t>(t));
    out.factors = std::move(found);
    return out;
}

/// Edge-disjoint copies of K4 minus an edge covering K_n (n in {10, 11}).
/// Each copy is its 5 edges sorted; the search order is fixed, so the result
/// is deterministic. For n = 11 the search is over Z_11-invariant decompositions.
inline std::vector<std::vector<Vertices>> k4minus_decomposition(int n)
{
    require(n == 10 || n == 11, ErrorKind::invalid_input, "K4- decomposition supported for n in {10, 11}");
    if (n == 11) {
        // Z_11 acts regularly: find one piece whose five edges realize each
        // difference +-1..+-5 once, then take its 11 translates.
        for (int b = 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    Vertices quad{0, b, c, d};
                    for (int i = 0; i < 4; ++i)
                        for (int j = i + 1; j < 4; ++j) {
                            std::vector<Vertices> piece;
                            std::vector<char> diff(static_cast<std::size_t>(n / 2 + 1), 0);
                            bool ok = true;
                            for (int x = 0; x < 4 && ok; ++x)
                                for (int y = x + 1; y < 4 && ok; ++y) {
                                    if (x == i && y == j)
                                        continue;
                                    int delta = quad[static_cast<std::size_t>(y)] - quad[static_cast<std::size_t>(x)];
                                    delta = std::min(delta, n - delta);
                                    ok = !diff[static_cast<std::size_t>(delta)]++;
                                    piece.push_back({quad[static_cast<std::size_t>(x)], quad[static_cast<std::size_t>(y)]});
                                }
                            if (!ok)
                                continue;
                            std::vector<std::vector<Vertices>> out;
                            for (int shift = 0; shift < n; ++shift) {
                                std::vector<Vertices> moved;
                                for (const auto& e : piece)
                                    moved.push_back(sorted_pair((e[0] + shift) % n, (e[1] + shift) % n));
                                std::sort(moved.begin(), moved.end());
                                out.push_back(std::move(moved));
                            }
                            std::sort(out.begin(), out.end());
                            return out;
                        }
                }
        fail(ErrorKind::infeasible, "no cyclic K4- decomposition found");
    }
    std::vector<Vertices> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            pairs.push_back({a, b});
    auto index = [n](int a, int b) {
        if (a > b)
            std::swap(a, b);
        // lexicographic pair index
        return a * (2 * n - a - 1) / 2 + (b - a - 1);
    };
    std::vector<char> covered(pairs.size(), 0);
    std::vector<int> open_degree(static_cast<std::size_t>(n), n - 1);
    std::vector<std::vector<Vertices>> chosen;

    // Pieces have vertex degrees 3,3,2,2, so a vertex left with exactly one
    // uncovered edge can never be finished.
    auto cover = [&](const std::vector<Vertices>& copy, char value) {
        int step = value ? -1 : 1;
        bool stuck = false;
        for (const auto& e : copy) {
            covered[static_cast<std::size_t>(index(e[0], e[1]))] = value;
            for (int v : e)
                open_degree[static_cast<std::size_t>(v)] += step;
        }
        for (const auto& e : copy)
            for (int v : e)
                stuck = stuck || open_degree[static_cast<std::size_t>(v)] == 1;
        return !stuck;
    };

    // Free copies of K4 minus an edge that contain the pair ab.
    auto candidates_for = [&](int a, int b) {
        std::vector<std::vector<Vertices>> candidates;
        for (int c = 0; c < n; ++c)
            for (int d = c + 1; d < n; ++d) {
                if (c == a || c == b || d == a || d == b)
                    continue;
                Vertices quad{a, b, c, d};
                std::sort(quad.begin(), quad.end());
                std::vector<Vertices> six;
                for (int i = 0; i < 4; ++i)
                    for (int j = i + 1; j < 4; ++j)
                        six.push_back({quad[static_cast<std::size_t>(i)], quad[static_cast<std::size_t>(j)]});
                for (std::size_t miss = 0; miss < six.size(); ++miss) {
                    if (six[miss] == Vertices{a, b})
                        continue;
                    std::vector<Vertices> copy;
                    bool free = true;
                    for (std::size_t i = 0; i < six.size() && free; ++i)
                        if (i != miss) {
                            free = !covered[static_cast<std::size_t>(index(six[i][0], six[i][1]))];
                            copy.push_back(six[i]);
                        }
                    if (free)
                        candidates.push_back(std::move(copy));
                }
            }
        return candidates;
    };

    // Branch on the uncovered pair with the fewest free copies (first such
    // pair in lexicographic order), trying copies in lexicographic order.
    auto search = [&](auto&& self) -> bool {
        std::optional<std::vector<std::vector<Vertices>>> fewest;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if (covered[p])
                continue;
            auto c = candidates_for(pairs[p][0], pairs[p][1]);
            if (!fewest || c.size() < fewest->size())
                fewest = std::move(c);
            if (fewest->size() <= 1)
                break;
        }
        if (!fewest)
            return true;
        auto candidates = std::move(*fewest);
        std::sort(candidates.begin(), candidates.end());
        for (const auto& copy : candidates) {
            chosen.push_back(copy);
            if (cover(copy, 1) && self(self))
                return true;
            chosen.pop_back();
            cover(copy, 0);
        }
        return false;
    };
    require(search(search), ErrorKind::infeasible, "no K4- decomposition found");
    return chosen;
}

} // namespace fracture
