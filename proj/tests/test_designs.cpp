#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fracture/designs.hpp"
#include "oracles.hpp"

using namespace fracture;

namespace {

// Counts, for every t-subset of points, how many blocks contain it.
bool covers_exactly_once(const Design& d)
{
    std::map<std::vector<int>, int> hits;
    for (const auto& b : d.blocks) {
        std::set<int> s(b.begin(), b.end());
        if (static_cast<int>(s.size()) != d.block_size)
            return false;
        for (const auto& sub : oracle::colex_edges(d.block_size, d.strength)) {
            std::vector<int> pts;
            for (int i : sub)
                pts.push_back(b[static_cast<std::size_t>(i)]);
            ++hits[pts];
        }
    }
    for (const auto& sub : oracle::colex_edges(d.v, d.strength))
        if (hits[sub] != 1)
            return false;
    return hits.size() == oracle::colex_edges(d.v, d.strength).size();
}

// Factors are vertex-disjoint inside, edge-disjoint across, and together cover K_n^r.
bool is_matching_partition(const MatchingDecomposition& d)
{
    std::set<std::vector<int>> seen;
    for (const auto& f : d.factors) {
        std::set<int> used;
        for (const auto& e : f) {
            for (int v : e)
                if (!used.insert(v).second)
                    return false;
            if (!seen.insert(e).second)
                return false;
        }
    }
    return seen.size() == oracle::colex_edges(d.n, d.r).size();
}

} // namespace

TEST(FiniteField, AxiomsForEveryDeskOrder)
{
    for (int q = 2; q <= 32; ++q) {
        auto pp = prime_power(q);
        if (!pp)
            continue;
        FiniteField F = gf_of_order(q);
        ASSERT_EQ(F.q(), q);
        for (int a = 0; a < q; ++a) {
            EXPECT_EQ(F.add(a, 0), a);
            EXPECT_EQ(F.mul(a, 1), a);
            EXPECT_EQ(F.add(a, F.neg(a)), 0);
            if (a != 0) {
                EXPECT_EQ(F.mul(a, F.inv(a)), 1);
            }
            for (int b = 0; b < q; ++b) {
                EXPECT_EQ(F.add(a, b), F.add(b, a));
                EXPECT_EQ(F.mul(a, b), F.mul(b, a));
                if (a != 0 && b != 0) {
                    EXPECT_NE(F.mul(a, b), 0);
                }
                for (int c = 0; c < q; c += 3)
                    EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            }
        }
    }
}

TEST(FiniteField, RejectsNonPrimePowers)
{
    EXPECT_FALSE(prime_power(6).has_value());
    EXPECT_FALSE(prime_power(12).has_value());
    EXPECT_EQ(prime_power(8), (std::pair<int, int>{2, 3}));
    EXPECT_EQ(prime_power(9), (std::pair<int, int>{3, 2}));
    EXPECT_THROW(gf_of_order(10), Error);
    EXPECT_THROW(projective_plane(6), Error);
}

TEST(Designs, ProjectivePlanes)
{
    for (int q : {2, 3, 4, 5, 7, 8}) {
        auto d = projective_plane(q);
        EXPECT_EQ(d.v, q * q + q + 1);
        EXPECT_EQ(d.block_size, q + 1);
        EXPECT_EQ(static_cast<int>(d.blocks.size()), q * q + q + 1);
        EXPECT_FALSE(check_design(d).has_value()) << q;
        if (q <= 5) {
            EXPECT_TRUE(covers_exactly_once(d)) << q;
        }
    }
}

TEST(Designs, AffinePlanes)
{
    for (int q : {2, 3, 4, 5, 7}) {
        auto d = affine_plane(q);
        EXPECT_EQ(d.v, q * q);
        EXPECT_EQ(static_cast<int>(d.blocks.size()), q * q + q);
        EXPECT_FALSE(check_design(d).has_value()) << q;
        EXPECT_TRUE(covers_exactly_once(d)) << q;
    }
}

TEST(Designs, SteinerQuadrupleSystems)
{
    auto s8 = boolean_sqs(3);
    EXPECT_EQ(s8.blocks.size(), 14u);
    EXPECT_TRUE(covers_exactly_once(s8));
    auto s16 = boolean_sqs(4);
    EXPECT_EQ(s16.blocks.size(), 140u);
    EXPECT_TRUE(covers_exactly_once(s16));
}

TEST(Designs, InversivePlanes)
{
    auto i2 = inversive_plane(2);
    EXPECT_EQ(i2.v, 5);
    EXPECT_EQ(i2.blocks.size(), 10u);
    EXPECT_TRUE(covers_exactly_once(i2));
    auto i3 = inversive_plane(3);
    EXPECT_EQ(i3.v, 10);
    EXPECT_EQ(i3.blocks.size(), 30u);
    EXPECT_TRUE(covers_exactly_once(i3));
}

TEST(Designs, CheckerCatchesDamage)
{
    auto d = projective_plane(3);
    auto dropped = d;
    dropped.blocks.pop_back();
    EXPECT_TRUE(check_design(dropped).has_value());
    auto doubled = d;
    doubled.blocks.push_back(d.blocks.front());
    EXPECT_TRUE(check_design(doubled).has_value());
    auto bent = d;
    int outside = 0;
    while (std::find(bent.blocks[0].begin(), bent.blocks[0].end(), outside) != bent.blocks[0].end())
        ++outside;
    bent.blocks[0][0] = outside;
    normalize_blocks(bent.blocks);
    EXPECT_TRUE(check_design(bent).has_value());
}

TEST(Decompositions, OneFactorizations)
{
    for (int n = 2; n <= 12; n += 2) {
        auto d = one_factorization(n);
        EXPECT_EQ(static_cast<int>(d.factors.size()), n - 1);
        EXPECT_TRUE(is_matching_partition(d)) << n;
        EXPECT_FALSE(check_decomposition(d, n / 2).has_value());
    }
    EXPECT_THROW(one_factorization(7), Error);
}

TEST(Decompositions, NearOneFactorizations)
{
    for (int n = 3; n <= 13; n += 2) {
        auto d = near_one_factorization(n);
        EXPECT_EQ(static_cast<int>(d.factors.size()), n);
        EXPECT_TRUE(is_matching_partition(d)) << n;
        EXPECT_FALSE(check_decomposition(d, (n - 1) / 2).has_value());
    }
}

TEST(Decompositions, HamiltonianCycles)
{
    for (int n = 3; n <= 11; n += 2) {
        auto cycles = hamiltonian_decomposition(n);
        EXPECT_EQ(static_cast<int>(cycles.size()), (n - 1) / 2);
        EXPECT_FALSE(check_hamiltonian_decomposition(n, cycles).has_value()) << n;
        std::set<std::vector<int>> seen;
        for (const auto& cyc : cycles) {
            EXPECT_EQ(static_cast<int>(cyc.size()), n);
            auto info = oracle::dfs_class(n, cyc);
            EXPECT_EQ(info.components, 1);
            EXPECT_EQ(info.incident, n);
            seen.insert(cyc.begin(), cyc.end());
        }
        EXPECT_EQ(seen.size(), static_cast<std::size_t>(n * (n - 1) / 2));
    }
}

TEST(Decompositions, Baranyai)
{
    for (auto [n, r] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}, {8, 4}, {9, 3}, {8, 2}, {10, 5}, {12, 3}}) {
        auto d = baranyai(n, r);
        EXPECT_TRUE(d.complete);
        EXPECT_EQ(static_cast<std::uint64_t>(d.factors.size()), choose64(n - 1, r - 1)) << n << "," << r;
        EXPECT_TRUE(is_matching_partition(d)) << n << "," << r;
        EXPECT_FALSE(check_decomposition(d, n / r).has_value());
    }
    EXPECT_THROW(baranyai(7, 3), Error);
}

TEST(Decompositions, BaranyaiBacktrackAgrees)
{
    for (auto [n, r] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}, {6, 2}}) {
        auto d = baranyai_backtrack(n, r);
        ASSERT_TRUE(d.has_value());
        EXPECT_TRUE(is_matching_partition(*d));
    }
}

TEST(Decompositions, CheckerCatchesOverlap)
{
    auto d = one_factorization(6);
    auto broken = d;
    broken.factors[0][0] = broken.factors[1][0];
    EXPECT_TRUE(check_decomposition(broken).has_value());
    auto partial = d;
    partial.factors.pop_back();
    EXPECT_TRUE(check_decomposition(partial).has_value());
    partial.complete = false;
    EXPECT_FALSE(check_decomposition(partial).has_value());
}

TEST(Decompositions, DisjointMaximumMatchings)
{
    for (auto [n, r, t] : std::vector<std::tuple<int, int, int>>{{7, 2, 3}, {8, 2, 7}, {5, 2, 5}, {9, 3, 4}, {7, 3, 2}, {10, 3, 5}}) {
        auto d = disjoint_max_matchings(n, r, t);
        EXPECT_FALSE(d.complete);
        EXPECT_EQ(static_cast<int>(d.factors.size()), t);
        EXPECT_FALSE(check_decomposition(d, n / r).has_value()) << n << "," << r << "," << t;
    }
    EXPECT_THROW(disjoint_max_matchings(6, 2, 6), Error);
}

TEST(Decompositions, KFourMinusEdge)
{
    for (int n : {10, 11}) {
        auto pieces = k4minus_decomposition(n);
        EXPECT_EQ(static_cast<int>(pieces.size()), n * (n - 1) / 10);
        std::set<std::vector<int>> seen;
        for (const auto& g : pieces) {
            ASSERT_EQ(g.size(), 5u);
            std::set<int> span;
            for (const auto& e : g) {
                span.insert(e.begin(), e.end());
                EXPECT_TRUE(seen.insert(e).second);
            }
            EXPECT_EQ(span.size(), 4u);
        }
        EXPECT_EQ(seen.size(), static_cast<std::size_t>(n * (n - 1) / 2));
    }
    EXPECT_THROW(k4minus_decomposition(12), Error);
}
