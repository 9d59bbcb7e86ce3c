#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fracture/bounds.hpp"
#include "oracles.hpp"

using namespace fracture;

TEST(ExactReal, ComparesRadicalsExactly)
{
    auto sqrt2 = ExactReal::root(Rational(2), 2);
    EXPECT_FALSE(sqrt2.is_rational());
    EXPECT_GT(sqrt2, ExactReal(Rational(141, 100)));
    EXPECT_LT(sqrt2, ExactReal(Rational(142, 100)));
    EXPECT_EQ(ExactReal::root(Rational(9, 4), 2), ExactReal(Rational(3, 2)));
    EXPECT_TRUE(ExactReal::root(Rational(27, 8), 3).is_rational());
    // 2^(1/2) vs 3^(1/3): 8 < 9
    EXPECT_LT(sqrt2, ExactReal::root(Rational(3), 3));
    auto slope = ExactReal(Rational(1, 2), Rational(-1, 2), Rational(1, 7), 2);
    EXPECT_EQ(slope.decimal(3, true), "0.312");
    EXPECT_EQ(slope.decimal(3, false), "0.311");
    EXPECT_NEAR(slope.approx(), 0.5 - 0.5 / std::sqrt(7.0), 1e-12);
}

TEST(ZLower, LemmaExamples)
{
    auto z3 = z_lower_lemma(3, 2);
    EXPECT_EQ(z3.value, ExactReal(Rational(2, 3)));
    EXPECT_EQ(z3.provenance.kind, ProvenanceKind::lemma_d_choice);
    EXPECT_EQ(z3.provenance.d, 2);
    auto z7 = z_lower_lemma(7, 2);
    EXPECT_EQ(z7.value, ExactReal(Rational(3, 7)));
    EXPECT_EQ(z7.provenance.d, 3);
    auto z63 = z_lower_lemma(6, 3);
    EXPECT_EQ(z63.value, ExactReal(Rational(2, 3)));
    EXPECT_EQ(z63.provenance.d, 4);
    EXPECT_EQ(z_lower_lemma(13, 2).value, ExactReal(Rational(4, 13)));
    EXPECT_EQ(z_lower_lemma(4, 1).value, ExactReal(Rational(1, 4)));
    EXPECT_EQ(z_lower_lemma(3, 3).value, ExactReal(Rational(1)));
    EXPECT_EQ(z_lower_lemma(2, 5).value, ExactReal(Rational(1)));
}

TEST(ZLower, BruteForceRecursionAgreesForGraphs)
{
    // independent evaluation of the graph-case recursion in plain rationals
    auto direct = [](int k) {
        if (k <= 2)
            return Rational(1);
        Rational best = 0;
        for (int d = 2; d <= k; ++d)
            best = std::max(best, std::min(Rational(d, k), Rational(1, d - 1)));
        return best;
    };
    for (int k = 3; k <= 60; ++k)
        EXPECT_EQ(z_lower_lemma(k, 2).value, ExactReal(direct(k))) << k;
}

TEST(ZLower, RadicalTermsForHigherUniformity)
{
    // (d/k)^(1/2) terms appear at r = 3; compare against floating evaluation
    for (int k = 4; k <= 30; ++k) {
        double expect = 0;
        for (int d = 2; d <= k; ++d) {
            double inner = z_lower_lemma(d - 1, 2).value.approx();
            double a = std::min(std::sqrt(static_cast<double>(d) / k), 1.0 / (d - 1));
            double b = std::min(static_cast<double>(d) / k, inner);
            expect = std::max({expect, a, b});
        }
        EXPECT_NEAR(z_lower_lemma(k, 3).value.approx(), expect, 1e-12) << k;
    }
}

TEST(ZLower, SquareRootBound)
{
    EXPECT_EQ(z_lower_sqrt(3).value, ExactReal(Rational(1, 2)));
    EXPECT_EQ(z_lower_sqrt(7).value, ExactReal(Rational(1, 3)));
    EXPECT_EQ(z_lower_sqrt(12).value, ExactReal(Rational(1, 3)));
    EXPECT_EQ(z_lower_sqrt(13).value, ExactReal(Rational(1, 4)));
    for (int k = 3; k <= 200; ++k) {
        EXPECT_GE(z_lower_lemma(k, 2).value, z_lower_sqrt(k).value) << k;
        // closed form, checked in floating point away from the integer boundary
        double D = std::ceil(std::sqrt(k + 0.25) - 0.5 - 1e-12);
        EXPECT_EQ(z_lower_sqrt(k).value, ExactReal(Rational(1, static_cast<long>(D)))) << k;
    }
}

TEST(ZLower, BestUsesAdhocRegistry)
{
    auto z4 = z_lower_best(4, 2);
    EXPECT_EQ(z4.value, ExactReal(Rational(3, 5)));
    EXPECT_EQ(z4.provenance.kind, ProvenanceKind::adhoc_prop);
    EXPECT_EQ(z_lower_best(5, 2).value, ExactReal(Rational(5, 9)));
    auto z8 = z_lower_best(8, 2);
    EXPECT_EQ(z8.value, ExactReal(Rational(3, 8)));
    EXPECT_EQ(z8.provenance.d, 3);
    for (int k = 1; k <= 40; ++k)
        for (int r = 2; r <= 4; ++r)
            EXPECT_GE(z_lower_best(k, r).value, z_lower_lemma(k, r).value);
}

TEST(ZUpper, CatalogExamples)
{
    auto z7 = z_upper_constructions(7, 2);
    EXPECT_EQ(z7.value, ExactReal(Rational(3, 7)));
    EXPECT_EQ(z7.provenance.detail, "design(pg,2)");
    auto z9 = z_upper_constructions(9, 2);
    EXPECT_EQ(z9.value, ExactReal(Rational(2, 5)));
    EXPECT_EQ(z9.provenance.detail, "k4minus(10)");
    auto z6 = z_upper_constructions(6, 2);
    EXPECT_EQ(z6.value, ExactReal(Rational(1, 2)));
    EXPECT_EQ(z6.provenance.detail, "trivial(4,2)");
    auto z103 = z_upper_constructions(10, 3);
    EXPECT_EQ(z103.value, ExactReal(Rational(3, 5)));
    EXPECT_EQ(z103.provenance.detail, "design(inversive,2)");
    EXPECT_EQ(z_upper_constructions(14, 3).value, ExactReal(Rational(1, 2)));
    EXPECT_EQ(z_upper_source(8, 2), "design(pg,2)");
}

TEST(ZUpper, ValuesComeFromBuiltColorings)
{
    for (int k = 1; k <= 40; ++k) {
        auto rec = z_upper_constructions(k, 2);
        auto base = base_registry(z_upper_source(k, 2));
        EXPECT_LE(base.coloring.used_colors(), k);
        EXPECT_EQ(rec.value, ExactReal(base.realized_z)) << k;
    }
}

TEST(Sandwich, LowerNeverExceedsUpper)
{
    for (int r = 2; r <= 4; ++r)
        for (int k = 1; k <= 60; ++k)
            EXPECT_LE(z_lower_best(k, r).value, z_upper_constructions(k, r).value) << k << "," << r;
}

TEST(Sandwich, ExactWhereProven)
{
    for (int k : {3, 4, 5, 6, 7, 12, 13})
        EXPECT_EQ(z_lower_best(k, 2).value, z_upper_constructions(k, 2).value) << k;
    for (int r = 2; r <= 5; ++r) {
        EXPECT_EQ(z_lower_best(r + 1, r).value, ExactReal(Rational(r, r + 1)));
        EXPECT_EQ(z_upper_constructions(r + 1, r).value, ExactReal(Rational(r, r + 1)));
    }
    EXPECT_EQ(z_lower_best(6, 3).value, ExactReal(Rational(2, 3)));
    EXPECT_EQ(z_upper_constructions(6, 3).value, ExactReal(Rational(2, 3)));
    EXPECT_EQ(z_lower_best(14, 3).value, ExactReal(Rational(1, 2)));
}

TEST(Monotone, NonIncreasingInK)
{
    for (int r = 2; r <= 4; ++r)
        for (int k = 2; k <= 80; ++k) {
            EXPECT_LE(z_lower_lemma(k, r).value, z_lower_lemma(k - 1, r).value) << k << "," << r;
            EXPECT_LE(z_upper_constructions(k, r).value, z_upper_constructions(k - 1, r).value) << k << "," << r;
        }
}

TEST(FUpper, EquationOneExamples)
{
    for (int n = 2; n <= 30; ++n)
        EXPECT_EQ(f_upper_eq1(n, 1, 2), 1);
    EXPECT_EQ(f_upper_eq1(6, 3, 2), 2);
    EXPECT_EQ(f_upper_eq1(12, 3, 2), 3);
    EXPECT_EQ(f_upper_trivial(8, 7, 2), 4);
    EXPECT_EQ(f_upper_trivial(9, 9, 2), 4);
    EXPECT_EQ(f_upper_trivial(6, 20, 3), 1);
    EXPECT_THROW(f_upper_eq1(4, 7, 2), Error);
}

TEST(FUpper, RainbowBlowUpPinches)
{
    // floor(n/6)+1 from the construction never exceeds the counting bound
    for (int n = 6; n <= 200; ++n)
        EXPECT_GE(f_upper_eq1(n, 3, 2), n / 6 + 1) << n;
}

TEST(FUpper, ConvergesToSlope)
{
    for (int k : {3, 4, 5, 7, 10, 13}) {
        double slope = 0.5 - 0.5 / std::sqrt(static_cast<double>(k));
        for (int n : {1000, 10000}) {
            double ratio = static_cast<double>(f_upper_eq1(n, k, 2)) / n;
            EXPECT_GE(ratio, slope * (1 - 1e-9)) << k << " " << n;
            EXPECT_LE(ratio, slope * 1.01) << k << " " << n;
        }
    }
}

TEST(Universal, RandomColoringsRespectBounds)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        int n = r + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(8 - r));
        HypergraphShape shape(n, r);
        int k = 1 + static_cast<int>(rng() % std::min<std::uint64_t>(13, shape.m()));
        Coloring c(shape, k, oracle::random_colors(rng, shape.m(), k));
        int used = c.used_colors();
        EXPECT_GE(ExactReal(z_value(c)), z_lower_lemma(used, r).value);
        EXPECT_LE(f_value(c), f_upper_eq1(n, used, r));
        EXPECT_LE(f_value(c), f_upper_trivial(n, used, r));
    }
}

TEST(Table, MatchesKnownRows)
{
    auto rows = table1(3, 13);
    ASSERT_EQ(rows.size(), 11u);
    const std::vector<Rational> upper{Rational(2, 3), Rational(3, 5), Rational(5, 9), Rational(1, 2),
                                      Rational(3, 7), Rational(3, 7), Rational(2, 5), Rational(2, 5),
                                      Rational(4, 11), Rational(1, 3), Rational(4, 13)};
    const std::vector<Rational> lower{Rational(2, 3), Rational(3, 5), Rational(5, 9), Rational(1, 2),
                                      Rational(3, 7), Rational(3, 8), Rational(1, 3), Rational(1, 3),
                                      Rational(1, 3), Rational(1, 3), Rational(4, 13)};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].z_upper.value, ExactReal(upper[i])) << rows[i].k;
        EXPECT_EQ(rows[i].z_lower.value, ExactReal(lower[i])) << rows[i].k;
        EXPECT_EQ(rows[i].f_lower, ExactReal((1 - upper[i]) / 2));
    }
    EXPECT_EQ(rows[0].f_upper, ExactReal(Rational(1, 6)));
    EXPECT_EQ(rows[1].f_upper, ExactReal(Rational(1, 4)));
    EXPECT_EQ(rows[1].f_lower, ExactReal(Rational(1, 5)));
    EXPECT_EQ(rows[5].f_lower.decimal(3, false), "0.285");
    EXPECT_EQ(rows[9].f_lower.decimal(3, false), "0.333");
    EXPECT_THROW(table1(2, 5), Error);
}

TEST(Table, CsvShape)
{
    auto csv = table1_csv(table1(3, 13));
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,f_upper,f_upper_dec,f_lower,f_lower_dec,z_upper,z_upper_dec,z_lower,z_lower_dec");
    EXPECT_NE(csv.find("\n8,"), std::string::npos);
}

TEST(FLower, BlowUpRecord)
{
    auto rec = f_lower_construction(12, 3, 2);
    EXPECT_EQ(rec.value, ExactReal(Rational(3)));
    EXPECT_EQ(rec.provenance.kind, ProvenanceKind::construction);
    EXPECT_EQ(f_lower_construction(10, 2, 2).value, ExactReal(Rational(1)));
    EXPECT_EQ(f_upper_record(12, 3, 2).value, ExactReal(Rational(3)));
}
