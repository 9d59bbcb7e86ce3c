#pragma once

// Exact bound calculus for z_{k,r} (localized colorings) and f(n,k,r).

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fracture/constructions.hpp"
#include "fracture/core.hpp"
#include "fracture/rational.hpp"

namespace fracture {

namespace detail {

// Largest x >= 0 with x^e <= v.
inline BigInt integer_root(const BigInt& v, unsigned e)
{
    if (v < 2)
        return v;
    BigInt lo = 0, hi = 1;
    while (boost::multiprecision::pow(hi, e) <= v)
        hi *= 2;
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) / 2;
        (boost::multiprecision::pow(mid, e) <= v ? lo : hi) = mid;
    }
    return lo;
}

inline std::optional<Rational> exact_root(const Rational& c, unsigned e)
{
    BigInt num = numerator_of(c), den = denominator_of(c);
    BigInt rn = integer_root(num, e), rd = integer_root(den, e);
    if (boost::multiprecision::pow(rn, e) == num && boost::multiprecision::pow(rd, e) == den)
        return Rational(rn, rd);
    return std::nullopt;
}

inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

} // namespace detail

/// a + b * c^(1/e) with c >= 0. Comparisons are exact; two irrational values
/// are comparable when both have a = 0 and b >= 0.
class ExactReal {
public:
    ExactReal(Rational value = 0) : a_(std::move(value)) {} // NOLINT: implicit from rationals

    ExactReal(Rational a, Rational b, Rational c, unsigned e) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), e_(e)
    {
        require(c_ >= 0 && e_ >= 1, ErrorKind::invalid_input, "radicand must be >= 0, root >= 1");
        if (auto root = detail::exact_root(c_, e_)) {
            a_ += b_ * *root;
            b_ = 0;
        }
        if (b_ == 0) {
            c_ = 0;
            e_ = 1;
        }
    }

    static ExactReal root(const Rational& c, unsigned e) { return ExactReal(0, 1, c, e); }

    bool is_rational() const noexcept { return b_ == 0; }
    const Rational& rational() const
    {
        require(is_rational(), ErrorKind::invalid_input, "value is irrational");
        return a_;
    }

    /// sign(this - x).
    int compare(const Rational& x) const
    {
        Rational y = a_ - x;
        if (is_rational())
            return detail::sign(y);
        int sy = detail::sign(y), sb = detail::sign(b_);
        if (sy >= 0 && sb >= 0)
            return (sy == 0 && sb == 0) ? 0 : 1;
        if (sy <= 0 && sb <= 0)
            return (sy == 0 && sb == 0) ? 0 : -1;
        // opposite signs: compare |y|^e with |b|^e * c
        Rational lhs = pow(sy > 0 ? y : -y, e_), rhs = pow(sb > 0 ? b_ : -b_, e_) * c_;
        int s = detail::sign(lhs - rhs);
        return sy > 0 ? s : -s;
    }

    int compare(const ExactReal& other) const
    {
        if (other.is_rational())
            return compare(other.a_);
        if (is_rational())
            return -other.compare(a_);
        require(a_ == 0 && other.a_ == 0 && b_ > 0 && other.b_ > 0, ErrorKind::invalid_input,
                "unsupported comparison between irrational values");
        unsigned L = std::lcm(e_, other.e_);
        Rational lhs = pow(b_, L) * pow(c_, L / e_), rhs = pow(other.b_, L) * pow(other.c_, L / other.e_);
        return detail::sign(lhs - rhs);
    }

    friend bool operator==(const ExactReal& x, const ExactReal& y) { return x.compare(y) == 0; }
    friend bool operator<(const ExactReal& x, const ExactReal& y) { return x.compare(y) < 0; }
    friend bool operator<=(const ExactReal& x, const ExactReal& y) { return x.compare(y) <= 0; }
    friend bool operator>(const ExactReal& x, const ExactReal& y) { return x.compare(y) > 0; }
    friend bool operator>=(const ExactReal& x, const ExactReal& y) { return x.compare(y) >= 0; }

    /// Decimal rendering with `digits` places rounded toward +inf or -inf.
    std::string decimal(int digits, bool round_up) const
    {
        if (is_rational())
            return render_decimal(a_, digits, round_up);
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
        // smallest m with m/scale >= value
        BigInt lo = floor_of(a_ - (b_ < 0 ? -b_ : b_) * (c_ + 1)) * scale - 1;
        BigInt hi = ceil_of(a_ + (b_ < 0 ? -b_ : b_) * (c_ + 1)) * scale + 1;
        while (hi - lo > 1) {
            BigInt mid = (lo + hi) / 2;
            (compare(Rational(mid, scale)) <= 0 ? hi : lo) = mid;
        }
        BigInt m = hi;
        if (!round_up && compare(Rational(m, scale)) != 0)
            m -= 1;
        return render_decimal(Rational(m, scale), digits, round_up);
    }

    double approx() const
    {
        double v = a_.convert_to<double>();
        if (!is_rational())
            v += b_.convert_to<double>() * std::pow(c_.convert_to<double>(), 1.0 / e_);
        return v;
    }

    std::string str() const
    {
        if (is_rational())
            return to_string(a_);
        std::string rad = "(" + to_string(c_) + ")^(1/" + std::to_string(e_) + ")";
        std::string term = b_ == 1 ? rad : to_string(b_ < 0 ? Rational(-b_) : b_) + "*" + rad;
        if (a_ == 0)
            return b_ < 0 ? "-" + term : term;
        return to_string(a_) + (b_ < 0 ? "-" : "+") + term;
    }

private:
    Rational a_, b_ = 0, c_ = 0;
    unsigned e_ = 1;
};

enum class BoundKind { z_lower, z_upper, f_lower, f_upper };

inline const char* to_string(BoundKind k)
{
    switch (k) {
    case BoundKind::z_lower: return "z_lower";
    case BoundKind::z_upper: return "z_upper";
    case BoundKind::f_lower: return "f_lower";
    case BoundKind::f_upper: return "f_upper";
    }
    return "?";
}

enum class ProvenanceKind { lemma_d_choice, corollary_sqrt, construction, eq1, trivial_ratio, adhoc_prop, unknown };

struct Provenance {
    ProvenanceKind kind = ProvenanceKind::unknown;
    int d = 0;
    std::string detail;

    std::string str() const
    {
        switch (kind) {
        case ProvenanceKind::lemma_d_choice:
            return "lemma_d_choice(" + std::to_string(d) + ")" + (detail.empty() ? "" : "[" + detail + "]");
        case ProvenanceKind::corollary_sqrt: return "corollary_sqrt";
        case ProvenanceKind::construction: return "construction(" + detail + ")";
        case ProvenanceKind::eq1: return "eq1";
        case ProvenanceKind::trivial_ratio: return detail.empty() ? "trivial_ratio" : "trivial_ratio[" + detail + "]";
        case ProvenanceKind::adhoc_prop: return "adhoc_prop(" + detail + ")";
        case ProvenanceKind::unknown: return "unknown";
        }
        return "?";
    }
};

struct BoundRecord {
    BoundKind kind;
    int k;
    int r;
    std::optional<int> n;
    ExactReal value;
    Provenance provenance;
};

namespace detail {

using ZOracle = std::function<BoundRecord(int, int)>;

// max over d in [2,k] of max(min((d/k)^(1/(r-1)), 1/(d-1)), min(d/k, inner(d-1, r-1))),
// with z_{t,1} = 1/t and z_{k,r} = 1 for k <= r; ties keep the smallest d.
inline BoundRecord lemma_bound(int k, int r, const ZOracle& inner)
{
    require(k >= 1 && r >= 1, ErrorKind::invalid_input, "need k, r >= 1");
    if (r == 1)
        return {BoundKind::z_lower, k, r, std::nullopt, Rational(1, k), {ProvenanceKind::trivial_ratio, 0, "z_{t,1}=1/t"}};
    if (k <= r)
        return {BoundKind::z_lower, k, r, std::nullopt, Rational(1), {ProvenanceKind::trivial_ratio, 0, "k<=r"}};
    std::optional<ExactReal> best;
    Provenance why;
    for (int d = 2; d <= k; ++d) {
        Rational ratio(d, k);
        ExactReal spread = ExactReal::root(ratio, static_cast<unsigned>(r - 1));
        ExactReal cover = Rational(1, d - 1);
        ExactReal first = spread < cover ? spread : cover;
        BoundRecord sub = inner(d - 1, r - 1);
        ExactReal second = sub.value < ExactReal(ratio) ? sub.value : ExactReal(ratio);
        ExactReal cand = first < second ? second : first;
        if (!best || cand > *best) {
            best = cand;
            why = {ProvenanceKind::lemma_d_choice, d, second > first ? sub.provenance.str() : ""};
        }
    }
    return {BoundKind::z_lower, k, r, std::nullopt, *best, why};
}

} // namespace detail

/// Recursive lower bound on z_{k,r}; the maximizing d is in the provenance.
inline BoundRecord z_lower_lemma(int k, int r)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, BoundRecord> memo;
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find({k, r}); it != memo.end())
            return it->second;
    }
    BoundRecord rec = detail::lemma_bound(k, r, [](int kk, int rr) { return z_lower_lemma(kk, rr); });
    std::lock_guard lock(mutex);
    memo.emplace(std::pair{k, r}, rec);
    return rec;
}

/// 1 / ceil(sqrt(k + 1/4) - 1/2): the smallest D with D(D+1) >= k.
inline BoundRecord z_lower_sqrt(int k)
{
    require(k >= 3, ErrorKind::invalid_input, "z_lower_sqrt needs k >= 3");
    std::int64_t D = 1;
    while (D * (D + 1) < k)
        ++D;
    return {BoundKind::z_lower, k, 2, std::nullopt, Rational(1, D), {ProvenanceKind::corollary_sqrt, 0, ""}};
}

/// Proven ad-hoc lower bounds: z_4 >= 3/5, z_5 >= 5/9.
inline std::optional<Rational> adhoc_z_lower(int k, int r)
{
    if (r == 2 && k == 4)
        return Rational(3, 5);
    if (r == 2 && k == 5)
        return Rational(5, 9);
    return std::nullopt;
}

/// Best known lower bound: the recursion fed with the best lower bounds one
/// level down, and the ad-hoc registry.
inline BoundRecord z_lower_best(int k, int r)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, BoundRecord> memo;
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find({k, r}); it != memo.end())
            return it->second;
    }
    BoundRecord rec = detail::lemma_bound(k, r, [](int kk, int rr) { return z_lower_best(kk, rr); });
    if (auto adhoc = adhoc_z_lower(k, r); adhoc && rec.value < ExactReal(*adhoc)) {
        rec.value = *adhoc;
        rec.provenance = {ProvenanceKind::adhoc_prop, 0, "z_" + std::to_string(k) + ">=" + to_string(*adhoc)};
    }
    std::lock_guard lock(mutex);
    memo.emplace(std::pair{k, r}, rec);
    return rec;
}

/// A coloring in the upper-bound catalog: its color count is known up front,
/// its z is computed from the built coloring on demand.
struct CatalogEntry {
    std::string name;
    int r;
    std::uint64_t colors;
};

inline constexpr std::uint64_t catalog_edge_cap = 5000;

/// Ties in z keep the earlier entry.
inline const std::vector<CatalogEntry>& upper_catalog()
{
    static const std::vector<CatalogEntry> catalog = [] {
        std::vector<CatalogEntry> out;
        auto add_trivial = [&](int r) {
            for (int n = r; binomial(n, r) <= catalog_edge_cap; ++n)
                out.push_back({"trivial(" + std::to_string(n) + "," + std::to_string(r) + ")", r, choose64(n, r)});
        };
        add_trivial(2);
        out.push_back({"k5-four", 2, 4});
        out.push_back({"k9-five", 2, 5});
        for (int q : {2, 3, 4, 5, 7, 8}) {
            std::uint64_t qq = static_cast<std::uint64_t>(q);
            out.push_back({"design(pg," + std::to_string(q) + ")", 2, qq * qq + qq + 1});
            out.push_back({"design(ag," + std::to_string(q) + ")", 2, qq * qq + qq});
        }
        out.push_back({"k4minus(10)", 2, 9});
        out.push_back({"k4minus(11)", 2, 11});
        out.push_back({"k6r3-six", 3, 6});
        out.push_back({"design(inversive,2)", 3, 10});
        out.push_back({"design(inversive,3)", 3, 30});
        out.push_back({"design(sqs,3)", 3, 14});
        out.push_back({"design(sqs,4)", 3, 140});
        for (int r = 3; r <= 6; ++r)
            add_trivial(r);
        return out;
    }();
    return catalog;
}

/// z_value of the registry coloring `name`, memoized.
inline Rational catalog_z(const std::string& name)
{
    static std::mutex mutex;
    static std::map<std::string, Rational> memo;
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(name); it != memo.end())
            return it->second;
    }
    Rational z = base_registry(name).realized_z;
    std::lock_guard lock(mutex);
    memo.emplace(name, z);
    return z;
}

/// Least verified z over catalog colorings with at most k colors (z is
/// non-increasing in k, so fewer colors also bound z_{k,r}).
inline BoundRecord z_upper_constructions(int k, int r)
{
    require(k >= 1 && r >= 2, ErrorKind::invalid_input, "need k >= 1, r >= 2");
    std::optional<Rational> best;
    const CatalogEntry* from = nullptr;
    for (const auto& entry : upper_catalog()) {
        if (entry.r != r || entry.colors > static_cast<std::uint64_t>(k))
            continue;
        Rational z = catalog_z(entry.name);
        if (!best || z < *best) {
            best = z;
            from = &entry;
        }
    }
    if (!best)
        return {BoundKind::z_upper, k, r, std::nullopt, Rational(1), {ProvenanceKind::unknown, 0, ""}};
    std::string detail = from->name;
    if (from->colors < static_cast<std::uint64_t>(k))
        detail += ";monotone from k=" + std::to_string(from->colors);
    return {BoundKind::z_upper, k, r, std::nullopt, *best, {ProvenanceKind::construction, 0, detail}};
}

/// Name of the catalog coloring behind z_upper_constructions(k, r).
inline std::string z_upper_source(int k, int r)
{
    auto detail = z_upper_constructions(k, r).provenance.detail;
    return detail.substr(0, detail.find(';'));
}

/// Largest t >= 1 with k * (C(n - r(t-1), r) + t - 1) >= C(n, r); bounds f(n,k,r) above.
inline std::int64_t f_upper_eq1(int n, int k, int r)
{
    require(r >= 1 && n >= r && k >= 1, ErrorKind::invalid_input, "need 1 <= r <= n, k >= 1");
    require(BigInt(k) <= binomial(n, r), ErrorKind::invalid_input, "k exceeds C(n,r)");
    const BigInt total = binomial(n, r);
    std::int64_t best = 1;
    for (std::int64_t t = 2; t <= n / r; ++t) {
        BigInt lhs = BigInt(k) * (binomial(n - r * (t - 1), r) + (t - 1));
        if (lhs < total)
            break;
        best = t;
    }
    return best;
}

/// min(floor(C(n,r)/k), floor(n/r)).
inline std::int64_t f_upper_trivial(int n, int k, int r)
{
    require(r >= 1 && n >= r && k >= 1, ErrorKind::invalid_input, "need 1 <= r <= n, k >= 1");
    BigInt ratio = binomial(n, r) / k;
    return std::min(static_cast<std::int64_t>(ratio), static_cast<std::int64_t>(n / r));
}

/// f(n,k,r) >= f_value of the blow-up of the best z_upper base; 1 when the
/// blow-up is too large to build or not applicable.
inline BoundRecord f_lower_construction(int n, int k, int r)
{
    require(r >= 2 && n >= r && k >= 1, ErrorKind::invalid_input, "need 2 <= r <= n, k >= 1");
    BoundRecord rec{BoundKind::f_lower, k, r, n, Rational(1), {ProvenanceKind::trivial_ratio, 0, "one class"}};
    if (k <= r || binomial(n, r) > 2'000'000)
        return rec;
    std::string base = z_upper_source(k, r);
    try {
        Coloring c = blow_up(base_registry(base), n);
        int f = f_value(c);
        if (f > 1) {
            rec.value = Rational(f);
            rec.provenance = {ProvenanceKind::construction, 0, "blowup:" + base};
        }
    } catch (const Error&) {
        // too few vertices per part for this base
    }
    return rec;
}

inline BoundRecord f_upper_record(int n, int k, int r)
{
    std::int64_t eq1 = f_upper_eq1(n, k, r), triv = f_upper_trivial(n, k, r);
    if (eq1 <= triv)
        return {BoundKind::f_upper, k, r, n, Rational(eq1), {ProvenanceKind::eq1, 0, ""}};
    return {BoundKind::f_upper, k, r, n, Rational(triv), {ProvenanceKind::trivial_ratio, 0, ""}};
}

/// Asymptotic slope bounds for f(n,k,r)/n.
inline ExactReal f_slope_upper(int k, int r)
{
    if (k <= r)
        return Rational(0);
    if (r == 2 && k == 3)
        return Rational(1, 6);
    return ExactReal(Rational(1, r), Rational(-1, r), Rational(1, k), static_cast<unsigned>(r));
}

inline ExactReal f_slope_lower(int k, int r)
{
    if (k <= r)
        return Rational(0);
    return (Rational(1) - z_upper_constructions(k, r).value.rational()) / r;
}

struct Table1Row {
    int k;
    ExactReal f_upper;
    ExactReal f_lower;
    BoundRecord z_upper;
    BoundRecord z_lower;
};

/// Rows for k in [kmin, kmax] (within [3,13]) of the graph case.
inline std::vector<Table1Row> table1(int kmin, int kmax)
{
    require(3 <= kmin && kmin <= kmax && kmax <= 13, ErrorKind::invalid_input, "table rows cover 3 <= k <= 13");
    std::vector<Table1Row> rows;
    for (int k = kmin; k <= kmax; ++k)
        rows.push_back({k, f_slope_upper(k, 2), f_slope_lower(k, 2), z_upper_constructions(k, 2), z_lower_best(k, 2)});
    return rows;
}

/// Table rows as CSV: exact value plus 3-decimal rendering (upper bounds
/// rounded up, lower bounds rounded down).
inline std::string table1_csv(const std::vector<Table1Row>& rows)
{
    std::string out = "k,f_upper,f_upper_dec,f_lower,f_lower_dec,z_upper,z_upper_dec,z_lower,z_lower_dec\n";
    for (const auto& row : rows) {
        out += std::to_string(row.k) + "," + row.f_upper.str() + "," + row.f_upper.decimal(3, true) + "," +
               row.f_lower.str() + "," + row.f_lower.decimal(3, false) + "," + row.z_upper.value.str() + "," +
               row.z_upper.value.decimal(3, true) + "," + row.z_lower.value.str() + "," +
               row.z_lower.value.decimal(3, false) + "\n";
    }
    return out;
}

} // namespace fracture
