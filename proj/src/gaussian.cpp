#include "tds/gaussian.hpp"

#include <cmath>

#include "tds/concepts.hpp"

namespace tds {

double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double std_normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779399460599343818684;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double std_normal_inv_cdf(double p) {
    TDS_REQUIRE(p > 0.0 && p < 1.0, ErrorCode::DegenerateInput,
                "inverse CDF needs p in (0,1)");
    // Newton on Phi(x) - p with a bisection fallback; the tail CDF via erfc
    // keeps the residual meaningful even for extreme p.
    double lo = -40.0, hi = 40.0;
    double x = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double f = std_normal_cdf(x) - p;
        if (f > 0.0) hi = x; else lo = x;
        const double dens = std_normal_pdf(x);
        double step = dens > 0.0 ? f / dens : 0.0;
        double nx = x - step;
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) <= 1e-15 * std::max(1.0, std::abs(x))) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

double gaussian_moment_1d(int i) {
    TDS_REQUIRE(i >= 0, ErrorCode::DegenerateInput, "negative degree");
    if (i % 2 == 1) return 0.0;
    double m = 1.0; // (i-1)!! for even i; empty product for i = 0
    for (int j = i - 1; j >= 2; j -= 2) m *= j;
    return m;
}

double gaussian_moment_multi(const MultiIndex& alpha) {
    double m = 1.0;
    for (int a : alpha.alpha) {
        if (a % 2 == 1) return 0.0;
        m *= gaussian_moment_1d(a);
    }
    return m;
}

std::int64_t multi_index_count(int d, int r) {
    // C(d+r, r), overflow-safe for desk-scale d, r.
    long double c = 1.0L;
    for (int i = 1; i <= r; ++i) c = c * (d + i) / i;
    return static_cast<std::int64_t>(c + 0.5L);
}

namespace {
void enumerate_rec(int d, int r, int pos, int remaining, std::vector<int>& cur,
                   std::vector<MultiIndex>& out) {
    if (pos == d) {
        out.push_back(MultiIndex{cur});
        return;
    }
    for (int a = 0; a <= remaining; ++a) {
        cur[pos] = a;
        enumerate_rec(d, r, pos + 1, remaining - a, cur, out);
    }
    cur[pos] = 0;
}
} // namespace

std::vector<MultiIndex> enumerate_multi_indices(int d, int r, std::int64_t cap) {
    TDS_REQUIRE(d >= 1 && r >= 0, ErrorCode::DegenerateInput, "bad (d, r)");
    const std::int64_t count = multi_index_count(d, r);
    TDS_REQUIRE(count <= cap, ErrorCode::BudgetExceeded,
                "multi-index count " + std::to_string(count) + " exceeds cap");
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<int> cur(d, 0);
    enumerate_rec(d, r, 0, r, cur, out);
    return out;
}

Mat sample_gaussian(int d, int n, SeededSampler& s) {
    Mat rows(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) rows(i, j) = s.normal();
    return rows;
}

Mat sample_truncated_gaussian(const HalfspaceIntersection& region, int n,
                              SeededSampler& s, std::int64_t max_tries) {
    const int d = region.dim;
    if (region.k() == 0) return sample_gaussian(d, n, s);

    // Pilot: region mass must be >= 1e-4.
    const int pilot = 20000;
    int hits = 0;
    {
        SeededSampler ps = s.split(0x70696c6f74ULL);
        Vec x(d);
        for (int i = 0; i < pilot; ++i) {
            for (int j = 0; j < d; ++j) x[j] = ps.normal();
            if (label(region, x) == 1) ++hits;
        }
    }
    TDS_REQUIRE(hits >= 2, ErrorCode::RegionTooThin,
                "pilot mass below 1e-4, rejection sampling refused");

    Mat out(n, d);
    Vec x(d);
    std::int64_t tries = 0;
    int got = 0;
    while (got < n) {
        TDS_REQUIRE(tries < max_tries, ErrorCode::RegionTooThin,
                    "rejection sampling exhausted max_tries");
        ++tries;
        for (int j = 0; j < d; ++j) x[j] = s.normal();
        if (label(region, x) == 1) {
            out.row(got) = x.transpose();
            ++got;
        }
    }
    return out;
}

} // namespace tds
