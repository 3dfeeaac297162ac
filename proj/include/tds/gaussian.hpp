#pragma once
#include <cstdint>
#include <vector>

#include "tds/linalg.hpp"
#include "tds/rng.hpp"

namespace tds {

struct HalfspaceIntersection; // concepts.hpp

// Monomial exponent vector alpha with degree ||alpha||_1.
struct MultiIndex {
    std::vector<int> alpha;

    int degree() const {
        int s = 0;
        for (int a : alpha) s += a;
        return s;
    }
};

// Phi(x), accurate to ~1e-15 via erf.
double std_normal_cdf(double x);

// Phi^-1(p) via Newton on erf with bisection fallback; |Phi(result) - p| <= 1e-12.
double std_normal_inv_cdf(double p);

// phi(x), the standard normal density.
double std_normal_pdf(double x);

// E[x^alpha] under N_d: product over coordinates of the 1-D moments, where
// the degree-i moment is 0 for odd i and (i-1)!! for even i.
double gaussian_moment_multi(const MultiIndex& alpha);

// 1-D Gaussian moment of degree i.
double gaussian_moment_1d(int i);

// All alpha in N^d with degree <= r, deterministic lexicographic order.
// Count is C(d+r, r); throws BudgetExceeded above `cap`.
std::vector<MultiIndex> enumerate_multi_indices(int d, int r,
                                                std::int64_t cap = 1000000);

std::int64_t multi_index_count(int d, int r);

// n i.i.d. draws from N_d as rows.
Mat sample_gaussian(int d, int n, SeededSampler& s);

// Rejection sampling of N_d restricted to the +1 region of `region`. A pilot
// run checks the region mass is >= 1e-4; exhausting max_tries proposals (or a
// thin pilot) throws RegionTooThin.
Mat sample_truncated_gaussian(const HalfspaceIntersection& region, int n,
                              SeededSampler& s,
                              std::int64_t max_tries = 200000000);

} // namespace tds
