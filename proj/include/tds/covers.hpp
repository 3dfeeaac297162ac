#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "tds/concepts.hpp"
#include "tds/linalg.hpp"
#include "tds/retrieval.hpp"

namespace tds {

// Sparse angular cover of the unit sphere of span(source_basis): all
// normalized nonzero lattice points eps2 * sum_i j_i v^i with integer
// j_i in [-1/eps2, 1/eps2]. Points are deduplicated exactly by primitive
// integer direction (collinear lattice points normalize to the same unit
// vector), which is well inside the 1e-9 angular tolerance.
struct SphereCover {
    std::vector<Vec> points;
    double eps2 = 0.0;
    OrthonormalBasis source_basis;
};

// Symmetric grid {j*eps1 : j integer, |j*eps1| <= T}; always contains 0.
struct ThresholdGrid {
    std::vector<double> values;
    double eps1 = 0.0;
    double T = 0.0;
};

// Cover of the candidate solution space: intersections of at most k cover
// halfspaces whose empirical training error passed the filter. `ranks` are
// the candidates' positions in the full deterministic enumeration (sizes
// ascending, lexicographic non-decreasing index tuples within a size), used
// for tie-breaking.
struct CandidateSet {
    std::vector<HalfspaceIntersection> members;
    std::vector<double> train_errors;
    std::vector<std::int64_t> ranks;
    double train_err_threshold = 0.0;
    std::int64_t total_enumerated = 0; // full combinatorial count, pre-filter
};

// Requires 0 < eps2 < 1/rank and lattice size (2/eps2+1)^rank within the
// budget, else BudgetExceeded. A rank-0 basis yields an empty cover.
SphereCover build_sphere_cover(const OrthonormalBasis& basis, double eps2,
                               std::int64_t budget = 10000000);

// eps1 > 0, T > 0; spacing exactly eps1, endpoints within eps1 of +-T.
ThresholdGrid build_threshold_grid(double eps1, double T);

// Enumerates multisets of size 0..k over cover x grid (grid = {0} exactly
// when absent, the homogeneous case), filters by empirical training error
// <= err_thresh, and keeps the survivors in enumeration order. The pair index
// is u_index * |grid| + theta_index. Throws BudgetExceeded when the full
// enumeration count surpasses `budget`. An empty member list is the
// EmptyCandidateSet signal; callers reject upstream.
CandidateSet build_candidate_set(const SphereCover& cover,
                                 const std::optional<ThresholdGrid>& grid,
                                 int k, const LabeledSample& train,
                                 double err_thresh,
                                 std::int64_t budget = 10000000);

// Number of multisets of size 0..k over an alphabet of m symbols.
std::int64_t multiset_total(std::int64_t m, int k);

} // namespace tds
