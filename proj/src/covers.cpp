#include "tds/covers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "tds/bitvec.hpp"

namespace tds {

SphereCover build_sphere_cover(const OrthonormalBasis& basis, double eps2,
                               std::int64_t budget) {
    SphereCover cover;
    cover.eps2 = eps2;
    cover.source_basis = basis;
    const int rank = basis.rank();
    if (rank == 0) return cover;

    TDS_REQUIRE(eps2 > 0.0 && eps2 < 1.0 / rank, ErrorCode::DegenerateInput,
                "cover needs 0 < eps2 < 1/rank");
    const double lattice_bound = std::pow(2.0 / eps2 + 1.0, rank);
    TDS_REQUIRE(lattice_bound <= static_cast<double>(budget), ErrorCode::BudgetExceeded,
                "cover lattice size " + std::to_string(lattice_bound) + " exceeds budget");

    const int L = static_cast<int>(std::floor(1.0 / eps2 + 1e-12));
    std::vector<int> j(rank, -L);
    std::set<std::vector<int>> seen;
    for (;;) {
        // primitive integer direction: divide out the gcd
        int g = 0;
        for (int v : j) g = std::gcd(g, std::abs(v));
        if (g > 0) {
            std::vector<int> prim(rank);
            for (int t = 0; t < rank; ++t) prim[t] = j[t] / g;
            if (seen.insert(prim).second) {
                Vec u = Vec::Zero(basis.dim);
                for (int t = 0; t < rank; ++t) u += prim[t] * basis.vectors[t];
                cover.points.push_back(u / u.norm());
            }
        }
        // odometer
        int pos = rank - 1;
        while (pos >= 0 && j[pos] == L) j[pos--] = -L;
        if (pos < 0) break;
        ++j[pos];
    }
    return cover;
}

ThresholdGrid build_threshold_grid(double eps1, double T) {
    TDS_REQUIRE(eps1 > 0.0 && T > 0.0, ErrorCode::DegenerateInput,
                "grid needs eps1 > 0 and T > 0");
    ThresholdGrid grid;
    grid.eps1 = eps1;
    grid.T = T;
    const int J = static_cast<int>(std::floor(T / eps1 + 1e-9));
    for (int j = -J; j <= J; ++j) grid.values.push_back(j * eps1);
    return grid;
}

std::int64_t multiset_total(std::int64_t m, int k) {
    // sum over s of C(m + s - 1, s)
    long double total = 0.0L;
    for (int s = 0; s <= k; ++s) {
        long double c = 1.0L;
        for (int i = 1; i <= s; ++i) c = c * (m + i - 1) / i;
        total += c;
        if (total > 4.0e18L) return std::numeric_limits<std::int64_t>::max();
    }
    return static_cast<std::int64_t>(total + 0.5L);
}

namespace {

// C(a + len - 1, len): non-decreasing length-len sequences over a symbols.
long double multiset_count(std::int64_t a, int len) {
    if (a <= 0) return len == 0 ? 1.0L : 0.0L;
    long double c = 1.0L;
    for (int i = 1; i <= len; ++i) c = c * (a + i - 1) / i;
    return c;
}

// Rank of the non-decreasing tuple within the full enumeration: size blocks
// ascending, lexicographic within a block over alphabet size m.
std::int64_t enumeration_rank(const std::vector<int>& tuple, std::int64_t m, int /*k*/) {
    const int s = static_cast<int>(tuple.size());
    long double rank = 0.0L;
    for (int t = 0; t < s; ++t) rank += multiset_count(m, t); // earlier sizes
    int prev = 0;
    for (int t = 0; t < s; ++t) {
        const int len = s - 1 - t;
        // sequences starting with a value in [prev, tuple[t]) at position t
        rank += multiset_count(m - prev, len + 1) - multiset_count(m - tuple[t], len + 1);
        prev = tuple[t];
    }
    return static_cast<std::int64_t>(rank + 0.5L);
}

struct EnumState {
    const std::vector<BitVec>* pair_bits;
    const std::vector<int>* alive; // pruned-in pair indices, ascending
    const BitVec* label_bits;
    int n = 0;
    int k = 0;
    int dim = 0;
    double err_thresh = 0.0;
    std::int64_t m = 0; // full alphabet size (cover x grid)
    std::vector<int> tuple;
    std::vector<BitVec> stack; // preallocated partial AND per depth
    CandidateSet* out = nullptr;
    const SphereCover* cover = nullptr;
    const ThresholdGrid* grid = nullptr;
    bool homogeneous = false;

    void emit(const BitVec& f_bits) {
        const double err = static_cast<double>(f_bits.count_xor(*label_bits)) / n;
        if (err > err_thresh) return;
        HalfspaceIntersection member;
        member.dim = dim;
        const std::int64_t g = homogeneous ? 1 : static_cast<std::int64_t>(grid->values.size());
        for (int p : tuple) {
            member.normals.push_back(cover->points[static_cast<std::size_t>(p / g)]);
            member.thresholds.push_back(homogeneous ? 0.0 : grid->values[static_cast<std::size_t>(p % g)]);
        }
        out->members.push_back(std::move(member));
        out->train_errors.push_back(err);
        out->ranks.push_back(enumeration_rank(tuple, m, k));
    }

    void recurse(std::size_t from_alive, int depth) {
        emit(stack[static_cast<std::size_t>(depth)]);
        if (depth == k) return;
        for (std::size_t ai = from_alive; ai < alive->size(); ++ai) {
            const int p = (*alive)[ai];
            tuple.push_back(p);
            BitVec& next = stack[static_cast<std::size_t>(depth + 1)];
            next.words = stack[static_cast<std::size_t>(depth)].words;
            next.and_assign((*pair_bits)[static_cast<std::size_t>(p)]);
            recurse(ai, depth + 1);
            tuple.pop_back();
        }
    }
};

} // namespace

CandidateSet build_candidate_set(const SphereCover& cover,
                                 const std::optional<ThresholdGrid>& grid,
                                 int k, const LabeledSample& train,
                                 double err_thresh, std::int64_t budget) {
    TDS_REQUIRE(k >= 0, ErrorCode::DegenerateInput, "k must be >= 0");
    const int n = train.n();
    TDS_REQUIRE(n >= 1, ErrorCode::InsufficientData, "empty training set");

    const bool homogeneous = !grid.has_value();
    const std::int64_t c = static_cast<std::int64_t>(cover.points.size());
    const std::int64_t g = homogeneous ? 1 : static_cast<std::int64_t>(grid->values.size());
    const std::int64_t m = c * g;

    CandidateSet out;
    out.train_err_threshold = err_thresh;
    out.total_enumerated = multiset_total(m, k);
    TDS_REQUIRE(out.total_enumerated <= budget, ErrorCode::BudgetExceeded,
                "candidate count " + std::to_string(out.total_enumerated) +
                    " exceeds budget");

    BitVec label_bits(n);
    for (int i = 0; i < n; ++i)
        if (train.labels[i] == 1) label_bits.set(i);
    const int n_pos = label_bits.count();

    // Sign bit patterns for every (direction, threshold) pair.
    std::vector<BitVec> pair_bits(static_cast<std::size_t>(m));
    if (m > 0) {
        Mat normals(train.d(), c);
        for (std::int64_t i = 0; i < c; ++i) normals.col(i) = cover.points[static_cast<std::size_t>(i)];
        const Mat dots = train.points * normals; // n x c
        for (std::int64_t ui = 0; ui < c; ++ui) {
            for (std::int64_t ti = 0; ti < g; ++ti) {
                const double theta = homogeneous ? 0.0 : grid->values[static_cast<std::size_t>(ti)];
                BitVec b(n);
                for (int i = 0; i < n; ++i)
                    if (dots(i, ui) + theta >= 0.0) b.set(i);
                pair_bits[static_cast<std::size_t>(ui * g + ti)] = std::move(b);
            }
        }
    }

    // Any candidate containing pair p has training error at least
    // (#positives - #(positives inside p)) / n, so pairs violating the filter
    // on that bound alone can never appear in a surviving candidate. The
    // enumeration over the remaining pairs yields exactly the brute-force set.
    std::vector<int> alive;
    for (std::int64_t p = 0; p < m; ++p) {
        const int captured = pair_bits[static_cast<std::size_t>(p)].count_and(label_bits);
        const double lower_bound = static_cast<double>(n_pos - captured) / n;
        if (lower_bound <= err_thresh) alive.push_back(static_cast<int>(p));
    }

    EnumState st;
    st.pair_bits = &pair_bits;
    st.alive = &alive;
    st.label_bits = &label_bits;
    st.n = n;
    st.k = k;
    st.dim = train.d();
    st.err_thresh = err_thresh;
    st.m = m;
    st.out = &out;
    st.cover = &cover;
    st.grid = homogeneous ? nullptr : &grid.value();
    st.homogeneous = homogeneous;
    st.stack.assign(static_cast<std::size_t>(k) + 1, BitVec(n));
    st.stack[0] = BitVec::ones(n);
    st.recurse(0, 0);
    return out;
}

} // namespace tds
