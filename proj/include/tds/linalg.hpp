#pragma once
#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "tds/errors.hpp"

namespace tds {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Orthonormal basis of an m-dimensional subspace of R^d. Pairwise dot
// products within 1e-10 of zero, norms within 1e-10 of one, m <= d.
struct OrthonormalBasis {
    std::vector<Vec> vectors;
    int dim = 0;

    int rank() const { return static_cast<int>(vectors.size()); }

    // Squared norm of the orthogonal projection of w onto the span.
    double projection_sq(const Vec& w) const {
        double s = 0.0;
        for (const Vec& v : vectors) {
            const double c = v.dot(w);
            s += c * c;
        }
        return s;
    }

    Vec project(const Vec& w) const {
        Vec p = Vec::Zero(dim);
        for (const Vec& v : vectors) p += v.dot(w) * v;
        return p;
    }

    void validate() const;
};

// Symmetric d x d matrix; construction symmetrizes and rejects asymmetry
// beyond 1e-10.
struct SymMatrix {
    Mat entries;

    SymMatrix() = default;
    explicit SymMatrix(Mat m);

    int dim() const { return static_cast<int>(entries.rows()); }
};

// Angle between two nonzero vectors, in [0, pi]. Throws DegenerateInput on a
// zero vector.
double angle(const Vec& a, const Vec& b);

// ||proj_U(w)||_2 for a unit vector w (unit within 1e-8, else
// DegenerateInput). Result clamped to [0, 1].
double project_residual_norm(const Vec& w, const OrthonormalBasis& basis);

// Modified Gram-Schmidt with one re-orthogonalization pass. Vectors whose
// residual after projection has relative norm < 1e-8 are dropped, so the
// result spans span(vs) with rank = dim of the span. Empty input gives a
// rank-0 basis (dim taken from the first vector, 0 if none).
OrthonormalBasis orthonormalize(const std::vector<Vec>& vs);

// Mean and centered covariance with 1/n normalization (population-style; the
// concentration statements this feeds are stated for large n). n >= 2, else
// InsufficientData.
std::pair<Vec, SymMatrix> empirical_mean_cov(const std::vector<Vec>& points);
std::pair<Vec, SymMatrix> empirical_mean_cov(const Mat& rows);

// k smallest eigenpairs of a symmetric matrix, eigenvalues ascending.
// Eigenvector signs are fixed so the largest-magnitude coordinate (lowest
// index on ties) is positive. k in [1, d], else DegenerateInput.
std::pair<std::vector<double>, OrthonormalBasis>
smallest_k_eigenpairs(const SymMatrix& M, int k);

// Largest eigenvalue of a symmetric matrix.
double largest_eigenvalue(const SymMatrix& M);

// Deterministic sign convention shared by eigenvector outputs.
void fix_sign(Vec& v);

} // namespace tds
