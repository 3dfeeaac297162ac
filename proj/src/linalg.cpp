#include "tds/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace tds {

void OrthonormalBasis::validate() const {
    TDS_REQUIRE(rank() <= dim, ErrorCode::DegenerateInput, "basis rank exceeds dimension");
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        TDS_REQUIRE(std::abs(vectors[i].norm() - 1.0) <= 1e-10,
                    ErrorCode::DegenerateInput, "basis vector not unit");
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            TDS_REQUIRE(std::abs(vectors[i].dot(vectors[j])) <= 1e-10,
                        ErrorCode::DegenerateInput, "basis vectors not orthogonal");
        }
    }
}

SymMatrix::SymMatrix(Mat m) {
    TDS_REQUIRE(m.rows() == m.cols(), ErrorCode::DegenerateInput, "matrix not square");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    TDS_REQUIRE(asym <= 1e-10, ErrorCode::DegenerateInput, "matrix not symmetric");
    entries = 0.5 * (m + m.transpose());
}

double angle(const Vec& a, const Vec& b) {
    TDS_REQUIRE(a.size() == b.size(), ErrorCode::DegenerateInput, "dimension mismatch");
    const double na = a.norm();
    const double nb = b.norm();
    TDS_REQUIRE(na > 0.0 && nb > 0.0, ErrorCode::DegenerateInput, "zero vector in angle");
    // atan2 form is stable near 0 and pi, unlike acos of the cosine.
    const Vec ua = a / na;
    const Vec ub = b / nb;
    return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

double project_residual_norm(const Vec& w, const OrthonormalBasis& basis) {
    TDS_REQUIRE(std::abs(w.norm() - 1.0) <= 1e-8, ErrorCode::DegenerateInput,
                "projection query vector must be unit");
    TDS_REQUIRE(w.size() == basis.dim || basis.rank() == 0, ErrorCode::DegenerateInput,
                "dimension mismatch");
    const double s = basis.projection_sq(w);
    return std::min(1.0, std::sqrt(std::max(0.0, s)));
}

OrthonormalBasis orthonormalize(const std::vector<Vec>& vs) {
    OrthonormalBasis basis;
    basis.dim = vs.empty() ? 0 : static_cast<int>(vs.front().size());
    for (const Vec& v : vs) {
        TDS_REQUIRE(static_cast<int>(v.size()) == basis.dim, ErrorCode::DegenerateInput,
                    "dimension mismatch in orthonormalize");
        const double orig = v.norm();
        if (orig == 0.0) continue;
        Vec r = v - basis.project(v);
        r -= basis.project(r); // second pass for numerical orthogonality
        if (r.norm() / orig < 1e-8) continue;
        basis.vectors.push_back(r / r.norm());
    }
    return basis;
}

std::pair<Vec, SymMatrix> empirical_mean_cov(const Mat& rows) {
    const auto n = rows.rows();
    TDS_REQUIRE(n >= 2, ErrorCode::InsufficientData, "need at least 2 points");
    const Vec mean = rows.colwise().mean();
    const Mat centered = rows.rowwise() - mean.transpose();
    Mat cov = (centered.transpose() * centered) / static_cast<double>(n);
    return {mean, SymMatrix(std::move(cov))};
}

std::pair<Vec, SymMatrix> empirical_mean_cov(const std::vector<Vec>& points) {
    TDS_REQUIRE(points.size() >= 2, ErrorCode::InsufficientData, "need at least 2 points");
    const auto d = points.front().size();
    Mat rows(points.size(), d);
    for (std::size_t i = 0; i < points.size(); ++i) {
        TDS_REQUIRE(points[i].size() == d, ErrorCode::DegenerateInput, "dimension mismatch");
        rows.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    }
    return empirical_mean_cov(rows);
}

void fix_sign(Vec& v) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        const double m = std::abs(v[i]);
        if (m > best + 1e-15) {
            best = m;
            arg = i;
        }
    }
    if (v[arg] < 0.0) v = -v;
}

std::pair<std::vector<double>, OrthonormalBasis>
smallest_k_eigenpairs(const SymMatrix& M, int k) {
    const int d = M.dim();
    TDS_REQUIRE(k >= 1 && k <= d, ErrorCode::DegenerateInput, "k out of range");
    Eigen::SelfAdjointEigenSolver<Mat> solver(M.entries);
    TDS_REQUIRE(solver.info() == Eigen::Success, ErrorCode::DegenerateInput,
                "eigendecomposition failed");
    std::vector<double> values(k);
    OrthonormalBasis basis;
    basis.dim = d;
    for (int i = 0; i < k; ++i) {
        values[i] = solver.eigenvalues()[i]; // ascending in Eigen
        Vec v = solver.eigenvectors().col(i);
        fix_sign(v);
        basis.vectors.push_back(std::move(v));
    }
    return {std::move(values), std::move(basis)};
}

double largest_eigenvalue(const SymMatrix& M) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(M.entries, Eigen::EigenvaluesOnly);
    TDS_REQUIRE(solver.info() == Eigen::Success, ErrorCode::DegenerateInput,
                "eigendecomposition failed");
    return solver.eigenvalues()[M.dim() - 1];
}

} // namespace tds
