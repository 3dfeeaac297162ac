#pragma once
#include <vector>

#include "tds/concepts.hpp"
#include "tds/linalg.hpp"

namespace tds {

// Labeled training set as a row matrix plus +/-1 labels.
struct LabeledSample {
    Mat points;              // n x d
    std::vector<int> labels; // +1 / -1

    int n() const { return static_cast<int>(points.rows()); }
    int d() const { return static_cast<int>(points.cols()); }
};

struct RetrievedSubspace {
    OrthonormalBasis basis;          // rank k
    std::vector<double> eigenvalues; // ascending
    int n_positives = 0;
};

// PCA subspace retrieval: the basis is the k smallest-eigenvalue eigenvectors
// of the centered covariance of the positive training examples. The centered
// form follows the variance-based analysis; the algorithm's literal text
// mentions right singular vectors of the raw sample matrix, and that
// discrepancy is resolved here in favor of the covariance. Directions the
// positives do not span appear with eigenvalue 0 and enter the basis first
// (zero variance is maximal reduction). Needs at least k+1 positives.
RetrievedSubspace retrieve_subspace_pca(const LabeledSample& train, int k);

} // namespace tds
