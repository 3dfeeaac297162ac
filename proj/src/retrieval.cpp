#include "tds/retrieval.hpp"

namespace tds {

RetrievedSubspace retrieve_subspace_pca(const LabeledSample& train, int k) {
    TDS_REQUIRE(k >= 1 && k <= train.d(), ErrorCode::DegenerateInput, "k out of range");
    TDS_REQUIRE(train.n() == static_cast<int>(train.labels.size()),
                ErrorCode::DegenerateInput, "labels size mismatch");

    int n_pos = 0;
    for (int y : train.labels)
        if (y == 1) ++n_pos;
    TDS_REQUIRE(n_pos >= k + 1, ErrorCode::InsufficientData,
                "need at least k+1 positive examples for retrieval");

    Mat positives(n_pos, train.d());
    int row = 0;
    for (int i = 0; i < train.n(); ++i) {
        if (train.labels[i] == 1) positives.row(row++) = train.points.row(i);
    }

    const auto [mean, cov] = empirical_mean_cov(positives);
    (void)mean;
    auto [values, basis] = smallest_k_eigenpairs(cov, k);

    RetrievedSubspace out;
    out.basis = std::move(basis);
    out.eigenvalues = std::move(values);
    out.n_positives = n_pos;
    return out;
}

} // namespace tds
