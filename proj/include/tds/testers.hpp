#pragma once
#include <string>

#include "tds/covers.hpp"
#include "tds/gaussian.hpp"
#include "tds/linalg.hpp"

namespace tds {

// Uniform verdict envelope for every accept/reject sub-test:
// accepted <=> statistic <= threshold. `witness` names the offending
// alpha / direction / pair on rejection.
struct TestVerdict {
    bool accepted = false;
    double statistic = 0.0;
    double threshold = 0.0;
    std::string witness;

    static TestVerdict from(double statistic, double threshold,
                            std::string witness = {}) {
        return TestVerdict{statistic <= threshold, statistic, threshold,
                           std::move(witness)};
    }
};

enum class MomentRule { Strict, SamplingAdjusted };

struct MomentTestParams {
    int r = 3;               // degree cap
    double delta = 0.01;     // base tolerance Delta
    MomentRule rule = MomentRule::SamplingAdjusted;
    std::int64_t index_cap = 1000000;
};

// Largest eigenvalue of the centered empirical covariance against the fixed
// threshold 2. |X| >= 2.
TestVerdict spectral_test(const Mat& X);

// Fraction of entries with |dots[i] + center| <= halfwidth. Shared by the
// band testers and the learners' batched band loops.
double band_mass(const Eigen::VectorXd& dots, double center, double halfwidth);

// Empirical mass of the band |u.x| <= 2*eps1^(2/3) against 5*eps1^(2/3).
// Note the threshold exceeds 1 for eps1 >= (1/5)^(3/2) ~ 0.089: the tester is
// vacuous there.
TestVerdict band_test_homogeneous(const Vec& u, const Mat& X, double eps1);

// General variant with gamma = 10*(eps1*T + eps1^(2/3)): mass of
// {|u.x + theta| <= gamma} against 5*gamma. Requires |theta| <= T.
TestVerdict band_test_general(const Vec& u, double theta, const Mat& X,
                              double eps1, double T);

// Low-degree moment comparison against the Gaussian oracle over all alpha
// with degree <= r. Strict rule: statistic = max |emp - oracle|, threshold =
// Delta. Sampling-adjusted rule folds the per-alpha sampling slack into the
// statistic: statistic = max(|emp - oracle| - 3*sigma_alpha/sqrt(n)),
// threshold = Delta, so the envelope invariant still holds.
TestVerdict moment_test(const Mat& X, const MomentTestParams& p);

// Exhaustive max over unordered candidate pairs of empirical disagreement on
// X, against eps/2.
TestVerdict discrepancy_test(const CandidateSet& F, const Mat& X, double eps);

} // namespace tds
