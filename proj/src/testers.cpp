#include "tds/testers.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "tds/bitvec.hpp"

namespace tds {

TestVerdict spectral_test(const Mat& X) {
    TDS_REQUIRE(X.rows() >= 2, ErrorCode::InsufficientData, "spectral test needs >= 2 points");
    const auto [mean, cov] = empirical_mean_cov(X);
    (void)mean;
    return TestVerdict::from(largest_eigenvalue(cov), 2.0, "spectral");
}

double band_mass(const Eigen::VectorXd& dots, double center, double halfwidth) {
    int inside = 0;
    for (Eigen::Index i = 0; i < dots.size(); ++i)
        if (std::abs(dots[i] + center) <= halfwidth) ++inside;
    return static_cast<double>(inside) / static_cast<double>(dots.size());
}

TestVerdict band_test_homogeneous(const Vec& u, const Mat& X, double eps1) {
    TDS_REQUIRE(eps1 > 0.0 && eps1 < 0.5, ErrorCode::DegenerateInput,
                "band test needs eps1 in (0, 1/2)");
    const double scale = std::pow(eps1, 2.0 / 3.0);
    const double mass = band_mass(X * u, 0.0, 2.0 * scale);
    return TestVerdict::from(mass, 5.0 * scale, "band");
}

TestVerdict band_test_general(const Vec& u, double theta, const Mat& X,
                              double eps1, double T) {
    TDS_REQUIRE(std::abs(theta) <= T + 1e-12, ErrorCode::DegenerateInput,
                "band test needs |theta| <= T");
    const double gamma = 10.0 * (eps1 * T + std::pow(eps1, 2.0 / 3.0));
    const double mass = band_mass(X * u, theta, gamma);
    return TestVerdict::from(mass, 5.0 * gamma, "band");
}

TestVerdict moment_test(const Mat& X, const MomentTestParams& p) {
    const int d = static_cast<int>(X.cols());
    const int n = static_cast<int>(X.rows());
    const auto indices = enumerate_multi_indices(d, p.r, p.index_cap);

    // power table: powers[j](i, a) = X(i, j)^a
    std::vector<Mat> powers(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        Mat pw(n, p.r + 1);
        pw.col(0).setOnes();
        for (int a = 1; a <= p.r; ++a)
            pw.col(a) = pw.col(a - 1).cwiseProduct(X.col(j));
        powers[static_cast<std::size_t>(j)] = std::move(pw);
    }

    double statistic = -std::numeric_limits<double>::infinity();
    std::string witness;
    Eigen::VectorXd mono(n);
    for (const MultiIndex& alpha : indices) {
        mono.setOnes();
        for (int j = 0; j < d; ++j) {
            const int a = alpha.alpha[static_cast<std::size_t>(j)];
            if (a > 0) mono = mono.cwiseProduct(powers[static_cast<std::size_t>(j)].col(a));
        }
        const double emp = mono.mean();
        const double oracle = gaussian_moment_multi(alpha);
        double dev = std::abs(emp - oracle);
        if (p.rule == MomentRule::SamplingAdjusted) {
            const double var = std::max(0.0, mono.squaredNorm() / n - emp * emp);
            dev -= 3.0 * std::sqrt(var / n);
        }
        if (dev > statistic) {
            statistic = dev;
            std::ostringstream os;
            os << "alpha=(";
            for (int j = 0; j < d; ++j) os << (j ? "," : "") << alpha.alpha[static_cast<std::size_t>(j)];
            os << ")";
            witness = os.str();
        }
    }
    return TestVerdict::from(statistic, p.delta, witness);
}

TestVerdict discrepancy_test(const CandidateSet& F, const Mat& X, double eps) {
    TDS_REQUIRE(!F.members.empty(), ErrorCode::DegenerateInput,
                "discrepancy test needs a nonempty candidate set");
    const int n = static_cast<int>(X.rows());
    const std::size_t f = F.members.size();

    // Distinct (normal, threshold) values across members share one
    // dot-product pass.
    auto key_of = [](const Vec& w, double theta) {
        std::vector<double> key(static_cast<std::size_t>(w.size()) + 1);
        for (Eigen::Index t = 0; t < w.size(); ++t) key[static_cast<std::size_t>(t)] = w[t];
        key.back() = theta;
        return key;
    };
    std::map<std::vector<double>, int> slot;
    std::vector<const Vec*> ws;
    std::vector<double> thetas;
    for (const auto& member : F.members) {
        for (int i = 0; i < member.k(); ++i) {
            const auto key = key_of(member.normals[static_cast<std::size_t>(i)],
                                    member.thresholds[static_cast<std::size_t>(i)]);
            if (slot.emplace(key, static_cast<int>(ws.size())).second) {
                ws.push_back(&member.normals[static_cast<std::size_t>(i)]);
                thetas.push_back(member.thresholds[static_cast<std::size_t>(i)]);
            }
        }
    }

    std::vector<BitVec> hs_bits(ws.size());
    Eigen::VectorXd dots(n);
    for (std::size_t h = 0; h < ws.size(); ++h) {
        dots = X * (*ws[h]);
        BitVec b(n);
        for (int i = 0; i < n; ++i)
            if (dots[i] + thetas[h] >= 0.0) b.set(i);
        hs_bits[h] = std::move(b);
    }

    std::vector<BitVec> member_bits(f);
    for (std::size_t mi = 0; mi < f; ++mi) {
        const auto& member = F.members[mi];
        BitVec b = BitVec::ones(n);
        for (int i = 0; i < member.k(); ++i) {
            const auto key = key_of(member.normals[static_cast<std::size_t>(i)],
                                    member.thresholds[static_cast<std::size_t>(i)]);
            b.and_assign(hs_bits[static_cast<std::size_t>(slot.at(key))]);
        }
        member_bits[mi] = std::move(b);
    }

    double statistic = 0.0;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < f; ++i) {
        for (std::size_t j = i + 1; j < f; ++j) {
            const double dis =
                static_cast<double>(member_bits[i].count_xor(member_bits[j])) / n;
            if (dis > statistic) {
                statistic = dis;
                wi = i;
                wj = j;
            }
        }
    }
    std::ostringstream os;
    os << "pair=(" << wi << "," << wj << ")";
    return TestVerdict::from(statistic, eps / 2.0, os.str());
}

} // namespace tds
