#include "tds/concepts.hpp"

#include <cmath>

#include <json.hpp>

namespace tds {

void HalfspaceIntersection::validate() const {
    TDS_REQUIRE(dim >= 1, ErrorCode::DegenerateInput, "dimension must be >= 1");
    TDS_REQUIRE(normals.size() == thresholds.size(), ErrorCode::DegenerateInput,
                "normals/thresholds size mismatch");
    for (const Vec& w : normals) {
        TDS_REQUIRE(static_cast<int>(w.size()) == dim, ErrorCode::DegenerateInput,
                    "normal dimension mismatch");
        TDS_REQUIRE(std::abs(w.norm() - 1.0) <= 1e-8, ErrorCode::DegenerateInput,
                    "normal not unit");
    }
}

int label(const HalfspaceIntersection& c, const Vec& x) {
    TDS_REQUIRE(static_cast<int>(x.size()) == c.dim, ErrorCode::DegenerateInput,
                "point dimension mismatch");
    for (int i = 0; i < c.k(); ++i) {
        if (c.normals[i].dot(x) + c.thresholds[i] < 0.0) return -1;
    }
    return 1;
}

int label_row(const HalfspaceIntersection& c, const Eigen::RowVectorXd& x) {
    for (int i = 0; i < c.k(); ++i) {
        if (x * c.normals[i] + c.thresholds[i] < 0.0) return -1;
    }
    return 1;
}

std::string HalfspaceIntersection::to_json() const {
    nlohmann::json j;
    j["k"] = k();
    j["d"] = dim;
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(k()) * dim);
    for (const Vec& w : normals)
        for (int i = 0; i < dim; ++i) flat.push_back(w[i]);
    j["normals"] = flat;
    j["thresholds"] = thresholds;
    return j.dump();
}

HalfspaceIntersection HalfspaceIntersection::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    HalfspaceIntersection c;
    c.dim = j.at("d").get<int>();
    const int k = j.at("k").get<int>();
    const auto flat = j.at("normals").get<std::vector<double>>();
    TDS_REQUIRE(static_cast<int>(flat.size()) == k * c.dim, ErrorCode::DegenerateInput,
                "normals array has wrong length");
    for (int i = 0; i < k; ++i) {
        Vec w(c.dim);
        for (int t = 0; t < c.dim; ++t) w[t] = flat[static_cast<std::size_t>(i) * c.dim + t];
        c.normals.push_back(std::move(w));
    }
    c.thresholds = j.at("thresholds").get<std::vector<double>>();
    c.validate();
    return c;
}

BalanceReport estimate_balance(const HalfspaceIntersection& c, int n,
                               SeededSampler& s, double eta_target) {
    TDS_REQUIRE(n >= 100, ErrorCode::InsufficientData, "balance estimate needs n >= 100");
    int positives = 0;
    Vec x(c.dim);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < c.dim; ++j) x[j] = s.normal();
        if (label(c, x) == 1) ++positives;
    }
    return BalanceReport{static_cast<double>(positives) / n, n, eta_target};
}

namespace {

struct VarEstimate {
    double var;
    double se; // stderr of the variance estimate via fourth moments
};

VarEstimate directional_variance(const Mat& sample, const Vec& dir) {
    const Eigen::VectorXd proj = sample * dir;
    const double n = static_cast<double>(proj.size());
    const double mean = proj.mean();
    double m2 = 0.0, m4 = 0.0;
    for (Eigen::Index i = 0; i < proj.size(); ++i) {
        const double c = proj[i] - mean;
        const double c2 = c * c;
        m2 += c2;
        m4 += c2 * c2;
    }
    m2 /= n;
    m4 /= n;
    const double var_of_var = std::max(0.0, m4 - m2 * m2) / n;
    return {m2, std::sqrt(var_of_var)};
}

} // namespace

NonDegeneracyReport check_non_degeneracy(const HalfspaceIntersection& c,
                                         int n_mc, SeededSampler& s,
                                         double noise_floor_sigmas) {
    c.validate();
    const int k = c.k();
    TDS_REQUIRE(k >= 1 && k <= 4, ErrorCode::DegenerateInput,
                "non-degeneracy check supports 1 <= k <= 4");
    NonDegeneracyReport report;
    report.noise_floor_sigmas = noise_floor_sigmas;
    report.n_mc = n_mc;

    if (k == 1) {
        // No residual pairs: vacuously non-degenerate.
        report.beta_hat = 1.0;
        return report;
    }

    SeededSampler mc = s.split(0x6e646567ULL);
    const Mat sample = sample_truncated_gaussian(c, n_mc, mc);

    double beta_hat = 1.0;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<Vec> span;
        std::vector<int> subset;
        for (int i = 0; i < k; ++i) {
            if (mask & (1u << i)) {
                span.push_back(c.normals[i]);
                subset.push_back(i);
            }
        }
        const OrthonormalBasis W = orthonormalize(span);
        for (int i = 0; i < k; ++i) {
            Vec residual = c.normals[i] - W.project(c.normals[i]);
            if (residual.norm() < 1e-9) continue;
            residual /= residual.norm();

            NonDegeneracyPair pair;
            pair.subset = subset;
            pair.normal = i;
            const VarEstimate lhs_v = directional_variance(sample, residual);
            const VarEstimate rhs_v = directional_variance(sample, c.normals[i]);
            pair.lhs = 1.0 - lhs_v.var;
            pair.rhs_base = 1.0 - rhs_v.var;
            pair.lhs_stderr = lhs_v.se;
            pair.rhs_stderr = rhs_v.se;

            if (pair.lhs <= noise_floor_sigmas * pair.lhs_stderr) {
                pair.lhs_below_floor = true;
                report.infeasible = true;
            } else if (pair.rhs_base > noise_floor_sigmas * pair.rhs_stderr &&
                       pair.lhs < 1.0 && pair.rhs_base < 1.0) {
                const double ratio = std::log(pair.lhs) / std::log(pair.rhs_base);
                pair.beta = std::max(1.0, ratio);
                beta_hat = std::max(beta_hat, *pair.beta);
            }
            report.pairs.push_back(std::move(pair));
        }
    }
    if (!report.infeasible) report.beta_hat = beta_hat;
    return report;
}

HalfspaceIntersection random_balanced_intersection(int d, int k, double eta_min,
                                                   SeededSampler& s,
                                                   int max_tries,
                                                   bool homogeneous,
                                                   int n_balance) {
    TDS_REQUIRE(k >= 1, ErrorCode::DegenerateInput, "k must be >= 1");
    TDS_REQUIRE(eta_min > 0.0 && eta_min < 0.5, ErrorCode::DegenerateInput,
                "eta_min must lie in (0, 1/2)");
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        HalfspaceIntersection c;
        c.dim = d;
        for (int i = 0; i < k; ++i) {
            Vec w(d);
            double norm = 0.0;
            do {
                for (int j = 0; j < d; ++j) w[j] = s.normal();
                norm = w.norm();
            } while (norm < 1e-12);
            c.normals.push_back(w / norm);
            c.thresholds.push_back(homogeneous ? 0.0 : (2.0 * s.uniform() - 1.0));
        }
        SeededSampler bs = s.split(0xba1a + static_cast<std::uint64_t>(attempt));
        const BalanceReport rep = estimate_balance(c, n_balance, bs, eta_min);
        if (rep.eta_hat >= eta_min && rep.eta_hat <= 1.0 - eta_min) return c;
    }
    throw TdsError(ErrorCode::GenerationFailed,
                   "no balanced intersection found in max_tries attempts");
}

} // namespace tds
