#include "tds/hard_instances.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tds/gaussian.hpp"

namespace tds {

void Discrete1D::validate() const {
    TDS_REQUIRE(!support.empty(), ErrorCode::DegenerateInput, "empty support");
    TDS_REQUIRE(support.size() == weights.size(), ErrorCode::DegenerateInput,
                "support/weights size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        TDS_REQUIRE(weights[i] >= 0.0, ErrorCode::DegenerateInput, "negative weight");
        if (i > 0)
            TDS_REQUIRE(support[i] > support[i - 1], ErrorCode::DegenerateInput,
                        "support not strictly increasing");
        sum += weights[i];
    }
    TDS_REQUIRE(std::abs(sum - 1.0) <= 1e-12, ErrorCode::DegenerateInput,
                "weights do not sum to 1");
}

double Discrete1D::moment(int degree) const {
    double m = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i)
        m += weights[i] * std::pow(support[i], degree);
    return m;
}

double Discrete1D::tail_mass(double t) const {
    double m = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i)
        if (support[i] >= t) m += weights[i];
    return m;
}

double Discrete1D::sample(SeededSampler& s) const {
    if (cumulative_.size() != weights.size()) {
        cumulative_.resize(weights.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            cumulative_[i] = acc;
        }
        cumulative_.back() = 1.0;
    }
    const double u = s.uniform();
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t idx = std::min(
        static_cast<std::size_t>(it - cumulative_.begin()), support.size() - 1);
    return support[idx];
}

std::string Discrete1D::to_json() const {
    nlohmann::json j;
    j["support"] = support;
    j["weights"] = weights;
    return j.dump();
}

Discrete1D Discrete1D::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Discrete1D d;
    d.support = j.at("support").get<std::vector<double>>();
    d.weights = j.at("weights").get<std::vector<double>>();
    d.validate();
    return d;
}

double MassRelocated1D::sample(SeededSampler& s) const {
    const double x = s.normal();
    return (x >= 0.0 && x <= tau) ? t : x;
}

MassRelocated1D build_mass_relocated_1d(double eps) {
    TDS_REQUIRE(eps > 0.0 && 13.0 * eps < 0.5, ErrorCode::DegenerateInput,
                "mass relocation needs 13*eps < 1/2");
    MassRelocated1D out;
    out.eps = eps;
    out.t = std::log(1.0 / eps);
    out.tau = std_normal_inv_cdf(0.5 + 13.0 * eps);
    return out;
}

Discrete1D discretize_1d(const std::function<double(SeededSampler&)>& sampler,
                         int K, SeededSampler& s) {
    TDS_REQUIRE(K >= 1, ErrorCode::DegenerateInput, "K must be >= 1");
    std::vector<double> draws(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) draws[static_cast<std::size_t>(i)] = sampler(s);
    std::sort(draws.begin(), draws.end());
    Discrete1D d;
    const double w = 1.0 / K;
    for (double x : draws) {
        if (!d.support.empty() && d.support.back() == x) {
            d.weights.back() += w;
        } else {
            d.support.push_back(x);
            d.weights.push_back(w);
        }
    }
    // exact unit total despite accumulation order
    double sum = 0.0;
    for (double& wi : d.weights) sum += wi;
    for (double& wi : d.weights) wi /= sum;
    return d;
}

HardInstance1D make_hard_instance_1d(double eps, int K, SeededSampler& s,
                                     int max_doublings) {
    const MassRelocated1D continuous = build_mass_relocated_1d(eps);
    HardInstance1D inst;
    inst.t = continuous.t;
    inst.eps = eps;
    inst.k0_formula =
        std::log(1.0 / eps) / (100.0 * std::log(std::log(1.0 / eps)));
    inst.k0 = static_cast<int>(std::floor(std::max(0.0, inst.k0_formula)));
    inst.matched_degree = 10 * inst.k0;

    auto fn = [&continuous](SeededSampler& rs) { return continuous.sample(rs); };
    for (int attempt = 0; attempt <= max_doublings; ++attempt, K *= 2) {
        SeededSampler ds = s.split(0xd15c + static_cast<std::uint64_t>(attempt));
        Discrete1D dist = discretize_1d(fn, K, ds);
        const double tail = dist.tail_mass(inst.t);
        double err_matched = 0.0;
        for (int i = 0; i <= inst.matched_degree; ++i)
            err_matched = std::max(err_matched,
                                   std::abs(dist.moment(i) - gaussian_moment_1d(i)));
        double err8 = 0.0;
        for (int i = 0; i <= 8; ++i)
            err8 = std::max(err8, std::abs(dist.moment(i) - gaussian_moment_1d(i)));
        if (tail >= 12.0 * eps) {
            inst.dist = std::move(dist);
            inst.tail_mass = tail;
            inst.max_moment_error = err_matched;
            inst.moment_error_to_8 = err8;
            return inst;
        }
    }
    throw TdsError(ErrorCode::GenerationFailed,
                   "discretization missed the 12*eps tail bound at every K");
}

Discrete1D gauss_hermite_quadrature(int nodes) {
    TDS_REQUIRE(nodes >= 1, ErrorCode::DegenerateInput, "need >= 1 node");
    Mat J = Mat::Zero(nodes, nodes);
    for (int i = 0; i + 1 < nodes; ++i) {
        const double off = std::sqrt(static_cast<double>(i + 1));
        J(i, i + 1) = off;
        J(i + 1, i) = off;
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(J);
    Discrete1D d;
    for (int i = 0; i < nodes; ++i) {
        d.support.push_back(solver.eigenvalues()[i]);
        const double w0 = solver.eigenvectors()(0, i);
        d.weights.push_back(w0 * w0);
    }
    double sum = 0.0;
    for (double w : d.weights) sum += w;
    for (double& w : d.weights) w /= sum;
    return d;
}

LpResult solve_equality_feasibility(const Mat& A_in, const Vec& b_in) {
    const int m = static_cast<int>(A_in.rows());
    const int n = static_cast<int>(A_in.cols());
    TDS_REQUIRE(m >= 1, ErrorCode::DegenerateInput, "empty constraint system");

    // Row scaling, then orient each row so the rhs is nonnegative.
    Mat A = A_in;
    Vec b = b_in;
    for (int i = 0; i < m; ++i) {
        double scale = A.row(i).cwiseAbs().maxCoeff();
        scale = std::max(scale, std::abs(b[i]));
        if (scale > 0.0) {
            A.row(i) /= scale;
            b[i] /= scale;
        }
        if (b[i] < 0.0) {
            A.row(i) = -A.row(i);
            b[i] = -b[i];
        }
    }

    // Phase-1 tableau: columns [structural | artificial | rhs], artificial
    // variables start basic, objective = sum of artificials.
    const int cols = n + m + 1;
    Mat tab = Mat::Zero(m + 1, cols);
    tab.block(0, 0, m, n) = A;
    tab.block(0, n, m, m) = Mat::Identity(m, m);
    tab.col(cols - 1).head(m) = b;
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;
    // objective row: reduced costs; subtract each artificial row once
    for (int i = 0; i < m; ++i) tab.row(m) -= tab.row(i);

    const double tol = 1e-11;
    LpResult result;
    const int max_iters = 20000;
    for (; result.iterations < max_iters; ++result.iterations) {
        // Bland's rule: lowest-index column with a negative reduced cost.
        int enter = -1;
        for (int j = 0; j < n + m; ++j) {
            if (tab(m, j) < -tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (tab(i, enter) > tol) {
                const double ratio = tab(i, cols - 1) / tab(i, enter);
                if (leave < 0 || ratio < best_ratio - tol ||
                    (std::abs(ratio - best_ratio) <= tol &&
                     basis[static_cast<std::size_t>(i)] <
                         basis[static_cast<std::size_t>(leave)])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        TDS_REQUIRE(leave >= 0, ErrorCode::Infeasible,
                    "phase-1 unbounded; constraint system malformed");
        tab.row(leave) /= tab(leave, enter);
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = tab(i, enter);
            if (f != 0.0) tab.row(i) -= f * tab.row(leave);
        }
        basis[static_cast<std::size_t>(leave)] = enter;
    }

    result.phase1_objective = -tab(m, cols - 1);
    if (result.phase1_objective > 1e-9) {
        result.feasible = false;
        result.farkas.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            result.farkas[static_cast<std::size_t>(i)] = 1.0 - tab(m, n + i) - 1.0;
        // reduced cost of artificial i is 1 - y_i, and the objective row holds
        // rc - c, i.e. -y_i
        for (int i = 0; i < m; ++i)
            result.farkas[static_cast<std::size_t>(i)] = -tab(m, n + i);
        return result;
    }

    result.feasible = true;
    result.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) {
        const int var = basis[static_cast<std::size_t>(i)];
        if (var < n) result.x[static_cast<std::size_t>(var)] =
            std::max(0.0, tab(i, cols - 1));
    }
    return result;
}

Discrete1D exact_moment_match_lp(const Discrete1D& D0, int degree, double floor) {
    D0.validate();
    TDS_REQUIRE(degree >= 0, ErrorCode::DegenerateInput, "negative degree");
    const int n = static_cast<int>(D0.support.size());
    const int m = degree + 1;

    Mat A(m, n);
    Vec b(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j)
            A(i, j) = D0.weights[static_cast<std::size_t>(j)] *
                      std::pow(D0.support[static_cast<std::size_t>(j)], i);
        b[i] = gaussian_moment_1d(i);
    }
    // substitute mu = floor + s with s >= 0
    const Vec b_shift = b - floor * (A * Vec::Ones(n));

    const LpResult lp = solve_equality_feasibility(A, b_shift);
    if (!lp.feasible) {
        std::ostringstream os;
        os << "moment-matching LP infeasible (phase-1 optimum "
           << lp.phase1_objective << "); dual certificate polynomial coefficients:";
        for (double y : lp.farkas) os << " " << y;
        throw TdsError(ErrorCode::Infeasible, os.str());
    }

    Discrete1D D1;
    D1.support = D0.support;
    D1.weights.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double mu = floor + lp.x[static_cast<std::size_t>(j)];
        D1.weights[static_cast<std::size_t>(j)] =
            mu * D0.weights[static_cast<std::size_t>(j)];
    }

    for (int i = 0; i <= degree; ++i) {
        const double err = std::abs(D1.moment(i) - gaussian_moment_1d(i));
        TDS_REQUIRE(err <= 1e-8, ErrorCode::Infeasible,
                    "LP solution failed post-verification at degree " +
                        std::to_string(i));
    }
    return D1;
}

Mat embed_hidden_direction(const Discrete1D& dist, const Vec& v, int n,
                           SeededSampler& s) {
    TDS_REQUIRE(std::abs(v.norm() - 1.0) <= 1e-8, ErrorCode::DegenerateInput,
                "hidden direction must be unit");
    const int d = static_cast<int>(v.size());
    Mat out(n, d);
    Vec g(d);
    for (int i = 0; i < n; ++i) {
        const double z = dist.sample(s);
        for (int j = 0; j < d; ++j) g[j] = s.normal();
        g -= g.dot(v) * v;
        out.row(i) = (z * v + g).transpose();
    }
    return out;
}

} // namespace tds
