#pragma once
#include <optional>
#include <string>
#include <vector>

#include "tds/gaussian.hpp"
#include "tds/linalg.hpp"
#include "tds/rng.hpp"

namespace tds {

// Ground-truth concept: x -> 2 AND_i 1{w_i . x + tau_i >= 0} - 1.
// Normals are unit within 1e-8. k = 0 is the constant +1 function (needed as
// the general learner's fallback when every halfspace is high-bias).
struct HalfspaceIntersection {
    std::vector<Vec> normals;
    std::vector<double> thresholds;
    int dim = 0;

    int k() const { return static_cast<int>(normals.size()); }
    bool homogeneous() const {
        for (double t : thresholds)
            if (t != 0.0) return false;
        return true;
    }
    void validate() const;

    // JSON record {k, d, normals (row-major), thresholds}; the harness config
    // and records embed these.
    std::string to_json() const;
    static HalfspaceIntersection from_json(const std::string& text);
};

int label(const HalfspaceIntersection& c, const Vec& x);
int label_row(const HalfspaceIntersection& c, const Eigen::RowVectorXd& x);

struct BalanceReport {
    double eta_hat = 0.0; // fraction of +1 labels among n_used samples
    int n_used = 0;
    double eta_target = 0.0;
};

// Empirical positive fraction over n fresh N_d samples. n >= 100.
BalanceReport estimate_balance(const HalfspaceIntersection& c, int n,
                               SeededSampler& s, double eta_target = 0.0);

struct NonDegeneracyPair {
    std::vector<int> subset;  // indices spanning W
    int normal;               // index of w with nonzero residual off span(W)
    double lhs;               // 1 - Var_{N|K}(w_hat' . x)
    double rhs_base;          // 1 - Var_{N|K}(w . x)
    double lhs_stderr;
    double rhs_stderr;
    std::optional<double> beta; // log(lhs)/log(rhs_base) when both in (0,1)
    bool lhs_below_floor = false;
};

struct NonDegeneracyReport {
    std::optional<double> beta_hat; // >= 1, or nullopt when infeasible
    bool infeasible = false;        // some residual reduction under the noise floor
    double noise_floor_sigmas = 3.0;
    int n_mc = 0;
    std::vector<NonDegeneracyPair> pairs;
};

// Monte-Carlo check of the non-degeneracy condition: for every subset W of
// the normals and every normal w with nonzero residual w_hat' off span(W),
// estimate the variance reductions 1 - Var_{N|K}(w_hat'.x) and
// 1 - Var_{N|K}(w.x) from one truncated sample of size n_mc, and take
// beta_hat as the max over pairs of log(LHS)/log(RHS-base) when both lie in
// (0,1) -- the minimal exponent the definition admits. A residual reduction
// at or below the noise floor (3 stderr by default) makes the report
// Infeasible: the condition cannot be certified at this budget. Pairs whose
// RHS-base is below the floor carry no information and are recorded but
// skipped. The paper never operationalizes how to verify beta; this log-ratio
// estimator is this repo's construction.
// Requires k <= 4 (subset enumeration) and region mass >= 1e-3.
NonDegeneracyReport check_non_degeneracy(const HalfspaceIntersection& c,
                                         int n_mc, SeededSampler& s,
                                         double noise_floor_sigmas = 3.0);

// Random concept with unit normals uniform on the sphere; general mode draws
// thresholds uniform in [-1,1]. Resamples until the balance estimate lands in
// [eta_min, 1-eta_min]; GenerationFailed after max_tries.
HalfspaceIntersection random_balanced_intersection(int d, int k, double eta_min,
                                                   SeededSampler& s,
                                                   int max_tries = 50,
                                                   bool homogeneous = true,
                                                   int n_balance = 20000);

} // namespace tds
