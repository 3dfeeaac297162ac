#pragma once
#include <functional>
#include <string>
#include <vector>

#include "tds/linalg.hpp"
#include "tds/rng.hpp"

namespace tds {

// Finite-support distribution on R. Support strictly increasing, weights
// nonnegative and summing to 1 within 1e-12.
struct Discrete1D {
    std::vector<double> support;
    std::vector<double> weights;

    void validate() const;
    double moment(int degree) const;
    double tail_mass(double t) const; // Pr[x >= t]
    double sample(SeededSampler& s) const;

    std::string to_json() const;
    static Discrete1D from_json(const std::string& text);

private:
    mutable std::vector<double> cumulative_; // built lazily for sampling
};

// Continuous 1-D law with Gaussian-matched low moments and relocated tail
// mass: sample x ~ N_1, map x in [0, tau] to the atom at t = ln(1/eps),
// where tau solves Phi(tau) - 1/2 = 13 eps. Requires 13 eps < 1/2.
struct MassRelocated1D {
    double eps = 0.0;
    double t = 0.0;
    double tau = 0.0;

    double sample(SeededSampler& s) const;
};

MassRelocated1D build_mass_relocated_1d(double eps);

// Empirical distribution over K draws, duplicates merged with summed weight.
Discrete1D discretize_1d(const std::function<double(SeededSampler&)>& sampler,
                         int K, SeededSampler& s);

// The finite hard instance: discretized mass-relocated law plus its
// certificate numbers. k0 follows ln(1/eps)/(100 ln ln(1/eps)), which is
// below 1 for every representable eps, so the matched-degree window
// [0, 10*k0] is empty at desk scale; the binding a-posteriori check is the
// tail mass >= 12 eps, and max_moment_error records the measured deviation up
// to degree 8 as a diagnostic.
struct HardInstance1D {
    Discrete1D dist;
    double t = 0.0;
    double eps = 0.0;
    int k0 = 0;
    double k0_formula = 0.0;
    int matched_degree = 0;
    double tail_mass = 0.0;
    double max_moment_error = 0.0; // over degrees 0..matched_degree
    double moment_error_to_8 = 0.0;
};

// Discretize-and-check with doubling retries; GenerationFailed when the cap
// is exhausted without meeting the tail bound.
HardInstance1D make_hard_instance_1d(double eps, int K, SeededSampler& s,
                                     int max_doublings = 4);

// Probabilists' Gauss-Hermite rule: nodes/weights integrating polynomials of
// degree <= 2n-1 exactly against N(0,1).
Discrete1D gauss_hermite_quadrature(int nodes);

// Feasibility LP solved by dense phase-1 simplex (Bland's rule).
struct LpResult {
    bool feasible = false;
    std::vector<double> x;
    double phase1_objective = 0.0;
    std::vector<double> farkas; // dual certificate rows when infeasible
    int iterations = 0;
};

// Find x >= 0 with A x = b; on infeasibility, farkas holds y with
// y.A <= 0 and y.b > 0 (the separating polynomial's moment coefficients).
LpResult solve_equality_feasibility(const Mat& A, const Vec& b);

// Reweight D0 so that moments 0..degree equal the Gaussian moments exactly
// while every multiplier mu_x stays >= floor: weights w1(x) = mu_x w0(x).
// The degree-0 constraint makes the output a probability distribution with
// no renormalization. Throws Infeasible with the dual certificate rendered
// into the message; the result is post-verified to 1e-8.
Discrete1D exact_moment_match_lp(const Discrete1D& D0, int degree,
                                 double floor = 0.9);

// n samples of z*v + g_perp with z ~ dist and g_perp standard Gaussian on the
// complement of the unit vector v.
Mat embed_hidden_direction(const Discrete1D& dist, const Vec& v, int n,
                           SeededSampler& s);

} // namespace tds
