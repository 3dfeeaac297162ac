#pragma once
#include <optional>
#include <string>
#include <vector>

#include "tds/covers.hpp"
#include "tds/retrieval.hpp"
#include "tds/testers.hpp"

namespace tds {

enum class Mode { Homogeneous, General };
enum class ParameterMode { Theory, Practical };

enum class RejectReason {
    SpectralFail,
    BandFail,
    MomentFail,
    EmptyCandidates,
    DiscrepancyFail,
    BudgetExceeded,
};

const char* reject_reason_name(RejectReason r);

// Learner parameters. Theory mode derives the internal scales from (eps, k,
// C): eps' = eps^{3/2}/(C k^{3/2}), eps'' = eps^6/(C k^7),
// T = 3 sqrt(ln(10k/eps)), r = ceil(ln(10k/eps)), Delta = d^{-r} with the
// strict moment rule; the guarantees assume a sufficiently large C, and the
// default C = 1 makes theory mode a faithful but uncalibrated rendering.
// Practical mode takes every scale directly. The threshold grid gets its own
// spacing knob: reusing eps' for the grid (as the general algorithm's text
// does) is infeasible at desk scale.
struct TdsParams {
    double eps = 0.25;
    double delta = 0.02; // informational; accept rates are reported, not amplified
    int k = 1;
    Mode mode = Mode::Homogeneous;
    ParameterMode parameter_mode = ParameterMode::Practical;

    // theory-mode constants
    double C = 1.0;
    double C2 = 1.0;
    double C3 = 1.0;

    // practical-mode scales
    double eps1 = 0.001;       // band-test scale (eps')
    double eps2 = 0.15;        // sphere-cover lattice step (eps'')
    int r = 3;                 // moment degree cap
    double delta_moment = 0.01;
    MomentRule moment_rule = MomentRule::SamplingAdjusted;
    double T = 2.0;            // threshold range
    double grid_step = 0.05;   // threshold grid spacing

    // budgets
    std::int64_t cover_budget = 10000000;
    std::int64_t candidate_budget = 10000000;
    std::int64_t moment_index_cap = 1000000;
};

struct ResolvedScales {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double T = 0.0;
    double grid_step = 0.0;
    double delta_moment = 0.0;
    int r = 0;
    MomentRule moment_rule = MomentRule::SamplingAdjusted;
};

ResolvedScales resolve_scales(const TdsParams& p, int d);

struct TdsDiagnostics {
    std::optional<TestVerdict> moment;
    std::optional<TestVerdict> spectral;
    std::optional<TestVerdict> band_failure; // first failing band verdict
    int bands_run = 0;
    std::optional<TestVerdict> discrepancy;
    int cover_size = 0;
    int grid_size = 0;
    std::int64_t candidates_enumerated = 0;
    int candidates_kept = 0;
    std::vector<double> retrieval_eigenvalues;
    int n_positives = 0;
    double output_train_error = -1.0;
    std::string note;
};

// Accept carries a hypothesis that is always a member of the final candidate
// set (an intersection of at most k halfspaces).
struct TdsOutcome {
    bool accepted = false;
    std::optional<RejectReason> reason;
    std::optional<HalfspaceIntersection> hypothesis;
    TdsDiagnostics diagnostics;

    std::string to_json() const;
};

// Algorithm pipeline, homogeneous: retrieval -> sphere cover -> spectral test
// -> band test per cover point -> candidate filter at eps/5 -> discrepancy at
// eps/2 -> minimum-training-error output (ties to the lowest enumeration
// rank). Too few positives for retrieval degrade to a rank-0 subspace, so
// only the constant +1 candidate can survive; budget blow-ups reject with a
// diagnostic rather than aborting.
TdsOutcome tds_learn_homogeneous(const LabeledSample& train, const Mat& test,
                                 const TdsParams& params);

// General pipeline: moment test first, then retrieval, cover x threshold
// grid, spectral, band test per (u, theta), candidate filter over multisets
// of size <= k, discrepancy, output.
TdsOutcome tds_learn_general(const LabeledSample& train, const Mat& test,
                             const TdsParams& params);

// Dispatch on params.mode.
TdsOutcome tds_learn(const LabeledSample& train, const Mat& test,
                     const TdsParams& params);

} // namespace tds
