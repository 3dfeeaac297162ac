#include "tds/tds.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace tds {

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::SpectralFail: return "SpectralFail";
        case RejectReason::BandFail: return "BandFail";
        case RejectReason::MomentFail: return "MomentFail";
        case RejectReason::EmptyCandidates: return "EmptyCandidates";
        case RejectReason::DiscrepancyFail: return "DiscrepancyFail";
        case RejectReason::BudgetExceeded: return "BudgetExceeded";
    }
    return "Unknown";
}

ResolvedScales resolve_scales(const TdsParams& p, int d) {
    TDS_REQUIRE(p.eps > 0.0 && p.eps < 1.0, ErrorCode::DegenerateInput,
                "eps must lie in (0,1)");
    TDS_REQUIRE(p.k >= 1, ErrorCode::DegenerateInput, "k must be >= 1");
    ResolvedScales s;
    if (p.parameter_mode == ParameterMode::Practical) {
        s.eps1 = p.eps1;
        s.eps2 = p.eps2;
        s.T = p.T;
        s.grid_step = p.grid_step;
        s.delta_moment = p.delta_moment;
        s.r = p.r;
        s.moment_rule = p.moment_rule;
    } else {
        const double k = p.k;
        s.eps1 = std::pow(p.eps, 1.5) / (p.C * std::pow(k, 1.5));
        s.eps2 = std::pow(p.eps, 6.0) / (p.C * std::pow(k, 7.0));
        s.T = 3.0 * std::sqrt(std::log(10.0 * k / p.eps));
        s.grid_step = s.eps1;
        s.r = static_cast<int>(std::ceil(std::log(10.0 * k / p.eps)));
        s.delta_moment = std::pow(static_cast<double>(d), -static_cast<double>(s.r));
        s.moment_rule = MomentRule::Strict;
    }
    return s;
}

namespace {

TdsOutcome reject(RejectReason reason, TdsDiagnostics diag) {
    TdsOutcome out;
    out.accepted = false;
    out.reason = reason;
    out.diagnostics = std::move(diag);
    return out;
}

// Retrieval with the degenerate fallback: too few positives leave a rank-0
// subspace, so the candidate enumeration sees only the constant +1 concept.
RetrievedSubspace retrieve_or_empty(const LabeledSample& train, int k,
                                    TdsDiagnostics& diag) {
    try {
        RetrievedSubspace rs = retrieve_subspace_pca(train, k);
        diag.retrieval_eigenvalues = rs.eigenvalues;
        diag.n_positives = rs.n_positives;
        return rs;
    } catch (const TdsError& e) {
        if (e.code() != ErrorCode::InsufficientData) throw;
        diag.note = "retrieval skipped: too few positives";
        RetrievedSubspace rs;
        rs.basis.dim = train.d();
        return rs;
    }
}

TdsOutcome select_output(CandidateSet F, TdsDiagnostics diag) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < F.members.size(); ++i) {
        if (F.train_errors[i] < F.train_errors[best]) best = i;
        // enumeration emits in rank order, so the first minimum wins ties
    }
    TdsOutcome out;
    out.accepted = true;
    out.hypothesis = F.members[best];
    out.diagnostics = std::move(diag);
    out.diagnostics.output_train_error = F.train_errors[best];
    return out;
}

} // namespace

TdsOutcome tds_learn_homogeneous(const LabeledSample& train, const Mat& test,
                                 const TdsParams& params) {
    TDS_REQUIRE(params.mode == Mode::Homogeneous, ErrorCode::DegenerateInput,
                "homogeneous learner called with general params");
    TDS_REQUIRE(train.n() >= 1, ErrorCode::InsufficientData, "empty training set");
    const ResolvedScales scales = resolve_scales(params, train.d());
    TdsDiagnostics diag;

    const RetrievedSubspace rs = retrieve_or_empty(train, params.k, diag);

    SphereCover cover;
    try {
        cover = build_sphere_cover(rs.basis, scales.eps2, params.cover_budget);
    } catch (const TdsError& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        diag.note = e.what();
        return reject(RejectReason::BudgetExceeded, std::move(diag));
    }
    diag.cover_size = static_cast<int>(cover.points.size());

    diag.spectral = spectral_test(test);
    if (!diag.spectral->accepted)
        return reject(RejectReason::SpectralFail, std::move(diag));

    const double band_scale = std::pow(scales.eps1, 2.0 / 3.0);
    for (std::size_t ui = 0; ui < cover.points.size(); ++ui) {
        const Eigen::VectorXd dots = test * cover.points[ui];
        ++diag.bands_run;
        const double mass = band_mass(dots, 0.0, 2.0 * band_scale);
        TestVerdict v = TestVerdict::from(mass, 5.0 * band_scale,
                                          "band u#" + std::to_string(ui));
        if (!v.accepted) {
            diag.band_failure = std::move(v);
            return reject(RejectReason::BandFail, std::move(diag));
        }
    }

    CandidateSet F;
    try {
        F = build_candidate_set(cover, std::nullopt, params.k, train,
                                params.eps / 5.0, params.candidate_budget);
    } catch (const TdsError& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        diag.note = e.what();
        return reject(RejectReason::BudgetExceeded, std::move(diag));
    }
    diag.candidates_enumerated = F.total_enumerated;
    diag.candidates_kept = static_cast<int>(F.members.size());
    if (F.members.empty())
        return reject(RejectReason::EmptyCandidates, std::move(diag));

    diag.discrepancy = discrepancy_test(F, test, params.eps);
    if (!diag.discrepancy->accepted)
        return reject(RejectReason::DiscrepancyFail, std::move(diag));

    return select_output(std::move(F), std::move(diag));
}

TdsOutcome tds_learn_general(const LabeledSample& train, const Mat& test,
                             const TdsParams& params) {
    TDS_REQUIRE(params.mode == Mode::General, ErrorCode::DegenerateInput,
                "general learner called with homogeneous params");
    TDS_REQUIRE(train.n() >= 1, ErrorCode::InsufficientData, "empty training set");
    const ResolvedScales scales = resolve_scales(params, train.d());
    TdsDiagnostics diag;

    MomentTestParams mp;
    mp.r = scales.r;
    mp.delta = scales.delta_moment;
    mp.rule = scales.moment_rule;
    mp.index_cap = params.moment_index_cap;
    try {
        diag.moment = moment_test(test, mp);
    } catch (const TdsError& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        diag.note = e.what();
        return reject(RejectReason::BudgetExceeded, std::move(diag));
    }
    if (!diag.moment->accepted)
        return reject(RejectReason::MomentFail, std::move(diag));

    const RetrievedSubspace rs = retrieve_or_empty(train, params.k, diag);

    SphereCover cover;
    try {
        cover = build_sphere_cover(rs.basis, scales.eps2, params.cover_budget);
    } catch (const TdsError& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        diag.note = e.what();
        return reject(RejectReason::BudgetExceeded, std::move(diag));
    }
    diag.cover_size = static_cast<int>(cover.points.size());
    const ThresholdGrid grid = build_threshold_grid(scales.grid_step, scales.T);
    diag.grid_size = static_cast<int>(grid.values.size());

    diag.spectral = spectral_test(test);
    if (!diag.spectral->accepted)
        return reject(RejectReason::SpectralFail, std::move(diag));

    const double gamma =
        10.0 * (scales.eps1 * scales.T + std::pow(scales.eps1, 2.0 / 3.0));
    for (std::size_t ui = 0; ui < cover.points.size(); ++ui) {
        const Eigen::VectorXd dots = test * cover.points[ui];
        for (std::size_t ti = 0; ti < grid.values.size(); ++ti) {
            ++diag.bands_run;
            const double mass = band_mass(dots, grid.values[ti], gamma);
            TestVerdict v = TestVerdict::from(
                mass, 5.0 * gamma,
                "band u#" + std::to_string(ui) + " theta=" + std::to_string(grid.values[ti]));
            if (!v.accepted) {
                diag.band_failure = std::move(v);
                return reject(RejectReason::BandFail, std::move(diag));
            }
        }
    }

    CandidateSet F;
    try {
        F = build_candidate_set(cover, grid, params.k, train, params.eps / 5.0,
                                params.candidate_budget);
    } catch (const TdsError& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        diag.note = e.what();
        return reject(RejectReason::BudgetExceeded, std::move(diag));
    }
    diag.candidates_enumerated = F.total_enumerated;
    diag.candidates_kept = static_cast<int>(F.members.size());
    if (F.members.empty())
        return reject(RejectReason::EmptyCandidates, std::move(diag));

    diag.discrepancy = discrepancy_test(F, test, params.eps);
    if (!diag.discrepancy->accepted)
        return reject(RejectReason::DiscrepancyFail, std::move(diag));

    return select_output(std::move(F), std::move(diag));
}

TdsOutcome tds_learn(const LabeledSample& train, const Mat& test,
                     const TdsParams& params) {
    return params.mode == Mode::Homogeneous ? tds_learn_homogeneous(train, test, params)
                                            : tds_learn_general(train, test, params);
}

namespace {
nlohmann::json verdict_json(const TestVerdict& v) {
    return nlohmann::json{{"accepted", v.accepted},
                          {"statistic", v.statistic},
                          {"threshold", v.threshold},
                          {"witness", v.witness}};
}
} // namespace

std::string TdsOutcome::to_json() const {
    nlohmann::json j;
    j["verdict"] = accepted ? "Accept" : "Reject";
    if (reason) j["reason"] = reject_reason_name(*reason);
    if (hypothesis) j["hypothesis"] = nlohmann::json::parse(hypothesis->to_json());
    nlohmann::json d;
    if (diagnostics.moment) d["moment"] = verdict_json(*diagnostics.moment);
    if (diagnostics.spectral) d["spectral"] = verdict_json(*diagnostics.spectral);
    if (diagnostics.band_failure) d["band_failure"] = verdict_json(*diagnostics.band_failure);
    if (diagnostics.discrepancy) d["discrepancy"] = verdict_json(*diagnostics.discrepancy);
    d["bands_run"] = diagnostics.bands_run;
    d["cover_size"] = diagnostics.cover_size;
    d["grid_size"] = diagnostics.grid_size;
    d["candidates_enumerated"] = diagnostics.candidates_enumerated;
    d["candidates_kept"] = diagnostics.candidates_kept;
    d["retrieval_eigenvalues"] = diagnostics.retrieval_eigenvalues;
    d["n_positives"] = diagnostics.n_positives;
    d["output_train_error"] = diagnostics.output_train_error;
    if (!diagnostics.note.empty()) d["note"] = diagnostics.note;
    j["diagnostics"] = d;
    return j.dump();
}

} // namespace tds
