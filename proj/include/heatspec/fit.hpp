#pragma once

#include <array>
#include <vector>

#include "heatspec/heat_coefficients.hpp"
#include "heatspec/spectra.hpp"

namespace heatspec {

/// Least-squares recovery of the expansion
///   theta(t) ~ sum_n t^((n-m)/2) a_n
/// from heat-trace samples. Rows are weighted by t^(m/2) so every sample
/// enters at comparable scale; the weighted design matrix has columns
/// t^(n/2) and is solved by Householder QR after column equilibration. The
/// basis is ill-conditioned by nature, so the condition estimate is part of
/// the result, not an afterthought.
struct FitResult {
    int m = 0;
    int n_terms = 0;
    std::vector<double> a_hat;
    double residual_norm = 0.0;
    double condition_estimate = 0.0;
    std::vector<double> t_grid;
};

// Defaults tuned on the full catalog at lambda_max = 4e4: below t ~ 1e-3
// the truncated spectral tail contaminates the samples, above t ~ 0.1 the
// omitted expansion terms do; four guard terms keep a_3 stable under a
// factor-2 grid shift.
struct FitOptions {
    double t_min = 1e-3;
    double t_max = 1e-1;
    int count = 48;
    int n_terms = 8;
    double condition_limit = 1e12;
};

FitResult fit_heat_trace(const std::vector<HeatTraceSample>& samples, int m, int n_terms,
                         double condition_limit = 1e12);

FitResult fit_spectrum(const EigenvalueList& list, const FitOptions& options = {});

struct CoefficientCheck {
    int n;
    double exact;
    double fitted;
    double error;  // relative, or absolute when the exact value is zero
    double tol;
    bool absolute;
    bool pass;
};

struct FitComparison {
    std::vector<CoefficientCheck> rows;
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

/// Per-coefficient comparison against the closed forms: relative error
/// against tol[n], switching to absolute error (threshold tol[n] * max_k
/// |a_k|) when the exact coefficient vanishes.
FitComparison compare_fit(const FitResult& fit, const HeatCoefficientSet& exact,
                          const std::array<double, 4>& tol);

}  // namespace heatspec
