#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "heatspec/fit.hpp"
#include "heatspec/heat_coefficients.hpp"
#include "heatspec/models.hpp"
#include "heatspec/spectra.hpp"

namespace heatspec {

enum class Provenance { exact, fitted };

struct OperatorCoefficients {
    int p = 0;
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    std::array<double, 4> a{};                         // float rendering, always present
    std::optional<std::array<ExactValue, 4>> a_exact;  // exact provenance only
};

/// Heat coefficients of one operator pair on one manifold, with the standing
/// hypothesis data (dimension and fixed scalar curvature tau). tau is an
/// input, never inferred from the coefficients.
struct SpectralDataset {
    int m = 0;
    Rational tau;
    OperatorPair pair = OperatorPair::dirichlet_neumann;
    Provenance provenance = Provenance::fitted;
    std::array<OperatorCoefficients, 2> ops;
};

SpectralDataset exact_dataset(const ModelManifold& model, OperatorPair pair);

SpectralDataset fitted_dataset(const std::array<FitResult, 2>& fits, int m, const Rational& tau,
                               OperatorPair pair);

struct RecoveryResult {
    Provenance provenance = Provenance::fitted;
    int m = 0;
    double vol_M = 0, vol_dM = 0;
    double I0 = 0, I1 = 0, I2 = 0;
    std::optional<BoundaryInvariants> invariants_exact;
    BoundaryClassification classification;
    Rational determinant;  // of the 2x2 bracket system actually solved
    double tol = 0;        // classification threshold (0 on the exact route)
};

/// Inverts the coefficient formulas: vol(M) from a0, vol(dM) from a1, the
/// mean-curvature integral from a2, and the two quadratic invariants from
/// the pair of a3 values after subtracting the spectrally-determined star
/// terms (with rho_mm = tau/m under the Einstein hypothesis). Exact data is
/// processed in rational arithmetic end to end; fitted data in doubles with
/// a classification threshold (default 1e-2 vol(dM)).
RecoveryResult recover_invariants(const SpectralDataset& data,
                                  std::optional<double> tol = {});

struct PropertyTransfer {
    std::string property;
    bool a_has = false;
    bool b_has = false;
    bool holds = false;  // vacuous or transferred
};

struct TransferReport {
    RecoveryResult a, b;
    double delta_I0 = 0, delta_I1 = 0, delta_I2 = 0;  // B minus A
    std::vector<PropertyTransfer> transfers;
    bool all_hold() const {
        for (const auto& t : transfers)
            if (!t.holds) return false;
        return true;
    }
};

/// Recovers invariants on both sides and checks the four boundary-property
/// transfers. Refuses datasets with different tau: equal scalar curvature
/// is the standing hypothesis of the transfer statements.
TransferReport compare_manifolds(const SpectralDataset& a, const SpectralDataset& b,
                                 std::optional<double> tol = {});

/// Full numeric pipeline: fit each spectrum, assemble a fitted dataset,
/// recover and classify.
RecoveryResult classify_from_spectra(const std::array<EigenvalueList, 2>& spectra, int m,
                                     const Rational& tau, OperatorPair pair,
                                     const FitOptions& options = {},
                                     std::optional<double> tol = {});

}  // namespace heatspec
