#pragma once

#include <array>
#include <utility>

#include "heatspec/boundary_ops.hpp"
#include "heatspec/exact_value.hpp"
#include "heatspec/models.hpp"

namespace heatspec {

/// Exact small-time heat-trace coefficients a_0..a_3 for one realization of
/// the p-form Laplacian on a model manifold.
struct HeatCoefficientSet {
    std::string model;
    int m = 0;
    int p = 0;
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    std::array<ExactValue, 4> a;
};

/// Curvature descriptor of the model's fibers.
WeitzenboeckSpec model_weitzenboeck(const ModelManifold& model);

/// a0 = (4 pi)^(-m/2) Tr{id} vol(M)
ExactValue a0(const ModelManifold& model, int p);

/// a1 = (4 pi)^(-(m-1)/2) (1/4) Tr{chi} vol(dM)
ExactValue a1(const ModelManifold& model, int p, BoundaryCondition bc);

/// a2 = (4 pi)^(-m/2) (1/6) { Tr{6 E_p + tau} vol(M) + Tr{2 Laa + 12 S}[dM] }
ExactValue a2(const ModelManifold& model, int p, BoundaryCondition bc);

/// a3 = (4 pi)^(-(m-1)/2) (1/384) Tr{ bracket }[dM], the full boundary
/// integrand of the third coefficient.
ExactValue a3(const ModelManifold& model, int p, BoundaryCondition bc);

HeatCoefficientSet heat_coefficients(const ModelManifold& model, int p, BoundaryCondition bc);

/// Evaluates the two a_3 of an operator pair through the decomposition
/// "spectrally-determined star terms + alpha Laa Lbb + beta Lab Lab" and
/// asserts exact agreement with the direct evaluator; requires m >= 2.
std::pair<ExactValue, ExactValue> a3_from_invariant_rows(const ModelManifold& model, OperatorPair pair);

/// Trace of chi on the effective fiber of (m, p, bc); independent of L.
Rational chi_trace(int m, int p, BoundaryCondition bc);

}  // namespace heatspec
