#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heatspec/exact_value.hpp"
#include "heatspec/exterior.hpp"

namespace heatspec {

enum class ModelKind { interval, disk, cylinder, hemisphere };

std::string to_string(ModelKind kind);

/// One connected boundary component with constant second fundamental form.
struct BoundaryComponent {
    ExactValue volume;        // (m-1)-volume; for m = 1 the count of points
    SecondFundamentalForm L;  // constant over the component
};

/// Integrated boundary invariants: I0 = Laa[dM], I1 = LaaLbb[dM],
/// I2 = LabLab[dM].
struct BoundaryInvariants {
    int m;
    ExactValue I0, I1, I2, vol_dM;
};

/// Same invariants as floating-point data (the fitted route).
struct BoundaryInvariantsF {
    int m;
    double I0, I1, I2, vol_dM;
};

/// Solvable model geometry with exact data. All catalog members are
/// Einstein; tau is the (constant) scalar curvature and rho_mm = tau/m on
/// the boundary.
struct ModelManifold {
    std::string name;
    ModelKind kind;
    int m;
    std::map<std::string, ExactValue> parameters;
    Rational tau;
    Rational einstein_lambda;  // tau / m
    Rational rho_mm;           // tau / m
    ExactValue vol_M;
    std::vector<BoundaryComponent> boundary;
    int b0, b1;
    // certificate constant: the eigenvalue counting function of every
    // boundary condition handled here satisfies N(s) <= W s^(m/2) + W
    double weyl_constant;

    ExactValue vol_dM() const;
    BoundaryInvariants invariants() const;
    BoundaryInvariantsF invariants_float() const;
};

ModelManifold make_interval(const ExactValue& length);
ModelManifold make_disk(const Rational& radius);
ModelManifold make_cylinder(const ExactValue& height, const ExactValue& radius);
ModelManifold make_hemisphere();

/// Desk-scale defaults: interval(pi), disk(1), cylinder(pi, 1), hemisphere.
std::vector<ModelManifold> catalog();

struct BoundaryClassification {
    bool totally_geodesic = false;
    bool minimal = false;
    bool totally_umbillic = false;
    bool strongly_totally_umbillic = false;
    std::optional<double> mu;            // constant of the strong umbillicity test
    std::optional<ExactValue> mu_exact;  // exact route only
};

/// Exact classification (zero tests in rational arithmetic).
BoundaryClassification classify_boundary(const BoundaryInvariants& inv);

/// Floating classification with threshold tol; each criterion quantity is
/// compared against tol directly.
BoundaryClassification classify_boundary(const BoundaryInvariantsF& inv, double tol);

/// Default threshold for floating invariants.
double default_classification_tol(const BoundaryInvariantsF& inv);

/// Pointwise umbillicity decision for one second fundamental form, computed
/// along two independent exact routes (matrix entries vs characteristic
/// polynomial) plus a numeric eigenvalue spread; the exact routes must
/// agree or the call throws.
struct UmbillicOracleResult {
    Rational sum_kappa_sq;        // Lab Lab = sum of squared eigenvalues
    Rational trace_sq;            // (Laa)^2
    Rational quadratic;           // (m-1) LabLab - LaaLbb, nonnegative
    bool umbillic;                // quadratic == 0
    std::optional<Rational> mu;   // common eigenvalue when umbillic
    double eigenvalue_spread;     // max - min eigenvalue, numeric
};

UmbillicOracleResult pointwise_umbillic_oracle(const SecondFundamentalForm& L);

/// Eigenvalues of a small symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(const SecondFundamentalForm& L);

}  // namespace heatspec
