#include "heatspec/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatspec {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::interval: return "interval";
        case ModelKind::disk: return "disk";
        case ModelKind::cylinder: return "cylinder";
        case ModelKind::hemisphere: return "hemisphere";
    }
    return "?";
}

ExactValue ModelManifold::vol_dM() const {
    ExactValue v;
    for (const auto& c : boundary) v += c.volume;
    return v;
}

BoundaryInvariants ModelManifold::invariants() const {
    BoundaryInvariants inv{m, {}, {}, {}, vol_dM()};
    for (const auto& c : boundary) {
        Rational tr = c.L.trace();
        inv.I0 += tr * c.volume;
        inv.I1 += (tr * tr) * c.volume;
        inv.I2 += c.L.frobenius_sq() * c.volume;
    }
    return inv;
}

BoundaryInvariantsF ModelManifold::invariants_float() const {
    BoundaryInvariants inv = invariants();
    return {m, inv.I0.to_double(), inv.I1.to_double(), inv.I2.to_double(),
            inv.vol_dM.to_double()};
}

namespace {

void require_positive_scale(const ExactValue& v, const std::string& what) {
    if (v.sign() <= 0) throw std::invalid_argument(what + " must be positive");
}

}  // namespace

ModelManifold make_interval(const ExactValue& length) {
    require_positive_scale(length, "interval length");
    ModelManifold model;
    model.name = "interval";
    model.kind = ModelKind::interval;
    model.m = 1;
    model.parameters["length"] = length;
    model.tau = Rational(0);
    model.einstein_lambda = Rational(0);
    model.rho_mm = Rational(0);
    model.vol_M = length;
    // two endpoint components; the second fundamental form is vacuous
    model.boundary = {{ExactValue(1), SecondFundamentalForm(1)},
                      {ExactValue(1), SecondFundamentalForm(1)}};
    model.b0 = 1;
    model.b1 = 0;
    // N(s) <= (length/pi) sqrt(s) + 1 for either condition
    model.weyl_constant = length.to_double() / 3.14159265358979323846 + 1.0;
    return model;
}

ModelManifold make_disk(const Rational& radius) {
    if (radius.sign() <= 0) throw std::invalid_argument("disk radius must be positive");
    ModelManifold model;
    model.name = "disk";
    model.kind = ModelKind::disk;
    model.m = 2;
    model.parameters["radius"] = ExactValue(radius);
    model.tau = Rational(0);
    model.einstein_lambda = Rational(0);
    model.rho_mm = Rational(0);
    model.vol_M = ExactValue(radius * radius, 2);  // pi R^2
    // inward-normal convention: L_aa = +1/R, which pins a2(disk, Dirichlet)
    // to the classical value 1/6
    SecondFundamentalForm L(2);
    L.at(0, 0) = Rational(1) / radius;
    model.boundary = {{ExactValue(Rational(2) * radius, 2), L}};  // 2 pi R
    model.b0 = 1;
    model.b1 = 0;
    // Dirichlet: N(s) <= (R^2/4) s. Neumann adds ~ (R/2) sqrt(s), absorbed
    // via sqrt(s) <= s/(2R) + R/2 into the stated single-constant form.
    double r = radius.to_double();
    model.weyl_constant = r * r / 4.0 + r + 2.0;
    return model;
}

ModelManifold make_cylinder(const ExactValue& height, const ExactValue& radius) {
    require_positive_scale(height, "cylinder height");
    require_positive_scale(radius, "cylinder radius");
    ModelManifold model;
    model.name = "cylinder";
    model.kind = ModelKind::cylinder;
    model.m = 2;
    model.parameters["height"] = height;
    model.parameters["radius"] = radius;
    model.tau = Rational(0);
    model.einstein_lambda = Rational(0);
    model.rho_mm = Rational(0);
    model.vol_M = Rational(2) * (height * radius * ExactValue::pi_half_pow(2));  // 2 pi R H
    ExactValue circle = Rational(2) * (radius * ExactValue::pi_half_pow(2));     // 2 pi R
    model.boundary = {{circle, SecondFundamentalForm(2)}, {circle, SecondFundamentalForm(2)}};
    model.b0 = 1;
    model.b1 = 1;  // the angular harmonic one-form survives absolute conditions
    double h = height.to_double(), r = radius.to_double();
    // counting by slices: N <= (2HR/pi) s + (H/pi) sqrt(s) + Neumann row
    model.weyl_constant = 2.0 * h * r / 3.14159265358979323846 + h + r + 2.0;
    return model;
}

ModelManifold make_hemisphere() {
    ModelManifold model;
    model.name = "hemisphere";
    model.kind = ModelKind::hemisphere;
    model.m = 2;
    model.tau = Rational(2);  // unit round sphere: Gauss curvature 1
    model.einstein_lambda = Rational(1);
    model.rho_mm = Rational(1);
    model.vol_M = ExactValue(Rational(2), 2);  // 2 pi
    // equator is totally geodesic
    model.boundary = {{ExactValue(Rational(2), 2), SecondFundamentalForm(2)}};
    model.b0 = 1;
    model.b1 = 0;
    // N(s) <= s/2 + sqrt(s) + 1 <= 1.5 (s + 1)
    model.weyl_constant = 1.5;
    return model;
}

std::vector<ModelManifold> catalog() {
    return {make_interval(ExactValue(Rational(1), 2)),  // length pi
            make_disk(Rational(1)),
            make_cylinder(ExactValue(Rational(1), 2), ExactValue(1)),  // H = pi, R = 1
            make_hemisphere()};
}

namespace {

// closes the classification flags under the logical implications of the
// definitions (geodesic implies everything, strong implies umbillic)
void close_implications(BoundaryClassification& c) {
    if (c.totally_geodesic) {
        c.minimal = true;
        c.totally_umbillic = true;
        c.strongly_totally_umbillic = true;
        c.mu = 0.0;
        c.mu_exact = ExactValue::zero();
    }
    if (c.strongly_totally_umbillic) c.totally_umbillic = true;
}

}  // namespace

BoundaryClassification classify_boundary(const BoundaryInvariants& inv) {
    if (inv.vol_dM.sign() <= 0)
        throw std::invalid_argument("classify_boundary: boundary volume must be positive");
    BoundaryClassification c;
    if (inv.m == 1) {
        // zero-dimensional boundary: L vacuous, every property holds
        c.totally_geodesic = true;
        close_implications(c);
        return c;
    }
    Rational n(inv.m - 1);
    c.totally_geodesic = inv.I2.is_zero();
    c.minimal = inv.I1.is_zero();
    c.totally_umbillic = (n * inv.I2 - inv.I1).is_zero();
    // strong umbillicity: minimize I2 - 2 mu I0 + mu^2 (m-1) vol(dM) over mu
    ExactValue denom = n * inv.vol_dM;
    ExactValue mu_star = inv.I0 / denom;
    ExactValue q_min = inv.I2 - Rational(2) * (mu_star * inv.I0) + (mu_star * mu_star) * denom;
    c.strongly_totally_umbillic = q_min.is_zero();
    if (c.strongly_totally_umbillic) {
        c.mu_exact = mu_star;
        c.mu = mu_star.to_double();
    }
    close_implications(c);
    return c;
}

BoundaryClassification classify_boundary(const BoundaryInvariantsF& inv, double tol) {
    if (!(inv.vol_dM > 0))
        throw std::invalid_argument("classify_boundary: boundary volume must be positive");
    if (tol < 0) throw std::invalid_argument("classify_boundary: tolerance must be nonnegative");
    BoundaryClassification c;
    if (inv.m == 1) {
        c.totally_geodesic = true;
        close_implications(c);
        return c;
    }
    double n = inv.m - 1;
    c.totally_geodesic = inv.I2 <= tol;
    c.minimal = inv.I1 <= tol;
    c.totally_umbillic = n * inv.I2 - inv.I1 <= tol;
    double mu_star = inv.I0 / (n * inv.vol_dM);
    double q_min = inv.I2 - 2.0 * mu_star * inv.I0 + mu_star * mu_star * n * inv.vol_dM;
    c.strongly_totally_umbillic = q_min <= tol;
    if (c.strongly_totally_umbillic) c.mu = mu_star;
    close_implications(c);
    return c;
}

double default_classification_tol(const BoundaryInvariantsF& inv) {
    return 1e-8 * inv.vol_dM * std::max(1.0, inv.I2);
}

std::vector<double> symmetric_eigenvalues(const SecondFundamentalForm& L) {
    int n = L.n();
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = L.at(i, j).to_double();

    auto at = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (at(p, q) == 0.0) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eigs(n);
    for (int i = 0; i < n; ++i) eigs[i] = at(i, i);
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

UmbillicOracleResult pointwise_umbillic_oracle(const SecondFundamentalForm& L) {
    if (!L.is_symmetric())
        throw std::invalid_argument("pointwise_umbillic_oracle: non-symmetric form");
    int n = L.n();
    if (n > 4)
        throw std::invalid_argument("pointwise_umbillic_oracle: eigenvalue route limited to n <= 4");

    UmbillicOracleResult r;
    Rational e1 = L.trace();
    r.trace_sq = e1 * e1;
    r.sum_kappa_sq = L.frobenius_sq();
    r.quadratic = Rational(n) * r.sum_kappa_sq - r.trace_sq;

    // independent route through the characteristic polynomial: the power sum
    // p2 = e1^2 - 2 e2 with e2 the sum of 2x2 principal minors
    Rational e2;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e2 += L.at(i, i) * L.at(j, j) - L.at(i, j) * L.at(j, i);
    Rational p2 = e1 * e1 - Rational(2) * e2;
    if (p2 != r.sum_kappa_sq)
        throw std::logic_error("umbillic oracle: power-sum routes disagree");
    Rational quadratic_charpoly = Rational(n - 1) * e1 * e1 - Rational(2 * n) * e2;
    if (quadratic_charpoly != r.quadratic)
        throw std::logic_error("umbillic oracle: quadratic routes disagree");

    r.umbillic = r.quadratic.is_zero();
    if (r.umbillic && n > 0) r.mu = e1 / Rational(n);
    if (r.umbillic && n == 0) r.mu = Rational(0);

    if (n == 0) {
        r.umbillic = true;
        r.eigenvalue_spread = 0.0;
        r.mu = Rational(0);
        return r;
    }
    std::vector<double> eigs = symmetric_eigenvalues(L);
    r.eigenvalue_spread = eigs.back() - eigs.front();
    return r;
}

}  // namespace heatspec
