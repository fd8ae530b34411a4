#include "heatspec/heat_coefficients.hpp"

#include <stdexcept>

namespace heatspec {

WeitzenboeckSpec model_weitzenboeck(const ModelManifold& model) {
    return model.tau.is_zero() ? WeitzenboeckSpec::flat() : WeitzenboeckSpec::einstein(model.tau);
}

Rational chi_trace(int m, int p, BoundaryCondition bc) {
    BoundaryOperators ops = build_fiber_operators(m, p, bc, SecondFundamentalForm(m));
    return ops.chi.trace();
}

namespace {

int effective_degree(int m, int p, BoundaryCondition bc) {
    return bc == BoundaryCondition::relative ? m - p : p;
}

}  // namespace

ExactValue a0(const ModelManifold& model, int p) {
    Rational fiber_dim(binomial(model.m, p));
    return ExactValue::four_pi_half_pow(-model.m) * (fiber_dim * model.vol_M);
}

ExactValue a1(const ModelManifold& model, int p, BoundaryCondition bc) {
    Rational tr = chi_trace(model.m, p, bc);
    return ExactValue::four_pi_half_pow(-(model.m - 1)) *
           ((tr / Rational(4)) * model.vol_dM());
}

ExactValue a2(const ModelManifold& model, int p, BoundaryCondition bc) {
    int m = model.m;
    int p_eff = effective_degree(m, p, bc);
    Rational fiber_dim(binomial(m, p_eff));
    WeitzenboeckSpec espec = model_weitzenboeck(model);

    // interior: Tr{6 E_p + tau} vol(M)
    Rational interior_tr = Rational(6) * weitzenboeck_trace(m, p_eff, espec) + model.tau * fiber_dim;
    ExactValue total = interior_tr * model.vol_M;

    // boundary: Tr{2 Laa id + 12 S} per component
    for (const auto& comp : model.boundary) {
        BoundaryOperators ops = build_fiber_operators(m, p, bc, comp.L);
        Rational boundary_tr =
            Rational(2) * comp.L.trace() * fiber_dim + Rational(12) * ops.S.trace();
        total += boundary_tr * comp.volume;
    }
    return ExactValue::four_pi_half_pow(-m) * (Rational(1, 6) * total);
}

ExactValue a3(const ModelManifold& model, int p, BoundaryCondition bc) {
    int m = model.m;
    WeitzenboeckSpec espec = model_weitzenboeck(model);
    ExactValue total;
    for (const auto& comp : model.boundary) {
        Rational bracket = a3_bracket_trace(m, p, bc, comp.L, model.tau, model.rho_mm, espec);
        total += bracket * comp.volume;
    }
    return ExactValue::four_pi_half_pow(-(m - 1)) * (Rational(1, 384) * total);
}

HeatCoefficientSet heat_coefficients(const ModelManifold& model, int p, BoundaryCondition bc) {
    return HeatCoefficientSet{model.name,
                              model.m,
                              p,
                              bc,
                              {a0(model, p), a1(model, p, bc), a2(model, p, bc), a3(model, p, bc)}};
}

std::pair<ExactValue, ExactValue> a3_from_invariant_rows(const ModelManifold& model, OperatorPair pair) {
    int m = model.m;
    if (m < 2) throw std::invalid_argument("a3_from_invariant_rows: requires m >= 2");
    WeitzenboeckSpec espec = model_weitzenboeck(model);
    BoundaryInvariants inv = model.invariants();

    std::array<ExactValue, 2> values;
    auto members = pair_members(pair);
    for (int i = 0; i < 2; ++i) {
        auto [p, bc] = members[i];
        // star part: Tr{96 chi E_p + 16 chi tau - 8 chi rho_mm}, constant on
        // the boundary since tau and rho_mm are
        BoundaryOperators ops = build_fiber_operators(m, p, bc, SecondFundamentalForm(m));
        FiberOperator e_op = weitzenboeck_operator(ops.basis, espec);
        Rational tr_chi = ops.chi.trace();
        Rational star = Rational(96) * (ops.chi * e_op).trace() + Rational(16) * model.tau * tr_chi -
                        Rational(8) * model.rho_mm * tr_chi;

        auto [alpha, beta] = extract_quadratic_coefficients(m, p, bc);
        ExactValue bracket_integral = star * inv.vol_dM + alpha * inv.I1 + beta * inv.I2;
        values[i] = ExactValue::four_pi_half_pow(-(m - 1)) * (Rational(1, 384) * bracket_integral);

        ExactValue direct = a3(model, p, bc);
        if (values[i] != direct)
            throw std::logic_error("a3_from_invariant_rows: specialization disagrees with the direct "
                                   "evaluator for " + to_string(bc) + " on p=" + std::to_string(p));
    }
    return {values[0], values[1]};
}

}  // namespace heatspec
