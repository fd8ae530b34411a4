#include "heatspec/discriminator.hpp"

#include <cmath>
#include <stdexcept>

namespace heatspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

double four_pi_pow_half(int k) { return std::pow(4.0 * kPi, k / 2.0); }

WeitzenboeckSpec spec_for_tau(const Rational& tau) {
    return tau.is_zero() ? WeitzenboeckSpec::flat() : WeitzenboeckSpec::einstein(tau);
}

int effective_degree(int m, int p, BoundaryCondition bc) {
    return bc == BoundaryCondition::relative ? m - p : p;
}

// Tr{96 chi E_p + 16 chi tau - 8 chi rho_mm} on the effective fiber
Rational star_trace(int m, int p, BoundaryCondition bc, const Rational& tau) {
    BoundaryOperators ops = build_fiber_operators(m, p, bc, SecondFundamentalForm(m));
    FiberOperator e_op = weitzenboeck_operator(ops.basis, spec_for_tau(tau));
    Rational tr_chi = ops.chi.trace();
    Rational rho = tau / Rational(m);
    return Rational(96) * (ops.chi * e_op).trace() + Rational(16) * tau * tr_chi -
           Rational(8) * rho * tr_chi;
}

// TrS = c_S * Laa for the member's operators; c_S from two structured samples
Rational s_trace_coefficient(int m, int p, BoundaryCondition bc) {
    if (m < 2) return Rational(0);
    auto id_form = SecondFundamentalForm::scalar_times_identity(m, Rational(1));
    Rational c = build_fiber_operators(m, p, bc, id_form).S.trace() / Rational(m - 1);
    SecondFundamentalForm probe(m);
    probe.at(0, 0) = Rational(1);
    if (build_fiber_operators(m, p, bc, probe).S.trace() != c)
        throw std::logic_error("recover_invariants: S trace is not a multiple of Laa");
    return c;
}

void validate_members(const SpectralDataset& data) {
    auto members = pair_members(data.pair);
    for (int i = 0; i < 2; ++i) {
        if (data.ops[i].p != members[i].first || data.ops[i].bc != members[i].second)
            throw std::invalid_argument("recover_invariants: operators do not match the pair");
        if (data.provenance == Provenance::exact && !data.ops[i].a_exact)
            throw std::invalid_argument("recover_invariants: exact dataset lacks exact values");
        if (data.provenance == Provenance::fitted && data.ops[i].p >= 1 && data.m != 2)
            throw std::invalid_argument(
                "recover_invariants: fitted form-valued members only supported on surfaces");
    }
}

RecoveryResult recover_exact(const SpectralDataset& data) {
    const int m = data.m;
    auto members = pair_members(data.pair);
    const Rational tau = data.tau;

    RecoveryResult out;
    out.provenance = Provenance::exact;
    out.m = m;

    const auto& a_first = *data.ops[0].a_exact;
    const auto& a_second = *data.ops[1].a_exact;

    ExactValue vol_M =
        a_first[0] * ExactValue::four_pi_half_pow(m) / Rational(binomial(m, members[0].first));
    ExactValue vol_M_check =
        a_second[0] * ExactValue::four_pi_half_pow(m) / Rational(binomial(m, members[1].first));
    if (vol_M != vol_M_check)
        throw std::invalid_argument("recover_invariants: pair members disagree on vol(M)");

    Rational tr_chi0 = chi_trace(m, members[0].first, members[0].second);
    Rational tr_chi1 = chi_trace(m, members[1].first, members[1].second);
    ExactValue vol_dM;
    if (!tr_chi0.is_zero())
        vol_dM = a_first[1] * ExactValue::four_pi_half_pow(m - 1) * (Rational(4) / tr_chi0);
    else
        vol_dM = a_second[1] * ExactValue::four_pi_half_pow(m - 1) * (Rational(4) / tr_chi1);
    if (!tr_chi0.is_zero() && !tr_chi1.is_zero()) {
        ExactValue check =
            a_second[1] * ExactValue::four_pi_half_pow(m - 1) * (Rational(4) / tr_chi1);
        if (vol_dM != check)
            throw std::invalid_argument("recover_invariants: pair members disagree on vol(dM)");
    }

    // I0 from the a2 of the first member (scalar member for every pair)
    int p0_eff = effective_degree(m, members[0].first, members[0].second);
    Rational fiber0(binomial(m, members[0].first));
    Rational interior_tr =
        Rational(6) * weitzenboeck_trace(m, p0_eff, spec_for_tau(tau)) + tau * fiber0;
    Rational k2 = Rational(2) * fiber0 +
                  Rational(12) * s_trace_coefficient(m, members[0].first, members[0].second);
    ExactValue I0;
    if (m >= 2) {
        ExactValue boundary_part =
            Rational(6) * (a_first[2] * ExactValue::four_pi_half_pow(m)) - interior_tr * vol_M;
        I0 = boundary_part / k2;
    }

    ExactValue I1, I2;
    Rational det(1);
    if (m >= 2) {
        std::array<ExactValue, 2> r;
        std::array<std::array<Rational, 2>, 2> rows;
        for (int j = 0; j < 2; ++j) {
            const auto& aj = j == 0 ? a_first : a_second;
            Rational star = star_trace(m, members[j].first, members[j].second, tau);
            r[j] = Rational(384) * (aj[3] * ExactValue::four_pi_half_pow(m - 1)) - star * vol_dM;
            auto [alpha, beta] =
                extract_quadratic_coefficients(m, members[j].first, members[j].second);
            rows[j] = {alpha, beta};
        }
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
        if (det.is_zero()) throw std::logic_error("recover_invariants: singular pair system");
        I1 = (rows[1][1] * r[0] - rows[0][1] * r[1]) / det;
        I2 = (rows[0][0] * r[1] - rows[1][0] * r[0]) / det;
    }

    BoundaryInvariants inv{m, I0, I1, I2, vol_dM};
    out.vol_M = vol_M.to_double();
    out.vol_dM = vol_dM.to_double();
    out.I0 = I0.to_double();
    out.I1 = I1.to_double();
    out.I2 = I2.to_double();
    out.invariants_exact = inv;
    out.classification = classify_boundary(inv);
    out.determinant = det;
    out.tol = 0.0;
    return out;
}

RecoveryResult recover_fitted(const SpectralDataset& data, std::optional<double> tol_opt) {
    const int m = data.m;
    auto members = pair_members(data.pair);
    const double tau = data.tau.to_double();

    RecoveryResult out;
    out.provenance = Provenance::fitted;
    out.m = m;

    const auto& a_first = data.ops[0].a;
    const auto& a_second = data.ops[1].a;

    double vol_M = a_first[0] * four_pi_pow_half(m) / binomial(m, members[0].first);
    double vol_M_check = a_second[0] * four_pi_pow_half(m) / binomial(m, members[1].first);
    if (std::abs(vol_M - vol_M_check) > 1e-2 * std::abs(vol_M))
        throw std::invalid_argument("recover_invariants: pair members disagree on vol(M)");

    double tr_chi0 = chi_trace(m, members[0].first, members[0].second).to_double();
    double tr_chi1 = chi_trace(m, members[1].first, members[1].second).to_double();
    double vol_dM = tr_chi0 != 0.0
                        ? a_first[1] * four_pi_pow_half(m - 1) * 4.0 / tr_chi0
                        : a_second[1] * four_pi_pow_half(m - 1) * 4.0 / tr_chi1;
    if (tr_chi0 != 0.0 && tr_chi1 != 0.0) {
        double check = a_second[1] * four_pi_pow_half(m - 1) * 4.0 / tr_chi1;
        if (std::abs(vol_dM - check) > 1e-2 * std::abs(vol_dM))
            throw std::invalid_argument("recover_invariants: pair members disagree on vol(dM)");
    }

    double I0 = 0, I1 = 0, I2 = 0;
    Rational det(1);
    if (m >= 2) {
        int p0_eff = effective_degree(m, members[0].first, members[0].second);
        double fiber0 = binomial(m, members[0].first);
        double interior_tr =
            6.0 * weitzenboeck_trace(m, p0_eff, spec_for_tau(data.tau)).to_double() +
            tau * fiber0;
        double k2 =
            2.0 * fiber0 +
            12.0 * s_trace_coefficient(m, members[0].first, members[0].second).to_double();
        I0 = (6.0 * a_first[2] * four_pi_pow_half(m) - interior_tr * vol_M) / k2;

        std::array<double, 2> r;
        std::array<std::array<Rational, 2>, 2> rows;
        for (int j = 0; j < 2; ++j) {
            const auto& aj = j == 0 ? a_first : a_second;
            double star = star_trace(m, members[j].first, members[j].second, data.tau).to_double();
            r[j] = 384.0 * aj[3] * four_pi_pow_half(m - 1) - star * vol_dM;
            auto [alpha, beta] =
                extract_quadratic_coefficients(m, members[j].first, members[j].second);
            rows[j] = {alpha, beta};
        }
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
        double detd = det.to_double();
        I1 = (rows[1][1].to_double() * r[0] - rows[0][1].to_double() * r[1]) / detd;
        I2 = (rows[0][0].to_double() * r[1] - rows[1][0].to_double() * r[0]) / detd;
    }

    out.vol_M = vol_M;
    out.vol_dM = vol_dM;
    out.I0 = I0;
    out.I1 = I1;
    out.I2 = I2;
    out.tol = tol_opt.value_or(1e-2 * vol_dM);
    out.classification = classify_boundary(BoundaryInvariantsF{m, I0, I1, I2, vol_dM}, out.tol);
    out.determinant = det;
    return out;
}

}  // namespace

SpectralDataset exact_dataset(const ModelManifold& model, OperatorPair pair) {
    SpectralDataset data;
    data.m = model.m;
    data.tau = model.tau;
    data.pair = pair;
    data.provenance = Provenance::exact;
    auto members = pair_members(pair);
    for (int i = 0; i < 2; ++i) {
        auto [p, bc] = members[i];
        HeatCoefficientSet set = heat_coefficients(model, p, bc);
        OperatorCoefficients op;
        op.p = p;
        op.bc = bc;
        op.a_exact = set.a;
        for (int n = 0; n < 4; ++n) op.a[n] = set.a[n].to_double();
        data.ops[i] = op;
    }
    return data;
}

SpectralDataset fitted_dataset(const std::array<FitResult, 2>& fits, int m, const Rational& tau,
                               OperatorPair pair) {
    SpectralDataset data;
    data.m = m;
    data.tau = tau;
    data.pair = pair;
    data.provenance = Provenance::fitted;
    auto members = pair_members(pair);
    for (int i = 0; i < 2; ++i) {
        if (fits[i].m != m) throw std::invalid_argument("fitted_dataset: dimension mismatch");
        if (fits[i].a_hat.size() < 4)
            throw std::invalid_argument("fitted_dataset: fit holds fewer than four coefficients");
        OperatorCoefficients op;
        op.p = members[i].first;
        op.bc = members[i].second;
        for (int n = 0; n < 4; ++n) op.a[n] = fits[i].a_hat[static_cast<std::size_t>(n)];
        data.ops[i] = op;
    }
    return data;
}

RecoveryResult recover_invariants(const SpectralDataset& data, std::optional<double> tol) {
    if (data.m < 1) throw std::invalid_argument("recover_invariants: bad dimension");
    validate_members(data);
    return data.provenance == Provenance::exact ? recover_exact(data)
                                                : recover_fitted(data, tol);
}

TransferReport compare_manifolds(const SpectralDataset& a, const SpectralDataset& b,
                                 std::optional<double> tol) {
    if (a.m != b.m) throw std::invalid_argument("compare_manifolds: dimensions differ");
    if (a.pair != b.pair) throw std::invalid_argument("compare_manifolds: pair kinds differ");
    if (a.tau != b.tau)
        throw std::invalid_argument(
            "compare_manifolds: scalar curvatures differ; the transfer statements assume "
            "tau_1 = tau_2, refusing");

    TransferReport report;
    report.a = recover_invariants(a, tol);
    report.b = recover_invariants(b, tol);
    report.delta_I0 = report.b.I0 - report.a.I0;
    report.delta_I1 = report.b.I1 - report.a.I1;
    report.delta_I2 = report.b.I2 - report.a.I2;

    auto add = [&report](const std::string& name, bool a_has, bool b_has) {
        report.transfers.push_back({name, a_has, b_has, !a_has || b_has});
    };
    add("totally_geodesic", report.a.classification.totally_geodesic,
        report.b.classification.totally_geodesic);
    add("minimal", report.a.classification.minimal, report.b.classification.minimal);
    add("totally_umbillic", report.a.classification.totally_umbillic,
        report.b.classification.totally_umbillic);
    add("strongly_totally_umbillic", report.a.classification.strongly_totally_umbillic,
        report.b.classification.strongly_totally_umbillic);
    return report;
}

RecoveryResult classify_from_spectra(const std::array<EigenvalueList, 2>& spectra, int m,
                                     const Rational& tau, OperatorPair pair,
                                     const FitOptions& options, std::optional<double> tol) {
    std::array<FitResult, 2> fits = {fit_spectrum(spectra[0], options),
                                     fit_spectrum(spectra[1], options)};
    for (const auto& list : spectra)
        if (list.m() != m)
            throw std::invalid_argument("classify_from_spectra: spectrum dimension mismatch");
    return recover_invariants(fitted_dataset(fits, m, tau, pair), tol);
}

}  // namespace heatspec
