#include "heatspec/json_io.hpp"

#include <cstdio>
#include <cstdlib>

namespace heatspec {

using nlohmann::ordered_json;

double round15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

ordered_json json_of(const Rational& r) {
    return ordered_json{{"num", r.num().to_string()}, {"den", r.den().to_string()}};
}

ordered_json json_of(const ExactValue& v) {
    return ordered_json{{"num", v.coeff().num().to_string()},
                        {"den", v.coeff().den().to_string()},
                        {"pi_half_exponent", v.pi_half_exponent()},
                        {"float", round15(v.to_double())}};
}

ordered_json json_of(const SecondFundamentalForm& L) {
    ordered_json rows = ordered_json::array();
    for (int a = 0; a < L.n(); ++a) {
        ordered_json row = ordered_json::array();
        for (int b = 0; b < L.n(); ++b) row.push_back(L.at(a, b).to_string());
        rows.push_back(row);
    }
    return rows;
}

ordered_json json_of(const ModelManifold& model) {
    ordered_json params;
    for (const auto& [key, value] : model.parameters) params[key] = json_of(value);
    ordered_json components = ordered_json::array();
    for (const auto& c : model.boundary)
        components.push_back(
            ordered_json{{"volume", json_of(c.volume)}, {"L", json_of(c.L)}});
    return ordered_json{{"name", model.name},
                        {"m", model.m},
                        {"parameters", params},
                        {"tau", json_of(model.tau)},
                        {"einstein_lambda", json_of(model.einstein_lambda)},
                        {"rho_mm", json_of(model.rho_mm)},
                        {"vol_M", json_of(model.vol_M)},
                        {"vol_dM", json_of(model.vol_dM())},
                        {"betti", ordered_json::array({model.b0, model.b1})},
                        {"weyl_constant", round15(model.weyl_constant)},
                        {"boundary_components", components}};
}

ordered_json json_of(const HeatCoefficientSet& set) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& a : set.a) coeffs.push_back(json_of(a));
    return ordered_json{{"model", set.model},
                        {"m", set.m},
                        {"p", set.p},
                        {"bc", to_string(set.bc)},
                        {"a", coeffs}};
}

ordered_json json_of(const FitResult& fit) {
    ordered_json a = ordered_json::array();
    for (double v : fit.a_hat) a.push_back(round15(v));
    ordered_json grid = ordered_json::array();
    for (double t : fit.t_grid) grid.push_back(round15(t));
    return ordered_json{{"m", fit.m},
                        {"n_terms", fit.n_terms},
                        {"a_hat", a},
                        {"residual_norm", round15(fit.residual_norm)},
                        {"condition_estimate", round15(fit.condition_estimate)},
                        {"t_grid", grid}};
}

ordered_json json_of(const FitComparison& cmp) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : cmp.rows)
        rows.push_back(ordered_json{{"n", r.n},
                                    {"exact", round15(r.exact)},
                                    {"fitted", round15(r.fitted)},
                                    {"error", round15(r.error)},
                                    {"tol", round15(r.tol)},
                                    {"error_kind", r.absolute ? "absolute" : "relative"},
                                    {"pass", r.pass}});
    return ordered_json{{"coefficients", rows}, {"all_pass", cmp.all_pass()}};
}

ordered_json json_of(const BoundaryClassification& c) {
    ordered_json out{{"totally_geodesic", c.totally_geodesic},
                     {"minimal", c.minimal},
                     {"totally_umbillic", c.totally_umbillic},
                     {"strongly_totally_umbillic", c.strongly_totally_umbillic}};
    if (c.mu) out["mu"] = round15(*c.mu);
    if (c.mu_exact) out["mu_exact"] = json_of(*c.mu_exact);
    return out;
}

ordered_json json_of(const RecoveryResult& rec) {
    ordered_json out{{"provenance", rec.provenance == Provenance::exact ? "exact" : "fitted"},
                     {"m", rec.m},
                     {"vol_M", round15(rec.vol_M)},
                     {"vol_dM", round15(rec.vol_dM)},
                     {"I0", round15(rec.I0)},
                     {"I1", round15(rec.I1)},
                     {"I2", round15(rec.I2)},
                     {"classification", json_of(rec.classification)},
                     {"solve_determinant", rec.determinant.to_string()},
                     {"tol", round15(rec.tol)}};
    if (rec.invariants_exact) {
        out["exact"] = ordered_json{{"I0", json_of(rec.invariants_exact->I0)},
                                    {"I1", json_of(rec.invariants_exact->I1)},
                                    {"I2", json_of(rec.invariants_exact->I2)},
                                    {"vol_dM", json_of(rec.invariants_exact->vol_dM)}};
    }
    return out;
}

ordered_json json_of(const TransferReport& rep) {
    ordered_json transfers = ordered_json::array();
    for (const auto& t : rep.transfers)
        transfers.push_back(ordered_json{{"property", t.property},
                                         {"a_has", t.a_has},
                                         {"b_has", t.b_has},
                                         {"holds", t.holds}});
    return ordered_json{{"a", json_of(rep.a)},
                        {"b", json_of(rep.b)},
                        {"delta", ordered_json{{"I0", round15(rep.delta_I0)},
                                               {"I1", round15(rep.delta_I1)},
                                               {"I2", round15(rep.delta_I2)}}},
                        {"transfers", transfers},
                        {"all_hold", rep.all_hold()}};
}

}  // namespace heatspec
