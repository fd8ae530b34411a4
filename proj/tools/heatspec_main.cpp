#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "heatspec/discriminator.hpp"
#include "heatspec/fit.hpp"
#include "heatspec/heat_coefficients.hpp"
#include "heatspec/json_io.hpp"
#include "heatspec/models.hpp"
#include "heatspec/spectra.hpp"
#include "heatspec/verify.hpp"

using namespace heatspec;

namespace {

int table_width() {
    if (const char* env = std::getenv("HEATSPEC_WIDTH")) {
        int w = std::atoi(env);
        if (w >= 8 && w <= 60) return w;
    }
    return 22;
}

// exact scalar inputs: "2", "1/2", "0.25", "pi", "2pi", "3/4pi"
ExactValue parse_exact(std::string text) {
    int pi_half = 0;
    if (text.size() >= 2 && text.substr(text.size() - 2) == "pi") {
        pi_half = 2;
        text = text.substr(0, text.size() - 2);
        if (!text.empty() && text.back() == '*') text.pop_back();
        if (text.empty()) text = "1";
    }
    Rational r;
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        long long den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        r = Rational(BigInt::from_string(digits), BigInt(den));
    } else {
        r = Rational::from_string(text);
    }
    return ExactValue(r, pi_half);
}

struct ModelFlags {
    std::string name;
    std::string radius = "1";
    std::string height = "pi";
    std::string length = "pi";

    void add_to(CLI::App* cmd, const std::string& prefix = "") {
        auto opt = [&prefix](const std::string& base) { return "--" + prefix + base; };
        cmd->add_option(opt("model"), name, "interval | disk | cylinder | hemisphere");
        cmd->add_option(opt("radius"), radius, "disk/cylinder radius (exact, e.g. 1, 1/2, 0.25)");
        cmd->add_option(opt("height"), height, "cylinder height (exact, e.g. pi, 2, 3/2)");
        cmd->add_option(opt("length"), length, "interval length (exact)");
    }

    bool set() const { return !name.empty(); }

    ModelManifold build() const {
        if (name == "interval") return make_interval(parse_exact(length));
        if (name == "disk") {
            ExactValue r = parse_exact(radius);
            if (r.pi_half_exponent() != 0)
                throw std::invalid_argument("disk radius must be free of pi");
            return make_disk(r.coeff());
        }
        if (name == "cylinder") return make_cylinder(parse_exact(height), parse_exact(radius));
        if (name == "hemisphere") return make_hemisphere();
        throw std::invalid_argument("unknown model '" + name + "'");
    }
};

void print_exact_row(const std::string& label, const ExactValue& v) {
    int w = table_width();
    std::printf("  %-4s %-*s %.15g\n", label.c_str(), w, v.to_string().c_str(), v.to_double());
}

int cmd_catalog(const std::string& format) {
    auto models = catalog();
    if (format == "json") {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& model : models) out.push_back(json_of(model));
        std::printf("%s\n", out.dump(2).c_str());
        return 0;
    }
    for (const auto& model : models) {
        std::printf("%s (m=%d)\n", model.name.c_str(), model.m);
        print_exact_row("tau", ExactValue(model.tau));
        print_exact_row("volM", model.vol_M);
        print_exact_row("voldM", model.vol_dM());
        std::printf("  betti b0=%d b1=%d, components=%zu\n", model.b0, model.b1,
                    model.boundary.size());
    }
    return 0;
}

int cmd_coeff(const ModelFlags& flags, int p, const std::string& bc_name,
              const std::string& format) {
    ModelManifold model = flags.build();
    HeatCoefficientSet set = heat_coefficients(model, p, bc_from_string(bc_name));
    if (format == "json") {
        std::printf("%s\n", json_of(set).dump(2).c_str());
        return 0;
    }
    std::printf("%s, p=%d, %s\n", set.model.c_str(), set.p, to_string(set.bc).c_str());
    for (int n = 0; n < 4; ++n) print_exact_row("a" + std::to_string(n), set.a[n]);
    return 0;
}

int cmd_spectrum(const ModelFlags& flags, int p, const std::string& bc_name, double lambda_max,
                 const std::string& format, const std::string& output) {
    ModelManifold model = flags.build();
    EigenvalueList list = model_spectrum(model, p, bc_from_string(bc_name), lambda_max);

    std::ostringstream body;
    if (format == "json") {
        nlohmann::ordered_json entries = nlohmann::ordered_json::array();
        for (const auto& e : list.entries())
            entries.push_back(nlohmann::ordered_json::array({round15(e.lambda), e.multiplicity}));
        nlohmann::ordered_json out{{"model", list.tag().model},
                                   {"p", list.tag().p},
                                   {"bc", list.tag().bc},
                                   {"lambda_max", round15(list.lambda_max())},
                                   {"weyl_constant", round15(list.weyl_constant())},
                                   {"count", list.total_count()},
                                   {"entries", entries}};
        body << out.dump(2) << "\n";
    } else {
        write_spectrum_csv(body, list);
    }
    if (output.empty()) {
        std::fputs(body.str().c_str(), stdout);
    } else {
        std::ofstream os(output);
        if (!os) throw std::invalid_argument("cannot open output file '" + output + "'");
        os << body.str();
    }
    return 0;
}

int cmd_fit(const ModelFlags& flags, int p, const std::string& bc_name, double lambda_max,
            const FitOptions& options, const std::string& input, int input_m, double input_weyl,
            const std::string& format) {
    FitResult fit;
    std::optional<HeatCoefficientSet> exact;
    if (!input.empty()) {
        std::ifstream is(input);
        if (!is) throw std::invalid_argument("cannot open spectrum file '" + input + "'");
        EigenvalueList list = read_spectrum_csv(is, input_m, input_weyl, lambda_max);
        fit = fit_spectrum(list, options);
    } else if (flags.set()) {
        ModelManifold model = flags.build();
        BoundaryCondition bc = bc_from_string(bc_name);
        fit = fit_spectrum(model_spectrum(model, p, bc, lambda_max), options);
        exact = heat_coefficients(model, p, bc);
    } else {
        throw std::invalid_argument("fit: give either --model or --input");
    }

    std::optional<FitComparison> cmp;
    if (exact) cmp = compare_fit(fit, *exact, {1e-4, 1e-4, 1e-3, 1e-2});

    if (format == "json") {
        nlohmann::ordered_json out{{"fit", json_of(fit)}};
        if (cmp) out["comparison"] = json_of(*cmp);
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        std::printf("n_terms=%d cond=%.3g residual=%.3g\n", fit.n_terms, fit.condition_estimate,
                    fit.residual_norm);
        for (std::size_t n = 0; n < fit.a_hat.size(); ++n)
            std::printf("  a%zu_hat %.15g\n", n, fit.a_hat[n]);
        if (cmp) {
            for (const auto& row : cmp->rows)
                std::printf("  a%d exact %.15g err %.3g (%s tol %.1g) %s\n", row.n, row.exact,
                            row.error, row.absolute ? "abs" : "rel", row.tol,
                            row.pass ? "pass" : "FAIL");
        }
    }
    if (cmp && !cmp->all_pass()) return 1;
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& m_range, std::uint64_t seed,
               double lambda_max, const std::string& format) {
    VerifyOptions opt;
    opt.seed = seed;
    opt.lambda_max = lambda_max;
    auto dots = m_range.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("--m-range expects the form lo..hi");
    opt.m_lo = std::stoi(m_range.substr(0, dots));
    opt.m_hi = std::stoi(m_range.substr(dots + 2));
    if (opt.m_lo < 2 || opt.m_hi < opt.m_lo)
        throw std::invalid_argument("--m-range must satisfy 2 <= lo <= hi");

    SuiteResult result = run_suite(suite, opt);
    if (format == "json") {
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& c : result.checks)
            checks.push_back(nlohmann::ordered_json{
                {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        nlohmann::ordered_json out{
            {"suite", result.suite}, {"all_pass", result.all_pass()}, {"checks", checks}};
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        for (const auto& c : result.checks)
            std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                        c.detail.c_str());
    }
    return result.all_pass() ? 0 : 1;
}

struct SideFlags {
    ModelFlags model;
    std::vector<std::string> files;
    double weyl = 0.0;

    void add_to(CLI::App* cmd, const std::string& prefix) {
        model.add_to(cmd, prefix + "-");
        cmd->add_option("--" + prefix + "-files", files,
                        "two spectrum CSV files (pair members in order)")
            ->delimiter(',');
        cmd->add_option("--" + prefix + "-weyl", weyl,
                        "Weyl certificate constant for file spectra");
    }

    std::array<EigenvalueList, 2> spectra(OperatorPair pair, int m, double lambda_max) const {
        auto members = pair_members(pair);
        if (!files.empty()) {
            if (files.size() != 2)
                throw std::invalid_argument("expected exactly two spectrum files per side");
            if (weyl <= 0.0)
                throw std::invalid_argument("file spectra need a positive Weyl constant");
            std::vector<EigenvalueList> lists;
            for (int i = 0; i < 2; ++i) {
                std::ifstream is(files[static_cast<std::size_t>(i)]);
                if (!is)
                    throw std::invalid_argument("cannot open spectrum file '" +
                                                files[static_cast<std::size_t>(i)] + "'");
                lists.push_back(read_spectrum_csv(
                    is, m, weyl, lambda_max,
                    {"file:" + files[static_cast<std::size_t>(i)], members[i].first,
                     to_string(members[i].second)}));
            }
            return {lists[0], lists[1]};
        }
        if (!model.set())
            throw std::invalid_argument("each side needs either a model or two spectrum files");
        ModelManifold built = model.build();
        return {model_spectrum(built, members[0].first, members[0].second, lambda_max),
                model_spectrum(built, members[1].first, members[1].second, lambda_max)};
    }
};

int cmd_discriminate(const SideFlags& a, const SideFlags& b, const std::string& pair_name,
                     const std::string& tau_a_text, const std::string& tau_b_text, int m,
                     const std::string& route, double lambda_max, const FitOptions& options,
                     std::optional<double> tol, const std::string& format) {
    OperatorPair pair = pair_from_string(pair_name);
    Rational tau_a = Rational::from_string(tau_a_text);
    Rational tau_b = tau_b_text.empty() ? tau_a : Rational::from_string(tau_b_text);

    SpectralDataset data_a, data_b;
    if (route == "exact") {
        if (!a.model.set() || !b.model.set())
            throw std::invalid_argument("exact route requires models on both sides");
        data_a = exact_dataset(a.model.build(), pair);
        data_b = exact_dataset(b.model.build(), pair);
        data_a.tau = tau_a;
        data_b.tau = tau_b;
    } else if (route == "fitted") {
        auto spectra_a = a.spectra(pair, m, lambda_max);
        auto spectra_b = b.spectra(pair, m, lambda_max);
        data_a = fitted_dataset({fit_spectrum(spectra_a[0], options),
                                 fit_spectrum(spectra_a[1], options)},
                                m, tau_a, pair);
        data_b = fitted_dataset({fit_spectrum(spectra_b[0], options),
                                 fit_spectrum(spectra_b[1], options)},
                                m, tau_b, pair);
    } else {
        throw std::invalid_argument("--route must be exact or fitted");
    }

    TransferReport report = compare_manifolds(data_a, data_b, tol);
    if (format == "json") {
        std::printf("%s\n", json_of(report).dump(2).c_str());
    } else {
        std::printf("delta I0=%.6g I1=%.6g I2=%.6g\n", report.delta_I0, report.delta_I1,
                    report.delta_I2);
        for (const auto& t : report.transfers)
            std::printf("  %-26s A:%d B:%d %s\n", t.property.c_str(), t.a_has ? 1 : 0,
                        t.b_has ? 1 : 0, t.holds ? "holds" : "FAILS");
    }
    return report.all_hold() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact heat-coefficient evaluation, model spectra, asymptotic fits, and "
                 "spectral boundary discrimination"};
    app.require_subcommand(1);

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "list the model catalog");
    std::string catalog_format = "table";
    catalog_cmd->add_option("--format", catalog_format, "json | table");

    // coeff
    auto* coeff_cmd = app.add_subcommand("coeff", "closed-form heat coefficients a0..a3");
    ModelFlags coeff_model;
    coeff_model.add_to(coeff_cmd);
    int coeff_p = 0;
    std::string coeff_bc = "dirichlet", coeff_format = "table";
    coeff_cmd->add_option("--p", coeff_p, "form degree");
    coeff_cmd->add_option("--bc", coeff_bc, "dirichlet | neumann | absolute | relative");
    coeff_cmd->add_option("--format", coeff_format, "json | table");

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "exact model eigenvalues");
    ModelFlags spectrum_model;
    spectrum_model.add_to(spectrum_cmd);
    int spectrum_p = 0;
    std::string spectrum_bc = "dirichlet", spectrum_format = "csv", spectrum_output;
    double spectrum_lambda_max = 4e4;
    spectrum_cmd->add_option("--p", spectrum_p, "form degree (0, or 1 on surfaces)");
    spectrum_cmd->add_option("--bc", spectrum_bc, "boundary condition");
    spectrum_cmd->add_option("--lambda-max", spectrum_lambda_max, "truncation threshold");
    spectrum_cmd->add_option("--format", spectrum_format, "csv | json");
    spectrum_cmd->add_option("--output", spectrum_output, "write to file instead of stdout");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "asymptotic coefficient recovery from a spectrum");
    ModelFlags fit_model;
    fit_model.add_to(fit_cmd);
    int fit_p = 0, fit_input_m = 2;
    std::string fit_bc = "dirichlet", fit_format = "json", fit_input;
    double fit_lambda_max = 4e4, fit_input_weyl = 0.0;
    FitOptions fit_options;
    fit_cmd->add_option("--p", fit_p, "form degree");
    fit_cmd->add_option("--bc", fit_bc, "boundary condition");
    fit_cmd->add_option("--lambda-max", fit_lambda_max, "truncation threshold");
    fit_cmd->add_option("--input", fit_input, "spectrum CSV instead of a model");
    fit_cmd->add_option("--m", fit_input_m, "dimension of the file spectrum");
    fit_cmd->add_option("--weyl-constant", fit_input_weyl, "certificate constant for file input");
    fit_cmd->add_option("--t-min", fit_options.t_min, "smallest t on the grid");
    fit_cmd->add_option("--t-max", fit_options.t_max, "largest t on the grid");
    fit_cmd->add_option("--t-count", fit_options.count, "grid size");
    fit_cmd->add_option("--n-terms", fit_options.n_terms, "expansion terms to fit");
    fit_cmd->add_option("--format", fit_format, "json | table");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string verify_suite = "all", verify_m_range = "2..8", verify_format = "table";
    std::uint64_t verify_seed = kDefaultSeed;
    double verify_lambda_max = 4e4;
    verify_cmd->add_option("--suite", verify_suite, "traces | matrices | heat-fit | classify | all");
    verify_cmd->add_option("--m-range", verify_m_range, "dimension range lo..hi");
    verify_cmd->add_option("--seed", verify_seed, "seed for randomized checks");
    verify_cmd->add_option("--lambda-max", verify_lambda_max, "truncation for spectral checks");
    verify_cmd->add_option("--format", verify_format, "json | table");

    // discriminate
    auto* disc_cmd = app.add_subcommand("discriminate", "compare two manifolds' spectral data");
    SideFlags side_a, side_b;
    side_a.add_to(disc_cmd, "a");
    side_b.add_to(disc_cmd, "b");
    std::string disc_pair = "dn", disc_tau = "0", disc_tau_b, disc_route = "fitted",
                disc_format = "json";
    int disc_m = 2;
    double disc_lambda_max = 4e4;
    double disc_tol = -1.0;
    FitOptions disc_options;
    disc_cmd->add_option("--pair", disc_pair, "dn | abs01 | rel01");
    disc_cmd->add_option("--tau", disc_tau, "fixed scalar curvature (exact rational)");
    disc_cmd->add_option("--tau-b", disc_tau_b, "override tau for side B (hypothesis check)");
    disc_cmd->add_option("--m", disc_m, "dimension");
    disc_cmd->add_option("--route", disc_route, "exact | fitted");
    disc_cmd->add_option("--lambda-max", disc_lambda_max, "truncation threshold");
    disc_cmd->add_option("--tol", disc_tol, "classification tolerance (default 1e-2 vol(dM))");
    disc_cmd->add_option("--t-min", disc_options.t_min, "fit grid start");
    disc_cmd->add_option("--t-max", disc_options.t_max, "fit grid end");
    disc_cmd->add_option("--t-count", disc_options.count, "fit grid size");
    disc_cmd->add_option("--n-terms", disc_options.n_terms, "fit expansion terms");
    disc_cmd->add_option("--format", disc_format, "json | table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (catalog_cmd->parsed()) return cmd_catalog(catalog_format);
        if (coeff_cmd->parsed()) return cmd_coeff(coeff_model, coeff_p, coeff_bc, coeff_format);
        if (spectrum_cmd->parsed())
            return cmd_spectrum(spectrum_model, spectrum_p, spectrum_bc, spectrum_lambda_max,
                                spectrum_format, spectrum_output);
        if (fit_cmd->parsed())
            return cmd_fit(fit_model, fit_p, fit_bc, fit_lambda_max, fit_options, fit_input,
                           fit_input_m, fit_input_weyl, fit_format);
        if (verify_cmd->parsed())
            return cmd_verify(verify_suite, verify_m_range, verify_seed, verify_lambda_max,
                              verify_format);
        if (disc_cmd->parsed())
            return cmd_discriminate(side_a, side_b, disc_pair, disc_tau, disc_tau_b, disc_m,
                                    disc_route, disc_lambda_max, disc_options,
                                    disc_tol > 0 ? std::optional<double>(disc_tol) : std::nullopt,
                                    disc_format);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 2;
}
