#include "heatspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "heatspec/bessel.hpp"

namespace heatspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

void append(std::vector<EigenvalueList::Entry>& entries, double lambda, long long mult) {
    entries.push_back({lambda, mult});
}

}  // namespace

EigenvalueList::EigenvalueList(std::vector<Entry> entries, double lambda_max, int m,
                               double weyl_constant, SpectrumTag tag)
    : lambda_max_(lambda_max), m_(m), weyl_constant_(weyl_constant), tag_(std::move(tag)) {
    if (!(lambda_max > 0)) throw std::invalid_argument("EigenvalueList: lambda_max must be > 0");
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.lambda < b.lambda; });
    for (const Entry& e : entries) {
        if (e.lambda < 0) throw std::invalid_argument("EigenvalueList: negative eigenvalue");
        if (e.multiplicity <= 0) throw std::invalid_argument("EigenvalueList: bad multiplicity");
        if (!entries_.empty() &&
            e.lambda - entries_.back().lambda <= 1e-12 * std::max(1.0, e.lambda))
            entries_.back().multiplicity += e.multiplicity;
        else
            entries_.push_back(e);
    }
}

long long EigenvalueList::total_count() const {
    long long n = 0;
    for (const auto& e : entries_) n += e.multiplicity;
    return n;
}

long long EigenvalueList::count_below(double lambda) const {
    long long n = 0;
    for (const auto& e : entries_) {
        if (e.lambda > lambda) break;
        n += e.multiplicity;
    }
    return n;
}

EigenvalueList interval_spectrum(double length, BoundaryCondition bc, double lambda_max) {
    if (!(length > 0)) throw std::invalid_argument("interval_spectrum: length must be positive");
    if (bc != BoundaryCondition::dirichlet && bc != BoundaryCondition::neumann)
        throw std::invalid_argument("interval_spectrum: only Dirichlet/Neumann");
    if (!(lambda_max > 0)) throw std::invalid_argument("interval_spectrum: lambda_max <= 0");
    std::vector<EigenvalueList::Entry> entries;
    int k = bc == BoundaryCondition::dirichlet ? 1 : 0;
    for (;; ++k) {
        double lambda = k * kPi / length;
        lambda *= lambda;
        if (lambda > lambda_max) break;
        append(entries, lambda, 1);
    }
    // N(s) <= (length/pi) sqrt(s) + 1
    double weyl = length / kPi + 1.0;
    return EigenvalueList(std::move(entries), lambda_max, 1, weyl,
                          {"interval", 0, to_string(bc)});
}

EigenvalueList disk_spectrum(double radius, BoundaryCondition bc, double lambda_max) {
    if (!(radius > 0)) throw std::invalid_argument("disk_spectrum: radius must be positive");
    if (bc != BoundaryCondition::dirichlet && bc != BoundaryCondition::neumann)
        throw std::invalid_argument("disk_spectrum: only Dirichlet/Neumann scalars");
    if (!(lambda_max > 0)) throw std::invalid_argument("disk_spectrum: lambda_max <= 0");
    const double x_max = radius * std::sqrt(lambda_max);
    const bool dirichlet = bc == BoundaryCondition::dirichlet;

    // independent Bessel orders scanned in parallel, merged in order
    const int n_max = static_cast<int>(x_max) + 1;
    unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
    std::vector<std::future<std::vector<std::vector<double>>>> futures;
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [=]() {
            std::vector<std::vector<double>> per_order;
            for (int n = static_cast<int>(w); n <= n_max; n += static_cast<int>(workers))
                per_order.push_back(dirichlet ? bessel_j_zeros(n, x_max)
                                              : bessel_j_prime_zeros(n, x_max));
            return per_order;
        }));
    }
    std::vector<std::vector<double>> zeros_by_order(static_cast<std::size_t>(n_max) + 1);
    for (unsigned w = 0; w < workers; ++w) {
        auto chunk = futures[w].get();
        std::size_t i = 0;
        for (int n = static_cast<int>(w); n <= n_max; n += static_cast<int>(workers))
            zeros_by_order[static_cast<std::size_t>(n)] = std::move(chunk[i++]);
    }

    std::vector<EigenvalueList::Entry> entries;
    if (!dirichlet) append(entries, 0.0, 1);  // constant mode
    for (int n = 0; n <= n_max; ++n)
        for (double x : zeros_by_order[static_cast<std::size_t>(n)]) {
            double lambda = (x / radius) * (x / radius);
            if (lambda > lambda_max) continue;
            append(entries, lambda, n == 0 ? 1 : 2);
        }
    double weyl = radius * radius / 4.0 + radius + 2.0;
    return EigenvalueList(std::move(entries), lambda_max, 2, weyl, {"disk", 0, to_string(bc)});
}

EigenvalueList hemisphere_spectrum(BoundaryCondition bc, double lambda_max) {
    if (bc != BoundaryCondition::dirichlet && bc != BoundaryCondition::neumann)
        throw std::invalid_argument("hemisphere_spectrum: only Dirichlet/Neumann scalars");
    if (!(lambda_max > 0)) throw std::invalid_argument("hemisphere_spectrum: lambda_max <= 0");
    std::vector<EigenvalueList::Entry> entries;
    // spherical harmonics split by equatorial parity: odd ones vanish on the
    // equator (Dirichlet, l of them at level l), even ones have vanishing
    // normal derivative (Neumann, l+1 of them)
    int l = bc == BoundaryCondition::dirichlet ? 1 : 0;
    for (;; ++l) {
        double lambda = static_cast<double>(l) * (l + 1);
        if (lambda > lambda_max) break;
        append(entries, lambda, bc == BoundaryCondition::dirichlet ? l : l + 1);
    }
    return EigenvalueList(std::move(entries), lambda_max, 2, 1.5,
                          {"hemisphere", 0, to_string(bc)});
}

EigenvalueList cylinder_spectrum(double height, double radius, BoundaryCondition bc,
                                 double lambda_max) {
    if (!(height > 0) || !(radius > 0))
        throw std::invalid_argument("cylinder_spectrum: dimensions must be positive");
    if (bc != BoundaryCondition::dirichlet && bc != BoundaryCondition::neumann)
        throw std::invalid_argument("cylinder_spectrum: only Dirichlet/Neumann scalars");
    if (!(lambda_max > 0)) throw std::invalid_argument("cylinder_spectrum: lambda_max <= 0");
    std::vector<EigenvalueList::Entry> entries;
    int k0 = bc == BoundaryCondition::dirichlet ? 1 : 0;
    for (int k = k0;; ++k) {
        double axial = k * kPi / height;
        axial *= axial;
        if (axial > lambda_max) break;
        for (int n = 0;; ++n) {
            double lambda = axial + (n / radius) * (n / radius);
            if (lambda > lambda_max) break;
            append(entries, lambda, n == 0 ? 1 : 2);
        }
    }
    double weyl = 2.0 * height * radius / kPi + height + radius + 2.0;
    return EigenvalueList(std::move(entries), lambda_max, 2, weyl,
                          {"cylinder", 0, to_string(bc)});
}

EigenvalueList one_form_spectrum_2d(const ModelManifold& model, BoundaryCondition bc,
                                    double lambda_max) {
    if (model.m != 2)
        throw std::invalid_argument("one_form_spectrum_2d: model must be a surface");
    if (bc != BoundaryCondition::absolute && bc != BoundaryCondition::relative)
        throw std::invalid_argument("one_form_spectrum_2d: absolute or relative only");
    EigenvalueList neumann = model_spectrum(model, 0, BoundaryCondition::neumann, lambda_max);
    EigenvalueList dirichlet = model_spectrum(model, 0, BoundaryCondition::dirichlet, lambda_max);

    std::vector<EigenvalueList::Entry> entries;
    for (const auto& e : neumann.entries()) {
        if (e.lambda == 0.0) {
            if (e.multiplicity != model.b0)
                throw std::logic_error("one_form_spectrum_2d: zero modes do not match b0");
            continue;  // constants drop out of d
        }
        entries.push_back(e);
    }
    for (const auto& e : dirichlet.entries()) entries.push_back(e);
    if (model.b1 > 0) append(entries, 0.0, model.b1);  // harmonic one-forms

    double weyl = neumann.weyl_constant() + dirichlet.weyl_constant() + model.b1;
    return EigenvalueList(std::move(entries), lambda_max, 2, weyl,
                          {model.name, 1, to_string(bc)});
}

EigenvalueList model_spectrum(const ModelManifold& model, int p, BoundaryCondition bc,
                              double lambda_max) {
    if (p == 1 && model.m == 2) return one_form_spectrum_2d(model, bc, lambda_max);
    if (p != 0)
        throw std::invalid_argument("model_spectrum: only scalar spectra and surface one-forms");

    // absolute conditions restrict to Neumann on functions, relative to
    // Dirichlet
    BoundaryCondition scalar_bc = bc;
    if (bc == BoundaryCondition::absolute) scalar_bc = BoundaryCondition::neumann;
    if (bc == BoundaryCondition::relative) scalar_bc = BoundaryCondition::dirichlet;

    switch (model.kind) {
        case ModelKind::interval:
            return interval_spectrum(model.parameters.at("length").to_double(), scalar_bc,
                                     lambda_max);
        case ModelKind::disk:
            return disk_spectrum(model.parameters.at("radius").to_double(), scalar_bc, lambda_max);
        case ModelKind::cylinder:
            return cylinder_spectrum(model.parameters.at("height").to_double(),
                                     model.parameters.at("radius").to_double(), scalar_bc,
                                     lambda_max);
        case ModelKind::hemisphere:
            return hemisphere_spectrum(scalar_bc, lambda_max);
    }
    throw std::logic_error("model_spectrum: unknown model kind");
}

HeatTraceSample heat_trace(const EigenvalueList& list, double t) {
    if (!(t > 0)) throw std::invalid_argument("heat_trace: t must be positive");
    long double acc = 0.0L;
    const auto& entries = list.entries();
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
        acc += static_cast<long double>(it->multiplicity) *
               std::exp(-static_cast<long double>(it->lambda) * t);
    double theta = static_cast<double>(acc);

    // tail certificate from N(s) <= W s^(m/2) + W: summation by parts gives
    //   tail <= t W int_L^inf s^(m/2) e^(-st) ds + (W - N(L)) e^(-Lt)
    // and the second term is kept only when positive.
    const double W = list.weyl_constant();
    const double L = list.lambda_max();
    double tail;
    if (list.m() == 1) {
        tail = W * (std::sqrt(L) * std::exp(-L * t) +
                    0.5 * std::sqrt(kPi / t) * std::erfc(std::sqrt(L * t)));
    } else if (list.m() == 2) {
        tail = W * (L + 1.0 / t) * std::exp(-L * t);
    } else {
        throw std::invalid_argument("heat_trace: tail certificate implemented for m <= 2");
    }
    tail += std::max(0.0, W - static_cast<double>(list.total_count())) * std::exp(-L * t);

    if (!(theta > 0)) throw std::runtime_error("heat_trace: trace underflowed to zero");
    if (tail > 1e-3 * theta)
        throw std::runtime_error("heat_trace: tail bound exceeds 1e-3 of the trace at t = " +
                                 std::to_string(t) + "; raise lambda_max or t");
    return {t, theta, tail};
}

std::vector<HeatTraceSample> heat_trace_grid(const EigenvalueList& list, double t_min,
                                             double t_max, int count) {
    if (!(t_min > 0) || !(t_max > t_min) || count < 2)
        throw std::invalid_argument("heat_trace_grid: bad grid");
    std::vector<HeatTraceSample> samples;
    samples.reserve(static_cast<std::size_t>(count));
    double ratio = std::pow(t_max / t_min, 1.0 / (count - 1));
    double t = t_min;
    for (int i = 0; i < count; ++i) {
        samples.push_back(heat_trace(list, i == count - 1 ? t_max : t));
        t *= ratio;
    }
    return samples;
}

void write_spectrum_csv(std::ostream& os, const EigenvalueList& list) {
    char buf[64];
    for (const auto& e : list.entries()) {
        std::snprintf(buf, sizeof buf, "%.15g,%lld\n", e.lambda, e.multiplicity);
        os << buf;
    }
}

EigenvalueList read_spectrum_csv(std::istream& is, int m, double weyl_constant,
                                 double lambda_max, SpectrumTag tag) {
    std::vector<EigenvalueList::Entry> entries;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("spectrum csv: missing comma in '" + line + "'");
        entries.push_back({std::stod(line.substr(0, comma)),
                           std::stoll(line.substr(comma + 1))});
    }
    return EigenvalueList(std::move(entries), lambda_max, m, weyl_constant, std::move(tag));
}

}  // namespace heatspec
