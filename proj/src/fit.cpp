#include "heatspec/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatspec {

namespace {

// eigenvalues of a small symmetric positive matrix by cyclic Jacobi, used
// for the condition estimate of the equilibrated design
std::vector<long double> small_symmetric_eigs(std::vector<long double> g, int k) {
    auto at = [&g, k](int i, int j) -> long double& { return g[static_cast<std::size_t>(i) * k + j]; };
    for (int sweep = 0; sweep < 64; ++sweep) {
        long double off = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-36L) break;
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) {
                if (at(p, q) == 0.0L) continue;
                long double theta = (at(q, q) - at(p, p)) / (2.0L * at(p, q));
                long double t = (theta >= 0 ? 1.0L : -1.0L) /
                                (std::abs(theta) + std::sqrt(theta * theta + 1.0L));
                long double c = 1.0L / std::sqrt(t * t + 1.0L), s = t * c;
                for (int i = 0; i < k; ++i) {
                    long double aip = at(i, p), aiq = at(i, q);
                    at(i, p) = c * aip - s * aiq;
                    at(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < k; ++i) {
                    long double api = at(p, i), aqi = at(q, i);
                    at(p, i) = c * api - s * aqi;
                    at(q, i) = s * api + c * aqi;
                }
            }
    }
    std::vector<long double> eigs(k);
    for (int i = 0; i < k; ++i) eigs[i] = at(i, i);
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

}  // namespace

FitResult fit_heat_trace(const std::vector<HeatTraceSample>& samples, int m, int n_terms,
                         double condition_limit) {
    if (n_terms < 4)
        throw std::invalid_argument("fit_heat_trace: need at least four terms to isolate a_3");
    const int rows = static_cast<int>(samples.size());
    if (rows < 2 * n_terms)
        throw std::invalid_argument("fit_heat_trace: need at least 2*n_terms samples");

    double t_lo = samples.front().t, t_hi = samples.front().t;
    for (const auto& s : samples) {
        if (!(s.t > 0)) throw std::invalid_argument("fit_heat_trace: nonpositive t");
        if (!(s.tail_bound < 1e-3 * s.theta))
            throw std::invalid_argument("fit_heat_trace: tail bound too large at t = " +
                                        std::to_string(s.t));
        t_lo = std::min(t_lo, s.t);
        t_hi = std::max(t_hi, s.t);
    }
    if (t_hi / t_lo < 99.999)
        throw std::invalid_argument("fit_heat_trace: t grid must span at least two decades");

    // weighted design: row i is t_i^(m/2) * [t_i^((n-m)/2)]_n = [t_i^(n/2)]_n
    const int k = n_terms;
    std::vector<long double> design(static_cast<std::size_t>(rows) * k);
    std::vector<long double> rhs(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) {
        long double sqrt_t = std::sqrt(static_cast<long double>(samples[i].t));
        long double v = 1.0L;
        for (int n = 0; n < k; ++n) {
            design[static_cast<std::size_t>(i) * k + n] = v;
            v *= sqrt_t;
        }
        rhs[static_cast<std::size_t>(i)] =
            std::pow(static_cast<long double>(samples[i].t), m / 2.0L) *
            static_cast<long double>(samples[i].theta);
    }

    // column equilibration
    std::vector<long double> col_scale(static_cast<std::size_t>(k));
    for (int n = 0; n < k; ++n) {
        long double s = 0;
        for (int i = 0; i < rows; ++i) {
            long double v = design[static_cast<std::size_t>(i) * k + n];
            s += v * v;
        }
        col_scale[static_cast<std::size_t>(n)] = std::sqrt(s);
        if (col_scale[static_cast<std::size_t>(n)] == 0.0L)
            throw std::invalid_argument("fit_heat_trace: zero design column");
        for (int i = 0; i < rows; ++i)
            design[static_cast<std::size_t>(i) * k + n] /= col_scale[static_cast<std::size_t>(n)];
    }

    // condition estimate of the equilibrated design through its Gram matrix
    std::vector<long double> gram(static_cast<std::size_t>(k) * k, 0.0L);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            long double s = 0;
            for (int i = 0; i < rows; ++i)
                s += design[static_cast<std::size_t>(i) * k + a] *
                     design[static_cast<std::size_t>(i) * k + b];
            gram[static_cast<std::size_t>(a) * k + b] = s;
        }
    std::vector<long double> eigs = small_symmetric_eigs(gram, k);
    if (!(eigs.front() > 0))
        throw std::runtime_error("fit_heat_trace: design matrix numerically singular");
    double condition = static_cast<double>(std::sqrt(eigs.back() / eigs.front()));
    if (condition > condition_limit)
        throw std::runtime_error("fit_heat_trace: design condition " + std::to_string(condition) +
                                 " exceeds limit");

    // Householder QR in place (keep a copy for the residual)
    std::vector<long double> qr = design;
    std::vector<long double> y = rhs;
    for (int col = 0; col < k; ++col) {
        long double norm = 0;
        for (int i = col; i < rows; ++i) {
            long double v = qr[static_cast<std::size_t>(i) * k + col];
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0L) throw std::runtime_error("fit_heat_trace: rank deficient design");
        long double head = qr[static_cast<std::size_t>(col) * k + col];
        long double alpha = head >= 0 ? -norm : norm;
        std::vector<long double> u(static_cast<std::size_t>(rows - col));
        u[0] = head - alpha;
        for (int i = col + 1; i < rows; ++i)
            u[static_cast<std::size_t>(i - col)] = qr[static_cast<std::size_t>(i) * k + col];
        long double unorm_sq = 0;
        for (long double v : u) unorm_sq += v * v;
        if (unorm_sq == 0.0L) continue;
        for (int j = col; j < k; ++j) {
            long double dot = 0;
            for (int i = col; i < rows; ++i)
                dot += u[static_cast<std::size_t>(i - col)] * qr[static_cast<std::size_t>(i) * k + j];
            long double f = 2.0L * dot / unorm_sq;
            for (int i = col; i < rows; ++i)
                qr[static_cast<std::size_t>(i) * k + j] -= f * u[static_cast<std::size_t>(i - col)];
        }
        long double dot = 0;
        for (int i = col; i < rows; ++i)
            dot += u[static_cast<std::size_t>(i - col)] * y[static_cast<std::size_t>(i)];
        long double f = 2.0L * dot / unorm_sq;
        for (int i = col; i < rows; ++i)
            y[static_cast<std::size_t>(i)] -= f * u[static_cast<std::size_t>(i - col)];
    }

    // back substitution on R z = Q^T y
    std::vector<long double> z(static_cast<std::size_t>(k));
    for (int row = k - 1; row >= 0; --row) {
        long double acc = y[static_cast<std::size_t>(row)];
        for (int j = row + 1; j < k; ++j)
            acc -= qr[static_cast<std::size_t>(row) * k + j] * z[static_cast<std::size_t>(j)];
        z[static_cast<std::size_t>(row)] = acc / qr[static_cast<std::size_t>(row) * k + row];
    }

    FitResult result;
    result.m = m;
    result.n_terms = k;
    result.a_hat.resize(static_cast<std::size_t>(k));
    for (int n = 0; n < k; ++n)
        result.a_hat[static_cast<std::size_t>(n)] =
            static_cast<double>(z[static_cast<std::size_t>(n)] / col_scale[static_cast<std::size_t>(n)]);
    result.condition_estimate = condition;
    result.t_grid.reserve(samples.size());
    for (const auto& s : samples) result.t_grid.push_back(s.t);

    long double res_sq = 0;
    for (int i = 0; i < rows; ++i) {
        long double pred = 0;
        for (int n = 0; n < k; ++n)
            pred += design[static_cast<std::size_t>(i) * k + n] * z[static_cast<std::size_t>(n)];
        long double d = pred - rhs[static_cast<std::size_t>(i)];
        res_sq += d * d;
    }
    result.residual_norm = static_cast<double>(std::sqrt(res_sq));
    return result;
}

FitResult fit_spectrum(const EigenvalueList& list, const FitOptions& options) {
    std::vector<HeatTraceSample> samples =
        heat_trace_grid(list, options.t_min, options.t_max, options.count);
    return fit_heat_trace(samples, list.m(), options.n_terms, options.condition_limit);
}

FitComparison compare_fit(const FitResult& fit, const HeatCoefficientSet& exact,
                          const std::array<double, 4>& tol) {
    if (fit.m != exact.m)
        throw std::invalid_argument("compare_fit: dimension mismatch between fit and closed form");
    if (fit.a_hat.size() < 4) throw std::invalid_argument("compare_fit: fit holds fewer than four terms");
    double max_abs = 0.0;
    for (const auto& v : exact.a) max_abs = std::max(max_abs, std::abs(v.to_double()));

    FitComparison cmp;
    for (int n = 0; n < 4; ++n) {
        CoefficientCheck row;
        row.n = n;
        row.exact = exact.a[static_cast<std::size_t>(n)].to_double();
        row.fitted = fit.a_hat[static_cast<std::size_t>(n)];
        row.tol = tol[static_cast<std::size_t>(n)];
        row.absolute = exact.a[static_cast<std::size_t>(n)].is_zero();
        if (row.absolute) {
            row.error = std::abs(row.fitted);
            row.pass = row.error <= row.tol * std::max(max_abs, 1e-30);
        } else {
            row.error = std::abs(row.fitted - row.exact) / std::abs(row.exact);
            row.pass = row.error <= row.tol;
        }
        cmp.rows.push_back(row);
    }
    return cmp;
}

}  // namespace heatspec
