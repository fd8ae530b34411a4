#include "heatspec/bessel.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace heatspec {

std::vector<double> bessel_j_sequence(double x, int nmax) {
    if (x < 0) throw std::invalid_argument("bessel_j_sequence: negative argument");
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }

    // start far enough above max(n, x) that J_start is negligible
    double base = std::max(static_cast<double>(nmax), x);
    int start = static_cast<int>(base + 14.0 * std::cbrt(base + 1.0) + 24.0);
    if (start % 2 != 0) ++start;  // even start keeps the sum bookkeeping simple

    double fkp1 = 0.0, fk = 1e-300;
    double norm = 0.0;  // J_0 + 2 J_2 + 2 J_4 + ... = 1
    for (int k = start; k >= 0; --k) {
        double fkm1 = (2.0 * (k + 1) / x) * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        // fk now holds the unnormalized J_k
        if (k <= nmax) out[static_cast<std::size_t>(k)] = fk;
        if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * fk;
        if (std::abs(fk) > 1e280) {
            const double scale = 1e-280;
            fk *= scale;
            fkp1 *= scale;
            norm *= scale;
            for (auto& v : out) v *= scale;
        }
    }
    for (auto& v : out) v /= norm;
    return out;
}

double bessel_j(int n, double x) { return bessel_j_sequence(x, n)[static_cast<std::size_t>(n)]; }

double bessel_j_prime(int n, double x) {
    if (n == 0) return -bessel_j(1, x);
    if (x == 0.0) return n == 1 ? 0.5 : 0.0;
    std::vector<double> seq = bessel_j_sequence(x, n + 1);
    return 0.5 * (seq[static_cast<std::size_t>(n) - 1] - seq[static_cast<std::size_t>(n) + 1]);
}

namespace {

std::vector<double> scan_and_bisect(const std::function<double(double)>& f, double lo,
                                    double x_max, double step) {
    std::vector<double> zeros;
    if (!(x_max > lo)) return zeros;
    // zeros are simple and spaced > 2.9 apart, so a 0.5 step cannot skip a
    // crossing; +0 from underflow counts as positive (the function is
    // single-signed there)
    auto sgn = [](double v) { return v < 0.0 ? -1 : 1; };
    double a = lo, fa = f(a);
    while (a < x_max) {
        double b = std::min(a + step, x_max);
        double fb = f(b);
        if (sgn(fa) != sgn(fb)) {
            double xl = a, xr = b;
            int sl = sgn(fa);
            for (int iter = 0; iter < 200 && (xr - xl) > 1e-14 * xr; ++iter) {
                double mid = 0.5 * (xl + xr);
                if (sgn(f(mid)) == sl)
                    xl = mid;
                else
                    xr = mid;
            }
            zeros.push_back(0.5 * (xl + xr));
        }
        if (b >= x_max) break;
        a = b;
        fa = fb;
    }
    return zeros;
}

}  // namespace

std::vector<double> bessel_j_zeros(int n, double x_max) {
    // first zero sits above n; the function is single-signed before it
    double lo = n == 0 ? 0.5 : std::max(0.5, static_cast<double>(n));
    return scan_and_bisect([n](double x) { return bessel_j(n, x); }, lo, x_max, 0.5);
}

std::vector<double> bessel_j_prime_zeros(int n, double x_max) {
    if (n == 0) return bessel_j_zeros(1, x_max);  // J_0' = -J_1
    double lo = std::max(0.5, static_cast<double>(n) - 0.5);
    return scan_and_bisect([n](double x) { return bessel_j_prime(n, x); }, lo, x_max, 0.5);
}

}  // namespace heatspec
