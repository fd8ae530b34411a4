#pragma once

#include <vector>

namespace heatspec {

/// J_0(x)..J_nmax(x) for x >= 0 by backward recurrence with the standard
/// normalization sum. Dependency-free and accurate to ~1e-14 in the regime
/// used here (x up to a few hundred, any order).
std::vector<double> bessel_j_sequence(double x, int nmax);

double bessel_j(int n, double x);
double bessel_j_prime(int n, double x);

/// Ascending positive zeros of J_n in (0, x_max]: sign-change scan with a
/// step well below the zero spacing, then bisection to ~1e-13 relative.
std::vector<double> bessel_j_zeros(int n, double x_max);

/// Ascending positive zeros of J_n' in (0, x_max]; the zero of J_0' at the
/// origin is not included.
std::vector<double> bessel_j_prime_zeros(int n, double x_max);

}  // namespace heatspec
