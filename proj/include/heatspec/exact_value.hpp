#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "heatspec/rational.hpp"

namespace heatspec {

/// Exact number of the form  coeff * pi^(k/2)  with rational coeff and
/// integer k. All closed-form heat coefficients live in this ring: the
/// (4*pi)^(-m/2) normalizations contribute even or odd half-powers of pi
/// depending on the parity of m, and boundary volumes contribute more.
///
/// Addition is only defined between values with the same half-power (or
/// with exact zero, which is stored canonically as k = 0). Mixing powers
/// is a logic error in the caller, not a numeric situation, so it throws.
class ExactValue {
public:
    ExactValue() = default;
    ExactValue(Rational c, int pi_half = 0) : coeff_(std::move(c)), pi_half_(pi_half) {
        canonicalize();
    }
    ExactValue(long long c) : coeff_(c) {}  // NOLINT: implicit by design

    static ExactValue zero() { return ExactValue(); }

    /// pi^(k/2)
    static ExactValue pi_half_pow(int k) { return ExactValue(Rational(1), k); }

    /// (4*pi)^(k/2) = 2^k * pi^(k/2), k may be negative.
    static ExactValue four_pi_half_pow(int k) {
        Rational two_pow = k >= 0 ? Rational(BigInt(1).shifted_left(static_cast<unsigned>(k)), 1)
                                  : Rational(BigInt(1), BigInt(1).shifted_left(static_cast<unsigned>(-k)));
        return ExactValue(two_pow, k);
    }

    const Rational& coeff() const { return coeff_; }
    int pi_half_exponent() const { return pi_half_; }
    bool is_zero() const { return coeff_.is_zero(); }
    int sign() const { return coeff_.sign(); }

    friend ExactValue operator+(const ExactValue& a, const ExactValue& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.pi_half_ != b.pi_half_)
            throw std::logic_error("ExactValue: adding different powers of sqrt(pi): " +
                                   std::to_string(a.pi_half_) + " vs " + std::to_string(b.pi_half_));
        return ExactValue(a.coeff_ + b.coeff_, a.pi_half_);
    }
    friend ExactValue operator-(const ExactValue& a, const ExactValue& b) { return a + (-b); }
    ExactValue operator-() const { return ExactValue(-coeff_, pi_half_); }

    friend ExactValue operator*(const ExactValue& a, const ExactValue& b) {
        return ExactValue(a.coeff_ * b.coeff_, a.pi_half_ + b.pi_half_);
    }
    friend ExactValue operator/(const ExactValue& a, const ExactValue& b) {
        if (b.is_zero()) throw std::domain_error("ExactValue: division by zero");
        return ExactValue(a.coeff_ / b.coeff_, a.pi_half_ - b.pi_half_);
    }
    ExactValue& operator+=(const ExactValue& o) { return *this = *this + o; }
    ExactValue& operator-=(const ExactValue& o) { return *this = *this - o; }
    ExactValue& operator*=(const ExactValue& o) { return *this = *this * o; }

    friend ExactValue operator*(const Rational& r, const ExactValue& v) {
        return ExactValue(r * v.coeff_, v.pi_half_);
    }
    friend ExactValue operator*(const ExactValue& v, const Rational& r) { return r * v; }

    friend bool operator==(const ExactValue& a, const ExactValue& b) {
        return a.coeff_ == b.coeff_ && a.pi_half_ == b.pi_half_;
    }
    friend bool operator!=(const ExactValue& a, const ExactValue& b) { return !(a == b); }

    double to_double() const {
        long double base = coeff_.num().to_long_double() / coeff_.den().to_long_double();
        return static_cast<double>(base * std::pow(3.14159265358979323846264338327950288L,
                                                   static_cast<long double>(pi_half_) / 2.0L));
    }

    std::string to_string() const {
        if (pi_half_ == 0) return coeff_.to_string();
        std::string pi_part = pi_half_ % 2 == 0 ? "pi^" + std::to_string(pi_half_ / 2)
                                                : "pi^(" + std::to_string(pi_half_) + "/2)";
        return coeff_.to_string() + "*" + pi_part;
    }

private:
    void canonicalize() {
        if (coeff_.is_zero()) pi_half_ = 0;
    }

    Rational coeff_;
    int pi_half_ = 0;
};

}  // namespace heatspec
