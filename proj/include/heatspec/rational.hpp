#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatspec {

/// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
///
/// Supports exactly the operations the exact-arithmetic layer needs:
/// add/sub/mul, comparisons, bit shifts, binary gcd, decimal i/o and
/// conversion to double. There is deliberately no general multi-limb
/// division; Rational never divides integers, it reduces by gcd.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {  // NOLINT: implicit by design, mirrors built-in ints
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // avoid UB on LLONG_MIN
        unsigned long long u = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                     : static_cast<unsigned long long>(v);
        while (u != 0) {
            mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffULL));
            u >>= 32;
        }
    }

    static BigInt from_string(const std::string& s) {
        BigInt r;
        std::size_t i = 0;
        int sign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
            r.mul_small_add(10, static_cast<std::uint32_t>(s[i] - '0'));
        }
        r.sign_ = r.mag_.empty() ? 0 : sign;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_even() const { return mag_.empty() || (mag_[0] & 1u) == 0; }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }
    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (std::size_t i = 0; i < a.mag_.size(); ++i) {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.mag_.size(); ++j) {
                std::uint64_t cur = static_cast<std::uint64_t>(a.mag_[i]) * b.mag_[j] +
                                    r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.mag_.size();
            while (carry != 0) {
                std::uint64_t cur = r.mag_[k] + carry;
                r.mag_[k] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c < 0 : c > 0;
    }
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

    BigInt shifted_right() const {  // /2, magnitude shift
        BigInt r = *this;
        std::uint32_t carry = 0;
        for (std::size_t i = r.mag_.size(); i-- > 0;) {
            std::uint32_t cur = r.mag_[i];
            r.mag_[i] = (cur >> 1) | (carry << 31);
            carry = cur & 1u;
        }
        r.trim();
        if (r.mag_.empty()) r.sign_ = 0;
        return r;
    }
    BigInt shifted_left(unsigned k) const {  // * 2^k
        if (sign_ == 0 || k == 0) return *this;
        BigInt r = *this;
        unsigned limbs = k / 32, bits = k % 32;
        if (bits != 0) {
            std::uint32_t carry = 0;
            for (auto& limb : r.mag_) {
                std::uint32_t cur = limb;
                limb = (cur << bits) | carry;
                carry = cur >> (32 - bits);
            }
            if (carry) r.mag_.push_back(carry);
        }
        r.mag_.insert(r.mag_.begin(), limbs, 0u);
        return r;
    }

    /// gcd of magnitudes (binary algorithm; no division needed).
    static BigInt gcd(BigInt a, BigInt b) {
        a = a.abs();
        b = b.abs();
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        unsigned shift = 0;
        while (a.is_even() && b.is_even()) {
            a = a.shifted_right();
            b = b.shifted_right();
            ++shift;
        }
        while (a.is_even()) a = a.shifted_right();
        while (!b.is_zero()) {
            while (b.is_even()) b = b.shifted_right();
            if (a > b) std::swap(a, b);
            b = b - a;
        }
        return a.shifted_left(shift);
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        // repeated single-limb division by 1e9
        std::vector<std::uint32_t> work = mag_;
        std::string digits;
        while (!work.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string chunk = std::to_string(rem);
            if (!work.empty()) chunk.insert(0, 9 - chunk.size(), '0');
            digits.insert(0, chunk);
        }
        return (sign_ < 0 ? "-" : "") + digits;
    }

    long double to_long_double() const {
        long double v = 0.0L;
        for (std::size_t i = mag_.size(); i-- > 0;)
            v = v * 4294967296.0L + static_cast<long double>(mag_[i]);
        return sign_ < 0 ? -v : v;
    }

    /// true if the value fits in int64 (used by JSON writers).
    bool fits_int64() const {
        if (mag_.size() > 2) return false;
        unsigned long long u = 0;
        for (std::size_t i = mag_.size(); i-- > 0;) u = (u << 32) | mag_[i];
        if (sign_ >= 0) return u <= 0x7fffffffffffffffULL;
        return u <= 0x8000000000000000ULL;
    }

private:
    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    }
    void mul_small_add(std::uint32_t mul, std::uint32_t add) {
        std::uint64_t carry = add;
        for (auto& limb : mag_) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * mul + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry != 0) {
            mag_.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
        sign_ = mag_.empty() ? 0 : 1;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r = big;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < small.size() || carry; ++i) {
            if (i >= r.size()) {
                r.push_back(0);
            }
            std::uint64_t cur = r[i] + carry + (i < small.size() ? small[i] : 0);
            r[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        return r;
    }
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r = a;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow -
                               (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
            if (cur < 0) {
                cur += 1LL << 32;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    int sign_ = 0;
    std::vector<std::uint32_t> mag_;
};

/// Exact rational number, always reduced, denominator > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static Rational from_string(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt::from_string(s), BigInt(1));
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (a - b).sign() < 0;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    double to_double() const {
        return static_cast<double>(num_.to_long_double() / den_.to_long_double());
    }

    std::string to_string() const {
        if (den_ == BigInt(1)) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = divide_exact(num_, g);
        den_ = divide_exact(den_, g);
    }

    // exact division by a known common factor, via binary long division
    static BigInt divide_exact(const BigInt& a, const BigInt& g) {
        if (g == BigInt(1)) return a;
        // binary search-free schoolbook: repeated shift-subtract
        BigInt mag = a.abs(), div = g.abs(), quot(0);
        if (mag < div) throw std::logic_error("divide_exact: not a divisor");
        int shift = 0;
        BigInt d = div;
        while (d <= mag) {
            d = d.shifted_left(1);
            ++shift;
        }
        for (int i = shift - 1; i >= 0; --i) {
            BigInt cand = div.shifted_left(static_cast<unsigned>(i));
            if (cand <= mag) {
                mag = mag - cand;
                quot = quot + BigInt(1).shifted_left(static_cast<unsigned>(i));
            }
        }
        if (!mag.is_zero()) throw std::logic_error("divide_exact: remainder nonzero");
        return a.sign() < 0 ? -quot : quot;
    }

    BigInt num_, den_;
};

}  // namespace heatspec
