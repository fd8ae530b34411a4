#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "heatspec/rational.hpp"

namespace heatspec {

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Ordered basis of the exterior power Lambda^p at a boundary point of an
/// m-manifold. Basis elements are p-subsets of the frame indices {1..m} in
/// lexicographic order; index m is the inward unit normal, indices 1..m-1
/// are tangent to the boundary. A subset is stored as a bitmask with bit
/// i-1 standing for e_i.
class FiberBasis {
public:
    FiberBasis(int m, int p) : m_(m), p_(p) {
        if (m < 1) throw std::invalid_argument("FiberBasis: dimension must be >= 1");
        if (p < 0 || p > m) throw std::invalid_argument("FiberBasis: degree out of range");
        enumerate(0, 0, p);
    }

    int m() const { return m_; }
    int p() const { return p_; }
    int dim() const { return static_cast<int>(elements_.size()); }
    std::uint32_t mask(int idx) const { return elements_[idx]; }

    int index_of(std::uint32_t mask) const {
        // elements are generated in increasing lexicographic order of the
        // sorted index tuple; binary search by that order
        int lo = 0, hi = dim() - 1;
        while (lo <= hi) {
            int mid = (lo + hi) / 2;
            if (elements_[mid] == mask) return mid;
            if (lex_less(elements_[mid], mask))
                lo = mid + 1;
            else
                hi = mid - 1;
        }
        throw std::logic_error("FiberBasis: mask not in basis");
    }

private:
    void enumerate(std::uint32_t acc, int next_bit, int remaining) {
        if (remaining == 0) {
            elements_.push_back(acc);
            return;
        }
        for (int b = next_bit; b <= m_ - remaining; ++b)
            enumerate(acc | (1u << b), b + 1, remaining - 1);
    }

    static bool lex_less(std::uint32_t a, std::uint32_t b) {
        // lexicographic order on sorted tuples == numeric order of reversed
        // comparison from the lowest set bit; handle directly
        while (a != 0 && b != 0) {
            int la = std::countr_zero(a), lb = std::countr_zero(b);
            if (la != lb) return la < lb;
            a &= a - 1;
            b &= b - 1;
        }
        return a == 0 && b != 0;
    }

    int m_, p_;
    std::vector<std::uint32_t> elements_;
};

/// Exact matrix acting between exterior-power fibers. Row index runs over
/// the codomain basis, column index over the domain basis.
class FiberOperator {
public:
    FiberOperator(FiberBasis domain, FiberBasis codomain)
        : domain_(std::move(domain)),
          codomain_(std::move(codomain)),
          entries_(static_cast<std::size_t>(domain_.dim()) * codomain_.dim()) {}

    static FiberOperator identity(const FiberBasis& b) {
        FiberOperator op(b, b);
        for (int i = 0; i < b.dim(); ++i) op.at(i, i) = Rational(1);
        return op;
    }
    static FiberOperator zero(const FiberBasis& b) { return FiberOperator(b, b); }

    const FiberBasis& domain() const { return domain_; }
    const FiberBasis& codomain() const { return codomain_; }

    Rational& at(int row, int col) { return entries_[static_cast<std::size_t>(row) * domain_.dim() + col]; }
    const Rational& at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * domain_.dim() + col];
    }

    friend FiberOperator operator*(const FiberOperator& a, const FiberOperator& b) {
        if (a.domain_.dim() != b.codomain_.dim() || a.domain_.p() != b.codomain_.p())
            throw std::invalid_argument("FiberOperator: dimension mismatch in product");
        FiberOperator r(b.domain_, a.codomain_);
        for (int i = 0; i < a.codomain_.dim(); ++i)
            for (int k = 0; k < a.domain_.dim(); ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.domain_.dim(); ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }
    friend FiberOperator operator+(const FiberOperator& a, const FiberOperator& b) {
        a.require_same_shape(b);
        FiberOperator r = a;
        for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
        return r;
    }
    friend FiberOperator operator-(const FiberOperator& a, const FiberOperator& b) {
        a.require_same_shape(b);
        FiberOperator r = a;
        for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
        return r;
    }
    friend FiberOperator operator*(const Rational& s, const FiberOperator& a) {
        FiberOperator r = a;
        for (auto& e : r.entries_) e *= s;
        return r;
    }
    FiberOperator& operator+=(const FiberOperator& o) { return *this = *this + o; }
    FiberOperator& operator-=(const FiberOperator& o) { return *this = *this - o; }

    friend bool operator==(const FiberOperator& a, const FiberOperator& b) {
        return a.domain_.dim() == b.domain_.dim() && a.codomain_.dim() == b.codomain_.dim() &&
               a.entries_ == b.entries_;
    }

    Rational trace() const {
        if (domain_.dim() != codomain_.dim())
            throw std::logic_error("FiberOperator: trace of non-square operator");
        Rational t;
        for (int i = 0; i < domain_.dim(); ++i) t += at(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

private:
    void require_same_shape(const FiberOperator& o) const {
        if (domain_.dim() != o.domain_.dim() || codomain_.dim() != o.codomain_.dim())
            throw std::invalid_argument("FiberOperator: shape mismatch");
    }

    FiberBasis domain_, codomain_;
    std::vector<Rational> entries_;
};

/// Left exterior multiplication by the frame covector e_i : Lambda^p -> Lambda^(p+1).
/// Sign convention: ext(e_i) e_S = (-1)^{#{j in S : j < i}} e_{S+{i}}, i.e. the
/// shuffle sign that sorts e_i into the ascending product.
inline FiberOperator ext_op(const FiberBasis& from, const FiberBasis& to, int i) {
    if (to.p() != from.p() + 1 || to.m() != from.m())
        throw std::invalid_argument("ext_op: codomain must be one degree up");
    FiberOperator op(from, to);
    const std::uint32_t bit = 1u << (i - 1);
    for (int col = 0; col < from.dim(); ++col) {
        std::uint32_t s = from.mask(col);
        if (s & bit) continue;
        int sign = std::popcount(s & (bit - 1)) % 2 == 0 ? 1 : -1;
        op.at(to.index_of(s | bit), col) = Rational(sign);
    }
    return op;
}

/// Left interior multiplication (contraction) by e_i : Lambda^p -> Lambda^(p-1),
/// the adjoint of ext_op for the orthonormal frame.
inline FiberOperator int_op(const FiberBasis& from, const FiberBasis& to, int i) {
    if (to.p() != from.p() - 1 || to.m() != from.m())
        throw std::invalid_argument("int_op: codomain must be one degree down");
    FiberOperator op(from, to);
    const std::uint32_t bit = 1u << (i - 1);
    for (int col = 0; col < from.dim(); ++col) {
        std::uint32_t s = from.mask(col);
        if (!(s & bit)) continue;
        int sign = std::popcount(s & (bit - 1)) % 2 == 0 ? 1 : -1;
        op.at(to.index_of(s & ~bit), col) = Rational(sign);
    }
    return op;
}

/// Composite ext(e_i) int(e_j) : Lambda^p -> Lambda^p, built directly (the
/// intermediate degree-(p-1) basis is large and never needed).
inline FiberOperator ext_int_op(const FiberBasis& basis, int i, int j) {
    FiberOperator op(basis, basis);
    if (basis.p() == 0) return op;
    const std::uint32_t bi = 1u << (i - 1), bj = 1u << (j - 1);
    for (int col = 0; col < basis.dim(); ++col) {
        std::uint32_t s = basis.mask(col);
        if (!(s & bj)) continue;
        std::uint32_t t = s & ~bj;
        if (t & bi) continue;
        int sign = (std::popcount(t & (bj - 1)) + std::popcount(t & (bi - 1))) % 2 == 0 ? 1 : -1;
        op.at(basis.index_of(t | bi), col) = Rational(sign);
    }
    return op;
}

/// Composite int(e_j) ext(e_i) : Lambda^p -> Lambda^p.
inline FiberOperator int_ext_op(const FiberBasis& basis, int i, int j) {
    FiberOperator op(basis, basis);
    if (basis.p() == basis.m()) return op;
    const std::uint32_t bi = 1u << (i - 1), bj = 1u << (j - 1);
    for (int col = 0; col < basis.dim(); ++col) {
        std::uint32_t s = basis.mask(col);
        if (s & bi) continue;
        std::uint32_t t = s | bi;
        if (!(t & bj)) continue;
        int sign = (std::popcount(s & (bi - 1)) + std::popcount(t & (bj - 1))) % 2 == 0 ? 1 : -1;
        op.at(basis.index_of(t & ~bj), col) = Rational(sign);
    }
    return op;
}

/// Second fundamental form of the boundary: symmetric (m-1)x(m-1) exact
/// matrix, indices tangent to the boundary. For m = 1 the matrix is empty.
class SecondFundamentalForm {
public:
    explicit SecondFundamentalForm(int m) : m_(m), entries_(static_cast<std::size_t>(m - 1) * (m - 1)) {
        if (m < 1) throw std::invalid_argument("SecondFundamentalForm: dimension must be >= 1");
    }
    SecondFundamentalForm(int m, const std::vector<std::vector<Rational>>& rows)
        : SecondFundamentalForm(m) {
        int n = m - 1;
        if (static_cast<int>(rows.size()) != n)
            throw std::invalid_argument("SecondFundamentalForm: row count mismatch");
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(rows[a].size()) != n)
                throw std::invalid_argument("SecondFundamentalForm: column count mismatch");
            for (int b = 0; b < n; ++b) at(a, b) = rows[a][b];
        }
        if (!is_symmetric()) throw std::invalid_argument("SecondFundamentalForm: not symmetric");
    }

    static SecondFundamentalForm scalar_times_identity(int m, const Rational& mu) {
        SecondFundamentalForm L(m);
        for (int a = 0; a < m - 1; ++a) L.at(a, a) = mu;
        return L;
    }

    int m() const { return m_; }
    int n() const { return m_ - 1; }

    Rational& at(int a, int b) { return entries_[static_cast<std::size_t>(a) * n() + b]; }
    const Rational& at(int a, int b) const { return entries_[static_cast<std::size_t>(a) * n() + b]; }

    bool is_symmetric() const {
        for (int a = 0; a < n(); ++a)
            for (int b = a + 1; b < n(); ++b)
                if (at(a, b) != at(b, a)) return false;
        return true;
    }

    /// L_aa, the normalized mean curvature.
    Rational trace() const {
        Rational t;
        for (int a = 0; a < n(); ++a) t += at(a, a);
        return t;
    }
    /// L_ab L_ab
    Rational frobenius_sq() const {
        Rational t;
        for (int a = 0; a < n(); ++a)
            for (int b = 0; b < n(); ++b) t += at(a, b) * at(a, b);
        return t;
    }

    friend bool operator==(const SecondFundamentalForm& x, const SecondFundamentalForm& y) {
        return x.m_ == y.m_ && x.entries_ == y.entries_;
    }

private:
    int m_;
    std::vector<Rational> entries_;
};

}  // namespace heatspec
