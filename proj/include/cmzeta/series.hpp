#pragma once

// Truncated Laurent series f = sum_{n >= lo} f_n u^n + O(u^prec) over a
// coefficient domain C.  The domain supplies the free functions is_zero,
// is_invertible, inverse, from_integer, divide_by_integer and
// multiply_by_integer (see exactnum.hpp and padic.hpp).
//
// Precision rules: results never claim more than the inputs determine.
//   f*g      : min(pf + vg, pg + vf)
//   1/f      : pf - 2 vf
//   f o g    : min(vg*pf, pg + (n0 - 1) vg), n0 the lowest nonzero
//              non-constant exponent of f

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmzeta/exactnum.hpp"

namespace cmzeta {

namespace detail {

// out[n] = sum_{i+j=n} f[i] g[j] for n < count.
template <class C>
std::vector<C> convolve(const std::vector<C> &f, const std::vector<C> &g, std::size_t count, const C &zero)
{
    std::vector<C> out(count, zero);
    std::vector<std::size_t> nf;
    std::vector<std::size_t> ng;
    for (std::size_t i = 0; i < f.size() && i < count; ++i) {
        if (!is_zero(f[i])) {
            nf.push_back(i);
        }
    }
    for (std::size_t j = 0; j < g.size() && j < count; ++j) {
        if (!is_zero(g[j])) {
            ng.push_back(j);
        }
    }
    for (std::size_t i : nf) {
        for (std::size_t j : ng) {
            if (i + j >= count) {
                break;
            }
            out[i + j] += f[i] * g[j];
        }
    }
    return out;
}

// Integer-form kernel with a common denominator per operand.
template <>
std::vector<QuadRat> convolve(const std::vector<QuadRat> &f, const std::vector<QuadRat> &g, std::size_t count,
                              const QuadRat &zero);

} // namespace detail

template <class C>
class TruncatedSeries {
public:
    TruncatedSeries() = default;

    /// coeffs[i] is the coefficient of u^(lo + i); entries beyond prec are
    /// dropped and missing ones below prec are zero.
    TruncatedSeries(long lo, long prec, std::vector<C> coeffs, C zero = C{})
        : lo_(lo), prec_(prec), coeffs_(std::move(coeffs)), zero_(std::move(zero))
    {
        if (lo_ > prec_) {
            lo_ = prec_;
        }
        coeffs_.resize(static_cast<std::size_t>(prec_ - lo_), zero_);
        trim();
    }

    /// O(u^prec).
    static TruncatedSeries zero(long prec, C zero = C{}) { return TruncatedSeries(prec, prec, {}, std::move(zero)); }

    /// c u^e + O(u^prec).
    static TruncatedSeries monomial(const C &c, long e, long prec, C zero = C{})
    {
        return TruncatedSeries(e, prec, {c}, std::move(zero));
    }

    /// The variable u + O(u^prec).
    static TruncatedSeries variable(long prec, const C &zero = C{})
    {
        return monomial(from_integer(zero, 1), 1, prec, zero);
    }

    long precision() const { return prec_; }
    /// Lowest exponent that is not an exact zero; precision() for O(u^prec).
    long valuation() const { return lo_; }
    bool is_zero_series() const { return coeffs_.empty(); }
    const C &zero_element() const { return zero_; }

    /// Coefficient of u^n; throws for n >= precision.
    const C &operator[](long n) const
    {
        if (n >= prec_) {
            throw std::out_of_range("TruncatedSeries: coefficient beyond precision");
        }
        if (n < lo_) {
            return zero_;
        }
        return coeffs_[static_cast<std::size_t>(n - lo_)];
    }

    /// Leading coefficient (at valuation()).
    const C &leading() const
    {
        if (coeffs_.empty()) {
            throw std::domain_error("TruncatedSeries: leading coefficient of a zero series");
        }
        return coeffs_.front();
    }

    /// Coefficients of u^lo .. u^(prec-1).
    const std::vector<C> &data() const { return coeffs_; }

    /// Whether only exponents of one parity occur.
    bool has_parity(int parity) const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const long e = lo_ + static_cast<long>(i);
            if (((e % 2) + 2) % 2 != parity && !is_zero(coeffs_[i])) {
                return false;
            }
        }
        return true;
    }

    /// Drops terms at and above prec (never raises the precision).
    TruncatedSeries truncated(long prec) const
    {
        if (prec >= prec_) {
            return *this;
        }
        const long lo = std::min(lo_, prec);
        std::vector<C> c(coeffs_.begin(), coeffs_.begin() + (prec - lo));
        return TruncatedSeries(lo, prec, std::move(c), zero_);
    }

    /// Treats the known terms as a polynomial and declares it exact up to
    /// prec (zero fill).  Used by Newton iterations.
    TruncatedSeries padded(long prec) const
    {
        if (prec <= prec_) {
            return truncated(prec);
        }
        return TruncatedSeries(lo_, prec, coeffs_, zero_);
    }

    /// u^k * f.
    TruncatedSeries shifted(long k) const { return TruncatedSeries(lo_ + k, prec_ + k, coeffs_, zero_); }

    TruncatedSeries operator-() const
    {
        std::vector<C> c;
        c.reserve(coeffs_.size());
        for (const C &x : coeffs_) {
            c.push_back(-x);
        }
        return TruncatedSeries(lo_, prec_, std::move(c), zero_);
    }

    friend TruncatedSeries operator+(const TruncatedSeries &f, const TruncatedSeries &g)
    {
        return f.combine(g, [](const C &a, const C &b) { return a + b; });
    }
    friend TruncatedSeries operator-(const TruncatedSeries &f, const TruncatedSeries &g)
    {
        return f.combine(g, [](const C &a, const C &b) { return a - b; });
    }
    friend TruncatedSeries operator*(const TruncatedSeries &f, const TruncatedSeries &g) { return mul(f, g); }

    /// f*g, additionally truncated at `limit`.
    friend TruncatedSeries mul(const TruncatedSeries &f, const TruncatedSeries &g, long limit = kInfiniteValuation)
    {
        const long vf = f.lo_;
        const long vg = g.lo_;
        long prec = std::min(f.prec_ + vg, g.prec_ + vf);
        prec = std::min(prec, limit);
        const long lo = vf + vg;
        if (f.coeffs_.empty() || g.coeffs_.empty() || lo >= prec) {
            return zero(prec, f.zero_);
        }
        const auto count = static_cast<std::size_t>(prec - lo);
        return TruncatedSeries(lo, prec, detail::convolve(f.coeffs_, g.coeffs_, count, f.zero_), f.zero_);
    }

    TruncatedSeries scaled(const C &c) const
    {
        std::vector<C> out;
        out.reserve(coeffs_.size());
        for (const C &x : coeffs_) {
            out.push_back(x * c);
        }
        return TruncatedSeries(lo_, prec_, std::move(out), zero_);
    }

    /// Coefficient-wise map (the precision is kept).
    TruncatedSeries map(const std::function<C(const C &)> &fn) const
    {
        std::vector<C> out;
        out.reserve(coeffs_.size());
        for (const C &x : coeffs_) {
            out.push_back(fn(x));
        }
        return TruncatedSeries(lo_, prec_, std::move(out), zero_);
    }

    friend bool operator==(const TruncatedSeries &f, const TruncatedSeries &g)
    {
        if (f.prec_ != g.prec_ || f.lo_ != g.lo_) {
            return false;
        }
        for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
            if (!(f.coeffs_[i] == g.coeffs_[i])) {
                return false;
            }
        }
        return true;
    }

private:
    void trim()
    {
        std::size_t k = 0;
        while (k < coeffs_.size() && is_zero(coeffs_[k])) {
            ++k;
        }
        if (k > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(k));
            lo_ += static_cast<long>(k);
        }
    }

    template <class Op>
    TruncatedSeries combine(const TruncatedSeries &g, Op op) const
    {
        const long prec = std::min(prec_, g.prec_);
        const long lo = std::min({lo_, g.lo_, prec});
        std::vector<C> out;
        out.reserve(static_cast<std::size_t>(prec - lo));
        for (long n = lo; n < prec; ++n) {
            out.push_back(op((*this)[n], g[n]));
        }
        return TruncatedSeries(lo, prec, std::move(out), zero_);
    }

    long lo_ = 0;
    long prec_ = 0;
    std::vector<C> coeffs_;
    C zero_{};
};

/// Reciprocal of a series whose leading coefficient is invertible.
template <class C>
TruncatedSeries<C> inverse(const TruncatedSeries<C> &f)
{
    if (f.is_zero_series() || !is_invertible(f.leading())) {
        throw std::domain_error("inverse: leading coefficient is not invertible");
    }
    const long v = f.valuation();
    const long prec = f.precision() - 2 * v;
    const long count = prec + v; // coefficients u^-v .. u^(prec-1)
    const C &z = f.zero_element();
    const C a0inv = inverse(f.leading());
    std::vector<C> g;
    g.reserve(static_cast<std::size_t>(std::max(count, 0L)));
    for (long n = 0; n < count; ++n) {
        if (n == 0) {
            g.push_back(a0inv);
            continue;
        }
        C acc = z;
        for (long k = 1; k <= n; ++k) {
            const C &a = f[v + k];
            const C &b = g[static_cast<std::size_t>(n - k)];
            if (!is_zero(a) && !is_zero(b)) {
                acc += a * b;
            }
        }
        g.push_back(is_zero(acc) ? z : -(acc * a0inv));
    }
    return TruncatedSeries<C>(-v, prec, std::move(g), z);
}

template <class C>
TruncatedSeries<C> operator/(const TruncatedSeries<C> &f, const TruncatedSeries<C> &g)
{
    return f * inverse(g);
}

template <class C>
TruncatedSeries<C> derive(const TruncatedSeries<C> &f)
{
    std::vector<C> out;
    const long lo = f.valuation();
    for (long n = lo; n < f.precision(); ++n) {
        out.push_back(multiply_by_integer(f[n], n));
    }
    return TruncatedSeries<C>(lo - 1, f.precision() - 1, std::move(out), f.zero_element());
}

/// Antiderivative with zero constant term; rejects a u^-1 term.
template <class C>
TruncatedSeries<C> integrate(const TruncatedSeries<C> &f)
{
    if (f.valuation() <= -1 && f.precision() > -1 && !is_zero(f[-1])) {
        throw std::domain_error("integrate: series has a u^-1 term");
    }
    std::vector<C> out;
    const long lo = f.valuation();
    for (long n = lo; n < f.precision(); ++n) {
        out.push_back(n == -1 ? f.zero_element() : divide_by_integer(f[n], n + 1));
    }
    return TruncatedSeries<C>(lo + 1, f.precision() + 1, std::move(out), f.zero_element());
}

namespace detail {

// sum_m a_m G^m by Horner.  The sum is later multiplied by a factor of
// valuation `offset` and needed modulo u^target, so the stage holding
// a_m + G*(...) only needs precision target - m*vG - offset.
template <class C>
TruncatedSeries<C> horner(const std::vector<C> &a, const TruncatedSeries<C> &G, long vG, long offset, long target,
                          const C &zero)
{
    using S = TruncatedSeries<C>;
    long top = static_cast<long>(a.size()) - 1;
    while (top >= 0 && is_zero(a[static_cast<std::size_t>(top)])) {
        --top;
    }
    if (top < 0) {
        return S::zero(target, zero);
    }
    auto need = [&](long m) { return std::max(target - m * vG - offset, 0L); };
    S h = S::monomial(a[static_cast<std::size_t>(top)], 0, need(top), zero);
    for (long m = top - 1; m >= 0; --m) {
        const long prec = need(m);
        h = mul(h, G, prec);
        if (!is_zero(a[static_cast<std::size_t>(m)])) {
            h = h + S::monomial(a[static_cast<std::size_t>(m)], 0, prec, zero);
        }
    }
    return h;
}

} // namespace detail

/// f(g(u)); g must have positive valuation.  Principal-part terms of f are
/// evaluated through 1/g.  When g is odd the positive part is evaluated by
/// Horner in g^2 (same result, half the multiplications).
template <class C>
TruncatedSeries<C> compose(const TruncatedSeries<C> &f, const TruncatedSeries<C> &g)
{
    using S = TruncatedSeries<C>;
    const C &z = f.zero_element();
    const long vg = g.valuation();
    if (g.is_zero_series() || vg < 1) {
        throw std::invalid_argument("compose: inner series must have positive valuation");
    }
    const long pf = f.precision();
    const long pg = g.precision();
    long target = vg * pf;
    long n0 = kInfiniteValuation;
    for (long n = f.valuation(); n < pf; ++n) {
        if (n != 0 && !is_zero(f[n])) {
            n0 = n;
            break;
        }
    }
    if (n0 != kInfiniteValuation) {
        target = std::min(target, pg + (n0 - 1) * vg);
    }

    S result = S::zero(target, z);
    // positive part, exponents 0 .. top
    const long top = std::min(pf - 1, target > 0 ? (target - 1) / vg : -1);
    if (top >= 0) {
        if (g.has_parity(1) && top >= 2) {
            const S G = mul(g, g, target);
            std::vector<C> even;
            std::vector<C> odd;
            for (long n = 0; n <= top; ++n) {
                (n % 2 == 0 ? even : odd).push_back(f[n]);
            }
            S pe = detail::horner(even, G, 2 * vg, 0, target, z);
            S po = detail::horner(odd, G, 2 * vg, vg, target, z);
            result = result + pe + mul(g, po, target);
        } else {
            std::vector<C> a;
            for (long n = 0; n <= top; ++n) {
                a.push_back(f[n]);
            }
            result = result + detail::horner(a, g, vg, 0, target, z);
        }
    }
    // principal part
    if (f.valuation() < 0) {
        const S ginv = inverse(g);
        const long J = -f.valuation();
        const long exact = target + (J + 1) * vg + 1; // constants are exact
        S h = S::monomial(f[-J], 0, exact, z);
        for (long j = J - 1; j >= 1; --j) {
            h = mul(h, ginv, target + (j + 1) * vg) + S::monomial(f[-j], 0, exact, z);
        }
        result = result + mul(h, ginv, target);
    }
    return result.truncated(target);
}

/// Compositional inverse of f = a u + ..., a invertible, by Newton
/// iteration g <- g - g' (f(g) - u), which doubles the correct terms.
template <class C>
TruncatedSeries<C> revert(const TruncatedSeries<C> &f)
{
    using S = TruncatedSeries<C>;
    if (f.valuation() != 1 || !is_invertible(f.leading())) {
        throw std::invalid_argument("revert: need valuation 1 and an invertible leading coefficient");
    }
    const C &z = f.zero_element();
    const long P = f.precision();
    S g = S::monomial(inverse(f.leading()), 1, std::min(2L, P), z);
    long n = g.precision();
    while (n < P) {
        const long n2 = std::min(2 * n - 1, P);
        const S gx = g.padded(n2);
        const S residual = compose(f.truncated(n2), gx) - S::variable(n2, z);
        g = (gx - mul(derive(gx), residual, n2)).truncated(n2);
        n = n2;
    }
    return g;
}

/// f(u^p).
template <class C>
TruncatedSeries<C> substitute_power(const TruncatedSeries<C> &f, long p)
{
    if (p < 1) {
        throw std::invalid_argument("substitute_power: exponent must be positive");
    }
    std::vector<C> out;
    const long lo = f.valuation();
    for (long n = lo; n < f.precision(); ++n) {
        out.push_back(f[n]);
        if (n + 1 < f.precision()) {
            for (long r = 1; r < p; ++r) {
                out.push_back(f.zero_element());
            }
        }
    }
    return TruncatedSeries<C>(lo * p, f.precision() * p, std::move(out), f.zero_element());
}

/// Coefficient-wise Frobenius at the context's prime.
inline TruncatedSeries<QuadRat> frobenius_series(const TruncatedSeries<QuadRat> &f, const PlaceContext &ctx)
{
    return f.map([&ctx](const QuadRat &x) { return frobenius(x, ctx); });
}

/// Whether (A^n - B^n)/n has every coefficient divisible by p (at every
/// place above p) for 1 <= n <= N.  A and B must be p-integral with
/// A == B mod p; otherwise std::invalid_argument is thrown.
bool honda_quotient_check(const TruncatedSeries<QuadRat> &A, const TruncatedSeries<QuadRat> &B, unsigned long p,
                          long N);

// ---------------------------------------------------------------------------
// Text format: comment header lines starting with '#', then one
// "exponent<TAB>coefficient" line per nonzero term.

std::string series_to_text(const TruncatedSeries<QuadRat> &f, const std::string &name);
TruncatedSeries<QuadRat> series_from_text(const std::string &text, QuadField field);

} // namespace cmzeta
