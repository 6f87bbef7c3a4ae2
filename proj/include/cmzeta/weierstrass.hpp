#pragma once

// Expansions attached to y^2 = 4x^3 - g2 x - g3: the Laurent coefficients
// c_n of the Weierstrass p-function, p, p', zeta, the parameter
// u = -2x/y as a series in the elliptic logarithm, the formal-group
// logarithm l(u) and zeta(l(u)).
//
// Two routes to zeta(l(u)) are provided.  The analytic route composes the
// zeta expansion with l.  The formal-group route never leaves the ring
// Z[1/2, g2, g3] until a final integration: it expands w = -2/y in u from
// w = u^3 - (g2/4) u w^2 - (g3/4) w^3, takes x = u/w, y = -2/w, then
// l' = x'/y and (zeta o l)' = -x l'.  The second route is what the p-adic
// fast domain uses, since it involves no cancellation of p-adic poles.

#include <string>
#include <vector>

#include "cmzeta/exactnum.hpp"
#include "cmzeta/series.hpp"

namespace cmzeta {

struct CurveModel {
    std::string name;
    QuadField field;
    QuadRat g2;
    QuadRat g3;
    long dK = 0;
    long conductor = 1;

    /// g2^3 - 27 g3^2.
    QuadRat discriminant() const;
    /// 1728 g2^3 / discriminant.
    QuadRat j_invariant() const;
    Rational norm_discriminant() const;

    /// Validates the data: nonzero discriminant, dK a negative fundamental
    /// discriminant, conductor >= 1.
    static CurveModel make(std::string name, QuadField field, QuadRat g2, QuadRat g3, long dK, long conductor);

    /// The model with (g2, g3) replaced by (omega^-4 g2, omega^-6 g3).
    CurveModel rescaled(const Rational &omega) const;
};

bool is_fundamental_discriminant(long d);

/// Built-in curves by name ("cm15": CM by the maximal order of Q(sqrt -15),
/// defined over Q(sqrt 5)).  Throws std::invalid_argument for unknown names.
CurveModel builtin_curve(const std::string &name);
std::vector<std::string> builtin_curve_names();

/// c_2 .. c_{n_max} (entries 0 and 1 are zero).
template <class C>
std::vector<C> wp_coefficients(const C &g2, const C &g3, long n_max, const C &zero)
{
    std::vector<C> c(static_cast<std::size_t>(std::max(n_max, 1L) + 1), zero);
    if (n_max >= 2) {
        c[2] = divide_by_integer(g2, 20);
    }
    if (n_max >= 3) {
        c[3] = divide_by_integer(g3, 28);
    }
    for (long n = 4; n <= n_max; ++n) {
        C acc = zero;
        for (long m = 2; m <= n - 2; ++m) {
            acc += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(n - m)];
        }
        c[static_cast<std::size_t>(n)] = divide_by_integer(multiply_by_integer(acc, 3), (n - 3) * (2 * n + 1));
    }
    return c;
}

/// Number of c_n needed for a z-expansion known modulo z^N.
inline long wp_terms_for(long N) { return std::max(2L, (N + 2) / 2); }

/// p(z) = z^-2 + sum c_n z^(2n-2) + O(z^N).
template <class C>
TruncatedSeries<C> wp_series(const std::vector<C> &c, long N, const C &zero)
{
    std::vector<C> out(static_cast<std::size_t>(std::max(N + 2, 0L)), zero);
    out[0] = from_integer(zero, 1);
    for (std::size_t n = 2; n < c.size(); ++n) {
        const long e = 2 * static_cast<long>(n) - 2;
        if (e < N) {
            out[static_cast<std::size_t>(e + 2)] = c[n];
        }
    }
    return TruncatedSeries<C>(-2, N, std::move(out), zero);
}

/// zeta(z) = 1/z - sum c_n/(2n-1) z^(2n-1) + O(z^N).
template <class C>
TruncatedSeries<C> zeta_series(const std::vector<C> &c, long N, const C &zero)
{
    std::vector<C> out(static_cast<std::size_t>(std::max(N + 1, 0L)), zero);
    out[0] = from_integer(zero, 1);
    for (std::size_t n = 2; n < c.size(); ++n) {
        const long e = 2 * static_cast<long>(n) - 1;
        if (e < N) {
            out[static_cast<std::size_t>(e + 1)] = -divide_by_integer(c[n], e);
        }
    }
    return TruncatedSeries<C>(-1, N, std::move(out), zero);
}

/// u(l) = -2 p(l)/p'(l) + O(l^N).
template <class C>
TruncatedSeries<C> u_of_l(const std::vector<C> &c, long N, const C &zero)
{
    const TruncatedSeries<C> wp = wp_series(c, N - 3, zero);
    const TruncatedSeries<C> q = (wp / derive(wp)).truncated(N);
    return q.scaled(from_integer(zero, -2));
}

/// w(u) = -2/y with w = u^3 + a4 u w^2 + a6 w^3, a4 = -g2/4, a6 = -g3/4,
/// modulo u^M.  Coefficient recursion: w_n depends on w_m for m < n.
template <class C>
TruncatedSeries<C> formal_w(const C &g2, const C &g3, long M, const C &zero)
{
    const C a4 = -divide_by_integer(g2, 4);
    const C a6 = -divide_by_integer(g3, 4);
    const auto sz = static_cast<std::size_t>(std::max(M, 0L));
    std::vector<C> w(sz, zero);
    std::vector<C> w2(sz, zero);
    std::vector<C> w3(sz, zero);
    for (long n = 3; n < M; n += 2) {
        // (w^2)_{n-1} uses w_i with i <= n-4; (w^3)_n uses w^2 up to n-3.
        const auto m = static_cast<std::size_t>(n - 1);
        C s2 = zero;
        for (std::size_t i = 3; i + 3 <= m; i += 2) {
            s2 += w[i] * w[m - i];
        }
        w2[m] = s2;
        C s3 = zero;
        for (std::size_t i = 3; i + 6 <= static_cast<std::size_t>(n); i += 2) {
            s3 += w[i] * w2[static_cast<std::size_t>(n) - i];
        }
        w3[static_cast<std::size_t>(n)] = s3;
        C wn = a4 * w2[m] + a6 * s3;
        if (n == 3) {
            wn += from_integer(zero, 1);
        }
        w[static_cast<std::size_t>(n)] = wn;
    }
    return TruncatedSeries<C>(0, M, std::move(w), zero);
}

template <class C>
struct FormalGroupRoute {
    TruncatedSeries<C> x;          // p(l(u))
    TruncatedSeries<C> y;          // p'(l(u))
    TruncatedSeries<C> log;        // l(u)
    TruncatedSeries<C> zeta_of_log; // zeta(l(u)), constant term 0
};

/// l, x, y and zeta(l) modulo u^N by the formal-group route.  The
/// integration constant of zeta(l) is taken to be 0, which is forced by
/// oddness for this model shape.
template <class C>
FormalGroupRoute<C> formal_group_route(const C &g2, const C &g3, long N, const C &zero)
{
    using S = TruncatedSeries<C>;
    const long M = N + 6;
    const S w = formal_w(g2, g3, M, zero);
    const S winv = inverse(w);
    const S x = winv.shifted(1);
    const S y = winv.scaled(from_integer(zero, -2));
    const S dlog = mul(derive(x), w, M).scaled(divide_by_integer(from_integer(zero, -1), 2));
    FormalGroupRoute<C> r;
    r.x = x.truncated(N);
    r.y = y.truncated(N);
    r.log = integrate(dlog).truncated(N);
    r.zeta_of_log = integrate(-(x * dlog)).truncated(N);
    return r;
}

struct WeierstrassExpansion {
    long N = 0;
    std::vector<QuadRat> cs;
    TruncatedSeries<QuadRat> wp;
    TruncatedSeries<QuadRat> wp_prime;
    TruncatedSeries<QuadRat> zeta;
    TruncatedSeries<QuadRat> u_of_l;
    TruncatedSeries<QuadRat> log;         // l(u) = sum b(n)/n u^n
    TruncatedSeries<QuadRat> zeta_of_log; // zeta(l(u))
    QuadRat d0;                           // constant term of zeta(l(u)) - 1/u

    /// b(n) = n * (coefficient of u^n in l).
    QuadRat b(long n) const;
};

enum class ZetaRoute { compose, formal_group };

/// All expansions modulo u^N (resp. z^N).
WeierstrassExpansion expand(const CurveModel &curve, long N, ZetaRoute route = ZetaRoute::compose);

/// u^2 p(l(u)) in 1 + u Z_(p)[[u]] and u^3 p'(l(u)) in -2 + u Z_(p)[[u]]
/// (integrality at every place above p), modulo u^N.
bool xy_integrality_check(const CurveModel &curve, const WeierstrassExpansion &ex, unsigned long p);

// Bivariate series sum c_ij X^i Y^j truncated at total degree < N.
struct Bivariate {
    long N = 0;
    std::vector<QuadRat> c; // row-major, index i*N + j

    QuadRat &at(long i, long j) { return c[static_cast<std::size_t>(i * N + j)]; }
    const QuadRat &at(long i, long j) const { return c[static_cast<std::size_t>(i * N + j)]; }

    static Bivariate zero(long N);
    friend Bivariate operator+(const Bivariate &f, const Bivariate &g);
    friend Bivariate operator*(const Bivariate &f, const Bivariate &g);
};

/// h(f) for a univariate power series h without constant term.
Bivariate substitute(const TruncatedSeries<QuadRat> &h, const Bivariate &f);

/// F(X, Y) = u(l(X) + l(Y)) truncated at total degree N.
Bivariate formal_group_law(const WeierstrassExpansion &ex, long N);

} // namespace cmzeta
