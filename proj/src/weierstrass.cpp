#include "cmzeta/weierstrass.hpp"

#include <stdexcept>

namespace cmzeta {

namespace {

bool squarefree(long n)
{
    n = n < 0 ? -n : n;
    for (long d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) {
            return false;
        }
    }
    return n != 0;
}

} // namespace

bool is_fundamental_discriminant(long d)
{
    const long r = ((d % 4) + 4) % 4;
    if (r == 1) {
        return d != 1 && squarefree(d);
    }
    if (r == 0) {
        const long m = d / 4;
        const long rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

QuadRat CurveModel::discriminant() const
{
    return g2 * g2 * g2 - QuadRat(27) * g3 * g3;
}

QuadRat CurveModel::j_invariant() const
{
    return QuadRat(1728) * g2 * g2 * g2 / discriminant();
}

Rational CurveModel::norm_discriminant() const
{
    const QuadRat d = discriminant();
    return QuadRat(d.a(), d.b(), field).norm();
}

CurveModel CurveModel::make(std::string name, QuadField field, QuadRat g2, QuadRat g3, long dK, long conductor)
{
    CurveModel c;
    c.name = std::move(name);
    c.field = QuadField::make(field.s, field.t);
    c.g2 = QuadRat(g2.a(), g2.b(), c.field);
    c.g3 = QuadRat(g3.a(), g3.b(), c.field);
    c.dK = dK;
    c.conductor = conductor;
    if (c.discriminant().is_zero()) {
        throw std::invalid_argument("curve: discriminant g2^3 - 27 g3^2 vanishes");
    }
    if (dK >= 0 || !is_fundamental_discriminant(dK)) {
        throw std::invalid_argument("curve: dK must be a negative fundamental discriminant");
    }
    if (conductor < 1) {
        throw std::invalid_argument("curve: conductor must be positive");
    }
    return c;
}

CurveModel CurveModel::rescaled(const Rational &omega) const
{
    if (sgn(omega) == 0) {
        throw std::invalid_argument("rescaled: omega must be nonzero");
    }
    const QuadRat o(omega);
    const QuadRat o2 = o * o;
    const QuadRat o4 = o2 * o2;
    CurveModel c = *this;
    c.name = name + "/" + omega.get_str();
    c.g2 = g2 / o4;
    c.g3 = g3 / (o4 * o2);
    return c;
}

CurveModel builtin_curve(const std::string &name)
{
    if (name == "cm15") {
        const QuadField f = QuadField::make(1, 1);
        return CurveModel::make("cm15", f, QuadRat(7110, 11505, f), QuadRat(220465, 356720, f), -15, 1);
    }
    throw std::invalid_argument("unknown curve: " + name);
}

std::vector<std::string> builtin_curve_names()
{
    return {"cm15"};
}

QuadRat WeierstrassExpansion::b(long n) const
{
    return multiply_by_integer(log[n], n);
}

WeierstrassExpansion expand(const CurveModel &curve, long N, ZetaRoute route)
{
    if (N < 2) {
        throw std::invalid_argument("expand: N must be at least 2");
    }
    WeierstrassExpansion ex;
    ex.N = N;
    const QuadRat zero;
    const long L = N + 3; // l is kept three terms longer for compositions
    ex.cs = wp_coefficients(curve.g2, curve.g3, wp_terms_for(L + 3), zero);
    ex.wp = wp_series(ex.cs, N, zero);
    ex.wp_prime = derive(ex.wp);
    ex.zeta = zeta_series(ex.cs, N, zero);
    ex.u_of_l = u_of_l(ex.cs, L, zero);
    if (route == ZetaRoute::compose) {
        ex.log = revert(ex.u_of_l);
        ex.zeta_of_log = compose(ex.zeta, ex.log);
    } else {
        const FormalGroupRoute<QuadRat> r = formal_group_route(curve.g2, curve.g3, L, zero);
        ex.log = r.log;
        ex.zeta_of_log = r.zeta_of_log.truncated(N);
    }
    ex.d0 = ex.zeta_of_log[0];
    return ex;
}

bool xy_integrality_check(const CurveModel &curve, const WeierstrassExpansion &ex, unsigned long p)
{
    (void)curve;
    using S = TruncatedSeries<QuadRat>;
    const S x = compose(ex.wp, ex.log).shifted(2);
    const S y = compose(ex.wp_prime, ex.log).shifted(3);
    if (x.valuation() != 0 || !(x[0] == QuadRat(1)) || y.valuation() != 0 || !(y[0] == QuadRat(-2))) {
        return false;
    }
    for (const S *s : {&x, &y}) {
        for (long n = 1; n < s->precision(); ++n) {
            if (vp_coordinates((*s)[n], p) < 0) {
                return false;
            }
        }
    }
    return true;
}

Bivariate Bivariate::zero(long N)
{
    Bivariate b;
    b.N = N;
    b.c.assign(static_cast<std::size_t>(N * N), QuadRat());
    return b;
}

Bivariate operator+(const Bivariate &f, const Bivariate &g)
{
    Bivariate h = Bivariate::zero(f.N);
    for (std::size_t k = 0; k < h.c.size(); ++k) {
        h.c[k] = f.c[k] + g.c[k];
    }
    return h;
}

Bivariate operator*(const Bivariate &f, const Bivariate &g)
{
    const long N = f.N;
    Bivariate h = Bivariate::zero(N);
    for (long i1 = 0; i1 < N; ++i1) {
        for (long j1 = 0; i1 + j1 < N; ++j1) {
            const QuadRat &a = f.at(i1, j1);
            if (a.is_zero()) {
                continue;
            }
            for (long i2 = 0; i1 + j1 + i2 < N; ++i2) {
                for (long j2 = 0; i1 + j1 + i2 + j2 < N; ++j2) {
                    const QuadRat &b = g.at(i2, j2);
                    if (!b.is_zero()) {
                        h.at(i1 + i2, j1 + j2) += a * b;
                    }
                }
            }
        }
    }
    return h;
}

Bivariate substitute(const TruncatedSeries<QuadRat> &h, const Bivariate &f)
{
    if (!f.at(0, 0).is_zero()) {
        throw std::invalid_argument("substitute: inner series has a constant term");
    }
    const long N = f.N;
    if (h.precision() < N) {
        throw std::invalid_argument("substitute: outer series is not known to the total degree");
    }
    if (h.valuation() < 0) {
        throw std::invalid_argument("substitute: outer series has a pole");
    }
    Bivariate result = Bivariate::zero(N);
    Bivariate power = Bivariate::zero(N);
    power.at(0, 0) = QuadRat(1);
    for (long k = 0; k < N; ++k) {
        const QuadRat &hk = h[k];
        if (!hk.is_zero()) {
            for (std::size_t m = 0; m < power.c.size(); ++m) {
                result.c[m] += hk * power.c[m];
            }
        }
        power = power * f;
    }
    return result;
}

Bivariate formal_group_law(const WeierstrassExpansion &ex, long N)
{
    Bivariate L = Bivariate::zero(N);
    for (long n = 1; n < N; ++n) {
        L.at(n, 0) = ex.log[n];
        L.at(0, n) = ex.log[n];
    }
    return substitute(ex.u_of_l, L);
}

} // namespace cmzeta
