#include "cmzeta/analytic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cmzeta {

namespace {

using LComplex = std::complex<long double>;
constexpr long double kPi = std::numbers::pi_v<long double>;

double to_double(const Rational &x)
{
    return x.get_d();
}

// Roots of x^3 + a x + b (Durand-Kerner, then Newton).
std::array<LComplex, 3> depressed_cubic_roots(LComplex a, LComplex b)
{
    auto f = [&](LComplex x) { return (x * x + a) * x + b; };
    auto df = [&](LComplex x) { return 3.0L * x * x + a; };
    const long double scale = std::max({1.0L, std::sqrt(std::abs(a)), std::cbrt(std::abs(b))});
    std::array<LComplex, 3> z{LComplex(0.4L, 0.9L) * scale, LComplex(-0.7L, 0.3L) * scale,
                              LComplex(0.2L, -0.8L) * scale};
    for (int it = 0; it < 500; ++it) {
        long double change = 0;
        for (int i = 0; i < 3; ++i) {
            LComplex den = 1;
            for (int j = 0; j < 3; ++j) {
                if (j != i) {
                    den *= z[i] - z[j];
                }
            }
            const LComplex step = f(z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-18L * scale) {
            break;
        }
    }
    for (auto &x : z) {
        for (int it = 0; it < 5; ++it) {
            const LComplex d = df(x);
            if (std::abs(d) == 0) {
                break;
            }
            x -= f(x) / d;
        }
    }
    return z;
}

LComplex agm(LComplex a, LComplex b)
{
    for (int it = 0; it < 100; ++it) {
        const LComplex a1 = (a + b) / 2.0L;
        LComplex b1 = std::sqrt(a * b);
        if (std::abs(a1 - b1) > std::abs(a1 + b1)) {
            b1 = -b1;
        }
        a = a1;
        b = b1;
        if (std::abs(a - b) <= 1e-19L * std::abs(a)) {
            break;
        }
    }
    return (a + b) / 2.0L;
}

LComplex q_of(LComplex tau)
{
    return std::exp(LComplex(0, 2) * kPi * tau);
}

// sum_{n>=1} n^k q^n / (1 - q^n) = sum sigma_k(n) q^n
LComplex lambert(LComplex tau, int k, int terms)
{
    const LComplex q = q_of(tau);
    LComplex qn = 1;
    LComplex sum = 0;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        sum += std::pow(static_cast<long double>(n), k) * qn / (1.0L - qn);
    }
    return sum;
}

int terms_for(Complex tau, int terms)
{
    return terms > 0 ? terms : qseries_terms(tau);
}

std::pair<LComplex, LComplex> invariants_l(LComplex w1, LComplex w2)
{
    const LComplex tau = w2 / w1;
    const Complex t(static_cast<double>(tau.real()), static_cast<double>(tau.imag()));
    const int n = qseries_terms(t);
    const LComplex e4 = 1.0L + 240.0L * lambert(tau, 3, n);
    const LComplex e6 = 1.0L - 504.0L * lambert(tau, 5, n);
    const LComplex c = 2.0L * kPi / w1;
    const LComplex c2 = c * c;
    const LComplex c4 = c2 * c2;
    return {c4 * e4 / 12.0L, c4 * c2 * e6 / 216.0L};
}

} // namespace

double embedding_root(QuadField field, int embedding)
{
    if (field.is_rational()) {
        return 0.0;
    }
    const double r = std::sqrt(static_cast<double>(field.disc()));
    return embedding == 0 ? (field.s - r) / 2 : (field.s + r) / 2;
}

double embed_real(const QuadRat &x, int embedding)
{
    const double a = to_double(x.a());
    const double b = to_double(x.b());
    const double here = a + b * embedding_root(x.field(), embedding);
    if (x.is_rational()) {
        return here;
    }
    // a + b w nearly cancels at one embedding: divide the exact norm by the other one
    const double other = a + b * embedding_root(x.field(), 1 - embedding);
    if (std::abs(here) < std::abs(other)) {
        return to_double(x.norm()) / other;
    }
    return here;
}

int qseries_terms(Complex tau)
{
    if (tau.imag() <= 0) {
        throw std::domain_error("q-series: Im(tau) must be positive");
    }
    const double absq = std::exp(-2 * std::numbers::pi * tau.imag());
    return std::max(1, static_cast<int>(std::ceil(std::log(1e-17) / std::log(absq))) + 1);
}

Complex ramanujan_p(Complex tau, int terms)
{
    const int n = terms_for(tau, terms);
    const LComplex t(tau.real(), tau.imag());
    const LComplex v = 1.0L - 24.0L * lambert(t, 1, n);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex e2star(Complex tau, int terms)
{
    return ramanujan_p(tau, terms) - 3.0 / (std::numbers::pi * tau.imag());
}

Complex eisenstein_e4(Complex tau, int terms)
{
    const LComplex v = 1.0L + 240.0L * lambert(LComplex(tau.real(), tau.imag()), 3, terms_for(tau, terms));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex eisenstein_e6(Complex tau, int terms)
{
    const LComplex v = 1.0L - 504.0L * lambert(LComplex(tau.real(), tau.imag()), 5, terms_for(tau, terms));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

Complex j_from_tau(Complex tau)
{
    const Complex e4 = eisenstein_e4(tau);
    const Complex e6 = eisenstein_e6(tau);
    const Complex e43 = e4 * e4 * e4;
    return 1728.0 * e43 / (e43 - e6 * e6);
}

std::pair<Complex, Complex> invariants_from_periods(Complex omega1, Complex omega2)
{
    const auto [g2, g3] = invariants_l(LComplex(omega1.real(), omega1.imag()), LComplex(omega2.real(), omega2.imag()));
    return {Complex(static_cast<double>(g2.real()), static_cast<double>(g2.imag())),
            Complex(static_cast<double>(g3.real()), static_cast<double>(g3.imag()))};
}

std::pair<Complex, Complex> lattice_sums(Complex omega1, Complex omega2, int bound)
{
    const LComplex w1(omega1.real(), omega1.imag());
    const LComplex w2(omega2.real(), omega2.imag());
    LComplex s4 = 0;
    LComplex s6 = 0;
    for (int a = -bound; a <= bound; ++a) {
        for (int b = -bound; b <= bound; ++b) {
            if (a == 0 && b == 0) {
                continue;
            }
            const LComplex m = static_cast<long double>(a) * w1 + static_cast<long double>(b) * w2;
            const LComplex inv2 = 1.0L / (m * m);
            const LComplex inv4 = inv2 * inv2;
            s4 += inv4;
            s6 += inv4 * inv2;
        }
    }
    const LComplex g2 = 60.0L * s4;
    const LComplex g3 = 140.0L * s6;
    return {Complex(static_cast<double>(g2.real()), static_cast<double>(g2.imag())),
            Complex(static_cast<double>(g3.real()), static_cast<double>(g3.imag()))};
}

EmbeddingContext periods(const CurveModel &curve, int embedding)
{
    if (embedding < 0 || embedding > (curve.field.is_rational() ? 0 : 1)) {
        throw std::invalid_argument("periods: embedding index out of range");
    }
    EmbeddingContext ctx;
    ctx.index = embedding;
    ctx.w_real = embedding_root(curve.field, embedding);
    ctx.g2 = embed_real(curve.g2, embedding);
    ctx.g3 = embed_real(curve.g3, embedding);
    const LComplex g2(ctx.g2.real(), ctx.g2.imag());
    const LComplex g3(ctx.g3.real(), ctx.g3.imag());
    if (std::abs(g2 * g2 * g2 - 27.0L * g3 * g3) <= 1e-12L * std::max(std::abs(g2 * g2 * g2), 1.0L)) {
        throw std::domain_error("periods: the cubic has a repeated root at this embedding");
    }
    const auto e = depressed_cubic_roots(-g2 / 4.0L, -g3 / 4.0L);

    // Try every ordering and sign choice; keep the basis that reproduces g2, g3.
    static constexpr std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    long double best = std::numeric_limits<long double>::infinity();
    LComplex b1;
    LComplex b2;
    const long double size = std::abs(g2) + std::abs(g3);
    for (const auto &pm : perms) {
        const LComplex e1 = e[pm[0]];
        const LComplex e2 = e[pm[1]];
        const LComplex e3 = e[pm[2]];
        const LComplex s13 = std::sqrt(e1 - e3);
        for (int sb : {1, -1}) {
            for (int sc : {1, -1}) {
                const LComplex w1 = kPi / agm(s13, static_cast<long double>(sb) * std::sqrt(e1 - e2));
                LComplex w2 = LComplex(0, 1) * kPi / agm(s13, static_cast<long double>(sc) * std::sqrt(e2 - e3));
                LComplex tau = w2 / w1;
                if (!std::isfinite(tau.imag()) || std::abs(tau.imag()) < 1e-12L) {
                    continue;
                }
                if (tau.imag() < 0) {
                    w2 = -w2;
                }
                const auto [h2, h3] = invariants_l(w1, w2);
                const long double err = (std::abs(h2 - g2) + std::abs(h3 - g3)) / size;
                if (err < best) {
                    best = err;
                    b1 = w1;
                    b2 = w2;
                }
            }
        }
    }
    if (!(best < 1e-9L)) {
        throw std::domain_error("periods: no AGM basis reproduces the invariants");
    }
    // reduce tau = b2/b1 to the fundamental domain, carrying the basis along
    for (int it = 0; it < 1000; ++it) {
        LComplex tau = b2 / b1;
        const long double n = std::round(tau.real());
        if (n != 0) {
            b2 -= n * b1;
            tau = b2 / b1;
        }
        if (std::norm(tau) < 1.0L - 1e-15L) {
            const LComplex t = b1;
            b1 = b2;
            b2 = -t;
            continue;
        }
        break;
    }
    // on the unit arc tau and -conj(tau) are equivalent; keep Re(tau) >= 0
    if (const LComplex t = b2 / b1; std::abs(std::norm(t) - 1.0L) < 1e-12L && t.real() < -1e-15L) {
        const LComplex s = b1;
        b1 = b2;
        b2 = -s;
    }
    const LComplex tau = b2 / b1;
    ctx.omega1 = Complex(static_cast<double>(b1.real()), static_cast<double>(b1.imag()));
    ctx.omega2 = Complex(static_cast<double>(b2.real()), static_cast<double>(b2.imag()));
    ctx.tau = Complex(static_cast<double>(tau.real()), static_cast<double>(tau.imag()));
    return ctx;
}

Complex analytic_A(const EmbeddingContext &ctx)
{
    const Complex w1 = ctx.omega1;
    return std::numbers::pi * std::numbers::pi / (3.0 * w1 * w1) * e2star(ctx.tau);
}

Complex analytic_A(const CurveModel &curve, int embedding)
{
    return analytic_A(periods(curve, embedding));
}

std::optional<Rational> recognize_rational(double x, long bound, double tol)
{
    if (!std::isfinite(x)) {
        return std::nullopt;
    }
    // convergents h/k of the continued fraction of x
    long double r = x;
    long h0 = 1;
    long h1 = 0;
    long k0 = 0;
    long k1 = 1;
    for (int it = 0; it < 64; ++it) {
        const long double a = std::floor(r);
        if (std::abs(a) > static_cast<long double>(bound) * 4 + 4) {
            break;
        }
        const long ai = static_cast<long>(a);
        const long h = ai * h0 + h1;
        const long k = ai * k0 + k1;
        if (k > bound || std::labs(h) > bound) {
            break;
        }
        if (std::abs(static_cast<long double>(x) - static_cast<long double>(h) / k) <= tol) {
            Rational q(h, k);
            q.canonicalize();
            return q;
        }
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        const long double frac = r - a;
        if (frac == 0) {
            break;
        }
        r = 1 / frac;
    }
    return std::nullopt;
}

std::optional<QuadRat> recognize_quad(double v0, double v1, QuadField field, long bound)
{
    constexpr double tol = 1e-8;
    if (field.is_rational()) {
        const auto a = recognize_rational(v0, bound, tol);
        if (!a) {
            return std::nullopt;
        }
        return QuadRat(*a);
    }
    const double w0 = embedding_root(field, 0);
    const double w1 = embedding_root(field, 1);
    const double b = (v0 - v1) / (w0 - w1);
    const double a = v0 - b * w0;
    const auto ra = recognize_rational(a, bound, tol);
    const auto rb = recognize_rational(b, bound, tol);
    if (!ra || !rb) {
        return std::nullopt;
    }
    const QuadRat x(*ra, *rb, field);
    if (std::abs(embed_real(x, 0) - v0) > tol || std::abs(embed_real(x, 1) - v1) > tol) {
        return std::nullopt;
    }
    return x;
}

} // namespace cmzeta
