#include <doctest.h>

#include "cmzeta/weierstrass.hpp"
#include "oracles.hpp"

using namespace cmzeta;
using S = TruncatedSeries<QuadRat>;

namespace {

const CurveModel &cm15()
{
    static const CurveModel c = builtin_curve("cm15");
    return c;
}

QuadRat q(const char *text) { return QuadRat::parse(text, cm15().field); }

const WeierstrassExpansion &expansion20()
{
    static const WeierstrassExpansion ex = expand(cm15(), 20);
    return ex;
}

// F(g(X), h(X)) as a univariate series, g and h without constant term.
S evaluate(const Bivariate &F, const S &g, const S &h, long n)
{
    std::vector<S> gp{S::monomial(QuadRat(1), 0, n)};
    std::vector<S> hp{S::monomial(QuadRat(1), 0, n)};
    for (long i = 1; i < F.N; ++i) {
        gp.push_back((gp.back() * g).truncated(n));
        hp.push_back((hp.back() * h).truncated(n));
    }
    S out = S::zero(n);
    for (long i = 0; i < F.N; ++i) {
        for (long j = 0; i + j < F.N; ++j) {
            if (!F.at(i, j).is_zero()) {
                out = out + (gp[i] * hp[j]).scaled(F.at(i, j)).truncated(n);
            }
        }
    }
    return out;
}

bool power_of_two(const Integer &d)
{
    Integer x = d;
    while (x % 2 == 0) {
        x /= 2;
    }
    return x == 1;
}

} // namespace

TEST_CASE("fixture invariants")
{
    const CurveModel &c = cm15();
    CHECK(c.g2 == q("7110 + 11505*w"));
    CHECK(c.g3 == q("220465 + 356720*w"));
    CHECK(c.discriminant() == q("-42426288000 - 68647176000*w"));
    CHECK(c.j_invariant() == q("-52515 - 85995*w"));
    CHECK(c.norm_discriminant() == Rational(Integer(4096) * 729 * 15625));
    CHECK(c.dK == -15);
    CHECK(c.conductor == 1);
    CHECK_THROWS(builtin_curve("no-such-curve"));
}

TEST_CASE("curve validation")
{
    const QuadField Q = QuadField::rationals();
    CHECK_THROWS(CurveModel::make("degenerate", Q, QuadRat(3), QuadRat(1), -3, 1)); // g2^3 = 27 g3^2
    CHECK_THROWS(CurveModel::make("bad dK", Q, QuadRat(1), QuadRat(1), -12, 1));
    CHECK_THROWS(CurveModel::make("positive dK", Q, QuadRat(1), QuadRat(1), 5, 1));
    CHECK_THROWS(CurveModel::make("conductor", Q, QuadRat(1), QuadRat(1), -3, 0));
    CHECK(is_fundamental_discriminant(-15));
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(-8));
    CHECK_FALSE(is_fundamental_discriminant(-12));
    CHECK_FALSE(is_fundamental_discriminant(-16));
}

TEST_CASE("printed expansions of the fixture")
{
    const WeierstrassExpansion &ex = expansion20();
    CHECK(ex.cs[2] == cm15().g2 / QuadRat(20));
    CHECK(ex.cs[3] == cm15().g3 / QuadRat(28));

    CHECK(ex.log[1] == QuadRat(1));
    CHECK(ex.log[2].is_zero());
    CHECK(ex.log[3].is_zero());
    CHECK(ex.log[5] == q("-711 - 2301/2*w"));
    CHECK(ex.log[7] == q("-94485/4 - 38220*w"));
    CHECK(ex.log[9] == q("60972375/8 + 98655375/8*w"));
    CHECK(ex.log[11] == q("1288993125/2 + 4171269375/4*w"));
    CHECK(ex.log[13] == q("-200868706875/2 - 162506197500*w"));

    CHECK(ex.zeta[-1] == QuadRat(1));
    CHECK(ex.zeta[1].is_zero());
    CHECK(ex.zeta[3] == q("-237/2 - 767/4*w"));
    CHECK(ex.zeta[5] == q("-6299/4 - 2548*w"));
    CHECK(ex.zeta[7] == q("-2438895/112 - 563745/16*w"));
    CHECK(ex.zeta[9] == q("-2455225/8 - 7945275/16*w"));
    CHECK(ex.zeta[11] == q("-1517389435/352 - 6974965*w"));
    CHECK(ex.zeta[13] == q("-25264737675/416 - 3144554175/32*w"));
}

TEST_CASE("p satisfies its differential equation")
{
    // (p')^2 = 4 p^3 - g2 p - g3, checked with plain series arithmetic
    const WeierstrassExpansion &ex = expansion20();
    const S &p = ex.wp;
    const S lhs = ex.wp_prime * ex.wp_prime;
    const S rhs = (p * p * p).scaled(QuadRat(4)) - p.scaled(cm15().g2) - S::monomial(cm15().g3, 0, p.precision());
    const long top = std::min(lhs.precision(), rhs.precision());
    CHECK(top > 8);
    for (long n = -6; n < top; ++n) {
        CHECK(lhs[n] == rhs[n]);
    }
    // zeta' = -p and p' is the derivative of p
    const S dz = derive(ex.zeta);
    for (long n = -2; n < dz.precision() && n < p.precision(); ++n) {
        CHECK(dz[n] == -p[n]);
    }
    const S dp = derive(p);
    for (long n = -3; n < dp.precision() && n < ex.wp_prime.precision(); ++n) {
        CHECK(dp[n] == ex.wp_prime[n]);
    }
}

TEST_CASE("parameter and logarithm are mutually inverse")
{
    const WeierstrassExpansion &ex = expansion20();
    const S id = compose(ex.u_of_l, ex.log);
    CHECK(id[1] == QuadRat(1));
    for (long n = 2; n < 20; ++n) {
        CHECK(id[n].is_zero());
    }
    // u = -2x/y along z
    const S u = (ex.wp * inverse(ex.wp_prime)).scaled(QuadRat(-2));
    for (long n = 1; n < 18; ++n) {
        CHECK(u[n] == ex.u_of_l[n]);
    }
}

TEST_CASE("both routes give the same expansion")
{
    for (long N : {2L, 15L, 60L, 120L}) {
        const WeierstrassExpansion a = expand(cm15(), N, ZetaRoute::compose);
        const WeierstrassExpansion b = expand(cm15(), N, ZetaRoute::formal_group);
        CHECK(a.d0 == b.d0);
        CHECK(a.d0.is_zero());
        for (long n = -1; n < N; ++n) {
            CHECK(a.zeta_of_log[n] == b.zeta_of_log[n]);
        }
        for (long n = 1; n < N; ++n) {
            CHECK(a.log[n] == b.log[n]);
        }
    }
    const WeierstrassExpansion tiny = expand(cm15(), 2);
    CHECK(tiny.log[1] == QuadRat(1));
    CHECK(tiny.log.truncated(2).precision() == 2);
}

TEST_CASE("x and y in the parameter are integral at good primes")
{
    const WeierstrassExpansion ex = expand(cm15(), 80, ZetaRoute::formal_group);
    for (unsigned long p : {7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL}) {
        CHECK(xy_integrality_check(cm15(), ex, p));
    }
}

TEST_CASE("formal group law axioms at degree 10")
{
    const long N = 10;
    const Bivariate F = formal_group_law(expansion20(), N);
    // identity and symmetry
    CHECK(F.at(1, 0) == QuadRat(1));
    CHECK(F.at(0, 1) == QuadRat(1));
    for (long i = 0; i < N; ++i) {
        for (long j = 0; i + j < N; ++j) {
            CHECK(F.at(i, j) == F.at(j, i));
            if ((i == 0 || j == 0) && i + j != 1) {
                CHECK(F.at(i, j).is_zero());
            }
            // denominators are powers of 2
            CHECK(power_of_two(F.at(i, j).denominator()));
        }
    }
    // the logarithm turns F into addition: l(F(X, Y)) = l(X) + l(Y)
    Bivariate sum = Bivariate::zero(N);
    for (long n = 1; n < N; ++n) {
        sum.at(n, 0) = expansion20().log[n];
        sum.at(0, n) = expansion20().log[n];
    }
    const Bivariate lF = substitute(expansion20().log.truncated(N), F);
    for (long i = 0; i < N; ++i) {
        for (long j = 0; i + j < N; ++j) {
            CHECK(lF.at(i, j) == sum.at(i, j));
        }
    }
    // associativity along Y = aX, Z = bX, and the inverse [-1](X) = -X
    const S X = S::variable(N);
    for (long a : {2L, -3L}) {
        for (long b : {5L, 7L}) {
            const S Y = X.scaled(QuadRat(a));
            const S Z = X.scaled(QuadRat(b));
            const S left = evaluate(F, evaluate(F, X, Y, N), Z, N);
            const S right = evaluate(F, X, evaluate(F, Y, Z, N), N);
            for (long n = 0; n < N; ++n) {
                CHECK(left[n] == right[n]);
            }
        }
    }
    const S zero = evaluate(F, X, -X, N);
    for (long n = 0; n < N; ++n) {
        CHECK(zero[n].is_zero());
    }
}

TEST_CASE("weight-2 scaling with omega = 2")
{
    const long N = 50;
    const Rational omega(2);
    const WeierstrassExpansion a = expand(cm15(), N, ZetaRoute::formal_group);
    const WeierstrassExpansion b = expand(cm15().rescaled(omega), N, ZetaRoute::formal_group);
    CHECK(cm15().rescaled(omega).j_invariant() == cm15().j_invariant());
    for (long n = 2; n < static_cast<long>(std::min(a.cs.size(), b.cs.size())); ++n) {
        // c_n has weight 2n
        CHECK(b.cs[n] == a.cs[n] * QuadRat(Rational(1, 1) / ipow(Integer(2), 2 * n)));
    }
    for (long n = 1; n < N; ++n) {
        // b(n) has weight 1 - n
        Rational s = n >= 1 ? Rational(1) / Rational(ipow(Integer(2), n - 1)) : Rational(1);
        CHECK(b.b(n) == a.b(n) * QuadRat(s));
    }
}
