#include <doctest.h>

#include "cmzeta/series.hpp"
#include "oracles.hpp"

using namespace cmzeta;
using S = TruncatedSeries<QuadRat>;

namespace {

const QuadField Q5 = QuadField::make(1, 1);

S random_series(std::mt19937_64 &rng, long lo, long prec, long height, bool odd = false)
{
    std::vector<QuadRat> c;
    for (long e = lo; e < prec; ++e) {
        c.push_back(odd && e % 2 == 0 ? QuadRat(0) : oracle::random_quad(rng, Q5, height));
    }
    return S(lo, prec, c);
}

oracle::Poly dense(const S &f, long n)
{
    oracle::Poly out(static_cast<std::size_t>(n), QuadRat(0));
    for (long e = std::max(0L, f.valuation()); e < std::min(n, f.precision()); ++e) {
        out[static_cast<std::size_t>(e)] = f[e];
    }
    return out;
}

} // namespace

TEST_CASE("construction, indexing and precision")
{
    const S f(1, 5, {QuadRat(0), QuadRat(2), QuadRat(3)});
    CHECK(f.valuation() == 2);
    CHECK(f[4] == QuadRat(0));
    CHECK(f[0] == QuadRat(0));
    CHECK_THROWS_AS(f[5], std::out_of_range);
    CHECK(S::zero(7).is_zero_series());
    CHECK(S::zero(7).precision() == 7);
    CHECK_THROWS(S::zero(3).leading());
    const S u = S::variable(6);
    CHECK((u * u)[2] == QuadRat(1));
    CHECK((u * u).precision() == 7); // u^2 + O(u^7): precision min(6+1, 6+1)
}

TEST_CASE("product precision follows min(pf + vg, pg + vf)")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        const long vf = static_cast<long>(rng() % 4) - 1;
        const long vg = static_cast<long>(rng() % 4);
        const long pf = vf + 2 + static_cast<long>(rng() % 8);
        const long pg = vg + 2 + static_cast<long>(rng() % 8);
        S f = random_series(rng, vf, pf, 20);
        S g = random_series(rng, vg, pg, 20);
        if (f.is_zero_series() || g.is_zero_series() || f.valuation() != vf || g.valuation() != vg) {
            continue;
        }
        const S h = f * g;
        CHECK(h.precision() == std::min(pf + vg, pg + vf));
        for (long n = h.valuation(); n < h.precision(); ++n) {
            QuadRat acc(0);
            for (long a = vf; a < pf; ++a) {
                const long b = n - a;
                if (b >= vg && b < pg) {
                    acc += f[a] * g[b];
                }
            }
            CHECK(h[n] == acc);
        }
    }
}

TEST_CASE("reciprocal and quotient")
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i) {
        S f = random_series(rng, 0, 15, 30);
        if (f[0].is_zero()) {
            continue;
        }
        const S g = inverse(f);
        const S one = f * g;
        CHECK(one[0] == QuadRat(1));
        for (long n = 1; n < one.precision(); ++n) {
            CHECK(one[n].is_zero());
        }
    }
    // Laurent: 1/(u^2 + u^3) = u^-2 - u^-1 + 1 - ...
    const S f(2, 10, {QuadRat(1), QuadRat(1)});
    const S g = inverse(f);
    CHECK(g.valuation() == -2);
    CHECK(g.precision() == 6);
    CHECK(g[-1] == QuadRat(-1));
    CHECK_THROWS(inverse(S::zero(5)));
}

TEST_CASE("derivative and antiderivative")
{
    std::mt19937_64 rng(13);
    const S f = random_series(rng, 0, 12, 40);
    const S F = integrate(f);
    CHECK(F[0].is_zero());
    const S back = derive(F);
    for (long n = 0; n < 12; ++n) {
        CHECK(back[n] == f[n]);
    }
    CHECK_THROWS(integrate(S(-1, 4, {QuadRat(1)})));
    const S laurent(-3, 4, {QuadRat(2)});
    CHECK(integrate(laurent)[-2] == QuadRat(-1));
}

TEST_CASE("composition agrees with term-by-term substitution")
{
    std::mt19937_64 rng(14);
    for (long n = 12; n <= 40; n += 7) {
        for (int i = 0; i < 3; ++i) {
            const S f = random_series(rng, 0, n, 9);
            const S g = random_series(rng, 1, n, 9, i == 1);
            const S h = compose(f, g);
            const auto want = oracle::naive_compose(dense(f, n), dense(g, n), static_cast<std::size_t>(n));
            REQUIRE(h.precision() >= n);
            for (long k = 0; k < n; ++k) {
                CHECK(h[k] == want[static_cast<std::size_t>(k)]);
            }
        }
    }
    // odd g takes the even-power Horner path
    const S g = random_series(rng, 1, 20, 9, true);
    CHECK(g.has_parity(1));
    const S f = random_series(rng, 0, 20, 9);
    const auto want = oracle::naive_compose(dense(f, 20), dense(g, 20), 20);
    const S h = compose(f, g);
    for (long k = 0; k < 20; ++k) {
        CHECK(h[k] == want[static_cast<std::size_t>(k)]);
    }
    CHECK_THROWS_AS(compose(f, f), std::invalid_argument);
}

TEST_CASE("composition precision and principal parts")
{
    // f known mod u^6, g = u + O(u^10): f(g) known mod u^6
    const S f(0, 6, {QuadRat(1), QuadRat(2)});
    const S g(1, 10, {QuadRat(1)});
    CHECK(compose(f, g).precision() == 6);
    // 1/u composed with u + u^2 is 1/u - 1 + u - ...
    const S inv_u(-1, 8, {QuadRat(1)});
    const S h = compose(inv_u, S(1, 9, {QuadRat(1), QuadRat(1)}));
    CHECK(h[-1] == QuadRat(1));
    CHECK(h[0] == QuadRat(-1));
    CHECK(h[1] == QuadRat(1));
}

TEST_CASE("reversion agrees with Lagrange inversion")
{
    std::mt19937_64 rng(15);
    for (long n = 12; n <= 40; n += 4) {
        std::vector<QuadRat> c{oracle::random_quad(rng, Q5, 5)};
        while (c[0].is_zero()) {
            c[0] = oracle::random_quad(rng, Q5, 5);
        }
        for (long e = 2; e < n; ++e) {
            c.push_back(oracle::random_quad(rng, Q5, 5));
        }
        const S f(1, n, c);
        const S g = revert(f);
        const auto want = oracle::lagrange_inverse(dense(f, n), static_cast<std::size_t>(n));
        REQUIRE(g.precision() >= n);
        for (long k = 1; k < n; ++k) {
            CHECK(g[k] == want[static_cast<std::size_t>(k)]);
        }
        const S id = compose(f, g);
        CHECK(id[1] == QuadRat(1));
        for (long k = 2; k < n; ++k) {
            CHECK(id[k].is_zero());
        }
    }
    CHECK_THROWS(revert(S(2, 8, {QuadRat(1)})));
}

TEST_CASE("substitution of u^p")
{
    const S f(1, 5, {QuadRat(1), QuadRat(2), QuadRat(3), QuadRat(4)});
    const S g = substitute_power(f, 3);
    CHECK(g.precision() == 15);
    CHECK(g[3] == QuadRat(1));
    CHECK(g[6] == QuadRat(2));
    CHECK(g[12] == QuadRat(4));
    CHECK(g[4].is_zero());
}

TEST_CASE("Frobenius on series")
{
    const PlaceContext inert = PlaceContext::make(Q5, -15, 1, 7, 1);
    const PlaceContext split = PlaceContext::make(Q5, -15, 1, 11, 1);
    const QuadRat w = QuadRat::gen(Q5);
    const S f(1, 4, {w, QuadRat(1) + w, QuadRat(3)});
    CHECK(frobenius_series(f, inert)[1] == QuadRat(1) - w);
    CHECK(frobenius_series(f, split)[1] == w);
    CHECK(frobenius_series(frobenius_series(f, inert), inert) == f);
}

TEST_CASE("Honda quotients on randomized triples")
{
    std::mt19937_64 rng(16);
    const std::vector<unsigned long> primes{7, 11, 13, 17, 19, 23};
    int checked = 0;
    while (checked < 50) {
        const unsigned long p = primes[rng() % primes.size()];
        const long prec = 6;
        const long nmax = 8;
        std::vector<QuadRat> a;
        std::vector<QuadRat> d;
        for (long e = 0; e < prec; ++e) {
            a.push_back(oracle::random_integral(rng, Q5, static_cast<long>(p), 30));
            d.push_back(oracle::random_integral(rng, Q5, static_cast<long>(p), 30) * QuadRat(static_cast<long>(p)));
        }
        const S A(0, prec, a);
        std::vector<QuadRat> b(a);
        for (long e = 0; e < prec; ++e) {
            b[static_cast<std::size_t>(e)] += d[static_cast<std::size_t>(e)];
        }
        const S B(0, prec, b);

        // oracle: expand the powers directly and test every coefficient
        bool want = true;
        oracle::Poly pa{QuadRat(1)};
        oracle::Poly pb{QuadRat(1)};
        for (long n = 1; n <= nmax; ++n) {
            pa = oracle::mul(pa, dense(A, prec), prec);
            pb = oracle::mul(pb, dense(B, prec), prec);
            for (long e = 0; e < prec; ++e) {
                const QuadRat q = (pa[e] - pb[e]) / QuadRat(n);
                want = want && (q.is_zero() || vp_coordinates(q, p) >= 1);
            }
        }
        CHECK(want);
        CHECK(honda_quotient_check(A, B, p, nmax) == want);
        ++checked;
    }
    // precondition: A == B mod p
    const S A(0, 3, {QuadRat(1), QuadRat(2)});
    const S B(0, 3, {QuadRat(1), QuadRat(3)});
    CHECK_THROWS_AS(honda_quotient_check(A, B, 7, 4), std::invalid_argument);
    const S C(0, 3, {QuadRat(Rational(1, 7))});
    CHECK_THROWS_AS(honda_quotient_check(C, C, 7, 4), std::invalid_argument);
}

TEST_CASE("text round trip")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        const S f = random_series(rng, -2, 15, 1000);
        const std::string text = series_to_text(f, "f");
        const S g = series_from_text(text, Q5);
        CHECK(g == f);
        CHECK(series_to_text(g, "f") == text);
    }
}
