#include <doctest.h>

#include <cmath>

#include "cmzeta/analytic.hpp"

using namespace cmzeta;

namespace {

const CurveModel &cm15()
{
    static const CurveModel c = builtin_curve("cm15");
    return c;
}

const QuadRat &A()
{
    static const QuadRat a = QuadRat::parse("13/2 + 21/2*w", cm15().field);
    return a;
}

const double pi = std::acos(-1.0);

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace

TEST_CASE("embeddings of Q(sqrt 5)")
{
    CHECK(embedding_root(cm15().field, 0) == doctest::Approx((1 - std::sqrt(5.0)) / 2).epsilon(1e-15));
    CHECK(embedding_root(cm15().field, 1) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
    // g2 nearly cancels at the first embedding; the value must keep its digits
    const double g2_0 = embed_real(cm15().g2, 0);
    const double g2_1 = embed_real(cm15().g2, 1);
    CHECK(g2_0 * g2_1 == doctest::Approx(cm15().g2.norm().get_d()).epsilon(1e-14));
}

TEST_CASE("periods and tau at both embeddings")
{
    const EmbeddingContext e0 = periods(cm15(), 0);
    const EmbeddingContext e1 = periods(cm15(), 1);
    // printed imaginary parts
    CHECK(std::abs(e0.tau.imag() - 0.96824583655185422) < 1e-10);
    CHECK(std::abs(e1.tau.imag() - 1.9364916731037084) < 1e-10);
    // exact values (1 + sqrt(-15))/4 and (-1 + sqrt(-15))/2
    CHECK(std::abs(e0.tau - Complex(0.25, std::sqrt(15.0) / 4)) < 1e-12);
    CHECK(std::abs(e1.tau - Complex(-0.5, std::sqrt(15.0) / 2)) < 1e-12);
    for (const auto &e : {e0, e1}) {
        CHECK(std::abs(e.tau.real()) <= 0.5 + 1e-12);
        CHECK(std::abs(e.tau) >= 1 - 1e-12);
        CHECK(e.tau.imag() > 0);
        const auto [g2, g3] = invariants_from_periods(e.omega1, e.omega2);
        CHECK(rel(g2, e.g2) < 1e-10);
        CHECK(rel(g3, e.g3) < 1e-10);
    }
}

TEST_CASE("lattice sums reproduce g2 and g3")
{
    const EmbeddingContext e = periods(cm15(), 1);
    const auto [g2, g3] = lattice_sums(e.omega1, e.omega2, 1000);
    CHECK(rel(g2, e.g2) < 1e-6);
    CHECK(rel(g3, e.g3) < 1e-6);
}

TEST_CASE("j from tau")
{
    for (int k = 0; k < 2; ++k) {
        const EmbeddingContext e = periods(cm15(), k);
        const double j = embed_real(cm15().j_invariant(), k);
        CHECK(rel(j_from_tau(e.tau), Complex(j, 0)) < 1e-9);
    }
    CHECK(std::abs(j_from_tau(Complex(0, 1)) - 1728.0) < 1e-8);
}

TEST_CASE("E2* special values and modular covariance")
{
    const Complex i(0, 1);
    CHECK(std::abs(ramanujan_p(i) - 3 / pi) < 1e-14);
    CHECK(std::abs(e2star(i)) < 1e-14);
    const Complex rho(-0.5, std::sqrt(3.0) / 2);
    CHECK(std::abs(e2star(rho)) < 1e-13);
    CHECK(std::abs(eisenstein_e4(rho)) < 1e-13);
    CHECK(std::abs(eisenstein_e6(i)) < 1e-13);
    for (const Complex tau : {Complex(0.1, 1.3), Complex(-0.3, 0.95), Complex(0.45, 2.2)}) {
        const Complex s = -1.0 / tau;
        CHECK(rel(e2star(s), tau * tau * e2star(tau)) < 1e-12);
        CHECK(rel(e2star(tau + 1.0), e2star(tau)) < 1e-12);
        CHECK(rel(eisenstein_e4(s), std::pow(tau, 4) * eisenstein_e4(tau)) < 1e-12);
    }
    CHECK(qseries_terms(i) > 5);
}

TEST_CASE("analytic A matches the algebraic value")
{
    std::array<double, 2> v{};
    for (int k = 0; k < 2; ++k) {
        const Complex a = analytic_A(cm15(), k);
        v[k] = a.real();
        CHECK(std::abs(a.imag()) < 1e-10);
        CHECK(std::abs(a.real() - embed_real(A(), k)) < 1e-8);
    }
    const auto rec = recognize_quad(v[0], v[1], cm15().field, 1000);
    REQUIRE(rec);
    CHECK(*rec == A());
    CHECK(rec->to_string() == "13/2 + 21/2*w");
}

TEST_CASE("curves with CM by i and by a cube root of unity have A = 0")
{
    const CurveModel gauss = CurveModel::make("y2=4x3-4x", QuadField::rationals(), QuadRat(4), QuadRat(0), -4, 1);
    CHECK(std::abs(analytic_A(gauss, 0)) < 1e-12);
    CHECK(std::abs(periods(gauss, 0).tau - Complex(0, 1)) < 1e-12);
    const CurveModel eis = CurveModel::make("y2=4x3-4", QuadField::rationals(), QuadRat(0), QuadRat(4), -3, 1);
    CHECK(std::abs(analytic_A(eis, 0)) < 1e-12);
}

TEST_CASE("degenerate cubic is rejected")
{
    CurveModel c;
    c.field = QuadField::rationals();
    c.g2 = QuadRat(3);
    c.g3 = QuadRat(1);
    c.dK = -3;
    CHECK_THROWS_AS(periods(c, 0), std::domain_error);
}

TEST_CASE("rational recognition")
{
    const auto r = recognize_rational(355.0 / 113.0, 1000, 1e-12);
    REQUIRE(r);
    CHECK(*r == Rational(355, 113));
    const auto half = recognize_rational(-6.5, 13, 1e-12);
    REQUIRE(half);
    CHECK(*half == Rational(-13, 2));
    CHECK_FALSE(recognize_rational(-6.5, 12, 1e-12)); // height 13 exceeds the bound
    CHECK_FALSE(recognize_rational(pi, 100, 1e-10));
    CHECK_FALSE(recognize_quad(pi, std::exp(1.0), cm15().field, 100));
}
