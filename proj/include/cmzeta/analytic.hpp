#pragma once

// Complex-analytic side: periods by the arithmetic-geometric mean, the
// q-series P = 1 - 24 sum sigma_1(n) q^n, E2*(tau) = P - 3/(pi Im tau), the
// value A = pi^2/(3 omega_1^2) E2*(omega_2/omega_1) and its recognition
// as an element of the coefficient field.  Double precision throughout.

#include <complex>
#include <optional>

#include "cmzeta/exactnum.hpp"
#include "cmzeta/weierstrass.hpp"

namespace cmzeta {

using Complex = std::complex<double>;

/// The two real roots of x^2 - s x - t, ascending; index = embedding.
double embedding_root(QuadField field, int embedding);
/// Image of x under the embedding.
double embed_real(const QuadRat &x, int embedding);

struct EmbeddingContext {
    int index = 0;
    double w_real = 0;
    Complex g2;
    Complex g3;
    Complex omega1;
    Complex omega2;
    Complex tau; // omega2/omega1, reduced to the fundamental domain
};

/// Lattice basis of y^2 = 4x^3 - g2 x - g3 at the embedding, with
/// Im(omega2/omega1) > 0 and tau in the standard fundamental domain.
/// Throws std::domain_error for a degenerate cubic.
EmbeddingContext periods(const CurveModel &curve, int embedding);

/// Number of q-series terms so that |q|^n < 1e-17.
int qseries_terms(Complex tau);

Complex ramanujan_p(Complex tau, int terms = 0);
Complex e2star(Complex tau, int terms = 0);
Complex eisenstein_e4(Complex tau, int terms = 0);
Complex eisenstein_e6(Complex tau, int terms = 0);
Complex j_from_tau(Complex tau);

/// g2, g3 of the lattice omega1 Z + omega2 Z from the q-series.
std::pair<Complex, Complex> invariants_from_periods(Complex omega1, Complex omega2);

/// g2 = 60 sum' m^-4, g3 = 140 sum' m^-6 over |a|, |b| <= bound.
std::pair<Complex, Complex> lattice_sums(Complex omega1, Complex omega2, int bound);

/// pi^2/(3 omega1^2) E2*(tau).
Complex analytic_A(const EmbeddingContext &ctx);
Complex analytic_A(const CurveModel &curve, int embedding);

/// Continued-fraction approximation n/d with |n|, d <= bound and
/// |x - n/d| <= tol, or nullopt.
std::optional<Rational> recognize_rational(double x, long bound, double tol);

/// a + b w from its two real embeddings; heights <= bound and
/// back-substitution within 1e-8.
std::optional<QuadRat> recognize_quad(double v0, double v1, QuadField field, long bound);

} // namespace cmzeta
