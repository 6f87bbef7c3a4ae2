#pragma once

// Exact arithmetic: rationals, elements of a real quadratic field Q(w),
// residue rings (Z/m)[w], Kronecker symbols, p-adic valuations, Hensel
// lifting, CRT and rational reconstruction.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace cmzeta {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

/// Coefficient field Q(w) with w^2 = s*w + t.  s = t = 0 stands for Q itself.
struct QuadField {
    long s = 0;
    long t = 0;

    long disc() const { return s * s + 4 * t; }
    bool is_rational() const { return s == 0 && t == 0; }

    /// Validates that the field is genuinely real quadratic (or Q).
    static QuadField make(long s, long t);
    static QuadField rationals() { return {}; }

    friend bool operator==(const QuadField &, const QuadField &) = default;
};

/// a + b*w with a, b rational, kept in lowest terms.
class QuadRat {
public:
    QuadRat() = default;
    QuadRat(long n) : a_(n) {} // NOLINT(google-explicit-constructor)
    QuadRat(Rational a) : a_(std::move(a)) { a_.canonicalize(); } // NOLINT
    QuadRat(Rational a, Rational b, QuadField field);

    /// The generator w of the given field.
    static QuadRat gen(QuadField field) { return QuadRat(0, 1, field); }

    const Rational &a() const { return a_; }
    const Rational &b() const { return b_; }
    const QuadField &field() const { return field_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }

    /// Galois conjugate w -> s - w.
    QuadRat conj() const;
    Rational norm() const;
    Rational trace() const;
    QuadRat inverse() const;

    QuadRat operator-() const;
    QuadRat &operator+=(const QuadRat &o);
    QuadRat &operator-=(const QuadRat &o);
    QuadRat &operator*=(const QuadRat &o);
    QuadRat &operator/=(const QuadRat &o);

    friend QuadRat operator+(QuadRat x, const QuadRat &y) { return x += y; }
    friend QuadRat operator-(QuadRat x, const QuadRat &y) { return x -= y; }
    friend QuadRat operator*(QuadRat x, const QuadRat &y) { return x *= y; }
    friend QuadRat operator/(QuadRat x, const QuadRat &y) { return x /= y; }
    friend bool operator==(const QuadRat &x, const QuadRat &y);

    /// Wire syntax "a/b + c/d*w"; zero parts are omitted.
    std::string to_string() const;
    /// Parses the wire syntax.  Terms may appear in any order; "w" alone,
    /// "-w", "3*w", "w*3/2" and "(3/2)*w" are accepted.
    static QuadRat parse(std::string_view text, QuadField field);

    /// Least common denominator of both coordinates.
    Integer denominator() const;

private:
    static QuadField merge(const QuadField &f, const QuadField &g);

    Rational a_;
    Rational b_;
    QuadField field_;
};

std::ostream &operator<<(std::ostream &os, const QuadRat &x);

// Concept hooks used by the series engine.
inline bool is_zero(const QuadRat &x) { return x.is_zero(); }
inline bool is_invertible(const QuadRat &x) { return !x.is_zero(); }
inline QuadRat inverse(const QuadRat &x) { return x.inverse(); }
inline QuadRat from_integer(const QuadRat &, long n) { return QuadRat(n); }
QuadRat divide_by_integer(const QuadRat &x, long n);
QuadRat multiply_by_integer(const QuadRat &x, long n);

// ---------------------------------------------------------------------------
// Integer helpers

/// p-adic valuation of an integer; kInfiniteValuation for zero.
long vp_integer(const Integer &n, unsigned long p);
/// p-adic valuation of a rational; kInfiniteValuation for zero.
long vp_rational(const Rational &x, unsigned long p);
/// Reduces a p-integral rational modulo m (gcd(den, m) must be 1).
Integer reduce_rational(const Rational &x, const Integer &m);
Integer mod_inverse(const Integer &x, const Integer &m);
Integer ipow(const Integer &base, unsigned long e);
bool is_probable_prime(const Integer &n);

/// Full Kronecker symbol (a/n) for n >= 0.
int kronecker(const Integer &a, const Integer &n);
inline int kronecker(long a, long n) { return kronecker(Integer(a), Integer(n)); }

/// Both roots of x^2 - s*x - t modulo p^k, lifted from the two simple roots
/// mod p.  Index 0 is the root with the smaller least residue mod p.
std::array<Integer, 2> hensel_lift_root(long s, long t, unsigned long p, unsigned k);

/// n/d with |n| <= bound, 0 < d <= bound, n = d*residue mod m, or nullopt.
/// Requires m > 2*bound^2 (throws std::invalid_argument otherwise).
std::optional<Rational> rational_reconstruction(const Integer &residue, const Integer &m,
                                                const Integer &bound);

struct Congruence {
    Integer value;
    Integer modulus;
};

/// Chinese remaindering over pairwise coprime moduli.
Congruence crt_combine(const std::vector<Congruence> &residues);

// ---------------------------------------------------------------------------
// Residue ring (Z/m)[w], w^2 = s*w + t.  With s = t = 0 this is Z/m.

class ModQuad {
public:
    ModQuad() = default;
    ModQuad(Integer a, Integer b, Integer modulus, QuadField field);

    const Integer &a() const { return a_; }
    const Integer &b() const { return b_; }
    const Integer &modulus() const { return m_; }
    const QuadField &field() const { return field_; }

    bool is_unit() const;
    ModQuad conj() const;
    Integer norm() const;
    ModQuad reduce(const Integer &smaller_modulus) const;

    ModQuad operator-() const;
    friend ModQuad operator+(const ModQuad &x, const ModQuad &y);
    friend ModQuad operator-(const ModQuad &x, const ModQuad &y);
    friend ModQuad operator*(const ModQuad &x, const ModQuad &y);
    friend bool operator==(const ModQuad &x, const ModQuad &y);

    /// Least nonnegative coordinates as a field element.
    QuadRat lift() const;
    std::string to_string() const;

private:
    void check_compatible(const ModQuad &o) const;

    Integer a_;
    Integer b_;
    Integer m_ = 1;
    QuadField field_;
};

/// Inverse of a unit of (Z/m)[w] as conj(x)/norm(x).  Throws on non-units.
ModQuad modring_inv(const ModQuad &x);

/// Reduces a p-integral field element coordinate-wise into (Z/m)[w].
ModQuad reduce_coordinates(const QuadRat &x, const Integer &m);

// ---------------------------------------------------------------------------
// Place data at a rational prime p

struct PlaceContext {
    unsigned long p = 0;
    unsigned k = 1;
    int chi_K = 0;     // Kronecker(dK*f^2, p)
    int chi_coeff = 0; // Kronecker(disc(field), p); +1 for Q
    QuadField field;
    int place = 0;
    std::array<Integer, 2> roots; // mod p^k, only meaningful when split

    bool split() const { return chi_coeff == 1; }
    bool inert() const { return chi_coeff == -1; }
    bool frobenius_nontrivial() const { return chi_coeff == -1; }
    int place_count() const { return (split() && !field.is_rational()) ? 2 : 1; }
    Integer modulus() const { return ipow(Integer(p), k); }
    /// The chosen root lifted to precision `prec` (any precision).
    Integer root(unsigned prec) const;

    static PlaceContext make(QuadField field, long dK, long conductor, unsigned long p,
                             unsigned k, int place = 0);
};

QuadRat frobenius(const QuadRat &x, const PlaceContext &ctx);

/// Valuation at the chosen place above p (inert: min coordinate valuation).
long vp(const QuadRat &x, const PlaceContext &ctx);
/// Valuation at the chosen place via the embedding a + b*r.
long vp_at_place(const QuadRat &x, const PlaceContext &ctx, int place);
/// min(v_p(a), v_p(b)): integrality at every place above p.
long vp_coordinates(const QuadRat &x, unsigned long p);

/// Value of a p-integral x at the chosen place, modulo p^prec.  For inert
/// primes this is the coordinate reduction; for split primes it is a + b*r in
/// Z/p^prec (returned with b = 0 over Q).
ModQuad reduce_at_place(const QuadRat &x, const PlaceContext &ctx, unsigned prec);

/// Recovers coordinates (a, b) mod p^prec from the values at both split places.
ModQuad combine_split_places(const Integer &at_place0, const Integer &at_place1,
                             const PlaceContext &ctx, unsigned prec);

} // namespace cmzeta
