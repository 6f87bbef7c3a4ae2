#pragma once

// Fixed-modulus p-adic coefficient domain.  An element is p^v * u with u a
// unit of Z/p^rel (split place) or of (Z/p^rel)[w] (inert prime), where rel
// is the number of significant p-adic digits.  Precision is tracked per
// element: additions that cancel leading digits lose relative precision, and
// a value whose digits are all lost becomes an "approximate zero" O(p^a).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cmzeta/exactnum.hpp"

namespace cmzeta {

class PadicRing {
public:
    /// Working precision K defaults to the largest K with p^K < 2^62.
    static std::shared_ptr<const PadicRing> make(const PlaceContext &ctx, unsigned working_precision = 0);

    static unsigned max_precision(unsigned long p);

    unsigned long p() const { return p_; }
    unsigned precision() const { return K_; }
    bool inert() const { return inert_; }
    const PlaceContext &place() const { return ctx_; }
    std::uint64_t modulus(unsigned digits) const { return pow_[digits]; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b, unsigned digits) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b, unsigned digits) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b, unsigned digits) const;
    std::uint64_t inv(std::uint64_t a, unsigned digits) const;
    /// Reduces a p-integral rational modulo p^digits.
    std::uint64_t reduce(const Rational &x, unsigned digits) const;

    long s() const { return s_; }
    long t() const { return t_; }

private:
    PadicRing() = default;

    PlaceContext ctx_;
    unsigned long p_ = 0;
    unsigned K_ = 0;
    bool inert_ = false;
    long s_ = 0;
    long t_ = 0;
    std::vector<std::uint64_t> pow_;
};

class PadicScaled {
public:
    PadicScaled() = default;

    static PadicScaled exact_zero(const PadicRing &ring);
    static PadicScaled approx_zero(const PadicRing &ring, long absolute_precision);
    /// Exact integer (relative precision K).
    static PadicScaled from_long(const PadicRing &ring, long n);
    /// p^v * (u0 + u1 w) with the given relative precision; normalizes.
    static PadicScaled from_parts(const PadicRing &ring, long v, std::uint64_t u0, std::uint64_t u1, unsigned rel);

    const PadicRing *ring() const { return ring_; }
    bool is_exact_zero() const { return kind_ == Kind::exact_zero; }
    bool is_approx_zero() const { return kind_ == Kind::approx_zero; }
    bool is_nonzero() const { return kind_ == Kind::nonzero; }

    /// Valuation of a nonzero element; for an approximate zero, the lower
    /// bound given by its absolute precision.
    long valuation() const;
    long absolute_precision() const;
    unsigned relative_precision() const { return rel_; }
    std::uint64_t u0() const { return u0_; }
    std::uint64_t u1() const { return u1_; }

    /// Whether v >= 0 can be decided from the known digits.
    bool integrality_decidable() const;
    /// Reduction modulo p^digits; requires a decidably integral element
    /// with absolute precision >= digits.
    ModQuad reduce(unsigned digits) const;
    /// Frobenius: conjugation at an inert prime, identity at a split place.
    PadicScaled frobenius() const;

    PadicScaled operator-() const;
    friend PadicScaled operator+(const PadicScaled &x, const PadicScaled &y);
    friend PadicScaled operator-(const PadicScaled &x, const PadicScaled &y) { return x + (-y); }
    friend PadicScaled operator*(const PadicScaled &x, const PadicScaled &y);
    PadicScaled &operator+=(const PadicScaled &y) { return *this = *this + y; }
    PadicScaled &operator-=(const PadicScaled &y) { return *this = *this - y; }
    PadicScaled &operator*=(const PadicScaled &y) { return *this = *this * y; }

    PadicScaled inverse() const;
    PadicScaled divided_by(long n) const;
    PadicScaled times(long n) const;

    std::string to_string() const;

private:
    enum class Kind : std::uint8_t { exact_zero, approx_zero, nonzero };

    const PadicRing &ring_ref() const;

    const PadicRing *ring_ = nullptr;
    Kind kind_ = Kind::exact_zero;
    long v_ = 0;       // valuation, or absolute precision for an approximate zero
    unsigned rel_ = 0; // significant digits of u
    std::uint64_t u0_ = 0;
    std::uint64_t u1_ = 0;
};

/// Image of a field element in the completion at the ring's place.
PadicScaled embed_place(const QuadRat &x, const PadicRing &ring);

// Concept hooks for the series engine.
inline bool is_zero(const PadicScaled &x) { return x.is_exact_zero(); }
inline bool is_invertible(const PadicScaled &x) { return x.is_nonzero(); }
inline PadicScaled inverse(const PadicScaled &x) { return x.inverse(); }
inline PadicScaled from_integer(const PadicScaled &like, long n) { return PadicScaled::from_long(*like.ring(), n); }
inline PadicScaled divide_by_integer(const PadicScaled &x, long n) { return x.divided_by(n); }
inline PadicScaled multiply_by_integer(const PadicScaled &x, long n) { return x.times(n); }

} // namespace cmzeta
