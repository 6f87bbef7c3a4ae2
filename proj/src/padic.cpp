#include "cmzeta/padic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cmzeta {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

unsigned vp_u64(u64 x, u64 p, unsigned cap)
{
    unsigned e = 0;
    while (e < cap && x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

u64 reduce_signed(long x, u64 m)
{
    const long mm = static_cast<long>(m);
    long r = x % mm;
    if (r < 0) {
        r += mm;
    }
    return static_cast<u64>(r);
}

} // namespace

// ---------------------------------------------------------------------------
// PadicRing

unsigned PadicRing::max_precision(unsigned long p)
{
    unsigned K = 0;
    u128 m = 1;
    const u128 limit = u128(1) << 62;
    while (m * p < limit) {
        m *= p;
        ++K;
    }
    return K;
}

std::shared_ptr<const PadicRing> PadicRing::make(const PlaceContext &ctx, unsigned working_precision)
{
    if (ctx.chi_coeff == 0) {
        throw std::domain_error("PadicRing: p is ramified in the coefficient field");
    }
    const unsigned kmax = max_precision(ctx.p);
    if (kmax < 2) {
        throw std::invalid_argument("PadicRing: prime too large for the 64-bit residue domain");
    }
    std::shared_ptr<PadicRing> ring(new PadicRing());
    ring->ctx_ = ctx;
    ring->p_ = ctx.p;
    ring->K_ = working_precision == 0 ? kmax : std::min(working_precision, kmax);
    ring->inert_ = ctx.inert();
    ring->s_ = ctx.field.s;
    ring->t_ = ctx.field.t;
    ring->pow_.resize(ring->K_ + 1);
    ring->pow_[0] = 1;
    for (unsigned i = 1; i <= ring->K_; ++i) {
        ring->pow_[i] = ring->pow_[i - 1] * ctx.p;
    }
    return ring;
}

u64 PadicRing::mul(u64 a, u64 b, unsigned digits) const
{
    return static_cast<u64>((u128(a) * b) % pow_[digits]);
}

u64 PadicRing::add(u64 a, u64 b, unsigned digits) const
{
    const u64 m = pow_[digits];
    u64 r = a + b; // a, b < 2^62
    return r >= m ? r - m : r;
}

u64 PadicRing::sub(u64 a, u64 b, unsigned digits) const
{
    const u64 m = pow_[digits];
    return a >= b ? a - b : a + m - b;
}

u64 PadicRing::inv(u64 a, unsigned digits) const
{
    const u64 m = pow_[digits];
    if (m == 1) {
        return 0;
    }
    __int128 r0 = static_cast<__int128>(m);
    __int128 r1 = static_cast<__int128>(a % m);
    __int128 s0 = 0;
    __int128 s1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 r2 = r0 - q * r1;
        __int128 s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) {
        throw std::domain_error("PadicRing::inv: not a unit");
    }
    __int128 res = s0 % static_cast<__int128>(m);
    if (res < 0) {
        res += static_cast<__int128>(m);
    }
    return static_cast<u64>(res);
}

u64 PadicRing::reduce(const Rational &x, unsigned digits) const
{
    const Integer m(std::to_string(pow_[digits]));
    return reduce_rational(x, m).get_ui();
}

// ---------------------------------------------------------------------------
// PadicScaled

const PadicRing &PadicScaled::ring_ref() const
{
    if (ring_ == nullptr) {
        throw std::logic_error("PadicScaled: element has no ring");
    }
    return *ring_;
}

PadicScaled PadicScaled::exact_zero(const PadicRing &ring)
{
    PadicScaled x;
    x.ring_ = &ring;
    return x;
}

PadicScaled PadicScaled::approx_zero(const PadicRing &ring, long absolute_precision)
{
    PadicScaled x;
    x.ring_ = &ring;
    x.kind_ = Kind::approx_zero;
    x.v_ = absolute_precision;
    return x;
}

PadicScaled PadicScaled::from_long(const PadicRing &ring, long n)
{
    if (n == 0) {
        return exact_zero(ring);
    }
    const unsigned K = ring.precision();
    const u64 p = ring.p();
    unsigned long mag = static_cast<unsigned long>(n < 0 ? -n : n);
    long e = 0;
    while (mag % p == 0) {
        mag /= p;
        ++e;
    }
    u64 u = mag % ring.modulus(K);
    if (n < 0) {
        u = ring.sub(0, u, K);
    }
    return from_parts(ring, e, u, 0, K);
}

PadicScaled PadicScaled::from_parts(const PadicRing &ring, long v, u64 u0, u64 u1, unsigned rel)
{
    if (rel == 0) {
        return approx_zero(ring, v);
    }
    const u64 m = ring.modulus(rel);
    u0 %= m;
    u1 %= m;
    if (u0 == 0 && u1 == 0) {
        return approx_zero(ring, v + static_cast<long>(rel));
    }
    const u64 p = ring.p();
    const unsigned e0 = u0 == 0 ? rel : vp_u64(u0, p, rel);
    const unsigned e1 = u1 == 0 ? rel : vp_u64(u1, p, rel);
    const unsigned e = std::min(e0, e1);
    PadicScaled x;
    x.ring_ = &ring;
    x.kind_ = Kind::nonzero;
    x.v_ = v + static_cast<long>(e);
    x.rel_ = rel - e;
    const u64 pe = ring.modulus(e);
    const u64 mr = ring.modulus(x.rel_);
    x.u0_ = (u0 / pe) % mr;
    x.u1_ = (u1 / pe) % mr;
    return x;
}

long PadicScaled::valuation() const
{
    return kind_ == Kind::exact_zero ? kInfiniteValuation : v_;
}

long PadicScaled::absolute_precision() const
{
    switch (kind_) {
    case Kind::exact_zero:
        return kInfiniteValuation;
    case Kind::approx_zero:
        return v_;
    case Kind::nonzero:
        break;
    }
    return v_ + static_cast<long>(rel_);
}

bool PadicScaled::integrality_decidable() const
{
    return kind_ != Kind::approx_zero || v_ >= 0;
}

ModQuad PadicScaled::reduce(unsigned digits) const
{
    const PadicRing &ring = ring_ref();
    const Integer m = ipow(Integer(ring.p()), digits);
    const QuadField f = ring.inert() ? ring.place().field : QuadField{};
    if (kind_ == Kind::exact_zero) {
        return ModQuad(0, 0, m, f);
    }
    if (absolute_precision() < static_cast<long>(digits)) {
        throw std::domain_error("PadicScaled::reduce: not enough precision");
    }
    if (kind_ == Kind::approx_zero) {
        return ModQuad(0, 0, m, f);
    }
    if (v_ < 0) {
        throw std::domain_error("PadicScaled::reduce: element is not integral");
    }
    if (v_ >= static_cast<long>(digits)) {
        return ModQuad(0, 0, m, f);
    }
    const Integer pv = ipow(Integer(ring.p()), static_cast<unsigned long>(v_));
    return ModQuad(pv * Integer(std::to_string(u0_)), pv * Integer(std::to_string(u1_)), m, f);
}

PadicScaled PadicScaled::frobenius() const
{
    if (kind_ != Kind::nonzero || !ring_ref().inert()) {
        return *this;
    }
    const PadicRing &ring = *ring_;
    const u64 s = reduce_signed(ring.s(), ring.modulus(rel_));
    const u64 a = ring.add(u0_, ring.mul(s, u1_, rel_), rel_);
    const u64 b = ring.sub(0, u1_, rel_);
    return from_parts(ring, v_, a, b, rel_);
}

PadicScaled PadicScaled::operator-() const
{
    if (kind_ != Kind::nonzero) {
        return *this;
    }
    PadicScaled x = *this;
    x.u0_ = ring_->sub(0, u0_, rel_);
    x.u1_ = ring_->sub(0, u1_, rel_);
    return x;
}

PadicScaled operator+(const PadicScaled &x, const PadicScaled &y)
{
    using Kind = PadicScaled::Kind;
    if (x.kind_ == Kind::exact_zero) {
        return y.ring_ == nullptr ? x : y;
    }
    if (y.kind_ == Kind::exact_zero) {
        return x;
    }
    const PadicRing &ring = x.ring_ref();
    const long abs = std::min(x.absolute_precision(), y.absolute_precision());
    const PadicScaled *terms[2] = {&x, &y};
    long vmin = kInfiniteValuation;
    for (const auto *t : terms) {
        if (t->kind_ == Kind::nonzero && t->v_ < abs) {
            vmin = std::min(vmin, t->v_);
        }
    }
    if (vmin == kInfiniteValuation) {
        return PadicScaled::approx_zero(ring, abs);
    }
    const unsigned digits = static_cast<unsigned>(abs - vmin);
    u64 s0 = 0;
    u64 s1 = 0;
    for (const auto *t : terms) {
        if (t->kind_ != Kind::nonzero || t->v_ >= abs) {
            continue;
        }
        const u64 shift = ring.modulus(static_cast<unsigned>(t->v_ - vmin));
        s0 = ring.add(s0, ring.mul(t->u0_ % ring.modulus(digits), shift, digits), digits);
        s1 = ring.add(s1, ring.mul(t->u1_ % ring.modulus(digits), shift, digits), digits);
    }
    return PadicScaled::from_parts(ring, vmin, s0, s1, digits);
}

PadicScaled operator*(const PadicScaled &x, const PadicScaled &y)
{
    using Kind = PadicScaled::Kind;
    if (x.kind_ == Kind::exact_zero) {
        return x.ring_ == nullptr ? y.ring_ == nullptr ? x : PadicScaled::exact_zero(*y.ring_) : x;
    }
    if (y.kind_ == Kind::exact_zero) {
        return y.ring_ == nullptr ? PadicScaled::exact_zero(*x.ring_) : y;
    }
    const PadicRing &ring = x.ring_ref();
    if (x.kind_ == Kind::approx_zero || y.kind_ == Kind::approx_zero) {
        return PadicScaled::approx_zero(ring, x.v_ + y.v_);
    }
    const unsigned rel = std::min(x.rel_, y.rel_);
    const long v = x.v_ + y.v_;
    const u64 m = ring.modulus(rel);
    const u64 a0 = x.u0_ % m;
    const u64 a1 = x.u1_ % m;
    const u64 b0 = y.u0_ % m;
    const u64 b1 = y.u1_ % m;
    if (a1 == 0 && b1 == 0) {
        return PadicScaled::from_parts(ring, v, ring.mul(a0, b0, rel), 0, rel);
    }
    const u64 s = reduce_signed(ring.s(), m);
    const u64 t = reduce_signed(ring.t(), m);
    const u64 bd = ring.mul(a1, b1, rel);
    const u64 c0 = ring.add(ring.mul(a0, b0, rel), ring.mul(t, bd, rel), rel);
    const u64 c1 = ring.add(ring.add(ring.mul(a0, b1, rel), ring.mul(a1, b0, rel), rel), ring.mul(s, bd, rel), rel);
    return PadicScaled::from_parts(ring, v, c0, c1, rel);
}

PadicScaled PadicScaled::inverse() const
{
    if (kind_ != Kind::nonzero) {
        throw std::domain_error("PadicScaled::inverse: zero or precision exhausted");
    }
    const PadicRing &ring = *ring_;
    if (u1_ == 0) {
        return from_parts(ring, -v_, ring.inv(u0_, rel_), 0, rel_);
    }
    const u64 m = ring.modulus(rel_);
    const u64 s = reduce_signed(ring.s(), m);
    const u64 t = reduce_signed(ring.t(), m);
    // norm = u0^2 + s u0 u1 - t u1^2, inverse = conj / norm
    u64 n = ring.mul(u0_, u0_, rel_);
    n = ring.add(n, ring.mul(s, ring.mul(u0_, u1_, rel_), rel_), rel_);
    n = ring.sub(n, ring.mul(t, ring.mul(u1_, u1_, rel_), rel_), rel_);
    const u64 ninv = ring.inv(n, rel_);
    const u64 c0 = ring.add(u0_, ring.mul(s, u1_, rel_), rel_);
    const u64 c1 = ring.sub(0, u1_, rel_);
    return from_parts(ring, -v_, ring.mul(c0, ninv, rel_), ring.mul(c1, ninv, rel_), rel_);
}

PadicScaled PadicScaled::divided_by(long n) const
{
    if (n == 0) {
        throw std::domain_error("PadicScaled: division by zero");
    }
    if (kind_ == Kind::exact_zero) {
        return *this;
    }
    const PadicRing &ring = ring_ref();
    const u64 p = ring.p();
    unsigned long mag = static_cast<unsigned long>(n < 0 ? -n : n);
    long e = 0;
    while (mag % p == 0) {
        mag /= p;
        ++e;
    }
    if (kind_ == Kind::approx_zero) {
        return approx_zero(ring, v_ - e);
    }
    const u64 m = ring.modulus(rel_);
    u64 inv = ring.inv(mag % m, rel_);
    if (n < 0) {
        inv = ring.sub(0, inv, rel_);
    }
    return from_parts(ring, v_ - e, ring.mul(u0_, inv, rel_), ring.mul(u1_, inv, rel_), rel_);
}

PadicScaled PadicScaled::times(long n) const
{
    if (kind_ == Kind::exact_zero) {
        return *this;
    }
    const PadicRing &ring = ring_ref();
    if (n == 0) {
        return exact_zero(ring);
    }
    const u64 p = ring.p();
    unsigned long mag = static_cast<unsigned long>(n < 0 ? -n : n);
    long e = 0;
    while (mag % p == 0) {
        mag /= p;
        ++e;
    }
    if (kind_ == Kind::approx_zero) {
        return approx_zero(ring, v_ + e);
    }
    const u64 m = ring.modulus(rel_);
    u64 f = mag % m;
    if (n < 0) {
        f = ring.sub(0, f, rel_);
    }
    return from_parts(ring, v_ + e, ring.mul(u0_, f, rel_), ring.mul(u1_, f, rel_), rel_);
}

std::string PadicScaled::to_string() const
{
    std::ostringstream os;
    const unsigned long p = ring_ ? ring_->p() : 0;
    switch (kind_) {
    case Kind::exact_zero:
        return "0";
    case Kind::approx_zero:
        os << "O(" << p << "^" << v_ << ")";
        return os.str();
    case Kind::nonzero:
        break;
    }
    os << p << "^" << v_ << " * (" << u0_;
    if (u1_ != 0) {
        os << " + " << u1_ << "*w";
    }
    os << ") + O(" << p << "^" << (v_ + static_cast<long>(rel_)) << ")";
    return os.str();
}

PadicScaled embed_place(const QuadRat &x, const PadicRing &ring)
{
    if (x.is_zero()) {
        return PadicScaled::exact_zero(ring);
    }
    const PlaceContext &ctx = ring.place();
    const unsigned K = ring.precision();
    const unsigned long p = ring.p();
    const Integer P(p);
    if (ring.inert()) {
        const long v = vp_coordinates(x, p);
        Rational scale = v >= 0 ? Rational(1, 1) / Rational(ipow(P, static_cast<unsigned long>(v)))
                                : Rational(ipow(P, static_cast<unsigned long>(-v)));
        scale.canonicalize();
        const u64 u0 = ring.reduce(x.a() * scale, K);
        const u64 u1 = ring.reduce(x.b() * scale, K);
        return PadicScaled::from_parts(ring, v, u0, u1, K);
    }
    if (x.is_rational() || ctx.field.is_rational()) {
        const long v = vp_rational(x.a(), p);
        Rational scale = v >= 0 ? Rational(1, 1) / Rational(ipow(P, static_cast<unsigned long>(v)))
                                : Rational(ipow(P, static_cast<unsigned long>(-v)));
        scale.canonicalize();
        return PadicScaled::from_parts(ring, v, ring.reduce(x.a() * scale, K), 0, K);
    }
    const Integer D = x.denominator();
    const Integer A = x.a().get_num() * (D / x.a().get_den());
    const Integer B = x.b().get_num() * (D / x.b().get_den());
    const Integer N = A * A + A * B * ctx.field.s - B * B * ctx.field.t;
    const long vn = vp_integer(N, p);
    const unsigned prec = K + static_cast<unsigned>(vn);
    const Integer r = ctx.root(prec);
    const Integer M = ipow(P, prec);
    Integer X = (A + B * r) % M;
    if (X < 0) {
        X += M;
    }
    const long e = vp_integer(X, p);
    const long vd = vp_integer(D, p);
    const Integer MK = ipow(P, K);
    const Integer unit_num = (X / ipow(P, static_cast<unsigned long>(e))) % MK;
    const Integer unit_den = (D / ipow(P, static_cast<unsigned long>(vd))) % MK;
    const Integer u = unit_num * mod_inverse(unit_den, MK) % MK;
    return PadicScaled::from_parts(ring, e - vd, u.get_ui(), 0, K);
}

} // namespace cmzeta
