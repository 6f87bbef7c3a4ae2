#include "cmzeta/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cmzeta {

// ---------------------------------------------------------------------------
// QuadField

QuadField QuadField::make(long s, long t)
{
    QuadField f{s, t};
    if (f.is_rational()) {
        return f;
    }
    const long d = f.disc();
    if (d <= 0) {
        throw std::invalid_argument("QuadField: discriminant must be positive (real quadratic field)");
    }
    Integer root;
    mpz_sqrt(root.get_mpz_t(), Integer(d).get_mpz_t());
    if (root * root == d) {
        throw std::invalid_argument("QuadField: discriminant is a perfect square");
    }
    return f;
}

// ---------------------------------------------------------------------------
// QuadRat

QuadRat::QuadRat(Rational a, Rational b, QuadField field) : a_(std::move(a)), b_(std::move(b)), field_(field)
{
    a_.canonicalize();
    b_.canonicalize();
    if (field_.is_rational() && sgn(b_) != 0) {
        throw std::invalid_argument("QuadRat: nonzero w-coordinate over Q");
    }
}

QuadField QuadRat::merge(const QuadField &f, const QuadField &g)
{
    if (f.is_rational()) {
        return g;
    }
    if (g.is_rational() || f == g) {
        return f;
    }
    throw std::invalid_argument("QuadRat: operands live in different fields");
}

QuadRat QuadRat::conj() const
{
    QuadRat r = *this;
    r.a_ = a_ + b_ * field_.s;
    r.b_ = -b_;
    return r;
}

Rational QuadRat::norm() const
{
    return a_ * a_ + a_ * b_ * field_.s - b_ * b_ * field_.t;
}

Rational QuadRat::trace() const
{
    return 2 * a_ + b_ * field_.s;
}

QuadRat QuadRat::inverse() const
{
    if (is_zero()) {
        throw std::domain_error("QuadRat: inverse of zero");
    }
    const Rational n = norm();
    QuadRat c = conj();
    c.a_ /= n;
    c.b_ /= n;
    return c;
}

QuadRat QuadRat::operator-() const
{
    QuadRat r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

QuadRat &QuadRat::operator+=(const QuadRat &o)
{
    field_ = merge(field_, o.field_);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadRat &QuadRat::operator-=(const QuadRat &o)
{
    field_ = merge(field_, o.field_);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadRat &QuadRat::operator*=(const QuadRat &o)
{
    field_ = merge(field_, o.field_);
    if (sgn(b_) == 0 && sgn(o.b_) == 0) {
        a_ *= o.a_;
        return *this;
    }
    // (a + bw)(c + dw) = ac + t*bd + (ad + bc + s*bd) w
    const Rational bd = b_ * o.b_;
    const Rational na = a_ * o.a_ + bd * field_.t;
    b_ = a_ * o.b_ + b_ * o.a_ + bd * field_.s;
    a_ = na;
    return *this;
}

QuadRat &QuadRat::operator/=(const QuadRat &o)
{
    if (sgn(o.b_) == 0) {
        if (sgn(o.a_) == 0) {
            throw std::domain_error("QuadRat: division by zero");
        }
        field_ = merge(field_, o.field_);
        a_ /= o.a_;
        b_ /= o.a_;
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const QuadRat &x, const QuadRat &y)
{
    if (x.a_ != y.a_ || x.b_ != y.b_) {
        return false;
    }
    // A rational value is the same element whatever field it was built in.
    return sgn(x.b_) == 0 || x.field_ == y.field_;
}

Integer QuadRat::denominator() const
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
    return l;
}

std::string QuadRat::to_string() const
{
    std::ostringstream os;
    const bool has_a = sgn(a_) != 0;
    const bool has_b = sgn(b_) != 0;
    if (!has_a && !has_b) {
        return "0";
    }
    if (has_a) {
        os << a_.get_str();
    }
    if (has_b) {
        Rational mag = abs(b_);
        if (has_a) {
            os << (sgn(b_) < 0 ? " - " : " + ");
        } else if (sgn(b_) < 0) {
            os << "-";
        }
        if (mag != 1) {
            os << mag.get_str() << "*";
        }
        os << "w";
    }
    return os.str();
}

namespace {

Rational parse_rational_token(std::string_view tok)
{
    std::string s(tok);
    if (s.empty()) {
        throw std::invalid_argument("QuadRat::parse: empty number");
    }
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/')) {
            throw std::invalid_argument("QuadRat::parse: bad number '" + s + "'");
        }
    }
    Rational r;
    if (r.set_str(s, 10) != 0) {
        throw std::invalid_argument("QuadRat::parse: bad number '" + s + "'");
    }
    if (r.get_den() == 0) {
        throw std::invalid_argument("QuadRat::parse: zero denominator");
    }
    r.canonicalize();
    return r;
}

} // namespace

QuadRat QuadRat::parse(std::string_view text, QuadField field)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("QuadRat::parse: empty input");
    }
    Rational a = 0;
    Rational b = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw std::invalid_argument("QuadRat::parse: expected '+' or '-' in '" + s + "'");
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') {
            ++j;
        }
        std::string_view term(s.data() + i, j - i);
        if (term.empty()) {
            throw std::invalid_argument("QuadRat::parse: dangling sign in '" + s + "'");
        }
        bool has_w = false;
        Rational coeff = 1;
        std::size_t start = 0;
        while (start <= term.size()) {
            std::size_t star = term.find('*', start);
            std::string_view factor = term.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
            if (factor == "w") {
                if (has_w) {
                    throw std::invalid_argument("QuadRat::parse: w^2 is not allowed in '" + s + "'");
                }
                has_w = true;
            } else {
                // "w/2" means w * 1/2
                if (factor.size() > 1 && factor.front() == 'w' && factor[1] == '/') {
                    has_w = true;
                    coeff /= parse_rational_token("1" + std::string(factor.substr(1)));
                } else {
                    coeff *= parse_rational_token(factor);
                }
            }
            if (star == std::string_view::npos) {
                break;
            }
            start = star + 1;
        }
        if (has_w) {
            if (field.is_rational()) {
                throw std::invalid_argument("QuadRat::parse: 'w' used over Q");
            }
            b += sign * coeff;
        } else {
            a += sign * coeff;
        }
        i = j;
    }
    return QuadRat(a, b, field);
}

std::ostream &operator<<(std::ostream &os, const QuadRat &x)
{
    return os << x.to_string();
}

QuadRat divide_by_integer(const QuadRat &x, long n)
{
    if (n == 0) {
        throw std::domain_error("divide_by_integer: zero divisor");
    }
    return QuadRat(x.a() / n, x.b() / n, x.field());
}

QuadRat multiply_by_integer(const QuadRat &x, long n)
{
    return QuadRat(x.a() * n, x.b() * n, x.field());
}

// ---------------------------------------------------------------------------
// Integer helpers

long vp_integer(const Integer &n, unsigned long p)
{
    if (sgn(n) == 0) {
        return kInfiniteValuation;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) {
        return 0;
    }
    Integer rest;
    const Integer pp(p);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

long vp_rational(const Rational &x, unsigned long p)
{
    if (sgn(x) == 0) {
        return kInfiniteValuation;
    }
    return vp_integer(x.get_num(), p) - vp_integer(x.get_den(), p);
}

Integer mod_inverse(const Integer &x, const Integer &m)
{
    Integer r;
    if (m == 1) {
        return 0;
    }
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw std::domain_error("mod_inverse: " + x.get_str() + " is not invertible mod " + m.get_str());
    }
    return r;
}

Integer reduce_rational(const Rational &x, const Integer &m)
{
    Integer num = x.get_num() % m;
    if (num < 0) {
        num += m;
    }
    Integer r = num * mod_inverse(x.get_den(), m) % m;
    return r;
}

Integer ipow(const Integer &base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

bool is_probable_prime(const Integer &n)
{
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

int kronecker(const Integer &a_in, const Integer &n_in)
{
    if (n_in < 0) {
        throw std::invalid_argument("kronecker: modulus must be nonnegative");
    }
    static constexpr int tab[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    auto mod8 = [](const Integer &x) { return static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), 8)); };

    Integer a = a_in;
    Integer b = n_in;
    if (b == 0) {
        return abs(a) == 1 ? 1 : 0;
    }
    if (mpz_even_p(a.get_mpz_t()) && mpz_even_p(b.get_mpz_t())) {
        return 0;
    }
    unsigned long v = mpz_scan1(b.get_mpz_t(), 0);
    b >>= v;
    int k = (v % 2 == 0) ? 1 : tab[mod8(a)];
    for (;;) {
        if (a == 0) {
            return b > 1 ? 0 : k;
        }
        v = mpz_scan1(a.get_mpz_t(), 0);
        a >>= v; // exact: a is divisible by 2^v (floor shift is exact here)
        if (v % 2 == 1) {
            k *= tab[mod8(b)];
        }
        // reciprocity: flip when a = b = 3 mod 4 (a taken in two's complement)
        if ((mod8(a) & 2) && (mod8(b) & 2)) {
            k = -k;
        }
        Integer r = abs(a);
        a = b % r;
        b = r;
    }
}

namespace {

// Square root of a quadratic residue d modulo an odd prime p (Tonelli-Shanks).
Integer sqrt_mod_prime(const Integer &d_in, const Integer &p)
{
    Integer d = d_in % p;
    if (d < 0) {
        d += p;
    }
    if (d == 0) {
        return 0;
    }
    Integer q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;
    Integer z = 2;
    while (kronecker(z, p) != -1) {
        ++z;
    }
    Integer m = s;
    Integer c, t, r, tmp;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), d.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    Integer e = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    while (t != 1) {
        unsigned long i = 0;
        tmp = t;
        while (tmp != 1) {
            tmp = tmp * tmp % p;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m.get_ui(); ++j) {
            b = b * b % p;
        }
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

} // namespace

std::array<Integer, 2> hensel_lift_root(long s, long t, unsigned long p, unsigned k)
{
    if (p < 3 || !is_probable_prime(Integer(p))) {
        throw std::invalid_argument("hensel_lift_root: p must be an odd prime");
    }
    const Integer P(p);
    const Integer disc = Integer(s) * s + 4 * Integer(t);
    if (kronecker(disc, P) != 1) {
        throw std::domain_error("hensel_lift_root: x^2 - s*x - t has no simple roots mod " + P.get_str());
    }
    const Integer sq = sqrt_mod_prime(disc, P);
    const Integer inv2 = mod_inverse(Integer(2), P);
    std::array<Integer, 2> roots;
    for (int i = 0; i < 2; ++i) {
        Integer r = ((Integer(s) + (i == 0 ? sq : -sq)) * inv2) % P;
        if (r < 0) {
            r += P;
        }
        roots[static_cast<std::size_t>(i)] = r;
    }
    if (roots[1] < roots[0]) {
        std::swap(roots[0], roots[1]);
    }
    if (k <= 1) {
        return roots;
    }
    for (auto &r : roots) {
        unsigned prec = 1;
        while (prec < k) {
            prec = std::min(2 * prec, k);
            const Integer m = ipow(P, prec);
            Integer f = (r * r - Integer(s) * r - Integer(t)) % m;
            Integer df = (2 * r - Integer(s)) % m;
            if (df < 0) {
                df += m;
            }
            r = (r - f * mod_inverse(df, m)) % m;
            if (r < 0) {
                r += m;
            }
        }
    }
    return roots;
}

std::optional<Rational> rational_reconstruction(const Integer &residue, const Integer &m,
                                                const Integer &bound)
{
    if (m <= 0 || bound < 1) {
        throw std::invalid_argument("rational_reconstruction: modulus and bound must be positive");
    }
    if (m <= 2 * bound * bound) {
        throw std::invalid_argument("rational_reconstruction: modulus " + m.get_str() +
                                    " does not exceed 2*bound^2 for bound " + bound.get_str());
    }
    Integer r0 = m;
    Integer r1 = residue % m;
    if (r1 < 0) {
        r1 += m;
    }
    Integer s0 = 0;
    Integer s1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r1 == 0) {
        return (residue % m == 0) ? std::optional<Rational>(Rational(0)) : std::nullopt;
    }
    Integer num = r1;
    Integer den = s1;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > bound || den == 0) {
        return std::nullopt;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    if (g != 1) {
        return std::nullopt;
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

Congruence crt_combine(const std::vector<Congruence> &residues)
{
    if (residues.empty()) {
        throw std::invalid_argument("crt_combine: no residues");
    }
    Congruence acc{residues.front().value % residues.front().modulus, residues.front().modulus};
    if (acc.value < 0) {
        acc.value += acc.modulus;
    }
    for (std::size_t i = 1; i < residues.size(); ++i) {
        const auto &[v, m] = residues[i];
        Integer g;
        mpz_gcd(g.get_mpz_t(), acc.modulus.get_mpz_t(), m.get_mpz_t());
        if (g != 1) {
            throw std::invalid_argument("crt_combine: moduli " + acc.modulus.get_str() + " and " + m.get_str() +
                                        " are not coprime");
        }
        // x = acc.value + acc.modulus * h,  h = (v - acc.value) / acc.modulus mod m
        Integer h = ((v - acc.value) % m) * mod_inverse(acc.modulus % m, m) % m;
        if (h < 0) {
            h += m;
        }
        acc.value += acc.modulus * h;
        acc.modulus *= m;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// ModQuad

namespace {

Integer mod_norm(const Integer &x, const Integer &m)
{
    Integer r = x % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

} // namespace

ModQuad::ModQuad(Integer a, Integer b, Integer modulus, QuadField field)
    : a_(std::move(a)), b_(std::move(b)), m_(std::move(modulus)), field_(field)
{
    if (m_ < 1) {
        throw std::invalid_argument("ModQuad: modulus must be positive");
    }
    a_ = mod_norm(a_, m_);
    b_ = mod_norm(b_, m_);
    if (field_.is_rational() && b_ != 0) {
        throw std::invalid_argument("ModQuad: nonzero w-coordinate over Z/m");
    }
}

void ModQuad::check_compatible(const ModQuad &o) const
{
    if (m_ != o.m_) {
        throw std::invalid_argument("ModQuad: mismatched moduli");
    }
    if (!(field_ == o.field_) && !field_.is_rational() && !o.field_.is_rational()) {
        throw std::invalid_argument("ModQuad: mismatched fields");
    }
}

Integer ModQuad::norm() const
{
    return mod_norm(a_ * a_ + a_ * b_ * field_.s - b_ * b_ * field_.t, m_);
}

bool ModQuad::is_unit() const
{
    Integer g;
    const Integer n = norm();
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), m_.get_mpz_t());
    return g == 1;
}

ModQuad ModQuad::conj() const
{
    return ModQuad(a_ + b_ * field_.s, -b_, m_, field_);
}

ModQuad ModQuad::reduce(const Integer &smaller_modulus) const
{
    if (m_ % smaller_modulus != 0) {
        throw std::invalid_argument("ModQuad::reduce: modulus does not divide the current one");
    }
    return ModQuad(a_, b_, smaller_modulus, field_);
}

ModQuad ModQuad::operator-() const
{
    return ModQuad(-a_, -b_, m_, field_);
}

ModQuad operator+(const ModQuad &x, const ModQuad &y)
{
    x.check_compatible(y);
    const QuadField f = x.field_.is_rational() ? y.field_ : x.field_;
    return ModQuad(x.a_ + y.a_, x.b_ + y.b_, x.m_, f);
}

ModQuad operator-(const ModQuad &x, const ModQuad &y)
{
    return x + (-y);
}

ModQuad operator*(const ModQuad &x, const ModQuad &y)
{
    x.check_compatible(y);
    const QuadField f = x.field_.is_rational() ? y.field_ : x.field_;
    const Integer bd = x.b_ * y.b_;
    return ModQuad(x.a_ * y.a_ + bd * f.t, x.a_ * y.b_ + x.b_ * y.a_ + bd * f.s, x.m_, f);
}

bool operator==(const ModQuad &x, const ModQuad &y)
{
    return x.m_ == y.m_ && x.a_ == y.a_ && x.b_ == y.b_;
}

QuadRat ModQuad::lift() const
{
    return QuadRat(Rational(a_), Rational(b_), field_);
}

std::string ModQuad::to_string() const
{
    return lift().to_string();
}

ModQuad modring_inv(const ModQuad &x)
{
    if (!x.is_unit()) {
        throw std::domain_error("modring_inv: " + x.to_string() + " is not a unit mod " + x.modulus().get_str());
    }
    const Integer ninv = mod_inverse(x.norm(), x.modulus());
    return x.conj() * ModQuad(ninv, 0, x.modulus(), x.field());
}

ModQuad reduce_coordinates(const QuadRat &x, const Integer &m)
{
    return ModQuad(reduce_rational(x.a(), m), reduce_rational(x.b(), m), m, x.field());
}

// ---------------------------------------------------------------------------
// PlaceContext

PlaceContext PlaceContext::make(QuadField field, long dK, long conductor, unsigned long p, unsigned k, int place)
{
    if (p < 3 || !is_probable_prime(Integer(p))) {
        throw std::invalid_argument("PlaceContext: p must be an odd prime");
    }
    if (k < 1) {
        throw std::invalid_argument("PlaceContext: precision k must be at least 1");
    }
    PlaceContext ctx;
    ctx.p = p;
    ctx.k = k;
    ctx.field = field;
    ctx.chi_K = kronecker(Integer(dK) * conductor * conductor, Integer(p));
    ctx.chi_coeff = field.is_rational() ? 1 : kronecker(Integer(field.disc()), Integer(p));
    if (place < 0 || place > 1) {
        throw std::invalid_argument("PlaceContext: place index must be 0 or 1");
    }
    if (ctx.split() && !field.is_rational()) {
        ctx.roots = hensel_lift_root(field.s, field.t, p, k);
    } else if (place != 0) {
        throw std::invalid_argument("PlaceContext: only place 0 exists above a non-split prime");
    }
    ctx.place = place;
    return ctx;
}

Integer PlaceContext::root(unsigned prec) const
{
    if (!split() || field.is_rational()) {
        throw std::logic_error("PlaceContext::root: no root at a non-split prime");
    }
    if (prec == k) {
        return roots[static_cast<std::size_t>(place)];
    }
    return hensel_lift_root(field.s, field.t, p, std::max(prec, 1u))[static_cast<std::size_t>(place)];
}

QuadRat frobenius(const QuadRat &x, const PlaceContext &ctx)
{
    if (ctx.chi_coeff == 0) {
        throw std::domain_error("frobenius: p is ramified in the coefficient field");
    }
    return ctx.frobenius_nontrivial() ? x.conj() : x;
}

long vp_coordinates(const QuadRat &x, unsigned long p)
{
    return std::min(vp_rational(x.a(), p), vp_rational(x.b(), p));
}

long vp_at_place(const QuadRat &x, const PlaceContext &ctx, int place)
{
    if (x.is_zero()) {
        return kInfiniteValuation;
    }
    if (x.is_rational() || ctx.field.is_rational()) {
        return vp_rational(x.a(), ctx.p);
    }
    if (ctx.inert()) {
        return vp_coordinates(x, ctx.p);
    }
    // x = (A + B w)/D with integers; v(A + B r) <= v(norm(A + B w)).
    const Integer D = x.denominator();
    const Integer A = x.a().get_num() * (D / x.a().get_den());
    const Integer B = x.b().get_num() * (D / x.b().get_den());
    const Integer N = A * A + A * B * ctx.field.s - B * B * ctx.field.t;
    const long vn = vp_integer(N, ctx.p);
    const unsigned prec = static_cast<unsigned>(vn) + 1;
    const Integer r = hensel_lift_root(ctx.field.s, ctx.field.t, ctx.p, prec)[static_cast<std::size_t>(place)];
    const Integer m = ipow(Integer(ctx.p), prec);
    Integer val = (A + B * r) % m;
    if (val < 0) {
        val += m;
    }
    return vp_integer(val, ctx.p) - vp_integer(D, ctx.p);
}

long vp(const QuadRat &x, const PlaceContext &ctx)
{
    if (ctx.chi_coeff == 0) {
        throw std::domain_error("vp: p is ramified in the coefficient field");
    }
    if (ctx.inert()) {
        return vp_coordinates(x, ctx.p);
    }
    return vp_at_place(x, ctx, ctx.place);
}

ModQuad reduce_at_place(const QuadRat &x, const PlaceContext &ctx, unsigned prec)
{
    const Integer P(ctx.p);
    const Integer m = ipow(P, prec);
    if (ctx.inert()) {
        if (vp_coordinates(x, ctx.p) < 0) {
            throw std::domain_error("reduce_at_place: element is not p-integral");
        }
        return reduce_coordinates(x, m);
    }
    if (ctx.chi_coeff == 0) {
        throw std::domain_error("reduce_at_place: p is ramified in the coefficient field");
    }
    if (x.is_rational() || ctx.field.is_rational()) {
        if (vp_rational(x.a(), ctx.p) < 0) {
            throw std::domain_error("reduce_at_place: element is not p-integral");
        }
        return ModQuad(reduce_rational(x.a(), m), 0, m, QuadField{});
    }
    if (vp_at_place(x, ctx, ctx.place) < 0) {
        throw std::domain_error("reduce_at_place: element is not integral at the place");
    }
    // (A + B r)/D with p^e || D: compute mod p^(prec+e) and divide out p^e.
    const Integer D = x.denominator();
    const Integer A = x.a().get_num() * (D / x.a().get_den());
    const Integer B = x.b().get_num() * (D / x.b().get_den());
    const long e = vp_integer(D, ctx.p);
    const unsigned full = prec + static_cast<unsigned>(e);
    const Integer M = ipow(P, full);
    const Integer r = ctx.root(full);
    Integer num = (A + B * r) % M;
    if (num < 0) {
        num += M;
    }
    const Integer pe = ipow(P, static_cast<unsigned long>(e));
    num /= pe;
    const Integer Dp = D / pe;
    return ModQuad(num * mod_inverse(Dp % m, m), 0, m, QuadField{});
}

ModQuad combine_split_places(const Integer &at_place0, const Integer &at_place1, const PlaceContext &ctx,
                             unsigned prec)
{
    if (!ctx.split() || ctx.field.is_rational()) {
        throw std::logic_error("combine_split_places: prime does not split in the coefficient field");
    }
    const Integer m = ipow(Integer(ctx.p), prec);
    const auto r = hensel_lift_root(ctx.field.s, ctx.field.t, ctx.p, prec);
    // a + b r0 = x0, a + b r1 = x1
    Integer b = (at_place0 - at_place1) * mod_inverse(mod_norm(r[0] - r[1], m), m);
    Integer a = at_place0 - b * r[0];
    return ModQuad(a, b, m, ctx.field);
}

} // namespace cmzeta
