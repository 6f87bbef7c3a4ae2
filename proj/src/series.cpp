#include "cmzeta/series.hpp"

#include <sstream>

namespace cmzeta {

namespace detail {

namespace {

// Coefficients scaled to integers by one common denominator.
struct IntegerForm {
    Integer den = 1;
    std::vector<Integer> a;
    std::vector<Integer> b;
    std::vector<Integer> sum; // a + b, for the three-multiplication product
    std::vector<std::size_t> nonzero;
    std::vector<bool> rational;
};

IntegerForm integer_form(const std::vector<QuadRat> &f, std::size_t count)
{
    IntegerForm out;
    const std::size_t n = std::min(f.size(), count);
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i].is_zero()) {
            continue;
        }
        out.nonzero.push_back(i);
        mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), f[i].a().get_den_mpz_t());
        mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), f[i].b().get_den_mpz_t());
    }
    out.a.resize(n);
    out.b.resize(n);
    out.sum.resize(n);
    out.rational.assign(n, true);
    for (std::size_t i : out.nonzero) {
        out.a[i] = f[i].a().get_num() * (out.den / f[i].a().get_den());
        out.b[i] = f[i].b().get_num() * (out.den / f[i].b().get_den());
        out.sum[i] = out.a[i] + out.b[i];
        out.rational[i] = sgn(out.b[i]) == 0;
    }
    return out;
}

QuadField field_of(const std::vector<QuadRat> &f, const std::vector<QuadRat> &g)
{
    for (const auto *v : {&f, &g}) {
        for (const QuadRat &x : *v) {
            if (!x.is_rational()) {
                return x.field();
            }
        }
    }
    return {};
}

} // namespace

template <>
std::vector<QuadRat> convolve(const std::vector<QuadRat> &f, const std::vector<QuadRat> &g, std::size_t count,
                              const QuadRat &zero)
{
    const IntegerForm F = integer_form(f, count);
    const IntegerForm G = integer_form(g, count);
    const QuadField field = field_of(f, g);

    // (a + bw)(c + dw) = ac + t bd + (ad + bc + s bd) w, ad + bc = (a+b)(c+d) - ac - bd
    std::vector<Integer> ac_rat(count);
    std::vector<Integer> ac(count);
    std::vector<Integer> bd(count);
    std::vector<Integer> mix(count);
    for (std::size_t i : F.nonzero) {
        for (std::size_t j : G.nonzero) {
            const std::size_t n = i + j;
            if (n >= count) {
                break;
            }
            if (F.rational[i] && G.rational[j]) {
                mpz_addmul(ac_rat[n].get_mpz_t(), F.a[i].get_mpz_t(), G.a[j].get_mpz_t());
                continue;
            }
            mpz_addmul(ac[n].get_mpz_t(), F.a[i].get_mpz_t(), G.a[j].get_mpz_t());
            mpz_addmul(bd[n].get_mpz_t(), F.b[i].get_mpz_t(), G.b[j].get_mpz_t());
            mpz_addmul(mix[n].get_mpz_t(), F.sum[i].get_mpz_t(), G.sum[j].get_mpz_t());
        }
    }

    const Integer den = F.den * G.den;
    std::vector<QuadRat> out(count, zero);
    for (std::size_t n = 0; n < count; ++n) {
        if (sgn(ac_rat[n]) == 0 && sgn(ac[n]) == 0 && sgn(bd[n]) == 0 && sgn(mix[n]) == 0) {
            continue;
        }
        Rational re(ac_rat[n] + ac[n] + field.t * bd[n], den);
        Rational im(mix[n] - ac[n] - bd[n] + field.s * bd[n], den);
        re.canonicalize();
        im.canonicalize();
        out[n] = QuadRat(std::move(re), std::move(im), field);
    }
    return out;
}

} // namespace detail

bool honda_quotient_check(const TruncatedSeries<QuadRat> &A, const TruncatedSeries<QuadRat> &B, unsigned long p,
                          long N)
{
    using S = TruncatedSeries<QuadRat>;
    const long prec = std::min(A.precision(), B.precision());
    for (long n = std::min(A.valuation(), B.valuation()); n < prec; ++n) {
        if (vp_coordinates(A[n], p) < 0 || vp_coordinates(B[n], p) < 0) {
            throw std::invalid_argument("honda_quotient_check: series are not p-integral");
        }
        if (vp_coordinates(A[n] - B[n], p) < 1) {
            throw std::invalid_argument("honda_quotient_check: A and B are not congruent mod p");
        }
    }
    if (A.valuation() < 0 || B.valuation() < 0) {
        throw std::invalid_argument("honda_quotient_check: series must be power series");
    }
    S an = S::monomial(QuadRat(1), 0, prec);
    S bn = an;
    for (long n = 1; n <= N; ++n) {
        an = mul(an, A, prec);
        bn = mul(bn, B, prec);
        const S diff = an - bn;
        for (long e = diff.valuation(); e < diff.precision(); ++e) {
            const QuadRat &c = diff[e];
            if (!c.is_zero() && vp_coordinates(c, p) - vp_integer(Integer(n), p) < 1) {
                return false;
            }
        }
    }
    return true;
}

std::string series_to_text(const TruncatedSeries<QuadRat> &f, const std::string &name)
{
    std::ostringstream os;
    os << "# series " << name << '\n';
    os << "# precision " << f.precision() << '\n';
    for (long n = f.valuation(); n < f.precision(); ++n) {
        if (!f[n].is_zero()) {
            os << n << '\t' << f[n].to_string() << '\n';
        }
    }
    return os.str();
}

TruncatedSeries<QuadRat> series_from_text(const std::string &text, QuadField field)
{
    std::istringstream is(text);
    std::string line;
    long prec = kInfiniteValuation;
    std::vector<std::pair<long, QuadRat>> terms;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "precision") {
                hs >> prec;
            }
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw std::invalid_argument("series_from_text: expected exponent<TAB>coefficient: " + line);
        }
        terms.emplace_back(std::stol(line.substr(0, tab)), QuadRat::parse(line.substr(tab + 1), field));
    }
    if (prec == kInfiniteValuation) {
        throw std::invalid_argument("series_from_text: missing precision header");
    }
    if (terms.empty()) {
        return TruncatedSeries<QuadRat>::zero(prec);
    }
    const long lo = terms.front().first;
    std::vector<QuadRat> c(static_cast<std::size_t>(std::max(prec - lo, 0L)));
    for (auto &[e, x] : terms) {
        if (e < lo || e >= prec) {
            throw std::invalid_argument("series_from_text: exponent out of order or beyond precision");
        }
        c[static_cast<std::size_t>(e - lo)] = std::move(x);
    }
    return TruncatedSeries<QuadRat>(lo, prec, std::move(c));
}

} // namespace cmzeta
