#include "cmzeta/eisenstein.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <thread>

#include "cmzeta/padic.hpp"

namespace cmzeta {

std::string to_string(PrimeClass c)
{
    switch (c) {
    case PrimeClass::bad:
        return "bad";
    case PrimeClass::ordinary:
        return "ordinary";
    case PrimeClass::supersingular:
        return "supersingular";
    }
    return "?";
}

std::string to_string(Domain d)
{
    return d == Domain::exact ? "exact" : "fast";
}

std::string VerificationReport::mu_string() const
{
    if (!mu) {
        return "";
    }
    return mu->lift().to_string() + " mod " + std::to_string(p) + "^" + std::to_string(k);
}

unsigned supersingular_precision(unsigned long p, long N)
{
    unsigned j = 0;
    Integer q(p); // p^(2j+1)
    while (q < N) {
        ++j;
        q *= p * p;
    }
    return j;
}

unsigned ordinary_precision(unsigned long p, long N)
{
    unsigned j = 0;
    Integer q(p);
    while (q < N) {
        ++j;
        q *= p;
    }
    return j;
}

PrimeClass classify_prime(const CurveModel &curve, unsigned long p)
{
    if (p <= 3 || !is_probable_prime(Integer(p))) {
        return PrimeClass::bad;
    }
    const Rational nd = curve.norm_discriminant();
    if (vp_rational(nd, p) != 0) {
        return PrimeClass::bad;
    }
    if (!curve.field.is_rational() && curve.field.disc() % static_cast<long>(p) == 0) {
        return PrimeClass::bad;
    }
    if ((curve.dK * curve.conductor) % static_cast<long>(p) == 0) {
        return PrimeClass::bad;
    }
    if (vp_coordinates(curve.g2, p) < 0 || vp_coordinates(curve.g3, p) < 0) {
        return PrimeClass::bad;
    }
    return kronecker(curve.dK, static_cast<long>(p)) == -1 ? PrimeClass::supersingular : PrimeClass::ordinary;
}

long count_points_ap(const CurveModel &curve, unsigned long p, int place)
{
    if (classify_prime(curve, p) == PrimeClass::bad) {
        throw std::domain_error("count_points_ap: bad reduction at p = " + std::to_string(p));
    }
    const long P = static_cast<long>(p);
    const Integer m(p);
    auto red = [&](const Rational &x) { return reduce_rational(x, m).get_si(); };
    auto legendre = [&](long a) { return kronecker(((a % P) + P) % P, P); };
    const QuadField &f = curve.field;
    const bool inert = !f.is_rational() && kronecker(f.disc(), P) == -1;
    long sum = 0;
    if (!inert) {
        long r = 0;
        if (!f.is_rational()) {
            r = hensel_lift_root(f.s, f.t, p, 1)[static_cast<std::size_t>(place)].get_si();
        }
        const long g2 = (red(curve.g2.a()) + red(curve.g2.b()) * r) % P;
        const long g3 = (red(curve.g3.a()) + red(curve.g3.b()) * r) % P;
        for (long x = 0; x < P; ++x) {
            const long fx = ((4 * x % P) * x % P * x - g2 * x - g3) % P;
            sum += legendre(fx);
        }
        return -sum;
    }
    // F_{p^2} = F_p[w], w^2 = s w + t; a square test through the norm
    const long s = ((f.s % P) + P) % P;
    const long t = ((f.t % P) + P) % P;
    auto mul = [&](std::pair<long, long> x, std::pair<long, long> y) {
        const long bd = x.second * y.second % P;
        return std::pair<long, long>{(x.first * y.first + t * bd) % P,
                                     (x.first * y.second + x.second * y.first + s * bd) % P};
    };
    const std::pair<long, long> g2{red(curve.g2.a()), red(curve.g2.b())};
    const std::pair<long, long> g3{red(curve.g3.a()), red(curve.g3.b())};
    for (long x0 = 0; x0 < P; ++x0) {
        for (long x1 = 0; x1 < P; ++x1) {
            const std::pair<long, long> x{x0, x1};
            auto x3 = mul(mul(x, x), x);
            auto gx = mul(g2, x);
            long y0 = (4 * x3.first - gx.first - g3.first) % P;
            long y1 = (4 * x3.second - gx.second - g3.second) % P;
            y0 = (y0 + P) % P;
            y1 = (y1 + P) % P;
            const long norm = (y0 * y0 + s * y0 % P * y1 - t * y1 % P * y1) % P;
            sum += legendre(norm);
        }
    }
    return -sum;
}

TruncatedSeries<QuadRat> residual_series(const WeierstrassExpansion &ex, const QuadRat &A, long N)
{
    using S = TruncatedSeries<QuadRat>;
    const S z = ex.zeta_of_log - S::monomial(QuadRat(1), -1, ex.zeta_of_log.precision()) -
                S::monomial(ex.d0, 0, ex.zeta_of_log.precision());
    return (z - ex.log.scaled(A)).truncated(N);
}

TruncatedSeries<QuadRat> frobenius_log_term(const WeierstrassExpansion &ex, const PlaceContext &ctx, long N)
{
    const long p = static_cast<long>(ctx.p);
    const auto lphi = frobenius_series(ex.log.truncated((N + p - 1) / p), ctx);
    return substitute_power(lphi, p).map([p](const QuadRat &x) { return divide_by_integer(x, p); }).truncated(N);
}

namespace {

// Valuation and reduction at one place, exact coefficients.
struct ExactView {
    PlaceContext ctx;

    long val(const QuadRat &x) const
    {
        if (x.is_zero()) {
            return kInfiniteValuation;
        }
        if (ctx.field.is_rational() || x.is_rational()) {
            return vp_rational(x.a(), ctx.p);
        }
        return ctx.inert() ? vp_coordinates(x, ctx.p) : vp_at_place(x, ctx, ctx.place);
    }
    bool decidable(const QuadRat &) const { return true; }
    ModQuad reduce(const QuadRat &x, unsigned digits) const { return reduce_at_place(x, ctx, digits); }
    QuadRat lift(const ModQuad &m) const
    {
        return ctx.inert() ? m.lift() : QuadRat(Rational(m.a()));
    }
    QuadRat divide(const QuadRat &x, const QuadRat &y) const { return x / y; }
};

struct FastView {
    std::shared_ptr<const PadicRing> ring;

    long val(const PadicScaled &x) const { return x.valuation(); }
    bool decidable(const PadicScaled &x) const { return x.integrality_decidable(); }
    ModQuad reduce(const PadicScaled &x, unsigned digits) const { return x.reduce(digits); }
    PadicScaled lift(const ModQuad &m) const
    {
        const unsigned K = ring->precision();
        return PadicScaled::from_parts(*ring, 0, m.a().get_ui(), m.b().get_ui(), K);
    }
    PadicScaled divide(const PadicScaled &x, const PadicScaled &y) const { return x * y.inverse(); }
};

// Coefficients at one place: z_n (n >= 0) of zeta(l) - 1/u - d0, l_n and
// the Frobenius twist of l_n, for 0 <= n < N.
template <class C>
struct PlaceData {
    long N = 0;
    C zero{};
    std::vector<C> z;
    std::vector<C> l;
    std::vector<C> lphi;
    C A{};
};

PlaceData<QuadRat> exact_data(const WeierstrassExpansion &ex, const PlaceContext &ctx, const QuadRat *A, long N)
{
    if (ex.N < N) {
        throw std::invalid_argument("exact expansion has fewer terms than requested");
    }
    PlaceData<QuadRat> d;
    d.N = N;
    d.z.resize(static_cast<std::size_t>(N));
    d.l.resize(static_cast<std::size_t>(N));
    d.lphi.resize(static_cast<std::size_t>(N));
    if (!ex.d0.is_zero() && vp(ex.d0, ctx) < 0) {
        throw InconsistencyError("constant term d0 = " + ex.d0.to_string() + " is not p-integral");
    }
    d.z[0] = ex.zeta_of_log[0] - ex.d0;
    for (long n = 1; n < N; ++n) {
        d.z[static_cast<std::size_t>(n)] = ex.zeta_of_log[n];
        d.l[static_cast<std::size_t>(n)] = ex.log[n];
        d.lphi[static_cast<std::size_t>(n)] = frobenius(ex.log[n], ctx);
    }
    if (A != nullptr) {
        d.A = *A;
    }
    return d;
}

PlaceData<PadicScaled> fast_data(const CurveModel &curve, const PadicRing &ring, const QuadRat *A, long N)
{
    const PadicScaled zero = PadicScaled::exact_zero(ring);
    const auto route = formal_group_route(embed_place(curve.g2, ring), embed_place(curve.g3, ring), N, zero);
    PlaceData<PadicScaled> d;
    d.N = N;
    d.zero = zero;
    d.z.assign(static_cast<std::size_t>(N), zero);
    d.l.assign(static_cast<std::size_t>(N), zero);
    d.lphi.assign(static_cast<std::size_t>(N), zero);
    // d0 vanishes because zeta(l(u)) is odd
    d.z[0] = route.zeta_of_log[0];
    for (long n = 1; n < N; ++n) {
        d.z[static_cast<std::size_t>(n)] = route.zeta_of_log[n];
        d.l[static_cast<std::size_t>(n)] = route.log[n];
        d.lphi[static_cast<std::size_t>(n)] = route.log[n].frobenius();
    }
    d.A = A != nullptr ? embed_place(*A, ring) : zero;
    return d;
}

template <class C, class View>
ValuationScan scan(const std::vector<C> &coeffs, const View &view)
{
    ValuationScan s;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const C &x = coeffs[n];
        if (!view.decidable(x)) {
            ++s.undecidable;
            continue;
        }
        const long v = view.val(x);
        if (v >= 0) {
            continue;
        }
        const Violation here{static_cast<long>(n), v};
        if (!s.earliest) {
            s.earliest = here;
        }
        if (!s.first || v < s.first->valuation) {
            s.first = here;
        }
    }
    return s;
}

template <class C>
std::vector<C> residual(const PlaceData<C> &d)
{
    std::vector<C> r(d.z.size(), d.zero);
    for (std::size_t n = 0; n < r.size(); ++n) {
        r[n] = d.z[n] - d.A * d.l[n];
    }
    return r;
}

Integer power(unsigned long p, unsigned e)
{
    return ipow(Integer(p), e);
}

// lambda mod p^k at one place from u^(p^j), j = 1..k.
template <class C, class View>
ModQuad lambda_at_place(const PlaceData<C> &d, const View &view, unsigned long p, unsigned k)
{
    std::optional<ModQuad> prev;
    for (unsigned j = 1; j <= k; ++j) {
        const Integer q = power(p, j);
        if (q >= d.N) {
            throw std::invalid_argument("recover_lambda: N must exceed p^k");
        }
        const auto n = static_cast<std::size_t>(q.get_ui());
        const C b = multiply_by_integer(d.l[n], static_cast<long>(n));
        if (!view.decidable(b) || view.val(b) != 0) {
            throw InconsistencyError("recover_lambda: b(p^" + std::to_string(j) +
                                     ") is not a p-adic unit at p = " + std::to_string(p));
        }
        const C x = view.divide(d.z[n], d.l[n]);
        if (!view.decidable(x) || view.val(x) < 0) {
            throw InconsistencyError("recover_lambda: no integral solution at u^" + std::to_string(n));
        }
        const ModQuad lam = view.reduce(x, j);
        if (prev && !(lam.reduce(prev->modulus()) == *prev)) {
            throw InconsistencyError("recover_lambda: congruences at u^p^" + std::to_string(j - 1) + " and u^p^" +
                                     std::to_string(j) + " disagree at p = " + std::to_string(p));
        }
        prev = lam;
    }
    return *prev;
}

template <class C, class View>
void verify_ordinary_place(VerificationReport &rep, const PlaceData<C> &d, const View &view, unsigned long p,
                           unsigned k_requested)
{
    const std::vector<C> R = residual(d);
    const ValuationScan s = scan(R, view);
    rep.first_violation = s.first;
    rep.earliest_violation = s.earliest;
    rep.undecidable = s.undecidable;
    rep.terms_checked = d.N;
    rep.ok = !s.first && s.undecidable == 0;
    if (s.undecidable > 0) {
        rep.notes.push_back(std::to_string(s.undecidable) + " coefficients exhausted the p-adic precision");
    }
    const unsigned k = std::min(k_requested, ordinary_precision(p, d.N));
    rep.k = k;
    if (k == 0) {
        rep.notes.push_back("N <= p: lambda cannot be recovered");
        return;
    }
    try {
        const ModQuad lam = lambda_at_place(d, view, p, k);
        rep.lambda_recovered = lam;
        if (view.decidable(d.A) && view.val(d.A) >= 0) {
            if (!(view.reduce(d.A, k) == lam)) {
                rep.ok = false;
                rep.notes.push_back("recovered lambda differs from A mod p^" + std::to_string(k));
            }
        } else {
            rep.ok = false;
            rep.notes.push_back("A is not integral at this place");
        }
    } catch (const InconsistencyError &e) {
        rep.ok = false;
        rep.inconsistent = true;
        rep.notes.push_back(e.what());
    }
}

template <class C, class View>
void verify_supersingular_place(VerificationReport &rep, const PlaceData<C> &d, const View &view, unsigned long p,
                                const VerifyOptions &opt)
{
    const long N = d.N;
    const std::vector<C> R = residual(d);
    std::vector<C> T(static_cast<std::size_t>(N), d.zero);
    for (long m = 1; static_cast<long>(p) * m < N; ++m) {
        T[static_cast<std::size_t>(static_cast<long>(p) * m)] =
            divide_by_integer(d.lphi[static_cast<std::size_t>(m)], static_cast<long>(p));
    }
    rep.pre_correction_violation = scan(R, view).first;
    rep.terms_checked = N;

    const unsigned k = std::min(opt.k, supersingular_precision(p, N));
    if (k < opt.k) {
        rep.notes.push_back("k lowered to " + std::to_string(k) + ": p^(2k-1) must be below N = " + std::to_string(N));
    }
    if (k == 0) {
        rep.notes.push_back("N <= p: mu cannot be solved");
        rep.ok = false;
        return;
    }

    // Constraint indices: u^(p^(2j-1)) pins mu mod p^j when vp(b(p^(2j-2))) = j - 1.
    struct Constraint {
        long index;
        long weight; // -vp(T_index)
    };
    std::vector<Constraint> cons;
    bool profile_ok = true;
    for (unsigned j = 1; j <= k; ++j) {
        const long m = power(p, 2 * j - 2).get_si();
        const C b = multiply_by_integer(d.l[static_cast<std::size_t>(m)], m);
        if (!view.decidable(b) || view.val(b) != static_cast<long>(j) - 1) {
            profile_ok = false;
            break;
        }
        cons.push_back({power(p, 2 * j - 1).get_si(), static_cast<long>(j)});
    }
    if (!profile_ok) {
        rep.notes.push_back("vp(b(p^(2j-2))) = j-1 failed; scanning every index p*m for constraints");
        cons.clear();
        for (long n = static_cast<long>(p); n < N; n += static_cast<long>(p)) {
            const C &t = T[static_cast<std::size_t>(n)];
            if (view.decidable(t) && view.val(t) < 0) {
                cons.push_back({n, -view.val(t)});
            }
        }
        std::stable_sort(cons.begin(), cons.end(),
                         [](const Constraint &a, const Constraint &b) { return a.weight > b.weight; });
    }
    if (opt.reverse_constraint_order) {
        std::reverse(cons.begin(), cons.end());
    }

    std::optional<ModQuad> mu;
    unsigned digits = 0;
    for (const Constraint &c : cons) {
        const auto n = static_cast<std::size_t>(c.index);
        const C x = view.divide(R[n], T[n]);
        if (!view.decidable(x) || view.val(x) < 0) {
            rep.inconsistent = true;
            rep.ok = false;
            rep.notes.push_back("no integral mu satisfies the constraint at u^" + std::to_string(c.index));
            return;
        }
        const auto e = static_cast<unsigned>(c.weight);
        const ModQuad here = view.reduce(x, e);
        if (mu) {
            const Integer common = power(p, std::min(e, digits));
            if (!(here.reduce(common) == mu->reduce(common))) {
                rep.inconsistent = true;
                rep.ok = false;
                rep.notes.push_back("no consistent mu: constraint at u^" + std::to_string(c.index) +
                                    " contradicts an earlier one");
                return;
            }
        }
        if (e > digits) {
            mu = here;
            digits = e;
        }
    }
    if (!mu) {
        rep.notes.push_back("no constraint index below N");
        rep.ok = false;
        return;
    }
    rep.mu = mu;
    rep.k = digits;

    long needed = 0;
    for (long n = static_cast<long>(p); n < N; n += static_cast<long>(p)) {
        const C &t = T[static_cast<std::size_t>(n)];
        if (view.decidable(t) && view.val(t) < 0) {
            needed = std::max(needed, -view.val(t));
        }
    }
    if (needed > static_cast<long>(digits)) {
        rep.notes.push_back("mu is known mod p^" + std::to_string(digits) + " but p^" + std::to_string(needed) +
                            " is needed below N");
    }

    const C mut = view.lift(*mu);
    std::vector<C> corrected(R.size(), d.zero);
    for (std::size_t n = 0; n < R.size(); ++n) {
        corrected[n] = R[n] - mut * T[n];
    }
    const ValuationScan s = scan(corrected, view);
    rep.first_violation = s.first;
    rep.earliest_violation = s.earliest;
    rep.undecidable = s.undecidable;
    if (s.undecidable > 0) {
        rep.notes.push_back(std::to_string(s.undecidable) + " coefficients exhausted the p-adic precision");
    }
    rep.ok = !s.first && s.undecidable == 0 && needed <= static_cast<long>(digits);
}

std::vector<int> places_for(const PlaceContext &probe, const VerifyOptions &opt)
{
    std::vector<int> out;
    const int count = probe.place_count();
    if (opt.places.empty()) {
        for (int i = 0; i < count; ++i) {
            out.push_back(i);
        }
        return out;
    }
    for (int i : opt.places) {
        if (i >= 0 && i < count) {
            out.push_back(i);
        }
    }
    return out;
}

template <class Fn>
std::vector<VerificationReport> per_place(const CurveModel &curve, const WeierstrassExpansion *ex,
                                          const QuadRat &A, unsigned long p, PrimeClass cls,
                                          const VerifyOptions &opt, Fn check)
{
    if (opt.domain == Domain::exact && ex == nullptr) {
        throw std::invalid_argument("exact domain needs an expansion");
    }
    const PlaceContext probe = PlaceContext::make(curve.field, curve.dK, curve.conductor, p, 1, 0);
    std::vector<VerificationReport> out;
    for (int place : places_for(probe, opt)) {
        const PlaceContext ctx = PlaceContext::make(curve.field, curve.dK, curve.conductor, p, 1, place);
        VerificationReport rep;
        rep.p = p;
        rep.cls = cls;
        rep.place = probe.place_count() > 1 ? place : -1;
        rep.domain = opt.domain;
        rep.N = opt.N;
        rep.lambda_input = A;
        if (opt.domain == Domain::exact) {
            const ExactView view{ctx};
            check(rep, exact_data(*ex, ctx, &A, opt.N), view);
        } else {
            const auto ring = PadicRing::make(ctx);
            const FastView view{ring};
            check(rep, fast_data(curve, *ring, &A, opt.N), view);
        }
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace

std::vector<VerificationReport> verify_lambda_ordinary(const CurveModel &curve, const WeierstrassExpansion *ex,
                                                       const QuadRat &A, unsigned long p, const VerifyOptions &opt)
{
    if (classify_prime(curve, p) != PrimeClass::ordinary) {
        throw std::invalid_argument("verify_lambda_ordinary: p = " + std::to_string(p) + " is not ordinary");
    }
    return per_place(curve, ex, A, p, PrimeClass::ordinary, opt, [&](auto &rep, const auto &d, const auto &view) {
        verify_ordinary_place(rep, d, view, p, opt.k);
    });
}

std::vector<VerificationReport> solve_mu_supersingular(const CurveModel &curve, const WeierstrassExpansion *ex,
                                                       const QuadRat &A, unsigned long p, const VerifyOptions &opt)
{
    if (classify_prime(curve, p) != PrimeClass::supersingular) {
        throw std::invalid_argument("solve_mu_supersingular: p = " + std::to_string(p) + " is not supersingular");
    }
    return per_place(curve, ex, A, p, PrimeClass::supersingular, opt,
                     [&](auto &rep, const auto &d, const auto &view) { verify_supersingular_place(rep, d, view, p, opt); });
}

LambdaRecovery recover_lambda(const CurveModel &curve, const WeierstrassExpansion *ex, unsigned long p, unsigned k,
                              Domain domain, long N)
{
    if (classify_prime(curve, p) != PrimeClass::ordinary) {
        throw std::invalid_argument("recover_lambda: p = " + std::to_string(p) + " is not ordinary");
    }
    if (k < 1) {
        throw std::invalid_argument("recover_lambda: k must be at least 1");
    }
    const long need = power(p, k).get_si() + 1;
    if (N == 0) {
        N = domain == Domain::exact && ex != nullptr ? ex->N : need;
    }
    if (N < need) {
        throw std::invalid_argument("recover_lambda: N must exceed p^k");
    }
    if (domain == Domain::exact && ex == nullptr) {
        throw std::invalid_argument("exact domain needs an expansion");
    }
    const PlaceContext probe = PlaceContext::make(curve.field, curve.dK, curve.conductor, p, k, 0);
    LambdaRecovery out;
    out.p = p;
    out.k = k;
    for (int place = 0; place < probe.place_count(); ++place) {
        const PlaceContext ctx = PlaceContext::make(curve.field, curve.dK, curve.conductor, p, k, place);
        if (domain == Domain::exact) {
            out.per_place.push_back(lambda_at_place(exact_data(*ex, ctx, nullptr, N), ExactView{ctx}, p, k));
        } else {
            const auto ring = PadicRing::make(ctx);
            out.per_place.push_back(lambda_at_place(fast_data(curve, *ring, nullptr, N), FastView{ring}, p, k));
        }
    }
    if (probe.place_count() == 2) {
        out.coordinates = combine_split_places(out.per_place[0].a(), out.per_place[1].a(), probe, k);
    } else if (probe.inert()) {
        out.coordinates = out.per_place[0];
    } else {
        const ModQuad &r = out.per_place[0];
        out.coordinates = ModQuad(r.a(), 0, r.modulus(), curve.field);
    }
    return out;
}

Reconstruction reconstruct_lambda(const std::vector<LambdaRecovery> &residues, QuadField field, const Integer &bound)
{
    if (residues.empty()) {
        throw std::invalid_argument("reconstruct_lambda: no residues");
    }
    std::vector<Congruence> as;
    std::vector<Congruence> bs;
    for (const LambdaRecovery &r : residues) {
        as.push_back({r.coordinates.a(), r.coordinates.modulus()});
        bs.push_back({r.coordinates.b(), r.coordinates.modulus()});
    }
    Reconstruction out;
    out.a = crt_combine(as);
    out.b = crt_combine(bs);
    const auto a = rational_reconstruction(out.a.value, out.a.modulus, bound);
    const auto b = rational_reconstruction(out.b.value, out.b.modulus, bound);
    if (a && b) {
        out.value = QuadRat(*a, *b, field);
    }
    return out;
}

ClassifierVerdicts classifier_verdicts(const CurveModel &curve, const WeierstrassExpansion &ex, unsigned long p)
{
    if (classify_prime(curve, p) == PrimeClass::bad) {
        throw std::invalid_argument("classifier_verdicts: bad prime");
    }
    ClassifierVerdicts v;
    v.p = p;
    v.by_kronecker = kronecker(curve.dK, static_cast<long>(p)) == -1;
    const PlaceContext probe = PlaceContext::make(curve.field, curve.dK, curve.conductor, p, 1, 0);
    v.by_point_count = true;
    v.by_log_coefficient = true;
    const QuadRat bp = ex.b(static_cast<long>(p));
    for (int place = 0; place < probe.place_count(); ++place) {
        const PlaceContext ctx = PlaceContext::make(curve.field, curve.dK, curve.conductor, p, 1, place);
        v.by_point_count = v.by_point_count && count_points_ap(curve, p, place) % static_cast<long>(p) == 0;
        v.by_log_coefficient = v.by_log_coefficient && ExactView{ctx}.val(bp) >= 1;
    }
    return v;
}

std::vector<VerificationReport> verify_theorem(const CurveModel &curve, const WeierstrassExpansion *ex,
                                               const QuadRat &A, unsigned long p, const VerifyOptions &opt)
{
    const PrimeClass cls = classify_prime(curve, p);
    if (cls == PrimeClass::bad) {
        VerificationReport rep;
        rep.p = p;
        rep.cls = cls;
        rep.domain = opt.domain;
        rep.N = opt.N;
        rep.lambda_input = A;
        rep.ok = true;
        rep.notes.push_back("bad prime: nothing to verify");
        return {rep};
    }
    if (cls == PrimeClass::ordinary) {
        return verify_lambda_ordinary(curve, ex, A, p, opt);
    }
    return solve_mu_supersingular(curve, ex, A, p, opt);
}

std::vector<VerificationReport> verify_primes(const CurveModel &curve, const WeierstrassExpansion *ex,
                                              const QuadRat &A, const std::vector<unsigned long> &primes,
                                              const VerifyOptions &opt)
{
    std::vector<unsigned long> ps = primes;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::vector<std::vector<VerificationReport>> results(ps.size());
    std::vector<std::exception_ptr> errors(ps.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ps.size(); i = next++) {
            try {
                results[i] = verify_theorem(curve, ex, A, ps[i], opt);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto nthreads = static_cast<unsigned>(std::min<std::size_t>(hw, ps.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < nthreads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    std::vector<VerificationReport> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        for (auto &r : results[i]) {
            out.push_back(std::move(r));
        }
    }
    return out;
}

} // namespace cmzeta
