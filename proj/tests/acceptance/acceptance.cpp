// Acceptance run for the cm15 fixture.  Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.  Criterion 8 runs the property
// suites compiled into this binary.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "cmzeta/analytic.hpp"
#include "cmzeta/eisenstein.hpp"

using namespace cmzeta;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const CurveModel &cm15()
{
    static const CurveModel c = builtin_curve("cm15");
    return c;
}

QuadRat q(const std::string &text) { return QuadRat::parse(text, cm15().field); }

const QuadRat &A()
{
    static const QuadRat a = q("13/2 + 21/2*w");
    return a;
}

// The N = 500 exact expansion on the default route, built once.
double expansion_seconds = 0;
const WeierstrassExpansion &ex500()
{
    static const WeierstrassExpansion ex = [] {
        const auto t0 = Clock::now();
        WeierstrassExpansion e = expand(cm15(), 500);
        expansion_seconds = seconds_since(t0);
        return e;
    }();
    return ex;
}

VerifyOptions options(Domain d, long N = 500, unsigned k = 2)
{
    VerifyOptions o;
    o.N = N;
    o.k = k;
    o.domain = d;
    return o;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

Outcome golden_expansions()
{
    Outcome o;
    const auto t0 = Clock::now();
    const WeierstrassExpansion ex = expand(cm15(), 20);
    o.require(ex.cs[2] == q("711/2 + 2301/4*w"), "c2");
    o.require(ex.cs[3] == q("220465/28 + 12740*w"), "c3");
    const char *zeta[] = {"-237/2 - 767/4*w",          "-6299/4 - 2548*w",          "-2438895/112 - 563745/16*w",
                          "-2455225/8 - 7945275/16*w", "-1517389435/352 - 6974965*w", "-25264737675/416 - 3144554175/32*w"};
    const char *log[] = {"-711 - 2301/2*w", "-94485/4 - 38220*w", "60972375/8 + 98655375/8*w",
                         "1288993125/2 + 4171269375/4*w", "-200868706875/2 - 162506197500*w"};
    for (int i = 0; i < 6; ++i) {
        o.require(ex.zeta[3 + 2 * i] == q(zeta[i]), "zeta z^" + std::to_string(3 + 2 * i));
    }
    for (int i = 0; i < 5; ++i) {
        o.require(ex.log[5 + 2 * i] == q(log[i]), "log t^" + std::to_string(5 + 2 * i));
    }
    const double t = seconds_since(t0);
    o.require(t < 1.0, "runtime under 1 s");
    o.detail << " c2, c3, 6 zeta and 5 log coefficients at N=20 in " << t << " s";
    return o;
}

Outcome fixture_sanity()
{
    Outcome o;
    const CurveModel &c = cm15();
    o.require(c.j_invariant() == q("-52515 - 85995*w"), "j");
    o.require(c.norm_discriminant() == Rational(ipow(Integer(2), 12) * ipow(Integer(3), 6) * ipow(Integer(5), 6)),
              "norm of the discriminant");
    o.detail << " j = " << c.j_invariant().to_string() << ", norm(disc) = " << c.norm_discriminant().get_str();
    return o;
}

Outcome ordinary_integrality()
{
    Outcome o;
    std::vector<unsigned long> ordinary;
    for (unsigned long p = 7; p < 200; p += 2) {
        if (is_probable_prime(Integer(p)) && classify_prime(cm15(), p) == PrimeClass::ordinary) {
            ordinary.push_back(p);
        }
    }
    const auto t0 = Clock::now();
    const WeierstrassExpansion &ex = ex500();
    const auto reports = verify_primes(cm15(), &ex, A(), ordinary, options(Domain::exact));
    const double exact_t = seconds_since(t0);
    long places = 0;
    for (const auto &r : reports) {
        ++places;
        o.require(r.ok && r.terms_checked == 500, "exact p=" + std::to_string(r.p) + " place " + std::to_string(r.place));
    }
    o.require(exact_t <= 15 * 60, "exact domain within 15 min");

    double worst = 0;
    for (unsigned long p : ordinary) {
        const auto t1 = Clock::now();
        for (const auto &r : verify_theorem(cm15(), nullptr, A(), p, options(Domain::fast))) {
            o.require(r.ok && r.undecidable == 0, "fast p=" + std::to_string(p));
        }
        worst = std::max(worst, seconds_since(t1));
    }
    o.require(worst <= 10, "fast domain within 10 s per prime");
    o.detail << " " << ordinary.size() << " ordinary primes in (5, 200), " << places
             << " places, N=500; exact " << exact_t << " s (expansion " << expansion_seconds
             << " s), fast worst " << worst << " s per prime";
    return o;
}

Outcome supersingular_mu()
{
    Outcome o;
    const auto reports = solve_mu_supersingular(cm15(), &ex500(), A(), 7, options(Domain::exact));
    o.require(reports.size() == 1, "one place above 7");
    for (const auto &r : reports) {
        o.require(r.pre_correction_violation && r.pre_correction_violation->index == 343 &&
                      r.pre_correction_violation->valuation == -2,
                  "pre-correction violation (343, -2)");
        o.require(r.mu && r.mu_string() == "47 mod 7^2", "mu = 47 mod 49");
        o.require(r.ok && !r.first_violation && r.terms_checked == 500, "integral after correction");
        if (r.pre_correction_violation) {
            o.detail << " pre-correction (" << r.pre_correction_violation->index << ", "
                     << r.pre_correction_violation->valuation << "),";
        }
        o.detail << " mu = " << (r.mu ? r.mu_string() : "none") << ", " << r.terms_checked << " terms checked";
    }
    return o;
}

Outcome recovery()
{
    Outcome o;
    const LambdaRecovery r17 = recover_lambda(cm15(), &ex500(), 17, 2);
    const LambdaRecovery r19 = recover_lambda(cm15(), &ex500(), 19, 1);
    const Reconstruction rec = reconstruct_lambda({r17, r19}, cm15().field, Integer(25));
    o.require(rec.value.has_value(), "reconstruction found");
    o.require(rec.value && *rec.value == A(), "equals the verified A");
    o.detail << " 17^2: " << r17.coordinates.to_string() << ", 19: " << r19.coordinates.to_string()
             << ", bound 25 -> " << (rec.value ? rec.value->to_string() : "none");
    return o;
}

Outcome analytic_crosscheck()
{
    Outcome o;
    std::array<double, 2> v{};
    const double im[] = {0.96824583655185422, 1.9364916731037084};
    for (int k = 0; k < 2; ++k) {
        const EmbeddingContext e = periods(cm15(), k);
        const Complex a = analytic_A(e);
        v[k] = a.real();
        const double diff = std::abs(a - Complex(embed_real(A(), k), 0));
        o.require(diff < 1e-8, "A at embedding " + std::to_string(k));
        o.require(std::abs(e.tau.imag() - im[k]) < 1e-10, "tau at embedding " + std::to_string(k));
        o.detail << " emb" << k << ": |A - A_alg| = " << diff << ", Im tau = " << e.tau.imag() << ";";
    }
    const auto rec = recognize_quad(v[0], v[1], cm15().field, 1000);
    o.require(rec && *rec == A(), "recognition");
    o.detail << " recognized " << (rec ? rec->to_string() : "none");
    return o;
}

Outcome classifier_agreement()
{
    Outcome o;
    const WeierstrassExpansion ex = expand(cm15(), 50, ZetaRoute::formal_group);
    int good = 0;
    for (unsigned long p = 2; p < 50; ++p) {
        if (!is_probable_prime(Integer(p)) || classify_prime(cm15(), p) == PrimeClass::bad) {
            continue;
        }
        ++good;
        const ClassifierVerdicts v = classifier_verdicts(cm15(), ex, p);
        o.require(v.agree(), "p=" + std::to_string(p));
        o.require(v.by_kronecker == (classify_prime(cm15(), p) == PrimeClass::supersingular),
                  "classification of p=" + std::to_string(p));
    }
    o.detail << " " << good << " good primes below 50";
    return o;
}

Outcome property_suites()
{
    Outcome o;
    doctest::Context ctx;
    ctx.setOption("no-colors", true);
    std::ostringstream sink;
    ctx.setCout(&sink);
    const int rc = ctx.run();
    o.require(rc == 0, "doctest suites");
    if (rc != 0) {
        std::cerr << sink.str();
    }
    std::string summary;
    std::istringstream lines(sink.str());
    for (std::string line; std::getline(lines, line);) {
        if (line.find("test cases:") != std::string::npos || line.find("assertions:") != std::string::npos) {
            summary += line.substr(line.find(']') + 1);
        }
    }
    o.detail << " series, exact arithmetic, p-adic and formal group suites;" << summary;
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"golden expansions", golden_expansions},
        {"fixture sanity", fixture_sanity},
        {"ordinary integrality", ordinary_integrality},
        {"supersingular mu at 7", supersingular_mu},
        {"recovery of A", recovery},
        {"analytic cross-check", analytic_crosscheck},
        {"classifier agreement", classifier_agreement},
        {"property suites", property_suites},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " --"
                  << o.detail.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
