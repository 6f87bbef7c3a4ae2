#pragma once

// Verification of the p-adic weight-2 Eisenstein value.  With
// z(u) = zeta(l(u)) - 1/u - d0 and R = z - A l, the value A is the p-adic
// one when R - mu T is p-integral, where T = (1/p) l^phi(u^p) and mu = 0
// at ordinary primes.
//
// Every check runs in one of two coefficient domains: the exact one
// (QuadRat, from a shared WeierstrassExpansion) or the fast one
// (PadicScaled, recomputed per prime and place by the formal-group route).

#include <optional>
#include <string>
#include <vector>

#include "cmzeta/exactnum.hpp"
#include "cmzeta/series.hpp"
#include "cmzeta/weierstrass.hpp"

namespace cmzeta {

enum class PrimeClass { bad, ordinary, supersingular };
enum class Domain { exact, fast };

std::string to_string(PrimeClass c);
std::string to_string(Domain d);

/// bad when p <= 3, p divides norm(disc), disc(field), dK*f, or a
/// denominator of g2, g3; otherwise by the Kronecker symbol (dK/p).
PrimeClass classify_prime(const CurveModel &curve, unsigned long p);

/// q + 1 - #E(F_q) by brute force, q = p at a split place (place index as
/// in PlaceContext) and q = p^2 at an inert prime.
long count_points_ap(const CurveModel &curve, unsigned long p, int place = 0);

struct ClassifierVerdicts {
    unsigned long p = 0;
    bool by_kronecker = false;  // supersingular?
    bool by_point_count = false;
    bool by_log_coefficient = false; // vp(b(p)) >= 1 at every place
    bool agree() const { return by_kronecker == by_point_count && by_point_count == by_log_coefficient; }
};

ClassifierVerdicts classifier_verdicts(const CurveModel &curve, const WeierstrassExpansion &ex, unsigned long p);

struct Violation {
    long index = 0;
    long valuation = 0;
};

struct VerificationReport {
    unsigned long p = 0;
    PrimeClass cls = PrimeClass::bad;
    int place = -1; // -1 when there is a single place above p
    Domain domain = Domain::exact;
    long N = 0;
    unsigned k = 0; // p-adic precision actually used
    std::optional<QuadRat> lambda_input;
    std::optional<ModQuad> lambda_recovered;
    std::optional<ModQuad> mu;
    bool ok = false;
    bool inconsistent = false;
    long terms_checked = 0;
    // first index attaining the minimal negative valuation
    std::optional<Violation> first_violation;
    // smallest index with negative valuation
    std::optional<Violation> earliest_violation;
    // supersingular only: the same for R before subtracting mu T
    std::optional<Violation> pre_correction_violation;
    long undecidable = 0; // fast domain: coefficients whose integrality is unknown
    std::vector<std::string> notes;

    std::string mu_string() const;
};

struct VerifyOptions {
    long N = 500;
    unsigned k = 2;
    Domain domain = Domain::exact;
    std::vector<int> places; // empty: every place above p
    bool reverse_constraint_order = false;
};

/// z(u) - A l(u) modulo u^N with z = zeta(l) - 1/u - d0.
TruncatedSeries<QuadRat> residual_series(const WeierstrassExpansion &ex, const QuadRat &A, long N);

/// (1/p) l^phi(u^p) modulo u^N.
TruncatedSeries<QuadRat> frobenius_log_term(const WeierstrassExpansion &ex, const PlaceContext &ctx, long N);

/// Valuation scan of a coefficient range at a place.
struct ValuationScan {
    std::optional<Violation> first;    // first index attaining the minimum
    std::optional<Violation> earliest; // first negative index
    long undecidable = 0;
};

/// Integrality of R at each requested place (ordinary primes only).
std::vector<VerificationReport> verify_lambda_ordinary(const CurveModel &curve, const WeierstrassExpansion *ex,
                                                       const QuadRat &A, unsigned long p, const VerifyOptions &opt);

/// Solves for mu and verifies R - mu T (supersingular primes only).
std::vector<VerificationReport> solve_mu_supersingular(const CurveModel &curve, const WeierstrassExpansion *ex,
                                                       const QuadRat &A, unsigned long p, const VerifyOptions &opt);

struct LambdaRecovery {
    unsigned long p = 0;
    unsigned k = 0;
    ModQuad coordinates; // a + b w modulo p^k
    std::vector<ModQuad> per_place;
};

/// lambda modulo p^k from the constraints at u^(p^j), j = 1..k, at every
/// place above an ordinary p, mapped back to coordinates.  Throws
/// InconsistencyError when the congruences contradict each other.
LambdaRecovery recover_lambda(const CurveModel &curve, const WeierstrassExpansion *ex, unsigned long p, unsigned k,
                              Domain domain = Domain::exact, long N = 0);

struct Reconstruction {
    Congruence a;
    Congruence b;
    std::optional<QuadRat> value;
};

/// CRT over the recovered residues and rational reconstruction of both
/// coordinates with the given height bound.
Reconstruction reconstruct_lambda(const std::vector<LambdaRecovery> &residues, QuadField field, const Integer &bound);

/// Dispatch on the classification of p.
std::vector<VerificationReport> verify_theorem(const CurveModel &curve, const WeierstrassExpansion *ex,
                                               const QuadRat &A, unsigned long p, const VerifyOptions &opt);

/// verify_theorem over several primes, in parallel, ordered by (p, place).
std::vector<VerificationReport> verify_primes(const CurveModel &curve, const WeierstrassExpansion *ex,
                                              const QuadRat &A, const std::vector<unsigned long> &primes,
                                              const VerifyOptions &opt);

/// Largest j with p^(2j-1) < N (supersingular precision reachable with N terms).
unsigned supersingular_precision(unsigned long p, long N);
/// Largest j with p^j < N.
unsigned ordinary_precision(unsigned long p, long N);

class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cmzeta
