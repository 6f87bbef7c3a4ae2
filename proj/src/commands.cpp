#include "cmzeta/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cmzeta/analytic.hpp"
#include "cmzeta/eisenstein.hpp"

namespace cmzeta {

namespace {

using Json = nlohmann::ordered_json;

void emit(const JobConfig &cfg, std::ostream &out, const std::string &text)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot write '" + cfg.out + "'");
    }
    f << text;
}

void emit_json(const JobConfig &cfg, std::ostream &out, const Json &doc)
{
    emit(cfg, out, doc.dump(2) + "\n");
}

void flush_warnings(JobConfig &cfg, std::ostream &err)
{
    for (const auto &w : cfg.warnings) {
        err << "warning: " << w << '\n';
    }
    cfg.warnings.clear();
}

Json curve_json(const CurveModel &c)
{
    return Json{{"name", c.name},
                {"field", {{"s", c.field.s}, {"t", c.field.t}}},
                {"g2", c.g2.to_string()},
                {"g3", c.g3.to_string()},
                {"dK", c.dK},
                {"f", c.conductor},
                {"discriminant", c.discriminant().to_string()},
                {"j", c.j_invariant().to_string()}};
}

Json violation_json(const std::optional<Violation> &v)
{
    if (!v) {
        return nullptr;
    }
    return Json::array({v->index, v->valuation});
}

std::string residue_string(const ModQuad &x, unsigned long p, unsigned k)
{
    return x.lift().to_string() + " mod " + std::to_string(p) + "^" + std::to_string(k);
}

Json report_json(const VerificationReport &r)
{
    Json j;
    j["p"] = r.p;
    j["class"] = to_string(r.cls);
    j["place"] = r.place < 0 ? Json(nullptr) : Json(r.place);
    j["domain"] = to_string(r.domain);
    j["N"] = r.N;
    j["k"] = r.k;
    j["mu"] = r.mu ? Json(r.mu_string()) : Json(nullptr);
    j["lambda"] = r.lambda_recovered ? Json(residue_string(*r.lambda_recovered, r.p, r.k)) : Json(nullptr);
    j["ok"] = r.ok;
    j["first_violation"] = violation_json(r.first_violation);
    j["earliest_violation"] = violation_json(r.earliest_violation);
    if (r.cls == PrimeClass::supersingular) {
        j["pre_correction_violation"] = violation_json(r.pre_correction_violation);
    }
    j["terms_checked"] = r.terms_checked;
    if (r.domain == Domain::fast) {
        j["undecidable"] = r.undecidable;
    }
    j["notes"] = r.notes;
    return j;
}

std::vector<unsigned long> job_primes(const JobConfig &cfg)
{
    if (cfg.primes_text.empty()) {
        throw ConfigError("no primes given");
    }
    auto primes = job_prime_set(cfg.curve, cfg.primes_text, cfg.filter);
    if (primes.empty()) {
        throw ConfigError("the prime selection '" + cfg.primes_text + "' is empty after filtering");
    }
    return primes;
}

bool any_good(const CurveModel &curve, const std::vector<unsigned long> &primes)
{
    for (unsigned long p : primes) {
        if (classify_prime(curve, p) != PrimeClass::bad) {
            return true;
        }
    }
    return false;
}

std::vector<Domain> domains(DomainChoice d)
{
    switch (d) {
    case DomainChoice::exact:
        return {Domain::exact};
    case DomainChoice::fast:
        return {Domain::fast};
    case DomainChoice::both:
        break;
    }
    return {Domain::exact, Domain::fast};
}

bool same_outcome(const VerificationReport &x, const VerificationReport &y)
{
    auto same_v = [](const std::optional<Violation> &a, const std::optional<Violation> &b) {
        return a.has_value() == b.has_value() && (!a || (a->index == b->index && a->valuation == b->valuation));
    };
    auto same_m = [](const std::optional<ModQuad> &a, const std::optional<ModQuad> &b) {
        return a.has_value() == b.has_value() && (!a || *a == *b);
    };
    return x.p == y.p && x.place == y.place && x.ok == y.ok && x.k == y.k && same_m(x.mu, y.mu) &&
           same_m(x.lambda_recovered, y.lambda_recovered) && same_v(x.first_violation, y.first_violation);
}

struct RecoverOutcome {
    std::vector<LambdaRecovery> residues;
    Reconstruction reconstruction;
    Integer bound;
    bool domains_agree = true;
};

Integer admissible_bound(const Integer &m)
{
    // largest B with m > 2 B^2
    Integer b = sqrt(Integer((m - 1) / 2));
    while (2 * b * b >= m && b > 0) {
        --b;
    }
    return b;
}

RecoverOutcome run_recover(JobConfig &cfg, const std::vector<unsigned long> &primes, long N)
{
    std::vector<unsigned long> ordinary;
    for (unsigned long p : primes) {
        if (classify_prime(cfg.curve, p) == PrimeClass::ordinary) {
            ordinary.push_back(p);
        }
    }
    if (ordinary.empty()) {
        throw ConfigError("recovering A needs at least one ordinary prime");
    }
    std::optional<WeierstrassExpansion> ex;
    if (cfg.domain != DomainChoice::fast) {
        ex = expand(cfg.curve, N);
    }
    RecoverOutcome out;
    for (unsigned long p : ordinary) {
        const unsigned k = std::min(cfg.k, ordinary_precision(p, N));
        if (k == 0) {
            cfg.warnings.push_back("p = " + std::to_string(p) + " skipped: N = " + std::to_string(N) +
                                   " does not exceed p");
            continue;
        }
        if (k < cfg.k) {
            cfg.warnings.push_back("k lowered to " + std::to_string(k) + " at p = " + std::to_string(p));
        }
        std::optional<LambdaRecovery> first;
        for (Domain d : domains(cfg.domain)) {
            LambdaRecovery r = recover_lambda(cfg.curve, ex ? &*ex : nullptr, p, k, d, N);
            if (!first) {
                first = r;
            } else if (!(first->coordinates == r.coordinates)) {
                out.domains_agree = false;
            }
        }
        out.residues.push_back(*first);
    }
    if (out.residues.empty()) {
        throw ConfigError("no ordinary prime is below N");
    }
    Integer m = 1;
    for (const auto &r : out.residues) {
        m *= r.coordinates.modulus();
    }
    out.bound = cfg.bound > 0 ? Integer(cfg.bound) : admissible_bound(m);
    if (2 * out.bound * out.bound >= m) {
        cfg.warnings.push_back("bound " + out.bound.get_str() + " is too large for modulus " + m.get_str() +
                               "; no reconstruction attempted");
        std::vector<Congruence> as;
        std::vector<Congruence> bs;
        for (const auto &r : out.residues) {
            as.push_back({r.coordinates.a(), r.coordinates.modulus()});
            bs.push_back({r.coordinates.b(), r.coordinates.modulus()});
        }
        out.reconstruction.a = crt_combine(as);
        out.reconstruction.b = crt_combine(bs);
    } else {
        out.reconstruction = reconstruct_lambda(out.residues, cfg.curve.field, out.bound);
    }
    return out;
}

Json recover_json(const RecoverOutcome &r)
{
    Json residues = Json::array();
    for (const auto &x : r.residues) {
        Json places = Json::array();
        for (const auto &pp : x.per_place) {
            places.push_back(pp.a().get_str() + " mod " + std::to_string(x.p) + "^" + std::to_string(x.k));
        }
        residues.push_back(
            {{"p", x.p}, {"k", x.k}, {"residue", residue_string(x.coordinates, x.p, x.k)}, {"places", places}});
    }
    const auto &rc = r.reconstruction;
    return Json{{"residues", residues},
                {"crt",
                 {{"a", rc.a.value.get_str() + " mod " + rc.a.modulus.get_str()},
                  {"b", rc.b.value.get_str() + " mod " + rc.b.modulus.get_str()}}},
                {"bound", r.bound.get_str()},
                {"recovered", rc.value ? Json(rc.value->to_string()) : Json(nullptr)}};
}

int verify_job(JobConfig cfg, std::vector<unsigned long> primes, std::ostream &out, std::ostream &err)
{
    const long N = effective_N(cfg, primes);
    Json doc;
    doc["curve"] = curve_json(cfg.curve);
    int code = exit_ok;
    if (cfg.recover_A) {
        const RecoverOutcome r = run_recover(cfg, primes, N);
        doc["recovery"] = recover_json(r);
        if (!r.domains_agree) {
            code = exit_inconsistent;
        }
        if (!r.reconstruction.value) {
            doc["A"] = nullptr;
            doc["N"] = N;
            doc["k"] = cfg.k;
            doc["domain"] = to_string(cfg.domain);
            doc["results"] = Json::array();
            flush_warnings(cfg, err);
            err << "error: A could not be reconstructed from the residues\n";
            emit_json(cfg, out, doc);
            return code == exit_ok ? exit_failure : code;
        }
        cfg.A = r.reconstruction.value;
    }
    if (!cfg.A) {
        throw ConfigError("no value of A given");
    }
    doc["A"] = cfg.A->to_string();
    doc["N"] = N;
    doc["k"] = cfg.k;
    doc["domain"] = to_string(cfg.domain);

    std::optional<WeierstrassExpansion> ex;
    if (cfg.domain != DomainChoice::fast && any_good(cfg.curve, primes)) {
        ex = expand(cfg.curve, N);
    }
    VerifyOptions opt;
    opt.N = N;
    opt.k = cfg.k;
    opt.places = cfg.places;

    std::vector<std::vector<VerificationReport>> runs;
    for (Domain d : domains(cfg.domain)) {
        opt.domain = d;
        runs.push_back(verify_primes(cfg.curve, ex ? &*ex : nullptr, *cfg.A, primes, opt));
    }
    bool all_ok = true;
    bool inconsistent = code == exit_inconsistent;
    Json results = Json::array();
    for (const auto &run : runs) {
        for (const auto &r : run) {
            results.push_back(report_json(r));
            all_ok = all_ok && r.ok;
            inconsistent = inconsistent || r.inconsistent;
        }
    }
    if (runs.size() == 2) {
        bool agree = runs[0].size() == runs[1].size();
        for (std::size_t i = 0; agree && i < runs[0].size(); ++i) {
            agree = same_outcome(runs[0][i], runs[1][i]);
        }
        doc["domains_agree"] = agree;
        if (!agree) {
            inconsistent = true;
            err << "error: exact and fast domains disagree\n";
        }
    }
    doc["results"] = results;
    flush_warnings(cfg, err);
    emit_json(cfg, out, doc);
    if (inconsistent) {
        return exit_inconsistent;
    }
    return all_ok ? exit_ok : exit_failure;
}

} // namespace

int cmd_expand(JobConfig cfg, std::ostream &out, std::ostream &err)
{
    const long N = cfg.N;
    const WeierstrassExpansion ex = expand(cfg.curve, N);
    // c_n sits at z^(2n-2), so c_2 .. c_m with 2m - 2 < N
    std::vector<QuadRat> c;
    for (long n = 2; n < static_cast<long>(ex.cs.size()) && 2 * n - 2 < N; ++n) {
        c.push_back(ex.cs[n]);
    }
    const TruncatedSeries<QuadRat> cs(2, 2 + static_cast<long>(c.size()), c, QuadRat());
    std::string text = "# curve " + cfg.curve.name + "\n";
    text += series_to_text(cs, "c");
    text += series_to_text(ex.wp, "wp");
    text += series_to_text(ex.zeta, "zeta");
    text += series_to_text(ex.log.truncated(N), "log");
    text += series_to_text(ex.zeta_of_log.truncated(N), "zeta_of_log");
    flush_warnings(cfg, err);
    emit(cfg, out, text);
    return exit_ok;
}

int cmd_classify(JobConfig cfg, std::ostream &out, std::ostream &err)
{
    if (cfg.primes_text.empty()) {
        throw ConfigError("no primes given");
    }
    const auto primes = job_prime_set(cfg.curve, cfg.primes_text, cfg.filter);
    long N = 2;
    for (unsigned long p : primes) {
        N = std::max(N, static_cast<long>(p) + 1);
    }
    std::optional<WeierstrassExpansion> ex;
    if (any_good(cfg.curve, primes)) {
        ex = expand(cfg.curve, N, ZetaRoute::formal_group);
    }
    Json results = Json::array();
    bool agree = true;
    for (unsigned long p : primes) {
        const PrimeClass cls = classify_prime(cfg.curve, p);
        Json j{{"p", p}, {"class", to_string(cls)}};
        if (cls != PrimeClass::bad) {
            const ClassifierVerdicts v = classifier_verdicts(cfg.curve, *ex, p);
            const PlaceContext probe = PlaceContext::make(cfg.curve.field, cfg.curve.dK, cfg.curve.conductor, p, 1);
            Json aps = Json::array();
            for (int place = 0; place < probe.place_count(); ++place) {
                aps.push_back(count_points_ap(cfg.curve, p, place));
            }
            j["kronecker"] = kronecker(cfg.curve.dK, static_cast<long>(p));
            j["a_p"] = aps;
            j["supersingular"] = {{"kronecker", v.by_kronecker},
                                  {"point_count", v.by_point_count},
                                  {"log_coefficient", v.by_log_coefficient}};
            j["agree"] = v.agree();
            if (!v.agree()) {
                agree = false;
                err << "error: classifiers disagree at p = " << p << '\n';
            }
        }
        results.push_back(j);
    }
    flush_warnings(cfg, err);
    emit_json(cfg, out, Json{{"curve", curve_json(cfg.curve)}, {"results", results}});
    return agree ? exit_ok : exit_inconsistent;
}

int cmd_verify(JobConfig cfg, std::ostream &out, std::ostream &err)
{
    const auto primes = job_primes(cfg);
    return verify_job(std::move(cfg), primes, out, err);
}

int cmd_solve_mu(JobConfig cfg, std::ostream &out, std::ostream &err)
{
    std::vector<unsigned long> ss;
    for (unsigned long p : job_primes(cfg)) {
        if (classify_prime(cfg.curve, p) == PrimeClass::supersingular) {
            ss.push_back(p);
        } else {
            cfg.warnings.push_back("p = " + std::to_string(p) + " is not supersingular; skipped");
        }
    }
    if (ss.empty()) {
        throw ConfigError("solve-mu needs at least one supersingular prime");
    }
    if (cfg.recover_A) {
        throw ConfigError("solve-mu needs an explicit A");
    }
    return verify_job(std::move(cfg), ss, out, err);
}

int cmd_recover(JobConfig cfg, std::ostream &out, std::ostream &err)
{
    const auto primes = job_primes(cfg);
    long N = cfg.N;
    if (!cfg.N_explicit) {
        for (unsigned long p : primes) {
            if (classify_prime(cfg.curve, p) == PrimeClass::ordinary) {
                const Integer need = ipow(Integer(p), cfg.k) + 1;
                if (need.fits_slong_p() && need.get_si() > N && need.get_si() <= cfg.N_cap) {
                    N = need.get_si();
                }
            }
        }
        if (N != cfg.N) {
            cfg.warnings.push_back("N raised to " + std::to_string(N));
        }
    }
    const RecoverOutcome r = run_recover(cfg, primes, N);
    Json doc;
    doc["curve"] = curve_json(cfg.curve);
    doc["N"] = N;
    doc["domain"] = to_string(cfg.domain);
    const Json rec = recover_json(r);
    for (const auto &[key, value] : rec.items()) {
        doc[key] = value;
    }
    if (cfg.domain == DomainChoice::both) {
        doc["domains_agree"] = r.domains_agree;
    }
    flush_warnings(cfg, err);
    emit_json(cfg, out, doc);
    return r.domains_agree ? exit_ok : exit_inconsistent;
}

int cmd_analytic(JobConfig cfg, std::ostream &out, std::ostream &err)
{
    Json embeddings = Json::array();
    std::array<double, 2> values{};
    bool ok = true;
    for (int e = 0; e < 2; ++e) {
        const EmbeddingContext ctx = periods(cfg.curve, e);
        const Complex A = analytic_A(ctx);
        const Complex e2 = e2star(ctx.tau);
        values[e] = A.real();
        Json j{{"embedding", e},
               {"w", ctx.w_real},
               {"tau", {ctx.tau.real(), ctx.tau.imag()}},
               {"omega1", {ctx.omega1.real(), ctx.omega1.imag()}},
               {"omega2", {ctx.omega2.real(), ctx.omega2.imag()}},
               {"e2star", {e2.real(), e2.imag()}},
               {"A", {A.real(), A.imag()}}};
        if (cfg.A) {
            const double expected = embed_real(*cfg.A, e);
            j["A_expected"] = expected;
            const double diff = std::abs(A - Complex(expected, 0.0));
            j["difference"] = diff;
            ok = ok && diff < 1e-8 * std::max(1.0, std::abs(expected));
        }
        embeddings.push_back(j);
        if (cfg.curve.field.is_rational()) {
            break;
        }
    }
    const long bound = cfg.bound > 0 ? cfg.bound : 10000;
    std::optional<QuadRat> rec;
    if (cfg.curve.field.is_rational()) {
        if (auto r = recognize_rational(values[0], bound, 1e-8)) {
            rec = QuadRat(*r);
        }
    } else {
        rec = recognize_quad(values[0], values[1], cfg.curve.field, bound);
    }
    if (!rec) {
        ok = false;
        err << "error: A was not recognized with height bound " << bound << '\n';
    } else if (cfg.A && !(*rec == *cfg.A)) {
        ok = false;
    }
    Json doc{{"curve", curve_json(cfg.curve)},
             {"A", cfg.A ? Json(cfg.A->to_string()) : Json(nullptr)},
             {"embeddings", embeddings},
             {"recognized", rec ? Json(rec->to_string()) : Json(nullptr)},
             {"ok", ok}};
    flush_warnings(cfg, err);
    emit_json(cfg, out, doc);
    return ok ? exit_ok : exit_failure;
}

std::vector<std::string> command_names()
{
    return {"expand", "classify", "verify", "solve-mu", "recover", "analytic"};
}

int run_command(const std::string &name, const JobConfig &cfg, std::ostream &out, std::ostream &err)
{
    static const std::map<std::string, int (*)(JobConfig, std::ostream &, std::ostream &)> table{
        {"expand", cmd_expand}, {"classify", cmd_classify}, {"verify", cmd_verify},
        {"solve-mu", cmd_solve_mu}, {"recover", cmd_recover}, {"analytic", cmd_analytic}};
    const auto it = table.find(name);
    if (it == table.end()) {
        err << "error: unknown command '" << name << "'\n";
        return exit_config;
    }
    try {
        return it->second(cfg, out, err);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const InconsistencyError &e) {
        err << "error: " << e.what() << '\n';
        return exit_inconsistent;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return exit_inconsistent;
    }
}

} // namespace cmzeta
