#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cmzeta/commands.hpp"
#include "cmzeta/config.hpp"

using namespace cmzeta;
using Json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::string &cmd, const JobConfig &cfg)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(cmd, cfg, out, err);
    return {code, out.str(), err.str()};
}

JobConfig job(const std::string &primes, const std::string &A = "13/2 + 21/2*w")
{
    JobConfig cfg;
    cfg.primes_text = primes;
    if (!A.empty()) {
        set_A(cfg, A);
    }
    cfg.domain = DomainChoice::fast;
    return cfg;
}

} // namespace

TEST_CASE("prime specifications")
{
    CHECK(parse_primes("5..30") == std::vector<unsigned long>{5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(parse_primes("17, 7,17,4") == std::vector<unsigned long>{7, 17});
    CHECK(parse_primes("").empty());
    CHECK_THROWS_AS(parse_primes("7..x"), ConfigError);
    CHECK_THROWS_AS(parse_primes("30..5"), ConfigError);
    CHECK_THROWS_AS(parse_primes("-7"), ConfigError);
    const CurveModel c = builtin_curve("cm15");
    CHECK(job_prime_set(c, "2..30", PrimeFilter::all_good) == std::vector<unsigned long>{7, 11, 13, 17, 19, 23, 29});
    CHECK(job_prime_set(c, "2..30", PrimeFilter::ordinary) == std::vector<unsigned long>{17, 19, 23});
    CHECK(job_prime_set(c, "2..30", PrimeFilter::supersingular) == std::vector<unsigned long>{7, 11, 13, 29});
    CHECK(job_prime_set(c, "5", PrimeFilter::all_good) == std::vector<unsigned long>{5});
    CHECK(job_prime_set(c, "5,17", PrimeFilter::ordinary) == std::vector<unsigned long>{17});
    CHECK(parse_filter("all-good") == PrimeFilter::all_good);
    CHECK(parse_domain("padic-fast") == DomainChoice::fast);
    CHECK(parse_places("both").empty());
    CHECK(parse_places("1") == std::vector<int>{1});
    CHECK_THROWS_AS(parse_filter("good-ish"), ConfigError);
    CHECK_THROWS_AS(parse_domain("float"), ConfigError);
    CHECK_THROWS_AS(parse_places("2"), ConfigError);
}

TEST_CASE("TOML job files")
{
    JobConfig cfg;
    apply_config_text(cfg, R"(
[curve]
name = "explicit"
s = 1
t = 1
g2 = "7110 + 11505*w"
g3 = "220465 + 356720*w"
dK = -15

[job]
A = "13/2 + 21/2*w"
primes = [7, 17]
N = 300
k = 1
domain = "both"
places = "0"
bound = 25
)");
    CHECK(cfg.curve.name == "explicit");
    CHECK(cfg.curve.j_invariant().to_string() == "-52515 - 85995*w");
    REQUIRE(cfg.A);
    CHECK(cfg.A->to_string() == "13/2 + 21/2*w");
    CHECK(cfg.primes_text == "7,17");
    CHECK(cfg.N == 300);
    CHECK(cfg.N_explicit);
    CHECK(cfg.k == 1);
    CHECK(cfg.domain == DomainChoice::both);
    CHECK(cfg.places == std::vector<int>{0});
    CHECK(cfg.bound == 25);

    JobConfig named;
    apply_config_text(named, "curve = \"cm15\"\n[job]\nA = \"recover\"\nprimes = \"17..19\"\n");
    CHECK(named.recover_A);
    CHECK_FALSE(named.A);

    JobConfig bad;
    CHECK_THROWS_AS(apply_config_text(bad, "[job\nN = 3"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(bad, "[job]\nN = \"many\""), ConfigError);
    CHECK_THROWS_AS(apply_config_text(bad, "[job]\nN = 1"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(bad, "[job]\nA = \"1 + + w\""), ConfigError);
    CHECK_THROWS_AS(apply_config_text(bad, "[curve]\ng2 = 3\ng3 = 1\ndK = -3\n"), ConfigError); // zero discriminant
    CHECK_THROWS_AS(apply_config_text(bad, "curve = \"no-such-curve\""), ConfigError);
    CHECK_THROWS_AS(load_curve("/nonexistent/curve.toml"), ConfigError);
}

TEST_CASE("N is raised for supersingular primes unless given")
{
    JobConfig cfg;
    cfg.N = 100;
    CHECK(effective_N(cfg, {7}) == 344);
    CHECK_FALSE(cfg.warnings.empty());
    JobConfig capped;
    capped.N = 100;
    CHECK(effective_N(capped, {13}) == capped.N_cap);
    CHECK(capped.warnings.size() == 2);
    JobConfig fixed;
    fixed.N = 100;
    fixed.N_explicit = true;
    CHECK(effective_N(fixed, {7}) == 100);
    JobConfig ordinary;
    ordinary.N = 100;
    CHECK(effective_N(ordinary, {17}) == 100);
    CHECK(ordinary.warnings.empty());
}

TEST_CASE("verify exit codes and report fields")
{
    JobConfig cfg = job("5..30");
    cfg.N = 500;
    cfg.N_explicit = true;
    const Run ok = run("verify", cfg);
    CHECK(ok.code == exit_ok);
    const Json doc = Json::parse(ok.out);
    CHECK(doc["A"] == "13/2 + 21/2*w");
    CHECK(doc["curve"]["j"] == "-52515 - 85995*w");
    bool saw7 = false;
    for (const auto &r : doc["results"]) {
        CHECK(r["ok"] == true);
        if (r["p"] == 7) {
            saw7 = true;
            CHECK(r["mu"] == "47 mod 7^2");
            CHECK(r["class"] == "supersingular");
            CHECK(r["pre_correction_violation"] == Json::array({343, -2}));
            CHECK(r["first_violation"].is_null());
        }
    }
    CHECK(saw7);

    JobConfig perturbed = job("17", "15/2 + 21/2*w");
    perturbed.N = 200;
    perturbed.N_explicit = true;
    const Run bad = run("verify", perturbed);
    CHECK(bad.code == exit_failure);
    const Json r = Json::parse(bad.out)["results"][0];
    CHECK(r["ok"] == false);
    CHECK(r["first_violation"].is_array());

    const Run bad_prime = run("verify", job("5"));
    CHECK(bad_prime.code == exit_ok);
    CHECK(Json::parse(bad_prime.out)["results"][0]["class"] == "bad");

    CHECK(run("verify", job("")).code == exit_config);
    CHECK(run("verify", job("4,6")).code == exit_config);
    CHECK(run("nonsense", job("7")).code == exit_config);
}

TEST_CASE("reports are byte-identical across runs")
{
    JobConfig cfg = job("7..23");
    cfg.N = 400;
    cfg.N_explicit = true;
    const Run a = run("verify", cfg);
    const Run b = run("verify", cfg);
    CHECK(a.code == exit_ok);
    CHECK(a.out == b.out);
    const Run e1 = run("expand", job(""));
    const Run e2 = run("expand", job(""));
    CHECK(e1.out == e2.out);
}

TEST_CASE("recover")
{
    JobConfig cfg = job("17,19", "");
    cfg.bound = 25;
    const Run r = run("recover", cfg);
    CHECK(r.code == exit_ok);
    const Json doc = Json::parse(r.out);
    CHECK(doc["recovered"] == "13/2 + 21/2*w");
    CHECK(doc["residues"][0]["residue"] == "151 + 155*w mod 17^2");

    JobConfig single = job("17", "");
    const Run s = run("recover", single);
    CHECK(s.code == exit_ok);
    const Json sd = Json::parse(s.out);
    CHECK(sd["residues"][0]["residue"] == "151 + 155*w mod 17^2");
    CHECK(sd["recovered"].is_null()); // heights up to 21 need more than 17^2

    CHECK(run("recover", job("7,11,13", "")).code == exit_config);
}

TEST_CASE("verify with A = recover equals recover followed by verify")
{
    JobConfig rec = job("7,17,19", "recover");
    rec.N = 400;
    rec.N_explicit = true;
    const Run a = run("verify", rec);
    CHECK(a.code == exit_ok);
    JobConfig explicit_A = job("7,17,19", "13/2 + 21/2*w");
    explicit_A.N = 400;
    explicit_A.N_explicit = true;
    const Run b = run("verify", explicit_A);
    Json da = Json::parse(a.out);
    const Json db = Json::parse(b.out);
    CHECK(da["recovery"]["recovered"] == "13/2 + 21/2*w");
    da.erase("recovery");
    CHECK(da == db);
}

TEST_CASE("exact and fast domains cross-check")
{
    JobConfig cfg = job("7,17,19");
    cfg.domain = DomainChoice::both;
    cfg.N = 360;
    cfg.N_explicit = true;
    const Run r = run("verify", cfg);
    CHECK(r.code == exit_ok);
    const Json doc = Json::parse(r.out);
    CHECK(doc["domains_agree"] == true);
    CHECK(doc["results"].size() == 8); // (7, 17, 19 at two places) in each domain
}

TEST_CASE("solve-mu, classify, analytic, expand")
{
    JobConfig cfg = job("5..20");
    const Run mu = run("solve-mu", cfg);
    CHECK(mu.code == exit_ok);
    const Json doc = Json::parse(mu.out);
    CHECK(doc["results"][0]["p"] == 7);
    CHECK(doc["results"][0]["mu"] == "47 mod 7^2");
    for (const auto &r : doc["results"]) {
        CHECK(r["class"] == "supersingular");
    }
    CHECK(run("solve-mu", job("17,19")).code == exit_config);

    JobConfig cls = job("2..50", "");
    cls.filter = PrimeFilter::all;
    const Run c = run("classify", cls);
    CHECK(c.code == exit_ok);
    CHECK(Json::parse(c.out)["results"].size() == 15);

    const Run an = run("analytic", job(""));
    CHECK(an.code == exit_ok);
    CHECK(Json::parse(an.out)["recognized"] == "13/2 + 21/2*w");

    JobConfig ex = job("");
    ex.N = 15;
    const Run e = run("expand", ex);
    CHECK(e.code == exit_ok);
    CHECK(e.out.find("5\t-711 - 2301/2*w\n") != std::string::npos);
    CHECK(e.out.find("13\t-25264737675/416 - 3144554175/32*w\n") != std::string::npos);
    JobConfig tiny = job("");
    tiny.N = 2;
    const std::string t = run("expand", tiny).out;
    CHECK(t.find("# series log\n# precision 2\n1\t1\n#") != std::string::npos);
}
