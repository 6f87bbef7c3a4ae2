// cmzeta: expansions and p-adic Eisenstein checks for CM curves.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cmzeta/commands.hpp"
#include "cmzeta/config.hpp"

int main(int argc, char **argv)
{
    using namespace cmzeta;

    CLI::App app{"Expansions and p-adic weight-2 Eisenstein checks for CM elliptic curves"};
    app.require_subcommand(1);

    std::string config_path;
    std::string curve;
    std::string A;
    std::string primes;
    std::string filter;
    std::string places;
    std::string domain;
    std::string out;
    long N = 0;
    long N_cap = 0;
    unsigned k = 0;
    long bound = 0;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "TOML job file")->check(CLI::ExistingFile);
        sub->add_option("--curve", curve, "built-in curve name or TOML file");
        sub->add_option("--A", A, "value to verify, \"a/b + c/d*w\", or \"recover\"");
        sub->add_option("--primes", primes, "list and ranges, e.g. \"7,17\" or \"5..30\"");
        sub->add_option("--filter", filter, "all | all-good | ordinary | supersingular");
        sub->add_option("--N", N, "number of series terms")->check(CLI::Range(2L, 100000L));
        sub->add_option("--N-cap", N_cap, "upper limit when N is raised automatically");
        sub->add_option("--k", k, "p-adic precision exponent")->check(CLI::Range(1u, 64u));
        sub->add_option("--places", places, "0 | 1 | both");
        sub->add_option("--domain", domain, "exact | fast | both");
        sub->add_option("--bound", bound, "height bound for rational reconstruction");
        sub->add_option("--out", out, "output file (default: stdout)");
    };
    const std::map<std::string, std::string> about{
        {"expand", "print c_n, wp, zeta, the formal logarithm and zeta(l(u)) to N terms"},
        {"classify", "ordinary/supersingular verdicts by three independent criteria"},
        {"verify", "check p-integrality of zeta(l(u)) - 1/u - A l(u), with the mu correction where needed"},
        {"solve-mu", "solve for mu at supersingular primes"},
        {"recover", "recover A mod p^k at ordinary primes and reconstruct it by CRT"},
        {"analytic", "A from complex periods at both real embeddings, and its recognition"},
    };
    for (const auto &name : command_names()) {
        add_common(app.add_subcommand(name, about.at(name)));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    JobConfig cfg;
    try {
        if (!config_path.empty()) {
            apply_config_file(cfg, config_path);
        }
        if (!curve.empty()) {
            cfg.curve = load_curve(curve);
        }
        if (!A.empty()) {
            set_A(cfg, A);
        }
        if (!primes.empty()) {
            cfg.primes_text = primes;
        }
        if (!filter.empty()) {
            cfg.filter = parse_filter(filter);
        }
        if (N != 0) {
            cfg.N = N;
            cfg.N_explicit = true;
        }
        if (N_cap != 0) {
            cfg.N_cap = N_cap;
        }
        if (k != 0) {
            cfg.k = k;
        }
        if (!places.empty()) {
            cfg.places = parse_places(places);
        }
        if (!domain.empty()) {
            cfg.domain = parse_domain(domain);
        }
        if (bound != 0) {
            cfg.bound = bound;
        }
        if (!out.empty()) {
            cfg.out = out;
        }
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }

    return run_command(app.get_subcommands().front()->get_name(), cfg, std::cout, std::cerr);
}
