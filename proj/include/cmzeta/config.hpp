#pragma once

// Job configuration shared by the command-line tool and the commands
// library: curve selection, prime sets, precision and output options.
// Sources, in increasing priority: defaults, a TOML file, explicit flags.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmzeta/eisenstein.hpp"
#include "cmzeta/weierstrass.hpp"

namespace cmzeta {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PrimeFilter { all, all_good, ordinary, supersingular };
enum class DomainChoice { exact, fast, both };

struct JobConfig {
    CurveModel curve = builtin_curve("cm15");
    std::optional<QuadRat> A;
    bool recover_A = false;
    std::string primes_text;
    PrimeFilter filter = PrimeFilter::all_good;
    long N = 500;
    bool N_explicit = false;
    long N_cap = 1000;
    unsigned k = 2;
    std::vector<int> places; // empty: all
    DomainChoice domain = DomainChoice::exact;
    long bound = 0; // 0: largest bound the modulus admits
    std::string out;
    std::vector<std::string> warnings;
};

/// A built-in curve name, or a path to a TOML file with a [curve] table.
CurveModel load_curve(const std::string &name_or_path);

/// Applies the keys of a TOML job file on top of cfg.
void apply_config_file(JobConfig &cfg, const std::string &path);
void apply_config_text(JobConfig &cfg, const std::string &toml_text, const std::string &origin = "<string>");

/// "7,17,19", "5..30" (inclusive) or a mix; keeps primes only, sorted.
std::vector<unsigned long> parse_primes(const std::string &text);
std::vector<unsigned long> select_primes(const CurveModel &curve, const std::vector<unsigned long> &primes,
                                         PrimeFilter filter);
/// The job's prime set.  Ranges are filtered; under the default all-good
/// filter an explicitly listed bad prime is kept so that it gets reported.
std::vector<unsigned long> job_prime_set(const CurveModel &curve, const std::string &text, PrimeFilter filter);

PrimeFilter parse_filter(const std::string &s);
DomainChoice parse_domain(const std::string &s);
std::vector<int> parse_places(const std::string &s);
std::string to_string(DomainChoice d);

/// "recover" or a field element in wire syntax.
void set_A(JobConfig &cfg, const std::string &text);

/// N actually used for a job over the given primes: an explicit N is kept;
/// otherwise N = max(default, p^(2k-1) + 1 over supersingular p), capped at
/// N_cap.  Warnings are appended to cfg.warnings.
long effective_N(JobConfig &cfg, const std::vector<unsigned long> &primes);

} // namespace cmzeta
