#include "cmzeta/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace cmzeta {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

unsigned long parse_ulong(const std::string &s, const std::string &what) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        if (s.empty() || s[0] == '-')
            throw std::invalid_argument(s);
        v = std::stoul(s, &used);
    } catch (const std::exception &) {
        throw ConfigError("invalid " + what + ": '" + s + "'");
    }
    if (used != s.size())
        throw ConfigError("invalid " + what + ": '" + s + "'");
    return v;
}

QuadRat parse_element(const std::string &text, QuadField field, const std::string &what) {
    try {
        return QuadRat::parse(text, field);
    } catch (const std::exception &e) {
        throw ConfigError("invalid " + what + " '" + text + "': " + e.what());
    }
}

// A number or a string in wire syntax.
QuadRat element_node(const toml::node &n, QuadField field, const std::string &what) {
    if (auto v = n.value<int64_t>())
        return QuadRat(static_cast<long>(*v));
    if (auto v = n.value<std::string>())
        return parse_element(*v, field, what);
    throw ConfigError(what + " must be an integer or a string");
}

long integer_node(const toml::table &t, const char *key, long fallback) {
    const auto *n = t.get(key);
    if (!n)
        return fallback;
    if (auto v = n->value<int64_t>())
        return static_cast<long>(*v);
    throw ConfigError(std::string("'") + key + "' must be an integer");
}

CurveModel curve_from_table(const toml::table &t, const std::string &origin) {
    if (const auto *name = t.get("name"); name && !t.contains("g2")) {
        auto s = name->value<std::string>();
        if (!s)
            throw ConfigError("curve name must be a string");
        return load_curve(*s);
    }
    try {
        const QuadField field = QuadField::make(integer_node(t, "s", 0), integer_node(t, "t", 0));
        const auto *g2 = t.get("g2");
        const auto *g3 = t.get("g3");
        if (!g2 || !g3)
            throw ConfigError(origin + ": curve needs g2 and g3");
        const auto name = t["name"].value_or(std::string(origin));
        const long dK = integer_node(t, "dK", 0);
        if (dK == 0)
            throw ConfigError(origin + ": curve needs dK");
        return CurveModel::make(name, field, element_node(*g2, field, "g2"), element_node(*g3, field, "g3"), dK,
                                integer_node(t, "conductor", integer_node(t, "f", 1)));
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

toml::table parse_toml(const std::string &text, const std::string &origin) {
    try {
        return toml::parse(text, origin);
    } catch (const toml::parse_error &e) {
        std::ostringstream os;
        os << origin << ": " << e.description() << " at line " << e.source().begin.line;
        throw ConfigError(os.str());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

CurveModel load_curve(const std::string &name_or_path) {
    const auto names = builtin_curve_names();
    if (std::find(names.begin(), names.end(), name_or_path) != names.end())
        return builtin_curve(name_or_path);
    if (!std::filesystem::is_regular_file(name_or_path))
        throw ConfigError("unknown curve '" + name_or_path + "' (not a built-in name or a file)");
    const auto doc = parse_toml(read_file(name_or_path), name_or_path);
    const auto *t = doc["curve"].as_table();
    return curve_from_table(t ? *t : doc, name_or_path);
}

void apply_config_text(JobConfig &cfg, const std::string &toml_text, const std::string &origin) {
    const auto doc = parse_toml(toml_text, origin);
    if (const auto *n = doc.get("curve")) {
        if (auto s = n->value<std::string>())
            cfg.curve = load_curve(*s);
        else if (const auto *t = n->as_table())
            cfg.curve = curve_from_table(*t, origin);
        else
            throw ConfigError(origin + ": 'curve' must be a name, a path or a table");
    }
    const auto *jt = doc["job"].as_table();
    const toml::table &job = jt ? *jt : doc;

    if (const auto *n = job.get("A")) {
        if (auto v = n->value<int64_t>())
            set_A(cfg, std::to_string(*v));
        else if (auto s = n->value<std::string>())
            set_A(cfg, *s);
        else
            throw ConfigError(origin + ": 'A' must be a string");
    }
    if (const auto *n = job.get("primes")) {
        if (auto s = n->value<std::string>()) {
            cfg.primes_text = *s;
        } else if (const auto *arr = n->as_array()) {
            std::string list;
            for (const auto &e : *arr) {
                auto v = e.value<int64_t>();
                if (!v || *v < 0)
                    throw ConfigError(origin + ": 'primes' entries must be nonnegative integers");
                list += (list.empty() ? "" : ",") + std::to_string(*v);
            }
            cfg.primes_text = list;
        } else {
            throw ConfigError(origin + ": 'primes' must be a string or an array");
        }
    }
    if (auto s = job["filter"].value<std::string>())
        cfg.filter = parse_filter(*s);
    if (job.contains("N")) {
        cfg.N = integer_node(job, "N", cfg.N);
        cfg.N_explicit = true;
    }
    cfg.N_cap = integer_node(job, "N_cap", cfg.N_cap);
    if (job.contains("k")) {
        const long k = integer_node(job, "k", 2);
        if (k < 1)
            throw ConfigError(origin + ": k must be positive");
        cfg.k = static_cast<unsigned>(k);
    }
    if (const auto *n = job.get("places")) {
        if (auto s = n->value<std::string>())
            cfg.places = parse_places(*s);
        else if (auto v = n->value<int64_t>())
            cfg.places = parse_places(std::to_string(*v));
        else
            throw ConfigError(origin + ": 'places' must be 0, 1 or \"both\"");
    }
    if (auto s = job["domain"].value<std::string>())
        cfg.domain = parse_domain(*s);
    cfg.bound = integer_node(job, "bound", cfg.bound);
    if (auto s = job["out"].value<std::string>())
        cfg.out = *s;
    if (cfg.N < 2)
        throw ConfigError(origin + ": N must be at least 2");
}

void apply_config_file(JobConfig &cfg, const std::string &path) { apply_config_text(cfg, read_file(path), path); }

std::vector<unsigned long> parse_primes(const std::string &text) {
    std::vector<unsigned long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        unsigned long lo = 0;
        unsigned long hi = 0;
        if (const auto dots = item.find(".."); dots != std::string::npos) {
            lo = parse_ulong(trim(item.substr(0, dots)), "prime range");
            hi = parse_ulong(trim(item.substr(dots + 2)), "prime range");
            if (hi < lo)
                throw ConfigError("empty prime range '" + item + "'");
            if (hi - lo > 1000000)
                throw ConfigError("prime range '" + item + "' is too large");
        } else {
            lo = hi = parse_ulong(item, "prime");
        }
        for (unsigned long n = lo; n <= hi; ++n)
            if (n >= 2 && is_probable_prime(Integer(n)))
                out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<unsigned long> select_primes(const CurveModel &curve, const std::vector<unsigned long> &primes,
                                         PrimeFilter filter) {
    std::vector<unsigned long> out;
    for (unsigned long p : primes) {
        const PrimeClass c = classify_prime(curve, p);
        const bool keep = filter == PrimeFilter::all || (filter == PrimeFilter::all_good && c != PrimeClass::bad) ||
                          (filter == PrimeFilter::ordinary && c == PrimeClass::ordinary) ||
                          (filter == PrimeFilter::supersingular && c == PrimeClass::supersingular);
        if (keep)
            out.push_back(p);
    }
    return out;
}

std::vector<unsigned long> job_prime_set(const CurveModel &curve, const std::string &text, PrimeFilter filter) {
    std::vector<unsigned long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        const auto primes = parse_primes(item);
        const bool listed = item.find("..") == std::string::npos;
        const auto kept = listed && filter == PrimeFilter::all_good ? primes : select_primes(curve, primes, filter);
        out.insert(out.end(), kept.begin(), kept.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PrimeFilter parse_filter(const std::string &s) {
    if (s == "all")
        return PrimeFilter::all;
    if (s == "all-good" || s == "good")
        return PrimeFilter::all_good;
    if (s == "ordinary")
        return PrimeFilter::ordinary;
    if (s == "supersingular")
        return PrimeFilter::supersingular;
    throw ConfigError("unknown prime filter '" + s + "' (all, all-good, ordinary, supersingular)");
}

DomainChoice parse_domain(const std::string &s) {
    if (s == "exact")
        return DomainChoice::exact;
    if (s == "fast" || s == "padic-fast")
        return DomainChoice::fast;
    if (s == "both")
        return DomainChoice::both;
    throw ConfigError("unknown domain '" + s + "' (exact, fast, both)");
}

std::vector<int> parse_places(const std::string &s) {
    if (s == "both" || s == "all" || s.empty())
        return {};
    if (s == "0")
        return {0};
    if (s == "1")
        return {1};
    throw ConfigError("unknown place selection '" + s + "' (0, 1, both)");
}

std::string to_string(DomainChoice d) {
    switch (d) {
    case DomainChoice::exact:
        return "exact";
    case DomainChoice::fast:
        return "fast";
    case DomainChoice::both:
        return "both";
    }
    return "?";
}

void set_A(JobConfig &cfg, const std::string &text) {
    if (trim(text) == "recover") {
        cfg.recover_A = true;
        cfg.A.reset();
        return;
    }
    cfg.recover_A = false;
    cfg.A = parse_element(text, cfg.curve.field, "A");
}

long effective_N(JobConfig &cfg, const std::vector<unsigned long> &primes) {
    if (cfg.N_explicit)
        return cfg.N;
    long needed = cfg.N;
    unsigned long worst = 0;
    for (unsigned long p : primes) {
        if (classify_prime(cfg.curve, p) != PrimeClass::supersingular)
            continue;
        Integer need = ipow(Integer(p), 2 * cfg.k - 1) + 1;
        if (!need.fits_slong_p() || need.get_si() > cfg.N_cap) {
            worst = std::max(worst, p);
            needed = std::max(needed, cfg.N_cap);
        } else {
            needed = std::max(needed, need.get_si());
        }
    }
    if (needed > cfg.N)
        cfg.warnings.push_back("N raised from " + std::to_string(cfg.N) + " to " + std::to_string(needed) +
                               " for the supersingular primes");
    if (worst != 0)
        cfg.warnings.push_back("N capped at " + std::to_string(cfg.N_cap) + "; k = " + std::to_string(cfg.k) +
                               " is out of reach at p = " + std::to_string(worst) + " and will be lowered");
    return needed;
}

} // namespace cmzeta
