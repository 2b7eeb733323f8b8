#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "insulatum/analytics.hpp"
#include "insulatum/errors.hpp"
#include "insulatum/insulation.hpp"
#include "insulatum/prime_table.hpp"
#include "insulatum/sequences.hpp"
#include "insulatum/table_cache.hpp"

namespace {

using insulatum::Method;
using json = nlohmann::json;

constexpr const char* kCacheEnvVar = "INSULATUM_TABLE_CACHE";

struct RunConfig {
    std::int64_t limit = 1'000'000;
    std::optional<std::int64_t> table_limit_override;
    std::string format = "csv";
    std::optional<std::string> output_path;
    Method method = Method::bisect;
    insulatum::FitMethod fit_method = insulatum::FitMethod::loglog_least_squares;
    int depth = 1;
    std::optional<std::string> seed_cache;
    bool trace = false;
    bool paranoid = false;
    bool drop_k0 = false;
    std::int64_t p = 0;
};

// Stable 6-significant-digit formatting keeps output byte-identical.
std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double sig6(double v) {
    return std::strtod(fmt6(v).c_str(), nullptr);
}

void write_output(const RunConfig& cfg, const std::string& body) {
    if (cfg.output_path) {
        std::ofstream out(*cfg.output_path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + *cfg.output_path + " for writing");
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out) throw std::runtime_error("write to " + *cfg.output_path + " failed");
    } else {
        std::fwrite(body.data(), 1, body.size(), stdout);
    }
}

insulatum::PrimeTable acquire_table(std::int64_t needed, const RunConfig& cfg) {
    std::int64_t target = needed;
    if (cfg.table_limit_override) {
        if (*cfg.table_limit_override < needed)
            throw std::out_of_range("table limit override " + std::to_string(*cfg.table_limit_override) +
                                    " is too small; this command needs a table with limit >= " +
                                    std::to_string(needed));
        target = *cfg.table_limit_override;
    }

    std::optional<std::string> cache = cfg.seed_cache;
    if (const char* env = std::getenv(kCacheEnvVar); env && *env) cache = env;

    if (cache) {
        try {
            auto table = insulatum::load_table_cache(*cache);
            if (table.limit() >= target) return table;
            std::cerr << "note: cache " << *cache << " covers limit " << table.limit()
                      << " < " << target << "; rebuilding\n";
        } catch (const std::runtime_error& e) {
            std::cerr << "note: ignoring cache: " << e.what() << "\n";
        }
        auto table = insulatum::build_table(target);
        try {
            insulatum::save_table_cache(table, *cache);
        } catch (const std::runtime_error& e) {
            std::cerr << "note: could not save cache: " << e.what() << "\n";
        }
        return table;
    }
    return insulatum::build_table(target);
}

std::string entries_csv(const std::vector<insulatum::SequenceEntry>& entries) {
    std::string body = "n,value,degree\n";
    for (const auto& e : entries)
        body += std::to_string(e.n) + "," + std::to_string(e.value) + "," +
                std::to_string(e.degree) + "\n";
    return body;
}

std::string entries_json(const std::vector<insulatum::SequenceEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries)
        arr.push_back(json{{"n", e.n}, {"value", e.value}, {"degree", e.degree}});
    return arr.dump(2) + "\n";
}

int run_degree(const RunConfig& cfg) {
    const std::int64_t needed =
        cfg.method == Method::bisect ? 2 * cfg.p + 1000 : cfg.p + 1000;
    const auto table = acquire_table(needed, cfg);

    insulatum::InsulationRecord record{};
    insulatum::DegreeSearchTrace trace{};
    if (cfg.method == Method::bisect) {
        auto result = insulatum::degree_bisect(table, cfg.p);
        record = result.record;
        trace = result.trace;
    } else {
        record = insulatum::degree_of(table, cfg.p, cfg.method);
    }
    if (cfg.paranoid) {
        const auto check = insulatum::degree_closed(table, cfg.p);
        if (check.degree != record.degree)
            throw insulatum::EquivalenceViolation(
                "degree: " + std::string(insulatum::method_name(cfg.method)) + " gave " +
                std::to_string(record.degree) + " but closed form gave " +
                std::to_string(check.degree) + " for p = " + std::to_string(cfg.p));
    }

    std::string body = "D(" + std::to_string(cfg.p) + ") = " + std::to_string(record.degree) + "\n";
    if (cfg.trace && cfg.method == Method::bisect) {
        body += "seed = " + std::to_string(trace.seed) + "\n";
        body += "bracket = [" + std::to_string(trace.bracket_low) + ", " +
                std::to_string(trace.bracket_high) + "]\n";
        body += "predicate_evaluations = " + std::to_string(trace.predicate_evaluations) + "\n";
    }
    write_output(cfg, body);
    return 0;
}

int run_profile(const RunConfig& cfg) {
    const auto table = acquire_table(insulatum::required_table_limit(cfg.limit), cfg);
    const auto records = insulatum::degree_profile(table, cfg.limit, cfg.method);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : records) arr.push_back(json{{"p", r.p}, {"degree", r.degree}});
        write_output(cfg, arr.dump(2) + "\n");
    } else {
        std::string body = "p,degree\n";
        for (const auto& r : records)
            body += std::to_string(r.p) + "," + std::to_string(r.degree) + "\n";
        write_output(cfg, body);
    }
    return 0;
}

int run_list(const RunConfig& cfg) {
    const auto table = acquire_table(insulatum::required_table_limit(cfg.limit), cfg);
    const auto entries = insulatum::insulated_primes(table, cfg.limit, cfg.method);
    write_output(cfg, cfg.format == "json" ? entries_json(entries) : entries_csv(entries));
    return 0;
}

int run_highly(const RunConfig& cfg) {
    const auto table = acquire_table(insulatum::required_table_limit_highly(cfg.limit), cfg);
    const auto entries = insulatum::highly_insulated(table, cfg.limit, cfg.depth, cfg.method);
    write_output(cfg, cfg.format == "json" ? entries_json(entries) : entries_csv(entries));
    return 0;
}

int run_stats(const RunConfig& cfg) {
    const auto table = acquire_table(insulatum::required_table_limit(cfg.limit), cfg);
    const auto records = insulatum::degree_profile(table, cfg.limit, cfg.method);
    const auto hist = insulatum::frequency_histogram(records, cfg.limit);
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& [k, count] : hist.counts) {
            if (cfg.drop_k0 && k == 0) continue;
            arr.push_back(json{{"k", k}, {"count", count}, {"f", sig6(hist.f.at(k))}});
        }
        write_output(cfg, arr.dump(2) + "\n");
    } else {
        std::string body = "k,count,f\n";
        for (const auto& [k, count] : hist.counts) {
            if (cfg.drop_k0 && k == 0) continue;
            body += std::to_string(k) + "," + std::to_string(count) + "," + fmt6(hist.f.at(k)) + "\n";
        }
        write_output(cfg, body);
    }
    return 0;
}

int run_fit(const RunConfig& cfg) {
    const auto table = acquire_table(insulatum::required_table_limit(cfg.limit), cfg);
    const auto entries = insulatum::insulated_primes(table, cfg.limit, cfg.method);
    const auto fit = insulatum::power_law_fit(entries, cfg.fit_method);

    json residuals = json::array();
    for (const auto& e : entries) {
        const double predicted = fit.a * std::pow(static_cast<double>(e.n), fit.b);
        residuals.push_back(sig6(static_cast<double>(e.value) - predicted));
    }
    json out{{"a", sig6(fit.a)},
             {"b", sig6(fit.b)},
             {"r_squared", sig6(fit.r_squared)},
             {"method", insulatum::fit_method_name(fit.method)},
             {"sample_count", fit.sample_count},
             {"residuals", residuals}};
    write_output(cfg, out.dump(2) + "\n");
    return 0;
}

int run_audit(const RunConfig& cfg) {
    const auto table = acquire_table(insulatum::required_table_limit(cfg.limit), cfg);
    const auto gaps = insulatum::gap_relation_audit(table, 3, cfg.limit);
    const auto eq1 = insulatum::eq1_rosser_audit(table, 3, cfg.limit);
    const auto records = insulatum::degree_profile(table, cfg.limit, cfg.method);
    const auto hist = insulatum::frequency_histogram(records, cfg.limit);

    json failures = json::array();
    for (std::int64_t p : gaps.exact_failures) failures.push_back(p);
    json out{
        {"limit", cfg.limit},
        {"exact_gap_relation",
         {{"checked", gaps.checked},
          {"holds", gaps.exact_holds},
          {"hold_rate", sig6(gaps.exact_rate())},
          {"failures", failures}}},
        {"asymptotic_gap_claim",
         {{"holds", gaps.asymptotic_holds}, {"rate", sig6(gaps.asymptotic_rate())}}},
        {"eq1_vs_rosser",
         {{"checked", eq1.checked},
          {"eq1_true", eq1.eq1_true},
          {"bound_above_one", eq1.bound_above_one},
          {"disagreements", eq1.disagreements},
          {"min_rosser_bound", sig6(eq1.min_bound)}}},
        {"twin_pairs",
         {{"with_degree_one", insulatum::twin_pair_count(hist)},
          {"direct_pairs", insulatum::direct_twin_pair_count(table, cfg.limit)}}}};
    write_output(cfg, out.dump(2) + "\n");
    return 0;
}

json method_stats_json(const insulatum::MethodStats& s) {
    return json{{"predicate_evals", s.predicate_evals},
                {"pi_evals", s.pi_evals},
                {"neighbor_lookups", s.neighbor_lookups},
                {"max_predicate_evals", s.max_predicate_evals},
                {"wall_ms", sig6(s.wall_ms)}};
}

int run_bench(const RunConfig& cfg) {
    const auto table = acquire_table(insulatum::required_table_limit(cfg.limit), cfg);
    const auto report = insulatum::bench_compare(table, 3, cfg.limit);
    json out{{"lo", report.lo},
             {"hi", report.hi},
             {"prime_count", report.prime_count},
             {"bracket_cap", report.bracket_cap},
             {"all_agree", report.all_agree},
             {"naive", method_stats_json(report.naive)},
             {"closed", method_stats_json(report.closed)},
             {"bisect", method_stats_json(report.bisect)},
             {"speedup",
              {{"predicate_evals_naive_over_bisect", sig6(report.predicate_speedup())}}}};
    write_output(cfg, out.dump(2) + "\n");
    return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg, bool with_limit = true) {
    if (with_limit)
        cmd->add_option("--limit", cfg.limit, "classify primes below this bound")
            ->check(CLI::Range(std::int64_t{2}, std::int64_t{4'000'000'000}));
    cmd->add_option("--table-limit", cfg.table_limit_override,
                    "override the automatic prime-table size");
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", cfg.output_path, "write to this file instead of stdout");
    cmd->add_option("--cache", cfg.seed_cache,
                    "prime-table cache file (" + std::string(kCacheEnvVar) + " overrides)");
}

void add_method_option(CLI::App* cmd, RunConfig& cfg) {
    static const std::map<std::string, Method> methods{
        {"naive", Method::naive}, {"closed", Method::closed}, {"bisect", Method::bisect}};
    cmd->add_option("--method", cfg.method, "degree algorithm")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"insulation degrees of primes: sequences, statistics, and benchmarks"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* degree = app.add_subcommand("degree", "insulation degree D(p) of one prime");
    degree->add_option("p", cfg.p, "the prime to evaluate")->required()
        ->check(CLI::Range(std::int64_t{2}, std::int64_t{2'000'000'000}));
    add_method_option(degree, cfg);
    degree->add_flag("--trace", cfg.trace, "print the bisection search trace");
    degree->add_flag("--paranoid", cfg.paranoid, "cross-check against the closed form");
    add_common_options(degree, cfg, /*with_limit=*/false);

    auto* profile = app.add_subcommand("profile", "CSV of (p, D(p)) for primes below --limit");
    add_method_option(profile, cfg);
    add_common_options(profile, cfg);

    auto* list = app.add_subcommand("list", "the insulated primes below --limit");
    add_method_option(list, cfg);
    add_common_options(list, cfg);

    auto* highly = app.add_subcommand("highly", "depth-d insulated sequence below --limit");
    highly->add_option("--depth", cfg.depth, "1 = insulated, 2 = highly insulated, ...")
        ->check(CLI::Range(1, 64));
    add_method_option(highly, cfg);
    add_common_options(highly, cfg);

    auto* stats = app.add_subcommand("stats", "degree frequency histogram (k, count, f_k)");
    stats->add_flag("--drop-k0", cfg.drop_k0, "omit the k = 0 bucket (p = 2)");
    add_method_option(stats, cfg);
    add_common_options(stats, cfg);

    auto* fit = app.add_subcommand("fit", "power-law fit of the insulated primes");
    static const std::map<std::string, insulatum::FitMethod> fit_methods{
        {"loglog", insulatum::FitMethod::loglog_least_squares},
        {"nonlinear", insulatum::FitMethod::nonlinear_least_squares}};
    fit->add_option("--method", cfg.fit_method, "fitting method")
        ->transform(CLI::CheckedTransformer(fit_methods, CLI::ignore_case));
    add_common_options(fit, cfg);

    auto* audit = app.add_subcommand("audit", "gap-relation and eq1-vs-rosser diagnostics");
    add_common_options(audit, cfg);

    auto* bench = app.add_subcommand("bench", "compare the three degree algorithms");
    add_common_options(bench, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (degree->parsed()) return run_degree(cfg);
        if (profile->parsed()) return run_profile(cfg);
        if (list->parsed()) return run_list(cfg);
        if (highly->parsed()) return run_highly(cfg);
        if (stats->parsed()) return run_stats(cfg);
        if (fit->parsed()) return run_fit(cfg);
        if (audit->parsed()) return run_audit(cfg);
        if (bench->parsed()) return run_bench(cfg);
    } catch (const insulatum::TheoremViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const insulatum::EquivalenceViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const insulatum::ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
