#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "insulatum/insulation.hpp"
#include "insulatum/prime_table.hpp"
#include "insulatum/sequences.hpp"

namespace insulatum {

struct FrequencyHistogram {
    std::int64_t limit = 0;
    std::map<std::int64_t, std::int64_t> counts; // k -> #{p < limit : D(p) = k}
    std::int64_t total = 0;                      // pi(limit - 1)
    std::map<std::int64_t, double> f;            // k -> counts[k] / total
};

/// Histogram of degrees over records covering exactly the primes < limit.
/// The k=0 bucket holds only p=2.
FrequencyHistogram frequency_histogram(std::span<const InsulationRecord> records,
                                       std::int64_t limit);

/// counts[1]: primes below the histogram limit belonging to a twin pair.
std::int64_t twin_pair_count(const FrequencyHistogram& histogram);

/// Independent route: pairs (p, p+2) with both members prime and < limit.
/// Differs from twin_pair_count by boundary straddling and double
/// membership (3 and 5 both have D = 1); the audit reports both.
std::int64_t direct_twin_pair_count(const PrimeTable& table, std::int64_t limit);

enum class FitMethod { loglog_least_squares, nonlinear_least_squares };

const char* fit_method_name(FitMethod m);

struct PowerLawFit {
    double a = 0;         // coefficient, > 0
    double b = 0;         // exponent
    double r_squared = 0; // computed on the original (not log) scale
    FitMethod method = FitMethod::loglog_least_squares;
    std::int64_t sample_count = 0;
};

/// Fits y ~ a * x^b. loglog: linear least squares on (ln x, ln y).
/// nonlinear: Gauss-Newton on the original scale, seeded by loglog.
/// Requires >= 10 points, all coordinates positive.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y,
                          FitMethod method = FitMethod::loglog_least_squares);

/// Fit of i_n ~ a * n^b over sequence entries (n, value).
PowerLawFit power_law_fit(std::span<const SequenceEntry> entries,
                          FitMethod method = FitMethod::loglog_least_squares);

struct GapRelationAudit {
    std::int64_t lo = 0, hi = 0; // primes audited: lo <= p < hi
    std::int64_t checked = 0;
    std::int64_t exact_holds = 0;      // D(p_n) = min(g_{n-1}, g_n - 1), D by naive scan
    std::int64_t asymptotic_holds = 0; // D(p_n) = g_n, reported not asserted
    std::vector<std::int64_t> exact_failures; // offending primes (expected empty)

    double exact_rate() const { return checked ? double(exact_holds) / double(checked) : 0.0; }
    double asymptotic_rate() const { return checked ? double(asymptotic_holds) / double(checked) : 0.0; }
};

/// Dual-route audit over primes in [lo, hi), lo >= 3: the Definition-1 scan
/// versus the gap formula (must agree at 100%), plus the frequency of the
/// asymptotic claim D = g_n.
GapRelationAudit gap_relation_audit(const PrimeTable& table, std::int64_t lo, std::int64_t hi);

struct Eq1RosserAudit {
    std::int64_t checked = 0; // (p, m in X) pairs with p >= 17, p - m >= 17
    std::int64_t eq1_true = 0;
    std::int64_t bound_above_one = 0;
    std::int64_t disagreements = 0;
    double min_bound = 0; // smallest rosser_window_bound seen (must stay > 1)
};

/// Compares eq1_predicate with (rosser_window_bound > 1) on every X-member
/// inside the valid domain, over primes in [lo, hi).
Eq1RosserAudit eq1_rosser_audit(const PrimeTable& table, std::int64_t lo, std::int64_t hi);

struct MethodStats {
    std::int64_t predicate_evals = 0;     // in_window_set calls
    std::int64_t pi_evals = 0;            // 2 per predicate call
    std::int64_t neighbor_lookups = 0;    // prev/next queries (closed form)
    std::int64_t max_predicate_evals = 0; // worst single prime
    double wall_ms = 0.0;
};

struct BenchReport {
    std::int64_t lo = 0, hi = 0;
    std::int64_t prime_count = 0;
    std::int64_t bracket_cap = 0; // bisect bracket_high cap (table max_gap + 1)
    MethodStats naive, closed, bisect;
    bool all_agree = false;

    double predicate_speedup() const {
        return bisect.predicate_evals ? double(naive.predicate_evals) / double(bisect.predicate_evals) : 0.0;
    }
};

/// Runs all three degree methods over every prime in [lo, hi), tallying
/// evaluation counts and wall time. Any disagreement raises
/// EquivalenceViolation.
BenchReport bench_compare(const PrimeTable& table, std::int64_t lo, std::int64_t hi);

} // namespace insulatum
