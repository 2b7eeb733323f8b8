#include "insulatum/analytics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "insulatum/errors.hpp"

namespace insulatum {

FrequencyHistogram frequency_histogram(std::span<const InsulationRecord> records,
                                       std::int64_t limit) {
    if (limit < 3)
        throw std::invalid_argument("frequency_histogram: limit must be >= 3");
    if (records.empty() || records.front().p != 2)
        throw std::invalid_argument("frequency_histogram: records must start at p = 2");
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0 && records[i].p <= records[i - 1].p)
            throw std::invalid_argument("frequency_histogram: records must be strictly increasing");
        if (records[i].p >= limit)
            throw std::invalid_argument("frequency_histogram: record " + std::to_string(records[i].p) +
                                        " is not below limit " + std::to_string(limit));
    }
    FrequencyHistogram h;
    h.limit = limit;
    h.total = static_cast<std::int64_t>(records.size());
    for (const auto& r : records) ++h.counts[r.degree];
    for (const auto& [k, c] : h.counts)
        h.f[k] = static_cast<double>(c) / static_cast<double>(h.total);
    return h;
}

std::int64_t twin_pair_count(const FrequencyHistogram& histogram) {
    auto it = histogram.counts.find(1);
    return it == histogram.counts.end() ? 0 : it->second;
}

std::int64_t direct_twin_pair_count(const PrimeTable& table, std::int64_t limit) {
    if (limit > table.limit() + 1)
        throw std::out_of_range("direct_twin_pair_count: limit beyond table");
    std::int64_t pairs = 0;
    for (std::int64_t p : table.primes()) {
        if (p + 2 >= limit) break;
        if (table.is_prime(p + 2)) ++pairs;
    }
    return pairs;
}

const char* fit_method_name(FitMethod m) {
    switch (m) {
    case FitMethod::loglog_least_squares: return "loglog_least_squares";
    case FitMethod::nonlinear_least_squares: return "nonlinear_least_squares";
    }
    return "?";
}

namespace {

double r_squared_original(std::span<const double> x, std::span<const double> y, double a, double b) {
    double mean = 0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - a * std::pow(x[i], b);
        ss_res += r * r;
        const double d = y[i] - mean;
        ss_tot += d * d;
    }
    return ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
}

double sse(std::span<const double> x, std::span<const double> y, double a, double b) {
    double s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = y[i] - a * std::pow(x[i], b);
        s += r * r;
    }
    return s;
}

std::pair<double, double> loglog_fit(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0)
        throw std::invalid_argument("fit_power_law: degenerate x values");
    const double b = (n * sxy - sx * sy) / denom;
    const double a = std::exp((sy - b * sx) / n);
    return {a, b};
}

// Gauss-Newton on r_i = y_i - a*x_i^b with step halving; deterministic.
std::pair<double, double> refine_nonlinear(std::span<const double> x, std::span<const double> y,
                                           double a, double b) {
    for (int iter = 0; iter < 100; ++iter) {
        double j11 = 0, j12 = 0, j22 = 0, g1 = 0, g2 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double xb = std::pow(x[i], b);
            const double f = a * xb;
            const double r = y[i] - f;
            const double da = -xb;
            const double db = -f * std::log(x[i]);
            j11 += da * da;
            j12 += da * db;
            j22 += db * db;
            g1 += da * r;
            g2 += db * r;
        }
        const double det = j11 * j22 - j12 * j12;
        if (det == 0) break;
        const double step_a = -(j22 * g1 - j12 * g2) / det;
        const double step_b = -(j11 * g2 - j12 * g1) / det;
        const double s0 = sse(x, y, a, b);
        double scale = 1.0;
        bool moved = false;
        while (scale > 1e-7) {
            const double na = a + scale * step_a;
            const double nb = b + scale * step_b;
            if (na > 0 && sse(x, y, na, nb) < s0) {
                a = na;
                b = nb;
                moved = true;
                break;
            }
            scale /= 2;
        }
        if (!moved) break;
        if (std::abs(scale * step_a) <= 1e-13 * std::abs(a) &&
            std::abs(scale * step_b) <= 1e-13 * std::max(1.0, std::abs(b)))
            break;
    }
    return {a, b};
}

} // namespace

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y, FitMethod method) {
    if (x.size() != y.size())
        throw std::invalid_argument("fit_power_law: x and y sizes differ");
    if (x.size() < 10)
        throw std::invalid_argument("fit_power_law: need at least 10 points, got " +
                                    std::to_string(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] <= 0 || y[i] <= 0)
            throw std::invalid_argument("fit_power_law: all coordinates must be positive");

    auto [a, b] = loglog_fit(x, y);
    if (method == FitMethod::nonlinear_least_squares)
        std::tie(a, b) = refine_nonlinear(x, y, a, b);

    PowerLawFit fit;
    fit.a = a;
    fit.b = b;
    fit.r_squared = r_squared_original(x, y, a, b);
    fit.method = method;
    fit.sample_count = static_cast<std::int64_t>(x.size());
    return fit;
}

PowerLawFit power_law_fit(std::span<const SequenceEntry> entries, FitMethod method) {
    std::vector<double> x, y;
    x.reserve(entries.size());
    y.reserve(entries.size());
    for (const auto& e : entries) {
        x.push_back(static_cast<double>(e.n));
        y.push_back(static_cast<double>(e.value));
    }
    return fit_power_law(x, y, method);
}

GapRelationAudit gap_relation_audit(const PrimeTable& table, std::int64_t lo, std::int64_t hi) {
    if (lo < 3 || hi < lo)
        throw std::out_of_range("gap_relation_audit: need 3 <= lo <= hi");
    if (required_table_limit(hi) > table.limit())
        throw std::out_of_range("gap_relation_audit: needs a table with limit >= " +
                                std::to_string(required_table_limit(hi)) + ", have " +
                                std::to_string(table.limit()));
    GapRelationAudit audit;
    audit.lo = lo;
    audit.hi = hi;
    for (std::int64_t p : table.primes()) {
        if (p < lo) continue;
        if (p >= hi) break;
        const std::int64_t d = degree_naive(table, p).degree; // Definition-1 route
        const std::int64_t g_prev = p - table.prev_prime(p);
        const std::int64_t g_next = table.next_prime(p) - p;
        ++audit.checked;
        if (d == std::min(g_prev, g_next - 1))
            ++audit.exact_holds;
        else
            audit.exact_failures.push_back(p);
        if (d == g_next) ++audit.asymptotic_holds;
    }
    return audit;
}

Eq1RosserAudit eq1_rosser_audit(const PrimeTable& table, std::int64_t lo, std::int64_t hi) {
    if (required_table_limit(hi) > table.limit())
        throw std::out_of_range("eq1_rosser_audit: needs a table with limit >= " +
                                std::to_string(required_table_limit(hi)));
    Eq1RosserAudit audit;
    audit.min_bound = std::numeric_limits<double>::infinity();
    for (std::int64_t p : table.primes()) {
        if (p < lo) continue;
        if (p >= hi) break;
        if (p < 17) continue;
        const std::int64_t d = degree_closed(table, p).degree;
        for (std::int64_t m = 1; m <= d && p - m >= 17; ++m) {
            ++audit.checked;
            const double bound = rosser_window_bound(p, m);
            const bool via_bound = bound > 1.0;
            const bool via_eq1 = eq1_predicate(p, m);
            audit.min_bound = std::min(audit.min_bound, bound);
            if (via_bound) ++audit.bound_above_one;
            if (via_eq1) ++audit.eq1_true;
            if (via_bound != via_eq1) ++audit.disagreements;
        }
    }
    return audit;
}

BenchReport bench_compare(const PrimeTable& table, std::int64_t lo, std::int64_t hi) {
    if (lo < 2 || hi < lo)
        throw std::out_of_range("bench_compare: need 2 <= lo <= hi");
    if (required_table_limit(hi) > table.limit())
        throw std::out_of_range("bench_compare: needs a table with limit >= " +
                                std::to_string(required_table_limit(hi)) + ", have " +
                                std::to_string(table.limit()));

    std::vector<std::int64_t> range;
    for (std::int64_t p : table.primes()) {
        if (p < lo) continue;
        if (p >= hi) break;
        range.push_back(p);
    }

    BenchReport report;
    report.lo = lo;
    report.hi = hi;
    report.prime_count = static_cast<std::int64_t>(range.size());
    report.bracket_cap = table.max_gap() + 1;

    using clock = std::chrono::steady_clock;
    std::vector<std::int64_t> d_naive, d_closed, d_bisect;
    d_naive.reserve(range.size());
    d_closed.reserve(range.size());
    d_bisect.reserve(range.size());

    auto t0 = clock::now();
    for (std::int64_t p : range) {
        const auto rec = degree_naive(table, p);
        d_naive.push_back(rec.degree);
        // the scan probes m = 1 .. D+1 (0 probes for p = 2)
        const std::int64_t evals = p == 2 ? 0 : rec.degree + 1;
        report.naive.predicate_evals += evals;
        report.naive.max_predicate_evals = std::max(report.naive.max_predicate_evals, evals);
    }
    report.naive.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    report.naive.pi_evals = 2 * report.naive.predicate_evals;

    t0 = clock::now();
    for (std::int64_t p : range) {
        d_closed.push_back(degree_closed(table, p).degree);
        report.closed.neighbor_lookups += p == 2 ? 0 : 2;
    }
    report.closed.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

    t0 = clock::now();
    for (std::int64_t p : range) {
        const auto [rec, trace] = degree_bisect(table, p, std::min(p, report.bracket_cap));
        d_bisect.push_back(rec.degree);
        report.bisect.predicate_evals += trace.predicate_evaluations;
        report.bisect.max_predicate_evals =
            std::max(report.bisect.max_predicate_evals, trace.predicate_evaluations);
    }
    report.bisect.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    report.bisect.pi_evals = 2 * report.bisect.predicate_evals;

    for (std::size_t i = 0; i < range.size(); ++i)
        if (d_naive[i] != d_closed[i] || d_naive[i] != d_bisect[i])
            throw EquivalenceViolation("bench_compare: methods disagree at p = " +
                                       std::to_string(range[i]) + " (naive " +
                                       std::to_string(d_naive[i]) + ", closed " +
                                       std::to_string(d_closed[i]) + ", bisect " +
                                       std::to_string(d_bisect[i]) + ")");
    report.all_agree = true;
    return report;
}

} // namespace insulatum
