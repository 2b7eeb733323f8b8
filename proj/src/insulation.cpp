#include "insulatum/insulation.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "insulatum/errors.hpp"

namespace insulatum {

namespace {

void require_table_prime(const PrimeTable& table, std::int64_t p, const char* who) {
    if (p < 2 || p > table.limit() || !table.is_prime(p))
        throw std::invalid_argument(std::string(who) + ": p = " + std::to_string(p) +
                                    " is not a prime within the table (limit " +
                                    std::to_string(table.limit()) + ")");
}

InsulationRecord make_record(const PrimeTable& table, std::int64_t p, std::int64_t degree,
                             Method method) {
    // D(2) = 0 is the only zero; every odd prime has D >= 1 and D < p.
    if ((p == 2 && degree != 0) || (p > 2 && (degree < 1 || degree >= p)))
        throw TheoremViolation("degree " + std::to_string(degree) + " out of range for p = " +
                               std::to_string(p));
    return InsulationRecord{p, table.prime_count(p), degree, method};
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
    case Method::naive: return "naive";
    case Method::closed: return "closed";
    case Method::bisect: return "bisect";
    }
    return "?";
}

bool in_window_set(const PrimeTable& table, std::int64_t p, std::int64_t m) {
    if (m < 1 || m > p)
        throw std::invalid_argument("in_window_set: m = " + std::to_string(m) +
                                    " outside [1, p] for p = " + std::to_string(p));
    if (p + m > table.limit())
        throw std::out_of_range("in_window_set: window end p + m = " + std::to_string(p + m) +
                                " exceeds table limit " + std::to_string(table.limit()) +
                                "; build a table with limit >= " + std::to_string(p + m));
    require_table_prime(table, p, "in_window_set");
    return table.prime_count(p - m) == table.prime_count(p + m) - 1;
}

InsulationRecord degree_naive(const PrimeTable& table, std::int64_t p) {
    require_table_prime(table, p, "degree_naive");
    if (p == 2) return make_record(table, p, 0, Method::naive);
    std::int64_t m = 1;
    while (in_window_set(table, p, m)) ++m; // stops at the first failure (downward closure)
    return make_record(table, p, m - 1, Method::naive);
}

InsulationRecord degree_closed(const PrimeTable& table, std::int64_t p) {
    require_table_prime(table, p, "degree_closed");
    if (p == 2) return make_record(table, p, 0, Method::closed);
    const std::int64_t prev = table.prev_prime(p);
    const std::int64_t next = table.next_prime(p);
    // The window is half-open on the right: p - m reaches prev at m = p - prev
    // (still excluded), p + m reaches next at m = next - p (included).
    return make_record(table, p, std::min(p - prev, next - p - 1), Method::closed);
}

std::int64_t seed_estimate(std::int64_t p) {
    if (p < 3)
        throw std::invalid_argument("seed_estimate: p must be >= 3, got " + std::to_string(p));
    const double v = 0.5 * std::log(2.0 * static_cast<double>(p) / std::numbers::ln2 + 1.0);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(v)));
}

BisectResult degree_bisect(const PrimeTable& table, std::int64_t p,
                           std::optional<std::int64_t> bracket_high) {
    require_table_prime(table, p, "degree_bisect");
    if (p == 2) return {make_record(table, p, 0, Method::bisect), DegreeSearchTrace{}};

    DegreeSearchTrace trace;
    auto probe = [&](std::int64_t m) {
        ++trace.predicate_evaluations;
        return in_window_set(table, p, m);
    };

    const std::int64_t seed = seed_estimate(p);
    trace.seed = seed;

    std::int64_t lo, hi;
    if (probe(seed)) {
        lo = seed;
        std::int64_t requested = std::min(bracket_high.value_or(p), p);
        if (requested <= lo) requested = p;
        if (requested >= p) {
            hi = p; // provably false: (0, 2p] contains 2 and p
        } else if (requested > table.max_gap() && p < table.last_prime()) {
            hi = requested; // provably false: the right neighbor sits within the window
        } else if (probe(requested)) {
            lo = requested; // hint was wrong; widen instead of failing
            hi = p;
        } else {
            hi = requested;
        }
    } else {
        if (seed == 1)
            throw TheoremViolation("degree_bisect: window predicate false at m = 1 for odd prime " +
                                   std::to_string(p));
        lo = 1; // provably true: (p-1, p+1] holds only p
        hi = seed;
    }
    trace.bracket_low = lo;
    trace.bracket_high = hi;

    // Invariant: predicate true at lo, false at hi.
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (probe(mid))
            lo = mid;
        else
            hi = mid;
    }
    return {make_record(table, p, lo, Method::bisect), trace};
}

InsulationRecord degree_of(const PrimeTable& table, std::int64_t p, Method method,
                           std::optional<std::int64_t> bracket_high) {
    switch (method) {
    case Method::naive: return degree_naive(table, p);
    case Method::closed: return degree_closed(table, p);
    case Method::bisect: return degree_bisect(table, p, bracket_high).record;
    }
    throw std::invalid_argument("degree_of: unknown method");
}

double rosser_window_bound(std::int64_t p, std::int64_t m) {
    if (m < 1)
        throw std::domain_error("rosser_window_bound: m must be >= 1, got " + std::to_string(m));
    if (p - m < 17)
        throw std::domain_error("rosser_window_bound: requires p - m >= 17, got p = " +
                                std::to_string(p) + ", m = " + std::to_string(m));
    const double hi = static_cast<double>(p + m);
    const double lo = static_cast<double>(p - m);
    return kRosserC * hi / std::log(hi) - lo / std::log(lo);
}

bool eq1_predicate(std::int64_t p, std::int64_t m) {
    if (p < 17)
        throw std::domain_error("eq1_predicate: requires p >= 17, got " + std::to_string(p));
    if (m < 1 || m >= p)
        throw std::domain_error("eq1_predicate: requires 1 <= m < p, got m = " + std::to_string(m));
    if (p - m < 2)
        throw std::domain_error("eq1_predicate: p - m = 1 makes log(p-m) vanish");
    const double lp = std::log(static_cast<double>(p + m));
    const double lm = std::log(static_cast<double>(p - m));
    const double lhs = lp * lm;
    // m*log((p-m)^c (p+m)) + p*log((p-m)^c / (p+m)), expanded in log space
    const double rhs = static_cast<double>(m) * (kRosserC * lm + lp) +
                       static_cast<double>(p) * (kRosserC * lm - lp);
    return lhs < rhs;
}

std::int64_t theorem5_witness(const PrimeTable& table, std::int64_t p,
                              std::optional<std::int64_t> degree) {
    require_table_prime(table, p, "theorem5_witness");
    if (p < 5)
        throw std::invalid_argument("theorem5_witness: requires p >= 5, got " + std::to_string(p));
    const std::int64_t d = degree ? *degree : degree_closed(table, p).degree;
    const std::int64_t dist = (d % 2 == 1) ? d + 1 : d;
    if (p + dist > table.limit())
        throw std::out_of_range("theorem5_witness: candidate " + std::to_string(p + dist) +
                                " beyond table limit " + std::to_string(table.limit()));
    if (p - dist >= 2 && table.is_prime(p - dist)) return p - dist; // smaller wins ties
    if (table.is_prime(p + dist)) return p + dist;
    throw TheoremViolation("theorem5_witness: neither " + std::to_string(p - dist) + " nor " +
                           std::to_string(p + dist) + " is prime for p = " + std::to_string(p) +
                           ", D = " + std::to_string(d));
}

} // namespace insulatum
