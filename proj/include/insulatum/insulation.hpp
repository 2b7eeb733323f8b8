#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "insulatum/prime_table.hpp"

namespace insulatum {

enum class Method { naive, closed, bisect };

const char* method_name(Method m);

// Rosser-Schoenfeld upper constant: pi(x) < c*x/ln x with c = 30*ln(113)/113.
inline const double kRosserC = 30.0 * std::log(113.0) / 113.0;

struct InsulationRecord {
    std::int64_t p;      // the prime
    std::int64_t index;  // n with p = p_n, 1-indexed
    std::int64_t degree; // D(p)
    Method method;
};

struct DegreeSearchTrace {
    std::int64_t seed = 0;         // initial m from seed_estimate
    std::int64_t bracket_low = 0;  // established bracket, low side true
    std::int64_t bracket_high = 0; // high side false
    std::int64_t predicate_evaluations = 0;
};

struct BisectResult {
    InsulationRecord record;
    DegreeSearchTrace trace;
};

/// Membership predicate of the set X: true iff pi(p-m) = pi(p+m) - 1,
/// i.e. p is the only prime in the half-open window (p-m, p+m].
/// Requires 1 <= m <= p and p + m <= table.limit().
bool in_window_set(const PrimeTable& table, std::int64_t p, std::int64_t m);

/// D(p) by linear scan m = 1, 2, ... until the predicate first fails
/// (valid because X is downward closed). D(2) = 0 by convention.
InsulationRecord degree_naive(const PrimeTable& table, std::int64_t p);

/// D(p) = min(p - prev_prime(p), next_prime(p) - p - 1). Must agree with
/// degree_naive on every input.
InsulationRecord degree_closed(const PrimeTable& table, std::int64_t p);

/// Bracket seed floor(0.5 * ln(2p/ln 2 + 1)), clamped to >= 1.
std::int64_t seed_estimate(std::int64_t p);

/// D(p) by bisection over the monotone predicate. The seed is probed first;
/// if true the bracket is [seed, m1], else [1, seed]. m1 defaults to p,
/// where the predicate is provably false. A caller-configured bracket_high
/// below p is used as m1 when it is provably false (above the table's max
/// gap, right neighbor present); otherwise it is probed once and the
/// bracket widens to [bracket_high, p] if the probe comes back true, so a
/// bad hint can cost time but never a wrong answer.
BisectResult degree_bisect(const PrimeTable& table, std::int64_t p,
                           std::optional<std::int64_t> bracket_high = {});

/// Dispatch by method; bracket_high is honored only by bisect.
InsulationRecord degree_of(const PrimeTable& table, std::int64_t p, Method method,
                           std::optional<std::int64_t> bracket_high = {});

/// Upper bound on the window prime count pi(p+m) - pi(p-m):
/// c*(p+m)/ln(p+m) - (p-m)/ln(p-m), c = 30*ln(113)/113.
/// Valid for p - m >= 17 (domain error below); p need not be prime.
double rosser_window_bound(std::int64_t p, std::int64_t m);

/// The printed rearrangement of the Rosser window bound:
///   log(p+m)log(p-m) < m*log((p-m)^c (p+m)) + p*log((p-m)^c / (p+m))
/// evaluated in log space with natural logs. Diagnostic only; agreement
/// with rosser_window_bound > 1 is audited, not assumed.
/// Requires p >= 17, 1 <= m < p, p - m >= 2.
bool eq1_predicate(std::int64_t p, std::int64_t m);

/// For p >= 5: returns the prime at distance D(p)+1 (D odd) or D(p)
/// (D even), preferring the smaller candidate when both are prime.
/// Throws TheoremViolation if neither candidate is prime.
std::int64_t theorem5_witness(const PrimeTable& table, std::int64_t p,
                              std::optional<std::int64_t> degree = {});

} // namespace insulatum
