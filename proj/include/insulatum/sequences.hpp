#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "insulatum/insulation.hpp"
#include "insulatum/prime_table.hpp"

namespace insulatum {

struct SequenceEntry {
    std::int64_t n;      // 1-based rank at this depth
    std::int64_t value;  // the prime i_n
    std::int64_t degree; // D(value)
    int depth;           // 1 = insulated, 2 = highly insulated, ...
};

/// Table slack needed beyond a classification limit so the last primes
/// below it still have a right neighbor and a complete D-window:
/// max(1000, ceil(2 * ln(limit)^2)). Maximal prime gaps at desk scale sit
/// far below this; a violation surfaces as an out-of-range error.
std::int64_t classification_headroom(std::int64_t limit);

/// Smallest table limit degree_profile(limit) accepts.
std::int64_t required_table_limit(std::int64_t limit);

/// Smallest table limit highly_insulated(limit, depth) accepts.
std::int64_t required_table_limit_highly(std::int64_t limit);

/// One InsulationRecord per prime p < limit, in increasing p order.
/// Bisect runs with bracket_high = min(p, table.max_gap() + 1).
std::vector<InsulationRecord> degree_profile(const PrimeTable& table,
                                             std::int64_t limit,
                                             Method method = Method::bisect);

/// Strict local maxima of the degree over consecutive records; the first
/// and last record have no two-sided neighborhood and are never selected.
/// Fewer than 3 records yield an empty result.
std::vector<SequenceEntry> select_local_maxima(std::span<const InsulationRecord> records);

/// The insulated primes below limit: select_local_maxima over
/// degree_profile, depth 1.
std::vector<SequenceEntry> insulated_primes(const PrimeTable& table, std::int64_t limit,
                                            Method method = Method::bisect);

/// One application of insulation as an operator: keeps entries whose degree
/// strictly exceeds both neighbors' degrees within the input sequence.
/// Degrees are the primes' own D values (validated against the table), only
/// the neighborhood changes with depth. Output depth = input depth + 1.
std::vector<SequenceEntry> insulation_operator(std::span<const SequenceEntry> entries,
                                               const PrimeTable& table);

/// Depth-d sequence below limit: the operator iterated (depth - 1) times
/// over the insulated primes of a padded working range, then cut to
/// values < limit so entries near the boundary classify correctly.
std::vector<SequenceEntry> highly_insulated(const PrimeTable& table, std::int64_t limit,
                                            int depth, Method method = Method::bisect);

} // namespace insulatum
