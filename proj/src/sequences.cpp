#include "insulatum/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "insulatum/errors.hpp"

namespace insulatum {

std::int64_t classification_headroom(std::int64_t limit) {
    if (limit < 2)
        throw std::invalid_argument("classification_headroom: limit must be >= 2");
    const double ln = std::log(static_cast<double>(limit));
    return std::max<std::int64_t>(1000, static_cast<std::int64_t>(std::ceil(2.0 * ln * ln)));
}

std::int64_t required_table_limit(std::int64_t limit) {
    return limit + classification_headroom(limit);
}

std::int64_t required_table_limit_highly(std::int64_t limit) {
    return limit + 2 * classification_headroom(limit);
}

std::vector<InsulationRecord> degree_profile(const PrimeTable& table, std::int64_t limit,
                                             Method method) {
    if (limit < 2)
        throw std::invalid_argument("degree_profile: limit must be >= 2, got " + std::to_string(limit));
    const std::int64_t needed = required_table_limit(limit);
    if (needed > table.limit())
        throw std::out_of_range("degree_profile: classifying primes below " + std::to_string(limit) +
                                " needs a table with limit >= " + std::to_string(needed) +
                                ", have " + std::to_string(table.limit()));

    // Provably predicate-false bracket for every prime below the last one.
    const std::int64_t cap = table.max_gap() + 1;
    std::vector<InsulationRecord> records;
    for (std::int64_t p : table.primes()) {
        if (p >= limit) break;
        if (method == Method::bisect)
            records.push_back(degree_bisect(table, p, std::min(p, cap)).record);
        else
            records.push_back(degree_of(table, p, method));
    }
    return records;
}

std::vector<SequenceEntry> select_local_maxima(std::span<const InsulationRecord> records) {
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].p <= records[i - 1].p)
            throw std::invalid_argument("select_local_maxima: records must be strictly increasing in p");
    std::vector<SequenceEntry> out;
    if (records.size() < 3) return out;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
        if (records[i].degree > records[i - 1].degree && records[i].degree > records[i + 1].degree)
            out.push_back(SequenceEntry{static_cast<std::int64_t>(out.size()) + 1, records[i].p,
                                        records[i].degree, 1});
    }
    return out;
}

std::vector<SequenceEntry> insulated_primes(const PrimeTable& table, std::int64_t limit,
                                            Method method) {
    return select_local_maxima(degree_profile(table, limit, method));
}

std::vector<SequenceEntry> insulation_operator(std::span<const SequenceEntry> entries,
                                               const PrimeTable& table) {
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && entries[i].value <= entries[i - 1].value)
            throw std::invalid_argument("insulation_operator: entries must be strictly increasing");
        if (!entries.empty() && entries[i].depth != entries[0].depth)
            throw std::invalid_argument("insulation_operator: entries must share one depth");
        if (entries[i].degree != degree_closed(table, entries[i].value).degree)
            throw std::invalid_argument("insulation_operator: entry degree for " +
                                        std::to_string(entries[i].value) +
                                        " does not match the prime's degree");
    }
    std::vector<SequenceEntry> out;
    if (entries.size() < 3) return out;
    for (std::size_t i = 1; i + 1 < entries.size(); ++i) {
        if (entries[i].degree > entries[i - 1].degree && entries[i].degree > entries[i + 1].degree)
            out.push_back(SequenceEntry{static_cast<std::int64_t>(out.size()) + 1, entries[i].value,
                                        entries[i].degree, entries[i].depth + 1});
    }
    return out;
}

std::vector<SequenceEntry> highly_insulated(const PrimeTable& table, std::int64_t limit,
                                            int depth, Method method) {
    if (depth < 1)
        throw std::invalid_argument("highly_insulated: depth must be >= 1, got " + std::to_string(depth));
    // Classify over a padded range so entries just below limit still see
    // their successors at every depth, then cut back to < limit.
    const std::int64_t working_limit = limit + classification_headroom(limit);
    const std::int64_t needed = required_table_limit(working_limit);
    if (needed > table.limit())
        throw std::out_of_range("highly_insulated: limit " + std::to_string(limit) +
                                " needs a table with limit >= " + std::to_string(needed) +
                                ", have " + std::to_string(table.limit()));

    std::vector<SequenceEntry> seq = insulated_primes(table, working_limit, method);
    for (int d = 2; d <= depth; ++d) seq = insulation_operator(seq, table);

    std::vector<SequenceEntry> out;
    for (const SequenceEntry& e : seq) {
        if (e.value >= limit) break;
        out.push_back(SequenceEntry{static_cast<std::int64_t>(out.size()) + 1, e.value, e.degree,
                                    e.depth});
    }
    return out;
}

} // namespace insulatum
