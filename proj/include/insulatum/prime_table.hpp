#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace insulatum {

struct BuildOptions {
    // Refuse builds whose prime list would outgrow this. 512 MiB holds the
    // primes below ~1.4e9 as 64-bit values.
    std::uint64_t memory_budget_bytes = 512ull << 20;
    // Exact strong-probable-prime fallback for is_prime() above the table
    // limit (deterministic base set, valid for all 64-bit integers).
    bool mr_fallback = true;
};

/// Immutable sieve-backed prime store: primality, pi(x), neighbors and
/// n-th prime over [0, limit]. Queries are read-only and safe to share
/// across threads once built.
class PrimeTable {
public:
    static constexpr std::int64_t kSegmentSize = 1 << 16;

    std::int64_t limit() const { return limit_; }
    std::int64_t size() const { return static_cast<std::int64_t>(primes_.size()); }
    std::span<const std::int64_t> primes() const { return primes_; }
    std::int64_t last_prime() const { return primes_.back(); }

    // Largest gap between consecutive stored primes (0 if only one prime).
    std::int64_t max_gap() const { return max_gap_; }
    bool mr_fallback_enabled() const { return mr_fallback_; }

    /// Exact pi(x) for 0 <= x <= limit; throws out_of_range beyond the
    /// table rather than estimating.
    std::int64_t prime_count(std::int64_t x) const;

    /// Exact primality for 0 <= n <= limit; above the limit an exact
    /// 64-bit Miller-Rabin verdict when the fallback is enabled.
    bool is_prime(std::int64_t n) const;

    /// Smallest prime > n within the table.
    std::int64_t next_prime(std::int64_t n) const;
    /// Largest prime < n within the table.
    std::int64_t prev_prime(std::int64_t n) const;
    /// 1-indexed: nth_prime(1) = 2.
    std::int64_t nth_prime(std::int64_t n) const;

private:
    PrimeTable(std::int64_t limit, std::vector<std::int64_t> primes,
               std::int64_t max_gap, bool mr_fallback)
        : limit_(limit), primes_(std::move(primes)), max_gap_(max_gap),
          mr_fallback_(mr_fallback) {}

    friend PrimeTable build_table(std::int64_t, const BuildOptions&);
    friend PrimeTable load_table_cache(const std::string&, const BuildOptions&);

    std::int64_t limit_;
    std::vector<std::int64_t> primes_;
    std::int64_t max_gap_;
    bool mr_fallback_;
};

/// Sieves all primes <= limit (segmented, fixed 2^16 segments).
/// Deterministic for a given limit. limit < 2 is invalid-argument; a limit
/// whose prime list would exceed the memory budget raises ResourceError.
PrimeTable build_table(std::int64_t limit, const BuildOptions& options = {});

/// Deterministic Miller-Rabin, exact for every 64-bit n.
bool is_prime_u64(std::uint64_t n);

} // namespace insulatum
