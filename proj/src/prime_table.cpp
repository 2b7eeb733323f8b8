#include "insulatum/prime_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "insulatum/errors.hpp"

namespace insulatum {

namespace {

std::int64_t isqrt64(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Base set covering all 64-bit integers (Sorenson & Webster).
constexpr std::uint64_t kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kMrBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kMrBases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeTable build_table(std::int64_t limit, const BuildOptions& options) {
    if (limit < 2)
        throw std::invalid_argument("build_table: limit must be >= 2, got " + std::to_string(limit));

    // pi(x) < 1.3 * x / ln x for x >= 17; small limits cost nothing.
    const double ln = std::log(std::max<double>(3.0, static_cast<double>(limit)));
    const double estimated_bytes = 1.3 * static_cast<double>(limit) / ln * 8.0 + double(PrimeTable::kSegmentSize);
    if (estimated_bytes > static_cast<double>(options.memory_budget_bytes))
        throw ResourceError("build_table: limit " + std::to_string(limit) +
                            " needs ~" + std::to_string(static_cast<std::int64_t>(estimated_bytes)) +
                            " bytes of prime storage, over the " +
                            std::to_string(options.memory_budget_bytes) +
                            "-byte budget; raise BuildOptions.memory_budget_bytes or lower the limit");

    const std::int64_t root = isqrt64(limit);
    std::vector<char> base_mark(static_cast<std::size_t>(root) + 1, 1);
    if (root >= 0) base_mark[0] = 0;
    if (root >= 1) base_mark[1] = 0;
    for (std::int64_t i = 2; i * i <= root; ++i)
        if (base_mark[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j <= root; j += i)
                base_mark[static_cast<std::size_t>(j)] = 0;
    std::vector<std::int64_t> base_primes;
    for (std::int64_t i = 2; i <= root; ++i)
        if (base_mark[static_cast<std::size_t>(i)]) base_primes.push_back(i);

    std::vector<std::int64_t> primes;
    primes.reserve(static_cast<std::size_t>(estimated_bytes / 8.0) + 16);
    std::int64_t max_gap = 0;
    std::int64_t prev = 0;

    std::vector<char> segment(PrimeTable::kSegmentSize);
    for (std::int64_t low = 2; low <= limit; low += PrimeTable::kSegmentSize) {
        const std::int64_t high = std::min(low + PrimeTable::kSegmentSize - 1, limit);
        std::fill(segment.begin(), segment.begin() + (high - low + 1), 1);
        for (std::int64_t p : base_primes) {
            if (p * p > high) break;
            std::int64_t start = std::max(p * p, ((low + p - 1) / p) * p);
            for (std::int64_t j = start; j <= high; j += p)
                segment[static_cast<std::size_t>(j - low)] = 0;
        }
        for (std::int64_t v = low; v <= high; ++v) {
            if (!segment[static_cast<std::size_t>(v - low)]) continue;
            if (prev != 0) max_gap = std::max(max_gap, v - prev);
            prev = v;
            primes.push_back(v);
        }
    }

    return PrimeTable(limit, std::move(primes), max_gap, options.mr_fallback);
}

std::int64_t PrimeTable::prime_count(std::int64_t x) const {
    if (x < 0)
        throw std::invalid_argument("prime_count: x must be >= 0, got " + std::to_string(x));
    if (x > limit_)
        throw std::out_of_range("prime_count: x = " + std::to_string(x) +
                                " exceeds table limit " + std::to_string(limit_) +
                                "; build a table with limit >= " + std::to_string(x));
    auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
    return static_cast<std::int64_t>(it - primes_.begin());
}

bool PrimeTable::is_prime(std::int64_t n) const {
    if (n >= 0 && n <= limit_)
        return std::binary_search(primes_.begin(), primes_.end(), n);
    if (n > limit_ && mr_fallback_)
        return is_prime_u64(static_cast<std::uint64_t>(n));
    throw std::out_of_range("is_prime: n = " + std::to_string(n) +
                            " outside table limit " + std::to_string(limit_) +
                            " and the 64-bit fallback is " +
                            (mr_fallback_ ? "inapplicable" : "disabled"));
}

std::int64_t PrimeTable::next_prime(std::int64_t n) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
    if (it == primes_.end())
        throw std::out_of_range("next_prime: no prime > " + std::to_string(n) +
                                " within table limit " + std::to_string(limit_));
    return *it;
}

std::int64_t PrimeTable::prev_prime(std::int64_t n) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), n);
    if (it == primes_.begin())
        throw std::out_of_range("prev_prime: no prime < " + std::to_string(n));
    return *(it - 1);
}

std::int64_t PrimeTable::nth_prime(std::int64_t n) const {
    if (n < 1 || n > size())
        throw std::out_of_range("nth_prime: n = " + std::to_string(n) +
                                " outside [1, " + std::to_string(size()) + "]");
    return primes_[static_cast<std::size_t>(n - 1)];
}

} // namespace insulatum
