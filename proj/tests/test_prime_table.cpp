#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "insulatum/errors.hpp"
#include "insulatum/insulation.hpp"
#include "insulatum/prime_table.hpp"
#include "oracle_helpers.hpp"

using insulatum::build_table;
using insulatum::BuildOptions;

TEST_CASE("build_table produces the first primes") {
    const auto table = build_table(10);
    const std::vector<std::int64_t> expected{2, 3, 5, 7};
    CHECK(std::vector<std::int64_t>(table.primes().begin(), table.primes().end()) == expected);
    CHECK(table.limit() == 10);
    CHECK(table.size() == 4);
}

TEST_CASE("prime counts match trial division") {
    const auto table = build_table(30);
    CHECK(table.prime_count(23) == 9);
    CHECK(table.prime_count(23) == oracle::pi(23));

    const auto big = build_table(1000);
    CHECK(big.size() == 168);
    CHECK(big.prime_count(1000) == oracle::pi(1000));
}

TEST_CASE("worked-example prime counts") {
    const auto table = build_table(30);
    CHECK(table.prime_count(22) == 8);
    CHECK(table.prime_count(24) == 9);
    CHECK(table.prime_count(1) == 0);
    CHECK(table.prime_count(18) == 7);
    CHECK(table.prime_count(0) == 0);
    CHECK(table.prime_count(2) == 1);
}

TEST_CASE("prime_count rejects out-of-table and negative queries") {
    const auto table = build_table(30);
    CHECK_THROWS_AS(table.prime_count(31), std::out_of_range);
    CHECK_THROWS_AS(table.prime_count(-1), std::invalid_argument);
}

TEST_CASE("build_table argument and budget errors") {
    CHECK_THROWS_AS(build_table(1), std::invalid_argument);
    CHECK_THROWS_AS(build_table(-5), std::invalid_argument);
    BuildOptions tiny;
    tiny.memory_budget_bytes = 1024;
    CHECK_THROWS_AS(build_table(10'000'000, tiny), insulatum::ResourceError);
}

TEST_CASE("is_prime within the table") {
    const auto table = build_table(2000);
    CHECK(table.is_prime(23));
    CHECK(table.is_prime(2));
    CHECK_FALSE(table.is_prime(27));
    CHECK_FALSE(table.is_prime(0));
    CHECK_FALSE(table.is_prime(1));
    for (std::int64_t n = 0; n <= 2000; ++n)
        CHECK(table.is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("is_prime 64-bit fallback") {
    const auto table = build_table(1000);
    REQUIRE(table.mr_fallback_enabled());
    for (std::int64_t n = 10'000; n < 10'200; ++n)
        CHECK(table.is_prime(n) == oracle::is_prime(n));

    BuildOptions strict;
    strict.mr_fallback = false;
    const auto no_fallback = build_table(1000, strict);
    CHECK_THROWS_AS(no_fallback.is_prime(10'007), std::out_of_range);
}

TEST_CASE("deterministic Miller-Rabin agrees with trial division") {
    for (std::uint64_t n = 0; n < 20'000; ++n)
        CHECK(insulatum::is_prime_u64(n) == oracle::is_prime(static_cast<std::int64_t>(n)));
    CHECK(insulatum::is_prime_u64(2305843009213693951ull)); // 2^61 - 1
    CHECK_FALSE(insulatum::is_prime_u64(2305843009213693953ull));
}

TEST_CASE("prime neighbors") {
    const auto table = build_table(200);
    CHECK(table.next_prime(23) == 29);
    CHECK(table.prev_prime(23) == 19);
    CHECK(table.prev_prime(3) == 2);
    CHECK(table.next_prime(89) == oracle::next_prime(89));
    CHECK(table.next_prime(89) == 97);
    CHECK_THROWS_AS(table.next_prime(199), std::out_of_range);
    CHECK_THROWS_AS(table.prev_prime(2), std::out_of_range);
}

TEST_CASE("nth_prime") {
    const auto table = build_table(1000);
    CHECK(table.nth_prime(1) == 2);
    CHECK(table.nth_prime(9) == 23);
    CHECK(table.nth_prime(9) == oracle::primes_below(1000)[8]);
    CHECK(table.nth_prime(168) == 997);
    CHECK_THROWS_AS(table.nth_prime(0), std::out_of_range);
    CHECK_THROWS_AS(table.nth_prime(169), std::out_of_range);
}

TEST_CASE("pi increments exactly at primes") {
    const auto table = build_table(2000);
    for (std::int64_t x = 2; x <= 2000; ++x) {
        const std::int64_t diff = table.prime_count(x) - table.prime_count(x - 1);
        CHECK(diff == (oracle::is_prime(x) ? 1 : 0));
    }
}

TEST_CASE("neighbor round trips") {
    const auto table = build_table(5000);
    const auto ps = table.primes();
    for (std::size_t i = 1; i + 1 < ps.size(); ++i) {
        CHECK(table.next_prime(table.prev_prime(ps[i])) == ps[i]);
        CHECK(table.prev_prime(table.next_prime(ps[i])) == ps[i]);
    }
}

TEST_CASE("rosser bounds hold for primes from 17 up") {
    const auto table = build_table(10'000);
    for (std::int64_t p : table.primes()) {
        if (p < 17) continue;
        const double lo = static_cast<double>(p) / std::log(static_cast<double>(p));
        const double hi = insulatum::kRosserC * lo;
        const auto count = static_cast<double>(table.prime_count(p));
        CHECK(lo < count);
        CHECK(count < hi);
    }
}

TEST_CASE("prime_count and nth_prime are inverse") {
    const auto table = build_table(3000);
    for (std::int64_t n = 1; n <= table.size(); ++n)
        CHECK(table.prime_count(table.nth_prime(n)) == n);
}

TEST_CASE("construction is deterministic") {
    const auto a = build_table(50'000);
    const auto b = build_table(50'000);
    CHECK(std::equal(a.primes().begin(), a.primes().end(), b.primes().begin(), b.primes().end()));
    CHECK(a.max_gap() == b.max_gap());
}

TEST_CASE("max_gap matches a direct scan") {
    const auto table = build_table(10'000);
    std::int64_t expected = 0;
    const auto ps = table.primes();
    for (std::size_t i = 1; i < ps.size(); ++i) expected = std::max(expected, ps[i] - ps[i - 1]);
    CHECK(table.max_gap() == expected);
}

TEST_CASE("concurrent readers see consistent answers") {
    const auto table = build_table(100'000);
    std::vector<std::int64_t> sums(4, 0);
    std::vector<std::thread> workers;
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&, t] {
            for (std::int64_t x = t; x <= 100'000; x += 4) sums[static_cast<std::size_t>(t)] += table.prime_count(x);
        });
    for (auto& w : workers) w.join();
    std::int64_t total = std::accumulate(sums.begin(), sums.end(), std::int64_t{0});
    std::int64_t expected = 0;
    for (std::int64_t x = 0; x <= 100'000; ++x) expected += table.prime_count(x);
    CHECK(total == expected);
}
