#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "insulatum/analytics.hpp"
#include "insulatum/errors.hpp"
#include "insulatum/prime_table.hpp"
#include "insulatum/sequences.hpp"
#include "oracle_helpers.hpp"

using namespace insulatum;

TEST_CASE("frequency histogram below 30") {
    const auto table = build_table(2000);
    const auto hist = frequency_histogram(degree_profile(table, 30), 30);
    CHECK(hist.total == 10);
    CHECK(hist.counts.at(0) == 1);
    CHECK(hist.counts.at(1) == 5);
    CHECK(hist.counts.at(2) == 3);
    CHECK(hist.counts.at(4) == 1);
    CHECK(hist.counts.size() == 4);

    double mass = 0;
    std::int64_t count_sum = 0;
    for (const auto& [k, c] : hist.counts) count_sum += c;
    for (const auto& [k, frac] : hist.f) {
        CHECK(frac >= 0.0);
        CHECK(frac <= 1.0);
        mass += frac;
    }
    CHECK(count_sum == hist.total);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("frequency histogram degenerate and invalid inputs") {
    const auto table = build_table(2000);
    const auto tiny = frequency_histogram(degree_profile(table, 3), 3);
    CHECK(tiny.total == 1);
    CHECK(tiny.counts.at(0) == 1);
    CHECK(tiny.counts.size() == 1);

    auto records = degree_profile(table, 30);
    CHECK_THROWS_AS(frequency_histogram(records, 20), std::invalid_argument);
    records.erase(records.begin());
    CHECK_THROWS_AS(frequency_histogram(records, 30), std::invalid_argument);
}

TEST_CASE("degree one is the most frequent class below 1000") {
    const auto table = build_table(2000);
    const auto hist = frequency_histogram(degree_profile(table, 1000), 1000);
    std::int64_t argmax = -1;
    std::int64_t best = -1;
    for (const auto& [k, c] : hist.counts)
        if (c > best) {
            best = c;
            argmax = k;
        }
    CHECK(argmax == 1);
    CHECK(hist.total == 168);
}

TEST_CASE("twin counts by degree and by direct enumeration") {
    const auto table = build_table(2000);
    const auto hist = frequency_histogram(degree_profile(table, 30), 30);
    CHECK(twin_pair_count(hist) == 5);            // 3, 5, 11, 17, 29
    CHECK(direct_twin_pair_count(table, 30) == 4); // (3,5),(5,7),(11,13),(17,19)

    const auto tiny = frequency_histogram(degree_profile(table, 3), 3);
    CHECK(twin_pair_count(tiny) == 0);
    CHECK(direct_twin_pair_count(table, 3) == 0);
}

TEST_CASE("power-law fit recovers exact synthetic laws") {
    for (double a : {1.0, 7.0, 19.18}) {
        for (double b : {1.0, 1.093, 2.0}) {
            std::vector<double> x, y;
            for (int n = 1; n <= 100; ++n) {
                x.push_back(n);
                y.push_back(a * std::pow(double(n), b));
            }
            for (auto method :
                 {FitMethod::loglog_least_squares, FitMethod::nonlinear_least_squares}) {
                const auto fit = fit_power_law(x, y, method);
                CHECK(fit.a == doctest::Approx(a).epsilon(1e-10));
                CHECK(fit.b == doctest::Approx(b).epsilon(1e-10));
                CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(fit.sample_count == 100);
            }
        }
    }
}

TEST_CASE("power-law fit over integer sequence entries") {
    std::vector<SequenceEntry> entries;
    for (std::int64_t n = 1; n <= 40; ++n) entries.push_back({n, 7 * n, 1, 1});
    const auto fit = power_law_fit(entries);
    CHECK(fit.a == doctest::Approx(7.0).epsilon(1e-10));
    CHECK(fit.b == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<SequenceEntry> quadratic;
    for (std::int64_t n = 1; n <= 40; ++n) quadratic.push_back({n, 2 * n * n, 1, 1});
    const auto fit2 = power_law_fit(quadratic);
    CHECK(fit2.a == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit2.b == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("power-law fit scale covariance") {
    std::vector<double> x, y, y_scaled;
    for (int n = 1; n <= 60; ++n) {
        x.push_back(n);
        const double v = 3.7 * std::pow(double(n), 1.21) * (1.0 + 0.01 * std::sin(n));
        y.push_back(v);
        y_scaled.push_back(5.5 * v);
    }
    for (auto method : {FitMethod::loglog_least_squares, FitMethod::nonlinear_least_squares}) {
        const auto base = fit_power_law(x, y, method);
        const auto scaled = fit_power_law(x, y_scaled, method);
        CHECK(scaled.a == doctest::Approx(5.5 * base.a).epsilon(1e-9));
        CHECK(scaled.b == doctest::Approx(base.b).epsilon(1e-9));
    }
}

TEST_CASE("power-law fit input validation") {
    std::vector<double> x{1, 2, 3}, y{1, 2, 3};
    CHECK_THROWS_AS(fit_power_law(x, y), std::invalid_argument);
    std::vector<double> x10, y10;
    for (int n = 1; n <= 10; ++n) {
        x10.push_back(n);
        y10.push_back(n);
    }
    y10[3] = -1;
    CHECK_THROWS_AS(fit_power_law(x10, y10), std::invalid_argument);
    y10[3] = 4;
    std::vector<double> x9(x10.begin(), x10.end() - 1);
    CHECK_THROWS_AS(fit_power_law(x9, y10), std::invalid_argument);
}

TEST_CASE("gap relation audit holds exactly") {
    const auto table = build_table(11'000);
    const auto audit = gap_relation_audit(table, 3, 10'000);
    CHECK(audit.checked == 1228); // primes 3 <= p < 10^4
    CHECK(audit.exact_holds == audit.checked);
    CHECK(audit.exact_failures.empty());
    CHECK(audit.exact_rate() == doctest::Approx(1.0));
    CHECK(audit.asymptotic_holds < audit.checked); // e.g. 29 has D = 1, g_n = 2
    CHECK(audit.asymptotic_holds > 0);
}

TEST_CASE("gap relation worked examples") {
    const auto table = build_table(2000);
    const std::int64_t d23 = degree_naive(table, 23).degree;
    CHECK(d23 == std::min<std::int64_t>(23 - 19, 29 - 23 - 1));
    const std::int64_t d29 = degree_naive(table, 29).degree;
    CHECK(d29 == std::min<std::int64_t>(29 - 23, 31 - 29 - 1));
    CHECK(d29 != 31 - 29); // the asymptotic claim fails here
}

TEST_CASE("eq1 and the rosser bound never disagree on window members") {
    const auto table = build_table(11'000);
    const auto audit = eq1_rosser_audit(table, 3, 10'000);
    CHECK(audit.checked > 0);
    CHECK(audit.disagreements == 0);
    CHECK(audit.eq1_true == audit.checked);
    CHECK(audit.bound_above_one == audit.checked);
    CHECK(audit.min_bound > 1.0);
}

TEST_CASE("bench on single-prime ranges") {
    const auto table = build_table(2000);
    const auto at23 = bench_compare(table, 23, 24);
    CHECK(at23.prime_count == 1);
    CHECK(at23.naive.predicate_evals == 5); // checks m = 1..5
    CHECK(at23.naive.pi_evals == 10);
    CHECK(at23.all_agree);

    const auto at3 = bench_compare(table, 3, 4);
    CHECK(at3.naive.predicate_evals == 2);
    CHECK(at3.closed.neighbor_lookups == 2);
    CHECK(at3.all_agree);
}

TEST_CASE("bench totals over primes below ten thousand") {
    const auto table = build_table(required_table_limit(10'000));
    const auto report = bench_compare(table, 3, 10'000);
    CHECK(report.prime_count == 1228);
    CHECK(report.naive.predicate_evals == 6580); // sum of D(p)+1, frozen from the oracle run
    CHECK(report.bisect.predicate_evals < report.naive.predicate_evals);
    CHECK(report.bisect.max_predicate_evals <= 16);
    CHECK(report.closed.predicate_evals == 0);
    CHECK(report.all_agree);
    CHECK(report.predicate_speedup() > 1.0);
    CHECK(report.bracket_cap == table.max_gap() + 1);
}

TEST_CASE("audits demand a table with headroom") {
    const auto table = build_table(500);
    CHECK_THROWS_AS(gap_relation_audit(table, 3, 400), std::out_of_range);
    CHECK_THROWS_AS(bench_compare(table, 3, 400), std::out_of_range);
}
