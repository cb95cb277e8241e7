// =============================================================================
// test_math_rng.cpp — Numeric helpers and the splittable generator.
// =============================================================================
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "wfsp/math_util.hpp"
#include "wfsp/rng.hpp"

using namespace wfsp;

TEST_SUITE("math_rng") {

TEST_CASE("binomial coefficients: exact small values and range conventions") {
    CHECK(binomial(0, 0) == 1.0);
    CHECK(binomial(10, 3) == 120.0);
    CHECK(binomial(30, 15) == 155117520.0);
    CHECK(binomial(5, -1) == 0.0);
    CHECK(binomial(5, 6) == 0.0);
    CHECK(log_binomial(5, 6) == -std::numeric_limits<double>::infinity());
    // Pascal cache region vs lgamma region agree where they meet.
    CHECK(std::abs(log_binomial(64, 31) - std::log(binomial(64, 31))) < 1e-12);
    CHECK(std::abs(log_binomial(200, 77) -
                   (std::lgamma(201.0) - std::lgamma(78.0) - std::lgamma(124.0))) < 1e-10);
}

TEST_CASE("binomial pmf handles interior and degenerate p") {
    const double direct = binomial(10, 3) * std::pow(0.25, 3) * std::pow(0.75, 7);
    CHECK(std::abs(binom_pmf(10, 3, 0.25) - direct) < 1e-15);
    CHECK(std::abs(std::exp(log_binom_pmf(10, 3, 0.25)) - direct) < 1e-15);
    CHECK(binom_pmf(7, 0, 0.0) == 1.0);
    CHECK(binom_pmf(7, 1, 0.0) == 0.0);
    CHECK(binom_pmf(7, 7, 1.0) == 1.0);
    CHECK(binom_pmf(7, 6, 1.0) == 0.0);
    for (int n : {1, 5, 23}) {
        KahanSum s;
        for (int k = 0; k <= n; ++k) s.add(binom_pmf(n, k, 0.37));
        CHECK(std::abs(s.value() - 1.0) < 1e-14);
    }
}

TEST_CASE("log_sum_exp is safe far below the exp underflow threshold") {
    CHECK(std::abs(log_sum_exp({-1000.0, -1000.0}) - (-1000.0 + std::log(2.0))) < 1e-12);
    CHECK(log_sum_exp({}) == -std::numeric_limits<double>::infinity());
    LogSumExp acc;
    acc.add(-2000.0);
    acc.add(-2000.0);
    acc.add(-std::numeric_limits<double>::infinity());
    CHECK(std::abs(acc.value() - (-2000.0 + std::log(2.0))) < 1e-12);
}

TEST_CASE("Kahan accumulation keeps tiny addends that naive summation drops") {
    KahanSum kahan;
    double naive = 0.0;
    kahan.add(1.0);
    naive += 1.0;
    for (int i = 0; i < 100000; ++i) {
        kahan.add(1e-18);
        naive += 1e-18;
    }
    CHECK(naive == 1.0);  // every addend vanished
    CHECK(std::abs(kahan.value() - (1.0 + 1e-13)) < 1e-18);
}

TEST_CASE("chi-square tail against standard critical values") {
    // Classical 5% critical points.
    CHECK(std::abs(chi_square_tail(3.841458820694124, 1) - 0.05) < 1e-9);
    CHECK(std::abs(chi_square_tail(18.307038053275146, 10) - 0.05) < 1e-9);
    CHECK(chi_square_tail(0.0, 5) == 1.0);
    CHECK(chi_square_tail(1e4, 2) < 1e-100);
    // 2 dof tail is exp(-x/2) in closed form.
    for (double x : {0.5, 1.0, 3.7, 11.0}) {
        CHECK(std::abs(chi_square_tail(x, 2) - std::exp(-x / 2.0)) < 1e-12);
    }
}

TEST_CASE("chi-square GOF: zero statistic on exact proportions, pooling of thin cells") {
    const std::vector<double> probs = {0.5, 0.3, 0.2};
    const auto exact = chi_square_gof({500, 300, 200}, probs, 1000);
    CHECK(exact.stat == 0.0);
    CHECK(exact.p_value == 1.0);
    // A cell with expected count below the threshold gets pooled.
    const auto pooled = chi_square_gof({96, 3, 1}, {0.96, 0.03, 0.01}, 100);
    CHECK(pooled.pooled_cells > 0);
    CHECK(pooled.dof >= 1);
}

TEST_CASE("generator streams are deterministic and decorrelated") {
    SplitRng a(42, 0), b(42, 0), c(42, 1);
    bool same = true, diff = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        same = same && (x == b.next_u64());
        diff = diff || (x != c.next_u64());
    }
    CHECK(same);
    CHECK(diff);

    SplitRng root(99, 7);
    SplitRng s0 = root.split(0), s1 = root.split(1);
    CHECK(s0.next_u64() != s1.next_u64());
    // split is a pure function of (state, k): repeated splits agree.
    SplitRng t0 = root.split(0);
    CHECK(t0.next_u64() == SplitRng(99, 7).split(0).next_u64());
}

TEST_CASE("unit draws live in [0,1) and look uniform") {
    SplitRng rng(2024, 3);
    const int bins = 16, n = 160000;
    std::vector<long long> counts(bins, 0);
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        ++counts[static_cast<int>(u * bins)];
    }
    const auto gof = chi_square_gof(counts, std::vector<double>(bins, 1.0 / bins), n);
    CHECK(gof.p_value > 1e-4);
}

TEST_CASE("bounded draws cover the whole range and nothing else") {
    SplitRng rng(5, 0);
    std::vector<long long> counts(10, 0);
    for (int i = 0; i < 50000; ++i) {
        const auto v = rng.next_below(10);
        REQUIRE(v < 10);
        ++counts[v];
    }
    for (auto c : counts) CHECK(c > 4000);
    const auto gof = chi_square_gof(counts, std::vector<double>(10, 0.1), 50000);
    CHECK(gof.p_value > 1e-4);
}

}  // TEST_SUITE
