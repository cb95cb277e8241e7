// =============================================================================
// test_two_type.cpp — Exact two-type kernels against closed forms and the
// coupled sampler.
//
// The kernel is assembled as a convolution of two binomials in log space.
// Independently, one offspring lands on the peak with probability
// p_sel M(0,0) + (1 - p_sel) M(theta,0), independently of its siblings, so
// every row must be exactly Binomial(m, that probability).  The tests lean on
// that equivalence plus the m = 1 geometric chain, then cross the kernel
// against realizations produced by the coupled random-input machinery.
// =============================================================================
#include <cmath>
#include <vector>

#include "doctest.h"
#include "wfsp/coupling.hpp"
#include "wfsp/kernels.hpp"
#include "wfsp/math_util.hpp"
#include "wfsp/rng.hpp"
#include "wfsp/two_type.hpp"

using namespace wfsp;

namespace {

double effective_peak_prob(const TwoTypeKernel& K, int z) {
    const double m = static_cast<double>(K.m);
    const double sigma = K.params.sigma;
    const double p_sel = sigma * z / ((sigma - 1.0) * z + m);
    return p_sel * K.keep_prob + (1.0 - p_sel) * K.entry_prob;
}

}  // namespace

TEST_SUITE("two_type") {

TEST_CASE("mutation probabilities entering the kernel have their closed form") {
    const ModelParams mp{2.0, 5, 9, 3, 0.2};
    const double beta = mp.q / (mp.kappa - 1);
    for (Theta th : {Theta::Upper, Theta::Lower}) {
        const auto K = build_two_type_kernel(mp, th);
        const int t = theta_class(th, mp.ell);
        CHECK(std::abs(K.keep_prob - std::pow(1 - mp.q, mp.ell)) < 1e-15);
        CHECK(std::abs(K.entry_prob -
                       std::pow(beta, t) * std::pow(1 - mp.q, mp.ell - t)) < 1e-16);
        // Same numbers the generic mutation kernel produces.
        const auto M = mutation_row(mp, 0);
        const auto Mt = mutation_row(mp, t);
        CHECK(std::abs(K.keep_prob - M[0]) < 1e-15);
        CHECK(std::abs(K.entry_prob - Mt[0]) < 1e-16);
    }
}

TEST_CASE("every row is the binomial with the effective peak probability") {
    const ModelParams mp{3.0, 4, 37, 2, 0.08};
    for (Theta th : {Theta::Upper, Theta::Lower}) {
        const auto K = build_two_type_kernel(mp, th);
        for (int z = 0; z <= K.m; ++z) {
            const double pz = effective_peak_prob(K, z);
            for (int k = 0; k <= K.m; ++k) {
                const double ref = binom_pmf(K.m, k, pz);
                CHECK(std::abs(K.p[z][k] - ref) < 1e-12);
                if (ref > 0.0) {
                    CHECK(std::abs(K.log_p[z][k] - std::log(ref)) < 1e-9 * std::abs(std::log(ref)) + 1e-11);
                }
            }
        }
    }
}

TEST_CASE("rows stay normalized in log space at large m") {
    const ModelParams mp{2.0, 20, 120, 2, 0.015};
    const auto K = build_two_type_kernel(mp, Theta::Lower);
    for (int z = 0; z <= K.m; ++z) {
        CHECK(std::abs(log_sum_exp(K.log_p[z])) < 1e-11);
    }
}

TEST_CASE("m = 1 collapses to the two-state geometric chain") {
    const ModelParams mp{4.0, 3, 1, 2, 0.1};
    const auto K = build_two_type_kernel(mp, Theta::Upper);
    // A single offspring always draws the peak parent when z = 1.
    CHECK(std::abs(K.p[1][1] - K.keep_prob) < 1e-15);
    CHECK(std::abs(K.p[1][0] - (1 - K.keep_prob)) < 1e-15);
    CHECK(std::abs(K.p[0][1] - K.entry_prob) < 1e-15);
    const auto tau = expected_hitting_time(K);
    CHECK(tau[0] == 0.0);
    CHECK(std::abs(tau[1] - 1.0 / (1.0 - K.keep_prob)) / tau[1] < 1e-13);
}

TEST_CASE("kernel rows match the coupled realization law") {
    const ModelParams mp{2.0, 3, 6, 2, 0.12};
    SplitRng rng(512, 9);
    const int n = 60000;
    for (Theta th : {Theta::Upper, Theta::Lower}) {
        const auto K = build_two_type_kernel(mp, th);
        for (int z : {1, 3, 6}) {
            std::vector<long long> counts(mp.m + 1, 0);
            for (int it = 0; it < n; ++it) {
                const auto R = RandomInputMatrix::draw(mp.m, mp.ell, rng);
                counts[static_cast<std::size_t>(two_type_step(mp, z, R, th))] += 1;
            }
            const auto gof = chi_square_gof(counts, K.p[z], n);
            CHECK(gof.p_value > 1e-4);
        }
    }
}

TEST_CASE("hitting times grow with the starting level") {
    const ModelParams mp{2.0, 6, 24, 2, 0.05};
    for (Theta th : {Theta::Upper, Theta::Lower}) {
        const auto tau = expected_hitting_time(build_two_type_kernel(mp, th));
        for (int i = 0; i < mp.m; ++i) CHECK(tau[i] <= tau[i + 1]);
        CHECK(tau[1] > 1.0);
    }
}

TEST_CASE("the upper chain dominates the lower chain") {
    const ModelParams mp{2.0, 6, 18, 2, 0.05};
    const auto KU = build_two_type_kernel(mp, Theta::Upper);
    const auto KL = build_two_type_kernel(mp, Theta::Lower);
    for (int z = 0; z <= mp.m; ++z) {
        double cu = 0.0, cl = 0.0;
        for (int k = 0; k <= mp.m; ++k) {
            cu += KU.p[z][k];
            cl += KL.p[z][k];
            CHECK(cu <= cl + 1e-12);  // upper CDF below => stochastically larger
        }
    }
    const auto tu = expected_hitting_time(KU);
    const auto tl = expected_hitting_time(KL);
    for (int i = 0; i <= mp.m; ++i) CHECK(tu[i] >= tl[i] - 1e-9);
}

TEST_CASE("occupation functional with f == 1 counts the path length") {
    const ModelParams mp{2.0, 4, 10, 2, 0.08};
    const auto K = build_two_type_kernel(mp, Theta::Upper);
    const auto tau = expected_hitting_time(K);
    const auto occ = occupation_functional(K, [](double) { return 1.0; });
    for (int i = 1; i <= mp.m; ++i) {
        CHECK(std::abs(occ[i] - (tau[i] + 1.0)) / occ[i] < 1e-12);
    }
    CHECK(occ[0] == 1.0);  // the path that starts absorbed still counts its endpoint
}

TEST_CASE("stationary law is a fixed point and sums to one") {
    const ModelParams mp{2.0, 2, 12, 2, 0.2};
    const auto K = build_two_type_kernel(mp, Theta::Upper);
    const auto mu = stationary_distribution(K);
    KahanSum total;
    for (double v : mu) {
        CHECK(v >= 0.0);
        total.add(v);
    }
    CHECK(std::abs(total.value() - 1.0) < 1e-13);
    for (int k = 0; k <= mp.m; ++k) {
        KahanSum flow;
        for (int i = 0; i <= mp.m; ++i) flow.add(mu[i] * K.p[i][k]);
        CHECK(std::abs(flow.value() - mu[k]) < 1e-13);
    }
    // Mild mixing here, so plain power iteration gives the same law.
    const auto mu_pow = stationary_power(K.p);
    for (int k = 0; k <= mp.m; ++k) CHECK(std::abs(mu[k] - mu_pow[k]) < 1e-11);
}

TEST_CASE("metastable occupation fraction sits near the deterministic fixed point") {
    // Scaling window: ell = m, q = a / m with a = 0.3, sigma = 2.  Averaged
    // over the excursion from full occupancy down to extinction, the peak
    // fraction should hover near rho* = (sigma e^{-a} - 1) / (sigma - 1).
    const int m = 40;
    const double a = 0.3;
    const ModelParams mp{2.0, m, m, 2, a / m};
    const auto K = build_two_type_kernel(mp, Theta::Upper);
    const auto mass = occupation_functional(K, [](double x) { return x; });
    const auto len = occupation_functional(K, [](double) { return 1.0; });
    const double ratio = mass[m] / len[m];
    const double rho_star = (2.0 * std::exp(-a) - 1.0);
    CHECK(std::abs(ratio - rho_star) < 0.05);
}

}  // TEST_SUITE
