// =============================================================================
// test_kernels.cpp — Mutation/selection kernels and the lumping identities.
// =============================================================================
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "wfsp/genotype.hpp"
#include "wfsp/kernels.hpp"
#include "wfsp/math_util.hpp"
#include "wfsp/neutral.hpp"
#include "wfsp/occupancy.hpp"
#include "wfsp/verify.hpp"

using namespace wfsp;

namespace {

void for_each_distance(int m, int ell, const std::function<void(const DistanceVector&)>& fn) {
    DistanceVector d(m, 0);
    while (true) {
        fn(d);
        int pos = m - 1;
        while (pos >= 0 && d[pos] == ell) d[pos--] = 0;
        if (pos < 0) return;
        ++d[pos];
    }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("mutation rows are stochastic over a parameter grid") {
    for (int ell : {1, 3, 17}) {
        for (int kappa : {2, 3, 5}) {
            for (double q : {0.0, 0.01, 0.3}) {
                const ModelParams mp{1.0, ell, 1, kappa, q};
                const auto M = mutation_kernel(mp);
                for (int b = 0; b <= ell; ++b) {
                    KahanSum s;
                    for (int c = 0; c <= ell; ++c) {
                        CHECK(M[b][c] >= 0.0);
                        s.add(M[b][c]);
                    }
                    CHECK(std::abs(s.value() - 1.0) < 1e-13);
                }
            }
        }
    }
}

TEST_CASE("zero mutation rate freezes every chromosome") {
    const ModelParams mp{2.0, 5, 1, 3, 0.0};
    const auto M = mutation_kernel(mp);
    for (int b = 0; b <= 5; ++b) {
        for (int c = 0; c <= 5; ++c) CHECK(M[b][c] == (b == c ? 1.0 : 0.0));
    }
}

TEST_CASE("hand-computed entries of the class transition law") {
    // ell = 2, kappa = 2, q = 0.1: one mismatched locus repairs with
    // probability q while the matched one must hold still.
    const ModelParams mp{1.0, 2, 1, 2, 0.1};
    const auto M = mutation_kernel(mp);
    CHECK(std::abs(M[1][0] - 0.1 * 0.9) < 1e-15);
    CHECK(std::abs(M[1][2] - 0.1 * 0.9) < 1e-15);          // matched locus breaks
    CHECK(std::abs(M[1][1] - (0.9 * 0.9 + 0.1 * 0.1)) < 1e-15);
    // From the peak the mismatch count is Binomial(ell, q).
    for (int c = 0; c <= 2; ++c) {
        CHECK(std::abs(M[0][c] - binom_pmf(2, c, 0.1)) < 1e-15);
    }
    // Full repair from the far corner costs (q / (kappa-1))^ell.
    const ModelParams mp3{1.0, 4, 1, 3, 0.2};
    const auto M3 = mutation_kernel(mp3);
    CHECK(std::abs(M3[4][0] - std::pow(0.1, 4)) < 1e-16);
}

TEST_CASE("larger alphabets shrink the repair rate, not the damage rate") {
    const ModelParams small{1.0, 6, 1, 2, 0.1};
    const ModelParams large{1.0, 6, 1, 8, 0.1};
    const auto Ms = mutation_kernel(small), Ml = mutation_kernel(large);
    CHECK(Ms[6][5] > Ml[6][5]);                 // repair needs the right letter
    CHECK(std::abs(Ms[0][1] - Ml[0][1]) < 1e-15);  // damage does not
}

TEST_CASE("detailed balance with respect to the binomial equilibrium") {
    for (int kappa : {2, 4}) {
        const ModelParams mp{1.0, 30, 1, kappa, 0.07};
        const auto M = mutation_kernel(mp);
        const auto eq = binomial_equilibrium(30, kappa);
        double worst = 0.0;
        for (int b = 0; b <= 30; ++b) {
            for (int c = 0; c <= 30; ++c) {
                worst = std::max(worst, std::abs(eq[b] * M[b][c] - eq[c] * M[c][b]));
            }
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("selection weights favor the peak by exactly the fitness ratio") {
    const ModelParams neutral{1.0, 2, 2, 2, 0.1};
    const auto w0 = selection_weights_distance(neutral, {0, 1});
    CHECK(std::abs(w0[0] - 0.5) < 1e-15);
    CHECK(std::abs(w0[1] - 0.5) < 1e-15);

    const ModelParams sel{2.0, 2, 2, 2, 0.1};
    const auto w1 = selection_weights_distance(sel, {0, 1});
    CHECK(std::abs(w1[0] - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(w1[1] - 1.0 / 3.0) < 1e-15);

    // Occupancy flavor agrees with the distance flavor on matching states.
    const auto w2 = selection_weights_occupancy(sel, occupancy_of({0, 1}, 2));
    for (int k = 0; k <= 2; ++k) CHECK(std::abs(w1[k] - w2[k]) < 1e-15);
}

TEST_CASE("distance kernel rows are stochastic") {
    const ModelParams mp{2.0, 2, 3, 3, 0.15};
    for_each_distance(mp.m, mp.ell, [&](const DistanceVector& d) {
        KahanSum s;
        for_each_distance(mp.m, mp.ell, [&](const DistanceVector& e) {
            s.add(transition_prob_distance(mp, d, e));
        });
        CHECK(std::abs(s.value() - 1.0) < 1e-12);
    });
}

TEST_CASE("occupancy kernel rows are stochastic and need the multinomial factor") {
    const ModelParams mp{2.0, 2, 3, 2, 0.1};
    const OccupancyIndex idx(mp.m, mp.ell);
    const auto P = occupancy_kernel(mp, idx);
    for (int i = 0; i < idx.size(); ++i) {
        KahanSum s;
        for (int j = 0; j < idx.size(); ++j) s.add(P[i][j]);
        CHECK(std::abs(s.value() - 1.0) < 1e-12);
    }
    // Without ordering freedom a single product undercounts: the transition
    // (3,0,0) -> (2,1,0) can place the off-peak child three ways.
    const Occupancy from = {3, 0, 0}, to = {2, 1, 0};
    const auto g = selection_weights_distance(mp, {0, 0, 0});
    const auto M = mutation_kernel(mp);
    double chrom0 = 0.0, chrom1 = 0.0;
    for (int k = 0; k <= mp.ell; ++k) {
        chrom0 += g[k] * M[k][0];
        chrom1 += g[k] * M[k][1];
    }
    const double product = chrom0 * chrom0 * chrom1;
    CHECK(std::abs(transition_prob_occupancy(mp, from, to) - 3.0 * product) < 1e-15);
}

TEST_CASE("one-chromosome population transitions equal the offspring class law") {
    const ModelParams mp{3.0, 3, 1, 2, 0.2};
    const auto M = mutation_kernel(mp);
    for (int b = 0; b <= mp.ell; ++b) {
        for (int c = 0; c <= mp.ell; ++c) {
            // A single parent is always selected, whatever sigma is.
            CHECK(std::abs(transition_prob_distance(mp, {b}, {c}) - M[b][c]) < 1e-15);
        }
    }
}

TEST_CASE("genotype machinery: distances, mutation products, stochastic rows") {
    CHECK(hamming_to_peak({0, 0, 0}) == 0);
    CHECK(hamming_to_peak({0, 2, 1}) == 2);

    const ModelParams mp{2.0, 2, 2, 2, 0.1};
    // Independent per-locus factors: stay (1-q), specific change q/(kappa-1).
    const double p01 = genotype_mutation_prob(mp, {0, 1}, {0, 0});
    CHECK(std::abs(p01 - 0.9 * 0.1) < 1e-15);
    const auto space = enumerate_genotypes(mp.ell, mp.kappa);
    CHECK(space.size() == 4);
    for (const auto& u : space) {
        KahanSum s;
        for (const auto& v : space) s.add(genotype_mutation_prob(mp, u, v));
        CHECK(std::abs(s.value() - 1.0) < 1e-14);
    }
    // Population transition rows sum to one over all target populations.
    GenotypePopulation pop;
    pop.ell = mp.ell;
    pop.kappa = mp.kappa;
    pop.rows = {{0, 1}, {1, 1}};
    KahanSum total;
    for (const auto& za : space) {
        for (const auto& zb : space) {
            GenotypePopulation z;
            z.ell = mp.ell;
            z.kappa = mp.kappa;
            z.rows = {za, zb};
            total.add(transition_prob_genotype(mp, pop, z));
        }
    }
    CHECK(std::abs(total.value() - 1.0) < 1e-12);
}

TEST_CASE("lumping: genotype law through the distance map matches the lumped kernels") {
    const ModelParams a{2.0, 2, 2, 2, 0.2};
    CHECK(lumping_error_chromosome_law(a) < 1e-13);
    CHECK(lumping_error_full_sum(a) < 1e-13);
    CHECK(lumping_error_occupancy(a) < 1e-13);
    const ModelParams b{1.0, 2, 3, 3, 0.05};
    CHECK(lumping_error_chromosome_law(b) < 1e-13);
    CHECK(lumping_error_occupancy(b) < 1e-13);
}

TEST_CASE("distance kernel is exchangeable and has the parent-mixture structure") {
    const ModelParams mp{2.0, 2, 3, 2, 0.15};
    CHECK(exchangeability_error(mp) < 1e-13);
    CHECK(parent_mixture_error(mp) < 1e-13);
}

TEST_CASE("oversized spaces are rejected by the brute-force guard") {
    const ModelParams big{2.0, 3, 3, 3, 0.1};
    CHECK_THROWS_AS((void)lumping_error_full_sum(big), std::invalid_argument);
}

}  // TEST_SUITE
