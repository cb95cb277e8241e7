// =============================================================================
// test_neutral.cpp — Mutation-only walk, its equilibrium, and the peak search.
//
// Frozen reference: E(time to reach class 0 | start 6) = 296.904790 for
// ell = 6, kappa = 2, q = 0.05, recomputed independently (dense linear solve
// in another language) to all printed digits.
// =============================================================================
#include <cmath>
#include <vector>

#include "doctest.h"
#include "wfsp/kernels.hpp"
#include "wfsp/markov.hpp"
#include "wfsp/math_util.hpp"
#include "wfsp/neutral.hpp"
#include "wfsp/occupancy.hpp"
#include "wfsp/rng.hpp"

using namespace wfsp;

TEST_SUITE("neutral") {

TEST_CASE("equilibrium is the per-locus binomial and is invariant under mutation") {
    for (int kappa : {2, 4}) {
        const int ell = 9;
        const auto eq = binomial_equilibrium(ell, kappa);
        const double off = double(kappa - 1) / kappa;
        KahanSum total;
        for (int b = 0; b <= ell; ++b) {
            CHECK(std::abs(eq[b] - binom_pmf(ell, b, off)) < 1e-15);
            total.add(eq[b]);
        }
        CHECK(std::abs(total.value() - 1.0) < 1e-14);

        const ModelParams mp{1.0, ell, 1, kappa, 0.12};
        for (int c = 0; c <= ell; ++c) {
            KahanSum flow;
            for (int b = 0; b <= ell; ++b) flow.add(eq[b] * mutation_row(mp, b)[c]);
            CHECK(std::abs(flow.value() - eq[c]) < 1e-14);
        }
    }
}

TEST_CASE("single-locus search is geometric") {
    const ModelParams mp{1.0, 1, 1, 2, 0.08};
    const auto tau = expected_hitting_time_single(mp);
    CHECK(tau[0] == 0.0);
    CHECK(std::abs(tau[1] - 1.0 / mp.q) / tau[1] < 1e-13);
    // With a bigger alphabet only a fraction 1/(kappa-1) of the flips repair.
    const ModelParams mp5{1.0, 1, 1, 5, 0.08};
    CHECK(std::abs(expected_hitting_time_single(mp5)[1] - 4.0 / mp.q) < 1e-9);
}

TEST_CASE("hitting times against the frozen reference and basic shape") {
    const ModelParams mp{1.0, 6, 1, 2, 0.05};
    const auto tau = expected_hitting_time_single(mp);
    CHECK(std::abs(tau[6] - 296.904790) / tau[6] < 1e-6);
    for (int b = 0; b < 6; ++b) CHECK(tau[b] <= tau[b + 1]);
    // Most of the time goes into the last rung: even from b = 1 the walk
    // must fight the entropy pulling it back out.
    CHECK(tau[1] > 100.0);
}

TEST_CASE("return probability never beats the equilibrium ratio") {
    const ModelParams mp{1.0, 6, 1, 2, 0.1};
    const auto rep = return_probability_bound_check(mp, 40);
    CHECK(rep.ok);
    CHECK(rep.n_max == 40);
    CHECK(rep.max_violation <= 0.0);
}

TEST_CASE("equilibrium envelope holds in log space") {
    for (int kappa : {2, 3}) {
        const ModelParams mp{1.0, 16, 1, kappa, 0.05};
        const auto rep = equilibrium_bounds_check(mp);
        CHECK(rep.ok);
        CHECK(rep.max_low_violation <= 0.0);
        CHECK(rep.max_high_violation <= 0.0);
    }
}

TEST_CASE("one coordinate of the neutral population follows the mutation chain") {
    const ModelParams mp{1.0, 4, 5, 2, 0.2};
    const auto rep = ancestral_marginal_check(mp, 3, 20000, SplitRng(404, 2));
    CHECK(rep.dof > 0);
    CHECK(rep.p_value > 1e-4);
}

TEST_CASE("discovery time agrees with the exact absorbing solve on a tiny model") {
    const ModelParams mp{1.0, 2, 2, 2, 0.1};

    // Exact route: occupancy chain restricted to master-free states, absorbed
    // the moment anyone hits the peak.
    const OccupancyIndex idx(mp.m, mp.ell);
    std::vector<int> transient;
    for (int i = 0; i < idx.size(); ++i) {
        if (!has_master(idx.states()[i])) transient.push_back(i);
    }
    const int nt = static_cast<int>(transient.size());
    CHECK(nt == 3);  // (0,2,0), (0,1,1), (0,0,2)
    Matrix Q(nt, std::vector<double>(nt, 0.0));
    std::vector<double> exit(nt, 0.0);
    for (int i = 0; i < nt; ++i) {
        const auto& from = idx.states()[transient[i]];
        double stay = 0.0;
        for (int j = 0; j < nt; ++j) {
            Q[i][j] = transition_prob_occupancy(mp, from, idx.states()[transient[j]]);
            stay += Q[i][j];
        }
        exit[i] = 1.0 - stay;
    }
    const auto t_exact = absorbing_solve_gth(Q, exit, std::vector<double>(nt, 1.0));

    Occupancy far(mp.ell + 1, 0);
    far[mp.ell] = mp.m;
    int pos = -1;
    for (int i = 0; i < nt; ++i) {
        if (transient[i] == idx.index_of(far)) pos = i;
    }
    REQUIRE(pos >= 0);
    const double exact = t_exact[pos];

    // Monte Carlo route.
    const auto est = discovery_time_mc(mp, far, 4000, 1000000, SplitRng(31, 7));
    CHECK(est.replicas == 4000);
    CHECK(est.censored_fraction == 0.0);
    CHECK(!est.lower_bound_flag);
    CHECK(std::abs(est.mean - exact) <= 4.0 * est.se);

    // The population bound m * E(single searcher from the far end).
    const auto tau1 = expected_hitting_time_single(mp);
    CHECK(std::abs(est.bound - mp.m * tau1[mp.ell]) < 1e-12);
    CHECK(est.bound_satisfied);
    CHECK(est.mean <= est.bound);
}

TEST_CASE("selection strength is irrelevant before the peak is found") {
    Occupancy far = {0, 0, 0, 4};
    const ModelParams neutral{1.0, 3, 4, 2, 0.15};
    const ModelParams selective{5.0, 3, 4, 2, 0.15};
    const auto a = discovery_time_mc(neutral, far, 500, 20000, SplitRng(88, 1));
    const auto b = discovery_time_mc(selective, far, 500, 20000, SplitRng(88, 1));
    CHECK(a.mean == b.mean);  // bitwise: the draws never consult sigma
    CHECK(a.se == b.se);
    CHECK(a.censored_fraction == b.censored_fraction);
}

}  // TEST_SUITE
