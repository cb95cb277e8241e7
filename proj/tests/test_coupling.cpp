// =============================================================================
// test_coupling.cpp — Shared-randomness maps: marginals, order preservation,
// the pinned counterexample, and the projection sandwich.
// =============================================================================
#include <cmath>
#include <vector>

#include "doctest.h"
#include "wfsp/coupling.hpp"
#include "wfsp/kernels.hpp"
#include "wfsp/math_util.hpp"
#include "wfsp/occupancy.hpp"
#include "wfsp/rng.hpp"
#include "wfsp/simulate.hpp"
#include "wfsp/verify.hpp"

using namespace wfsp;

TEST_SUITE("coupling") {

TEST_CASE("theta projections and their target classes") {
    CHECK(theta_class(Theta::Lower, 7) == 7);
    CHECK(theta_class(Theta::Upper, 7) == 1);
    const Occupancy o = {1, 2, 0, 3};
    CHECK(project_lower(o) == Occupancy{1, 0, 0, 5});
    CHECK(project_upper(o) == Occupancy{1, 5, 0, 0});
    CHECK(precedes(project_lower(o), o));
    CHECK(precedes(o, project_upper(o)));
}

TEST_CASE("mutation map: band thresholds act exactly as documented") {
    const ModelParams mp{1.0, 3, 1, 3, 0.3};  // repair band [0, 0.15), gain band (0.7, 1)
    // From b=2: first two slots can repair, the last can break.
    const double u1[3] = {0.10, 0.90, 0.40};
    CHECK(mutate_coupled(mp, 2, u1) == 1);  // one repair, no gain
    const double u2[3] = {0.20, 0.16, 0.75};
    CHECK(mutate_coupled(mp, 2, u2) == 3);  // no repair, one gain
    const double u3[3] = {0.14, 0.149, 0.71};
    CHECK(mutate_coupled(mp, 2, u3) == 1);  // two repairs, one gain
    // Inert middle band moves nothing.
    const double u4[3] = {0.5, 0.5, 0.5};
    for (int b = 0; b <= 3; ++b) CHECK(mutate_coupled(mp, b, u4) == b);
}

TEST_CASE("mutation map marginal law equals the exact mutation row") {
    const ModelParams mp{1.0, 5, 1, 3, 0.25};
    const auto M = mutation_kernel(mp);
    SplitRng rng(314, 0);
    const int n = 200000;
    for (int b : {0, 2, 5}) {
        std::vector<long long> counts(mp.ell + 1, 0);
        std::vector<double> u(mp.ell);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < mp.ell; ++k) u[k] = rng.next_unit();
            ++counts[mutate_coupled(mp, b, u.data())];
        }
        const auto gof = chi_square_gof(counts, M[b], n);
        CHECK(gof.p_value > 1e-4);
    }
}

TEST_CASE("mutation map is monotone across every uniform band combination") {
    for (int kappa : {2, 3}) {
        const auto rep = mutation_monotone_exhaustive(ModelParams{1.0, 4, 1, kappa, 0.2});
        CHECK(rep.trials > 0);
        CHECK(rep.violations == 0);
    }
}

TEST_CASE("selection lookup: half-open cumulative intervals, zero-based") {
    // Neutral: parent index is floor(m s).
    const ModelParams neutral{1.0, 2, 4, 2, 0.1};
    const DistanceVector d = {2, 1, 0, 2};
    CHECK(select_coupled_distance(neutral, d, 0.0) == 0);
    CHECK(select_coupled_distance(neutral, d, 0.2499999) == 0);
    CHECK(select_coupled_distance(neutral, d, 0.25) == 1);
    CHECK(select_coupled_distance(neutral, d, 0.75) == 3);
    CHECK(select_coupled_distance(neutral, d, 0.999999) == 3);

    // Fitness 2 for the peak chromosome: cumulative weights 1/2, 3/4, 1.
    const ModelParams sel{2.0, 1, 3, 2, 0.1};
    const DistanceVector ds = {0, 1, 1};
    CHECK(select_coupled_distance(sel, ds, 0.49) == 0);
    CHECK(select_coupled_distance(sel, ds, 0.50) == 1);
    CHECK(select_coupled_distance(sel, ds, 0.74) == 1);
    CHECK(select_coupled_distance(sel, ds, 0.75) == 2);

    // Occupancy flavor returns the parent class and skips empty classes.
    const ModelParams mo{2.0, 2, 3, 2, 0.1};
    const Occupancy o = {1, 0, 2};  // weights 2, 0, 2 -> cum 1/2, 1/2, 1
    CHECK(select_coupled_occupancy(mo, o, 0.3) == 0);
    CHECK(select_coupled_occupancy(mo, o, 0.5) == 2);
    CHECK(select_coupled_occupancy(mo, o, 0.99) == 2);
}

TEST_CASE("coupled distance step has the exact kernel as its marginal") {
    const ModelParams mp{2.0, 1, 2, 2, 0.2};
    SplitRng rng(99, 4);
    const int n = 120000;
    for (const DistanceVector& d :
         {DistanceVector{0, 0}, DistanceVector{0, 1}, DistanceVector{1, 1}}) {
        std::vector<long long> counts(4, 0);
        for (int i = 0; i < n; ++i) {
            const auto r = RandomInputMatrix::draw(mp.m, mp.ell, rng);
            const auto e = coupled_step_distance(mp, d, r);
            ++counts[e[0] * 2 + e[1]];
        }
        std::vector<double> expect;
        for (const DistanceVector& e : {DistanceVector{0, 0}, DistanceVector{0, 1},
                                        DistanceVector{1, 0}, DistanceVector{1, 1}}) {
            expect.push_back(transition_prob_distance(mp, d, e));
        }
        const auto gof = chi_square_gof(counts, expect, n);
        CHECK(gof.p_value > 1e-4);
    }
}

TEST_CASE("coupled occupancy step has the exact kernel as its marginal") {
    const ModelParams mp{2.0, 1, 3, 2, 0.25};
    const OccupancyIndex idx(mp.m, mp.ell);
    const auto P = occupancy_kernel(mp, idx);
    SplitRng rng(7, 2);
    const int n = 120000;
    const Occupancy start = {1, 2};
    const int row = idx.index_of(start);
    std::vector<long long> counts(idx.size(), 0);
    for (int i = 0; i < n; ++i) {
        const auto r = RandomInputMatrix::draw(mp.m, mp.ell, rng);
        ++counts[idx.index_of(coupled_step_occupancy(mp, start, r))];
    }
    const auto gof = chi_square_gof(counts, P[row], n);
    CHECK(gof.p_value > 1e-4);
}

TEST_CASE("occupancy step preserves the partial-sum order") {
    const ModelParams mp{2.0, 3, 4, 2, 0.12};
    const auto exh = occupancy_monotone_exhaustive(mp, 40, SplitRng(11, 0));
    CHECK(exh.trials > 0);
    CHECK(exh.violations == 0);
    const ModelParams big{2.0, 6, 12, 2, 0.05};
    const auto mc = occupancy_monotone_mc(big, 50000, SplitRng(12, 0));
    CHECK(mc.violations == 0);
}

TEST_CASE("neutral distance step preserves the componentwise order") {
    const ModelParams mp{1.0, 4, 6, 3, 0.2};
    const auto rep = distance_monotone_neutral_mc(mp, 50000, SplitRng(13, 0));
    CHECK(rep.violations == 0);
}

TEST_CASE("selective distance step counterexample reproduces exactly") {
    CHECK(selective_step_counterexample());
    // Spell the instance out as well: with fitness profiles differing only in
    // chromosome 0, the shared selection uniforms pick different parents and
    // the images become incomparable.
    ModelParams mp{2.0, 2, 3, 3, 0.3};
    RandomInputMatrix r;
    r.m = 3;
    r.ell = 2;
    r.u = {0.70, 0.40, 0.40, 0.80, 0.40, 0.40, 0.80, 0.40, 0.40};
    const auto lo = coupled_step_distance(mp, {0, 2, 1}, r);
    const auto hi = coupled_step_distance(mp, {1, 2, 1}, r);
    CHECK(lo == DistanceVector{2, 1, 1});
    CHECK(hi == DistanceVector{1, 1, 1});
    CHECK(lo[0] > hi[0]);  // order broken in coordinate 0
    CHECK(lo[1] >= hi[1]);
}

TEST_CASE("bounded step: plain in the interior, projected on discovery or on the peak set") {
    const ModelParams mp{2.0, 3, 5, 2, 0.15};
    SplitRng rng(21, 0);
    for (int trial = 0; trial < 4000; ++trial) {
        Occupancy o(mp.ell + 1, 0);
        for (int i = 0; i < mp.m; ++i) ++o[static_cast<int>(rng.next_below(mp.ell + 1))];
        const auto r = RandomInputMatrix::draw(mp.m, mp.ell, rng);
        for (Theta th : {Theta::Lower, Theta::Upper}) {
            const auto project = th == Theta::Lower ? project_lower : project_upper;
            const Occupancy got = bounded_step(mp, o, r, th);
            Occupancy want;
            if (o[0] == 0) {
                const Occupancy plain = coupled_step_occupancy(mp, o, r);
                want = plain[0] == 0 ? plain : project(plain);
            } else {
                want = project(coupled_step_occupancy(mp, project(o), r));
            }
            CHECK(got == want);
        }
    }
}

TEST_CASE("bounding processes sandwich the plain chain path by path") {
    const ModelParams mp{2.0, 4, 8, 2, 0.08};
    Occupancy start(mp.ell + 1, 0);
    start[mp.ell] = mp.m;
    const auto rep = sandwich_mc(mp, start, 2000, 5, 1234);
    CHECK(rep.violations == 0);
}

TEST_CASE("two-type embedding state and step") {
    const ModelParams mp{2.0, 3, 5, 2, 0.1};
    CHECK(two_type_state(mp, 2, Theta::Lower) == Occupancy{2, 0, 0, 3});
    CHECK(two_type_state(mp, 2, Theta::Upper) == Occupancy{2, 3, 0, 0});
    SplitRng rng(5, 5);
    for (int trial = 0; trial < 2000; ++trial) {
        const int z = static_cast<int>(rng.next_below(mp.m + 1));
        const auto r = RandomInputMatrix::draw(mp.m, mp.ell, rng);
        for (Theta th : {Theta::Lower, Theta::Upper}) {
            const int znext = two_type_step(mp, z, r, th);
            CHECK(znext >= 0);
            CHECK(znext <= mp.m);
            // The embedded step agrees with the bounded occupancy step.
            const auto o = bounded_step(mp, two_type_state(mp, z, th), r, th);
            CHECK(znext == o[0]);
        }
    }
}

TEST_CASE("neutral chain from a deterministic start has positive correlations") {
    const double min_cov = fkg_exact_min_covariance(ModelParams{1.0, 1, 2, 2, 0.2}, 6);
    CHECK(min_cov > -1e-12);
    const auto mc = fkg_mc_check(ModelParams{1.0, 3, 4, 2, 0.15}, 3, 6000, SplitRng(31, 0));
    CHECK(mc.ok);
}

}  // TEST_SUITE
