// =============================================================================
// neutral.hpp — The mutation-only phase: single-chromosome chain and search
// for the peak.
//
// Without selection every chromosome's distance class performs the same
// mutation walk, whose reversible equilibrium is Binomial(ell, 1 - 1/kappa):
// each locus is off-peak with probability 1 - 1/kappa independently.  Two
// consequences are checked numerically here:
//
//   - return probability bound: P(walk sits at 0 at time n | started at b)
//     never exceeds eq(0) / eq(b), uniformly in n (spectral argument for
//     reversible chains);
//   - discovery time: a population of m independent-ish searchers finds the
//     peak no slower, in expectation, than m times slower than one searcher
//     started at the far end, giving E(tau*) <= m E(tau_0 | Y_0 = ell).
//
// The growth rate (1/ell) ln E(tau_0 | Y_0 = ell) approaches ln kappa from
// below as ell grows with a = ell q fixed: the searcher has to beat the
// kappa^ell entropy of sequence space.
// =============================================================================
#pragma once

#include <vector>

#include "wfsp/occupancy.hpp"
#include "wfsp/params.hpp"
#include "wfsp/rng.hpp"

namespace wfsp {

// Binomial(ell, 1 - 1/kappa) over distance classes.
[[nodiscard]] std::vector<double> binomial_equilibrium(int ell, int kappa);

// E(time to hit `target` | start = b) for every b, on the single-chromosome
// mutation chain.  Cancellation-free solve.
[[nodiscard]] std::vector<double> expected_hitting_time_single(const ModelParams& mp,
                                                               int target = 0);

struct ReturnBoundReport {
    int n_max = 0;
    double max_violation = 0.0;  // max over (n, b) of P^n(b,0) - eq(0)/eq(b)
    bool ok = false;
};

// Checks P^n(b, 0) <= eq(0) / eq(b) for n = 1..n_max via exact matrix powers.
[[nodiscard]] ReturnBoundReport return_probability_bound_check(const ModelParams& mp, int n_max);

struct EquilibriumBoundsReport {
    double max_low_violation = 0.0;   // log-scale slack of the lower bound
    double max_high_violation = 0.0;  // log-scale slack of the upper bound
    bool ok = false;
};

// Elementary envelope kappa^-ell (ell/2b)^b <= eq(b) <= ell^b kappa^(b-ell)
// for b <= ell/2, compared in log space.
[[nodiscard]] EquilibriumBoundsReport equilibrium_bounds_check(const ModelParams& mp);

struct MarginalCheckReport {
    double chi2 = 0.0;
    int dof = 0;
    double p_value = 0.0;
};

// The single-chromosome marginal of the m-chromosome neutral process after
// n steps must follow the mutation chain law (statistical test).
[[nodiscard]] MarginalCheckReport ancestral_marginal_check(const ModelParams& mp, int n_steps,
                                                           int n_samples, SplitRng rng);

struct DiscoveryEstimate {
    double mean = 0.0;  // censored mean: a lower bound when censoring occurred
    double se = 0.0;
    double censored_fraction = 0.0;
    bool lower_bound_flag = false;
    double bound = 0.0;  // m * E(tau_0 | single searcher from the far end)
    bool bound_satisfied = false;
    int replicas = 0;
    long long horizon = 0;
};

// Monte Carlo estimate of the expected first time any chromosome reaches the
// peak, starting from `start` (no peak individual).  Selection is irrelevant
// before discovery, so the dynamics are forced neutral.
[[nodiscard]] DiscoveryEstimate discovery_time_mc(const ModelParams& mp, const Occupancy& start,
                                                  int replicas, long long horizon, SplitRng rng);

}  // namespace wfsp
