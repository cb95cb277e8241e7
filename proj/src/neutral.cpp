// =============================================================================
// neutral.cpp
// =============================================================================
#include "wfsp/neutral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wfsp/kernels.hpp"
#include "wfsp/markov.hpp"
#include "wfsp/math_util.hpp"
#include "wfsp/simulate.hpp"

namespace wfsp {

std::vector<double> binomial_equilibrium(int ell, int kappa) {
    std::vector<double> eq(ell + 1, 0.0);
    const double off = 1.0 - 1.0 / kappa;
    for (int b = 0; b <= ell; ++b) eq[b] = binom_pmf(ell, b, off);
    return eq;
}

std::vector<double> expected_hitting_time_single(const ModelParams& mp, int target) {
    const auto M = mutation_kernel(mp);
    const int ell = mp.ell;
    if (target < 0 || target > ell) throw std::out_of_range("expected_hitting_time_single");
    std::vector<int> others;
    for (int b = 0; b <= ell; ++b) {
        if (b != target) others.push_back(b);
    }
    const int n = static_cast<int>(others.size());
    Matrix Q(n, std::vector<double>(n, 0.0));
    std::vector<double> exit(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) Q[i][j] = M[others[i]][others[j]];
        exit[i] = M[others[i]][target];
    }
    const auto t = absorbing_solve_gth(Q, exit, std::vector<double>(n, 1.0));
    std::vector<double> full(ell + 1, 0.0);
    for (int i = 0; i < n; ++i) full[others[i]] = t[i];
    return full;
}

ReturnBoundReport return_probability_bound_check(const ModelParams& mp, int n_max) {
    const auto M = mutation_kernel(mp);
    const auto eq = binomial_equilibrium(mp.ell, mp.kappa);
    ReturnBoundReport rep;
    rep.n_max = n_max;
    Matrix Pn = M;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) Pn = matrix_multiply(Pn, M);
        for (int b = 0; b <= mp.ell; ++b) {
            const double bound = eq[0] / eq[b];
            rep.max_violation = std::max(rep.max_violation, Pn[b][0] - bound);
        }
    }
    rep.ok = rep.max_violation <= 1e-12;
    return rep;
}

EquilibriumBoundsReport equilibrium_bounds_check(const ModelParams& mp) {
    const int ell = mp.ell;
    const double lk = std::log(static_cast<double>(mp.kappa));
    const double ll = std::log(static_cast<double>(ell));
    EquilibriumBoundsReport rep;
    for (int b = 0; 2 * b <= ell; ++b) {
        // log eq(b) computed exactly; envelope in logs to dodge underflow.
        const double log_eq =
            log_binomial(ell, b) + b * std::log1p(-1.0 / mp.kappa) - (ell - b) * lk;
        const double log_low = -ell * lk + (b > 0 ? b * (ll - std::log(2.0 * b)) : 0.0);
        const double log_high = b * ll + (b - ell) * lk;
        rep.max_low_violation = std::max(rep.max_low_violation, log_low - log_eq);
        rep.max_high_violation = std::max(rep.max_high_violation, log_eq - log_high);
    }
    rep.ok = rep.max_low_violation <= 1e-12 && rep.max_high_violation <= 1e-12;
    return rep;
}

MarginalCheckReport ancestral_marginal_check(const ModelParams& mp, int n_steps, int n_samples,
                                             SplitRng rng) {
    ModelParams neutral = mp;
    neutral.sigma = 1.0;  // marginal statement is about the mutation-only flow
    const LumpedSampler sampler(neutral);
    const int start = mp.ell;
    // Exact single-chromosome law after n steps.
    const auto Pn = matrix_power(mutation_kernel(neutral), n_steps);
    const std::vector<double> expected(Pn[start].begin(), Pn[start].end());
    std::vector<long long> counts(mp.ell + 1, 0);
    for (int s = 0; s < n_samples; ++s) {
        DistanceVector d(mp.m, start);
        SplitRng replica = rng.split(s);
        for (int n = 0; n < n_steps; ++n) d = sampler.step_distance(d, replica);
        ++counts[d[0]];  // any fixed coordinate works; exchangeable
    }
    const auto res = chi_square_gof(counts, expected, n_samples);
    return MarginalCheckReport{res.stat, res.dof, res.p_value};
}

DiscoveryEstimate discovery_time_mc(const ModelParams& mp, const Occupancy& start, int replicas,
                                    long long horizon, SplitRng rng) {
    if (!occupancy_valid(start, mp.m) || has_master(start)) {
        throw std::invalid_argument("discovery_time_mc: start must have no peak chromosome");
    }
    ModelParams neutral = mp;
    neutral.sigma = 1.0;  // the peak is not occupied before discovery
    const LumpedSampler sampler(neutral);

    std::vector<double> draws(replicas, 0.0);
    int censored = 0;
    for (int rep = 0; rep < replicas; ++rep) {
        SplitRng replica = rng.split(rep);
        Occupancy o = start;
        long long n = 0;
        while (n < horizon && !has_master(o)) {
            o = sampler.step_occupancy(o, replica);
            ++n;
        }
        if (!has_master(o)) ++censored;
        draws[rep] = static_cast<double>(n);
    }

    DiscoveryEstimate est;
    est.replicas = replicas;
    est.horizon = horizon;
    est.censored_fraction = static_cast<double>(censored) / replicas;
    est.lower_bound_flag = censored > 0;
    KahanSum sum;
    for (double v : draws) sum.add(v);
    est.mean = sum.value() / replicas;
    KahanSum var;
    for (double v : draws) var.add((v - est.mean) * (v - est.mean));
    est.se = replicas > 1 ? std::sqrt(var.value() / (replicas - 1.0) / replicas) : 0.0;

    const auto single = expected_hitting_time_single(neutral, 0);
    est.bound = static_cast<double>(mp.m) * single[mp.ell];
    est.bound_satisfied = est.mean <= est.bound + 3.0 * est.se;
    return est;
}

}  // namespace wfsp
