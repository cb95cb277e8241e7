// =============================================================================
// verify.cpp
// =============================================================================
#include "wfsp/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wfsp/genotype.hpp"
#include "wfsp/kernels.hpp"
#include "wfsp/markov.hpp"
#include "wfsp/math_util.hpp"
#include "wfsp/neutral.hpp"
#include "wfsp/quasipotential.hpp"
#include "wfsp/rate_functions.hpp"
#include "wfsp/simulate.hpp"
#include "wfsp/two_type.hpp"

namespace wfsp {

namespace {

// Odometer over {0..base-1}^digits; calls fn for each tuple.
template <typename Fn>
void for_each_tuple(int digits, int base, Fn&& fn) {
    std::vector<int> t(digits, 0);
    while (true) {
        fn(t);
        int pos = digits - 1;
        while (pos >= 0 && t[pos] == base - 1) {
            t[pos] = 0;
            --pos;
        }
        if (pos < 0) return;
        ++t[pos];
    }
}

}  // namespace

// ── lumping ──────────────────────────────────────────────────────────────────

double lumping_error_chromosome_law(const ModelParams& mp) {
    mp.validate();
    const auto space = enumerate_genotypes(mp.ell, mp.kappa);
    const auto M = mutation_kernel(mp);
    const int g = static_cast<int>(space.size());
    std::vector<int> dist_of(g);
    for (int i = 0; i < g; ++i) dist_of[i] = hamming_to_peak(space[i]);

    double worst = 0.0;
    for_each_tuple(mp.m, g, [&](const std::vector<int>& pick) {
        GenotypePopulation pop;
        pop.ell = mp.ell;
        pop.kappa = mp.kappa;
        pop.rows.reserve(mp.m);
        for (int idx : pick) pop.rows.push_back(space[idx]);

        const auto law = genotype_offspring_law(mp, pop, space);
        std::vector<double> pushed(mp.ell + 1, 0.0);
        for (int i = 0; i < g; ++i) pushed[dist_of[i]] += law[i];

        const auto sel = selection_weights_distance(mp, distances_of(pop));
        for (int c = 0; c <= mp.ell; ++c) {
            double lumped = 0.0;
            for (int k = 0; k <= mp.ell; ++k) lumped += sel[k] * M[k][c];
            worst = std::max(worst, std::abs(pushed[c] - lumped));
        }
    });
    return worst;
}

double lumping_error_full_sum(const ModelParams& mp) {
    mp.validate();
    const auto space = enumerate_genotypes(mp.ell, mp.kappa);
    const int g = static_cast<int>(space.size());
    double pops = 1.0;
    for (int i = 0; i < mp.m; ++i) pops *= g;
    if (pops > 1024.0) {
        throw std::invalid_argument("lumping_error_full_sum: genotype space too large");
    }
    const int npop = static_cast<int>(pops);

    // Materialize all populations and their distance signatures.
    std::vector<GenotypePopulation> all;
    all.reserve(npop);
    for_each_tuple(mp.m, g, [&](const std::vector<int>& pick) {
        GenotypePopulation pop;
        pop.ell = mp.ell;
        pop.kappa = mp.kappa;
        for (int idx : pick) pop.rows.push_back(space[idx]);
        all.push_back(std::move(pop));
    });

    // Index distance vectors with a mixed-radix code.
    const auto dcode = [&](const DistanceVector& d) {
        int code = 0;
        for (int v : d) code = code * (mp.ell + 1) + v;
        return code;
    };
    int dspace = 1;
    for (int i = 0; i < mp.m; ++i) dspace *= (mp.ell + 1);

    double worst = 0.0;
    std::vector<double> bucket(dspace);
    for (const auto& x : all) {
        std::fill(bucket.begin(), bucket.end(), 0.0);
        for (const auto& z : all) {
            bucket[dcode(distances_of(z))] += transition_prob_genotype(mp, x, z);
        }
        const DistanceVector dx = distances_of(x);
        for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& e) {
            const double direct = transition_prob_distance(mp, dx, e);
            worst = std::max(worst, std::abs(bucket[dcode(e)] - direct));
        });
    }
    return worst;
}

double lumping_error_occupancy(const ModelParams& mp) {
    mp.validate();
    const OccupancyIndex idx(mp.m, mp.ell);
    const int no = idx.size();
    double worst = 0.0;
    for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& d) {
        std::vector<double> bucket(no, 0.0);
        for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& e) {
            bucket[idx.index_of(occupancy_of(e, mp.ell))] += transition_prob_distance(mp, d, e);
        });
        const Occupancy od = occupancy_of(d, mp.ell);
        for (int j = 0; j < no; ++j) {
            const double direct = transition_prob_occupancy(mp, od, idx.states()[j]);
            worst = std::max(worst, std::abs(bucket[j] - direct));
        }
    });
    return worst;
}

double exchangeability_error(const ModelParams& mp) {
    mp.validate();
    std::vector<int> perm(mp.m);
    std::iota(perm.begin(), perm.end(), 0);
    double worst = 0.0;
    for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& d) {
        std::vector<int> p = perm;
        do {
            DistanceVector dp(mp.m);
            for (int i = 0; i < mp.m; ++i) dp[i] = d[p[i]];
            for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& e) {
                DistanceVector ep(mp.m);
                for (int i = 0; i < mp.m; ++i) ep[i] = e[p[i]];
                worst = std::max(worst, std::abs(transition_prob_distance(mp, d, e) -
                                                 transition_prob_distance(mp, dp, ep)));
            });
        } while (std::next_permutation(p.begin(), p.end()));
    });
    return worst;
}

double parent_mixture_error(const ModelParams& mp) {
    mp.validate();
    const auto M = mutation_kernel(mp);
    double worst = 0.0;
    for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& d) {
        double total = 0.0;
        for (int v : d) total += peak_fitness(v, mp.sigma);
        std::vector<double> w(mp.m);
        for (int i = 0; i < mp.m; ++i) w[i] = peak_fitness(d[i], mp.sigma) / total;
        for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& e) {
            // Mixture over ordered parent assignments of offspring products.
            KahanSum mix;
            for_each_tuple(mp.m, mp.m, [&](const std::vector<int>& parents) {
                double term = 1.0;
                for (int j = 0; j < mp.m; ++j) term *= w[parents[j]] * M[d[parents[j]]][e[j]];
                mix.add(term);
            });
            const double direct = transition_prob_distance(mp, d, e);
            worst = std::max(worst, std::abs(mix.value() - direct));
        });
    });
    return worst;
}

// ── coupling invariants ──────────────────────────────────────────────────────

namespace {

Occupancy random_occupancy(const ModelParams& mp, SplitRng& rng) {
    Occupancy o(mp.ell + 1, 0);
    for (int i = 0; i < mp.m; ++i) {
        ++o[static_cast<int>(rng.next_below(mp.ell + 1))];
    }
    return o;
}

// Random upward moves in the partial-sum order: shift one chromosome from an
// occupied class to a strictly closer class.
Occupancy raise_occupancy(Occupancy o, int moves, SplitRng& rng) {
    for (int t = 0; t < moves; ++t) {
        std::vector<int> occupied;
        for (int k = 1; k < static_cast<int>(o.size()); ++k) {
            if (o[k] > 0) occupied.push_back(k);
        }
        if (occupied.empty()) break;
        const int j = occupied[rng.next_below(occupied.size())];
        const int i = static_cast<int>(rng.next_below(j));
        --o[j];
        ++o[i];
    }
    return o;
}

}  // namespace

MonotonicityReport occupancy_monotone_mc(const ModelParams& mp, long long trials, SplitRng rng) {
    mp.validate();
    MonotonicityReport rep;
    rep.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        const Occupancy lo = random_occupancy(mp, rng);
        const Occupancy hi = raise_occupancy(lo, static_cast<int>(rng.next_below(4)), rng);
        const auto r = RandomInputMatrix::draw(mp.m, mp.ell, rng);
        const Occupancy lo2 = coupled_step_occupancy(mp, lo, r);
        const Occupancy hi2 = coupled_step_occupancy(mp, hi, r);
        if (!precedes(lo2, hi2)) ++rep.violations;
    }
    return rep;
}

MonotonicityReport occupancy_monotone_exhaustive(const ModelParams& mp, int blocks_per_pair,
                                                 SplitRng rng) {
    mp.validate();
    const auto states = enumerate_occupancies(mp.m, mp.ell);
    MonotonicityReport rep;
    for (const auto& lo : states) {
        for (const auto& hi : states) {
            if (!precedes(lo, hi)) continue;
            for (int b = 0; b < blocks_per_pair; ++b) {
                const auto r = RandomInputMatrix::draw(mp.m, mp.ell, rng);
                ++rep.trials;
                if (!precedes(coupled_step_occupancy(mp, lo, r),
                              coupled_step_occupancy(mp, hi, r))) {
                    ++rep.violations;
                }
            }
        }
    }
    return rep;
}

MonotonicityReport distance_monotone_neutral_mc(const ModelParams& mp, long long trials,
                                                SplitRng rng) {
    if (mp.sigma != 1.0) {
        throw std::invalid_argument("distance_monotone_neutral_mc: needs sigma == 1");
    }
    MonotonicityReport rep;
    rep.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        DistanceVector lo(mp.m), hi(mp.m);
        for (int i = 0; i < mp.m; ++i) {
            lo[i] = static_cast<int>(rng.next_below(mp.ell + 1));
            hi[i] = std::min<int>(mp.ell, lo[i] + static_cast<int>(rng.next_below(3)));
        }
        const auto r = RandomInputMatrix::draw(mp.m, mp.ell, rng);
        const auto lo2 = coupled_step_distance(mp, lo, r);
        const auto hi2 = coupled_step_distance(mp, hi, r);
        for (int i = 0; i < mp.m; ++i) {
            if (lo2[i] > hi2[i]) {
                ++rep.violations;
                break;
            }
        }
    }
    return rep;
}

MonotonicityReport mutation_monotone_exhaustive(const ModelParams& mp) {
    mp.validate();
    if (mp.q <= 0.0) throw std::invalid_argument("mutation_monotone_exhaustive: needs q > 0");
    // Only the band of each uniform matters: below the repair threshold,
    // above the gain threshold, or in between.  Three representatives per
    // slot cover every behaviour class of the map.
    const double repair = mp.back_rate();
    const double mid = 0.5 * (repair + 1.0 - mp.q);
    const std::array<double, 3> reps = {0.5 * repair, mid, 1.0 - 0.5 * mp.q};
    MonotonicityReport rep;
    std::vector<double> u(mp.ell);
    for_each_tuple(mp.ell, 3, [&](const std::vector<int>& bands) {
        for (int k = 0; k < mp.ell; ++k) u[k] = reps[bands[k]];
        int prev = -1;
        for (int b = 0; b <= mp.ell; ++b) {
            const int img = mutate_coupled(mp, b, u.data());
            ++rep.trials;
            if (img < 0 || img > mp.ell || (prev >= 0 && img < prev)) ++rep.violations;
            prev = img;
        }
    });
    return rep;
}

bool selective_step_counterexample() {
    // kappa = 3, sigma = 2, m = 3, ell = 2, q = 0.3.  Selection uniforms sit
    // in the bands that pick different parents under the two fitness
    // profiles; mutation uniforms sit in the inert middle band.
    ModelParams mp;
    mp.sigma = 2.0;
    mp.ell = 2;
    mp.m = 3;
    mp.kappa = 3;
    mp.q = 0.3;
    RandomInputMatrix r;
    r.m = 3;
    r.ell = 2;
    r.u = {
        0.70, 0.40, 0.40,  // chromosome 1: s in (2/3, 3/4)
        0.80, 0.40, 0.40,  // chromosome 2: s in (3/4, 1)
        0.80, 0.40, 0.40,  // chromosome 3: s in (3/4, 1)
    };
    const DistanceVector lo = {0, 2, 1};
    const DistanceVector hi = {1, 2, 1};
    const DistanceVector lo2 = coupled_step_distance(mp, lo, r);
    const DistanceVector hi2 = coupled_step_distance(mp, hi, r);
    const bool images_match = lo2 == DistanceVector{2, 1, 1} && hi2 == DistanceVector{1, 1, 1};
    // lo <= hi componentwise, yet the images are incomparable: coordinate 0
    // moved the wrong way.
    const bool order_broken = lo2[0] > hi2[0];
    return images_match && order_broken;
}

SandwichReport sandwich_mc(const ModelParams& mp, const Occupancy& start, long long steps,
                           int seeds, std::uint64_t seed0) {
    SandwichReport rep;
    rep.steps = steps;
    rep.seeds = seeds;
    for (int s = 0; s < seeds; ++s) {
        SplitRng rng(seed0, static_cast<std::uint64_t>(s));
        SandwichState st = sandwich_start(mp, start);
        for (long long n = 0; n < steps; ++n) {
            if (!sandwich_step(mp, st, rng)) ++rep.violations;
        }
    }
    return rep;
}

double fkg_exact_min_covariance(const ModelParams& mp, int n_steps) {
    if (mp.sigma != 1.0) {
        throw std::invalid_argument("fkg_exact_min_covariance: needs sigma == 1");
    }
    // Dense distance-vector kernel on (ell+1)^m states.
    int ns = 1;
    for (int i = 0; i < mp.m; ++i) ns *= (mp.ell + 1);
    if (ns > 256) throw std::invalid_argument("fkg_exact_min_covariance: space too large");
    std::vector<DistanceVector> states;
    states.reserve(ns);
    for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& d) { states.push_back(d); });
    Matrix P(ns, std::vector<double>(ns, 0.0));
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ns; ++j) P[i][j] = transition_prob_distance(mp, states[i], states[j]);
    }
    double min_cov = 0.0;
    // Deterministic starts: the far corner and a mixed corner.
    std::vector<DistanceVector> starts = {DistanceVector(mp.m, mp.ell), DistanceVector(mp.m, 0)};
    for (const auto& start : starts) {
        int s0 = 0;
        for (int i = 0; i < ns; ++i) {
            if (states[i] == start) s0 = i;
        }
        std::vector<double> law(ns, 0.0);
        law[s0] = 1.0;
        for (int n = 0; n < n_steps; ++n) {
            std::vector<double> next(ns, 0.0);
            for (int i = 0; i < ns; ++i) {
                if (law[i] == 0.0) continue;
                for (int j = 0; j < ns; ++j) next[j] += law[i] * P[i][j];
            }
            law.swap(next);
            // Indicators of principal up-sets {d : d >= c componentwise}.
            for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& c1) {
                for_each_tuple(mp.m, mp.ell + 1, [&](const std::vector<int>& c2) {
                    double ef = 0.0, eg = 0.0, efg = 0.0;
                    for (int i = 0; i < ns; ++i) {
                        bool f = true, g = true;
                        for (int k = 0; k < mp.m; ++k) {
                            f = f && states[i][k] >= c1[k];
                            g = g && states[i][k] >= c2[k];
                        }
                        if (f) ef += law[i];
                        if (g) eg += law[i];
                        if (f && g) efg += law[i];
                    }
                    min_cov = std::min(min_cov, efg - ef * eg);
                });
            });
        }
    }
    return min_cov;
}

FkgMcReport fkg_mc_check(const ModelParams& mp, int n_steps, int samples, SplitRng rng) {
    if (mp.sigma != 1.0) throw std::invalid_argument("fkg_mc_check: needs sigma == 1");
    const LumpedSampler sampler(mp);
    // Battery: a few principal up-set indicators plus the coordinate sum.
    std::vector<DistanceVector> thresholds;
    for (int t = 0; t < 6; ++t) {
        DistanceVector c(mp.m);
        for (int i = 0; i < mp.m; ++i) c[i] = static_cast<int>(rng.next_below(mp.ell + 1));
        thresholds.push_back(c);
    }
    const int nf = static_cast<int>(thresholds.size()) + 1;
    std::vector<std::vector<double>> vals(nf, std::vector<double>(samples, 0.0));
    for (int s = 0; s < samples; ++s) {
        SplitRng replica = rng.split(s);
        DistanceVector d(mp.m, mp.ell);
        for (int n = 0; n < n_steps; ++n) d = sampler.step_distance(d, replica);
        for (int t = 0; t < nf - 1; ++t) {
            bool in = true;
            for (int i = 0; i < mp.m; ++i) in = in && d[i] >= thresholds[t][i];
            vals[t][s] = in ? 1.0 : 0.0;
        }
        double sum = 0.0;
        for (int i = 0; i < mp.m; ++i) sum += d[i];
        vals[nf - 1][s] = sum;
    }
    FkgMcReport rep;
    rep.min_zscore = 0.0;
    for (int aa = 0; aa < nf; ++aa) {
        for (int bb = aa; bb < nf; ++bb) {
            double ma = 0.0, mb = 0.0;
            for (int s = 0; s < samples; ++s) {
                ma += vals[aa][s];
                mb += vals[bb][s];
            }
            ma /= samples;
            mb /= samples;
            double cov = 0.0, var = 0.0;
            for (int s = 0; s < samples; ++s) {
                const double w = (vals[aa][s] - ma) * (vals[bb][s] - mb);
                cov += w;
                var += w * w;
            }
            cov /= samples;
            var = var / samples - cov * cov;
            const double se = std::sqrt(std::max(var, 1e-300) / samples);
            if (se > 0.0) rep.min_zscore = std::min(rep.min_zscore, cov / se);
        }
    }
    rep.ok = rep.min_zscore >= -3.0;
    return rep;
}

// ── aggregated battery ───────────────────────────────────────────────────────

namespace {

CheckResult make(const std::string& name, bool pass, double metric, const std::string& detail) {
    return CheckResult{name, pass, metric, detail};
}

std::string fmt_metric(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

VerifyReport run_verification(VerifyLevel level, std::uint64_t seed) {
    const bool full = level == VerifyLevel::Full;
    VerifyReport rep;

    {  // lumping identities
        double worst = 0.0;
        for (int kappa : {2, 3}) {
            for (double q : {0.05, 0.2}) {
                for (double sigma : {1.0, 2.0}) {
                    ModelParams mp{sigma, full ? 3 : 2, 2, kappa, q};
                    worst = std::max(worst, lumping_error_chromosome_law(mp));
                    worst = std::max(worst, lumping_error_occupancy(mp));
                }
            }
        }
        ModelParams tiny{2.0, 2, 2, 2, 0.1};
        worst = std::max(worst, lumping_error_full_sum(tiny));
        rep.checks.push_back(make("lumping", worst < 1e-12, worst,
                                  "max abs error " + fmt_metric(worst)));
    }
    {  // kernel structure
        ModelParams mp{2.0, 3, 3, 2, 0.1};
        const double ex = exchangeability_error(mp);
        const double mix = parent_mixture_error(mp);
        rep.checks.push_back(make("exchangeability", ex < 1e-12, ex, fmt_metric(ex)));
        rep.checks.push_back(make("parent_mixture", mix < 1e-12, mix, fmt_metric(mix)));
    }
    {  // monotone coupling
        const bool cex = selective_step_counterexample();
        rep.checks.push_back(make("selective_counterexample", cex, cex ? 1.0 : 0.0,
                                  "pinned incomparable images"));
        ModelParams mp{2.0, full ? 8 : 4, full ? 20 : 8, 2, 0.05};
        const auto mono = occupancy_monotone_mc(mp, full ? 200000 : 20000, SplitRng(seed, 11));
        rep.checks.push_back(make("occupancy_monotone_mc", mono.ok(),
                                  static_cast<double>(mono.violations),
                                  std::to_string(mono.trials) + " trials"));
        ModelParams small{2.0, 3, 4, 2, 0.1};
        const auto exh = occupancy_monotone_exhaustive(small, full ? 100 : 20, SplitRng(seed, 12));
        rep.checks.push_back(make("occupancy_monotone_exhaustive", exh.ok(),
                                  static_cast<double>(exh.violations),
                                  std::to_string(exh.trials) + " trials"));
        const auto mut = mutation_monotone_exhaustive(ModelParams{1.0, 3, 1, 3, 0.2});
        rep.checks.push_back(make("mutation_monotone", mut.ok(),
                                  static_cast<double>(mut.violations),
                                  std::to_string(mut.trials) + " band tuples"));
    }
    {  // sandwich
        ModelParams mp{2.0, 5, 10, 2, 0.06};
        Occupancy start(mp.ell + 1, 0);
        start[mp.ell] = mp.m;
        const auto sw = sandwich_mc(mp, start, full ? 5000 : 1000, full ? 10 : 3, seed + 21);
        rep.checks.push_back(make("sandwich", sw.ok(), static_cast<double>(sw.violations),
                                  std::to_string(sw.steps) + " steps x " +
                                      std::to_string(sw.seeds) + " seeds"));
    }
    {  // reversibility and neutral bounds
        ModelParams mp{1.0, full ? 30 : 12, 1, 2, 0.05};
        const auto M = mutation_kernel(mp);
        const auto eq = binomial_equilibrium(mp.ell, mp.kappa);
        double worst = 0.0;
        for (int b = 0; b <= mp.ell; ++b) {
            for (int c = 0; c <= mp.ell; ++c) {
                worst = std::max(worst, std::abs(eq[b] * M[b][c] - eq[c] * M[c][b]));
            }
        }
        rep.checks.push_back(make("detailed_balance", worst < 1e-12, worst, fmt_metric(worst)));
        const auto ret = return_probability_bound_check(mp, full ? 200 : 50);
        rep.checks.push_back(make("return_probability_bound", ret.ok, ret.max_violation,
                                  fmt_metric(ret.max_violation)));
        const auto env = equilibrium_bounds_check(ModelParams{1.0, full ? 40 : 16, 1, 3, 0.05});
        rep.checks.push_back(make("equilibrium_envelope", env.ok,
                                  std::max(env.max_low_violation, env.max_high_violation), ""));
    }
    {  // renewal identity on a small irreducible chain
        const Matrix P = {{0.2, 0.5, 0.3}, {0.4, 0.1, 0.5}, {0.25, 0.35, 0.4}};
        const std::vector<char> in_W = {0, 1, 1};
        const std::vector<double> f = {0.0, 2.0, -1.0};
        const auto rc = renewal_identity_check(P, in_W, 0, f);
        rep.checks.push_back(make("renewal_3state", rc.abs_error < 1e-10, rc.abs_error,
                                  fmt_metric(rc.abs_error)));
        ModelParams mp{2.0, 2, 3, 2, 0.15};
        const OccupancyIndex idx(mp.m, mp.ell);
        const auto PO = occupancy_kernel(mp, idx);
        std::vector<char> win(idx.size(), 0);
        std::vector<double> fo(idx.size(), 0.0);
        int base = -1;
        for (int i = 0; i < idx.size(); ++i) {
            const auto& o = idx.states()[i];
            win[i] = has_master(o);
            fo[i] = win[i] ? static_cast<double>(o[0]) / mp.m : 0.0;
            Occupancy far(mp.ell + 1, 0);
            far[mp.ell] = mp.m;
            if (o == far) base = i;
        }
        const auto ro = renewal_identity_check(PO, win, base, fo);
        rep.checks.push_back(make("renewal_occupancy", ro.abs_error < 1e-10, ro.abs_error,
                                  fmt_metric(ro.abs_error)));
    }
    {  // positive correlations
        const double min_cov = fkg_exact_min_covariance(ModelParams{1.0, 1, 2, 2, 0.2}, 8);
        rep.checks.push_back(make("fkg_exact", min_cov > -1e-12, min_cov, fmt_metric(min_cov)));
        const auto mc =
            fkg_mc_check(ModelParams{1.0, 4, 5, 2, 0.1}, 3, full ? 20000 : 4000, SplitRng(seed, 31));
        rep.checks.push_back(make("fkg_mc", mc.ok, mc.min_zscore, "min z-score"));
    }
    {  // two-type kernel sanity
        ModelParams mp{2.0, 20, full ? 120 : 40, 2, 0.3 / 20};
        const auto K = build_two_type_kernel(mp, Theta::Upper);
        double worst = 0.0;
        for (int h = 0; h <= K.m; ++h) {
            KahanSum row;
            for (int k = 0; k <= K.m; ++k) row.add(K.p[h][k]);
            worst = std::max(worst, std::abs(row.value() - 1.0));
        }
        rep.checks.push_back(make("two_type_rows", worst < 1e-12, worst, fmt_metric(worst)));
    }
    {  // rate function and barrier sanity
        RateParams rp{0.3, 2.0, 2};
        double worst = 0.0;
        SplitRng rng(seed, 41);
        for (int i = 0; i < (full ? 4000 : 800); ++i) {
            const double r = rng.next_unit();
            const double t = rng.next_unit();
            const double d = std::abs(one_step_cost(rp, r, t) - one_step_cost_scan(rp, r, t));
            if (std::isfinite(d)) worst = std::max(worst, d);
        }
        rep.checks.push_back(make("one_step_cost_minimizer", worst < 1e-8, worst,
                                  fmt_metric(worst)));
        const double drift = one_step_cost(rp, 0.4, drift_F(0.4, rp));
        rep.checks.push_back(make("zero_cost_along_drift", drift < 1e-12, drift,
                                  fmt_metric(drift)));
        PsiOptions opt;
        opt.grid = full ? 1000 : 400;
        opt.variational_check = !full;  // full level runs the bigger grid instead
        const auto ps = psi(rp, opt);
        rep.checks.push_back(make("psi_converged", ps.converged, ps.value,
                                  "psi(0.3) = " + fmt_metric(ps.value)));
    }
    return rep;
}

}  // namespace wfsp
