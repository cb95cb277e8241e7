// =============================================================================
// simulate.cpp
// =============================================================================
#include "wfsp/simulate.hpp"

#include <algorithm>
#include <stdexcept>

#include "wfsp/kernels.hpp"

namespace wfsp {

namespace {

// Index of the first cumulative entry exceeding x; rows end at ~1.0 and
// x < 1, so the clamp only covers rounding at the last cell.
int pick_from_cumulative(const std::vector<double>& cum, double x) noexcept {
    const auto it = std::upper_bound(cum.begin(), cum.end(), x);
    const int idx = static_cast<int>(it - cum.begin());
    return std::min(idx, static_cast<int>(cum.size()) - 1);
}

}  // namespace

LumpedSampler::LumpedSampler(const ModelParams& mp) : mp_(mp) {
    mp_.validate();
    const auto M = mutation_kernel(mp_);
    mut_cum_.resize(mp_.ell + 1);
    for (int b = 0; b <= mp_.ell; ++b) {
        mut_cum_[b].resize(mp_.ell + 1);
        double run = 0.0;
        for (int c = 0; c <= mp_.ell; ++c) {
            run += M[b][c];
            mut_cum_[b][c] = run;
        }
    }
}

int LumpedSampler::sample_mutation(int parent_class, SplitRng& rng) const {
    return pick_from_cumulative(mut_cum_[parent_class], rng.next_unit());
}

DistanceVector LumpedSampler::step_distance(const DistanceVector& d, SplitRng& rng) const {
    const int m = static_cast<int>(d.size());
    // Cumulative fitness over chromosomes for the parent draw.
    std::vector<double> cum(m);
    double run = 0.0;
    for (int i = 0; i < m; ++i) {
        run += peak_fitness(d[i], mp_.sigma);
        cum[i] = run;
    }
    DistanceVector next(m);
    for (int i = 0; i < m; ++i) {
        const int parent = pick_from_cumulative(cum, rng.next_unit() * run);
        next[i] = sample_mutation(d[parent], rng);
    }
    return next;
}

Occupancy LumpedSampler::step_occupancy(const Occupancy& o, SplitRng& rng) const {
    std::vector<double> cum(mp_.ell + 1);
    double run = 0.0;
    for (int k = 0; k <= mp_.ell; ++k) {
        run += o[k] * peak_fitness(k, mp_.sigma);
        cum[k] = run;
    }
    Occupancy next(mp_.ell + 1, 0);
    for (int i = 0; i < mp_.m; ++i) {
        const int cls = pick_from_cumulative(cum, rng.next_unit() * run);
        ++next[sample_mutation(cls, rng)];
    }
    return next;
}

GenotypePopulation step_genotype(const ModelParams& mp, const GenotypePopulation& pop,
                                 SplitRng& rng) {
    const int m = pop.m();
    std::vector<double> cum(m);
    double run = 0.0;
    for (int i = 0; i < m; ++i) {
        run += peak_fitness(hamming_to_peak(pop.rows[i]), mp.sigma);
        cum[i] = run;
    }
    GenotypePopulation next;
    next.ell = pop.ell;
    next.kappa = pop.kappa;
    next.rows.resize(m);
    for (int i = 0; i < m; ++i) {
        const int parent = pick_from_cumulative(cum, rng.next_unit() * run);
        Genotype child = pop.rows[parent];
        for (int locus = 0; locus < mp.ell; ++locus) {
            if (rng.next_unit() < mp.q) {
                // Jump to one of the other kappa-1 letters uniformly.
                const int shift = 1 + static_cast<int>(rng.next_below(mp.kappa - 1));
                child[locus] = (child[locus] + shift) % mp.kappa;
            }
        }
        next.rows[i] = std::move(child);
    }
    return next;
}

SandwichState sandwich_start(const ModelParams& mp, const Occupancy& o) {
    if (!occupancy_valid(o, mp.m)) throw std::invalid_argument("sandwich_start: bad state");
    return SandwichState{o, o, o};
}

bool sandwich_step(const ModelParams& mp, SandwichState& st, SplitRng& rng) {
    const RandomInputMatrix r = RandomInputMatrix::draw(mp.m, mp.ell, rng);
    st.lower = bounded_step(mp, st.lower, r, Theta::Lower);
    st.mid = coupled_step_occupancy(mp, st.mid, r);
    st.upper = bounded_step(mp, st.upper, r, Theta::Upper);
    return precedes(st.lower, st.mid) && precedes(st.mid, st.upper);
}

}  // namespace wfsp
