// =============================================================================
// kernels.hpp — Sharp-peak fitness and the lumped transition kernels.
//
// Fitness depends on a chromosome only through its Hamming distance to the
// peak: classes 0 (on the peak, fitness sigma) and 1..ell (fitness 1).  The
// per-chromosome mutation kernel likewise lumps to a random walk on distance
// classes: starting from distance b, a step gains k fresh mismatches among the
// ell-b matching loci (each with probability q) and repairs l of the b
// mismatched loci (each with probability q/(kappa-1)), landing on
// c = b + k - l.  Summing over (k, l) with k - l = c - b gives the exact
// two-binomial convolution used below.
//
// One population step is selection-with-replacement (fitness-proportional)
// followed by independent per-locus mutation of every offspring.  Conditional
// on the parent draw the offspring classes are i.i.d., so the distance-level
// kernel is a product over chromosomes, and the occupancy-level kernel is the
// corresponding multinomial.
// =============================================================================
#pragma once

#include <vector>

#include "wfsp/occupancy.hpp"
#include "wfsp/params.hpp"

namespace wfsp {

// Fitness of distance class k: sigma on the peak, 1 elsewhere.
[[nodiscard]] inline double peak_fitness(int cls, double sigma) noexcept {
    return cls == 0 ? sigma : 1.0;
}

// Row b of the lumped per-chromosome mutation kernel, length ell+1.
// Evaluated term-by-term in log space, accumulated with compensated
// summation; rows sum to 1 up to a few ulps.
[[nodiscard]] std::vector<double> mutation_row(const ModelParams& mp, int b);

// Full (ell+1) x (ell+1) kernel, row-major.
[[nodiscard]] std::vector<std::vector<double>> mutation_kernel(const ModelParams& mp);

// Probability that the parent of one offspring belongs to class k.
// Distance flavour: classes weighted by multiplicity in d.  Occupancy
// flavour: weighted by head count o(k).  Both normalize by total fitness.
[[nodiscard]] std::vector<double> selection_weights_distance(const ModelParams& mp,
                                                             const DistanceVector& d);
[[nodiscard]] std::vector<double> selection_weights_occupancy(const ModelParams& mp,
                                                              const Occupancy& o);

// One-step transition probability between distance vectors:
//   prod_i  sum_k  F(k | d) M(k, e_i).
[[nodiscard]] double transition_prob_distance(const ModelParams& mp, const DistanceVector& d,
                                              const DistanceVector& e);

// One-step transition probability between occupancies; the product over
// classes carries the multinomial coefficient m! / prod_h o'(h)! so rows are
// genuine probability vectors.
[[nodiscard]] double transition_prob_occupancy(const ModelParams& mp, const Occupancy& o,
                                               const Occupancy& next);

// Dense occupancy kernel over a state enumeration (small m, ell only).
[[nodiscard]] std::vector<std::vector<double>> occupancy_kernel(const ModelParams& mp,
                                                                const OccupancyIndex& idx);

}  // namespace wfsp
