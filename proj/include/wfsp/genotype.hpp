// =============================================================================
// genotype.hpp — Full genotype-space model at enumerable sizes.
//
// Used as the exact reference for the lumping identities: the chain on raw
// populations (m sequences of length ell over kappa letters), its per-sequence
// mutation kernel, and its one-step transition probability.  Everything here
// scales as kappa^ell and is only meant for ell <= 4-ish; the production
// simulator works on the lumped chains instead.
//
// The peak sequence is the all-zero word; Hamming distance to it is just the
// number of nonzero letters, so no generality is lost at the lumped level.
// =============================================================================
#pragma once

#include <cstdint>
#include <vector>

#include "wfsp/occupancy.hpp"
#include "wfsp/params.hpp"

namespace wfsp {

using Genotype = std::vector<int>;  // length ell, letters in {0..kappa-1}

struct GenotypePopulation {
    int ell = 1;
    int kappa = 2;
    std::vector<Genotype> rows;  // size m

    [[nodiscard]] int m() const noexcept { return static_cast<int>(rows.size()); }
};

[[nodiscard]] int hamming_to_peak(const Genotype& g) noexcept;
[[nodiscard]] DistanceVector distances_of(const GenotypePopulation& pop);

// Per-sequence mutation probability M(u, v): independent per-locus moves,
// stay with 1-q, jump to each specific other letter with q/(kappa-1).
[[nodiscard]] double genotype_mutation_prob(const ModelParams& mp, const Genotype& u,
                                            const Genotype& v);

// Fitness-proportional parent law summed over population members equal to u.
[[nodiscard]] double genotype_selection_weight(const ModelParams& mp,
                                               const GenotypePopulation& pop, const Genotype& u);

// One-step transition probability between whole populations:
//   prod_i  sum_u  F(u | x) M(u, y_i).
[[nodiscard]] double transition_prob_genotype(const ModelParams& mp,
                                              const GenotypePopulation& x,
                                              const GenotypePopulation& y);

// Law of a single offspring sequence given the current population.
[[nodiscard]] std::vector<double> genotype_offspring_law(const ModelParams& mp,
                                                         const GenotypePopulation& x,
                                                         const std::vector<Genotype>& space);

// All kappa^ell genotypes in lexicographic order.
[[nodiscard]] std::vector<Genotype> enumerate_genotypes(int ell, int kappa);

}  // namespace wfsp
