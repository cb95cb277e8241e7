// =============================================================================
// genotype.cpp
// =============================================================================
#include "wfsp/genotype.hpp"

#include <cmath>
#include <stdexcept>

#include "wfsp/kernels.hpp"
#include "wfsp/math_util.hpp"

namespace wfsp {

int hamming_to_peak(const Genotype& g) noexcept {
    int d = 0;
    for (int v : g) d += (v != 0);
    return d;
}

DistanceVector distances_of(const GenotypePopulation& pop) {
    DistanceVector d;
    d.reserve(pop.rows.size());
    for (const auto& g : pop.rows) d.push_back(hamming_to_peak(g));
    return d;
}

double genotype_mutation_prob(const ModelParams& mp, const Genotype& u, const Genotype& v) {
    if (u.size() != v.size()) throw std::invalid_argument("genotype_mutation_prob: length");
    const double stay = 1.0 - mp.q;
    const double move = mp.q / (mp.kappa - 1.0);
    double prob = 1.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        prob *= (u[i] == v[i]) ? stay : move;
    }
    return prob;
}

double genotype_selection_weight(const ModelParams& mp, const GenotypePopulation& pop,
                                 const Genotype& u) {
    double hit = 0.0;
    double total = 0.0;
    for (const auto& row : pop.rows) {
        const double f = peak_fitness(hamming_to_peak(row), mp.sigma);
        total += f;
        if (row == u) hit += f;
    }
    return hit / total;
}

std::vector<double> genotype_offspring_law(const ModelParams& mp, const GenotypePopulation& x,
                                           const std::vector<Genotype>& space) {
    // Only sequences present in the population have selection mass; iterate
    // over population members to keep this O(m * kappa^ell).
    double total = 0.0;
    for (const auto& row : x.rows) total += peak_fitness(hamming_to_peak(row), mp.sigma);
    std::vector<double> law(space.size(), 0.0);
    for (const auto& row : x.rows) {
        const double w = peak_fitness(hamming_to_peak(row), mp.sigma) / total;
        for (std::size_t j = 0; j < space.size(); ++j) {
            law[j] += w * genotype_mutation_prob(mp, row, space[j]);
        }
    }
    return law;
}

double transition_prob_genotype(const ModelParams& mp, const GenotypePopulation& x,
                                const GenotypePopulation& y) {
    if (x.m() != y.m()) throw std::invalid_argument("transition_prob_genotype: size mismatch");
    double total = 0.0;
    for (const auto& row : x.rows) total += peak_fitness(hamming_to_peak(row), mp.sigma);
    double prob = 1.0;
    for (const auto& child : y.rows) {
        KahanSum acc;
        for (const auto& row : x.rows) {
            const double w = peak_fitness(hamming_to_peak(row), mp.sigma) / total;
            acc.add(w * genotype_mutation_prob(mp, row, child));
        }
        prob *= acc.value();
    }
    return prob;
}

std::vector<Genotype> enumerate_genotypes(int ell, int kappa) {
    std::vector<Genotype> out;
    Genotype cur(ell, 0);
    while (true) {
        out.push_back(cur);
        int pos = ell - 1;
        while (pos >= 0 && cur[pos] == kappa - 1) {
            cur[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[pos];
    }
    return out;
}

}  // namespace wfsp
