// =============================================================================
// kernels.cpp
// =============================================================================
#include "wfsp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wfsp/math_util.hpp"

namespace wfsp {

std::vector<double> mutation_row(const ModelParams& mp, int b) {
    const int ell = mp.ell;
    if (b < 0 || b > ell) throw std::out_of_range("mutation_row: class out of range");
    std::vector<double> row(ell + 1, 0.0);
    if (mp.q == 0.0) {
        row[b] = 1.0;
        return row;
    }
    const double q = mp.q;             // fresh-mismatch rate per matching locus
    const double beta = mp.back_rate();  // repair rate per mismatched locus
    const double lq = std::log(q);
    const double l1q = std::log1p(-q);
    const double lb = std::log(beta);
    const double l1b = std::log1p(-beta);
    for (int c = 0; c <= ell; ++c) {
        // k - l = c - b with 0 <= k <= ell-b (gains), 0 <= l <= b (repairs).
        KahanSum acc;
        const int lmin = std::max(0, b - c);
        const int lmax = std::min(b, ell - c);
        for (int l = lmin; l <= lmax; ++l) {
            const int k = c - b + l;
            const double lg = log_binomial(ell - b, k) + k * lq + (ell - b - k) * l1q +
                              log_binomial(b, l) + l * lb + (b - l) * l1b;
            acc.add(std::exp(lg));
        }
        row[c] = acc.value();
    }
    return row;
}

std::vector<std::vector<double>> mutation_kernel(const ModelParams& mp) {
    std::vector<std::vector<double>> rows(mp.ell + 1);
    for (int b = 0; b <= mp.ell; ++b) rows[b] = mutation_row(mp, b);
    return rows;
}

std::vector<double> selection_weights_distance(const ModelParams& mp, const DistanceVector& d) {
    std::vector<double> w(mp.ell + 1, 0.0);
    double total = 0.0;
    for (int v : d) {
        if (v < 0 || v > mp.ell) throw std::out_of_range("selection_weights_distance: class");
        const double f = peak_fitness(v, mp.sigma);
        w[v] += f;
        total += f;
    }
    for (double& x : w) x /= total;
    return w;
}

std::vector<double> selection_weights_occupancy(const ModelParams& mp, const Occupancy& o) {
    if (static_cast<int>(o.size()) != mp.ell + 1) {
        throw std::invalid_argument("selection_weights_occupancy: size mismatch");
    }
    std::vector<double> w(mp.ell + 1, 0.0);
    double total = 0.0;
    for (int k = 0; k <= mp.ell; ++k) {
        w[k] = o[k] * peak_fitness(k, mp.sigma);
        total += w[k];
    }
    if (total <= 0.0) throw std::invalid_argument("selection_weights_occupancy: empty population");
    for (double& x : w) x /= total;
    return w;
}

namespace {

// Law of one offspring's class given the current state's selection weights.
std::vector<double> offspring_class_law(const ModelParams& mp, const std::vector<double>& sel,
                                        const std::vector<std::vector<double>>& mut) {
    std::vector<double> g(mp.ell + 1, 0.0);
    for (int c = 0; c <= mp.ell; ++c) {
        KahanSum acc;
        for (int k = 0; k <= mp.ell; ++k) {
            if (sel[k] > 0.0) acc.add(sel[k] * mut[k][c]);
        }
        g[c] = acc.value();
    }
    return g;
}

}  // namespace

double transition_prob_distance(const ModelParams& mp, const DistanceVector& d,
                                const DistanceVector& e) {
    if (d.size() != e.size() || static_cast<int>(d.size()) != mp.m) {
        throw std::invalid_argument("transition_prob_distance: size mismatch");
    }
    const auto mut = mutation_kernel(mp);
    const auto sel = selection_weights_distance(mp, d);
    const auto g = offspring_class_law(mp, sel, mut);
    double prob = 1.0;
    for (int v : e) {
        if (v < 0 || v > mp.ell) throw std::out_of_range("transition_prob_distance: class");
        prob *= g[v];
    }
    return prob;
}

double transition_prob_occupancy(const ModelParams& mp, const Occupancy& o,
                                 const Occupancy& next) {
    if (!occupancy_valid(o, mp.m) || !occupancy_valid(next, mp.m)) {
        throw std::invalid_argument("transition_prob_occupancy: invalid state");
    }
    const auto mut = mutation_kernel(mp);
    const auto sel = selection_weights_occupancy(mp, o);
    const auto g = offspring_class_law(mp, sel, mut);
    // Multinomial over classes: log m! - sum log o'(h)! + sum o'(h) log g(h).
    double lg = std::lgamma(mp.m + 1.0);
    for (int h = 0; h <= mp.ell; ++h) {
        if (next[h] == 0) continue;
        if (g[h] <= 0.0) return 0.0;
        lg += next[h] * std::log(g[h]) - std::lgamma(next[h] + 1.0);
    }
    return std::exp(lg);
}

std::vector<std::vector<double>> occupancy_kernel(const ModelParams& mp,
                                                  const OccupancyIndex& idx) {
    const auto mut = mutation_kernel(mp);
    const int n = idx.size();
    std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        const auto sel = selection_weights_occupancy(mp, idx.states()[i]);
        const auto g = offspring_class_law(mp, sel, mut);
        for (int j = 0; j < n; ++j) {
            const Occupancy& next = idx.states()[j];
            double lg = std::lgamma(mp.m + 1.0);
            bool zero = false;
            for (int h = 0; h <= mp.ell; ++h) {
                if (next[h] == 0) continue;
                if (g[h] <= 0.0) {
                    zero = true;
                    break;
                }
                lg += next[h] * std::log(g[h]) - std::lgamma(next[h] + 1.0);
            }
            P[i][j] = zero ? 0.0 : std::exp(lg);
        }
    }
    return P;
}

}  // namespace wfsp
