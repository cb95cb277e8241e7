// =============================================================================
// quasipotential.cpp
// =============================================================================
#include "wfsp/quasipotential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wfsp/rate_functions.hpp"

namespace wfsp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CostGrid::CostGrid(const RateParams& rp, int n) : rp_(rp), n_(n) {
    rp_.validate();
    if (n < 8) throw std::invalid_argument("CostGrid: grid too coarse");
}

int CostGrid::snap(double x) const noexcept {
    const int j = static_cast<int>(std::lround(x * n_));
    return std::clamp(j, 0, n_);
}

double CostGrid::edge_cost(int j, int k) const noexcept {
    return one_step_cost(rp_, node(j), node(k));
}

std::vector<double> CostGrid::shortest_from(int src) const {
    const int nn = n_ + 1;
    std::vector<double> dist(nn, kInf);
    std::vector<char> done(nn, 0);
    dist[src] = 0.0;
    // Dense Dijkstra: the graph is complete, so a heap buys nothing; the
    // budget is dominated by the nn^2 closed-form edge evaluations.
    for (int round = 0; round < nn; ++round) {
        int u = -1;
        double best = kInf;
        for (int i = 0; i < nn; ++i) {
            if (!done[i] && dist[i] < best) {
                best = dist[i];
                u = i;
            }
        }
        if (u < 0) break;
        done[u] = 1;
        const double du = dist[u];
        const double r = node(u);
        for (int k = 0; k < nn; ++k) {
            if (done[k]) continue;
            const double w = one_step_cost(rp_, r, node(k));
            if (du + w < dist[k]) dist[k] = du + w;
        }
    }
    return dist;
}

Matrix CostGrid::all_pairs() const {
    if (n_ > 512) throw std::invalid_argument("CostGrid::all_pairs: grid too large");
    const int nn = n_ + 1;
    Matrix d(nn, std::vector<double>(nn, 0.0));
    for (int i = 0; i < nn; ++i) {
        for (int j = 0; j < nn; ++j) d[i][j] = edge_cost(i, j);
        d[i][i] = 0.0;
    }
    // Floyd-Warshall; nonnegative weights.
    for (int k = 0; k < nn; ++k) {
        for (int i = 0; i < nn; ++i) {
            const double dik = d[i][k];
            if (dik == kInf) continue;
            for (int j = 0; j < nn; ++j) {
                const double cand = dik + d[k][j];
                if (cand < d[i][j]) d[i][j] = cand;
            }
        }
    }
    return d;
}

double quasipotential(const RateParams& rp, double s, double t, int n) {
    const CostGrid grid(rp, n);
    const int src = grid.snap(s);
    const int dst = grid.snap(t);
    if (src == dst) return 0.0;
    return grid.shortest_from(src)[dst];
}

double psi_value_iteration(const RateParams& rp, int n, int max_steps) {
    const CostGrid grid(rp, n);
    const int src = grid.snap(rho_star(rp));
    if (src == 0) return 0.0;
    const int nn = n + 1;
    // Cache scan-based edge costs once; this is the independent route, so it
    // deliberately avoids the closed-form minimizer.
    Matrix c(nn, std::vector<double>(nn, kInf));
    for (int j = 0; j < nn; ++j) {
        const double r = grid.node(j);
        for (int k = 0; k < nn; ++k) c[j][k] = one_step_cost_scan(rp, r, grid.node(k));
    }
    std::vector<double> W(nn, kInf);
    W[src] = 0.0;
    for (int step = 0; step < max_steps; ++step) {
        bool improved = false;
        for (int t = 0; t < nn; ++t) {
            double best = W[t];
            for (int r = 0; r < nn; ++r) {
                if (W[r] == kInf) continue;
                const double cand = W[r] + c[r][t];
                if (cand < best - 1e-15) best = cand;
            }
            if (best < W[t]) {
                W[t] = best;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return W[0];
}

PsiResult psi(const RateParams& rp, const PsiOptions& opt) {
    rp.validate();
    PsiResult out;
    out.a = rp.a;
    out.sigma = rp.sigma;
    const double rs = rho_star(rp);
    if (rs == 0.0) {
        // Equilibrium already at extinction: the barrier is exactly zero.
        out.value = 0.0;
        out.grid = opt.grid;
        out.converged = true;
        return out;
    }
    int n = opt.grid;
    double prev = quasipotential(rp, rs, 0.0, n);
    for (int round = 0; round <= opt.max_doublings; ++round) {
        const int n2 = 2 * n;
        const double cur = quasipotential(rp, rs, 0.0, n2);
        out.delta = std::abs(cur - prev);
        if (out.delta < opt.tol) {
            out.value = cur;
            out.grid = n2;
            out.converged = true;
            break;
        }
        prev = cur;
        n = n2;
    }
    if (!out.converged) {
        out.value = prev;
        out.grid = n;
        return out;  // caller decides; CLI maps to exit 2
    }
    if (opt.variational_check) {
        // Same variational problem through Bellman iteration + scan edges.
        const int nc = std::min(out.grid, opt.check_grid);
        const CostGrid cg(rp, nc);
        const double direct = psi_value_iteration(rp, nc);
        const double dij = quasipotential(rp, rs, 0.0, nc);
        if (std::abs(direct - dij) > 2.0 * cg.grid_tolerance()) {
            throw NumericalError("psi: value-iteration cross-check disagrees with Dijkstra");
        }
    }
    return out;
}

PhaseResult classify_phase(double alpha, const RateParams& rp, const PsiOptions& opt) {
    rp.validate();
    if (std::isinf(alpha)) {
        // Infinite population-per-length: quasispecies iff the barrier is
        // positive, which happens exactly when rho* > 0, i.e. a < ln sigma.
        PhaseResult res;
        res.threshold = std::log(static_cast<double>(rp.kappa));
        const bool ordered = rho_star(rp) > 0.0;
        res.phase = ordered ? Phase::Quasispecies : Phase::Disordered;
        res.alpha_psi = ordered ? kInf : 0.0;
        res.margin = 0.0;
        return res;
    }
    if (alpha < 0.0) throw std::invalid_argument("classify_phase: alpha must be >= 0");
    const PsiResult ps = psi(rp, opt);
    if (!ps.converged) throw NumericalError("classify_phase: psi did not converge");
    return classify_phase(alpha, ps, rp.kappa);
}

PhaseResult classify_phase(double alpha, const PsiResult& ps, int kappa) {
    if (alpha < 0.0) throw std::invalid_argument("classify_phase: alpha must be >= 0");
    PhaseResult res;
    res.threshold = std::log(static_cast<double>(kappa));
    res.alpha_psi = alpha * ps.value;
    // Uncertainty in alpha * psi from the refinement step and mesh scale.
    res.margin = alpha * std::max(ps.delta, grid_tolerance_for(ps.grid));
    if (res.alpha_psi < res.threshold - res.margin) {
        res.phase = Phase::Disordered;
    } else if (res.alpha_psi > res.threshold + res.margin) {
        res.phase = Phase::Quasispecies;
    } else {
        res.phase = Phase::NearCritical;
    }
    return res;
}

double critical_alpha(const RateParams& rp, const PsiOptions& opt) {
    const PsiResult ps = psi(rp, opt);
    if (!ps.converged) throw NumericalError("critical_alpha: psi did not converge");
    if (ps.value <= 0.0) return kInf;
    return std::log(static_cast<double>(rp.kappa)) / ps.value;
}

}  // namespace wfsp
