// =============================================================================
// quasipotential.hpp — Multi-step path cost and the extinction barrier psi(a).
//
// The cost of steering the rescaled peak density from s to t is the infimum
// over path lengths l and intermediate densities of the summed one-step
// costs.  On a uniform grid over [0,1] this is a shortest-path problem in a
// complete digraph whose edge weights are one_step_cost; Dijkstra solves it
// exactly for the grid.  Grid values converge to the continuum cost as the
// mesh refines because near-optimal continuum paths use finitely many steps
// that snap onto the grid at quadratic cost.
//
// psi(a) is the barrier from the equilibrium density rho*(a) down to
// extinction at 0.  It vanishes exactly when rho*(a) = 0 (a >= ln sigma).
// The solver refines N -> 2N until two successive values agree, and cross-
// checks Dijkstra against an independent Bellman-Ford value iteration whose
// edge costs come from the scan-based minimizer rather than the closed form.
// =============================================================================
#pragma once

#include <vector>

#include "wfsp/markov.hpp"
#include "wfsp/params.hpp"

namespace wfsp {

// Tolerance scale for "zero up to discretization" statements on an n-node grid.
[[nodiscard]] inline double grid_tolerance_for(int n) noexcept { return 8.0 / n; }

class CostGrid {
  public:
    CostGrid(const RateParams& rp, int n);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] const RateParams& params() const noexcept { return rp_; }
    [[nodiscard]] double node(int j) const noexcept { return static_cast<double>(j) / n_; }
    [[nodiscard]] int snap(double x) const noexcept;

    // One-step cost between grid nodes (closed-form minimizer).
    [[nodiscard]] double edge_cost(int j, int k) const noexcept;

    // Tolerance scale for "zero up to discretization" statements.
    [[nodiscard]] double grid_tolerance() const noexcept { return grid_tolerance_for(n_); }

    // Dijkstra distances from one source to every node.
    [[nodiscard]] std::vector<double> shortest_from(int src) const;

    // All-pairs distances (guarded to small n).
    [[nodiscard]] Matrix all_pairs() const;

  private:
    RateParams rp_;
    int n_;
};

// Multi-step cost between two densities, snapped to an N-point grid.
[[nodiscard]] double quasipotential(const RateParams& rp, double s, double t, int n);

struct PsiResult {
    double a = 0.0;
    double sigma = 1.0;
    double value = 0.0;
    int grid = 0;          // finest grid used
    bool converged = false;
    double delta = 0.0;    // |psi_N - psi_2N| at the final refinement
};

struct PsiOptions {
    int grid = 2000;           // starting N
    double tol = 1e-3;         // refinement stop |psi_N - psi_2N|
    int max_doublings = 3;
    bool variational_check = true;  // independent Bellman route cross-check
    int check_grid = 400;
};

[[nodiscard]] PsiResult psi(const RateParams& rp, const PsiOptions& opt = {});

// Independent evaluation of the same variational problem: Bellman-Ford value
// iteration over path lengths, scan-based edge costs.
[[nodiscard]] double psi_value_iteration(const RateParams& rp, int n, int max_steps = 64);

enum class Phase { Disordered, Quasispecies, NearCritical };

struct PhaseResult {
    Phase phase = Phase::Disordered;
    double alpha_psi = 0.0;  // alpha * psi(a); +inf*0 resolved symbolically
    double threshold = 0.0;  // ln kappa
    double margin = 0.0;
};

// Dichotomy in alpha * psi(a) vs ln kappa.  alpha may be +infinity (handled
// symbolically: quasispecies iff a < ln sigma) or 0 (always disordered).
[[nodiscard]] PhaseResult classify_phase(double alpha, const RateParams& rp,
                                         const PsiOptions& opt = {});

// Same dichotomy against an already computed barrier value (sweeps evaluate
// psi once per mutation intensity and classify many alphas against it).
[[nodiscard]] PhaseResult classify_phase(double alpha, const PsiResult& ps, int kappa);

// Critical population-to-length ratio ln kappa / psi(a); +inf when psi = 0.
[[nodiscard]] double critical_alpha(const RateParams& rp, const PsiOptions& opt = {});

}  // namespace wfsp
