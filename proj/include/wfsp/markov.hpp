// =============================================================================
// markov.hpp — Dense finite-chain solvers.
//
// Absorbing-chain expectations are computed with a GTH-style state-reduction
// (Grassmann-Taksar-Heyman): every pivot is the sum of the current exit masses
// of the row being eliminated, so the algorithm performs no subtraction at
// all.  That keeps full relative accuracy even when expected hitting times
// reach 1e30+ and the effective exit rates sit far below machine epsilon,
// a regime where a plain LU factorization of (I - Q) silently loses the tiny
// pivots to cancellation.  A conventional partial-pivot LU (Eigen) with one
// round of iterative refinement is kept alongside for the well-conditioned
// small systems and as a cross-check.
//
// Stationary distributions use power iteration on the transposed action with
// an l1 stopping rule; tests validate against a dense eigen-decomposition.
// =============================================================================
#pragma once

#include <functional>
#include <vector>

namespace wfsp {

using Matrix = std::vector<std::vector<double>>;  // row-major, row stochastic

// Solves (I - Q) t = c for a substochastic Q whose per-row missing mass is
// given explicitly in `exit` (exit[i] >= 0, Q row sum + exit[i] == 1 up to
// rounding).  All inputs must be nonnegative.  Cancellation-free.
[[nodiscard]] std::vector<double> absorbing_solve_gth(Matrix Q, std::vector<double> exit,
                                                      std::vector<double> c);

// Same system through Eigen's partial-pivot LU plus one refinement pass.
[[nodiscard]] std::vector<double> absorbing_solve_lu(const Matrix& Q,
                                                     const std::vector<double>& c);

// Max-norm residual ||(I-Q)t - c||_inf scaled by max(1, ||t||_inf).
[[nodiscard]] double absorbing_residual(const Matrix& Q, const std::vector<double>& t,
                                        const std::vector<double>& c);

// Left fixed vector of a row-stochastic matrix by power iteration, stopping
// when successive iterates differ by less than `tol` in l1.  Throws
// NumericalError if `max_iter` is exhausted.
[[nodiscard]] std::vector<double> stationary_power(const Matrix& P, double tol = 1e-13,
                                                   int max_iter = 2000000);

// Stationary law by full GTH state reduction: subtraction-free, immune to
// metastability (power iteration stalls when the mixing time is huge).
[[nodiscard]] std::vector<double> stationary_gth(Matrix P);

[[nodiscard]] Matrix matrix_multiply(const Matrix& A, const Matrix& B);
[[nodiscard]] Matrix matrix_power(const Matrix& P, int n);

// ── renewal decomposition ────────────────────────────────────────────────────
// For an irreducible aperiodic chain P, a target set W (given as a mask), a
// base state e outside W, and a reward f supported on W, the stationary
// average of f equals the expected reward collected between the first entry
// into W and the subsequent return to e, divided by the expected length of
// that whole excursion started at e.  Both sides are computed exactly here
// (stationary law by power iteration, excursion pieces by absorbing solves).
struct RenewalCheck {
    double stationary_average = 0.0;  // sum_x f(x) mu(x)
    double excursion_reward = 0.0;    // numerator of the renewal quotient
    double expected_cycle = 0.0;      // denominator: E(tau | X0 = e)
    double quotient = 0.0;
    double abs_error = 0.0;
};

[[nodiscard]] RenewalCheck renewal_identity_check(const Matrix& P, const std::vector<char>& in_W,
                                                  int e_state, const std::vector<double>& f);

}  // namespace wfsp
