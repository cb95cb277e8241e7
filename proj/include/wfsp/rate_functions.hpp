// =============================================================================
// rate_functions.hpp — Binomial rate function and the one-step path cost.
//
// binom_rate(p, t) is the Cramer rate of a Binomial(n, p) fraction ending
// near t: t ln(t/p) + (1-t) ln((1-t)/(1-p)), with the usual conventions
// (0 ln 0 = 0, +inf outside [0,1], degenerate p handled as point masses).
//
// A one-step move of the rescaled peak-density from r to t factorizes through
// the selected fraction s: pay binom_rate(f(r), s) for the selection stage,
// where f(r) = sigma r / ((sigma-1) r + 1) is the post-selection density, and
// s * binom_rate(e^-a, t/s) for the mutation stage that retains each selected
// copy with limiting probability e^-a.  one_step_cost minimizes that total
// over s.  The objective is convex in s (rate functions are convex and the
// mutation stage is a perspective of one), so the stationarity condition
//
//     s (1 - fr) (1 - t/s) = fr (1 - ea) (1 - s)
//
// is linear in s and pins the unique interior minimizer
//
//     s* = (t (1 - fr) + fr (1 - ea)) / (1 - fr ea),
//
// which always lands inside [t, 1].  The golden-section variant of the same
// minimization is kept as an independent cross-check (and as the fallback
// documented in one_step_cost_scan).
// =============================================================================
#pragma once

#include "wfsp/params.hpp"

namespace wfsp {

// Cramer rate of a binomial fraction; +inf outside the feasible set.
[[nodiscard]] double binom_rate(double p, double t) noexcept;

// Post-selection peak density.
[[nodiscard]] double drift_f(double r, double sigma) noexcept;
// Post-selection-and-mutation drift: F(r) = e^-a f(r).
[[nodiscard]] double drift_F(double r, const RateParams& rp) noexcept;

// Stable fixed point of F: (sigma e^-a - 1)/(sigma - 1) when sigma e^-a > 1,
// else 0 (the peak cannot sustain itself).
[[nodiscard]] double rho_star(const RateParams& rp) noexcept;

// Full three-argument cost of moving r -> t through selected fraction s.
[[nodiscard]] double step_rate(const RateParams& rp, double r, double s, double t) noexcept;

// min over s of step_rate; closed form (see header comment).
[[nodiscard]] double one_step_cost(const RateParams& rp, double r, double t) noexcept;

// Same minimum via a 64-point bracket scan plus golden-section refinement.
// Slower; used to cross-validate the closed form.
[[nodiscard]] double one_step_cost_scan(const RateParams& rp, double r, double t) noexcept;

}  // namespace wfsp
