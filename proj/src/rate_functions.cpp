// =============================================================================
// rate_functions.cpp
// =============================================================================
#include "wfsp/rate_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wfsp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double binom_rate(double p, double t) noexcept {
    if (!(t >= 0.0 && t <= 1.0)) return kInf;
    if (p <= 0.0) return t == 0.0 ? 0.0 : kInf;
    if (p >= 1.0) return t == 1.0 ? 0.0 : kInf;
    double v = 0.0;
    if (t > 0.0) v += t * std::log(t / p);
    if (t < 1.0) v += (1.0 - t) * std::log((1.0 - t) / (1.0 - p));
    return std::max(v, 0.0);  // clip the -1ulp noise at t == p
}

double drift_f(double r, double sigma) noexcept {
    return sigma * r / ((sigma - 1.0) * r + 1.0);
}

double drift_F(double r, const RateParams& rp) noexcept {
    return rp.ea() * drift_f(r, rp.sigma);
}

double rho_star(const RateParams& rp) noexcept {
    const double g = rp.sigma * rp.ea();
    if (g <= 1.0 || rp.sigma <= 1.0) return 0.0;
    return (g - 1.0) / (rp.sigma - 1.0);
}

double step_rate(const RateParams& rp, double r, double s, double t) noexcept {
    if (!(r >= 0.0 && r <= 1.0) || !(s >= 0.0 && s <= 1.0) || !(t >= 0.0 && t <= 1.0)) {
        return kInf;
    }
    const double fr = drift_f(r, rp.sigma);
    const double sel = binom_rate(fr, s);
    if (sel == kInf) return kInf;
    if (s == 0.0) {
        // No survivor of selection: the mutation stage contributes nothing,
        // but it cannot produce peak mass out of thin air.
        return t == 0.0 ? sel : kInf;
    }
    const double mut = binom_rate(rp.ea(), t / s);
    if (mut == kInf) return kInf;
    return sel + s * mut;
}

double one_step_cost(const RateParams& rp, double r, double t) noexcept {
    if (!(r >= 0.0 && r <= 1.0) || !(t >= 0.0 && t <= 1.0)) return kInf;
    const double fr = drift_f(r, rp.sigma);
    if (fr <= 0.0) return t == 0.0 ? 0.0 : kInf;   // extinct stays extinct
    if (fr >= 1.0) return binom_rate(rp.ea(), t);  // selection is pinned at s = 1
    const double ea = rp.ea();
    // The stationarity solution lies in [t, 1] exactly; clamp away the one-ulp
    // overstep that otherwise lands outside the feasible set at t = 1.
    const double s =
        std::clamp((t * (1.0 - fr) + fr * (1.0 - ea)) / (1.0 - fr * ea), t, 1.0);
    return step_rate(rp, r, s, t);
}

namespace {

// Golden-section minimization of s -> step_rate on [lo, hi].
double golden_min(const RateParams& rp, double r, double t, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = step_rate(rp, r, x1, t);
    double f2 = step_rate(rp, r, x2, t);
    while (b - a > 1e-10) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = step_rate(rp, r, x1, t);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = step_rate(rp, r, x2, t);
        }
    }
    return std::min(f1, f2);
}

}  // namespace

double one_step_cost_scan(const RateParams& rp, double r, double t) noexcept {
    if (!(r >= 0.0 && r <= 1.0) || !(t >= 0.0 && t <= 1.0)) return kInf;
    const double fr = drift_f(r, rp.sigma);
    if (fr <= 0.0) return t == 0.0 ? 0.0 : kInf;
    if (fr >= 1.0) return binom_rate(rp.ea(), t);
    // Bracket the minimum with a 64-point scan of the feasible interval
    // [t, 1] (s < t is infeasible), then refine around the best sample.
    constexpr int kScan = 64;
    const double lo = t, hi = 1.0;
    double best = kInf;
    int best_i = 0;
    for (int i = 0; i <= kScan; ++i) {
        const double s = lo + (hi - lo) * i / kScan;
        const double v = step_rate(rp, r, s, t);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    const double wa = lo + (hi - lo) * std::max(0, best_i - 1) / kScan;
    const double wb = lo + (hi - lo) * std::min(kScan, best_i + 1) / kScan;
    const double refined = golden_min(rp, r, t, wa, wb);
    // Endpoint s = 0 competes only when t = 0 (it is infeasible otherwise).
    if (t == 0.0) best = std::min(best, step_rate(rp, r, 0.0, 0.0));
    return std::min(best, refined);
}

}  // namespace wfsp
