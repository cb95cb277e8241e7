// =============================================================================
// math_util.cpp
// =============================================================================
#include "wfsp/math_util.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wfsp {

namespace {

constexpr int kPascalMax = 64;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Pascal triangle cached once; C(64,32) ~ 1.8e18 still has a faithful double
// representation (relative error a few ulps from the additions).
const std::array<std::array<double, kPascalMax + 1>, kPascalMax + 1>& pascal() {
    static const auto table = [] {
        std::array<std::array<double, kPascalMax + 1>, kPascalMax + 1> t{};
        for (int n = 0; n <= kPascalMax; ++n) {
            t[n][0] = 1.0;
            for (int k = 1; k <= n; ++k) {
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0.0);
            }
        }
        return t;
    }();
    return table;
}

}  // namespace

double binomial(int n, int k) noexcept {
    if (k < 0 || k > n || n < 0) return 0.0;
    if (n <= kPascalMax) return pascal()[n][k];
    return std::exp(log_binomial(n, k));
}

double log_binomial(int n, int k) noexcept {
    if (k < 0 || k > n || n < 0) return -kInf;
    if (n <= kPascalMax) return std::log(pascal()[n][k]);
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_binom_pmf(int n, int k, double p) noexcept {
    if (k < 0 || k > n) return -kInf;
    if (p <= 0.0) return k == 0 ? 0.0 : -kInf;
    if (p >= 1.0) return k == n ? 0.0 : -kInf;
    return log_binomial(n, k) + k * std::log(p) + (n - k) * std::log1p(-p);
}

double binom_pmf(int n, int k, double p) noexcept {
    return std::exp(log_binom_pmf(n, k, p));
}

double log_sum_exp(const std::vector<double>& logs) noexcept {
    double mx = -kInf;
    for (double v : logs) mx = std::max(mx, v);
    if (!(mx > -kInf)) return -kInf;
    KahanSum s;
    for (double v : logs) s.add(std::exp(v - mx));
    return mx + std::log(s.value());
}

void LogSumExp::add(double lg) { terms_.push_back(lg); }

double LogSumExp::value() const noexcept { return log_sum_exp(terms_); }

// ── regularized incomplete gamma ─────────────────────────────────────────────
// Q(a, x) = Gamma(a, x) / Gamma(a).  Series for x < a+1, Lentz continued
// fraction otherwise; this split keeps both expansions fast and stable.
namespace {

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, Q = 1 - P.
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 1000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return std::clamp(1.0 - p, 0.0, 1.0);
    }
    // Modified Lentz for the continued fraction of Q.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::clamp(std::exp(-x + a * std::log(x) - lg) * h, 0.0, 1.0);
}

}  // namespace

double chi_square_tail(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi_square_tail: dof must be positive");
    if (stat <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * stat);
}

ChiSquareResult chi_square_gof(const std::vector<long long>& observed,
                               const std::vector<double>& expected_prob,
                               long long n_samples, double min_expected) {
    if (observed.size() != expected_prob.size()) {
        throw std::invalid_argument("chi_square_gof: size mismatch");
    }
    // Pool sparse cells into one bucket so the chi-square limit law applies.
    double stat = 0.0;
    long long pooled_obs = 0;
    double pooled_exp = 0.0;
    int kept = 0, pooled = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = expected_prob[i] * static_cast<double>(n_samples);
        if (e < min_expected) {
            pooled_obs += observed[i];
            pooled_exp += e;
            ++pooled;
            continue;
        }
        const double diff = static_cast<double>(observed[i]) - e;
        stat += diff * diff / e;
        ++kept;
    }
    if (pooled_exp > 0.0) {
        const double diff = static_cast<double>(pooled_obs) - pooled_exp;
        if (pooled_exp >= 1.0) {
            stat += diff * diff / pooled_exp;
            ++kept;
        }
    }
    ChiSquareResult r;
    r.stat = stat;
    r.dof = std::max(1, kept - 1);
    r.pooled_cells = pooled;
    r.p_value = chi_square_tail(stat, r.dof);
    return r;
}

ChiSquareResult chi_square_two_sample(const std::vector<long long>& a,
                                      const std::vector<long long>& b,
                                      double min_expected) {
    if (a.size() != b.size()) throw std::invalid_argument("chi_square_two_sample: size mismatch");
    long long na = 0, nb = 0;
    for (auto v : a) na += v;
    for (auto v : b) nb += v;
    if (na == 0 || nb == 0) throw std::invalid_argument("chi_square_two_sample: empty sample");
    const double ka = std::sqrt(static_cast<double>(nb) / static_cast<double>(na));
    const double kb = 1.0 / ka;
    double stat = 0.0;
    int kept = 0;
    double pa = 0.0, pb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double tot = static_cast<double>(a[i] + b[i]);
        const double scale = tot * static_cast<double>(na) / (na + nb);
        if (scale < min_expected) {
            pa += static_cast<double>(a[i]);
            pb += static_cast<double>(b[i]);
            continue;
        }
        const double diff = ka * static_cast<double>(a[i]) - kb * static_cast<double>(b[i]);
        stat += diff * diff / tot;
        ++kept;
    }
    if (pa + pb >= 2.0 * min_expected) {
        const double diff = ka * pa - kb * pb;
        stat += diff * diff / (pa + pb);
        ++kept;
    }
    ChiSquareResult r;
    r.stat = stat;
    r.dof = std::max(1, kept - 1);
    r.p_value = chi_square_tail(stat, r.dof);
    return r;
}

}  // namespace wfsp
