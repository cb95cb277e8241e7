// =============================================================================
// math_util.hpp — Small numeric helpers shared across the project.
//
// Binomial coefficients are served from an exact Pascal-triangle cache up to
// n = 64 (every entry there is below 2^63 and carries at most the usual double
// rounding); larger arguments fall back to lgamma.  All probability mass
// functions are evaluated in log space first so tiny tail terms survive, then
// exponentiated.  Goodness-of-fit tests use the regularized incomplete gamma
// function for chi-square tail probabilities.
// =============================================================================
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace wfsp {

// ── compensated summation ────────────────────────────────────────────────────
// Kahan-Neumaier: correct even when the addend exceeds the running sum.
class KahanSum {
  public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// ── binomial coefficients ────────────────────────────────────────────────────
[[nodiscard]] double binomial(int n, int k) noexcept;      // C(n, k), 0 outside range
[[nodiscard]] double log_binomial(int n, int k) noexcept;  // log C(n, k); -inf outside

// log of C(n,k) p^k (1-p)^(n-k) with the p = 0 / p = 1 point masses handled.
[[nodiscard]] double log_binom_pmf(int n, int k, double p) noexcept;
[[nodiscard]] double binom_pmf(int n, int k, double p) noexcept;

// ── log-sum-exp ──────────────────────────────────────────────────────────────
[[nodiscard]] double log_sum_exp(const std::vector<double>& logs) noexcept;

// Streaming variant: fold one term at a time.
class LogSumExp {
  public:
    void add(double lg);
    [[nodiscard]] double value() const noexcept;

  private:
    std::vector<double> terms_;
};

// ── chi-square goodness of fit ───────────────────────────────────────────────
// Upper tail P(X > stat) for X ~ chi-square(dof), via the regularized
// incomplete gamma function Q(dof/2, stat/2).
[[nodiscard]] double chi_square_tail(double stat, int dof);

struct ChiSquareResult {
    double stat = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int pooled_cells = 0;  // low-expectation cells merged into a catch-all
};

// Pearson test of observed counts against expected probabilities.  Cells with
// expected count below `min_expected` are pooled to keep the asymptotics valid.
[[nodiscard]] ChiSquareResult chi_square_gof(const std::vector<long long>& observed,
                                             const std::vector<double>& expected_prob,
                                             long long n_samples,
                                             double min_expected = 5.0);

// Two-sample Pearson test that two count vectors come from a common law.
[[nodiscard]] ChiSquareResult chi_square_two_sample(const std::vector<long long>& a,
                                                    const std::vector<long long>& b,
                                                    double min_expected = 5.0);

}  // namespace wfsp
