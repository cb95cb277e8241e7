// =============================================================================
// two_type.cpp
// =============================================================================
#include "wfsp/two_type.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wfsp/kernels.hpp"
#include "wfsp/math_util.hpp"

namespace wfsp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

TwoTypeKernel build_two_type_kernel(const ModelParams& mp, Theta theta) {
    mp.validate();
    TwoTypeKernel K;
    K.params = mp;
    K.theta = theta;
    K.m = mp.m;
    const int m = mp.m;
    {
        const auto row0 = mutation_row(mp, 0);
        const auto rowt = mutation_row(mp, theta_class(theta, mp.ell));
        K.keep_prob = row0[0];
        K.entry_prob = rowt[0];
    }

    // log pmf tables for Binomial(i, keep) at j, shared by all rows.
    std::vector<std::vector<double>> log_keep(m + 1), log_entry(m + 1);
    for (int n = 0; n <= m; ++n) {
        log_keep[n].resize(n + 1);
        log_entry[n].resize(n + 1);
        for (int j = 0; j <= n; ++j) {
            log_keep[n][j] = log_binom_pmf(n, j, K.keep_prob);
            log_entry[n][j] = log_binom_pmf(n, j, K.entry_prob);
        }
    }

    // conv[i][k] = log P(#peak offspring = k | i peak parents picked):
    // j of the i peak parents keep the peak, k-j of the m-i others enter it.
    std::vector<std::vector<double>> conv(m + 1, std::vector<double>(m + 1, kNegInf));
    std::vector<double> terms;
    for (int i = 0; i <= m; ++i) {
        for (int k = 0; k <= m; ++k) {
            const int jlo = std::max(0, k - (m - i));
            const int jhi = std::min(i, k);
            if (jlo > jhi) continue;
            terms.clear();
            for (int j = jlo; j <= jhi; ++j) {
                terms.push_back(log_keep[i][j] + log_entry[m - i][k - j]);
            }
            conv[i][k] = log_sum_exp(terms);
        }
    }

    K.log_p.assign(m + 1, std::vector<double>(m + 1, kNegInf));
    K.p.assign(m + 1, std::vector<double>(m + 1, 0.0));

    // Row 0: no peak parent can be picked, every offspring enters at rate
    // M(theta,0); this is conv[0][.] as well, kept explicit for clarity.
    for (int k = 0; k <= m; ++k) K.log_p[0][k] = log_entry[m][k];

    // Rows h >= 1: mix conv[i][.] with the selection binomial.
    const double sigma = mp.sigma;
    for (int h = 1; h <= m; ++h) {
        const double peak_sel = sigma * h / ((sigma - 1.0) * h + m);
        std::vector<double> log_sel(m + 1);
        for (int i = 0; i <= m; ++i) log_sel[i] = log_binom_pmf(m, i, peak_sel);
        for (int k = 0; k <= m; ++k) {
            terms.clear();
            for (int i = 0; i <= m; ++i) {
                if (log_sel[i] == kNegInf || conv[i][k] == kNegInf) continue;
                terms.push_back(log_sel[i] + conv[i][k]);
            }
            K.log_p[h][k] = log_sum_exp(terms);
        }
    }

    for (int h = 0; h <= m; ++h) {
        for (int k = 0; k <= m; ++k) K.p[h][k] = std::exp(K.log_p[h][k]);
    }
    return K;
}

std::vector<double> expected_hitting_time(const TwoTypeKernel& K) {
    const int m = K.m;
    // Transient block 1..m; exit column is the (linear-space) mass into 0.
    Matrix Q(m, std::vector<double>(m, 0.0));
    std::vector<double> exit(m, 0.0);
    for (int h = 1; h <= m; ++h) {
        for (int k = 1; k <= m; ++k) Q[h - 1][k - 1] = K.p[h][k];
        exit[h - 1] = K.p[h][0];
    }
    const auto t = absorbing_solve_gth(Q, exit, std::vector<double>(m, 1.0));
    std::vector<double> full(m + 1, 0.0);
    for (int h = 1; h <= m; ++h) full[h] = t[h - 1];
    return full;
}

std::vector<double> occupation_functional(const TwoTypeKernel& K,
                                          const std::function<double(double)>& f) {
    const int m = K.m;
    Matrix Q(m, std::vector<double>(m, 0.0));
    std::vector<double> exit(m, 0.0), c(m, 0.0);
    for (int h = 1; h <= m; ++h) {
        for (int k = 1; k <= m; ++k) Q[h - 1][k - 1] = K.p[h][k];
        exit[h - 1] = K.p[h][0];
        c[h - 1] = f(static_cast<double>(h) / m);
    }
    auto u = absorbing_solve_gth(Q, exit, c);
    // The summation runs through the absorption step, so the terminal state
    // contributes one f(0) on every path: a constant shift.
    const double f0 = f(0.0);
    std::vector<double> full(m + 1, 0.0);
    full[0] = f0;
    for (int h = 1; h <= m; ++h) full[h] = u[h - 1] + f0;
    return full;
}

std::vector<double> stationary_distribution(const TwoTypeKernel& K) {
    // GTH rather than power iteration: once m is moderately large the chain
    // is metastable (exponentially slow mixing), which stalls iterative
    // methods but leaves direct elimination untouched.
    return stationary_gth(K.p);
}

}  // namespace wfsp
