// =============================================================================
// markov.cpp
// =============================================================================
#include "wfsp/markov.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wfsp/math_util.hpp"
#include "wfsp/params.hpp"

namespace wfsp {

std::vector<double> absorbing_solve_gth(Matrix Q, std::vector<double> exit,
                                        std::vector<double> c) {
    const int n = static_cast<int>(Q.size());
    if (static_cast<int>(exit.size()) != n || static_cast<int>(c.size()) != n) {
        throw std::invalid_argument("absorbing_solve_gth: size mismatch");
    }
    // Forward pass: censor states n-1, n-2, ..., 1 out of the chain.  The
    // pivot for state k is its total exit mass from the censored chain,
    // accumulated as a sum of nonnegative terms (never 1 - q_kk).
    std::vector<double> denom(n, 0.0);
    for (int k = n - 1; k >= 0; --k) {
        KahanSum piv;
        piv.add(exit[k]);
        for (int j = 0; j < k; ++j) piv.add(Q[k][j]);
        denom[k] = piv.value();
        if (!(denom[k] > 0.0)) {
            throw NumericalError("absorbing_solve_gth: zero exit mass, chain not absorbing");
        }
        for (int i = 0; i < k; ++i) {
            if (Q[i][k] == 0.0) continue;
            const double f = Q[i][k] / denom[k];
            c[i] += f * c[k];
            exit[i] += f * exit[k];
            for (int j = 0; j < k; ++j) Q[i][j] += f * Q[k][j];
        }
    }
    // Back substitution in elimination-reverse order; every term nonnegative.
    std::vector<double> t(n, 0.0);
    for (int k = 0; k < n; ++k) {
        KahanSum acc;
        acc.add(c[k]);
        for (int j = 0; j < k; ++j) acc.add(Q[k][j] * t[j]);
        t[k] = acc.value() / denom[k];
    }
    return t;
}

std::vector<double> absorbing_solve_lu(const Matrix& Q, const std::vector<double>& c) {
    const int n = static_cast<int>(Q.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        b(i) = c[i];
        for (int j = 0; j < n; ++j) A(i, j) -= Q[i][j];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd x = lu.solve(b);
    // One round of iterative refinement.
    Eigen::VectorXd r = b - A * x;
    x += lu.solve(r);
    return std::vector<double>(x.data(), x.data() + n);
}

double absorbing_residual(const Matrix& Q, const std::vector<double>& t,
                          const std::vector<double>& c) {
    const int n = static_cast<int>(Q.size());
    double worst = 0.0;
    double tmax = 0.0;
    for (int i = 0; i < n; ++i) {
        KahanSum acc;
        acc.add(t[i]);
        for (int j = 0; j < n; ++j) acc.add(-Q[i][j] * t[j]);
        worst = std::max(worst, std::abs(acc.value() - c[i]));
        tmax = std::max(tmax, std::abs(t[i]));
    }
    return worst / std::max(1.0, tmax);
}

std::vector<double> stationary_power(const Matrix& P, double tol, int max_iter) {
    const int n = static_cast<int>(P.size());
    std::vector<double> mu(n, 1.0 / n), next(n, 0.0);
    for (int it = 0; it < max_iter; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double w = mu[i];
            if (w == 0.0) continue;
            const auto& row = P[i];
            for (int j = 0; j < n; ++j) next[j] += w * row[j];
        }
        double norm = 0.0;
        for (double v : next) norm += v;
        for (double& v : next) v /= norm;
        double diff = 0.0;
        for (int j = 0; j < n; ++j) diff += std::abs(next[j] - mu[j]);
        mu.swap(next);
        if (diff < tol) return mu;
    }
    throw NumericalError("stationary_power: no convergence within iteration budget");
}

std::vector<double> stationary_gth(Matrix P) {
    const int n = static_cast<int>(P.size());
    std::vector<double> srow(n, 0.0);
    for (int k = n - 1; k >= 1; --k) {
        KahanSum s;
        for (int j = 0; j < k; ++j) s.add(P[k][j]);
        srow[k] = s.value();
        if (!(srow[k] > 0.0)) {
            throw NumericalError("stationary_gth: reducible chain");
        }
        for (int i = 0; i < k; ++i) {
            if (P[i][k] == 0.0) continue;
            const double f = P[i][k] / srow[k];
            for (int j = 0; j < k; ++j) P[i][j] += f * P[k][j];
        }
    }
    std::vector<double> mu(n, 0.0);
    mu[0] = 1.0;
    for (int k = 1; k < n; ++k) {
        KahanSum acc;
        for (int i = 0; i < k; ++i) acc.add(mu[i] * P[i][k]);
        mu[k] = acc.value() / srow[k];
    }
    KahanSum norm;
    for (double v : mu) norm.add(v);
    for (double& v : mu) v /= norm.value();
    return mu;
}

Matrix matrix_multiply(const Matrix& A, const Matrix& B) {
    const int n = static_cast<int>(A.size());
    const int p = static_cast<int>(B[0].size());
    Matrix C(n, std::vector<double>(p, 0.0));
    for (int i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < B.size(); ++k) {
            const double a = A[i][k];
            if (a == 0.0) continue;
            for (int j = 0; j < p; ++j) C[i][j] += a * B[k][j];
        }
    }
    return C;
}

Matrix matrix_power(const Matrix& P, int n) {
    const int s = static_cast<int>(P.size());
    Matrix R(s, std::vector<double>(s, 0.0));
    for (int i = 0; i < s; ++i) R[i][i] = 1.0;
    Matrix base = P;
    while (n > 0) {
        if (n & 1) R = matrix_multiply(R, base);
        n >>= 1;
        if (n > 0) base = matrix_multiply(base, base);
    }
    return R;
}

RenewalCheck renewal_identity_check(const Matrix& P, const std::vector<char>& in_W, int e_state,
                                    const std::vector<double>& f) {
    const int n = static_cast<int>(P.size());
    if (static_cast<int>(in_W.size()) != n || static_cast<int>(f.size()) != n) {
        throw std::invalid_argument("renewal_identity_check: size mismatch");
    }
    if (in_W[e_state]) throw std::invalid_argument("renewal_identity_check: base state inside W");
    for (int x = 0; x < n; ++x) {
        if (!in_W[x] && f[x] != 0.0) {
            throw std::invalid_argument("renewal_identity_check: f must vanish outside W");
        }
    }

    RenewalCheck out;
    const auto mu = stationary_power(P);
    KahanSum lhs;
    for (int x = 0; x < n; ++x) lhs.add(f[x] * mu[x]);
    out.stationary_average = lhs.value();

    // Stage 2: absorb at the base state e.  States != e form the transient
    // block; column into e is the exit mass.
    std::vector<int> others;
    others.reserve(n - 1);
    for (int x = 0; x < n; ++x) {
        if (x != e_state) others.push_back(x);
    }
    const int ns = static_cast<int>(others.size());
    Matrix Q(ns, std::vector<double>(ns, 0.0));
    std::vector<double> exit(ns, 0.0);
    for (int i = 0; i < ns; ++i) {
        for (int j = 0; j < ns; ++j) Q[i][j] = P[others[i]][others[j]];
        exit[i] = P[others[i]][e_state];
    }
    std::vector<double> ones(ns, 1.0), fr(ns, 0.0);
    for (int i = 0; i < ns; ++i) fr[i] = f[others[i]];
    // Expected steps to reach e, and expected reward collected from the start
    // state through the step before absorption (f(e) = 0, so the absorption
    // endpoint adds nothing).
    const auto hit_e = absorbing_solve_gth(Q, exit, ones);
    const auto reward = absorbing_solve_gth(Q, exit, fr);

    // Stage 1: from e, absorb in W.  Transient block is the complement of W;
    // we need the expected entry time and the entry distribution over W.
    std::vector<int> outside;
    for (int x = 0; x < n; ++x) {
        if (!in_W[x]) outside.push_back(x);
    }
    const int no = static_cast<int>(outside.size());
    std::vector<int> pos_outside(n, -1);
    for (int i = 0; i < no; ++i) pos_outside[outside[i]] = i;
    Matrix QN(no, std::vector<double>(no, 0.0));
    std::vector<double> exitN(no, 0.0);
    for (int i = 0; i < no; ++i) {
        for (int j = 0; j < no; ++j) QN[i][j] = P[outside[i]][outside[j]];
        for (int x = 0; x < n; ++x) {
            if (in_W[x]) exitN[i] += P[outside[i]][x];
        }
    }
    const int e_pos = pos_outside[e_state];
    const auto t_star = absorbing_solve_gth(QN, exitN, std::vector<double>(no, 1.0));

    // Entry distribution: for each w in W solve the linear system with the
    // one-step probabilities into w as the reward column.
    KahanSum cycle, gain;
    cycle.add(t_star[e_pos]);
    std::vector<int> pos_others(n, -1);
    for (int i = 0; i < ns; ++i) pos_others[others[i]] = i;
    for (int w = 0; w < n; ++w) {
        if (!in_W[w]) continue;
        std::vector<double> col(no, 0.0);
        for (int i = 0; i < no; ++i) col[i] = P[outside[i]][w];
        const auto h = absorbing_solve_gth(QN, exitN, col);
        const double entry_prob = h[e_pos];
        if (entry_prob == 0.0) continue;
        cycle.add(entry_prob * hit_e[pos_others[w]]);
        gain.add(entry_prob * reward[pos_others[w]]);
    }
    out.expected_cycle = cycle.value();
    out.excursion_reward = gain.value();
    out.quotient = out.excursion_reward / out.expected_cycle;
    out.abs_error = std::abs(out.quotient - out.stationary_average);
    return out;
}

}  // namespace wfsp
