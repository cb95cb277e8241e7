// =============================================================================
// two_type.hpp — Exact kernel of the two-type bounding chains.
//
// When every non-peak chromosome is forced into a single class theta (the
// nearest class 1 for the upper bound, the farthest class ell for the lower
// bound), the occupancy chain collapses to a birth-death-like chain on the
// number of peak copies z in {0, ..., m}.  One step factorizes as:
//
//   - selection: each of the m offspring picks a peak parent with probability
//     sigma z / ((sigma - 1) z + m), i.e. the number of peak parents is
//     Binomial(m, that probability);
//   - mutation: a peak offspring stays on the peak with probability M(0,0),
//     a class-theta offspring jumps onto the peak with probability M(theta,0).
//
// Row z = 0 is plain Binomial(m, M(theta,0)).  Rows are assembled in log
// space; the inner sum over "peak parents that kept the peak" is the
// convolution of two binomials and is shared across rows, which keeps the
// build at O(m^3) log-sum-exp operations.
// =============================================================================
#pragma once

#include <functional>
#include <vector>

#include "wfsp/coupling.hpp"
#include "wfsp/markov.hpp"
#include "wfsp/params.hpp"

namespace wfsp {

struct TwoTypeKernel {
    ModelParams params;
    Theta theta = Theta::Upper;
    int m = 0;
    double keep_prob = 0.0;   // M(0,0)
    double entry_prob = 0.0;  // M(theta,0)
    Matrix log_p;             // (m+1) x (m+1), natural logs
    Matrix p;                 // linear mirror; underflows clamp to 0
};

[[nodiscard]] TwoTypeKernel build_two_type_kernel(const ModelParams& mp, Theta theta);

// E(time to hit 0 | Z0 = i) for i = 0..m (entry 0 is 0).  Cancellation-free
// solve; values up to ~1e300 stay meaningful.
[[nodiscard]] std::vector<double> expected_hitting_time(const TwoTypeKernel& K);

// E(sum_{n=0}^{tau_0} f(Z_n / m) | Z0 = i).  The sum includes both endpoints;
// with f == 1 this equals the expected hitting time plus one.
[[nodiscard]] std::vector<double> occupation_functional(const TwoTypeKernel& K,
                                                        const std::function<double(double)>& f);

// Stationary law of the (irreducible, since M(theta,0) > 0) full chain.
[[nodiscard]] std::vector<double> stationary_distribution(const TwoTypeKernel& K);

}  // namespace wfsp
