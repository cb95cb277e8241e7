// =============================================================================
// coupling.hpp — Shared-randomness construction of one population step.
//
// One step consumes an m x (ell+1) block of independent uniforms on [0,1):
// column 0 drives each offspring's parent choice, columns 1..ell drive its
// per-locus mutations.  Feeding the same block to chains started from
// comparable states realizes them on a common probability space:
//
//   - the mutation map b -> b - #{repair slots below q/(kappa-1)}
//                           + #{fresh slots above 1-q}
//     is nondecreasing in b for fixed uniforms;
//   - parent choice reads s through the cumulative fitness intervals, which
//     for occupancies ordered by partial sums moves the parent class the
//     right way;
//   - the distance-vector step as a whole is NOT monotone (a fitter
//     population reshuffles the cumulative intervals under the same s); the
//     classic 3-chromosome counterexample is pinned in the tests.
//
// The occupancy step IS monotone for the partial-sum order, and combining it
// with the lower/upper projections gives bounding processes that sandwich the
// true chain path by path, plus the two-type chains used for exact numerics.
// =============================================================================
#pragma once

#include <vector>

#include "wfsp/occupancy.hpp"
#include "wfsp/params.hpp"
#include "wfsp/rng.hpp"

namespace wfsp {

// One step's worth of shared uniforms.
struct RandomInputMatrix {
    int m = 0;
    int ell = 0;
    std::vector<double> u;  // row-major, m rows of (ell+1)

    static RandomInputMatrix draw(int m, int ell, SplitRng& rng);

    [[nodiscard]] double sel(int i) const noexcept { return u[i * (ell + 1)]; }
    [[nodiscard]] double mut(int i, int k) const noexcept {  // k in 0..ell-1
        return u[i * (ell + 1) + 1 + k];
    }
};

// Which bounding projection a constrained step should apply.
enum class Theta {
    Lower,  // collapse non-peak mass to the farthest class ell
    Upper,  // collapse non-peak mass to class 1
};

[[nodiscard]] int theta_class(Theta t, int ell) noexcept;

// Monotone mutation map: new class from b under uniforms u[0..ell-1].
// Slots 0..b-1 repair on u < q/(kappa-1); slots b..ell-1 gain on u > 1-q.
[[nodiscard]] int mutate_coupled(const ModelParams& mp, int b, const double* u);

// Parent lookup through the cumulative-fitness intervals; 0-based results.
[[nodiscard]] int select_coupled_distance(const ModelParams& mp, const DistanceVector& d,
                                          double s);  // returns parent index
[[nodiscard]] int select_coupled_occupancy(const ModelParams& mp, const Occupancy& o,
                                           double s);  // returns parent class

// Full coupled steps.
[[nodiscard]] DistanceVector coupled_step_distance(const ModelParams& mp, const DistanceVector& d,
                                                   const RandomInputMatrix& r);
[[nodiscard]] Occupancy coupled_step_occupancy(const ModelParams& mp, const Occupancy& o,
                                               const RandomInputMatrix& r);

// Constrained step of the bounding process: plain coupled step while no
// chromosome sits on the peak and none appears; projection of the coupled
// step at the moment of discovery; projected step of the projected state
// while the peak is occupied.
[[nodiscard]] Occupancy bounded_step(const ModelParams& mp, const Occupancy& o,
                                     const RandomInputMatrix& r, Theta theta);

// Two-type embedding: z peak copies, everyone else in class theta.
[[nodiscard]] Occupancy two_type_state(const ModelParams& mp, int z, Theta theta);
[[nodiscard]] int two_type_step(const ModelParams& mp, int z, const RandomInputMatrix& r,
                                Theta theta);

}  // namespace wfsp
