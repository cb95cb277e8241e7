// =============================================================================
// simulate.hpp — Law-level samplers and trajectory runners.
//
// The coupled maps in coupling.hpp spend ell+1 uniforms per chromosome per
// step because they must realize several chains on one probability space.
// When only the distribution matters, sampling the parent class and then the
// offspring class from precomputed cumulative rows is much cheaper; this file
// provides that fast path plus small trajectory helpers for the CLI.
// =============================================================================
#pragma once

#include <vector>

#include "wfsp/coupling.hpp"
#include "wfsp/genotype.hpp"
#include "wfsp/occupancy.hpp"
#include "wfsp/params.hpp"
#include "wfsp/rng.hpp"

namespace wfsp {

// Cumulative-row sampler for the lumped chains; build once, step many times.
class LumpedSampler {
  public:
    explicit LumpedSampler(const ModelParams& mp);

    [[nodiscard]] const ModelParams& params() const noexcept { return mp_; }

    [[nodiscard]] DistanceVector step_distance(const DistanceVector& d, SplitRng& rng) const;
    [[nodiscard]] Occupancy step_occupancy(const Occupancy& o, SplitRng& rng) const;

    // One offspring class given the parent class (mutation stage only).
    [[nodiscard]] int sample_mutation(int parent_class, SplitRng& rng) const;

  private:
    ModelParams mp_;
    std::vector<std::vector<double>> mut_cum_;  // per-class cumulative rows
};

// Genotype-level sampler (enumeration-free; any ell, kappa).
[[nodiscard]] GenotypePopulation step_genotype(const ModelParams& mp,
                                               const GenotypePopulation& pop, SplitRng& rng);

// Coupled three-chain record for one step of the sandwich run.
struct SandwichState {
    Occupancy lower;  // constrained with the farthest-class projection
    Occupancy mid;    // plain occupancy chain
    Occupancy upper;  // constrained with the class-1 projection
};

[[nodiscard]] SandwichState sandwich_start(const ModelParams& mp, const Occupancy& o);
// Advances all three chains with one shared uniform block; returns whether
// the partial-sum sandwich lower <= mid <= upper still holds.
bool sandwich_step(const ModelParams& mp, SandwichState& st, SplitRng& rng);

}  // namespace wfsp
