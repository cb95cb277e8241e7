// =============================================================================
// verify.hpp — Property battery: exact identities and coupling invariants.
//
// Each check returns a small report instead of asserting, so the same code
// backs the `verify` CLI subcommand, the unit tests, and the acceptance
// suite.  The exact checks enumerate small state spaces; the statistical
// checks quantify over random inputs with fixed seeds.
// =============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wfsp/occupancy.hpp"
#include "wfsp/params.hpp"
#include "wfsp/rng.hpp"

namespace wfsp {

// ── lumping exactness ────────────────────────────────────────────────────────
// Offspring-sequence law pushed onto distance classes vs the lumped law, for
// every population over the full genotype space.  Max absolute error.
[[nodiscard]] double lumping_error_chromosome_law(const ModelParams& mp);

// Brute-force sum of genotype-population transitions over each fiber of the
// distance map vs the distance kernel.  Only for tiny spaces; the guard
// throws if kappa^(ell*m) would be unreasonable.
[[nodiscard]] double lumping_error_full_sum(const ModelParams& mp);

// Distance kernel pushed onto occupancies (sum over orderings) vs the
// occupancy kernel with its multinomial factor.  Exhaustive and exact.
[[nodiscard]] double lumping_error_occupancy(const ModelParams& mp);

// Exchangeability: relabeling chromosomes leaves the distance kernel
// invariant; exhaustive over all states and a transposition generator set.
[[nodiscard]] double exchangeability_error(const ModelParams& mp);

// Conditional product structure: the distance kernel equals the mixture over
// ordered parent draws of products of mutation rows.  Exhaustive, exact.
[[nodiscard]] double parent_mixture_error(const ModelParams& mp);

// ── coupling invariants ──────────────────────────────────────────────────────
struct MonotonicityReport {
    long long trials = 0;
    long long violations = 0;
    [[nodiscard]] bool ok() const noexcept { return violations == 0; }
};

// Occupancy coupled step preserves the partial-sum order (random pairs).
[[nodiscard]] MonotonicityReport occupancy_monotone_mc(const ModelParams& mp, long long trials,
                                                       SplitRng rng);
// Same, exhaustive over all comparable state pairs with a batch of shared
// uniform blocks per pair.
[[nodiscard]] MonotonicityReport occupancy_monotone_exhaustive(const ModelParams& mp,
                                                               int blocks_per_pair, SplitRng rng);
// Neutral (sigma = 1) distance step preserves the componentwise order.
[[nodiscard]] MonotonicityReport distance_monotone_neutral_mc(const ModelParams& mp,
                                                              long long trials, SplitRng rng);
// Mutation map ordering, exhaustive over the coarse bands of each uniform.
[[nodiscard]] MonotonicityReport mutation_monotone_exhaustive(const ModelParams& mp);

// The pinned 3-chromosome instance where the selective distance step maps
// comparable states to incomparable ones.  Returns true when reproduced
// exactly (both images match the expected vectors element for element).
[[nodiscard]] bool selective_step_counterexample();

// Sandwich run: lower/plain/upper from one start, shared uniforms.
struct SandwichReport {
    long long steps = 0;
    int seeds = 0;
    long long violations = 0;
    [[nodiscard]] bool ok() const noexcept { return violations == 0; }
};
[[nodiscard]] SandwichReport sandwich_mc(const ModelParams& mp, const Occupancy& start,
                                         long long steps, int seeds, std::uint64_t seed0);

// Positive correlations of the neutral distance chain from a deterministic
// start: exact enumeration of E(fg) - E(f)E(g) over principal up-set
// indicator pairs after n steps.  Returns the most negative covariance.
[[nodiscard]] double fkg_exact_min_covariance(const ModelParams& mp, int n_steps);

// Monte Carlo flavour on larger instances; worst covariance z-score.
struct FkgMcReport {
    double min_zscore = 0.0;  // most negative (cov / se)
    bool ok = false;
};
[[nodiscard]] FkgMcReport fkg_mc_check(const ModelParams& mp, int n_steps, int samples,
                                       SplitRng rng);

// ── aggregated battery for the CLI ───────────────────────────────────────────
struct CheckResult {
    std::string name;
    bool pass = false;
    double metric = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    [[nodiscard]] bool all_pass() const noexcept {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

enum class VerifyLevel { Quick, Full };

[[nodiscard]] VerifyReport run_verification(VerifyLevel level, std::uint64_t seed);

}  // namespace wfsp
