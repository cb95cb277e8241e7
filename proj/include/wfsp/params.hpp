// =============================================================================
// params.hpp — Model and rate-function parameter bundles.
//
// ModelParams describes one finite Wright-Fisher instance on the sharp-peak
// landscape: m chromosomes of length ell over an alphabet of size kappa, peak
// advantage sigma, per-locus mutation probability q.  A mutating locus picks
// one of the other kappa-1 letters uniformly, so the total per-locus change
// rate is q and the rate of hitting one prescribed letter is q / (kappa - 1).
// The classical overall-rate parametrization p (mutate anywhere, uniform over
// all kappa letters including the current one) relates via q = p (1 - 1/kappa).
//
// RateParams carries the asymptotic regime (a = ell * q held fixed, sigma,
// kappa) used by the large-deviation machinery.
// =============================================================================
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace wfsp {

struct ModelParams {
    double sigma = 1.0;  // peak fitness advantage, >= 1
    int ell = 1;         // chromosome length
    int m = 1;           // population size
    int kappa = 2;       // alphabet size
    double q = 0.0;      // per-locus mutation probability, in [0, 1 - 1/kappa)

    // Overall-rate parametrization: p = kappa q / (kappa - 1).
    [[nodiscard]] double p() const noexcept {
        return static_cast<double>(kappa) * q / (kappa - 1.0);
    }
    // Back-mutation probability of one off-peak locus: p / kappa = q / (kappa-1).
    [[nodiscard]] double back_rate() const noexcept { return q / (kappa - 1.0); }
    [[nodiscard]] double a() const noexcept { return ell * q; }
    [[nodiscard]] double alpha() const noexcept {
        return static_cast<double>(m) / static_cast<double>(ell);
    }

    void validate() const;  // throws std::invalid_argument

    bool operator==(const ModelParams&) const = default;
};

void to_json(nlohmann::json& j, const ModelParams& p);
void from_json(const nlohmann::json& j, ModelParams& p);

struct RateParams {
    double a = 0.0;      // limiting mutation pressure, > 0
    double sigma = 1.0;  // peak advantage, > 1 for phase questions
    int kappa = 2;       // alphabet size (enters only through ln kappa)

    [[nodiscard]] double ea() const noexcept;  // exp(-a)
    void validate() const;
};

// Thrown when an iterative routine fails to meet its tolerance; the CLI maps
// this to exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wfsp
