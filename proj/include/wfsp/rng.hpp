// =============================================================================
// rng.hpp — Splittable counter-style random generator.
//
// Every Monte Carlo routine in this project takes an explicit generator (or a
// (seed, stream) pair) so that runs are reproducible and independent replicas
// can be dispatched to independent streams without coordination.  The design
// follows the SplittableRandom recipe: a 64-bit Weyl sequence whose increment
// ("gamma") is derived from the stream id, pushed through a strong avalanche
// mixer.  Distinct streams use distinct odd increments, so their state
// sequences are distinct full-period orbits rather than shifted copies of one
// another.
// =============================================================================
#pragma once

#include <cstdint>

namespace wfsp {

namespace detail {

// Finalizer from MurmurHash3 / SplitMix64; full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

class SplitRng {
  public:
    explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : state_(detail::mix64(seed + detail::kGolden * stream)),
          gamma_(detail::mix64(stream ^ detail::mix64(seed + 1)) | 1ULL) {}

    [[nodiscard]] std::uint64_t next_u64() noexcept {
        state_ += gamma_;
        return detail::mix64(state_);
    }

    // Uniform double in [0, 1).  53 random mantissa bits; 1.0 is unreachable,
    // which the interval-selection code relies on.
    [[nodiscard]] double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in {0, ..., n-1} by rejection (no modulo bias).
    [[nodiscard]] std::uint64_t next_below(std::uint64_t n) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    // Child generator for substream `k`; independent of further draws here.
    [[nodiscard]] SplitRng split(std::uint64_t k) const noexcept {
        return SplitRng(detail::mix64(state_ ^ detail::mix64(k + 0x94d049bb133111ebULL)),
                        detail::mix64(gamma_ + k));
    }

  private:
    std::uint64_t state_;
    std::uint64_t gamma_;
};

}  // namespace wfsp
