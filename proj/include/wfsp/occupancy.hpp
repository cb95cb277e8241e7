// =============================================================================
// occupancy.hpp — Distance vectors, occupancy distributions, partial-sum order.
//
// The population state can be tracked at three levels of detail:
//
//   genotype population  ->  distance vector  ->  occupancy distribution
//
// A distance vector lists, per chromosome, the Hamming distance to the peak
// sequence (a value in {0, ..., ell}).  An occupancy distribution forgets the
// chromosome identities and keeps only the head count o(k) of each distance
// class k.  Both coarse-grainings are exact (lumping), which the kernel tests
// verify by brute-force enumeration.
//
// Occupancies are compared in the partial-sum order: o precedes o' when each
// prefix sum o(0)+...+o(k) is <= the corresponding prefix sum of o'.  Larger
// in this order means "more mass close to the peak".  The two projections
// collapse everything outside class 0 to the farthest class (lower bound) or
// to class 1 (upper bound); they sandwich the identity in the partial-sum
// order and drive the bounding processes.
// =============================================================================
#pragma once

#include <vector>

namespace wfsp {

using DistanceVector = std::vector<int>;  // size m, entries in {0..ell}
using Occupancy = std::vector<int>;       // size ell+1, nonnegative, sums to m

[[nodiscard]] Occupancy occupancy_of(const DistanceVector& d, int ell);

[[nodiscard]] bool occupancy_valid(const Occupancy& o, int m);

// Partial-sum (prefix) order: a precedes b, i.e. a is farther from the peak.
[[nodiscard]] bool precedes(const Occupancy& a, const Occupancy& b);

// Number of chromosomes sitting on the peak.
[[nodiscard]] inline int master_count(const Occupancy& o) { return o[0]; }
[[nodiscard]] inline bool has_master(const Occupancy& o) { return o[0] >= 1; }

// Keep class 0, dump everyone else in the farthest class (precedes the input).
[[nodiscard]] Occupancy project_lower(const Occupancy& o);
// Keep class 0, dump everyone else in class 1 (the input precedes it).
[[nodiscard]] Occupancy project_upper(const Occupancy& o);

// All occupancy distributions of m chromosomes over ell+1 classes, in
// lexicographic order; C(m + ell, ell) of them.
[[nodiscard]] std::vector<Occupancy> enumerate_occupancies(int m, int ell);

// Dense index lookup into the enumerate_occupancies ordering.
class OccupancyIndex {
  public:
    OccupancyIndex(int m, int ell);
    [[nodiscard]] int index_of(const Occupancy& o) const;  // throws if unknown
    [[nodiscard]] const std::vector<Occupancy>& states() const noexcept { return states_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(states_.size()); }

  private:
    std::vector<Occupancy> states_;
    std::vector<std::pair<Occupancy, int>> sorted_;  // binary-searchable map
};

}  // namespace wfsp
