// =============================================================================
// occupancy.cpp
// =============================================================================
#include "wfsp/occupancy.hpp"

#include <algorithm>
#include <stdexcept>

namespace wfsp {

Occupancy occupancy_of(const DistanceVector& d, int ell) {
    Occupancy o(ell + 1, 0);
    for (int v : d) {
        if (v < 0 || v > ell) throw std::out_of_range("occupancy_of: distance out of range");
        ++o[v];
    }
    return o;
}

bool occupancy_valid(const Occupancy& o, int m) {
    int sum = 0;
    for (int v : o) {
        if (v < 0) return false;
        sum += v;
    }
    return sum == m;
}

bool precedes(const Occupancy& a, const Occupancy& b) {
    if (a.size() != b.size()) throw std::invalid_argument("precedes: size mismatch");
    long long pa = 0, pb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        pa += a[k];
        pb += b[k];
        if (pa > pb) return false;
    }
    return true;
}

Occupancy project_lower(const Occupancy& o) {
    Occupancy r(o.size(), 0);
    int rest = 0;
    for (std::size_t k = 1; k < o.size(); ++k) rest += o[k];
    r[0] = o[0];
    r.back() += rest;
    return r;
}

Occupancy project_upper(const Occupancy& o) {
    Occupancy r(o.size(), 0);
    int rest = 0;
    for (std::size_t k = 1; k < o.size(); ++k) rest += o[k];
    r[0] = o[0];
    if (r.size() > 1) {
        r[1] = rest;
    }
    return r;
}

namespace {

void enumerate_rec(int remaining, int cls, int ell, Occupancy& cur,
                   std::vector<Occupancy>& out) {
    if (cls == ell) {
        cur[cls] = remaining;
        out.push_back(cur);
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        cur[cls] = c;
        enumerate_rec(remaining - c, cls + 1, ell, cur, out);
    }
    cur[cls] = 0;
}

}  // namespace

std::vector<Occupancy> enumerate_occupancies(int m, int ell) {
    std::vector<Occupancy> out;
    Occupancy cur(ell + 1, 0);
    enumerate_rec(m, 0, ell, cur, out);
    return out;
}

OccupancyIndex::OccupancyIndex(int m, int ell) : states_(enumerate_occupancies(m, ell)) {
    sorted_.reserve(states_.size());
    for (int i = 0; i < static_cast<int>(states_.size()); ++i) {
        sorted_.emplace_back(states_[i], i);
    }
    std::sort(sorted_.begin(), sorted_.end());
}

int OccupancyIndex::index_of(const Occupancy& o) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), o,
                               [](const auto& a, const Occupancy& b) { return a.first < b; });
    if (it == sorted_.end() || it->first != o) {
        throw std::out_of_range("OccupancyIndex: state not found");
    }
    return it->second;
}

}  // namespace wfsp
