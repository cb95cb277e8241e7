// =============================================================================
// coupling.cpp
// =============================================================================
#include "wfsp/coupling.hpp"

#include <stdexcept>

#include "wfsp/kernels.hpp"

namespace wfsp {

RandomInputMatrix RandomInputMatrix::draw(int m, int ell, SplitRng& rng) {
    RandomInputMatrix r;
    r.m = m;
    r.ell = ell;
    r.u.resize(static_cast<std::size_t>(m) * (ell + 1));
    for (double& x : r.u) x = rng.next_unit();
    return r;
}

int theta_class(Theta t, int ell) noexcept { return t == Theta::Lower ? ell : 1; }

int mutate_coupled(const ModelParams& mp, int b, const double* u) {
    const double repair = mp.back_rate();  // q / (kappa - 1)
    const double gain_from = 1.0 - mp.q;
    int c = b;
    for (int k = 0; k < b; ++k) {
        if (u[k] < repair) --c;
    }
    for (int k = b; k < mp.ell; ++k) {
        if (u[k] > gain_from) ++c;
    }
    return c;
}

int select_coupled_distance(const ModelParams& mp, const DistanceVector& d, double s) {
    // Parent i owns the half-open interval [W_{i-1}, W_i) of the cumulative
    // fitness scan scaled by s * total.  s < 1 guarantees a hit; a final
    // clamp guards the last interval against rounding.
    double total = 0.0;
    for (int v : d) total += peak_fitness(v, mp.sigma);
    const double x = s * total;
    double cum = 0.0;
    const int m = static_cast<int>(d.size());
    for (int i = 0; i < m; ++i) {
        cum += peak_fitness(d[i], mp.sigma);
        if (x < cum) return i;
    }
    return m - 1;
}

int select_coupled_occupancy(const ModelParams& mp, const Occupancy& o, double s) {
    double total = 0.0;
    for (int k = 0; k <= mp.ell; ++k) total += o[k] * peak_fitness(k, mp.sigma);
    const double x = s * total;
    double cum = 0.0;
    int last = 0;
    for (int k = 0; k <= mp.ell; ++k) {
        if (o[k] == 0) continue;
        cum += o[k] * peak_fitness(k, mp.sigma);
        last = k;
        if (x < cum) return k;
    }
    return last;
}

DistanceVector coupled_step_distance(const ModelParams& mp, const DistanceVector& d,
                                     const RandomInputMatrix& r) {
    if (r.m != static_cast<int>(d.size()) || r.ell != mp.ell) {
        throw std::invalid_argument("coupled_step_distance: input block mismatch");
    }
    DistanceVector next(d.size());
    for (int i = 0; i < r.m; ++i) {
        const int parent = select_coupled_distance(mp, d, r.sel(i));
        next[i] = mutate_coupled(mp, d[parent], &r.u[i * (mp.ell + 1) + 1]);
    }
    return next;
}

Occupancy coupled_step_occupancy(const ModelParams& mp, const Occupancy& o,
                                 const RandomInputMatrix& r) {
    if (r.m != mp.m || r.ell != mp.ell || !occupancy_valid(o, mp.m)) {
        throw std::invalid_argument("coupled_step_occupancy: input block mismatch");
    }
    Occupancy next(mp.ell + 1, 0);
    for (int i = 0; i < r.m; ++i) {
        const int cls = select_coupled_occupancy(mp, o, r.sel(i));
        const int child = mutate_coupled(mp, cls, &r.u[i * (mp.ell + 1) + 1]);
        ++next[child];
    }
    return next;
}

Occupancy bounded_step(const ModelParams& mp, const Occupancy& o, const RandomInputMatrix& r,
                       Theta theta) {
    const auto project = theta == Theta::Lower ? project_lower : project_upper;
    if (has_master(o)) {
        return project(coupled_step_occupancy(mp, project(o), r));
    }
    Occupancy next = coupled_step_occupancy(mp, o, r);
    if (has_master(next)) {
        return project(next);
    }
    return next;
}

Occupancy two_type_state(const ModelParams& mp, int z, Theta theta) {
    if (z < 0 || z > mp.m) throw std::out_of_range("two_type_state: z out of range");
    Occupancy o(mp.ell + 1, 0);
    o[0] = z;
    o[theta_class(theta, mp.ell)] += mp.m - z;
    return o;
}

int two_type_step(const ModelParams& mp, int z, const RandomInputMatrix& r, Theta theta) {
    return master_count(bounded_step(mp, two_type_state(mp, z, theta), r, theta));
}

}  // namespace wfsp
