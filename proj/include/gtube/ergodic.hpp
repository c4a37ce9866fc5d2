#pragma once

#include <cstdint>
#include <vector>

#include "gtube/fuchsian.hpp"
#include "gtube/rng.hpp"

namespace gtube {

struct GeodesicState {
    Complex z;      ///< position, kept reduced to the fundamental domain
    Complex dir;    ///< unit direction in the disk model
    GroupWord word; ///< accumulated reduction word: unreduced = word applied to z
};

/// Normalizes dir; z must lie in the open disk.
GeodesicState geodesic_start(Complex z, Complex dir);

struct GeodesicStepDetail {
    GeodesicState state;
    Complex before_reduction; ///< flowed point in the previous chart
    GroupWord reduction;      ///< word returned by the reducing step
};

/// Advances hyperbolic arclength dt (exact Moebius flow: conjugate to the
/// origin, translate along the diameter, conjugate back), then reduces and
/// transports the direction through the reducing isometry.
GeodesicStepDetail geodesic_step_detail(const FuchsianGroup& group,
                                        const GeodesicState& s, double dt);
GeodesicState geodesic_step(const FuchsianGroup& group, const GeodesicState& s,
                            double dt);

struct Histogram2D {
    int nx = 0, ny = 0;
    std::vector<long long> counts;
    long long total = 0;

    Histogram2D() = default;
    Histogram2D(int nx_, int ny_) : nx(nx_), ny(ny_), counts(static_cast<size_t>(nx_) * ny_, 0) {}

    long long at(int i, int j) const { return counts[static_cast<size_t>(i) * ny + j]; }
    void add(int i, int j) {
        ++counts[static_cast<size_t>(i) * ny + j];
        ++total;
    }
    int nonzero_bins() const;
    void merge(const Histogram2D& other); ///< exact count addition
};

struct EquidistributionResult {
    Histogram2D hist;           ///< bins x 1 angular-sector cells of R
    std::vector<double> masses; ///< normalized hyperbolic cell masses
    std::vector<double> freqs;  ///< visit frequencies
    double tv_distance;
    long long steps;
};

/// Runs a single trajectory for time T at step dt from a seeded random start
/// and compares sector visit frequencies with normalized hyperbolic masses
/// (estimated by a fixed-seed Monte Carlo, independent of `seed`).
EquidistributionResult equidistribution_experiment(const FuchsianGroup& group,
                                                   double T, double dt, int bins,
                                                   std::uint64_t seed);

struct OrbitResult {
    Histogram2D hist; ///< m x m over (arg xi, arg eta)
    int hit_bins;
    int xi_marginal_hit;
    int eta_marginal_hit;
    double diagonal_mass;       ///< fraction within one bin width of the diagonal
    double max_pair_separation; ///< largest |arg xi - arg eta| (wrapped) seen
};

/// Applies N random words of the given length diagonally to the fixed
/// boundary pair (e^{0.3 i}, e^{2.1 i}) and bins the resulting angle pairs.
/// Sharded with derived seeds; merge is count addition.
OrbitResult boundary_orbit_experiment(const FuchsianGroup& group, long long n_words,
                                      int length, int grid_m, std::uint64_t seed);

} // namespace gtube
