#include "gtube/ergodic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gtube {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fixed root for the cell-mass estimation so that masses are a property of
// the geometry, not of the experiment seed.
constexpr std::uint64_t kMassSeed = 0x8d1f35c2b79e4a6bULL;

int angle_bin(Complex x, int m) {
    double a = std::arg(x);
    if (a < 0.0) a += kTwoPi;
    int idx = static_cast<int>(a / kTwoPi * m);
    return std::min(idx, m - 1);
}

double wrapped_gap(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

} // namespace

GeodesicState geodesic_start(Complex z, Complex dir) {
    if (!in_unit_disk(z)) throw std::invalid_argument("geodesic_start: z outside the disk");
    double n = std::abs(dir);
    if (!(n > 0.0)) throw std::invalid_argument("geodesic_start: zero direction");
    return {z, dir / n, {}};
}

GeodesicStepDetail geodesic_step_detail(const FuchsianGroup& group,
                                        const GeodesicState& s, double dt) {
    if (!(dt > 0.0 && dt <= 0.5))
        throw std::invalid_argument("geodesic_step: dt must lie in (0, 0.5]");
    DiskMoebius to_origin(1.0, -s.z);
    DiskMoebius back = to_origin.inverse();
    // to_origin has real positive derivative at s.z, so dir needs no rotation
    Complex p = std::tanh(0.5 * dt) * s.dir;
    Complex flowed = back.apply(p);
    Complex dir = back.derivative(p) * s.dir;
    dir /= std::abs(dir);

    FuchsianGroup::Reduction red = group.reduce(flowed);
    GeodesicStepDetail out;
    out.before_reduction = flowed;
    out.reduction = red.word;
    out.state.z = red.point;
    if (red.word.letters.empty()) {
        out.state.dir = dir;
    } else {
        DiskMoebius h = group.evaluate(red.word.inverse());
        Complex d2 = h.derivative(flowed) * dir;
        out.state.dir = d2 / std::abs(d2);
    }
    out.state.word = s.word;
    out.state.word.letters.insert(out.state.word.letters.end(),
                                  red.word.letters.begin(), red.word.letters.end());
    return out;
}

GeodesicState geodesic_step(const FuchsianGroup& group, const GeodesicState& s,
                            double dt) {
    return geodesic_step_detail(group, s, dt).state;
}

int Histogram2D::nonzero_bins() const {
    int n = 0;
    for (long long c : counts)
        if (c > 0) ++n;
    return n;
}

void Histogram2D::merge(const Histogram2D& other) {
    if (other.nx != nx || other.ny != ny)
        throw std::invalid_argument("Histogram2D::merge: shape mismatch");
    for (size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    total += other.total;
}

EquidistributionResult equidistribution_experiment(const FuchsianGroup& group,
                                                   double T, double dt, int bins,
                                                   std::uint64_t seed) {
    if (bins < 1) throw std::invalid_argument("equidistribution: bins must be >= 1");
    long long steps = std::llround(T / dt);
    if (steps < 10000)
        throw std::invalid_argument("equidistribution: need T/dt >= 1e4");

    // Hyperbolic masses of the angular cells, fixed-seed Monte Carlo.
    double r = group.circumradius();
    Rng mass_rng(derive_seed(kMassSeed, "cell-masses:" + std::to_string(bins)));
    std::vector<Accumulator> cell(bins);
    Accumulator mass_total;
    for (int i = 0; i < 1000000; ++i) {
        Complex z = mass_rng.disk(r);
        if (!group.in_fundamental_domain(z)) continue;
        double w = FuchsianGroup::area_density(z);
        cell[angle_bin(z, bins)].add(w);
        mass_total.add(w);
    }
    std::vector<double> masses(bins);
    for (int k = 0; k < bins; ++k) masses[k] = cell[k].total() / mass_total.total();

    Rng rng(derive_seed(seed, "equidistribution"));
    GeodesicState s = geodesic_start(rng.disk(0.3), rng.circle());
    Histogram2D hist(bins, 1);
    for (long long i = 0; i < steps; ++i) {
        s = geodesic_step(group, s, dt);
        hist.add(angle_bin(s.z, bins), 0);
    }

    EquidistributionResult res;
    res.freqs.resize(bins);
    double tv = 0.0;
    for (int k = 0; k < bins; ++k) {
        res.freqs[k] = static_cast<double>(hist.at(k, 0)) / hist.total;
        tv += std::abs(res.freqs[k] - masses[k]);
    }
    res.hist = std::move(hist);
    res.masses = std::move(masses);
    res.tv_distance = 0.5 * tv;
    res.steps = steps;
    return res;
}

OrbitResult boundary_orbit_experiment(const FuchsianGroup& group, long long n_words,
                                      int length, int grid_m, std::uint64_t seed) {
    if (grid_m < 1 || grid_m > 32)
        throw std::invalid_argument("boundary_orbit: grid must lie in [1, 32]");
    if (length < 1) throw std::invalid_argument("boundary_orbit: length must be >= 1");
    const Complex xi0 = std::polar(1.0, 0.3);
    const Complex eta0 = std::polar(1.0, 2.1);
    const double diag_width = kTwoPi / grid_m;

    OrbitResult res;
    res.hist = Histogram2D(grid_m, grid_m);
    res.max_pair_separation = 0.0;
    long long diagonal = 0;

    constexpr int kShards = 8;
    for (int s = 0; s < kShards; ++s) {
        Rng rng(derive_seed(seed, "orbit:shard-" + std::to_string(s)));
        long long ns = n_words / kShards + (s < n_words % kShards ? 1 : 0);
        Histogram2D local(grid_m, grid_m);
        for (long long i = 0; i < ns; ++i) {
            GroupWord w = group.random_word(length, rng);
            Complex a = group.apply_word(w, xi0, true);
            Complex b = group.apply_word(w, eta0, true);
            local.add(angle_bin(a, grid_m), angle_bin(b, grid_m));
            double gap = wrapped_gap(std::arg(a), std::arg(b));
            res.max_pair_separation = std::max(res.max_pair_separation, gap);
            if (gap <= diag_width) ++diagonal;
        }
        res.hist.merge(local);
    }

    res.hit_bins = res.hist.nonzero_bins();
    res.xi_marginal_hit = 0;
    res.eta_marginal_hit = 0;
    for (int i = 0; i < grid_m; ++i) {
        long long row = 0, col = 0;
        for (int j = 0; j < grid_m; ++j) {
            row += res.hist.at(i, j);
            col += res.hist.at(j, i);
        }
        if (row > 0) ++res.xi_marginal_hit;
        if (col > 0) ++res.eta_marginal_hit;
    }
    res.diagonal_mass =
        n_words > 0 ? static_cast<double>(diagonal) / n_words : 0.0;
    return res;
}

} // namespace gtube
