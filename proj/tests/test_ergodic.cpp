#include "doctest.h"

#include <cmath>
#include <complex>

#include "gtube/ergodic.hpp"
#include "gtube/moebius.hpp"

using namespace gtube;

namespace {
const FuchsianGroup& group() {
    static FuchsianGroup g = FuchsianGroup::octagon();
    return g;
}

Complex unreduced(const FuchsianGroup& g, const GeodesicState& s) {
    return g.apply_word(s.word, s.z, false);
}
} // namespace

TEST_SUITE("ergodic") {

TEST_CASE("geodesic start normalizes the direction") {
    const GeodesicState s = geodesic_start(Complex(0.1, 0.2), Complex(3.0, -4.0));
    CHECK(std::abs(std::abs(s.dir) - 1.0) < 1e-15);
    CHECK(std::abs(s.dir - Complex(0.6, -0.8)) < 1e-15);
    CHECK(s.word.length() == 0);
}

TEST_CASE("flow steps compose near the origin") {
    const GeodesicState s0 = geodesic_start(Complex(0.1, 0.05), std::polar(1.0, 0.4));
    const GeodesicState one = geodesic_step(group(), s0, 0.3);
    const GeodesicState half = geodesic_step(group(), geodesic_step(group(), s0, 0.15), 0.15);
    REQUIRE(one.word.length() == 0); // stays well inside the domain
    CHECK(std::abs(one.z - half.z) < 1e-10);
    CHECK(std::abs(one.dir - half.dir) < 1e-10);
    // arclength is what was asked
    CHECK(hyperbolic_distance(s0.z, one.z) == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("flow is reversible") {
    const GeodesicState s0 = geodesic_start(Complex(0.2, -0.1), std::polar(1.0, 0.7));
    const GeodesicState s1 = geodesic_step(group(), s0, 0.5);
    GeodesicState back = s1;
    back.dir = -back.dir;
    const GeodesicState s2 = geodesic_step(group(), back, 0.5);
    CHECK(std::abs(s2.z - s0.z) < 1e-10);
    CHECK(std::abs(s2.dir - (-s0.dir)) < 1e-10);
}

TEST_CASE("reduction bookkeeping preserves the unreduced trajectory") {
    GeodesicState s = geodesic_start(Complex(0.3, 0.1), std::polar(1.0, 1.1));
    Complex prev = unreduced(group(), s);
    int reductions = 0;
    for (int i = 0; i < 12; ++i) {
        const GeodesicStepDetail det = geodesic_step_detail(group(), s, 0.45);
        // the reducing word maps the new chart point back to the flowed point
        CHECK(std::abs(group().apply_word(det.reduction, det.state.z, false) -
                       det.before_reduction) < 1e-10);
        // reduced point stays in (or on the edge of) the Dirichlet domain
        CHECK(group().in_fundamental_domain(det.state.z, 1e-9));
        if (det.reduction.length() > 0) ++reductions;
        s = det.state;
        const Complex cur = unreduced(group(), s);
        CHECK(hyperbolic_distance(prev, cur) == doctest::Approx(0.45).epsilon(1e-8));
        prev = cur;
    }
    CHECK(reductions > 0); // 5.4 units of arclength cannot fit in one domain
}

TEST_CASE("histogram counts merge exactly") {
    Histogram2D a(2, 3), b(2, 3);
    a.add(0, 0);
    a.add(1, 2);
    a.add(1, 2);
    b.add(0, 1);
    b.add(1, 2);
    CHECK(a.total == 3);
    CHECK(a.at(1, 2) == 2);
    CHECK(a.nonzero_bins() == 2);
    a.merge(b);
    CHECK(a.total == 5);
    CHECK(a.at(1, 2) == 3);
    CHECK(a.at(0, 1) == 1);
    CHECK(a.nonzero_bins() == 3);
}

TEST_CASE("sector frequencies approach the hyperbolic masses") {
    const EquidistributionResult longrun =
        equidistribution_experiment(group(), 20000.0, 0.1, 8, 5);
    REQUIRE(longrun.masses.size() == 8);
    REQUIRE(longrun.freqs.size() == 8);
    double fsum = 0.0, msum = 0.0;
    for (int k = 0; k < 8; ++k) {
        fsum += longrun.freqs[k];
        msum += longrun.masses[k];
    }
    CHECK(fsum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(msum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(longrun.steps == 200000);
    CHECK(longrun.tv_distance >= 0.0);
    CHECK(longrun.tv_distance < 0.08);

    // short runs of the same flow sit further from the target
    int worse = 0;
    for (std::uint64_t seed : {101ull, 102ull, 103ull}) {
        const EquidistributionResult shortrun =
            equidistribution_experiment(group(), 1000.0, 0.1, 8, seed);
        if (shortrun.tv_distance > longrun.tv_distance) ++worse;
    }
    CHECK(worse >= 2);
}

TEST_CASE("cell masses ignore the trajectory seed") {
    const auto a = equidistribution_experiment(group(), 1000.0, 0.1, 8, 1);
    const auto b = equidistribution_experiment(group(), 1000.0, 0.1, 8, 2);
    REQUIRE(a.masses.size() == b.masses.size());
    for (size_t k = 0; k < a.masses.size(); ++k) CHECK(a.masses[k] == b.masses[k]);
    // and the experiment itself is seed-deterministic
    const auto c = equidistribution_experiment(group(), 1000.0, 0.1, 8, 1);
    CHECK(a.tv_distance == c.tv_distance);
    for (size_t k = 0; k < a.freqs.size(); ++k) CHECK(a.freqs[k] == c.freqs[k]);
}

TEST_CASE("diagonal boundary orbits stay glued to the diagonal") {
    const OrbitResult r = boundary_orbit_experiment(group(), 2000, 30, 8, 9);
    CHECK(r.hist.total == 2000);
    CHECK(r.hist.nx == 8);
    CHECK(r.hist.ny == 8);
    // the twisted action contracts the pair onto the diagonal: each factor
    // fills its circle but the joint distribution never leaves |xi - eta| ~ 0
    CHECK(r.xi_marginal_hit >= 7);
    CHECK(r.eta_marginal_hit >= 7);
    CHECK(r.diagonal_mass > 0.9);
    CHECK(r.max_pair_separation < 1e-6);
    CHECK(r.hit_bins <= 3 * 8);
    CHECK(r.hit_bins >= 7);

    const OrbitResult again = boundary_orbit_experiment(group(), 2000, 30, 8, 9);
    CHECK(again.hit_bins == r.hit_bins);
    for (size_t k = 0; k < r.hist.counts.size(); ++k)
        CHECK(again.hist.counts[k] == r.hist.counts[k]);
}

} // TEST_SUITE
