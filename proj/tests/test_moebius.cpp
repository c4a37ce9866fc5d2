#include "doctest.h"

#include <cmath>

#include "gtube/moebius.hpp"
#include "gtube/rng.hpp"

using namespace gtube;

TEST_SUITE("moebius") {

TEST_CASE("constructor normalizes and rejects junk") {
    DiskMoebius m(Complex(2.0, 0.0), Complex(1.0, 1.0));
    CHECK(m.normalization_defect() < 1e-15);
    CHECK_THROWS_AS(DiskMoebius(Complex(1.0), Complex(2.0)), std::invalid_argument);
    CHECK_THROWS_AS(DiskMoebius(Complex(1.0), Complex(1.0)), std::invalid_argument);
}

TEST_CASE("identity and inverse") {
    const Complex z(0.3, -0.4);
    CHECK(std::abs(DiskMoebius::identity().apply(z) - z) < 1e-16);

    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        DiskMoebius m(Complex(1.0 + rng.uniform(), rng.uniform()),
                      Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)));
        const Complex p = rng.disk(0.95);
        CHECK(std::abs(m.inverse().apply(m.apply(p)) - p) < 1e-13);
        CHECK(approx_equal_up_to_sign(compose(m, m.inverse()),
                                      DiskMoebius::identity(), 1e-13));
    }
}

TEST_CASE("compose means m1 after m2") {
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        DiskMoebius m1(Complex(1.3, rng.uniform()), Complex(0.2, rng.uniform(-0.4, 0.4)));
        DiskMoebius m2(Complex(1.1, -rng.uniform()), Complex(rng.uniform(-0.3, 0.3), 0.1));
        const Complex z = rng.disk(0.9);
        CHECK(std::abs(compose(m1, m2).apply(z) - m1.apply(m2.apply(z))) < 1e-14);
    }
}

TEST_CASE("sign flip is the same map") {
    DiskMoebius m(Complex(1.5, 0.2), Complex(0.3, -0.1));
    DiskMoebius n(-m.a(), -m.b());
    CHECK(approx_equal_up_to_sign(m, n, 1e-15));
    CHECK(std::abs(m.apply(Complex(0.2, 0.6)) - n.apply(Complex(0.2, 0.6))) < 1e-15);
}

TEST_CASE("conj_apply is the conjugated action") {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        DiskMoebius m(Complex(1.2, rng.uniform(-1, 1)),
                      Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)));
        const Complex w = rng.disk(0.95);
        CHECK(std::abs(m.conj_apply(w) - std::conj(m.apply(std::conj(w)))) < 1e-15);
    }
}

TEST_CASE("derivative matches finite differences") {
    DiskMoebius m(Complex(1.4, 0.3), Complex(0.5, -0.2));
    const Complex z(0.1, 0.35);
    const double h = 1e-6;
    const Complex fd = (m.apply(z + h) - m.apply(z - h)) / (2.0 * h);
    CHECK(std::abs(fd - m.derivative(z)) < 1e-8);
}

TEST_CASE("map to origin has real positive derivative") {
    const Complex z(0.4, -0.3);
    DiskMoebius to0(Complex(1.0), -z);
    CHECK(std::abs(to0.apply(z)) < 1e-15);
    const Complex d = to0.derivative(z);
    CHECK(std::abs(d.imag()) < 1e-14);
    CHECK(d.real() == doctest::Approx(1.0 / (1.0 - std::norm(z))).epsilon(1e-12));
}

TEST_CASE("hyperbolic distance: log 3 oracle, symmetry, invariance") {
    CHECK(hyperbolic_distance(0.0, Complex(0.5)) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-14));

    Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        const Complex z1 = rng.disk(0.9), z2 = rng.disk(0.9);
        CHECK(hyperbolic_distance(z1, z2) ==
              doctest::Approx(hyperbolic_distance(z2, z1)).epsilon(1e-12));
        DiskMoebius m(Complex(1.0 + rng.uniform(), rng.uniform(-1, 1)),
                      Complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)));
        const double d0 = hyperbolic_distance(z1, z2);
        const double d1 = hyperbolic_distance(m.apply(z1), m.apply(z2));
        CHECK(std::abs(d1 - d0) < 1e-10);
    }
}

TEST_CASE("boundary circle maps to itself") {
    DiskMoebius m(Complex(1.7, -0.4), Complex(0.8, 0.3));
    Rng rng(15);
    for (int i = 0; i < 20; ++i) {
        const Complex xi = rng.circle();
        CHECK(std::abs(std::abs(m.apply(xi)) - 1.0) < 1e-14);
    }
}

TEST_CASE("twisted diagonal action components") {
    DiskMoebius g(Complex(1.2, 0.1), Complex(0.4, -0.3));
    const BidiskPoint p{Complex(0.2, 0.3), Complex(-0.1, 0.5)};
    const BidiskPoint q = act_bidisk(g, p);
    CHECK(std::abs(q.z - g.apply(p.z)) < 1e-16);
    CHECK(std::abs(q.w - std::conj(g.apply(std::conj(p.w)))) < 1e-15);
}

} // TEST_SUITE
