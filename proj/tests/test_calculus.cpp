#include "doctest.h"

#include <cmath>
#include <complex>

#include "gtube/calculus.hpp"
#include "gtube/rng.hpp"

using namespace gtube;

namespace {
const Complex I(0.0, 1.0);

BidiskPoint rand_pt(Rng& rng, double r = 0.7) {
    return {rng.disk(r), rng.disk(r)};
}
} // namespace

TEST_SUITE("calculus") {

TEST_CASE("wirtinger gradient of z^2 w") {
    const ScalarField f = [](const BidiskPoint& p) { return p.z * p.z * p.w; };
    Rng rng(31);
    for (int i = 0; i < 25; ++i) {
        const BidiskPoint p = rand_pt(rng);
        const WirtingerGradient g = wirtinger_gradient(f, p);
        CHECK(std::abs(g.dz - 2.0 * p.z * p.w) < 1e-9);
        CHECK(std::abs(g.dw - p.z * p.z) < 1e-9);
        CHECK(std::abs(g.dzb) < 1e-9);
        CHECK(std::abs(g.dwb) < 1e-9);
    }
}

TEST_CASE("wirtinger gradient of |z|^2") {
    const ScalarField f = [](const BidiskPoint& p) { return Complex(std::norm(p.z)); };
    const BidiskPoint p{Complex(0.3, -0.2), Complex(0.1, 0.4)};
    const WirtingerGradient g = wirtinger_gradient(f, p);
    CHECK(std::abs(g.dz - std::conj(p.z)) < 1e-10);
    CHECK(std::abs(g.dzb - p.z) < 1e-10);
    CHECK(std::abs(g.dw) < 1e-10);
}

TEST_CASE("gradient refuses stencils that leave the bidisk") {
    const ScalarField f = [](const BidiskPoint& p) { return p.z; };
    CHECK_THROWS_AS(
        wirtinger_gradient(f, {Complex(1.0 - 1e-9, 0.0), Complex(0.0)}),
        std::domain_error);
}

TEST_CASE("complex hessian oracles") {
    SUBCASE("|z|^2 + |w|^2 has identity Levi form") {
        const ScalarField f = [](const BidiskPoint& p) {
            return Complex(std::norm(p.z) + std::norm(p.w));
        };
        const HermitianForm2 h = complex_hessian(f, {Complex(0.2, 0.1), Complex(-0.3, 0.2)});
        CHECK(h.max_entry_gap(HermitianForm2::diagonal(1.0, 1.0)) < 1e-7);
    }
    SUBCASE("z conj(w) fills one off-diagonal slot") {
        const ScalarField f = [](const BidiskPoint& p) { return p.z * std::conj(p.w); };
        const HermitianForm2 h = complex_hessian(f, {Complex(0.1, 0.3), Complex(0.2, -0.1)});
        // hermitization spreads the single mixed derivative over both slots
        CHECK(std::abs(h.h12 - 0.5) < 1e-7);
        CHECK(std::abs(h.h21 - 0.5) < 1e-7);
        CHECK(std::abs(h.h11) < 1e-7);
        CHECK(std::abs(h.h22) < 1e-7);
    }
    SUBCASE("-log(1-|z|^2) reproduces the disk metric factor") {
        const ScalarField f = [](const BidiskPoint& p) {
            return Complex(-std::log(1.0 - std::norm(p.z)));
        };
        const Complex z(0.4, -0.25);
        const double sz = 1.0 - std::norm(z);
        const HermitianForm2 h = complex_hessian(f, {z, Complex(0.0)});
        CHECK(std::abs(h.h11 - 1.0 / (sz * sz)) < 1e-6);
        CHECK(std::abs(h.h22) < 1e-9);
    }
}

TEST_CASE("eigenvalues and determinant of 2x2 Hermitian forms") {
    const Complex eps(0.3, 0.4); // |eps| = 0.5
    const HermitianForm2 h{1.0, std::conj(eps), eps, 1.0};
    CHECK(min_eigenvalue(h) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(max_eigenvalue(h) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(ma_det(h) == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(ma_det(HermitianForm2::diagonal(2.0, 3.0)) == doctest::Approx(6.0));

    // rank-1 v v^*: eigenvalues {0, |v|^2}
    const Complex v1(0.6, 0.1), v2(-0.2, 0.5);
    const HermitianForm2 r1{std::norm(v1), v1 * std::conj(v2),
                            v2 * std::conj(v1), std::norm(v2)};
    CHECK(std::abs(ma_det(r1)) < 1e-15);
    CHECK(std::abs(min_eigenvalue(r1)) < 1e-13);
    // convention: sum h_{j kbar} u_j conj(u_k), so u = (1, 0) picks out h11
    // and u = conj(v) gives |v|^4
    CHECK(quadratic_form(r1, Complex(1.0), Complex(0.0)) ==
          doctest::Approx(std::norm(v1)).epsilon(1e-13));
    CHECK(quadratic_form(r1, std::conj(v1), std::conj(v2)) ==
          doctest::Approx((std::norm(v1) + std::norm(v2)) *
                          (std::norm(v1) + std::norm(v2))).epsilon(1e-13));
}

TEST_CASE("multi-index tables are lexicographic") {
    const auto& m2 = multi_indices(4, 2);
    REQUIRE(m2.size() == 6);
    CHECK(m2[0] == std::vector<int>{0, 1});
    CHECK(m2[1] == std::vector<int>{0, 2});
    CHECK(m2[2] == std::vector<int>{0, 3});
    CHECK(m2[3] == std::vector<int>{1, 2});
    CHECK(m2[4] == std::vector<int>{1, 3});
    CHECK(m2[5] == std::vector<int>{2, 3});
    CHECK(multi_indices(4, 3).size() == 4);
    CHECK(multi_indices(3, 1).size() == 3);
    CHECK(multi_indices(4, 4).size() == 1);
}

TEST_CASE("dz wedge dzbar is -2i dx1 dy1") {
    const FormField w = wedge(const_dz(), const_dzbar());
    const CoeffVec c = w.coefficients(BidiskPoint{Complex(0.1, 0.2), Complex(0.3)});
    REQUIRE(c.n == 6);
    CHECK(std::abs(c.c[0] - Complex(0.0, -2.0)) < 1e-15);
    for (int k = 1; k < 6; ++k) CHECK(std::abs(c.c[k]) < 1e-15);
}

TEST_CASE("two_form of the identity is i(dz dzbar + dw dwbar)") {
    const FormField w =
        two_form([](const BidiskPoint&) { return HermitianForm2::diagonal(1.0, 1.0); });
    const CoeffVec c = w.coefficients(BidiskPoint{Complex(0.0), Complex(0.0)});
    // i dz^dzbar = 2 dx^dy per factor
    CHECK(std::abs(c.c[0] - Complex(2.0)) < 1e-15);
    CHECK(std::abs(c.c[5] - Complex(2.0)) < 1e-15);
    for (int k = 1; k < 5; ++k) CHECK(std::abs(c.c[k]) < 1e-15);
}

TEST_CASE("wedge of 1-forms anticommutes") {
    Rng rng(32);
    const auto g1 = [](const BidiskPoint& p) {
        return WirtingerGradient{p.z, p.w * p.w, std::conj(p.w), Complex(0.2)};
    };
    const auto g2 = [](const BidiskPoint& p) {
        return WirtingerGradient{std::conj(p.z) * p.w, Complex(1.0), p.z, p.w};
    };
    const FormField a = one_form(g1), b = one_form(g2);
    const FormField ab = wedge(a, b), ba = wedge(b, a);
    for (int i = 0; i < 10; ++i) {
        const BidiskPoint p = rand_pt(rng);
        const CoeffVec cab = ab.coefficients(p), cba = ba.coefficients(p);
        for (int k = 0; k < cab.n; ++k)
            CHECK(std::abs(cab.c[k] + cba.c[k]) < 1e-13);
    }
}

TEST_CASE("d of zbar dz is dzbar wedge dz") {
    const FormField w = one_form([](const BidiskPoint& p) {
        return WirtingerGradient{std::conj(p.z), Complex(0.0), Complex(0.0),
                                 Complex(0.0)};
    });
    const FormField dw = d(w);
    const CoeffVec c = dw.coefficients(BidiskPoint{Complex(0.25, -0.1), Complex(0.3, 0.2)});
    // dzbar ^ dz = +2i dx1 ^ dy1
    CHECK(std::abs(c.c[0] - Complex(0.0, 2.0)) < 1e-8);
    for (int k = 1; k < 6; ++k) CHECK(std::abs(c.c[k]) < 1e-8);
}

TEST_CASE("d of d vanishes numerically") {
    const FormField w = one_form([](const BidiskPoint& p) {
        return WirtingerGradient{p.z * p.w, std::conj(p.z), p.w * p.w,
                                 p.z + std::conj(p.w)};
    });
    const FormField ddw = d(d(w));
    Rng rng(33);
    for (int i = 0; i < 5; ++i) {
        const CoeffVec c = ddw.coefficients(rand_pt(rng, 0.5));
        for (int k = 0; k < c.n; ++k) CHECK(std::abs(c.c[k]) < 1e-4);
    }
}

TEST_CASE("d^c conventions") {
    SUBCASE("d^c|z|^2 = x dy - y dx") {
        const FormField w = dc([](const BidiskPoint& p) { return Complex(std::norm(p.z)); });
        const BidiskPoint p{Complex(0.3, 0.4), Complex(0.1, -0.2)};
        const CoeffVec c = w.coefficients(p);
        CHECK(std::abs(c.c[0] - Complex(-0.4)) < 1e-9); // dx1
        CHECK(std::abs(c.c[1] - Complex(0.3)) < 1e-9);  // dy1
        CHECK(std::abs(c.c[2]) < 1e-9);
        CHECK(std::abs(c.c[3]) < 1e-9);
    }
    SUBCASE("d d^c u = i ddbar u on |z|^2 + |w|^2") {
        const FormField ddc = d(dc([](const BidiskPoint& p) {
            return Complex(std::norm(p.z) + std::norm(p.w));
        }));
        const FormField target = two_form(
            [](const BidiskPoint&) { return HermitianForm2::diagonal(1.0, 1.0); });
        Rng rng(34);
        for (int i = 0; i < 5; ++i) {
            const BidiskPoint p = rand_pt(rng, 0.5);
            const CoeffVec a = ddc.coefficients(p), b = target.coefficients(p);
            // two nested finite-difference levels compound to ~1e-6
            for (int k = 0; k < 6; ++k) CHECK(std::abs(a.c[k] - b.c[k]) < 1e-5);
        }
    }
    SUBCASE("dc_closed matches the finite-difference dc") {
        const ScalarField f = [](const BidiskPoint& p) {
            return Complex(std::norm(p.z) * (1.0 + p.w.real()));
        };
        const auto grad = [&f](const BidiskPoint& p) { return wirtinger_gradient(f, p); };
        const FormField a = dc(f), b = dc_closed(grad);
        const BidiskPoint p{Complex(0.2, 0.5), Complex(-0.3, 0.1)};
        const CoeffVec ca = a.coefficients(p), cb = b.coefficients(p);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(ca.c[k] - cb.c[k]) < 1e-9);
    }
}

TEST_CASE("pullback of dz under z -> z^2") {
    const auto phi = [](const std::array<double, 4>& s) -> R4 {
        const Complex z(s[0], s[1]);
        const Complex z2 = z * z;
        return {z2.real(), z2.imag(), 0.0, 0.0};
    };
    const FormField pb = pullback(const_dz(), phi, 2);
    const Complex z(0.5, 0.0);
    const CoeffVec c = pb.coefficients({{z.real(), z.imag(), 0.0, 0.0}});
    REQUIRE(c.n == 2);
    // d(z^2) = 2z dz: components (2z, 2zi) on (dx, dy)
    CHECK(std::abs(c.c[0] - 2.0 * z) < 1e-8);
    CHECK(std::abs(c.c[1] - 2.0 * z * I) < 1e-8);
}

TEST_CASE("pullback is functorial") {
    // phi: (x,y) -> (x+y, x y, 0.2 x, 0.1) then psi = swap factors
    const auto phi = [](const std::array<double, 4>& s) -> R4 {
        return {s[0] + s[1], s[0] * s[1], 0.2 * s[0], 0.1};
    };
    const auto psi = [](const std::array<double, 4>& s) -> R4 {
        return {s[2], s[3], s[0], s[1]};
    };
    const auto psi_phi = [&](const std::array<double, 4>& s) -> R4 {
        return psi({phi(s)[0], phi(s)[1], phi(s)[2], phi(s)[3]});
    };
    const FormField w = one_form([](const BidiskPoint& p) {
        return WirtingerGradient{p.w, p.z * p.z, Complex(0.3), std::conj(p.z)};
    });
    const FormField lhs = pullback(w, psi_phi, 2);
    const FormField rhs = pullback(pullback(w, psi, 4), phi, 2);
    const std::array<double, 4> s{0.3, -0.2, 0.0, 0.0};
    const CoeffVec a = lhs.coefficients(s), b = rhs.coefficients(s);
    for (int k = 0; k < a.n; ++k) CHECK(std::abs(a.c[k] - b.c[k]) < 1e-5);
}

TEST_CASE("stokes balance for a polynomial 3-form") {
    // omega = x1^2 x3 dx2^dx3^dx4 (coordinates x1..x4), so d omega =
    // 2 x1 x3 dx1^dx2^dx3^dx4 and everything integrates in closed form.
    const FormField w(4, 3, [](const std::array<double, 4>& x) {
        CoeffVec c;
        c.n = 4;
        c.c[3] = Complex(x[0] * x[0] * x[2]); // component (1,2,3)
        return c;
    });
    Box4 box{{0.1, 0.1, 0.1, 0.1}, {0.3, 0.3, 0.3, 0.3}};
    const StokesReport rep = stokes_check(w, box, 16);
    const double exact = 2.0 * 0.04 * 0.04 * 0.2 * 0.2; // int 2 x1 x3
    CHECK(rep.interior == doctest::Approx(exact).epsilon(1e-4));
    CHECK(rep.boundary == doctest::Approx(exact).epsilon(1e-3));
    CHECK(rep.gap < 1e-3);
    CHECK(rep.boundary_abs > 0.0);
    CHECK_THROWS_AS(stokes_check(w, box, 2), std::invalid_argument);
}

TEST_CASE("4-form quadrature of a constant is the volume") {
    const FormField w(4, 4, [](const std::array<double, 4>&) {
        CoeffVec c;
        c.n = 1;
        c.c[0] = Complex(1.0);
        return c;
    });
    Box4 box{{-0.1, 0.0, 0.2, -0.3}, {0.1, 0.4, 0.3, 0.0}};
    CHECK(integrate_4form(w, box, 8) == doctest::Approx(box.volume()).epsilon(1e-12));
    CHECK(box.volume() == doctest::Approx(0.2 * 0.4 * 0.1 * 0.3).epsilon(1e-13));
    CHECK(box.contained_in_bidisk(0.1));
}

} // TEST_SUITE
