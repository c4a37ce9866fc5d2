#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gtube/rng.hpp"
#include "gtube/tube.hpp"

using namespace gtube;

namespace {
const FuchsianGroup& group() {
    static FuchsianGroup g = FuchsianGroup::octagon();
    return g;
}

WirtingerGradient fd_gradient(const ScalarField& f, const BidiskPoint& p) {
    return wirtinger_gradient(f, p);
}

double grad_gap(const WirtingerGradient& a, const WirtingerGradient& b) {
    return std::max(std::max(std::abs(a.dz - b.dz), std::abs(a.dw - b.dw)),
                    std::max(std::abs(a.dzb - b.dzb), std::abs(a.dwb - b.dwb)));
}
} // namespace

TEST_SUITE("tube") {

TEST_CASE("delta closed forms agree") {
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const BidiskPoint p{rng.disk(0.95), rng.disk(0.95)};
        const double d1 = delta(p);
        CHECK(std::abs(d1 - delta_alternate(p)) < 1e-13);
        CHECK(d1 > 0.0);
        CHECK(d1 <= 1.0 + 1e-15);
        // delta = sech^2(core distance / 2)
        const double sech = 1.0 / std::cosh(0.5 * core_distance(p));
        CHECK(std::abs(d1 - sech * sech) < 1e-12);
    }
}

TEST_CASE("delta is 1 exactly on the core") {
    Rng rng(42);
    for (int i = 0; i < 50; ++i) {
        const Complex z = rng.disk(0.99);
        const BidiskPoint p{z, std::conj(z)};
        CHECK(delta(p) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rho(p) < 2e-7); // arccos of sqrt(1 - eps) is sqrt-sensitive
        CHECK(core_distance(p) < 2e-7);
    }
}

TEST_CASE("rho agrees with the arcsine form") {
    Rng rng(43);
    for (int i = 0; i < 200; ++i) {
        const BidiskPoint p{rng.disk(0.9), rng.disk(0.9)};
        const double r = rho(p);
        CHECK(std::abs(r - rho_arcsin(p)) < 1e-12);
        CHECK(std::abs(rho_squared(p) - r * r) < 1e-13);
        CHECK(r >= 0.0);
        CHECK(r < std::acos(-1.0) / 2.0);
        const TubePoint tp = tube_point(p);
        CHECK(tp.delta == delta(p));
        CHECK(tp.rho == r);
    }
}

TEST_CASE("delta blocks expose the factored pieces") {
    Rng rng(44);
    for (int i = 0; i < 100; ++i) {
        const BidiskPoint p{rng.disk(0.9), rng.disk(0.9)};
        const DeltaBlocks b = delta_blocks(p);
        CHECK(std::abs(b.sz - (1.0 - std::norm(p.z))) < 1e-15);
        CHECK(std::abs(b.sw - (1.0 - std::norm(p.w))) < 1e-15);
        CHECK(std::abs(b.delta - delta(p)) < 1e-14);
        const Complex num = p.w - std::conj(p.z);
        const Complex den = 1.0 - p.z * p.w;
        CHECK(std::abs(b.cross - (-num * num / std::norm(den))) < 1e-13);
        // |cross| = 1 - delta
        CHECK(std::abs(std::abs(b.cross) - (1.0 - b.delta)) < 1e-13);
        if (b.delta < 1.0 - 1e-3) {
            const HermitianForm2 c = b.C();
            CHECK(std::abs(std::abs(c.h12) - 1.0 / (b.sz * b.sw)) < 1e-10);
            CHECK(c.hermitian_defect() < 1e-13);
        }
    }
}

TEST_CASE("closed-form gradients match finite differences") {
    Rng rng(45);
    for (int i = 0; i < 40; ++i) {
        const BidiskPoint p = sample_tube_point(rng, 0.05, 0.9, 0.9);
        const ScalarField fdelta = [](const BidiskPoint& q) { return Complex(delta(q)); };
        CHECK(grad_gap(delta_gradient(p), fd_gradient(fdelta, p)) < 1e-8);
        CHECK(grad_gap(minus_log_delta_gradient(p),
                       fd_gradient(tube_scalar(TubeFunction::MinusLogDelta), p)) < 1e-6);
        if (delta(p) < 0.9) {
            CHECK(grad_gap(rho_gradient(p),
                           fd_gradient(tube_scalar(TubeFunction::Rho), p)) < 1e-6);
        }
    }
}

TEST_CASE("levi matrices match the numeric hessian") {
    Rng rng(46);
    for (TubeFunction f : {TubeFunction::MinusLogDelta, TubeFunction::Rho,
                           TubeFunction::RhoSquared, TubeFunction::MinusSqrtDelta}) {
        for (int i = 0; i < 12; ++i) {
            const BidiskPoint p = sample_tube_point(rng, 0.1, 0.9, 0.88);
            const LeviReport rep = levi_numeric_crosscheck(f, p);
            CAPTURE(static_cast<int>(f));
            CAPTURE(rep.max_gap);
            CHECK(rep.max_gap < 1e-4);
            CHECK(rep.closed_form.hermitian_defect() < 1e-10);
        }
    }
}

TEST_CASE("levi of -log delta is the product metric") {
    // -log delta = -log(1-|z|^2) - log(1-|w|^2) + log|1-zw|^2 and the last
    // term is pluriharmonic, so the cross entries cancel exactly
    Rng rng(52);
    for (int i = 0; i < 100; ++i) {
        const BidiskPoint p = sample_tube_point(rng, 0.02, 0.98, 0.93);
        const HermitianForm2 l = levi_closed(TubeFunction::MinusLogDelta, p);
        const double sz = 1.0 - std::norm(p.z), sw = 1.0 - std::norm(p.w);
        CHECK(l.max_entry_gap(HermitianForm2::diagonal(1.0 / (sz * sz),
                                                       1.0 / (sw * sw))) < 1e-12);
        CHECK(ma_det(l) > 0.0); // strictly psh, not a Monge-Ampere solution
    }
}

TEST_CASE("monge-ampere degeneracy of rho") {
    Rng rng(47);
    for (int i = 0; i < 200; ++i) {
        const BidiskPoint p = sample_tube_point(rng, 0.02, 0.98, 0.93);
        const HermitianForm2 lr = levi_closed(TubeFunction::Rho, p);
        const double s2 = lr.frobenius();
        CHECK(std::abs(ma_det(lr)) < 1e-12 * s2 * s2);
        CHECK(min_eigenvalue(lr) > -1e-12 * s2);
        CHECK(max_eigenvalue(lr) > 0.0); // rank one, not rank zero
    }
}

TEST_CASE("rho family refuses the core neighborhood") {
    const Complex z(0.2, 0.1);
    const BidiskPoint on_core{z, std::conj(z)};
    CHECK_THROWS_AS(levi_closed(TubeFunction::Rho, on_core), std::domain_error);
    CHECK_THROWS_AS(levi_closed(TubeFunction::RhoSquared, on_core), std::domain_error);
    // -log delta and -sqrt(delta) stay defined there
    CHECK_NOTHROW(levi_closed(TubeFunction::MinusLogDelta, on_core));
    CHECK_NOTHROW(levi_closed(TubeFunction::MinusSqrtDelta, on_core));
    // and the rho^2 core limit is P
    const HermitianForm2 lim = rho_squared_core_limit(on_core);
    const double sz = 1.0 - std::norm(z);
    CHECK(lim.max_entry_gap(HermitianForm2::diagonal(1.0 / (sz * sz), 1.0 / (sz * sz))) <
          1e-13);
}

TEST_CASE("minus sqrt delta is strictly plurisubharmonic") {
    Rng rng(48);
    for (int i = 0; i < 200; ++i) {
        const BidiskPoint p = sample_tube_point(rng, 0.01, 0.999, 0.95);
        const HermitianForm2 l = levi_closed(TubeFunction::MinusSqrtDelta, p);
        CHECK(min_eigenvalue(l) > 0.0);
        // the same matrix through the df_levi assembly at eta = 1/2
        CHECK(l.max_entry_gap(df_levi(0.5, p)) < 1e-12);
    }
}

TEST_CASE("df levi sign flips at eta = 1/(2(1-delta))") {
    Rng rng(49);
    for (int i = 0; i < 50; ++i) {
        const BidiskPoint p = sample_tube_point(rng, 0.05, 0.6, 0.9);
        const double threshold = 1.0 / (2.0 * (1.0 - delta(p)));
        CHECK(min_eigenvalue(df_levi(threshold - 0.01, p)) > 0.0);
        CHECK(min_eigenvalue(df_levi(threshold + 0.01, p)) < 0.0);
        // at the threshold itself the small eigenvalue vanishes
        const HermitianForm2 at = df_levi(threshold, p);
        CHECK(std::abs(min_eigenvalue(at)) < 1e-10 * at.frobenius());
    }
}

TEST_CASE("df exponent estimate is sharp at one half") {
    const double est = df_exponent_estimate();
    CHECK(est > 0.5 - 2e-3);
    CHECK(est < 0.5 + 2e-3);
    CHECK(df_grid_min_eig(0.499, DfGrid{}) > -1e-9);
    CHECK(df_grid_min_eig(0.52, DfGrid{}) < -1e-9);

    // away from the boundary the permissible exponent climbs toward 1
    DfGrid deep;
    deep.delta_lo = 0.5;
    deep.delta_hi = 0.95;
    CHECK(df_exponent_estimate(deep) > 0.99);
}

TEST_CASE("df sweep rows are reproducible and ordered") {
    const std::vector<double> etas{0.3, 0.5, 0.7};
    const auto rows = df_sweep(etas, 200, 11, 0.01, 0.9);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].eta == 0.3);
    CHECK(rows[0].min_eig > 0.0);  // eta < 1/2 is safe everywhere
    CHECK(rows[2].min_eig < 0.0);  // eta = 0.7 fails near delta ~ 0.01
    CHECK(rows[2].worst_delta < 0.3);
    const auto again = df_sweep(etas, 200, 11, 0.01, 0.9);
    for (size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].min_eig == again[k].min_eig);
        CHECK(rows[k].worst_delta == again[k].worst_delta);
    }
}

TEST_CASE("tube sampler respects its contract") {
    Rng rng(50);
    for (int i = 0; i < 200; ++i) {
        const BidiskPoint p = sample_tube_point(rng, 0.3, 0.4, 0.93);
        const double d = delta(p);
        CHECK(d >= 0.3);
        CHECK(d < 0.4);
        CHECK(std::abs(p.z) <= 0.93);
        CHECK(std::abs(p.w) <= 0.93);
    }
    Rng rng2(51);
    CHECK_THROWS_AS(sample_tube_point(rng2, 0.04, 0.05, 0.3), std::runtime_error);
}

TEST_CASE("sublevel sets are relatively compact") {
    const ExhaustionReport r75 = exhaustion_check(group(), 0.75, 4000, 13);
    CHECK(r75.pass);
    CHECK(r75.bound == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(r75.max_distance <= r75.bound + 1e-9);
    CHECK(r75.min_delta >= 0.75 - 1e-12);
    CHECK(r75.samples == 4000);

    const ExhaustionReport r99 = exhaustion_check(group(), 0.99, 4000, 13);
    CHECK(r99.pass);
    CHECK(r99.bound == doctest::Approx(std::log(11.0 / 9.0)).epsilon(1e-9));
    CHECK(r99.max_distance <= r99.bound + 1e-9);

    // c = 1 pins w to the core
    const ExhaustionReport r1 = exhaustion_check(group(), 1.0, 500, 13);
    CHECK(r1.pass);
    CHECK(r1.max_distance < 1e-6);
}

} // TEST_SUITE
