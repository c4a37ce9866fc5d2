#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtube/calculus.hpp"
#include "gtube/fuchsian.hpp"
#include "gtube/rng.hpp"
#include "gtube/tube.hpp"

namespace gtube {

/// Chart of the level set {rho = t}: iota_t(z, e^{i theta}) =
/// (z, ((sin t) e^{i theta} + zbar) / (1 + z (sin t) e^{i theta})).
BidiskPoint iota(double t, Complex z, double theta);
/// Mirror chart: kappa_t(e^{i theta'}, w); equals iota with the two factors
/// swapped.
BidiskPoint kappa(double t, double theta_prime, Complex w);

/// Bounded holomorphic test function on the bidisk with closed-form
/// derivatives (the certificates test holomorphy by finite differences).
struct BoundedHoloFn {
    std::string name;
    std::function<Complex(const BidiskPoint&)> value;
    std::function<Complex(const BidiskPoint&)> dz;
    std::function<Complex(const BidiskPoint&)> dw;
};

BoundedHoloFn holo_const(Complex c = 1.0);
BoundedHoloFn holo_coord_z();
BoundedHoloFn holo_coord_w();
BoundedHoloFn holo_avg();     // (z + w)/4
BoundedHoloFn holo_product(); // z w
/// Product of disk Blaschke factors in z and w.
BoundedHoloFn holo_blaschke(Complex az, Complex aw);
/// Lookup by CLI name: const | z | w | avg | product | blaschke.
BoundedHoloFn holo_by_name(const std::string& name);
std::vector<std::string> holo_names();

double sup_norm_estimate(const BoundedHoloFn& f, int samples, std::uint64_t seed);

/// Wirtinger data of |f|^2 built from the holomorphic derivatives.
WirtingerGradient abs2_gradient(const BoundedHoloFn& f, const BidiskPoint& p);
/// Levi matrix of |f|^2: entries f_j conj(f_k); also the coefficient matrix
/// of i df ^ dbar fbar.
HermitianForm2 abs2_levi(const BoundedHoloFn& f, const BidiskPoint& p);

// The forms of the integration identity, assembled from closed-form pieces:
//   three-form  d^c|f|^2 ^ i drho ^ dbar rho + |f|^2 d^c rho ^ i ddbar rho
//   four-form   i ddbar|f|^2 ^ drho ^ d^c rho + |f|^2 (i ddbar rho)^2
// and the level-set / gradient integrands
//   |f|^2 d^c(-log delta) ^ i ddbar(-log delta)
//   i df ^ dbar fbar ^ d^c(-delta).
FormField identity_three_form(const BoundedHoloFn& f);
FormField identity_four_form(const BoundedHoloFn& f);
FormField level_three_form(const BoundedHoloFn& f);
FormField grad_three_form(const BoundedHoloFn& f);

struct PullbackGapReport {
    double t;
    int samples;
    double max_gap; // worst |num - closed| / max(|closed|, 1)
};

/// At random (z, theta): pulls level_three_form back through iota_t with the
/// numeric-Jacobian pullback, scales by cos^2 t / sin^2 t, and compares with
/// the closed-form coefficient 4 |f(iota_t)|^2 / (1-|z|^2)^2 of dx^dy^dtheta.
PullbackGapReport pullback_identity_check(const BoundedHoloFn& f, double t,
                                          int samples, std::uint64_t seed);

struct LevelIntegral {
    double t;
    McEstimate estimate; // target 8 pi^2 for f = const 1
};

/// Monte Carlo of I(t) = int_{R x S^1} |f(iota_t)|^2 * 4/(1-|z|^2)^2 dx dy
/// dtheta; rejection sampling from the octagon circumdisk, theta stratified.
LevelIntegral level_integral(const FuchsianGroup& group, const BoundedHoloFn& f,
                             double t, long long samples, std::uint64_t seed);

struct NamedBox {
    std::string name;
    Box4 box;
};
/// Three boxes with delta < 0.95 throughout (checked by the tests).
std::vector<NamedBox> stokes_fixture_boxes();

struct BoxBalanceReport {
    std::string box_name;
    int grid;
    double closed_integral; // quadrature of the closed-form four-form
    double interior;        // quadrature of the finite-difference d(three-form)
    double boundary;        // boundary integral of the three-form
    double boundary_abs;    // cancellation scale
    double max_pair_gap;    // pairwise gap over max(|values|, 1e-12)
};

BoxBalanceReport box_balance_check(const BoundedHoloFn& f, const NamedBox& box, int grid);

struct TrendRow {
    double t;
    McEstimate estimate;
};

/// Monte Carlo of J(t) = int_{M_t} i df ^ dbar fbar ^ d^c(-delta) through the
/// iota_t chart, per grid value of t. Exploratory: the vanishing limit as
/// t -> pi/2 holds for Gamma-invariant f only.
std::vector<TrendRow> gradient_boundary_trend(const FuchsianGroup& group,
                                              const BoundedHoloFn& f,
                                              const std::vector<double>& ts,
                                              long long samples, std::uint64_t seed);

} // namespace gtube
