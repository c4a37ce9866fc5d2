#pragma once

#include <cstdint>
#include <vector>

#include "gtube/calculus.hpp"
#include "gtube/fuchsian.hpp"
#include "gtube/moebius.hpp"
#include "gtube/rng.hpp"

namespace gtube {

/// delta(z,w) = 1 - |(w - zbar)/(1 - zw)|^2, the invariant defining function
/// of the tube; equals (1-|z|^2)(1-|w|^2)/|1-zw|^2 and sech^2(d/2) where d is
/// the hyperbolic distance from w to conj(z).
double delta(const BidiskPoint& p);
double delta_alternate(const BidiskPoint& p);

/// rho = arccos(sqrt(delta)) = arcsin|(w - zbar)/(1 - zw)| in [0, pi/2).
double rho(const BidiskPoint& p);
double rho_arcsin(const BidiskPoint& p);
double rho_squared(const BidiskPoint& p);

/// Hyperbolic distance from w to conj(z); delta = sech^2(d/2).
double core_distance(const BidiskPoint& p);

struct TubePoint {
    BidiskPoint p;
    double delta;
    double rho;
};
TubePoint tube_point(const BidiskPoint& p);

/// Shared building blocks of all the closed-form Levi matrices.
///   P = diag(1/sz^2, 1/sw^2)
///   C = [[0, eps/(sz sw)], [conj(eps)/(sz sw), 0]],  eps = -(w-zbar)/(wbar-z)
/// cross = (1-delta) eps = -(w-zbar)^2/|1-zw|^2 stays smooth through the core
/// w = zbar where eps itself loses meaning.
struct DeltaBlocks {
    double delta;
    double sz, sw;
    Complex cross;

    HermitianForm2 P() const {
        return HermitianForm2::diagonal(1.0 / (sz * sz), 1.0 / (sw * sw));
    }
    /// (1-delta) * C, smooth everywhere.
    HermitianForm2 cross_matrix() const {
        Complex off = cross / (sz * sw);
        return {0.0, off, std::conj(off), 0.0};
    }
    /// C itself; requires delta < 1.
    HermitianForm2 C() const;
};
DeltaBlocks delta_blocks(const BidiskPoint& p);

enum class TubeFunction { MinusLogDelta, Rho, RhoSquared, MinusSqrtDelta };
const char* tube_function_name(TubeFunction f);

/// The function itself, for finite-difference cross-checks.
ScalarField tube_scalar(TubeFunction f);
ScalarField df_scalar(double eta); // -delta^eta

/// Closed-form first Wirtinger derivatives.
WirtingerGradient minus_log_delta_gradient(const BidiskPoint& p);
WirtingerGradient delta_gradient(const BidiskPoint& p);
/// grad rho = (1/2) sqrt(delta/(1-delta)) grad(-log delta); off the core only.
WirtingerGradient rho_gradient(const BidiskPoint& p);

/// Margin inside which rho-family closed forms are refused (the intermediate
/// sqrt(delta/(1-delta)) degenerates while the functions stay finite).
inline constexpr double kCoreMargin = 1e-6;

/// Closed-form Levi matrix (coefficients of i ddbar u). Throws
/// std::domain_error for Rho / RhoSquared when delta > 1 - kCoreMargin.
HermitianForm2 levi_closed(TubeFunction f, const BidiskPoint& p);

/// Limit of levi_closed(RhoSquared, .) on the core w = zbar: the matrix P,
/// i.e. i(dz^dzbar + dw^dwbar)/(1-|z|^2)^2 there.
HermitianForm2 rho_squared_core_limit(const BidiskPoint& p);

/// Levi matrix of -delta^eta, assembled from the same blocks; smooth in p.
HermitianForm2 df_levi(double eta, const BidiskPoint& p);

struct LeviReport {
    TubeFunction tag;
    BidiskPoint point;
    HermitianForm2 closed_form;
    HermitianForm2 numeric;
    double max_gap;
    double min_eig; // of closed_form
    double det;     // of closed_form
};

/// Closed form vs calculus::complex_hessian of the scalar itself. Near the
/// core, RhoSquared compares the numeric Hessian against the core limit.
LeviReport levi_numeric_crosscheck(TubeFunction f, const BidiskPoint& p);

/// Random point with delta uniform in [dlo, dhi]: places z at a random
/// fraction of the required core distance and w at that distance from
/// conj(z); rejects until max(|z|, |w|) <= rmax. Throws std::runtime_error
/// when the range is unreachable under rmax (10^4 failed attempts).
BidiskPoint sample_tube_point(Rng& rng, double dlo, double dhi, double rmax = 0.93);

/// Deterministic evaluation grid for the Diederich-Fornaess estimate.
struct DfGrid {
    double delta_lo = 1e-4;
    double delta_hi = 0.2;
    int n_delta = 64;
    double eta_tol = 1e-3;
};

/// Worst min eigenvalue of df_levi(eta, .) over the grid.
double df_grid_min_eig(double eta, const DfGrid& g);

/// Largest eta in (0, 1] with df_grid_min_eig >= -1e-9, by bisection to
/// eta_tol. The sharp answer for delta_lo -> 0 is 1/2.
double df_exponent_estimate(const DfGrid& g = {});

struct DfSweepRow {
    double eta;
    double min_eig;
    double worst_delta; // delta at the minimizing sample
};

/// Min eigenvalue of df_levi over a random point cloud, per eta.
std::vector<DfSweepRow> df_sweep(const std::vector<double>& etas, int samples,
                                 std::uint64_t seed, double dlo, double dhi,
                                 double rmax = 0.999);

struct ExhaustionReport {
    double c;
    double bound;        // log((1+sqrt(1-c))/(1-sqrt(1-c)))
    double max_distance; // largest core distance seen on {delta >= c}
    double min_delta;    // smallest delta seen (>= c up to roundoff)
    long long samples;
    bool pass;
};

/// Relative compactness of the sublevel {delta >= c}: samples points with
/// delta >= c (z reduced to the fundamental domain) and checks the core
/// distance against the closed-form bound. c in (0, 1]; c = 1 forces w = zbar.
ExhaustionReport exhaustion_check(const FuchsianGroup& group, double c,
                                  int samples, std::uint64_t seed);

} // namespace gtube
