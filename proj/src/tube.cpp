#include "gtube/tube.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gtube {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex cross_ratio(const BidiskPoint& p) {
    return (p.w - std::conj(p.z)) / (1.0 - p.z * p.w);
}

void require_off_core(double d, const char* what) {
    if (d > 1.0 - kCoreMargin)
        throw std::domain_error(std::string(what) +
                                ": closed form degenerates near the core w = conj z "
                                "(delta > 1 - 1e-6); use the smooth limit instead");
}

// Point at hyperbolic distance d from center, direction angle psi, where
// center is reached by the Moebius map x -> (x + center)/(1 + conj(center)
// ... note: our center is zbar, so the map is x -> (x + zbar)/(1 + z x).
Complex from_core(Complex z, double d, double psi) {
    Complex u = std::tanh(0.5 * d) * std::polar(1.0, psi);
    return (u + std::conj(z)) / (1.0 + z * u);
}

} // namespace

double delta(const BidiskPoint& p) {
    double m2 = std::norm(cross_ratio(p));
    return std::max(1.0 - m2, 0.0);
}

double delta_alternate(const BidiskPoint& p) {
    double sz = 1.0 - std::norm(p.z);
    double sw = 1.0 - std::norm(p.w);
    return sz * sw / std::norm(1.0 - p.z * p.w);
}

double rho(const BidiskPoint& p) { return std::acos(std::sqrt(delta(p))); }

double rho_arcsin(const BidiskPoint& p) {
    return std::asin(std::min(std::abs(cross_ratio(p)), 1.0));
}

double rho_squared(const BidiskPoint& p) {
    double r = rho(p);
    return r * r;
}

double core_distance(const BidiskPoint& p) {
    return hyperbolic_distance(p.w, std::conj(p.z));
}

TubePoint tube_point(const BidiskPoint& p) { return {p, delta(p), rho(p)}; }

DeltaBlocks delta_blocks(const BidiskPoint& p) {
    DeltaBlocks b;
    b.sz = 1.0 - std::norm(p.z);
    b.sw = 1.0 - std::norm(p.w);
    Complex num = p.w - std::conj(p.z);
    double q2 = std::norm(1.0 - p.z * p.w);
    b.delta = std::max(1.0 - std::norm(num) / q2, 0.0);
    b.cross = -num * num / q2;
    return b;
}

HermitianForm2 DeltaBlocks::C() const {
    require_off_core(delta, "DeltaBlocks::C");
    Complex off = cross / ((1.0 - delta) * sz * sw);
    return {0.0, off, std::conj(off), 0.0};
}

const char* tube_function_name(TubeFunction f) {
    switch (f) {
        case TubeFunction::MinusLogDelta: return "-log delta";
        case TubeFunction::Rho: return "rho";
        case TubeFunction::RhoSquared: return "rho^2";
        case TubeFunction::MinusSqrtDelta: return "-sqrt delta";
    }
    return "?";
}

ScalarField tube_scalar(TubeFunction f) {
    switch (f) {
        case TubeFunction::MinusLogDelta:
            return [](const BidiskPoint& p) { return Complex(-std::log(delta(p))); };
        case TubeFunction::Rho:
            return [](const BidiskPoint& p) { return Complex(rho(p)); };
        case TubeFunction::RhoSquared:
            return [](const BidiskPoint& p) { return Complex(rho_squared(p)); };
        case TubeFunction::MinusSqrtDelta:
            return [](const BidiskPoint& p) { return Complex(-std::sqrt(delta(p))); };
    }
    throw std::logic_error("tube_scalar: bad tag");
}

ScalarField df_scalar(double eta) {
    return [eta](const BidiskPoint& p) { return Complex(-std::pow(delta(p), eta)); };
}

WirtingerGradient minus_log_delta_gradient(const BidiskPoint& p) {
    Complex q = 1.0 - p.z * p.w;
    double sz = 1.0 - std::norm(p.z);
    double sw = 1.0 - std::norm(p.w);
    Complex uz = (std::conj(p.z) - p.w) / (sz * q);
    Complex uw = (std::conj(p.w) - p.z) / (sw * q);
    return {uz, uw, std::conj(uz), std::conj(uw)};
}

WirtingerGradient delta_gradient(const BidiskPoint& p) {
    double d = delta(p);
    WirtingerGradient u = minus_log_delta_gradient(p);
    return {-d * u.dz, -d * u.dw, -d * u.dzb, -d * u.dwb};
}

WirtingerGradient rho_gradient(const BidiskPoint& p) {
    double d = delta(p);
    require_off_core(d, "rho_gradient");
    double kappa = std::sqrt(d / (1.0 - d));
    WirtingerGradient u = minus_log_delta_gradient(p);
    return {0.5 * kappa * u.dz, 0.5 * kappa * u.dw, 0.5 * kappa * u.dzb,
            0.5 * kappa * u.dwb};
}

namespace {

HermitianForm2 combine(const DeltaBlocks& b, double p_coef, double cross_coef) {
    // p_coef * P + cross_coef * (1-delta) * C, both smooth through the core
    Complex off = cross_coef * b.cross / (b.sz * b.sw);
    return {Complex(p_coef / (b.sz * b.sz)), off, std::conj(off),
            Complex(p_coef / (b.sw * b.sw))};
}

} // namespace

HermitianForm2 levi_closed(TubeFunction f, const BidiskPoint& p) {
    DeltaBlocks b = delta_blocks(p);
    double d = b.delta;
    switch (f) {
        case TubeFunction::MinusLogDelta:
            return b.P();
        case TubeFunction::Rho: {
            require_off_core(d, "levi_closed(rho)");
            double kappa = std::sqrt(d / (1.0 - d));
            // (kappa/4)(P - C); C = cross_matrix/(1-delta)
            return combine(b, 0.25 * kappa, -0.25 * kappa / (1.0 - d));
        }
        case TubeFunction::RhoSquared: {
            require_off_core(d, "levi_closed(rho^2)");
            double kappa = std::sqrt(d / (1.0 - d));
            double rk = rho(p) * kappa;
            return combine(b, 0.5 * (rk + d), 0.5 * (d - rk) / (1.0 - d));
        }
        case TubeFunction::MinusSqrtDelta: {
            double s = 0.5 * std::sqrt(d);
            return combine(b, s * 0.5 * (1.0 + d), -s * 0.5);
        }
    }
    throw std::logic_error("levi_closed: bad tag");
}

HermitianForm2 rho_squared_core_limit(const BidiskPoint& p) {
    return delta_blocks(p).P();
}

HermitianForm2 df_levi(double eta, const BidiskPoint& p) {
    DeltaBlocks b = delta_blocks(p);
    double s = eta * std::pow(b.delta, eta);
    return combine(b, s * (1.0 - eta * (1.0 - b.delta)), -s * eta);
}

LeviReport levi_numeric_crosscheck(TubeFunction f, const BidiskPoint& p) {
    LeviReport rep;
    rep.tag = f;
    rep.point = p;
    double d = delta(p);
    bool near_core = d > 1.0 - kCoreMargin;
    if (near_core && f == TubeFunction::RhoSquared)
        rep.closed_form = rho_squared_core_limit(p);
    else
        rep.closed_form = levi_closed(f, p); // throws for Rho near the core
    rep.numeric = complex_hessian(tube_scalar(f), p);
    rep.max_gap = rep.closed_form.max_entry_gap(rep.numeric);
    rep.min_eig = min_eigenvalue(rep.closed_form);
    rep.det = ma_det(rep.closed_form);
    return rep;
}

BidiskPoint sample_tube_point(Rng& rng, double dlo, double dhi, double rmax) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        double dstar = rng.uniform(dlo, dhi);
        double dist = 2.0 * std::atanh(std::sqrt(1.0 - dstar));
        double d1 = rng.uniform() * dist;
        Complex z = std::polar(std::tanh(0.5 * d1), rng.uniform(0.0, kTwoPi));
        if (std::abs(z) > rmax) continue;
        Complex w = from_core(z, dist, rng.uniform(0.0, kTwoPi));
        if (std::abs(w) > rmax) continue;
        return {z, w};
    }
    throw std::runtime_error("sample_tube_point: delta range unreachable under rmax");
}

namespace {

std::vector<BidiskPoint> df_grid_points(const DfGrid& g) {
    static const Complex bases[4] = {Complex(0.0, 0.0), std::polar(0.25, 0.9),
                                     std::polar(0.45, 2.3), std::polar(0.15, 4.0)};
    std::vector<BidiskPoint> pts;
    pts.reserve(4 * g.n_delta);
    for (int i = 0; i < g.n_delta; ++i) {
        double frac = (g.n_delta == 1) ? 0.0 : static_cast<double>(i) / (g.n_delta - 1);
        double d = g.delta_lo * std::pow(g.delta_hi / g.delta_lo, frac);
        double dist = 2.0 * std::atanh(std::sqrt(1.0 - d));
        for (Complex z : bases) {
            // aim w back toward the origin to keep it well inside the disk
            double psi = (std::abs(z) > 0.0) ? std::arg(-std::conj(z)) : 0.0;
            pts.push_back({z, from_core(z, dist, psi)});
        }
    }
    return pts;
}

} // namespace

double df_grid_min_eig(double eta, const DfGrid& g) {
    double worst = std::numeric_limits<double>::infinity();
    for (const BidiskPoint& p : df_grid_points(g))
        worst = std::min(worst, min_eigenvalue(df_levi(eta, p)));
    return worst;
}

double df_exponent_estimate(const DfGrid& g) {
    const double slack = -1e-9;
    auto feasible = [&](double eta) { return df_grid_min_eig(eta, g) >= slack; };
    double lo = 0.01, hi = 1.0;
    if (!feasible(lo))
        throw std::runtime_error("df_exponent_estimate: no feasible eta found");
    if (feasible(hi)) return hi;
    while (hi - lo > g.eta_tol) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::vector<DfSweepRow> df_sweep(const std::vector<double>& etas, int samples,
                                 std::uint64_t seed, double dlo, double dhi,
                                 double rmax) {
    Rng rng(derive_seed(seed, "df-sweep"));
    std::vector<BidiskPoint> cloud;
    cloud.reserve(samples);
    for (int i = 0; i < samples; ++i)
        cloud.push_back(sample_tube_point(rng, dlo, dhi, rmax));

    std::vector<DfSweepRow> rows;
    rows.reserve(etas.size());
    for (double eta : etas) {
        DfSweepRow row{eta, std::numeric_limits<double>::infinity(), 1.0};
        for (const BidiskPoint& p : cloud) {
            double e = min_eigenvalue(df_levi(eta, p));
            if (e < row.min_eig) {
                row.min_eig = e;
                row.worst_delta = delta(p);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

ExhaustionReport exhaustion_check(const FuchsianGroup& group, double c,
                                  int samples, std::uint64_t seed) {
    if (!(c > 0.0 && c <= 1.0))
        throw std::invalid_argument("exhaustion_check: c must lie in (0, 1]");
    double s = std::sqrt(1.0 - c);
    ExhaustionReport rep;
    rep.c = c;
    rep.bound = std::log((1.0 + s) / (1.0 - s)); // = 2 atanh(s); 0 at c = 1
    rep.max_distance = 0.0;
    rep.min_delta = 1.0;
    rep.samples = samples;

    Rng rng(derive_seed(seed, "exhaustion"));
    for (int i = 0; i < samples; ++i) {
        Complex z = group.reduce(rng.disk(0.95)).point;
        double dstar = c + (1.0 - c) * rng.uniform();
        double dist = 2.0 * std::atanh(std::sqrt(std::max(1.0 - dstar, 0.0)));
        Complex w = from_core(z, dist, rng.uniform(0.0, kTwoPi));
        BidiskPoint p{z, w};
        rep.max_distance = std::max(rep.max_distance, core_distance(p));
        rep.min_delta = std::min(rep.min_delta, delta(p));
    }
    rep.pass = rep.max_distance <= rep.bound + 1e-9 && rep.min_delta >= c - 1e-12;
    return rep;
}

} // namespace gtube
