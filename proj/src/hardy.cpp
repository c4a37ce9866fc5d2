#include "gtube/hardy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gtube {
namespace {

constexpr double kPi = std::numbers::pi;

Complex chart_second(double t, Complex z, double theta) {
    Complex u = std::sin(t) * std::polar(1.0, theta);
    return (u + std::conj(z)) / (1.0 + z * u);
}

std::function<Complex(const BidiskPoint&)> abs2_of(const BoundedHoloFn& f) {
    auto value = f.value;
    return [value](const BidiskPoint& p) { return Complex(std::norm(value(p))); };
}

// Monte Carlo of integral over R x [0, 2 pi) of density(z, theta) dx dy
// dtheta. Rejection from the circumdisk; theta stratified over equal arcs;
// fixed shard layout for determinism.
McEstimate mc_fund_circle(const FuchsianGroup& group, long long samples,
                          std::uint64_t seed, const std::string& task,
                          const std::function<double(Complex, double)>& density) {
    const double r = group.circumradius();
    const double weight = kPi * r * r * 2.0 * kPi; // per draw, times indicator
    constexpr int kShards = 8;
    constexpr long long kStrata = 64;

    Accumulator sum, sumsq;
    for (int s = 0; s < kShards; ++s) {
        Rng rng(derive_seed(seed, task + ":shard-" + std::to_string(s)));
        long long ns = samples / kShards + (s < samples % kShards ? 1 : 0);
        Accumulator shard_sum, shard_sq;
        for (long long i = 0; i < ns; ++i) {
            Complex z = rng.disk(r);
            double theta = (2.0 * kPi / kStrata) * (i % kStrata + rng.uniform());
            double x = group.in_fundamental_domain(z) ? density(z, theta) * weight : 0.0;
            shard_sum.add(x);
            shard_sq.add(x * x);
        }
        sum.add(shard_sum.total());
        sumsq.add(shard_sq.total());
    }
    double n = static_cast<double>(samples);
    double mean = sum.total() / n;
    double var = std::max(sumsq.total() / n - mean * mean, 0.0);
    return {mean, std::sqrt(var / n), samples};
}

} // namespace

BidiskPoint iota(double t, Complex z, double theta) {
    return {z, chart_second(t, z, theta)};
}

BidiskPoint kappa(double t, double theta_prime, Complex w) {
    return {chart_second(t, w, theta_prime), w};
}

BoundedHoloFn holo_const(Complex c) {
    return {"const",
            [c](const BidiskPoint&) { return c; },
            [](const BidiskPoint&) { return Complex(0.0); },
            [](const BidiskPoint&) { return Complex(0.0); }};
}

BoundedHoloFn holo_coord_z() {
    return {"z",
            [](const BidiskPoint& p) { return p.z; },
            [](const BidiskPoint&) { return Complex(1.0); },
            [](const BidiskPoint&) { return Complex(0.0); }};
}

BoundedHoloFn holo_coord_w() {
    return {"w",
            [](const BidiskPoint& p) { return p.w; },
            [](const BidiskPoint&) { return Complex(0.0); },
            [](const BidiskPoint&) { return Complex(1.0); }};
}

BoundedHoloFn holo_avg() {
    return {"avg",
            [](const BidiskPoint& p) { return 0.25 * (p.z + p.w); },
            [](const BidiskPoint&) { return Complex(0.25); },
            [](const BidiskPoint&) { return Complex(0.25); }};
}

BoundedHoloFn holo_product() {
    return {"product",
            [](const BidiskPoint& p) { return p.z * p.w; },
            [](const BidiskPoint& p) { return p.w; },
            [](const BidiskPoint& p) { return p.z; }};
}

BoundedHoloFn holo_blaschke(Complex az, Complex aw) {
    auto b = [](Complex a, Complex x) { return (x - a) / (1.0 - std::conj(a) * x); };
    auto db = [](Complex a, Complex x) {
        Complex den = 1.0 - std::conj(a) * x;
        return (1.0 - std::norm(a)) / (den * den);
    };
    return {"blaschke",
            [=](const BidiskPoint& p) { return b(az, p.z) * b(aw, p.w); },
            [=](const BidiskPoint& p) { return db(az, p.z) * b(aw, p.w); },
            [=](const BidiskPoint& p) { return b(az, p.z) * db(aw, p.w); }};
}

BoundedHoloFn holo_by_name(const std::string& name) {
    if (name == "const") return holo_const();
    if (name == "z") return holo_coord_z();
    if (name == "w") return holo_coord_w();
    if (name == "avg") return holo_avg();
    if (name == "product") return holo_product();
    if (name == "blaschke") return holo_blaschke(Complex(0.3, 0.2), Complex(0.0, -0.4));
    throw std::invalid_argument("unknown test function: " + name);
}

std::vector<std::string> holo_names() {
    return {"const", "z", "w", "avg", "product", "blaschke"};
}

double sup_norm_estimate(const BoundedHoloFn& f, int samples, std::uint64_t seed) {
    Rng rng(derive_seed(seed, "sup-norm"));
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        BidiskPoint p{rng.disk(0.999), rng.disk(0.999)};
        sup = std::max(sup, std::abs(f.value(p)));
    }
    return sup;
}

WirtingerGradient abs2_gradient(const BoundedHoloFn& f, const BidiskPoint& p) {
    Complex v = f.value(p), fz = f.dz(p), fw = f.dw(p);
    return {fz * std::conj(v), fw * std::conj(v), std::conj(fz) * v, std::conj(fw) * v};
}

HermitianForm2 abs2_levi(const BoundedHoloFn& f, const BidiskPoint& p) {
    Complex fz = f.dz(p), fw = f.dw(p);
    return {fz * std::conj(fz), fz * std::conj(fw), fw * std::conj(fz),
            fw * std::conj(fw)};
}

namespace {

// i d rho ^ dbar rho has coefficient matrix rho_j conj(rho_k) (rank one).
HermitianForm2 drho_rank1(const BidiskPoint& p) {
    WirtingerGradient g = rho_gradient(p);
    return {g.dz * std::conj(g.dz), g.dz * std::conj(g.dw),
            g.dw * std::conj(g.dz), g.dw * std::conj(g.dw)};
}

} // namespace

FormField identity_three_form(const BoundedHoloFn& f) {
    FormField first = wedge(dc_closed([f](const BidiskPoint& p) {
                                return abs2_gradient(f, p);
                            }),
                            two_form(drho_rank1));
    FormField second = scale(
        wedge(dc_closed(rho_gradient),
              two_form([](const BidiskPoint& p) {
                  return levi_closed(TubeFunction::Rho, p);
              })),
        abs2_of(f));
    return add(first, second);
}

FormField identity_four_form(const BoundedHoloFn& f) {
    // d rho ^ d^c rho = i d rho ^ dbar rho for real rho
    FormField first = wedge(two_form([f](const BidiskPoint& p) {
                                return abs2_levi(f, p);
                            }),
                            two_form(drho_rank1));
    FormField levi_rho = two_form(
        [](const BidiskPoint& p) { return levi_closed(TubeFunction::Rho, p); });
    FormField second = scale(wedge(levi_rho, levi_rho), abs2_of(f));
    return add(first, second);
}

FormField level_three_form(const BoundedHoloFn& f) {
    return scale(wedge(dc_closed(minus_log_delta_gradient),
                       two_form([](const BidiskPoint& p) {
                           return levi_closed(TubeFunction::MinusLogDelta, p);
                       })),
                 abs2_of(f));
}

FormField grad_three_form(const BoundedHoloFn& f) {
    return wedge(two_form([f](const BidiskPoint& p) { return abs2_levi(f, p); }),
                 dc_closed([](const BidiskPoint& p) {
                     WirtingerGradient g = delta_gradient(p);
                     return WirtingerGradient{-g.dz, -g.dw, -g.dzb, -g.dwb};
                 }));
}

PullbackGapReport pullback_identity_check(const BoundedHoloFn& f, double t,
                                          int samples, std::uint64_t seed) {
    FormField pb = pullback(
        level_three_form(f),
        [t](const std::array<double, 4>& x) {
            return to_r4(iota(t, Complex(x[0], x[1]), x[2]));
        },
        3);
    double factor = std::cos(t) * std::cos(t) / (std::sin(t) * std::sin(t));

    Rng rng(derive_seed(seed, "pullback-identity"));
    PullbackGapReport rep{t, samples, 0.0};
    for (int i = 0; i < samples; ++i) {
        Complex z = rng.disk(0.8);
        double theta = rng.uniform(0.0, 2.0 * kPi);
        double num = pb.coefficients({z.real(), z.imag(), theta, 0.0}).c[0].real();
        BidiskPoint image = iota(t, z, theta);
        double sz = 1.0 - std::norm(z);
        double closed = 4.0 * std::norm(f.value(image)) / (sz * sz);
        double gap = std::abs(factor * num - closed) / std::max(std::abs(closed), 1.0);
        rep.max_gap = std::max(rep.max_gap, gap);
    }
    return rep;
}

LevelIntegral level_integral(const FuchsianGroup& group, const BoundedHoloFn& f,
                             double t, long long samples, std::uint64_t seed) {
    auto value = f.value;
    auto density = [t, value](Complex z, double theta) {
        double sz = 1.0 - std::norm(z);
        return 4.0 * std::norm(value(iota(t, z, theta))) / (sz * sz);
    };
    return {t, mc_fund_circle(group, samples, seed,
                              "level-integral:t=" + std::to_string(t), density)};
}

std::vector<NamedBox> stokes_fixture_boxes() {
    return {
        {"box-a", {{0.35, -0.12, -0.30, 0.25}, {0.60, 0.12, -0.05, 0.50}}},
        {"box-b", {{0.42, -0.08, -0.08, 0.22}, {0.58, 0.08, 0.08, 0.38}}},
        {"box-c", {{-0.10, -0.10, 0.35, 0.35}, {0.10, 0.10, 0.60, 0.60}}},
    };
}

BoxBalanceReport box_balance_check(const BoundedHoloFn& f, const NamedBox& box, int grid) {
    BoxBalanceReport rep;
    rep.box_name = box.name;
    rep.grid = grid;
    rep.closed_integral = integrate_4form(identity_four_form(f), box.box, grid);
    StokesReport st = stokes_check(identity_three_form(f), box.box, grid);
    rep.interior = st.interior;
    rep.boundary = st.boundary;
    rep.boundary_abs = st.boundary_abs;
    double scale = std::max({std::abs(rep.closed_integral), std::abs(rep.interior),
                             std::abs(rep.boundary), 1e-12});
    double g1 = std::abs(rep.closed_integral - rep.interior);
    double g2 = std::abs(rep.closed_integral - rep.boundary);
    double g3 = std::abs(rep.interior - rep.boundary);
    rep.max_pair_gap = std::max({g1, g2, g3}) / scale;
    return rep;
}

std::vector<TrendRow> gradient_boundary_trend(const FuchsianGroup& group,
                                              const BoundedHoloFn& f,
                                              const std::vector<double>& ts,
                                              long long samples, std::uint64_t seed) {
    std::vector<TrendRow> rows;
    rows.reserve(ts.size());
    for (size_t k = 0; k < ts.size(); ++k) {
        double t = ts[k];
        FormField pb = pullback(
            grad_three_form(f),
            [t](const std::array<double, 4>& x) {
                return to_r4(iota(t, Complex(x[0], x[1]), x[2]));
            },
            3);
        auto density = [&pb](Complex z, double theta) {
            return pb.coefficients({z.real(), z.imag(), theta, 0.0}).c[0].real();
        };
        rows.push_back({t, mc_fund_circle(group, samples, seed,
                                          "gradient-trend:row-" + std::to_string(k),
                                          density)});
    }
    return rows;
}

} // namespace gtube
