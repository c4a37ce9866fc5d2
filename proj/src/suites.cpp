#include "gtube/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string_view>

#include "gtube/ergodic.hpp"
#include "gtube/hardy.hpp"
#include "gtube/tube.hpp"

namespace gtube {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t task_seed(const VerifyConfig& cfg, std::string_view task) {
    return derive_seed(cfg.seed, task);
}

std::string fmt1(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", t);
    return buf;
}

// ---------------------------------------------------------------- ma

std::vector<CheckReport> suite_ma(const FuchsianGroup&, const VerifyConfig& cfg) {
    const int n = 1000;
    Rng rng(task_seed(cfg, "ma-points"));
    const ScalarField rho_f = tube_scalar(TubeFunction::Rho);
    double worst_closed = 0.0, worst_fd = 0.0;
    for (int i = 0; i < n; ++i) {
        const BidiskPoint p = sample_tube_point(rng, 0.05, 0.95, 0.93);
        const HermitianForm2 closed = levi_closed(TubeFunction::Rho, p);
        const double f2 = closed.frobenius() * closed.frobenius();
        worst_closed = std::max(worst_closed, std::abs(ma_det(closed)) / f2);
        const HermitianForm2 fd = complex_hessian(rho_f, p);
        const double g2 = fd.frobenius() * fd.frobenius();
        worst_fd = std::max(worst_fd, std::abs(ma_det(fd)) / g2);
    }
    return {
        check_in("ma/closed_det_ratio_max", worst_closed, 0.0, 1e-10, n, cfg.seed),
        check_in("ma/fd_det_ratio_max", worst_fd, 0.0, 1e-6, n, cfg.seed),
    };
}

// ------------------------------------------------------- hyperconvex

std::vector<CheckReport> suite_hyperconvex(const FuchsianGroup& group,
                                           const VerifyConfig& cfg) {
    Rng bulk(task_seed(cfg, "hyperconvex-bulk"));
    Rng small(task_seed(cfg, "hyperconvex-small"));
    double min_eig = 1e300, min_delta = 1.0;
    int small_count = 0;
    const int n_bulk = 900, n_small = 100;
    for (int i = 0; i < n_bulk + n_small; ++i) {
        const BidiskPoint p = i < n_bulk
                                  ? sample_tube_point(bulk, 0.01, 0.95, 0.999)
                                  : sample_tube_point(small, 0.005, 0.01, 0.999);
        const double d = delta(p);
        min_delta = std::min(min_delta, d);
        if (d < 0.01) ++small_count;
        min_eig = std::min(
            min_eig, min_eigenvalue(levi_closed(TubeFunction::MinusSqrtDelta, p)));
    }

    Rng fd_rng(task_seed(cfg, "hyperconvex-fd"));
    const ScalarField f = tube_scalar(TubeFunction::MinusSqrtDelta);
    double fd_gap = 0.0;
    const int n_fd = 200;
    for (int i = 0; i < n_fd; ++i) {
        const BidiskPoint p = sample_tube_point(fd_rng, 0.05, 0.95, 0.93);
        const HermitianForm2 closed = levi_closed(TubeFunction::MinusSqrtDelta, p);
        fd_gap = std::max(fd_gap, closed.max_entry_gap(complex_hessian(f, p)));
    }

    const ExhaustionReport e75 =
        exhaustion_check(group, 0.75, 20000, task_seed(cfg, "exhaustion-075"));
    const ExhaustionReport e99 =
        exhaustion_check(group, 0.99, 20000, task_seed(cfg, "exhaustion-099"));

    return {
        check_in("hyperconvex/min_eig_min", min_eig, 0.0, 1e12,
                 n_bulk + n_small, cfg.seed),
        check_in("hyperconvex/small_delta_count", small_count, 100, 1e18,
                 n_bulk + n_small, cfg.seed),
        info_value("hyperconvex/min_delta", min_delta, n_bulk + n_small, cfg.seed),
        check_in("hyperconvex/fd_entry_gap_max", fd_gap, 0.0, 1e-5, n_fd, cfg.seed),
        check_in("hyperconvex/exhaustion_c075_max_distance", e75.max_distance, 0.0,
                 e75.bound + 1e-9, e75.samples, cfg.seed),
        check_in("hyperconvex/exhaustion_c099_max_distance", e99.max_distance, 0.0,
                 e99.bound + 1e-9, e99.samples, cfg.seed),
        info_value("hyperconvex/exhaustion_c075_bound", e75.bound, e75.samples,
                   cfg.seed),
    };
}

// ---------------------------------------------------------------- df

std::vector<CheckReport> suite_df(const FuchsianGroup&, const VerifyConfig& cfg) {
    const DfGrid grid{};
    const double est = df_exponent_estimate(grid);

    DfGrid restricted;
    restricted.delta_lo = 0.5;
    restricted.delta_hi = 0.95;
    const double est_restricted = df_exponent_estimate(restricted);

    const BidiskPoint witness{Complex(0.0, 0.0), Complex(std::sqrt(0.98), 0.0)};
    const double wit_delta = delta(witness);
    const double wit_bad = min_eigenvalue(df_levi(0.55, witness));
    const double wit_half = min_eigenvalue(df_levi(0.5, witness));

    double worst_increase = -1e300;
    double prev = 0.0;
    for (int k = 0; k <= 8; ++k) {
        const double m = df_grid_min_eig(0.30 + 0.05 * k, grid);
        if (k > 0) worst_increase = std::max(worst_increase, m - prev);
        prev = m;
    }

    const long long grid_pts = 4LL * grid.n_delta;
    return {
        check_in("df/exponent_estimate", est, 0.495, 0.505, grid_pts, cfg.seed),
        check_in("df/restricted_grid_estimate", est_restricted, 0.995, 1.0,
                 grid_pts, cfg.seed),
        check_in("df/witness_delta", wit_delta, 1e-9, 0.05, 1, cfg.seed),
        check_in("df/witness_eta055_min_eig", wit_bad, -1e6, -1e-6, 1, cfg.seed),
        check_in("df/witness_eta050_min_eig", wit_half, 0.0, 1e6, 1, cfg.seed),
        check_in("df/grid_min_eig_monotone_max_increase", worst_increase, -1e9,
                 1e-12, grid_pts, cfg.seed),
    };
}

// -------------------------------------------------------- invariance
//
// delta(gamma p) is evaluated in extended precision: a length-5 word can push
// the image within ~2e-7 of the boundary where double rounding of the image
// alone costs ~1e-11 in delta, swamping the 1e-12 tolerance the mathematical
// identity deserves.

using CL = std::complex<long double>;

CL ld_letter_apply(const Letter& l, CL z) {
    static const long double a = 1.0L + std::sqrt(2.0L);
    static const long double s = std::sqrt(2.0L + 2.0L * std::sqrt(2.0L));
    static const long double c = std::sqrt(0.5L);
    static const long double ct[4] = {1.0L, c, 0.0L, -c};
    static const long double st[4] = {0.0L, c, 1.0L, c};
    CL b(s * ct[l.gen], s * st[l.gen]);
    if (l.exp < 0) b = -b;
    for (int i = 0; i < std::abs(l.exp); ++i)
        z = (a * z + b) / (std::conj(b) * z + a);
    return z;
}

CL ld_word_apply(const GroupWord& w, CL z) {
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        z = ld_letter_apply(*it, z);
    return z;
}

long double ld_delta(CL z, CL w) {
    const CL m = (w - std::conj(z)) / (CL(1.0L, 0.0L) - z * w);
    return 1.0L - std::norm(m);
}

std::vector<CheckReport> suite_invariance(const FuchsianGroup& group,
                                          const VerifyConfig& cfg) {
    Rng wrng(task_seed(cfg, "invariance-words"));
    Rng prng(task_seed(cfg, "invariance-points"));
    std::vector<GroupWord> words;
    words.reserve(100);
    for (int i = 0; i < 100; ++i)
        words.push_back(group.random_word(1 + wrng.uniform_int(5), wrng));
    std::vector<BidiskPoint> pts;
    pts.reserve(100);
    for (int i = 0; i < 100; ++i)
        pts.push_back({prng.disk(0.6), prng.disk(0.6)});

    long double max_gap = 0.0L;
    double max_radius = 0.0;
    for (const GroupWord& w : words) {
        for (const BidiskPoint& p : pts) {
            const CL z(p.z.real(), p.z.imag());
            const CL wc(p.w.real(), p.w.imag());
            const CL gz = ld_word_apply(w, z);
            const CL gw = std::conj(ld_word_apply(w, std::conj(wc)));
            max_gap = std::max(max_gap,
                               std::abs(ld_delta(gz, gw) - ld_delta(z, wc)));
            max_radius = std::max(
                max_radius, static_cast<double>(std::max(std::abs(gz), std::abs(gw))));
        }
    }
    return {
        check_in("invariance/delta_max_gap", static_cast<double>(max_gap), 0.0,
                 1e-12, 10000, cfg.seed),
        info_value("invariance/max_image_radius", max_radius, 10000, cfg.seed),
    };
}

// ------------------------------------------------------------- group

std::vector<CheckReport> suite_group(const FuchsianGroup& group,
                                     const VerifyConfig& cfg) {
    const DiskMoebius& cyc = group.vertex_cycle_product();
    const double cyc_defect =
        std::min(std::abs(cyc.a() - 1.0) + std::abs(cyc.b()),
                 std::abs(cyc.a() + 1.0) + std::abs(cyc.b()));

    const long long n = cfg.samples > 0 ? cfg.samples : 10'000'000;
    const McEstimate area = group.domain_area(n, task_seed(cfg, "group-area"), 8);

    return {
        check_close("group/vertex_angle_sum", group.vertex_angle_sum(), 2.0 * kPi,
                    1e-9, 8, cfg.seed),
        check_in("group/vertex_cycle_defect", cyc_defect, 0.0, 1e-8, 8, cfg.seed),
        check_in("group/side_pairing_defect", group.max_side_pairing_defect(), 0.0,
                 1e-9, 8, cfg.seed),
        check_close("group/area_mc", area.value, 2.0 * kPi, 3.0 * area.std_error,
                    area.samples, cfg.seed),
        info_value("group/area_stderr", area.std_error, area.samples, cfg.seed),
        check_close("group/circumradius", group.circumradius(),
                    std::pow(2.0, -0.25), 1e-12, 1, cfg.seed),
        check_close("group/translation_length", group.translation_length(),
                    2.0 * std::acosh(1.0 + std::sqrt(2.0)), 1e-12, 1, cfg.seed),
    };
}

// ------------------------------------------------------------ metric

std::vector<CheckReport> suite_metric(const FuchsianGroup&,
                                      const VerifyConfig& cfg) {
    Rng rng(task_seed(cfg, "metric-points"));
    const ScalarField f = tube_scalar(TubeFunction::RhoSquared);
    const int n = 50;
    double entry_gap = 0.0, form_gap = 0.0;
    for (int i = 0; i < n; ++i) {
        const Complex z = rng.disk(0.85);
        const BidiskPoint p{z, std::conj(z)};
        const HermitianForm2 num = complex_hessian(f, p);
        const HermitianForm2 target = rho_squared_core_limit(p);
        entry_gap = std::max(entry_gap, num.max_entry_gap(target));

        const Complex v = rng.circle(); // S-tangent vector (v, conj v)
        const double q = quadratic_form(num, v, std::conj(v));
        const double sz = 1.0 - std::norm(z);
        form_gap = std::max(form_gap, std::abs(q - 2.0 / (sz * sz)));
    }
    return {
        check_in("metric/hessian_entry_gap_max", entry_gap, 0.0, 1e-4, n, cfg.seed),
        check_in("metric/tangent_form_gap_max", form_gap, 0.0, 1e-4, n, cfg.seed),
    };
}

// ------------------------------------------------------------ stokes

std::vector<CheckReport> suite_stokes(const FuchsianGroup&,
                                      const VerifyConfig& cfg) {
    const int grid = std::max(4, cfg.grid);
    const std::vector<NamedBox> boxes = stokes_fixture_boxes();
    std::vector<CheckReport> out;
    BoxBalanceReport fine_avg_a{};
    for (std::string_view fname : {"const", "avg", "product"}) {
        const BoundedHoloFn f = holo_by_name(std::string(fname));
        for (const NamedBox& box : boxes) {
            const BoxBalanceReport rep = box_balance_check(f, box, grid);
            const long long cells = 1LL * grid * grid * grid * grid;
            if (fname == "const") {
                // |f| constant kills i df ^ dbar fbar: every term is a
                // quadrature of (i ddbar rho)^2 = 0, so the three values are
                // compared against the cancellation scale instead.
                const double worst =
                    std::max({std::abs(rep.closed_integral), std::abs(rep.interior),
                              std::abs(rep.boundary)}) /
                    rep.boundary_abs;
                out.push_back(check_in("stokes/const/" + box.name + "/cancellation",
                                       worst, 0.0, 1e-3, cells, cfg.seed));
            } else {
                out.push_back(check_in("stokes/" + std::string(fname) + "/" + box.name + "/gap",
                                       rep.max_pair_gap, 0.0, 1e-2, cells,
                                       cfg.seed));
                if (fname == "avg" && box.name == "box-a") fine_avg_a = rep;
            }
        }
    }
    const int coarse_grid = std::max(4, grid / 2);
    const BoxBalanceReport coarse =
        box_balance_check(holo_by_name("avg"), boxes.at(0), coarse_grid);
    const double ratio =
        fine_avg_a.max_pair_gap / std::max(coarse.max_pair_gap, 1e-300);
    out.push_back(check_in("stokes/convergence_ratio", ratio, 0.0, 0.95,
                           1LL * grid * grid * grid * grid, cfg.seed));
    out.push_back(info_value("stokes/coarse_gap", coarse.max_pair_gap,
                             1LL * coarse_grid * coarse_grid * coarse_grid *
                                 coarse_grid,
                             cfg.seed));
    return out;
}

// ------------------------------------------------------------ charts

std::vector<CheckReport> suite_charts(const FuchsianGroup&,
                                      const VerifyConfig& cfg) {
    const std::vector<double> ts{0.5, 0.9, 1.3};
    const int n = 1000;
    Rng irng(task_seed(cfg, "charts-iota"));
    Rng krng(task_seed(cfg, "charts-kappa"));
    double iota_gap = 0.0, kappa_gap = 0.0;
    for (double t : ts) {
        const double level = std::cos(t) * std::cos(t);
        for (int i = 0; i < n; ++i) {
            const BidiskPoint pi =
                iota(t, irng.disk(0.95), irng.uniform(0.0, 2.0 * kPi));
            iota_gap = std::max(iota_gap, std::abs(delta(pi) - level));
            const BidiskPoint pk =
                kappa(t, krng.uniform(0.0, 2.0 * kPi), krng.disk(0.95));
            kappa_gap = std::max(kappa_gap, std::abs(delta(pk) - level));
        }
    }

    double pullback_gap = 0.0;
    for (std::string_view fname : {"const", "product"}) {
        const BoundedHoloFn f = holo_by_name(std::string(fname));
        for (double t : ts) {
            const PullbackGapReport rep = pullback_identity_check(
                f, t, 60, task_seed(cfg, "charts-pullback"));
            pullback_gap = std::max(pullback_gap, rep.max_gap);
        }
    }

    return {
        check_in("charts/iota_level_gap_max", iota_gap, 0.0, 1e-10,
                 3LL * n, cfg.seed),
        check_in("charts/kappa_level_gap_max", kappa_gap, 0.0, 1e-10,
                 3LL * n, cfg.seed),
        check_in("charts/pullback_gap_max", pullback_gap, 0.0, 1e-4, 360, cfg.seed),
    };
}

// ------------------------------------------------------------- hardy

std::vector<CheckReport> suite_hardy(const FuchsianGroup& group,
                                     const VerifyConfig& cfg) {
    const long long n = cfg.samples > 0 ? cfg.samples : 1'000'000;
    const double target = 8.0 * kPi * kPi;
    const std::vector<double> ts{0.5, 1.0, 1.4};
    std::vector<CheckReport> out;
    std::vector<McEstimate> ests;
    for (double t : ts) {
        const LevelIntegral li =
            level_integral(group, holo_const(), t, n, cfg.seed);
        ests.push_back(li.estimate);
        out.push_back(check_close("hardy/level_integral_t=" + fmt1(t),
                                  li.estimate.value, target,
                                  3.0 * li.estimate.std_error,
                                  li.estimate.samples, cfg.seed));
    }

    double max_z = 0.0;
    for (std::size_t i = 0; i < ests.size(); ++i)
        for (std::size_t j = i + 1; j < ests.size(); ++j) {
            const double se = std::hypot(ests[i].std_error, ests[j].std_error);
            max_z = std::max(max_z, std::abs(ests[i].value - ests[j].value) / se);
        }
    out.push_back(check_in("hardy/level_consistency_max_z", max_z, 0.0, 3.0,
                           3 * n, cfg.seed));

    // constant-f value against the 4 pi^2 (2g-2) prefactor read, g = 2
    double mean = 0.0, var = 0.0;
    for (const McEstimate& e : ests) {
        mean += e.value / 3.0;
        var += e.std_error * e.std_error / 9.0;
    }
    out.push_back(check_close("hardy/prefactor_match", mean,
                              4.0 * kPi * kPi * (2.0 * 2 - 2), 3.0 * std::sqrt(var),
                              3 * n, cfg.seed));

    const long long nt =
        cfg.samples > 0 ? std::min<long long>(cfg.samples, 200'000) : 200'000;
    const std::vector<double> trend_ts{0.6, 0.9, 1.2, 1.45};
    const std::vector<TrendRow> rows =
        gradient_boundary_trend(group, holo_coord_z(), trend_ts, nt, cfg.seed);
    std::vector<double> vals, errs;
    double min_lower = 1e300;
    for (const TrendRow& r : rows) {
        vals.push_back(r.estimate.value);
        errs.push_back(r.estimate.std_error);
        min_lower = std::min(min_lower,
                             r.estimate.value + 3.0 * r.estimate.std_error);
    }
    out.push_back(info_vector("hardy/trend_J_estimates", vals, nt, cfg.seed));
    out.push_back(info_vector("hardy/trend_J_stderr", errs, nt, cfg.seed));
    out.push_back(check_in("hardy/trend_nonnegative_min", min_lower, 0.0, 1e9,
                           4 * nt, cfg.seed));
    return out;
}

// ----------------------------------------------------------- ergodic

std::vector<CheckReport> suite_ergodic(const FuchsianGroup& group,
                                       const VerifyConfig& cfg) {
    std::vector<CheckReport> out;
    for (int k = 0; k < 3; ++k) {
        const EquidistributionResult r =
            equidistribution_experiment(group, 1e5, 0.1, 8, cfg.seed + k);
        out.push_back(check_in("ergodic/tv_seed" + std::to_string(k),
                               r.tv_distance, 0.0, 0.05, r.steps, cfg.seed + k));
    }

    const long long nw = cfg.samples > 0 ? cfg.samples : 1'000'000;
    const OrbitResult orb = boundary_orbit_experiment(group, nw, 30, 16, cfg.seed);
    // Fully hit means 256 of 256; the diagonal action glues both boundary
    // factors together (max separation below), so the honest count stays on
    // the diagonal band and this check records that outcome.
    out.push_back(check_close("ergodic/orbit_grid_hit_bins", orb.hit_bins, 256.0,
                              0.0, nw, cfg.seed));
    out.push_back(info_value("ergodic/orbit_xi_marginal_hit", orb.xi_marginal_hit,
                             nw, cfg.seed));
    out.push_back(info_value("ergodic/orbit_eta_marginal_hit",
                             orb.eta_marginal_hit, nw, cfg.seed));
    out.push_back(info_value("ergodic/orbit_diagonal_mass", orb.diagonal_mass, nw,
                             cfg.seed));
    out.push_back(info_value("ergodic/orbit_max_pair_separation",
                             orb.max_pair_separation, nw, cfg.seed));
    return out;
}

using SuiteFn = std::vector<CheckReport> (*)(const FuchsianGroup&,
                                             const VerifyConfig&);

struct SuiteEntry {
    const char* name;
    SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"ma", suite_ma},           {"hyperconvex", suite_hyperconvex},
    {"df", suite_df},           {"invariance", suite_invariance},
    {"group", suite_group},     {"metric", suite_metric},
    {"stokes", suite_stokes},   {"charts", suite_charts},
    {"hardy", suite_hardy},     {"ergodic", suite_ergodic},
};

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const SuiteEntry& e : kSuites) v.emplace_back(e.name);
        return v;
    }();
    return names;
}

bool is_suite(const std::string& name) {
    if (name == "all") return true;
    for (const SuiteEntry& e : kSuites)
        if (name == e.name) return true;
    return false;
}

std::vector<CheckReport> run_suite(const std::string& name,
                                   const FuchsianGroup& group,
                                   const VerifyConfig& cfg) {
    if (name == "all") {
        std::vector<CheckReport> out;
        for (const SuiteEntry& e : kSuites) {
            std::vector<CheckReport> part = e.fn(group, cfg);
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
        return out;
    }
    for (const SuiteEntry& e : kSuites)
        if (name == e.name) return e.fn(group, cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace gtube
