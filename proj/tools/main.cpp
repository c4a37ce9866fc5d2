// gtube: seeded numerical checks for the bidisk quotient tube.
//
// Subcommands: verify, df-sweep, ergodic (geodesic|orbit), hardy
// (level-integral|stokes|trend), area. JSON output is always an array of
// CheckReport records; CSV is the per-command data table. Exit codes:
// 0 all checks pass, 1 check failure / numerical error, 2 usage or config.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gtube/ergodic.hpp"
#include "gtube/hardy.hpp"
#include "gtube/report.hpp"
#include "gtube/suites.hpp"
#include "gtube/tube.hpp"

namespace {

using namespace gtube;

struct Options {
    std::uint64_t seed = 7;
    double samples = 0; // 0 = per-command default; double so 1e6 parses
    std::string json_path;
    std::string csv_path;
    std::string config_path;
    bool quiet = false;

    std::string suite = "all";
    int grid = 24;

    double eta_min = 0.3;
    double eta_max = 0.7;
    double eta_step = 0.01;

    double time = 1e5;
    double dt = 0.1;
    int bins = 8;

    double words = 1e6;
    int length = 30;
    int orbit_grid = 16;

    std::string f_name = "const";
    std::string t_list = "0.5,1.0,1.4";
};

struct ConfigBinding {
    std::string key;
    CLI::Option* opt;
    std::function<void(const nlohmann::json&)> set;
};

std::vector<ConfigBinding> g_bindings;

void bind_cfg(const std::string& key, CLI::Option* opt,
          std::function<void(const nlohmann::json&)> set) {
    g_bindings.push_back({key, opt, std::move(set)});
}

/// Flat key-value JSON mirroring the flags; flags override config. Some keys
/// (grid, f, t) are bound to options of several subcommands, so a key is
/// suppressed as soon as any of its options was given on the command line.
void apply_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object())
        throw std::invalid_argument("config must be a flat JSON object: " + path);
    std::set<std::string> given;
    for (const ConfigBinding& b : g_bindings)
        if (b.opt != nullptr && b.opt->count() > 0) given.insert(b.key);
    for (const ConfigBinding& b : g_bindings) {
        if (!j.contains(b.key)) continue;
        if (given.count(b.key) > 0) continue;
        b.set(j.at(b.key));
    }
}

long long count_or(double v, long long dflt) {
    return v > 0 ? static_cast<long long>(std::llround(v)) : dflt;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument("bad number in list: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty value list: " + s);
    return out;
}

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write: " + path);
    out << body;
}

/// Shared tail: emit JSON (CheckReports), CSV (custom table if provided),
/// human table; exit 0 iff nothing failed.
int finish(const Options& o, std::vector<CheckReport> reports,
           const std::string& csv_table = "") {
    if (!o.json_path.empty()) write_file(o.json_path, reports_to_json(reports));
    if (!o.csv_path.empty())
        write_file(o.csv_path,
                   csv_table.empty() ? reports_to_csv(reports) : csv_table);
    const bool ok = all_pass(reports);
    if (!o.quiet) {
        std::cout << reports_to_table(reports);
        int pass = 0, fail = 0, info = 0;
        for (const CheckReport& r : reports) {
            if (r.status == "pass") ++pass;
            else if (r.status == "fail") ++fail;
            else ++info;
        }
        std::cout << reports.size() << " checks: " << pass << " pass, " << fail
                  << " fail, " << info << " info\n";
    }
    return ok ? 0 : 1;
}

int cmd_verify(const Options& o) {
    if (!is_suite(o.suite)) {
        std::cerr << "unknown suite '" << o.suite << "'; known suites: all";
        for (const std::string& s : suite_names()) std::cerr << ", " << s;
        std::cerr << "\n";
        return 2;
    }
    const FuchsianGroup group = FuchsianGroup::octagon();
    VerifyConfig cfg;
    cfg.seed = o.seed;
    cfg.samples = count_or(o.samples, 0);
    cfg.grid = o.grid;
    return finish(o, run_suite(o.suite, group, cfg));
}

int cmd_df_sweep(const Options& o) {
    if (!(o.eta_step > 0) || o.eta_max < o.eta_min)
        throw std::invalid_argument("df-sweep: need eta-min <= eta-max, step > 0");
    std::vector<double> etas;
    for (int k = 0;; ++k) {
        const double eta = o.eta_min + k * o.eta_step;
        if (eta > o.eta_max + 1e-12) break;
        etas.push_back(eta);
    }
    const int n = static_cast<int>(count_or(o.samples, 400));
    const std::vector<DfSweepRow> rows = df_sweep(etas, n, o.seed, 0.005, 0.9);
    const double est = df_exponent_estimate();

    std::vector<CheckReport> reports;
    std::ostringstream csv;
    csv << "eta,min_eig,worst_delta\n";
    for (const DfSweepRow& r : rows) {
        reports.push_back(info_vector("df-sweep/eta=" + fmt(r.eta, "%.3f"),
                                      {r.min_eig, r.worst_delta}, n, o.seed));
        csv << fmt(r.eta, "%.3f") << ',' << fmt(r.min_eig, "%.12g") << ','
            << fmt(r.worst_delta, "%.12g") << '\n';
    }
    reports.push_back(info_value("df-sweep/exponent_estimate", est, n, o.seed));
    csv << "# exponent_estimate," << fmt(est, "%.12g") << '\n';
    if (!o.quiet)
        std::cout << "df exponent estimate: " << fmt(est, "%.6g") << "\n";
    return finish(o, std::move(reports), csv.str());
}

int cmd_ergodic_geodesic(const Options& o) {
    const FuchsianGroup group = FuchsianGroup::octagon();
    const EquidistributionResult r =
        equidistribution_experiment(group, o.time, o.dt, o.bins, o.seed);

    std::vector<CheckReport> reports;
    reports.push_back(
        info_value("geodesic/tv_distance", r.tv_distance, r.steps, o.seed));
    reports.push_back(info_vector("geodesic/freqs", r.freqs, r.steps, o.seed));
    reports.push_back(info_vector("geodesic/masses", r.masses, r.steps, o.seed));

    std::ostringstream csv;
    csv << "bin,count,freq,mass\n";
    for (int i = 0; i < static_cast<int>(r.freqs.size()); ++i)
        csv << i << ',' << r.hist.at(i, 0) << ',' << fmt(r.freqs[i], "%.12g")
            << ',' << fmt(r.masses[i], "%.12g") << '\n';
    if (!o.quiet)
        std::cout << "TV distance after " << r.steps
                  << " steps: " << fmt(r.tv_distance, "%.6g") << "\n";
    return finish(o, std::move(reports), csv.str());
}

int cmd_ergodic_orbit(const Options& o) {
    const FuchsianGroup group = FuchsianGroup::octagon();
    const OrbitResult r = boundary_orbit_experiment(
        group, count_or(o.words, 1'000'000), o.length, o.orbit_grid, o.seed);

    std::vector<CheckReport> reports;
    const long long n = count_or(o.words, 1'000'000);
    reports.push_back(info_value("orbit/hit_bins", r.hit_bins, n, o.seed));
    reports.push_back(info_value("orbit/xi_marginal_hit", r.xi_marginal_hit, n, o.seed));
    reports.push_back(
        info_value("orbit/eta_marginal_hit", r.eta_marginal_hit, n, o.seed));
    reports.push_back(info_value("orbit/diagonal_mass", r.diagonal_mass, n, o.seed));
    reports.push_back(
        info_value("orbit/max_pair_separation", r.max_pair_separation, n, o.seed));

    std::ostringstream csv;
    csv << "xi_bin,eta_bin,count\n";
    for (int i = 0; i < r.hist.nx; ++i)
        for (int j = 0; j < r.hist.ny; ++j)
            csv << i << ',' << j << ',' << r.hist.at(i, j) << '\n';
    if (!o.quiet)
        std::cout << "hit " << r.hit_bins << " of " << r.hist.nx * r.hist.ny
                  << " bins; marginals " << r.xi_marginal_hit << "/" << r.hist.nx
                  << " and " << r.eta_marginal_hit << "/" << r.hist.ny
                  << "; diagonal mass " << fmt(r.diagonal_mass, "%.6g") << "\n";
    return finish(o, std::move(reports), csv.str());
}

int cmd_hardy_level(const Options& o) {
    const FuchsianGroup group = FuchsianGroup::octagon();
    const BoundedHoloFn f = holo_by_name(o.f_name);
    const long long n = count_or(o.samples, 1'000'000);
    std::vector<CheckReport> reports;
    std::ostringstream csv;
    csv << "t,estimate,stderr\n";
    for (double t : parse_list(o.t_list)) {
        const LevelIntegral li = level_integral(group, f, t, n, o.seed);
        reports.push_back(info_vector(
            "level-integral/t=" + fmt(t, "%.4g"),
            {li.estimate.value, li.estimate.std_error}, n, o.seed));
        csv << fmt(t, "%.4g") << ',' << fmt(li.estimate.value, "%.12g") << ','
            << fmt(li.estimate.std_error, "%.12g") << '\n';
        if (!o.quiet)
            std::cout << "I(" << fmt(t, "%.4g")
                      << ") = " << fmt(li.estimate.value, "%.8g") << " +- "
                      << fmt(li.estimate.std_error, "%.3g") << "\n";
    }
    if (!o.quiet && o.f_name == "const")
        std::cout << "reference 8 pi^2 = "
                  << fmt(8.0 * std::numbers::pi * std::numbers::pi, "%.8g")
                  << "\n";
    return finish(o, std::move(reports), csv.str());
}

int cmd_hardy_stokes(const Options& o) {
    const BoundedHoloFn f = holo_by_name(o.f_name);
    std::vector<CheckReport> reports;
    std::ostringstream csv;
    csv << "box,grid,closed,interior,boundary,boundary_abs,max_pair_gap\n";
    for (const NamedBox& box : stokes_fixture_boxes()) {
        const BoxBalanceReport rep = box_balance_check(f, box, o.grid);
        reports.push_back(info_vector(
            "stokes/" + box.name,
            {rep.closed_integral, rep.interior, rep.boundary, rep.max_pair_gap},
            1LL * o.grid * o.grid * o.grid * o.grid, o.seed));
        csv << box.name << ',' << rep.grid << ','
            << fmt(rep.closed_integral, "%.12g") << ',' << fmt(rep.interior, "%.12g")
            << ',' << fmt(rep.boundary, "%.12g") << ','
            << fmt(rep.boundary_abs, "%.12g") << ','
            << fmt(rep.max_pair_gap, "%.12g") << '\n';
        if (!o.quiet)
            std::cout << box.name << ": closed=" << fmt(rep.closed_integral, "%.8g")
                      << " interior=" << fmt(rep.interior, "%.8g")
                      << " boundary=" << fmt(rep.boundary, "%.8g")
                      << " gap=" << fmt(rep.max_pair_gap, "%.3g") << "\n";
    }
    return finish(o, std::move(reports), csv.str());
}

int cmd_hardy_trend(const Options& o) {
    const FuchsianGroup group = FuchsianGroup::octagon();
    const BoundedHoloFn f = holo_by_name(o.f_name);
    const long long n = count_or(o.samples, 200'000);
    const std::vector<double> ts = parse_list(o.t_list);
    const std::vector<TrendRow> rows =
        gradient_boundary_trend(group, f, ts, n, o.seed);
    std::vector<CheckReport> reports;
    std::ostringstream csv;
    csv << "t,estimate,stderr\n";
    for (const TrendRow& r : rows) {
        reports.push_back(info_vector(
            "trend/t=" + fmt(r.t, "%.4g"),
            {r.estimate.value, r.estimate.std_error}, n, o.seed));
        csv << fmt(r.t, "%.4g") << ',' << fmt(r.estimate.value, "%.12g") << ','
            << fmt(r.estimate.std_error, "%.12g") << '\n';
        if (!o.quiet)
            std::cout << "J(" << fmt(r.t, "%.4g")
                      << ") = " << fmt(r.estimate.value, "%.8g") << " +- "
                      << fmt(r.estimate.std_error, "%.3g") << "\n";
    }
    return finish(o, std::move(reports), csv.str());
}

int cmd_area(const Options& o) {
    const FuchsianGroup group = FuchsianGroup::octagon();
    const long long n = count_or(o.samples, 10'000'000);
    const McEstimate est =
        group.domain_area(n, derive_seed(o.seed, "area"), 8);
    const double target = 2.0 * std::numbers::pi;
    std::vector<CheckReport> reports;
    reports.push_back(check_close("area/gauss_bonnet", est.value, target,
                                  3.0 * est.std_error, est.samples, o.seed));
    reports.push_back(info_value("area/stderr", est.std_error, est.samples, o.seed));
    std::ostringstream csv;
    csv << "estimate,stderr,target\n"
        << fmt(est.value, "%.12g") << ',' << fmt(est.std_error, "%.12g") << ','
        << fmt(target, "%.12g") << '\n';
    if (!o.quiet)
        std::cout << "area estimate " << fmt(est.value, "%.8g") << " +- "
                  << fmt(est.std_error, "%.3g") << " (target 2 pi = "
                  << fmt(target, "%.8g") << ")\n";
    return finish(o, std::move(reports), csv.str());
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"numerical checks for the Grauert-tube bidisk quotient"};
    app.require_subcommand(0, 1);

    auto* seed_opt = app.add_option("--seed", o.seed, "root seed (u64)");
    auto* samp_opt =
        app.add_option("--samples", o.samples, "sample count (accepts 1e6)");
    auto* json_opt = app.add_option("--json", o.json_path, "write JSON report");
    auto* csv_opt = app.add_option("--csv", o.csv_path, "write CSV table");
    app.add_option("--config", o.config_path, "flat JSON config file");
    auto* quiet_opt = app.add_flag("--quiet", o.quiet, "suppress human output");

    bind_cfg("seed", seed_opt, [&](const nlohmann::json& v) { o.seed = v.get<std::uint64_t>(); });
    bind_cfg("samples", samp_opt, [&](const nlohmann::json& v) { o.samples = v.get<double>(); });
    bind_cfg("json", json_opt, [&](const nlohmann::json& v) { o.json_path = v.get<std::string>(); });
    bind_cfg("csv", csv_opt, [&](const nlohmann::json& v) { o.csv_path = v.get<std::string>(); });
    bind_cfg("quiet", quiet_opt, [&](const nlohmann::json& v) { o.quiet = v.get<bool>(); });

    CLI::App* verify = app.add_subcommand("verify", "run named check suites");
    verify->fallthrough();
    auto* suite_opt = verify->add_option("--suite", o.suite, "suite name or 'all'");
    auto* grid_opt =
        verify->add_option("--grid", o.grid, "Stokes quadrature resolution");
    bind_cfg("suite", suite_opt, [&](const nlohmann::json& v) { o.suite = v.get<std::string>(); });
    bind_cfg("grid", grid_opt, [&](const nlohmann::json& v) { o.grid = v.get<int>(); });

    CLI::App* dfs = app.add_subcommand("df-sweep", "eta sweep of the exponent scan");
    dfs->fallthrough();
    auto* emin = dfs->add_option("--eta-min", o.eta_min, "lowest eta");
    auto* emax = dfs->add_option("--eta-max", o.eta_max, "highest eta");
    auto* estep = dfs->add_option("--step", o.eta_step, "eta increment");
    bind_cfg("eta-min", emin, [&](const nlohmann::json& v) { o.eta_min = v.get<double>(); });
    bind_cfg("eta-max", emax, [&](const nlohmann::json& v) { o.eta_max = v.get<double>(); });
    bind_cfg("step", estep, [&](const nlohmann::json& v) { o.eta_step = v.get<double>(); });

    CLI::App* erg = app.add_subcommand("ergodic", "flow and orbit experiments");
    erg->fallthrough();
    erg->require_subcommand(1);
    CLI::App* geo = erg->add_subcommand("geodesic", "equidistribution run");
    geo->fallthrough();
    auto* time_opt = geo->add_option("--time", o.time, "total flow time");
    auto* dt_opt = geo->add_option("--dt", o.dt, "step size");
    auto* bins_opt = geo->add_option("--bins", o.bins, "angular sectors");
    bind_cfg("time", time_opt, [&](const nlohmann::json& v) { o.time = v.get<double>(); });
    bind_cfg("dt", dt_opt, [&](const nlohmann::json& v) { o.dt = v.get<double>(); });
    bind_cfg("bins", bins_opt, [&](const nlohmann::json& v) { o.bins = v.get<int>(); });
    CLI::App* orb = erg->add_subcommand("orbit", "boundary orbit histogram");
    orb->fallthrough();
    auto* words_opt = orb->add_option("--words", o.words, "word count (accepts 1e6)");
    auto* len_opt = orb->add_option("--length", o.length, "word length");
    auto* ogrid_opt = orb->add_option("--grid", o.orbit_grid, "bins per angle");
    bind_cfg("words", words_opt, [&](const nlohmann::json& v) { o.words = v.get<double>(); });
    bind_cfg("length", len_opt, [&](const nlohmann::json& v) { o.length = v.get<int>(); });
    bind_cfg("orbit-grid", ogrid_opt, [&](const nlohmann::json& v) { o.orbit_grid = v.get<int>(); });

    CLI::App* hardy = app.add_subcommand("hardy", "level integrals and Stokes checks");
    hardy->fallthrough();
    hardy->require_subcommand(1);
    CLI::App* lvl = hardy->add_subcommand("level-integral", "Monte Carlo I(t)");
    lvl->fallthrough();
    auto* f_opt = lvl->add_option("--f", o.f_name, "test function name");
    auto* t_opt = lvl->add_option("--t", o.t_list, "comma list of t values");
    CLI::App* hst = hardy->add_subcommand("stokes", "integration-identity box balance");
    hst->fallthrough();
    auto* f2_opt = hst->add_option("--f", o.f_name, "test function name");
    auto* grid2_opt = hst->add_option("--grid", o.grid, "quadrature resolution");
    CLI::App* trend = hardy->add_subcommand("trend", "gradient boundary trend J(t)");
    trend->fallthrough();
    auto* f3_opt = trend->add_option("--f", o.f_name, "test function name");
    auto* t3_opt = trend->add_option("--t", o.t_list, "comma list of t values");
    bind_cfg("f", f_opt, [&](const nlohmann::json& v) { o.f_name = v.get<std::string>(); });
    bind_cfg("f", f2_opt, [&](const nlohmann::json& v) { o.f_name = v.get<std::string>(); });
    bind_cfg("f", f3_opt, [&](const nlohmann::json& v) { o.f_name = v.get<std::string>(); });
    bind_cfg("t", t_opt, [&](const nlohmann::json& v) { o.t_list = v.get<std::string>(); });
    bind_cfg("t", t3_opt, [&](const nlohmann::json& v) { o.t_list = v.get<std::string>(); });
    bind_cfg("grid", grid2_opt, [&](const nlohmann::json& v) { o.grid = v.get<int>(); });

    CLI::App* area = app.add_subcommand("area", "fundamental domain area");
    area->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!o.config_path.empty()) apply_config(o.config_path);

        if (*verify) return cmd_verify(o);
        if (*dfs) return cmd_df_sweep(o);
        if (*erg) {
            if (*geo) return cmd_ergodic_geodesic(o);
            return cmd_ergodic_orbit(o);
        }
        if (*hardy) {
            if (*lvl) return cmd_hardy_level(o);
            if (*hst) return cmd_hardy_stokes(o);
            return cmd_hardy_trend(o);
        }
        if (*area) return cmd_area(o);

        std::cerr << app.help();
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
