// Python bindings for the main operations: the invariant defining function,
// the Levi spectra, the exponent scan, the group geometry, and the Monte
// Carlo experiments. Heavier batch work should go through run_suite_json or
// the CLI; these entry points are for interactive poking.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gtube/ergodic.hpp"
#include "gtube/hardy.hpp"
#include "gtube/report.hpp"
#include "gtube/suites.hpp"
#include "gtube/tube.hpp"

namespace py = pybind11;
using namespace gtube;

namespace {

const FuchsianGroup& shared_group() {
    static FuchsianGroup g = FuchsianGroup::octagon();
    return g;
}

TubeFunction tube_function_by_name(const std::string& name) {
    if (name == "minus_log_delta") return TubeFunction::MinusLogDelta;
    if (name == "rho") return TubeFunction::Rho;
    if (name == "rho_squared") return TubeFunction::RhoSquared;
    if (name == "minus_sqrt_delta") return TubeFunction::MinusSqrtDelta;
    throw std::invalid_argument(
        "unknown tube function '" + name +
        "' (minus_log_delta | rho | rho_squared | minus_sqrt_delta)");
}

py::dict levi_dict(const HermitianForm2& h) {
    py::dict d;
    d["h11"] = h.h11;
    d["h12"] = h.h12;
    d["h21"] = h.h21;
    d["h22"] = h.h22;
    d["min_eig"] = min_eigenvalue(h);
    d["max_eig"] = max_eigenvalue(h);
    d["det"] = ma_det(h);
    return d;
}

} // namespace

PYBIND11_MODULE(_gtube, m) {
    m.doc() = "numerical verification kernels for the Grauert tube over the "
              "genus-2 bidisk quotient";

    m.def(
        "delta", [](Complex z, Complex w) { return delta({z, w}); }, py::arg("z"),
        py::arg("w"),
        "Invariant defining function (1-|z|^2)(1-|w|^2)/|1-zw|^2 of the tube.");
    m.def(
        "rho", [](Complex z, Complex w) { return rho({z, w}); }, py::arg("z"),
        py::arg("w"), "Exhaustion rho = arccos(sqrt(delta)), in [0, pi/2).");
    m.def(
        "core_distance", [](Complex z, Complex w) { return core_distance({z, w}); },
        py::arg("z"), py::arg("w"),
        "Hyperbolic distance from w to conj(z); delta = sech^2(d/2).");

    m.def(
        "levi",
        [](const std::string& fn, Complex z, Complex w) {
            return levi_dict(levi_closed(tube_function_by_name(fn), {z, w}));
        },
        py::arg("function"), py::arg("z"), py::arg("w"),
        "Closed-form Levi matrix of the named potential at (z, w), with its "
        "spectrum and determinant.");
    m.def(
        "df_levi",
        [](double eta, Complex z, Complex w) {
            return levi_dict(df_levi(eta, {z, w}));
        },
        py::arg("eta"), py::arg("z"), py::arg("w"),
        "Levi matrix of -delta^eta; positive definite iff eta < 1/(2(1-delta)).");
    m.def("df_exponent_estimate", [] { return df_exponent_estimate(); },
          "Largest eta keeping -delta^eta plurisubharmonic on the scan grid; "
          "sharp value 1/2.");

    m.def(
        "octagon_stats",
        [] {
            const FuchsianGroup& g = shared_group();
            py::dict d;
            d["circumradius"] = g.circumradius();
            d["apothem"] = g.apothem();
            d["translation_length"] = g.translation_length();
            d["vertex_angle_sum"] = g.vertex_angle_sum();
            d["side_pairing_defect"] = g.max_side_pairing_defect();
            return d;
        },
        "Geometry of the fundamental octagon and its side-pairing generators.");
    m.def(
        "reduce",
        [](Complex z) {
            const FuchsianGroup::Reduction r = shared_group().reduce(z);
            return py::make_tuple(r.point, r.word.length());
        },
        py::arg("z"),
        "Reduce z to the Dirichlet domain; returns (point, word length).");
    m.def(
        "domain_area",
        [](long long samples, std::uint64_t seed) {
            const McEstimate e = shared_group().domain_area(samples, seed, 8);
            return py::make_tuple(e.value, e.std_error);
        },
        py::arg("samples") = 1000000, py::arg("seed") = 7,
        "Monte Carlo hyperbolic area of the fundamental domain (2 pi by "
        "Gauss-Bonnet); returns (value, std_error).");

    m.def(
        "level_integral",
        [](const std::string& f, double t, long long samples, std::uint64_t seed) {
            const LevelIntegral li =
                level_integral(shared_group(), holo_by_name(f), t, samples, seed);
            return py::make_tuple(li.estimate.value, li.estimate.std_error);
        },
        py::arg("f") = "const", py::arg("t") = 1.0, py::arg("samples") = 200000,
        py::arg("seed") = 7,
        "Monte Carlo of the level-set integral I(t); 8 pi^2 for f = const.");
    m.def(
        "tv_distance",
        [](double T, double dt, int bins, std::uint64_t seed) {
            return equidistribution_experiment(shared_group(), T, dt, bins, seed)
                .tv_distance;
        },
        py::arg("time") = 10000.0, py::arg("dt") = 0.1, py::arg("bins") = 8,
        py::arg("seed") = 7,
        "Total-variation gap between geodesic visit frequencies and the "
        "hyperbolic cell masses.");

    m.def(
        "run_suite_json",
        [](const std::string& suite, std::uint64_t seed, long long samples,
           int grid) {
            VerifyConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.grid = grid;
            return reports_to_json(run_suite(suite, shared_group(), cfg));
        },
        py::arg("suite") = "all", py::arg("seed") = 7, py::arg("samples") = 0,
        py::arg("grid") = 24,
        "Run a verification suite and return its reports as a JSON array "
        "string (same schema as the CLI).");
    m.def("suite_names", [] { return suite_names(); },
          "Names accepted by run_suite_json, besides 'all'.");
}
