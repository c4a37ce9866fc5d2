#include "gtube/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace gtube {

CheckReport check_close(std::string name, double value, double expected,
                        double tolerance, long long samples, std::uint64_t seed) {
    CheckReport r;
    r.name = std::move(name);
    r.status = std::abs(value - expected) <= tolerance ? "pass" : "fail";
    r.value = {value};
    r.has_expected = true;
    r.expected_lo = r.expected_hi = expected;
    r.has_tolerance = true;
    r.tolerance = tolerance;
    r.samples = samples;
    r.seed = seed;
    return r;
}

CheckReport check_in(std::string name, double value, double lo, double hi,
                     long long samples, std::uint64_t seed) {
    CheckReport r;
    r.name = std::move(name);
    r.status = (value >= lo && value <= hi) ? "pass" : "fail";
    r.value = {value};
    r.has_expected = true;
    r.expected_lo = lo;
    r.expected_hi = hi;
    r.samples = samples;
    r.seed = seed;
    return r;
}

CheckReport info_value(std::string name, double value, long long samples,
                       std::uint64_t seed) {
    return info_vector(std::move(name), std::vector<double>{value}, samples, seed);
}

CheckReport info_vector(std::string name, std::vector<double> value,
                        long long samples, std::uint64_t seed) {
    CheckReport r;
    r.name = std::move(name);
    r.status = "info";
    r.value = std::move(value);
    r.samples = samples;
    r.seed = seed;
    return r;
}

bool all_pass(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const CheckReport& r) { return r.status != "fail"; });
}

namespace {

void sort_by_name(std::vector<CheckReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const CheckReport& a, const CheckReport& b) {
                         return a.name < b.name;
                     });
}

} // namespace

std::string reports_to_json(std::vector<CheckReport> reports) {
    sort_by_name(reports);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckReport& r : reports) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["name"] = r.name;
        j["status"] = r.status;
        if (r.value.size() == 1) {
            j["value"] = r.value[0];
        } else {
            j["value"] = r.value;
        }
        if (!r.has_expected) {
            j["expected"] = nullptr;
        } else if (r.expected_lo == r.expected_hi) {
            j["expected"] = r.expected_lo;
        } else {
            j["expected"] = {r.expected_lo, r.expected_hi};
        }
        if (r.has_tolerance) {
            j["tolerance"] = r.tolerance;
        } else {
            j["tolerance"] = nullptr;
        }
        j["samples"] = r.samples;
        j["seed"] = r.seed;
        j["runtime_ms"] = 0;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

namespace {

std::string num(double x) {
    // shortest round-trip via the JSON serializer keeps CSV and JSON consistent
    return nlohmann::ordered_json(x).dump();
}

} // namespace

std::string reports_to_csv(std::vector<CheckReport> reports) {
    sort_by_name(reports);
    std::ostringstream out;
    out << "name,status,value,expected_lo,expected_hi,tolerance,samples,seed,runtime_ms\n";
    for (const CheckReport& r : reports) {
        out << r.name << ',' << r.status << ',';
        for (std::size_t i = 0; i < r.value.size(); ++i) {
            if (i) out << ';';
            out << num(r.value[i]);
        }
        out << ',';
        if (r.has_expected) out << num(r.expected_lo);
        out << ',';
        if (r.has_expected) out << num(r.expected_hi);
        out << ',';
        if (r.has_tolerance) out << num(r.tolerance);
        out << ',' << r.samples << ',' << r.seed << ",0\n";
    }
    return out.str();
}

std::string reports_to_table(std::vector<CheckReport> reports) {
    sort_by_name(reports);
    std::size_t width = 4;
    for (const CheckReport& r : reports) width = std::max(width, r.name.size());
    std::ostringstream out;
    for (const CheckReport& r : reports) {
        out << r.name << std::string(width - r.name.size() + 2, ' ')
            << r.status << (r.status.size() == 4 ? "  " : " ");
        out << " value=";
        for (std::size_t i = 0; i < r.value.size(); ++i) {
            if (i) out << ';';
            out << num(r.value[i]);
        }
        if (r.has_expected) {
            if (r.expected_lo == r.expected_hi) {
                out << "  expected=" << num(r.expected_lo);
            } else {
                out << "  expected=[" << num(r.expected_lo) << ','
                    << num(r.expected_hi) << ']';
            }
        }
        if (r.has_tolerance) out << "  tol=" << num(r.tolerance);
        out << "  n=" << r.samples << '\n';
    }
    return out.str();
}

} // namespace gtube
