#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gtube {

/// One named check. `expected` is an interval (scalar = degenerate interval);
/// info entries carry no expected value and never fail.
struct CheckReport {
    std::string name;
    std::string status; // "pass" | "fail" | "info"
    std::vector<double> value;
    bool has_expected = false;
    double expected_lo = 0.0;
    double expected_hi = 0.0;
    bool has_tolerance = false;
    double tolerance = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
    long long runtime_ms = 0; // kept at 0 so reruns are byte-identical
};

/// pass iff |value - expected| <= tolerance.
CheckReport check_close(std::string name, double value, double expected,
                        double tolerance, long long samples, std::uint64_t seed);

/// pass iff lo <= value <= hi.
CheckReport check_in(std::string name, double value, double lo, double hi,
                     long long samples, std::uint64_t seed);

CheckReport info_value(std::string name, double value, long long samples,
                       std::uint64_t seed);
CheckReport info_vector(std::string name, std::vector<double> value,
                        long long samples, std::uint64_t seed);

bool all_pass(const std::vector<CheckReport>& reports);

/// Serializers sort by name first; schema field is additive ("schema": 1).
std::string reports_to_json(std::vector<CheckReport> reports);
std::string reports_to_csv(std::vector<CheckReport> reports);
std::string reports_to_table(std::vector<CheckReport> reports);

} // namespace gtube
