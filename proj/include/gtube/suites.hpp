#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtube/fuchsian.hpp"
#include "gtube/report.hpp"

namespace gtube {

struct VerifyConfig {
    std::uint64_t seed = 7;
    long long samples = 0; // 0 = per-check defaults
    int grid = 24;         // Stokes quadrature resolution
};

/// Suite names in canonical order (without "all").
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one named suite; "all" runs every suite. Throws std::invalid_argument
/// for unknown names. Deterministic for fixed (name, seed, samples, grid).
std::vector<CheckReport> run_suite(const std::string& name,
                                   const FuchsianGroup& group,
                                   const VerifyConfig& cfg);

} // namespace gtube
