#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <numbers>

#include "gtube/moebius.hpp"

namespace gtube {

/// Deterministic splitmix64 generator. Standard library distributions are not
/// bit-reproducible across implementations, so uniforms are produced here from
/// raw 53-bit mantissas. Same seed, same platform-independent stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t x = (state_ += 0x9E3779B97F4A7C15ULL);
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

    /// Uniform w.r.t. Euclidean area on the disk of the given radius.
    Complex disk(double radius = 1.0) {
        const double r = radius * std::sqrt(uniform());
        const double t = uniform(0.0, 2.0 * std::numbers::pi);
        return Complex(r * std::cos(t), r * std::sin(t));
    }

    Complex circle() {
        const double t = uniform(0.0, 2.0 * std::numbers::pi);
        return Complex(std::cos(t), std::sin(t));
    }

private:
    std::uint64_t state_;
};

/// Task seeds derive from one root seed: FNV-1a of the task label, mixed with
/// the root. Distinct labels give independent streams; reruns are identical.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view task) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : task) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    h ^= root + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    // one splitmix finalization round
    h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ULL;
    h = (h ^ (h >> 27)) * 0x94D049BB133111EBULL;
    return h ^ (h >> 31);
}

/// Neumaier compensated accumulator; keeps long Monte Carlo sums stable and
/// independent of optimization level.
class Accumulator {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double total() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long samples = 0;
};

} // namespace gtube
