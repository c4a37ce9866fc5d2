#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gtube/moebius.hpp"
#include "gtube/rng.hpp"

namespace gtube {

/// One letter of a word in the group: generator index 0..3, exponent +-1.
struct Letter {
    int gen;
    int exp;
};

struct GroupWord {
    std::vector<Letter> letters;

    std::size_t length() const { return letters.size(); }

    GroupWord inverse() const {
        GroupWord w;
        w.letters.reserve(letters.size());
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            w.letters.push_back({it->gen, -it->exp});
        return w;
    }
};

/// Cocompact genus-2 surface group: side pairings of the regular hyperbolic
/// octagon centered at 0 with vertex angles pi/4 (opposite sides identified).
/// Generator k translates along the axis through 0 at angle k*pi/4.
class FuchsianGroup {
public:
    /// Builds the group. The circumradius is found by bisection on the
    /// numerically measured vertex angle (target pi/4); nothing is hard-coded.
    /// Construction self-validates: angle sum, side pairings, vertex cycle.
    static FuchsianGroup octagon();

    const DiskMoebius& generator(int k) const { return gens_[k]; }

    DiskMoebius letter_transform(const Letter& l) const {
        return l.exp > 0 ? gens_[l.gen] : gens_[l.gen].inverse();
    }

    /// Ordered composition of the letters (first letter outermost). Meant for
    /// short words: beyond length ~15 the normalized pair loses precision to
    /// entry growth; long words should be applied to points letter-by-letter.
    DiskMoebius evaluate(const GroupWord& w) const;

    /// Applies the word to a boundary or interior point letter-by-letter,
    /// renormalizing boundary points; stable for arbitrary lengths.
    Complex apply_word(const GroupWord& w, Complex z, bool on_circle) const;

    /// Octagon geometry (Euclidean circumradius, vertices at (2k+1)pi/8).
    double circumradius() const { return circumradius_; }
    const std::array<Complex, 8>& vertices() const { return vertices_; }
    double vertex_angle_sum() const { return angle_sum_; }
    double apothem() const { return apothem_; }
    double translation_length() const { return 2.0 * apothem_; }
    const DiskMoebius& vertex_cycle_product() const { return vertex_cycle_; }
    double max_side_pairing_defect() const { return pairing_defect_; }

    /// Dirichlet test at 0 against the 8 generator/inverse images; ties count
    /// as inside.
    bool in_fundamental_domain(Complex z, double tol = 1e-12) const;

    struct Reduction {
        Complex point;
        GroupWord word; ///< point = word^{-1} . z for the input z
        int iterations = 0;
    };

    /// Greedy distance descent to the Dirichlet domain. Throws
    /// std::runtime_error after 10^4 iterations (numerical stall).
    Reduction reduce(Complex z) const;

    /// Uniform letters with immediate backtracking disallowed.
    GroupWord random_word(int length, Rng& rng) const;

    /// Monte Carlo of the area form i dz ^ dzbar / (1-|z|^2)^2 over the
    /// domain (expected: 2*pi by Gauss-Bonnet). Rejection sampling from the
    /// circumdisk, sharded with derived sub-seeds; result depends only on
    /// (seed, shards).
    McEstimate domain_area(long long samples, std::uint64_t seed, int shards = 1) const;

    /// Density of that area form against Euclidean dx dy.
    static double area_density(Complex z) {
        const double s = 1.0 - std::norm(z);
        return 2.0 / (s * s);
    }

private:
    FuchsianGroup() = default;
    void build();

    std::array<DiskMoebius, 4> gens_;
    std::array<DiskMoebius, 8> gens_and_inverses_;
    std::array<Complex, 8> orbit_of_zero_;
    std::array<Complex, 8> vertices_;
    DiskMoebius vertex_cycle_;
    double circumradius_ = 0.0;
    double apothem_ = 0.0;
    double angle_sum_ = 0.0;
    double pairing_defect_ = 0.0;
};

} // namespace gtube
