#pragma once

#include <complex>
#include <stdexcept>

namespace gtube {

using Complex = std::complex<double>;

/// A point (z, w) of the bidisk D x D.
struct BidiskPoint {
    Complex z;
    Complex w;
};

inline bool in_unit_disk(Complex z, double slack = 0.0) {
    return std::norm(z) < (1.0 - slack) * (1.0 - slack);
}

inline bool in_bidisk(const BidiskPoint& p, double slack = 0.0) {
    return in_unit_disk(p.z, slack) && in_unit_disk(p.w, slack);
}

/// Holomorphic automorphism of the unit disk, stored as the normalized pair
/// (a, b) with |a|^2 - |b|^2 = 1, acting by z -> (a z + b) / (conj(b) z + conj(a)).
/// Two pairs describe the same map iff they agree up to a global sign.
class DiskMoebius {
public:
    DiskMoebius() : a_(1.0, 0.0), b_(0.0, 0.0) {}

    /// Normalizes (a, b). Rejects input that is not (a positive multiple of)
    /// a disk automorphism: |a| <= |b| or non-finite entries.
    DiskMoebius(Complex a, Complex b) : a_(a), b_(b) {
        const double n2 = std::norm(a_) - std::norm(b_);
        if (!(n2 > 0.0) || !std::isfinite(n2))
            throw std::invalid_argument("DiskMoebius: |a|^2 - |b|^2 must be positive");
        const double n = std::sqrt(n2);
        a_ /= n;
        b_ /= n;
    }

    static DiskMoebius identity() { return DiskMoebius(); }

    Complex a() const { return a_; }
    Complex b() const { return b_; }

    /// Valid on the closed disk; boundary circle maps to the boundary circle.
    Complex apply(Complex z) const {
        return (a_ * z + b_) / (std::conj(b_) * z + std::conj(a_));
    }

    /// The conjugated action w -> conj(m(conj w)) = (conj(a) w + conj(b)) / (b w + a).
    Complex conj_apply(Complex w) const {
        return (std::conj(a_) * w + std::conj(b_)) / (b_ * w + a_);
    }

    /// m'(z) = 1 / (conj(b) z + conj(a))^2.
    Complex derivative(Complex z) const {
        const Complex d = std::conj(b_) * z + std::conj(a_);
        return 1.0 / (d * d);
    }

    DiskMoebius inverse() const {
        DiskMoebius m;
        m.a_ = std::conj(a_);
        m.b_ = -b_;
        return m;
    }

    double normalization_defect() const {
        return std::abs(std::norm(a_) - std::norm(b_) - 1.0);
    }

    /// m1 after m2 (matrix product of the associated SU(1,1) representatives).
    friend DiskMoebius compose(const DiskMoebius& m1, const DiskMoebius& m2) {
        return DiskMoebius(m1.a_ * m2.a_ + m1.b_ * std::conj(m2.b_),
                           m1.a_ * m2.b_ + m1.b_ * std::conj(m2.a_));
    }

private:
    Complex a_, b_;
};

/// Equality in the automorphism group: (a, b) == +-(a', b') entrywise within tol.
inline bool approx_equal_up_to_sign(const DiskMoebius& m1, const DiskMoebius& m2,
                                    double tol = 1e-12) {
    const double plus = std::abs(m1.a() - m2.a()) + std::abs(m1.b() - m2.b());
    const double minus = std::abs(m1.a() + m2.a()) + std::abs(m1.b() + m2.b());
    return std::min(plus, minus) <= tol;
}

/// The twisted diagonal action on the bidisk: g.(z, w) = (g z, conj(g(conj w))).
inline BidiskPoint act_bidisk(const DiskMoebius& g, const BidiskPoint& p) {
    return {g.apply(p.z), g.conj_apply(p.w)};
}

/// Distance in the curvature -1 metric 4|dz|^2/(1-|z|^2)^2:
/// d = log((1+r)/(1-r)) with r the pseudo-hyperbolic distance.
inline double hyperbolic_distance(Complex z1, Complex z2) {
    const double r = std::abs((z1 - z2) / (1.0 - std::conj(z1) * z2));
    return std::log((1.0 + r) / (1.0 - r));
}

} // namespace gtube
