#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "gtube/moebius.hpp"

namespace gtube {

/// Real coordinates (x1, y1, x2, y2) for (z, w) = (x1 + i y1, x2 + i y2).
using R4 = std::array<double, 4>;

inline R4 to_r4(const BidiskPoint& p) {
    return {p.z.real(), p.z.imag(), p.w.real(), p.w.imag()};
}
inline BidiskPoint to_bidisk(const R4& x) {
    return {Complex(x[0], x[1]), Complex(x[2], x[3])};
}

using ScalarField = std::function<Complex(const BidiskPoint&)>;

/// First Wirtinger derivatives (d/dz, d/dw, d/dzbar, d/dwbar).
struct WirtingerGradient {
    Complex dz, dw, dzb, dwb;
};

/// Central differences with one Richardson level; step
/// h = max(1e-5, 1e-5 |coordinate|). Throws std::domain_error when the
/// stencil would leave the open bidisk.
WirtingerGradient wirtinger_gradient(const ScalarField& f, const BidiskPoint& p);

/// Coefficient matrix h_{j kbar} of a (1,1)-form i * sum h_{j kbar}
/// dzeta_j ^ dzetabar_k on the bidisk.
struct HermitianForm2 {
    Complex h11{0.0}, h12{0.0}, h21{0.0}, h22{0.0};

    static HermitianForm2 diagonal(double d1, double d2) {
        return {Complex(d1), Complex(0.0), Complex(0.0), Complex(d2)};
    }

    HermitianForm2 hermitized() const {
        return {0.5 * (h11 + std::conj(h11)), 0.5 * (h12 + std::conj(h21)),
                0.5 * (h21 + std::conj(h12)), 0.5 * (h22 + std::conj(h22))};
    }

    double hermitian_defect() const {
        return std::abs(h12 - std::conj(h21)) + std::abs(h11.imag()) + std::abs(h22.imag());
    }

    double frobenius() const {
        return std::sqrt(std::norm(h11) + std::norm(h12) + std::norm(h21) + std::norm(h22));
    }

    double max_entry_gap(const HermitianForm2& o) const {
        return std::max(std::max(std::abs(h11 - o.h11), std::abs(h12 - o.h12)),
                        std::max(std::abs(h21 - o.h21), std::abs(h22 - o.h22)));
    }
};

/// Mixed second Wirtinger derivatives d^2 f / dzeta_j dzetabar_k by nested
/// central differences with one Richardson level (step 1e-3 * max(1, |x|)),
/// Hermitian-symmetrized. Target error ~1e-6 away from the bidisk boundary.
HermitianForm2 complex_hessian(const ScalarField& f, const BidiskPoint& p);

/// det of the Hermitian 2x2 (real for Hermitian input).
double ma_det(const HermitianForm2& h);

/// Smaller eigenvalue via the closed form (tr - sqrt(tr^2 - 4 det)) / 2.
double min_eigenvalue(const HermitianForm2& h);
double max_eigenvalue(const HermitianForm2& h);

/// Hermitian form applied to a tangent vector: sum h_{j kbar} v_j conj(v_k).
double quadratic_form(const HermitianForm2& h, Complex v1, Complex v2);

// ---------------------------------------------------------------------------
// Differential forms with numeric coefficients.
// ---------------------------------------------------------------------------

/// Coefficient vector of a degree-k form at a point; entries are indexed by
/// the strictly increasing multi-indices of {0..dim-1} in lexicographic order
/// (at most C(4,2) = 6 of them).
struct CoeffVec {
    std::array<Complex, 6> c{};
    int n = 0;
};

/// The increasing multi-indices of size k in {0..dim-1}, lexicographic.
const std::vector<std::vector<int>>& multi_indices(int dim, int k);

/// Differential form of fixed degree on a dim-dimensional domain (dim <= 4),
/// with complex coefficient functions. Operations build lazy closures.
class FormField {
public:
    using Eval = std::function<CoeffVec(const std::array<double, 4>&)>;

    FormField(int dim, int degree, Eval eval);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int n_components() const { return n_components_; }

    CoeffVec coefficients(const std::array<double, 4>& x) const { return eval_(x); }
    CoeffVec coefficients(const BidiskPoint& p) const { return eval_(to_r4(p)); }

private:
    int dim_;
    int degree_;
    int n_components_;
    Eval eval_;
};

/// Constant 1-forms dz, dzbar, dw, dwbar on R^4 (complex coefficients).
FormField const_dz();
FormField const_dzbar();
FormField const_dw();
FormField const_dwbar();

/// 1-form from closed-form Wirtinger data: g.dz dz + g.dw dw + g.dzb dzbar
/// + g.dwb dwbar, converted to the real coordinate basis.
FormField one_form(std::function<WirtingerGradient(const BidiskPoint&)> g);

/// The (1,1)-form i * sum h_{j kbar} dzeta_j ^ dzetabar_k as a real 2-form.
FormField two_form(std::function<HermitianForm2(const BidiskPoint&)> h);

/// Exterior derivative by central differences of the coefficients with one
/// Richardson level (step policy as the gradient).
FormField d(const FormField& w);

/// d^c f = (i/2)(dbar - d) applied to a scalar, i.e. (1/2i)(d - dbar);
/// coefficients from wirtinger_gradient. dd^c f = i d dbar f.
FormField dc(const ScalarField& f);

/// d^c from closed-form Wirtinger data (no finite differences).
FormField dc_closed(std::function<WirtingerGradient(const BidiskPoint&)> g);

FormField wedge(const FormField& a, const FormField& b);
FormField add(const FormField& a, const FormField& b);
FormField scale(const FormField& a, std::function<Complex(const BidiskPoint&)> s);
FormField scale(const FormField& a, Complex c);

/// Pullback under phi: R^source_dim -> R^4 with a numerically differentiated
/// Jacobian (central differences, relative target 1e-6). phi receives the
/// first source_dim entries of its argument; the rest are zero.
FormField pullback(const FormField& w,
                   std::function<R4(const std::array<double, 4>&)> phi,
                   int source_dim);

/// Axis-aligned box in R^4.
struct Box4 {
    R4 lo, hi;
    bool contained_in_bidisk(double slack = 0.0) const;
    double volume() const;
};

struct StokesReport {
    double interior = 0.0;    ///< integral of the finite-difference d(omega)
    double boundary = 0.0;    ///< integral of omega over the oriented boundary
    double gap = 0.0;         ///< |interior - boundary| / max(|..|, 1e-12)
    double boundary_abs = 0.0; ///< integral of |integrand| (cancellation scale)
};

/// Midpoint-rule check of Stokes' theorem for a 3-form on a box; grid is the
/// number of cells per axis (>= 4 or std::invalid_argument). Interior uses
/// grid^4 cells, each face grid^3. Real parts are integrated (the forms in
/// this library are real); compensated summation throughout.
StokesReport stokes_check(const FormField& omega3, const Box4& box, int grid);

/// Midpoint quadrature of the top component of a 4-form over a box.
double integrate_4form(const FormField& omega4, const Box4& box, int grid);

} // namespace gtube
