#include "gtube/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gtube/rng.hpp"

namespace gtube {
namespace {

double fd_step(double x, double scale) {
    return std::max(scale, scale * std::abs(x));
}

// Steps used on the two real coordinates of one complex variable; the stencil
// must stay inside the open disk.
void require_room(Complex zeta, double hx, double hy, const char* who) {
    double reach = std::hypot(std::abs(zeta.real()) + hx, std::abs(zeta.imag()) + hy);
    if (!(reach < 1.0))
        throw std::domain_error(std::string(who) + ": finite-difference stencil leaves the bidisk");
}

Complex richardson1(Complex ph, Complex mh, Complex ph2, Complex mh2, double h) {
    Complex d1 = (ph - mh) / (2.0 * h);
    Complex d2 = (ph2 - mh2) / h;
    return (4.0 * d2 - d1) / 3.0;
}

CoeffVec cv_richardson(const CoeffVec& ph, const CoeffVec& mh, const CoeffVec& ph2,
                       const CoeffVec& mh2, double h) {
    CoeffVec r;
    r.n = ph.n;
    for (int j = 0; j < ph.n; ++j)
        r.c[j] = richardson1(ph.c[j], mh.c[j], ph2.c[j], mh2.c[j], h);
    return r;
}

double det_minor(const double J[4][4], const std::vector<int>& rows,
                 const std::vector<int>& cols) {
    int k = static_cast<int>(rows.size());
    switch (k) {
        case 1:
            return J[rows[0]][cols[0]];
        case 2:
            return J[rows[0]][cols[0]] * J[rows[1]][cols[1]] -
                   J[rows[0]][cols[1]] * J[rows[1]][cols[0]];
        case 3: {
            double a = J[rows[0]][cols[0]], b = J[rows[0]][cols[1]], c = J[rows[0]][cols[2]];
            double d0 = J[rows[1]][cols[0]], e = J[rows[1]][cols[1]], f = J[rows[1]][cols[2]];
            double g = J[rows[2]][cols[0]], h = J[rows[2]][cols[1]], i = J[rows[2]][cols[2]];
            return a * (e * i - f * h) - b * (d0 * i - f * g) + c * (d0 * h - e * g);
        }
        case 4: {
            double det = 0.0;
            std::vector<int> sub(rows.begin() + 1, rows.end());
            for (int c = 0; c < 4; ++c) {
                std::vector<int> subc;
                for (int j = 0; j < 4; ++j)
                    if (j != c) subc.push_back(cols[j]);
                double cof = det_minor(J, sub, subc);
                det += ((c % 2 == 0) ? 1.0 : -1.0) * J[rows[0]][cols[c]] * cof;
            }
            return det;
        }
        default:
            throw std::invalid_argument("det_minor: unsupported size");
    }
}

int find_index(const std::vector<std::vector<int>>& table, const std::vector<int>& key) {
    for (size_t i = 0; i < table.size(); ++i)
        if (table[i] == key) return static_cast<int>(i);
    throw std::logic_error("multi-index lookup failed");
}

// Fixed slab count keeps the summation grouping, and hence the rounding,
// independent of the host's core count.
constexpr int kSlabs = 8;

template <typename Body>
void run_slabs(int n_outer, const Body& body, std::vector<Accumulator>& sums) {
    sums.assign(kSlabs, Accumulator{});
    std::vector<std::thread> pool;
    pool.reserve(kSlabs);
    for (int s = 0; s < kSlabs; ++s) {
        int lo = static_cast<int>(static_cast<long long>(n_outer) * s / kSlabs);
        int hi = static_cast<int>(static_cast<long long>(n_outer) * (s + 1) / kSlabs);
        pool.emplace_back([&, s, lo, hi] { body(s, lo, hi, sums[s]); });
    }
    for (auto& t : pool) t.join();
}

} // namespace

WirtingerGradient wirtinger_gradient(const ScalarField& f, const BidiskPoint& p) {
    R4 x = to_r4(p);
    double h[4];
    for (int i = 0; i < 4; ++i) h[i] = fd_step(x[i], 1e-5);
    require_room(p.z, h[0], h[1], "wirtinger_gradient");
    require_room(p.w, h[2], h[3], "wirtinger_gradient");

    Complex part[4];
    for (int i = 0; i < 4; ++i) {
        auto at = [&](double off) {
            R4 xx = x;
            xx[i] += off;
            return f(to_bidisk(xx));
        };
        part[i] = richardson1(at(h[i]), at(-h[i]), at(0.5 * h[i]), at(-0.5 * h[i]), h[i]);
    }
    const Complex ih(0.0, 1.0);
    WirtingerGradient g;
    g.dz = 0.5 * (part[0] - ih * part[1]);
    g.dzb = 0.5 * (part[0] + ih * part[1]);
    g.dw = 0.5 * (part[2] - ih * part[3]);
    g.dwb = 0.5 * (part[2] + ih * part[3]);
    return g;
}

HermitianForm2 complex_hessian(const ScalarField& f, const BidiskPoint& p) {
    R4 x = to_r4(p);
    double h[4];
    for (int i = 0; i < 4; ++i) h[i] = 1e-3 * std::max(1.0, std::abs(x[i]));
    require_room(p.z, h[0], h[1], "complex_hessian");
    require_room(p.w, h[2], h[3], "complex_hessian");

    auto at = [&](double o0, double o1, double o2, double o3) {
        return f(to_bidisk({x[0] + o0, x[1] + o1, x[2] + o2, x[3] + o3}));
    };
    Complex f0 = at(0, 0, 0, 0);

    Complex S[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            auto second = [&](double ha, double hb) {
                if (a == b) {
                    R4 o{0, 0, 0, 0};
                    o[a] = ha;
                    return (at(o[0], o[1], o[2], o[3]) - 2.0 * f0 +
                            at(-o[0], -o[1], -o[2], -o[3])) /
                           (ha * ha);
                }
                auto sample = [&](double sa, double sb) {
                    R4 o{0, 0, 0, 0};
                    o[a] = sa;
                    o[b] = sb;
                    return at(o[0], o[1], o[2], o[3]);
                };
                return (sample(ha, hb) - sample(ha, -hb) - sample(-ha, hb) +
                        sample(-ha, -hb)) /
                       (4.0 * ha * hb);
            };
            Complex d1 = second(h[a], h[b]);
            Complex d2 = second(0.5 * h[a], 0.5 * h[b]);
            S[a][b] = (4.0 * d2 - d1) / 3.0;
            S[b][a] = S[a][b];
        }

    const Complex ih(0.0, 1.0);
    // x_j <-> axis 2(j-1), y_j <-> axis 2(j-1)+1
    auto entry = [&](int j, int k) {
        return 0.25 * (S[2 * j][2 * k] + S[2 * j + 1][2 * k + 1] +
                       ih * (S[2 * j][2 * k + 1] - S[2 * j + 1][2 * k]));
    };
    HermitianForm2 hm{entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
    return hm.hermitized();
}

double ma_det(const HermitianForm2& h) {
    HermitianForm2 s = h.hermitized();
    return s.h11.real() * s.h22.real() - std::norm(s.h12);
}

double min_eigenvalue(const HermitianForm2& h) {
    HermitianForm2 s = h.hermitized();
    double tr = s.h11.real() + s.h22.real();
    double disc = std::hypot(s.h11.real() - s.h22.real(), 2.0 * std::abs(s.h12));
    return 0.5 * (tr - disc);
}

double max_eigenvalue(const HermitianForm2& h) {
    HermitianForm2 s = h.hermitized();
    double tr = s.h11.real() + s.h22.real();
    double disc = std::hypot(s.h11.real() - s.h22.real(), 2.0 * std::abs(s.h12));
    return 0.5 * (tr + disc);
}

double quadratic_form(const HermitianForm2& h, Complex v1, Complex v2) {
    Complex q = h.h11 * v1 * std::conj(v1) + h.h12 * v1 * std::conj(v2) +
                h.h21 * v2 * std::conj(v1) + h.h22 * v2 * std::conj(v2);
    return q.real();
}

const std::vector<std::vector<int>>& multi_indices(int dim, int k) {
    static const auto table = [] {
        std::array<std::array<std::vector<std::vector<int>>, 5>, 5> t{};
        for (int d = 1; d <= 4; ++d)
            for (int deg = 0; deg <= d; ++deg) {
                std::vector<std::vector<int>> out;
                std::vector<int> cur;
                auto rec = [&](auto&& self, int start) -> void {
                    if (static_cast<int>(cur.size()) == deg) {
                        out.push_back(cur);
                        return;
                    }
                    for (int i = start; i < d; ++i) {
                        cur.push_back(i);
                        self(self, i + 1);
                        cur.pop_back();
                    }
                };
                rec(rec, 0);
                t[d][deg] = std::move(out);
            }
        return t;
    }();
    if (dim < 1 || dim > 4 || k < 0 || k > dim)
        throw std::invalid_argument("multi_indices: need 1 <= dim <= 4 and 0 <= k <= dim");
    return table[dim][k];
}

FormField::FormField(int dim, int degree, Eval eval)
    : dim_(dim), degree_(degree),
      n_components_(static_cast<int>(multi_indices(dim, degree).size())),
      eval_(std::move(eval)) {}

namespace {

FormField const_one_form(std::array<Complex, 4> comps) {
    return FormField(4, 1, [comps](const std::array<double, 4>&) {
        CoeffVec v;
        v.n = 4;
        for (int i = 0; i < 4; ++i) v.c[i] = comps[i];
        return v;
    });
}

} // namespace

FormField const_dz() { return const_one_form({1.0, Complex(0, 1), 0.0, 0.0}); }
FormField const_dzbar() { return const_one_form({1.0, Complex(0, -1), 0.0, 0.0}); }
FormField const_dw() { return const_one_form({0.0, 0.0, 1.0, Complex(0, 1)}); }
FormField const_dwbar() { return const_one_form({0.0, 0.0, 1.0, Complex(0, -1)}); }

FormField one_form(std::function<WirtingerGradient(const BidiskPoint&)> g) {
    return FormField(4, 1, [g](const std::array<double, 4>& x) {
        WirtingerGradient c = g(to_bidisk(x));
        const Complex ih(0.0, 1.0);
        CoeffVec v;
        v.n = 4;
        v.c[0] = c.dz + c.dzb;
        v.c[1] = ih * (c.dz - c.dzb);
        v.c[2] = c.dw + c.dwb;
        v.c[3] = ih * (c.dw - c.dwb);
        return v;
    });
}

FormField two_form(std::function<HermitianForm2(const BidiskPoint&)> h) {
    // i h11 dz^dzbar + i h12 dz^dwbar + i h21 dw^dzbar + i h22 dw^dwbar in the
    // real basis (dx1^dy1, dx1^dx2, dx1^dy2, dy1^dx2, dy1^dy2, dx2^dy2).
    return FormField(4, 2, [h](const std::array<double, 4>& x) {
        HermitianForm2 m = h(to_bidisk(x));
        const Complex ih(0.0, 1.0);
        CoeffVec v;
        v.n = 6;
        v.c[0] = 2.0 * m.h11;
        v.c[1] = ih * (m.h12 - m.h21);
        v.c[2] = m.h12 + m.h21;
        v.c[3] = -(m.h12 + m.h21);
        v.c[4] = ih * (m.h12 - m.h21);
        v.c[5] = 2.0 * m.h22;
        return v;
    });
}

FormField d(const FormField& w) {
    int dim = w.dim();
    int k = w.degree();
    if (k >= dim) throw std::invalid_argument("d: degree already top");
    const auto& src_idx = multi_indices(dim, k);
    const auto& dst_idx = multi_indices(dim, k + 1);

    struct Term {
        int axis, src;
        double sign;
    };
    std::vector<std::vector<Term>> terms(dst_idx.size());
    for (size_t K = 0; K < dst_idx.size(); ++K)
        for (size_t pos = 0; pos < dst_idx[K].size(); ++pos) {
            std::vector<int> J = dst_idx[K];
            int axis = J[pos];
            J.erase(J.begin() + pos);
            terms[K].push_back({axis, find_index(src_idx, J), (pos % 2 == 0) ? 1.0 : -1.0});
        }

    return FormField(dim, k + 1, [dim, terms, w](const std::array<double, 4>& x) {
        std::array<CoeffVec, 4> dcoef;
        for (int i = 0; i < dim; ++i) {
            double h = fd_step(x[i], 1e-5);
            auto at = [&](double off) {
                auto xx = x;
                xx[i] += off;
                return w.coefficients(xx);
            };
            dcoef[i] = cv_richardson(at(h), at(-h), at(0.5 * h), at(-0.5 * h), h);
        }
        CoeffVec out;
        out.n = static_cast<int>(terms.size());
        for (size_t K = 0; K < terms.size(); ++K) {
            Complex s = 0.0;
            for (const auto& t : terms[K]) s += t.sign * dcoef[t.axis].c[t.src];
            out.c[K] = s;
        }
        return out;
    });
}

FormField dc_closed(std::function<WirtingerGradient(const BidiskPoint&)> g) {
    // d^c f = (1/2i)(df_z dz + f_w dw - f_zbar dzbar - f_wbar dwbar), so that
    // d d^c f = i ddbar f.
    return one_form([g](const BidiskPoint& p) {
        WirtingerGradient c = g(p);
        const Complex half_over_i(0.0, -0.5);
        return WirtingerGradient{half_over_i * c.dz, half_over_i * c.dw,
                                 -half_over_i * c.dzb, -half_over_i * c.dwb};
    });
}

FormField dc(const ScalarField& f) {
    return dc_closed([f](const BidiskPoint& p) { return wirtinger_gradient(f, p); });
}

FormField wedge(const FormField& a, const FormField& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    int dim = a.dim();
    int ka = a.degree(), kb = b.degree();
    if (ka + kb > dim) throw std::invalid_argument("wedge: degree exceeds dimension");
    const auto& ia = multi_indices(dim, ka);
    const auto& ib = multi_indices(dim, kb);
    const auto& io = multi_indices(dim, ka + kb);

    struct Term {
        int pa, pb, po;
        double sign;
    };
    std::vector<Term> terms;
    for (size_t p = 0; p < ia.size(); ++p)
        for (size_t q = 0; q < ib.size(); ++q) {
            int inversions = 0;
            bool disjoint = true;
            for (int i : ia[p])
                for (int j : ib[q]) {
                    if (i == j) disjoint = false;
                    if (j < i) ++inversions;
                }
            if (!disjoint) continue;
            std::vector<int> merged = ia[p];
            merged.insert(merged.end(), ib[q].begin(), ib[q].end());
            std::sort(merged.begin(), merged.end());
            terms.push_back({static_cast<int>(p), static_cast<int>(q),
                             find_index(io, merged),
                             (inversions % 2 == 0) ? 1.0 : -1.0});
        }

    int n_out = static_cast<int>(io.size());
    return FormField(dim, ka + kb, [a, b, terms, n_out](const std::array<double, 4>& x) {
        CoeffVec ca = a.coefficients(x);
        CoeffVec cb = b.coefficients(x);
        CoeffVec out;
        out.n = n_out;
        for (const auto& t : terms) out.c[t.po] += t.sign * ca.c[t.pa] * cb.c[t.pb];
        return out;
    });
}

FormField add(const FormField& a, const FormField& b) {
    if (a.dim() != b.dim() || a.degree() != b.degree())
        throw std::invalid_argument("add: shape mismatch");
    return FormField(a.dim(), a.degree(), [a, b](const std::array<double, 4>& x) {
        CoeffVec ca = a.coefficients(x);
        CoeffVec cb = b.coefficients(x);
        for (int i = 0; i < ca.n; ++i) ca.c[i] += cb.c[i];
        return ca;
    });
}

FormField scale(const FormField& a, std::function<Complex(const BidiskPoint&)> s) {
    if (a.dim() != 4) throw std::invalid_argument("scale: pointwise scaling needs dim 4");
    return FormField(4, a.degree(), [a, s](const std::array<double, 4>& x) {
        CoeffVec c = a.coefficients(x);
        Complex m = s(to_bidisk(x));
        for (int i = 0; i < c.n; ++i) c.c[i] *= m;
        return c;
    });
}

FormField scale(const FormField& a, Complex m) {
    return FormField(a.dim(), a.degree(), [a, m](const std::array<double, 4>& x) {
        CoeffVec c = a.coefficients(x);
        for (int i = 0; i < c.n; ++i) c.c[i] *= m;
        return c;
    });
}

FormField pullback(const FormField& w,
                   std::function<R4(const std::array<double, 4>&)> phi,
                   int source_dim) {
    if (w.dim() != 4) throw std::invalid_argument("pullback: target form must live on R^4");
    int k = w.degree();
    if (k > source_dim) throw std::invalid_argument("pullback: degree exceeds source dimension");
    const auto rows = multi_indices(4, k);       // target components
    const auto cols = multi_indices(source_dim, k); // output components

    return FormField(source_dim, k,
                     [w, phi, source_dim, rows, cols](const std::array<double, 4>& x) {
        R4 y = phi(x);
        double J[4][4] = {};
        for (int j = 0; j < source_dim; ++j) {
            double h = fd_step(x[j], 1e-6);
            auto at = [&](double off) {
                auto xx = x;
                xx[j] += off;
                return phi(xx);
            };
            R4 ph = at(h), mh = at(-h), ph2 = at(0.5 * h), mh2 = at(-0.5 * h);
            for (int i = 0; i < 4; ++i) {
                double d1 = (ph[i] - mh[i]) / (2.0 * h);
                double d2 = (ph2[i] - mh2[i]) / h;
                J[i][j] = (4.0 * d2 - d1) / 3.0;
            }
        }
        CoeffVec cw = w.coefficients(y);
        CoeffVec out;
        out.n = static_cast<int>(cols.size());
        for (size_t K = 0; K < cols.size(); ++K) {
            Complex s = 0.0;
            for (size_t I = 0; I < rows.size(); ++I)
                s += cw.c[I] * det_minor(J, rows[I], cols[K]);
            out.c[K] = s;
        }
        return out;
    });
}

bool Box4::contained_in_bidisk(double slack) const {
    double zx = std::max(std::abs(lo[0]), std::abs(hi[0]));
    double zy = std::max(std::abs(lo[1]), std::abs(hi[1]));
    double wx = std::max(std::abs(lo[2]), std::abs(hi[2]));
    double wy = std::max(std::abs(lo[3]), std::abs(hi[3]));
    return std::hypot(zx, zy) < 1.0 - slack && std::hypot(wx, wy) < 1.0 - slack;
}

double Box4::volume() const {
    double v = 1.0;
    for (int i = 0; i < 4; ++i) v *= hi[i] - lo[i];
    return v;
}

double integrate_4form(const FormField& omega4, const Box4& box, int grid) {
    if (omega4.dim() != 4 || omega4.degree() != 4)
        throw std::invalid_argument("integrate_4form: need a 4-form on R^4");
    if (grid < 1) throw std::invalid_argument("integrate_4form: grid must be positive");
    double h[4];
    for (int i = 0; i < 4; ++i) h[i] = (box.hi[i] - box.lo[i]) / grid;
    double cell = h[0] * h[1] * h[2] * h[3];

    std::vector<Accumulator> sums;
    run_slabs(grid, [&](int, int lo_i, int hi_i, Accumulator& acc) {
        for (int i0 = lo_i; i0 < hi_i; ++i0)
            for (int i1 = 0; i1 < grid; ++i1)
                for (int i2 = 0; i2 < grid; ++i2)
                    for (int i3 = 0; i3 < grid; ++i3) {
                        std::array<double, 4> x{box.lo[0] + (i0 + 0.5) * h[0],
                                                box.lo[1] + (i1 + 0.5) * h[1],
                                                box.lo[2] + (i2 + 0.5) * h[2],
                                                box.lo[3] + (i3 + 0.5) * h[3]};
                        acc.add(omega4.coefficients(x).c[0].real());
                    }
    }, sums);

    Accumulator total;
    for (const auto& s : sums) total.add(s.total());
    return total.total() * cell;
}

StokesReport stokes_check(const FormField& omega3, const Box4& box, int grid) {
    if (omega3.dim() != 4 || omega3.degree() != 3)
        throw std::invalid_argument("stokes_check: need a 3-form on R^4");
    if (grid < 4) throw std::invalid_argument("stokes_check: grid must be >= 4");

    StokesReport rep;
    rep.interior = integrate_4form(d(omega3), box, grid);

    double h[4];
    for (int i = 0; i < 4; ++i) h[i] = (box.hi[i] - box.lo[i]) / grid;

    const auto& tri = multi_indices(4, 3);
    Accumulator boundary, boundary_abs;
    for (int j = 0; j < 4; ++j) {
        int comp = 3 - j; // lexicographic slot of {0,1,2,3} \ {j}
        const auto& axes = tri[comp];
        double face_cell = h[axes[0]] * h[axes[1]] * h[axes[2]];
        double sign = (j % 2 == 0) ? 1.0 : -1.0;

        std::vector<Accumulator> diffs, mags;
        run_slabs(grid, [&](int, int lo_i, int hi_i, Accumulator& acc) {
            // reuse one accumulator per slab for the signed difference; the
            // magnitudes go through a second pass below to stay deterministic
            for (int a0 = lo_i; a0 < hi_i; ++a0)
                for (int a1 = 0; a1 < grid; ++a1)
                    for (int a2 = 0; a2 < grid; ++a2) {
                        std::array<double, 4> x{};
                        x[axes[0]] = box.lo[axes[0]] + (a0 + 0.5) * h[axes[0]];
                        x[axes[1]] = box.lo[axes[1]] + (a1 + 0.5) * h[axes[1]];
                        x[axes[2]] = box.lo[axes[2]] + (a2 + 0.5) * h[axes[2]];
                        x[j] = box.hi[j];
                        double top = omega3.coefficients(x).c[comp].real();
                        x[j] = box.lo[j];
                        double bot = omega3.coefficients(x).c[comp].real();
                        acc.add(top - bot);
                    }
        }, diffs);
        run_slabs(grid, [&](int, int lo_i, int hi_i, Accumulator& acc) {
            for (int a0 = lo_i; a0 < hi_i; ++a0)
                for (int a1 = 0; a1 < grid; ++a1)
                    for (int a2 = 0; a2 < grid; ++a2) {
                        std::array<double, 4> x{};
                        x[axes[0]] = box.lo[axes[0]] + (a0 + 0.5) * h[axes[0]];
                        x[axes[1]] = box.lo[axes[1]] + (a1 + 0.5) * h[axes[1]];
                        x[axes[2]] = box.lo[axes[2]] + (a2 + 0.5) * h[axes[2]];
                        x[j] = box.hi[j];
                        double top = omega3.coefficients(x).c[comp].real();
                        x[j] = box.lo[j];
                        double bot = omega3.coefficients(x).c[comp].real();
                        acc.add(std::abs(top) + std::abs(bot));
                    }
        }, mags);

        Accumulator face, face_abs;
        for (const auto& s : diffs) face.add(s.total());
        for (const auto& s : mags) face_abs.add(s.total());
        boundary.add(sign * face.total() * face_cell);
        boundary_abs.add(face_abs.total() * face_cell);
    }

    rep.boundary = boundary.total();
    rep.boundary_abs = boundary_abs.total();
    rep.gap = std::abs(rep.interior - rep.boundary) /
              std::max(std::max(std::abs(rep.interior), std::abs(rep.boundary)), 1e-12);
    return rep;
}

} // namespace gtube
