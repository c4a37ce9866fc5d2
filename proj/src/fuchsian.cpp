#include "gtube/fuchsian.hpp"

#include <cmath>
#include <stdexcept>
#include <numbers>

namespace gtube {

namespace {

// Moebius map sending p to 0.
DiskMoebius to_origin(Complex p) { return DiskMoebius(1.0, -p); }

// Interior angle at vertex v between the geodesic segments [v, q1] and
// [v, q2]. Transport v to 0, where geodesics are diameters and the model is
// conformal, so the angle is the Euclidean one.
double geodesic_angle(Complex v, Complex q1, Complex q2) {
    const DiskMoebius t = to_origin(v);
    const Complex d1 = t.apply(q1);
    const Complex d2 = t.apply(q2);
    double a = std::abs(std::arg(d1 / d2));
    return a;
}

// Hyperbolic midpoint of the segment [p, q].
Complex hyperbolic_midpoint(Complex p, Complex q) {
    const DiskMoebius t = to_origin(p);
    const Complex tq = t.apply(q);
    const double d = hyperbolic_distance(p, q);
    const Complex mid0 = std::tanh(d / 4.0) * tq / std::abs(tq);
    return t.inverse().apply(mid0);
}

std::array<Complex, 8> octagon_vertices(double r) {
    std::array<Complex, 8> v;
    for (int k = 0; k < 8; ++k) {
        const double t = (2 * k + 1) * std::numbers::pi / 8.0;
        v[k] = Complex(r * std::cos(t), r * std::sin(t));
    }
    return v;
}

double vertex_angle_at_radius(double r) {
    const auto v = octagon_vertices(r);
    return geodesic_angle(v[0], v[1], v[7]);
}

} // namespace

FuchsianGroup FuchsianGroup::octagon() {
    FuchsianGroup g;
    g.build();
    return g;
}

void FuchsianGroup::build() {
    // Vertex angle decreases from the Euclidean 3pi/4 toward 0 as the
    // circumradius grows; bisect to the angle-sum condition 8 * (pi/4) = 2pi.
    double lo = 0.3, hi = 0.99;
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (vertex_angle_at_radius(mid) > std::numbers::pi / 4.0)
            lo = mid;
        else
            hi = mid;
    }
    circumradius_ = 0.5 * (lo + hi);
    vertices_ = octagon_vertices(circumradius_);

    angle_sum_ = 0.0;
    for (int k = 0; k < 8; ++k)
        angle_sum_ += geodesic_angle(vertices_[k], vertices_[(k + 1) % 8],
                                     vertices_[(k + 7) % 8]);

    // Side k joins v_{k-1} to v_k; its hyperbolic midpoint sits on the ray at
    // angle k*pi/4. The pairing translation moves along that ray by twice the
    // apothem, carrying side k+4 onto side k.
    const Complex mid0 = hyperbolic_midpoint(vertices_[7], vertices_[0]);
    apothem_ = hyperbolic_distance(0.0, mid0);
    const double ca = std::cosh(apothem_);
    const double sa = std::sinh(apothem_);
    for (int k = 0; k < 4; ++k) {
        const double t = k * std::numbers::pi / 4.0;
        gens_[k] = DiskMoebius(ca, sa * Complex(std::cos(t), std::sin(t)));
    }
    for (int k = 0; k < 4; ++k) {
        gens_and_inverses_[k] = gens_[k];
        gens_and_inverses_[k + 4] = gens_[k].inverse();
    }
    for (int k = 0; k < 8; ++k)
        orbit_of_zero_[k] = gens_and_inverses_[k].apply(0.0);

    // Validate the pairing: generator k must map {v_{k+3}, v_{k+4}} onto
    // {v_{k-1}, v_k}.
    pairing_defect_ = 0.0;
    for (int k = 0; k < 4; ++k) {
        const Complex p = gens_[k].apply(vertices_[(k + 3) % 8]);
        const Complex q = gens_[k].apply(vertices_[(k + 4) % 8]);
        const double d1 = std::abs(p - vertices_[k]) + std::abs(q - vertices_[(k + 7) % 8]);
        const double d2 = std::abs(p - vertices_[(k + 7) % 8]) + std::abs(q - vertices_[k]);
        pairing_defect_ = std::max(pairing_defect_, std::min(d1, d2));
    }

    // Walk around one vertex, composing the side pairings the tiling imposes;
    // the holonomy of the cycle must be +-identity. Side s is paired with
    // side s+4; the transform carrying the partner onto s is g_s (s < 4) or
    // g_{s-4}^{-1} (s >= 4). Crossing side s of the current copy moves to the
    // neighbor copy, i.e. composes with that transform on the right.
    auto pairing_into = [&](int s) {
        return s < 4 ? gens_[s] : gens_[s - 4].inverse();
    };
    auto nearest_vertex = [&](Complex z) {
        int best = 0;
        double bd = 1e300;
        for (int j = 0; j < 8; ++j) {
            const double d = std::abs(z - vertices_[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        if (bd > 1e-6)
            throw std::runtime_error("vertex cycle walk left the vertex set");
        return best;
    };
    int u = 0;  // base vertex index; vertex v_u lies on sides u and u+1
    int s = 0;  // side of the base octagon about to be crossed
    DiskMoebius W = DiskMoebius::identity();
    for (int step = 0; step < 8; ++step) {
        const DiskMoebius T = pairing_into(s);
        W = compose(W, T);
        u = nearest_vertex(T.inverse().apply(vertices_[u]));
        const int partner = (s + 4) % 8;
        const int s1 = u;
        const int s2 = (u + 1) % 8;
        s = (s1 == partner) ? s2 : s1;
    }
    vertex_cycle_ = W;
}

DiskMoebius FuchsianGroup::evaluate(const GroupWord& w) const {
    DiskMoebius m = DiskMoebius::identity();
    for (const Letter& l : w.letters)
        m = compose(m, letter_transform(l));
    return m;
}

Complex FuchsianGroup::apply_word(const GroupWord& w, Complex z, bool on_circle) const {
    // Innermost letter first: (l1 l2 ... ln)(z) = l1(l2(...ln(z))).
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        const DiskMoebius& m = gens_and_inverses_[it->exp > 0 ? it->gen : it->gen + 4];
        z = m.apply(z);
        if (on_circle)
            z /= std::abs(z);
    }
    return z;
}

bool FuchsianGroup::in_fundamental_domain(Complex z, double tol) const {
    const double d0 = hyperbolic_distance(z, 0.0);
    for (const Complex& c : orbit_of_zero_) {
        if (d0 > hyperbolic_distance(z, c) + tol)
            return false;
    }
    return true;
}

FuchsianGroup::Reduction FuchsianGroup::reduce(Complex z) const {
    constexpr int kMaxIter = 10000;
    constexpr double kImprove = 1e-13;
    std::vector<Letter> applied;
    int it = 0;
    for (; it < kMaxIter; ++it) {
        const double d0 = hyperbolic_distance(z, 0.0);
        int best = -1;
        Complex bz;
        double bd = d0 - kImprove;
        for (int k = 0; k < 8; ++k) {
            const Complex cand = gens_and_inverses_[k].apply(z);
            const double d = hyperbolic_distance(cand, 0.0);
            if (d < bd) {
                bd = d;
                best = k;
                bz = cand;
            }
        }
        if (best < 0)
            break;
        z = bz;
        applied.push_back({best % 4, best < 4 ? 1 : -1});
    }
    if (it == kMaxIter)
        throw std::runtime_error("reduce: no progress after 10^4 iterations");

    // z_red = (t_m ... t_1) z, so z_red = word^{-1} z with
    // word = t_1^{-1} ... t_m^{-1}.
    Reduction r;
    r.point = z;
    r.iterations = it;
    r.word.letters.reserve(applied.size());
    for (const Letter& l : applied)
        r.word.letters.push_back({l.gen, -l.exp});
    return r;
}

GroupWord FuchsianGroup::random_word(int length, Rng& rng) const {
    GroupWord w;
    w.letters.reserve(length);
    for (int i = 0; i < length; ++i) {
        while (true) {
            const int k = rng.uniform_int(8);
            const Letter cand{k % 4, k < 4 ? 1 : -1};
            if (!w.letters.empty()) {
                const Letter& prev = w.letters.back();
                if (prev.gen == cand.gen && prev.exp == -cand.exp)
                    continue; // no immediate backtracking
            }
            w.letters.push_back(cand);
            break;
        }
    }
    return w;
}

McEstimate FuchsianGroup::domain_area(long long samples, std::uint64_t seed,
                                      int shards) const {
    if (samples <= 0 || shards <= 0)
        throw std::invalid_argument("domain_area: samples and shards must be positive");
    const double disk_area = std::numbers::pi * circumradius_ * circumradius_;
    Accumulator sum, sum_sq;
    long long n_total = 0;
    for (int s = 0; s < shards; ++s) {
        Rng rng(derive_seed(seed, "domain-area-shard-" + std::to_string(s)));
        const long long n = samples / shards + (s < samples % shards ? 1 : 0);
        for (long long i = 0; i < n; ++i) {
            const Complex z = rng.disk(circumradius_);
            const double f = in_fundamental_domain(z) ? area_density(z) : 0.0;
            sum.add(f);
            sum_sq.add(f * f);
        }
        n_total += n;
    }
    const double mean = sum.total() / static_cast<double>(n_total);
    const double var = std::max(0.0, sum_sq.total() / static_cast<double>(n_total) - mean * mean);
    McEstimate e;
    e.value = disk_area * mean;
    e.std_error = disk_area * std::sqrt(var / static_cast<double>(n_total));
    e.samples = n_total;
    return e;
}

} // namespace gtube
