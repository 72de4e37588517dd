#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "aperiodica/rational.hpp"

namespace aperiodica {

// Rank-2 lattice with an exact rational basis (columns b1 = (a, c),
// b2 = (b, d)).
struct LatticeZ2Q {
    Rational a, b, c, d;

    LatticeZ2Q() : a(1), b(0), c(0), d(1) {}
    LatticeZ2Q(Rational a_, Rational b_, Rational c_, Rational d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (det().is_zero()) throw std::invalid_argument("LatticeZ2Q: singular basis");
    }

    static LatticeZ2Q integer_lattice() { return LatticeZ2Q(); }

    Rational det() const { return a * d - b * c; }

    // Inverse transpose: the dual lattice basis.
    LatticeZ2Q dual() const {
        Rational dt = det();
        return LatticeZ2Q(d / dt, -c / dt, -b / dt, a / dt);
    }

    bool contains(const Rational& x, const Rational& y) const {
        Rational dt = det();
        Rational u = (d * x - b * y) / dt;
        Rational v = (a * y - c * x) / dt;
        return u.is_integer() && v.is_integer();
    }
};

namespace detail {

// Column-style Hermite normal form of a rank-2 integer column span:
// result [[h00, 0], [h10, h11]] with h00, h11 > 0 and 0 <= h10 < h11.
inline std::array<std::int64_t, 4> hnf2(std::vector<std::array<std::int64_t, 2>> cols) {
    using i64 = std::int64_t;
    auto colgcd = [&](std::size_t i, std::size_t j, int row) {
        // Euclid on the given row of columns i, j.
        while (cols[j][std::size_t(row)] != 0) {
            i64 q = cols[i][std::size_t(row)] / cols[j][std::size_t(row)];
            for (int r = 0; r < 2; ++r) cols[i][std::size_t(r)] -= q * cols[j][std::size_t(r)];
            std::swap(cols[i], cols[j]);
        }
    };
    // Gather the top row into column 0.
    std::size_t pivot = cols.size();
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i][0] != 0) { pivot = i; break; }
    if (pivot == cols.size()) throw std::domain_error("hnf2: rank < 2");
    std::swap(cols[0], cols[pivot]);
    for (std::size_t i = 1; i < cols.size(); ++i)
        if (cols[i][0] != 0) colgcd(0, i, 0);
    // Gather the bottom row of the remaining columns into column 1.
    pivot = cols.size();
    for (std::size_t i = 1; i < cols.size(); ++i)
        if (cols[i][1] != 0) { pivot = i; break; }
    if (pivot == cols.size()) throw std::domain_error("hnf2: rank < 2");
    std::swap(cols[1], cols[pivot]);
    for (std::size_t i = 2; i < cols.size(); ++i)
        if (cols[i][1] != 0) colgcd(1, i, 1);
    i64 h00 = cols[0][0], h10 = cols[0][1], h11 = cols[1][1];
    if (h00 < 0) { h00 = -h00; h10 = -h10; }
    if (h11 < 0) h11 = -h11;
    i64 r = h10 % h11;
    if (r < 0) r += h11;
    return {h00, 0, r, h11};
}

} // namespace detail

struct LatticeIntersection {
    LatticeZ2Q sublattice;
    std::int64_t index_in_g = 0;
};

// Exact intersection of two rational lattices via duality: the dual of the
// intersection is the sum of the duals. Rational lattices always intersect
// in finite index.
inline LatticeIntersection lattice_intersect(const LatticeZ2Q& g, const LatticeZ2Q& h) {
    LatticeZ2Q dg = g.dual(), dh = h.dual();
    // Common denominator of the four dual columns.
    std::int64_t den = 1;
    auto lcm = [](std::int64_t x, std::int64_t y) {
        return x / std::gcd(x, y) * y;
    };
    for (const Rational* r : {&dg.a, &dg.b, &dg.c, &dg.d, &dh.a, &dh.b, &dh.c, &dh.d})
        den = lcm(den, r->den());
    auto scaled = [&](const Rational& r) {
        return r.num() * (den / r.den());
    };
    std::vector<std::array<std::int64_t, 2>> cols = {
        {scaled(dg.a), scaled(dg.c)},
        {scaled(dg.b), scaled(dg.d)},
        {scaled(dh.a), scaled(dh.c)},
        {scaled(dh.b), scaled(dh.d)},
    };
    auto hn = detail::hnf2(cols);
    Rational q(1, den);
    LatticeZ2Q dual_sum(Rational(hn[0]) * q, Rational(hn[1]) * q,
                        Rational(hn[2]) * q, Rational(hn[3]) * q);
    LatticeZ2Q inter = dual_sum.dual();
    // Canonical HNF basis of the intersection itself.
    std::int64_t den2 = 1;
    for (const Rational* r : {&inter.a, &inter.b, &inter.c, &inter.d})
        den2 = lcm(den2, r->den());
    auto scaled2 = [&](const Rational& r) { return r.num() * (den2 / r.den()); };
    std::vector<std::array<std::int64_t, 2>> cols2 = {
        {scaled2(inter.a), scaled2(inter.c)},
        {scaled2(inter.b), scaled2(inter.d)},
    };
    auto hn2 = detail::hnf2(cols2);
    Rational q2(1, den2);
    LatticeIntersection out;
    out.sublattice = LatticeZ2Q(Rational(hn2[0]) * q2, Rational(hn2[1]) * q2,
                                Rational(hn2[2]) * q2, Rational(hn2[3]) * q2);
    Rational idx = out.sublattice.det() / g.det();
    if (idx.sign() < 0) idx = -idx;
    if (!idx.is_integer())
        throw std::logic_error("lattice_intersect: non-integer index");
    out.index_in_g = idx.num();
    return out;
}

// ---- SCD layer analysis ---------------------------------------------------

struct ScdLayerReport {
    // indices[m] = index of cap_{j=0..m} R^j Gamma in Gamma: the lattice of
    // periods shared by a stack of m+1 layers, each rotated once more.
    std::vector<std::int64_t> indices;
    bool commensurate = false; // (cos, sin) a root of unity (order <= 48)
    int commensurate_order = 0;
};

// Exact rational point on the unit circle.
struct UnitRational {
    Rational cos, sin;
    UnitRational(Rational c, Rational s) : cos(std::move(c)), sin(std::move(s))  {
        if (!(this->cos * this->cos + this->sin * this->sin == Rational(1)))
            throw std::invalid_argument("UnitRational: point not on the unit circle");
    }
};

// Sparsity of the common sublattices of the rotated layer lattices: with each
// layer added the index grows unless the rotation has finite order, the
// finite witness that the full intersection is trivial for incommensurate
// (non-root-of-unity) rational rotations.
inline ScdLayerReport scd_layer_analysis(const LatticeZ2Q& g, const UnitRational& rot,
                                         int m_max) {
    if (m_max < 0 || m_max > 8)
        throw std::invalid_argument("scd_layer_analysis: m_max must be in 0..8");
    ScdLayerReport rep;
    // Root-of-unity check by bounded order.
    {
        Rational c(1), s(0);
        for (int k = 1; k <= 48; ++k) {
            Rational nc = c * rot.cos - s * rot.sin;
            Rational ns = c * rot.sin + s * rot.cos;
            c = nc;
            s = ns;
            if (c == Rational(1) && s.is_zero()) {
                rep.commensurate = true;
                rep.commensurate_order = k;
                break;
            }
        }
    }
    auto rotate = [&](const LatticeZ2Q& L) {
        const Rational& c = rot.cos;
        const Rational& s = rot.sin;
        // R * [b1 b2]
        return LatticeZ2Q(c * L.a - s * L.c, c * L.b - s * L.d,
                          s * L.a + c * L.c, s * L.b + c * L.d);
    };
    LatticeZ2Q cur = g;
    LatticeZ2Q layer = g;
    rep.indices.push_back(1);
    for (int m = 1; m <= m_max; ++m) {
        layer = rotate(layer);
        cur = lattice_intersect(cur, layer).sublattice;
        Rational idx = cur.det() / g.det();
        if (idx.sign() < 0) idx = -idx;
        rep.indices.push_back(idx.num());
    }
    return rep;
}

} // namespace aperiodica
