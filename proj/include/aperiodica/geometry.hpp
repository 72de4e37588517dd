#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aperiodica/cyclotomic.hpp"

namespace aperiodica {

// A planar point is one field element read as a complex coordinate.
using Point = Cyclo;

// Exact planar isometry z -> rot * sigma(z) + trans, sigma = conj if reflect.
// rot must have |rot|^2 == 1 exactly; for AB/Penrose it is a root of unity,
// for the pinwheel a Pythagorean unit like (3+4i)/5.
struct Isometry {
    Cyclo rot;
    bool reflect = false;
    Cyclo trans;

    Isometry() : rot(Cyclo::integer(4, 1)), trans(Cyclo(4)) {}
    Isometry(Cyclo r, bool e, Cyclo t) : rot(std::move(r)), reflect(e), trans(std::move(t)) {}

    static Isometry identity(int n) {
        return Isometry(Cyclo::integer(n, 1), false, Cyclo(n));
    }
    static Isometry translation(const Cyclo& t) {
        return Isometry(Cyclo::integer(t.n(), 1), false, t);
    }
    static Isometry linear(const Cyclo& r, bool e) {
        return Isometry(r, e, Cyclo(r.n()));
    }

    int n() const { return rot.n(); }

    bool unit_modulus() const {
        return rot.abs2() == Cyclo::integer(rot.n(), 1);
    }

    Point operator()(const Point& z) const {
        return rot * (reflect ? z.conj() : z) + trans;
    }

    bool operator==(const Isometry& o) const {
        return reflect == o.reflect && rot == o.rot && trans == o.trans;
    }
    bool operator!=(const Isometry& o) const { return !(*this == o); }

    std::size_t hash() const {
        return rot.hash() * 3 + trans.hash() * 7 + (reflect ? 1 : 0);
    }
};

// (g2 * g1)(z) = g2(g1(z)).
inline Isometry compose(const Isometry& g2, const Isometry& g1) {
    Cyclo r1 = g2.reflect ? g1.rot.conj() : g1.rot;
    Cyclo t1 = g2.reflect ? g1.trans.conj() : g1.trans;
    return Isometry(g2.rot * r1, g2.reflect != g1.reflect, g2.rot * t1 + g2.trans);
}

inline Isometry inverse(const Isometry& g) {
    Cyclo rinv = g.rot.inverse();
    if (!g.reflect) return Isometry(rinv, false, -(rinv * g.trans));
    Cyclo r = rinv.conj();
    return Isometry(r, true, -(r * g.trans.conj()));
}

// Exact orientation of the triangle (p, q, r): sign of Im(conj(q-p)*(r-p)).
inline int orientation(const Point& p, const Point& q, const Point& r) {
    return ((q - p).conj() * (r - p)).sign_im();
}

// Exact sign of the cross resp. dot product of u, v read as plane vectors.
inline int cross_sign(const Cyclo& u, const Cyclo& v) { return (u.conj() * v).sign_im(); }
inline int dot_sign(const Cyclo& u, const Cyclo& v) { return (u.conj() * v).sign_re(); }

// Compares |z|^2 against a double threshold^2 (used for windows/radii, where
// thresholds are floating by contract).
inline bool within_radius(const Point& z, double radius) {
    return z.abs2().embed().real() <= radius * radius + 1e-9;
}

enum class System { AmmannBeenker, Penrose, Pinwheel };

inline std::string system_name(System s) {
    switch (s) {
    case System::AmmannBeenker: return "ammann-beenker";
    case System::Penrose: return "penrose";
    case System::Pinwheel: return "pinwheel";
    }
    return "?";
}

inline System system_from_name(const std::string& s) {
    if (s == "ammann-beenker" || s == "ab") return System::AmmannBeenker;
    if (s == "penrose") return System::Penrose;
    if (s == "pinwheel") return System::Pinwheel;
    throw std::invalid_argument("unknown system '" + s + "'");
}

inline int system_field(System s) {
    switch (s) {
    case System::AmmannBeenker: return 8;
    case System::Penrose: return 5;
    case System::Pinwheel: return 4;
    }
    return 4;
}

// Prototile identifiers. Penrose rhombi are represented by their Robinson
// halves; a full rhombus is the mirror pair glued along the base diagonal.
enum class Proto {
    AbTriangle,      // half square, legs 1, hypotenuse sqrt2
    AbRhombus,       // 45-degree rhombus, side 1
    PenroseHalfThick,
    PenroseHalfThin,
    PinwheelTriangle // right triangle with legs 1 and 2
};

inline std::string proto_name(Proto p) {
    switch (p) {
    case Proto::AbTriangle: return "ab-square-half-triangle";
    case Proto::AbRhombus: return "ab-rhombus";
    case Proto::PenroseHalfThick: return "penrose-thick";
    case Proto::PenroseHalfThin: return "penrose-thin";
    case Proto::PinwheelTriangle: return "pinwheel-triangle";
    }
    return "?";
}

inline Proto proto_from_name(const std::string& s) {
    if (s == "ab-square-half-triangle") return Proto::AbTriangle;
    if (s == "ab-rhombus") return Proto::AbRhombus;
    if (s == "penrose-thick") return Proto::PenroseHalfThick;
    if (s == "penrose-thin") return Proto::PenroseHalfThin;
    if (s == "pinwheel-triangle") return Proto::PinwheelTriangle;
    throw std::invalid_argument("unknown prototile '" + s + "'");
}

// A placed tile. The reflect flag of the pose doubles as the chirality bit
// (pinwheel reflected copies, Penrose rhombus halves).
struct Tile {
    Proto proto;
    Isometry pose;

    bool chirality() const { return pose.reflect; }

    bool operator==(const Tile& o) const { return proto == o.proto && pose == o.pose; }
};

struct Patch {
    System system;
    std::vector<Tile> tiles;

    int field() const { return system_field(system); }
};

// Finite Delone-set approximant: exact points, declared analysis window.
// The set is complete inside B_window(0) unless windowed == false.
struct PointSet {
    int n = 4; // cyclotomic index of the coordinates
    std::vector<Point> points;
    double window = 0.0;
    bool windowed = true;
};

struct PointKey {
    std::size_t operator()(const Point& p) const { return p.hash(); }
};

using PointIndex = std::unordered_set<Point, PointKey>;

inline PointIndex index_points(const PointSet& s) {
    PointIndex ix;
    ix.reserve(s.points.size() * 2);
    for (const auto& p : s.points) ix.insert(p);
    return ix;
}

// Embedded-coordinate bucket grid for neighbor queries. Exactness of results
// never depends on it; it only prunes candidate pairs.
class CellIndex {
public:
    CellIndex(const std::vector<Point>& pts, double cell) : cell_(cell <= 0 ? 1.0 : cell) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto e = pts[i].embed();
            cells_[key(e.real(), e.imag())].push_back(i);
        }
    }

    template <typename F>
    void for_near(double x, double y, double radius, F&& fn) const {
        long r = long(radius / cell_) + 1;
        long cx = long(std::floor(x / cell_)), cy = long(std::floor(y / cell_));
        for (long dx = -r; dx <= r; ++dx)
            for (long dy = -r; dy <= r; ++dy) {
                auto it = cells_.find(pack(cx + dx, cy + dy));
                if (it == cells_.end()) continue;
                for (std::size_t i : it->second) fn(i);
            }
    }

private:
    // Bijective for cell coordinates within 32 bits, so a cell is never
    // visited twice.
    static std::uint64_t pack(long cx, long cy) {
        return (std::uint64_t(std::uint32_t(cx)) << 32) | std::uint64_t(std::uint32_t(cy));
    }
    std::uint64_t key(double x, double y) const {
        return pack(long(std::floor(x / cell_)), long(std::floor(y / cell_)));
    }
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

// Image of a point set or patch under an exact isometry. A pure rotation or
// reflection about 0 keeps the window; a translation shrinks it by |trans|.
inline PointSet apply_isometry(const Isometry& g, const PointSet& s) {
    if (!s.points.empty() && g.n() != s.n)
        throw std::invalid_argument("apply_isometry: field mismatch");
    if (!g.unit_modulus())
        throw std::invalid_argument("apply_isometry: rotation is not unit-modulus");
    PointSet out;
    out.n = s.n;
    out.windowed = s.windowed;
    out.window = s.window - (g.trans.is_zero() ? 0.0 : g.trans.abs_embed());
    out.points.reserve(s.points.size());
    for (const auto& p : s.points) out.points.push_back(g(p));
    return out;
}

inline Patch apply_isometry(const Isometry& g, const Patch& p) {
    if (!p.tiles.empty() && g.n() != p.field())
        throw std::invalid_argument("apply_isometry: field mismatch");
    Patch out{p.system, {}};
    out.tiles.reserve(p.tiles.size());
    for (const auto& t : p.tiles) out.tiles.push_back({t.proto, compose(g, t.pose)});
    return out;
}

// All pairwise differences x - y with |x - y| <= radius, exact, deduplicated.
// 0 is included for nonempty input; the result is symmetric under negation.
inline std::vector<Cyclo> difference_set(const PointSet& s, double radius) {
    if (radius > s.window + 1e-9)
        throw std::invalid_argument("difference_set: radius exceeds window");
    PointIndex seen;
    std::vector<Cyclo> out;
    if (s.points.empty()) return out;
    CellIndex ix(s.points, std::max(radius, 0.5));
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        auto e = s.points[i].embed();
        ix.for_near(e.real(), e.imag(), radius + 1e-6, [&](std::size_t j) {
            Cyclo d = s.points[i] - s.points[j];
            if (!within_radius(d, radius)) return;
            if (seen.insert(d).second) out.push_back(d);
        });
    }
    return out;
}

// ---- Exact convex-polygon predicates -------------------------------------

// Placed polygons are kept in counterclockwise order.
using Polygon = std::vector<Point>;

inline Polygon apply_to_polygon(const Isometry& g, const Polygon& poly) {
    Polygon out;
    out.reserve(poly.size());
    for (const auto& v : poly) out.push_back(g(v));
    if (g.reflect) std::reverse(out.begin(), out.end());
    return out;
}

// Twice the signed area times 2i, as an exact field element:
// U = sum_i (conj(v_i) v_{i+1} - conj(v_{i+1}) v_i). Areas are compared via U.
inline Cyclo area_element(const Polygon& poly) {
    Cyclo u(poly.empty() ? 4 : poly.front().n());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        Cyclo w = a.conj() * b;
        u += w - w.conj();
    }
    return u;
}

inline double polygon_area(const Polygon& poly) {
    // U = 4i * area; embed and divide.
    return area_element(poly).embed().imag() / 4.0;
}

// Strict interior test for convex CCW polygons.
inline bool point_strictly_inside(const Polygon& poly, const Point& p) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (orientation(poly[i], poly[(i + 1) % poly.size()], p) <= 0) return false;
    }
    return true;
}

inline bool point_inside_or_boundary(const Polygon& poly, const Point& p) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (orientation(poly[i], poly[(i + 1) % poly.size()], p) < 0) return false;
    }
    return true;
}

// True if the interiors of two convex CCW polygons are disjoint (separating
// axis over both edge sets; touching along edges or vertices is allowed).
inline bool interiors_disjoint(const Polygon& a, const Polygon& b) {
    auto separated_by_edge_of = [](const Polygon& host, const Polygon& other) {
        for (std::size_t i = 0; i < host.size(); ++i) {
            const Point& p = host[i];
            const Point& q = host[(i + 1) % host.size()];
            bool all_out = true;
            for (const auto& v : other) {
                if (orientation(p, q, v) > 0) { all_out = false; break; }
            }
            if (all_out) return true;
        }
        return false;
    };
    return separated_by_edge_of(a, b) || separated_by_edge_of(b, a);
}

inline bool polygon_contains(const Polygon& outer, const Polygon& inner) {
    for (const auto& v : inner)
        if (!point_inside_or_boundary(outer, v)) return false;
    return true;
}

} // namespace aperiodica
