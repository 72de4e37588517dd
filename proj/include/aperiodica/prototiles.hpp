#pragma once

#include <array>
#include <optional>
#include <vector>

#include "aperiodica/geometry.hpp"

namespace aperiodica {

// Edge decorations. Arrow is the single AB edge arrow; Single/Double are the
// Penrose arrow kinds; Diagonal marks the gluing edge of a half tile (square
// diagonal, rhombus base). head is the vertex index of the marked end: two
// tiles match across an edge when decoration kinds agree and the marked ends
// land on the same geometric point.
enum class DecorKind { None, Arrow, Single, Double, Diagonal };

struct EdgeDecor {
    int a, b;       // vertex indices of the edge
    DecorKind kind;
    int head;       // marked endpoint (vertex index), -1 if undecorated
};

struct ProtoInfo {
    Proto proto;
    System system;
    Polygon verts;               // CCW reference vertices
    std::vector<EdgeDecor> edges;
    std::optional<Point> control; // pinwheel Delone control point
    double diameter;             // circumscribed diameter, for window bounds
    // Decoration-preserving self-maps (besides the identity).
    std::vector<Isometry> stabilizer;
};

namespace detail {

inline Cyclo zc(int n, int k) { return Cyclo::zeta(n, k); }

inline const ProtoInfo& ab_triangle_info() {
    static const ProtoInfo info = [] {
        // Vertices A = 0, B = sqrt2, C = zeta8 (right angle at C, legs 1).
        int n = 8;
        Cyclo s = zc(n, 1) - zc(n, 3); // sqrt 2
        ProtoInfo pi;
        pi.proto = Proto::AbTriangle;
        pi.system = System::AmmannBeenker;
        pi.verts = {Cyclo(n), s, zc(n, 1)};
        // Hypotenuse pairs mirror-glued halves A-end to A-end; legs carry the
        // AB edge arrows (head at A resp. C).
        pi.edges = {
            {0, 1, DecorKind::Diagonal, 0},
            {1, 2, DecorKind::Arrow, 2},
            {2, 0, DecorKind::Arrow, 0},
        };
        pi.diameter = 1.4142135623730951;
        return pi;
    }();
    return info;
}

inline const ProtoInfo& ab_rhombus_info() {
    static const ProtoInfo info = [] {
        // Vertices 0, 1, 1+w, w (tips at 0 and 1+w), w = zeta8.
        int n = 8;
        Cyclo one = Cyclo::integer(n, 1);
        Cyclo w = zc(n, 1);
        ProtoInfo pi;
        pi.proto = Proto::AbRhombus;
        pi.system = System::AmmannBeenker;
        pi.verts = {Cyclo(n), one, one + w, w};
        // Every side points at its nearest 45-degree tip.
        pi.edges = {
            {0, 1, DecorKind::Arrow, 0},
            {1, 2, DecorKind::Arrow, 2},
            {2, 3, DecorKind::Arrow, 2},
            {3, 0, DecorKind::Arrow, 0},
        };
        pi.diameter = 1.8477590650225735; // long diagonal
        // The arrow pattern is invariant under the rhombus' full D2:
        // C2 (z -> 1+w-z), the long-axis mirror (z -> w*conj z), and their
        // product.
        Isometry c2(-one, false, one + w);
        Isometry lm(w, true, Cyclo(n));
        pi.stabilizer = {c2, lm, compose(c2, lm)};
        return pi;
    }();
    return info;
}

inline const ProtoInfo& penrose_half_thick_info() {
    static const ProtoInfo info = [] {
        // O-half of the thick rhombus: b = 0, c = tau, h = zeta10 (108 at h);
        // the base [b,c] is the rhombus' long diagonal.
        int n = 5;
        Cyclo z10 = Cyclo::rotation(5, 1);
        Cyclo tau = z10 + Cyclo::rotation(5, 9);
        ProtoInfo pi;
        pi.proto = Proto::PenroseHalfThick;
        pi.system = System::Penrose;
        pi.verts = {Cyclo(n), tau, z10}; // b, c, h  (CCW)
        pi.edges = {
            {0, 1, DecorKind::Diagonal, 0},
            {1, 2, DecorKind::Double, 2}, // [c,h]: double, head at h
            {2, 0, DecorKind::Single, 0}, // [h,b]: single, head at b
        };
        pi.diameter = 1.618033988749895;
        return pi;
    }();
    return info;
}

inline const ProtoInfo& penrose_half_thin_info() {
    static const ProtoInfo info = [] {
        // A-half of the thin rhombus: apex = 0, b = 1, c = zeta10;
        // base [b,c] is the rhombus' short diagonal.
        int n = 5;
        Cyclo z10 = Cyclo::rotation(5, 1);
        ProtoInfo pi;
        pi.proto = Proto::PenroseHalfThin;
        pi.system = System::Penrose;
        pi.verts = {Cyclo(n), Cyclo::integer(n, 1), z10}; // apex, b, c
        pi.edges = {
            {1, 2, DecorKind::Diagonal, 1},
            {0, 1, DecorKind::Single, 0}, // [apex,b]: single, head at apex
            {2, 0, DecorKind::Double, 0}, // [apex,c]: double, head at apex
        };
        pi.diameter = 1.0;
        return pi;
    }();
    return info;
}

inline const ProtoInfo& pinwheel_triangle_info() {
    static const ProtoInfo info = [] {
        // A = 0 (right angle), B = 2, C = i; control point (1+i)/2.
        int n = 4;
        Cyclo i = zc(n, 1);
        ProtoInfo pi;
        pi.proto = Proto::PinwheelTriangle;
        pi.system = System::Pinwheel;
        pi.verts = {Cyclo(n), Cyclo::integer(n, 2), i};
        pi.edges = {
            {0, 1, DecorKind::None, -1},
            {1, 2, DecorKind::None, -1},
            {2, 0, DecorKind::None, -1},
        };
        pi.control = (Cyclo::integer(n, 1) + i) * Rational(1, 2);
        pi.diameter = 2.23606797749979;
        return pi;
    }();
    return info;
}

} // namespace detail

inline const ProtoInfo& proto_info(Proto p) {
    switch (p) {
    case Proto::AbTriangle: return detail::ab_triangle_info();
    case Proto::AbRhombus: return detail::ab_rhombus_info();
    case Proto::PenroseHalfThick: return detail::penrose_half_thick_info();
    case Proto::PenroseHalfThin: return detail::penrose_half_thin_info();
    case Proto::PinwheelTriangle: return detail::pinwheel_triangle_info();
    }
    throw std::logic_error("proto_info: bad prototile");
}

inline Polygon tile_polygon(const Tile& t) {
    return apply_to_polygon(t.pose, proto_info(t.proto).verts);
}

inline double system_tile_diameter(System s) {
    switch (s) {
    case System::AmmannBeenker: return detail::ab_rhombus_info().diameter;
    case System::Penrose: return detail::penrose_half_thick_info().diameter;
    case System::Pinwheel: return detail::pinwheel_triangle_info().diameter;
    }
    return 2.0;
}

// A placed, decorated edge of a tile.
struct PlacedEdge {
    Point a, b;          // endpoints in tile traversal order
    DecorKind kind;
    Point head;          // marked endpoint (valid unless kind == None)
    std::size_t tile;    // index into the patch
    int ccw;             // +1 if the placed polygon traverses a->b leaving the
                         // interior on the left, -1 otherwise
};

inline std::vector<PlacedEdge> tile_edges(const Patch& patch, std::size_t idx) {
    const Tile& t = patch.tiles[idx];
    const ProtoInfo& pi = proto_info(t.proto);
    std::vector<PlacedEdge> out;
    out.reserve(pi.edges.size());
    int flip = t.pose.reflect ? -1 : 1;
    for (const auto& e : pi.edges) {
        PlacedEdge pe;
        pe.a = t.pose(pi.verts[std::size_t(e.a)]);
        pe.b = t.pose(pi.verts[std::size_t(e.b)]);
        pe.kind = e.kind;
        pe.head = e.head >= 0 ? t.pose(pi.verts[std::size_t(e.head)]) : Cyclo(patch.field());
        pe.tile = idx;
        pe.ccw = flip;
        out.push_back(pe);
    }
    return out;
}

// Canonical placement: tiles whose decoration has self-symmetries (the AB
// rhombus) admit several poses describing the same decorated tile; pick the
// lexicographically least. Used by tile equality, dedup and subset checks.
inline Tile canonical_tile(const Tile& t) {
    const auto& stab = proto_info(t.proto).stabilizer;
    if (stab.empty()) return t;
    Tile best = t;
    auto less = [](const Tile& x, const Tile& y) {
        if (x.pose.reflect != y.pose.reflect) return !x.pose.reflect;
        if (x.pose.rot != y.pose.rot) return x.pose.rot.lex_less(y.pose.rot);
        return x.pose.trans.lex_less(y.pose.trans);
    };
    for (const auto& s : stab) {
        Tile cand{t.proto, compose(t.pose, s)};
        if (less(cand, best)) best = cand;
    }
    return best;
}

struct TileKey {
    std::size_t operator()(const Tile& t) const {
        return std::size_t(t.proto) * 1000003u ^ t.pose.hash();
    }
};

// Exact multiset-free subset test on canonical tiles.
inline bool patch_subset(const Patch& small, const Patch& big) {
    std::unordered_set<Tile, TileKey> set;
    set.reserve(big.tiles.size() * 2);
    for (const auto& t : big.tiles) set.insert(canonical_tile(t));
    for (const auto& t : small.tiles)
        if (!set.count(canonical_tile(t))) return false;
    return true;
}

inline bool patch_equal(const Patch& a, const Patch& b) {
    return a.tiles.size() == b.tiles.size() && patch_subset(a, b) && patch_subset(b, a);
}

} // namespace aperiodica
