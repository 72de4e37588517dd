#pragma once

#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aperiodica/parallel.hpp"
#include "aperiodica/prototiles.hpp"

namespace aperiodica {

// Stone inflation rule: scale the plane by `factor`, then dissect each scaled
// tile into unit-size children. `children[p]` places the children of the
// unreflected prototile p inside factor * reference(p); reflected parents are
// substituted by the mirrored rule automatically through pose composition.
struct ChildPlacement {
    Proto proto;
    Isometry rel;
};

struct InflationRule {
    System system;
    Cyclo factor; // real for AB/Penrose, the scale-rotation 2+i for pinwheel
    std::map<Proto, std::vector<ChildPlacement>> children;

    std::vector<Proto> types() const {
        std::vector<Proto> t;
        for (const auto& kv : children) t.push_back(kv.first);
        return t;
    }
};

namespace rules {

// Ammann-Beenker. factor = 1 + sqrt2, field Q(zeta8).
// Triangle reference {0, sqrt2, w}; rhombus reference {0, 1, 1+w, w}.
inline const InflationRule& ammann_beenker() {
    static const InflationRule rule = [] {
        int n = 8;
        auto w = [&](int k) { return Cyclo::zeta(n, k); };
        Cyclo one = Cyclo::integer(n, 1);
        Cyclo lam = one + w(1) - w(3); // 1 + sqrt2
        Cyclo lam_w = one + w(1) + w(2); // lam * zeta8
        InflationRule r;
        r.system = System::AmmannBeenker;
        r.factor = lam;
        r.children[Proto::AbTriangle] = {
            {Proto::AbRhombus, Isometry(one, false, Cyclo(n))},
            {Proto::AbTriangle, Isometry(w(4), true, lam)},
            {Proto::AbTriangle, Isometry(w(3), false, one + lam)},
            {Proto::AbRhombus, Isometry(w(2), false, lam)},
            {Proto::AbTriangle, Isometry(w(5), false, lam_w)},
        };
        r.children[Proto::AbRhombus] = {
            {Proto::AbRhombus, Isometry(one, false, Cyclo(n))},
            {Proto::AbTriangle, Isometry(w(4), true, lam)},
            {Proto::AbTriangle, Isometry(w(5), false, lam_w)},
            {Proto::AbRhombus, Isometry(w(6), false, lam_w)},
            {Proto::AbTriangle, Isometry(one, true, lam_w)},
            {Proto::AbTriangle, Isometry(w(1), false, lam)},
            {Proto::AbRhombus, Isometry(w(4), false, lam + lam_w)},
        };
        return r;
    }();
    return rule;
}

// Rhombic Penrose on Robinson halves. factor = tau, field Q(zeta5).
inline const InflationRule& penrose() {
    static const InflationRule rule = [] {
        auto z10 = [&](int k) { return Cyclo::rotation(5, k); };
        Cyclo tau = z10(1) + z10(9);
        InflationRule r;
        r.system = System::Penrose;
        r.factor = tau;
        r.children[Proto::PenroseHalfThin] = {
            {Proto::PenroseHalfThick, Isometry(z10(6), false, tau * z10(1))},
            {Proto::PenroseHalfThin, Isometry(z10(7), false, tau * z10(1))},
        };
        r.children[Proto::PenroseHalfThick] = {
            {Proto::PenroseHalfThick, Isometry(z10(4), false, tau * tau)},
            {Proto::PenroseHalfThick, Isometry(z10(5), true, tau)},
            {Proto::PenroseHalfThin, Isometry(z10(4), true, tau)},
        };
        return r;
    }();
    return rule;
}

// Pinwheel. factor = 2 + i, field Q(i); one triangle into five.
inline const InflationRule& pinwheel() {
    static const InflationRule rule = [] {
        int n = 4;
        Cyclo i = Cyclo::zeta(n, 1);
        Cyclo one = Cyclo::integer(n, 1);
        Cyclo two = Cyclo::integer(n, 2);
        InflationRule r;
        r.system = System::Pinwheel;
        r.factor = two + i;
        r.children[Proto::PinwheelTriangle] = {
            {Proto::PinwheelTriangle, Isometry(-i, true, two * i)},
            {Proto::PinwheelTriangle, Isometry(-one, false, two + two * i)},
            {Proto::PinwheelTriangle, Isometry(one, true, two + two * i)},
            {Proto::PinwheelTriangle, Isometry(one, true, i)},
            {Proto::PinwheelTriangle, Isometry(one, false, i)},
        };
        return r;
    }();
    return rule;
}

} // namespace rules

inline const InflationRule& rule_for(System s) {
    switch (s) {
    case System::AmmannBeenker: return rules::ammann_beenker();
    case System::Penrose: return rules::penrose();
    case System::Pinwheel: return rules::pinwheel();
    }
    throw std::logic_error("rule_for: bad system");
}

// Children of one placed tile under one inflation step.
inline void inflate_tile(const InflationRule& rule, const Tile& t, std::vector<Tile>& out) {
    const Cyclo& f = rule.factor;
    // The scaled tile f*g(ref) equals h(f*ref) with h as below.
    Isometry h = t.pose;
    h.trans = f * t.pose.trans;
    if (t.pose.reflect) h.rot = t.pose.rot * f * f.conj().inverse();
    auto it = rule.children.find(t.proto);
    if (it == rule.children.end())
        throw std::invalid_argument("inflate: prototile does not belong to this rule");
    for (const auto& c : it->second) out.push_back({c.proto, compose(h, c.rel)});
}

// steps >= 0 inflation steps; children ordered by parent index then child
// index, so output is deterministic.
inline Patch inflate(const InflationRule& rule, const Patch& p, int steps) {
    if (p.system != rule.system)
        throw std::invalid_argument("inflate: patch/rule system mismatch");
    if (steps < 0) throw std::invalid_argument("inflate: negative steps");
    Patch cur = p;
    for (int s = 0; s < steps; ++s) {
        std::size_t fanout = rule.children.begin()->second.size();
        std::vector<Tile> next(cur.tiles.size() * fanout);
        bool uniform = true;
        for (const auto& kv : rule.children)
            if (kv.second.size() != fanout) uniform = false;
        if (uniform) {
            parallel_for(cur.tiles.size(), [&](std::size_t i) {
                std::vector<Tile> kids;
                kids.reserve(fanout);
                inflate_tile(rule, cur.tiles[i], kids);
                for (std::size_t j = 0; j < kids.size(); ++j) next[i * fanout + j] = kids[j];
            });
        } else {
            next.clear();
            for (const auto& t : cur.tiles) inflate_tile(rule, t, next);
        }
        cur.tiles = std::move(next);
    }
    return cur;
}

inline Patch inflate(const Patch& p, int steps) { return inflate(rule_for(p.system), p, steps); }

// Child-count bookkeeping of the dissection; columns indexed by parent type.
struct SubstitutionMatrix {
    std::vector<Proto> types;
    std::vector<std::vector<long>> counts; // counts[child][parent]

    std::vector<long> apply(const std::vector<long>& v) const {
        std::vector<long> out(types.size(), 0);
        for (std::size_t i = 0; i < types.size(); ++i)
            for (std::size_t j = 0; j < types.size(); ++j)
                out[i] += counts[i][j] * v[j];
        return out;
    }

    std::vector<long> power_apply(std::vector<long> v, int k) const {
        for (int s = 0; s < k; ++s) v = apply(v);
        return v;
    }

    double perron_eigenvalue() const {
        if (types.size() == 1) return double(counts[0][0]);
        double a = double(counts[0][0]), b = double(counts[0][1]);
        double c = double(counts[1][0]), d = double(counts[1][1]);
        double tr = a + d, det = a * d - b * c;
        return (tr + std::sqrt(tr * tr - 4 * det)) / 2.0;
    }
};

inline SubstitutionMatrix substitution_matrix(const InflationRule& rule) {
    SubstitutionMatrix m;
    m.types = rule.types();
    m.counts.assign(m.types.size(), std::vector<long>(m.types.size(), 0));
    auto index_of = [&](Proto p) {
        for (std::size_t i = 0; i < m.types.size(); ++i)
            if (m.types[i] == p) return i;
        throw std::logic_error("substitution_matrix: unknown type");
    };
    for (std::size_t j = 0; j < m.types.size(); ++j)
        for (const auto& c : rule.children.at(m.types[j]))
            m.counts[index_of(c.proto)][j]++;
    return m;
}

inline std::vector<long> type_counts(const InflationRule& rule, const Patch& p) {
    auto types = rule.types();
    std::vector<long> v(types.size(), 0);
    for (const auto& t : p.tiles)
        for (std::size_t i = 0; i < types.size(); ++i)
            if (types[i] == t.proto) v[i]++;
    return v;
}

// Stone-property verification: exact area accounting, pairwise interior
// disjointness and exact cover of the scaled parent, for every prototile and
// both chiralities. Failures are reported, not thrown.
struct StoneReport {
    bool area_ok = true;
    bool disjoint_ok = true;
    bool cover_ok = true;
    SubstitutionMatrix matrix;
    double perron = 0.0;
    double factor_norm = 0.0;

    bool all_ok() const { return area_ok && disjoint_ok && cover_ok; }
};

inline StoneReport verify_stone_inflation(const InflationRule& rule) {
    StoneReport rep;
    rep.matrix = substitution_matrix(rule);
    rep.perron = rep.matrix.perron_eigenvalue();
    rep.factor_norm = rule.factor.abs2().embed().real();
    int n = rule.factor.n();
    for (const auto& kv : rule.children) {
        for (bool mirrored : {false, true}) {
            Isometry parent_pose = Isometry(Cyclo::integer(n, 1), mirrored, Cyclo(n));
            Tile parent{kv.first, parent_pose};
            std::vector<Tile> kids;
            inflate_tile(rule, parent, kids);
            // Scaled parent outline: factor times the (possibly mirrored)
            // reference polygon.
            Polygon big = apply_to_polygon(Isometry(rule.factor, false, Cyclo(n)),
                                           apply_to_polygon(parent_pose, proto_info(kv.first).verts));
            std::vector<Polygon> polys;
            polys.reserve(kids.size());
            Cyclo area_sum(n);
            for (const auto& k : kids) {
                polys.push_back(tile_polygon(k));
                area_sum += area_element(polys.back());
            }
            if (!(area_sum == area_element(big))) rep.area_ok = false;
            for (std::size_t i = 0; i < polys.size() && rep.disjoint_ok; ++i)
                for (std::size_t j = i + 1; j < polys.size(); ++j)
                    if (!interiors_disjoint(polys[i], polys[j])) { rep.disjoint_ok = false; break; }
            bool contained = true;
            for (const auto& poly : polys)
                if (!polygon_contains(big, poly)) { contained = false; break; }
            if (!(contained && rep.area_ok && rep.disjoint_ok)) rep.cover_ok = rep.cover_ok && false;
        }
    }
    return rep;
}

// ---- Seeds and fixed-point patches ----------------------------------------

enum class Seed { AbSquare, AbOctagon, PenroseSun, PinwheelOrigin };

inline std::string seed_name(Seed s) {
    switch (s) {
    case Seed::AbSquare: return "square";
    case Seed::AbOctagon: return "octagon";
    case Seed::PenroseSun: return "sun";
    case Seed::PinwheelOrigin: return "origin";
    }
    return "?";
}

inline Seed seed_from_name(System sys, const std::string& s) {
    if (sys == System::AmmannBeenker && s == "square") return Seed::AbSquare;
    if (sys == System::AmmannBeenker && s == "octagon") return Seed::AbOctagon;
    if (sys == System::Penrose && s == "sun") return Seed::PenroseSun;
    if (sys == System::Pinwheel && s == "origin") return Seed::PinwheelOrigin;
    throw std::invalid_argument("illegal seed '" + s + "' for system " + system_name(sys));
}

// AB square seed: unit square with its marked diagonal on the real axis,
// centred at the origin; exact fixed point of the squared rule.
inline Patch ab_square_seed() {
    int n = 8;
    Cyclo half_s = (Cyclo::zeta(n, 1) - Cyclo::zeta(n, 3)) * Rational(1, 2);
    Patch p{System::AmmannBeenker, {}};
    p.tiles.push_back({Proto::AbTriangle, Isometry(Cyclo::integer(n, 1), false, -half_s)});
    p.tiles.push_back({Proto::AbTriangle, Isometry(Cyclo::integer(n, 1), true, -half_s)});
    return p;
}

// AB octagonal seed: 16 triangles + 16 rhombuses with exact D8; a sub-patch
// of the once-inflated central 8-star, hence nested under one inflation.
inline Patch ab_octagon_seed() {
    int n = 8;
    auto w = [&](int k) { return Cyclo::zeta(n, k); };
    Cyclo lam_w = Cyclo::integer(n, 1) + w(1) + w(2);
    Patch p{System::AmmannBeenker, {}};
    for (int j = 0; j < 8; ++j) {
        Cyclo rj = w(j);
        Cyclo tj = rj * lam_w;
        p.tiles.push_back({Proto::AbRhombus, Isometry(rj, false, Cyclo(n))});
        p.tiles.push_back({Proto::AbTriangle, Isometry(w((j + 5) % 8), false, tj)});
        p.tiles.push_back({Proto::AbTriangle, Isometry(w((j + 5) % 8), true, tj)});
        p.tiles.push_back({Proto::AbRhombus, Isometry(w((j + 6) % 8), false, tj)});
    }
    return p;
}

// Penrose sun: five thick rhombuses (ten halves) around the origin, exact D5.
inline Patch penrose_sun_seed() {
    Patch p{System::Penrose, {}};
    for (int j = 0; j < 5; ++j) {
        Cyclo r = Cyclo::rotation(5, 2 * j);
        p.tiles.push_back({Proto::PenroseHalfThick, Isometry(r, false, Cyclo(5))});
        p.tiles.push_back({Proto::PenroseHalfThick, Isometry(r, true, Cyclo(5))});
    }
    return p;
}

// Pinwheel seed: one triangle with its control point at the origin.
inline Patch pinwheel_origin_seed() {
    int n = 4;
    Cyclo c = (Cyclo::integer(n, 1) + Cyclo::zeta(n, 1)) * Rational(-1, 2);
    Patch p{System::Pinwheel, {}};
    p.tiles.push_back({Proto::PinwheelTriangle, Isometry(Cyclo::integer(n, 1), false, c)});
    return p;
}

inline Patch seed_patch(Seed s) {
    switch (s) {
    case Seed::AbSquare: return ab_square_seed();
    case Seed::AbOctagon: return ab_octagon_seed();
    case Seed::PenroseSun: return penrose_sun_seed();
    case Seed::PinwheelOrigin: return pinwheel_origin_seed();
    }
    throw std::logic_error("seed_patch: bad seed");
}

// Fixed-point generations. The AB square and the Penrose sun nest under the
// squared rule (k counts double steps); the Robinson rule additionally turns
// the central configuration by zeta10 per double step, which a compensating
// rotation undoes so that patch(k) is an exact sub-patch of patch(k+1). The
// octagon and pinwheel seeds nest under single applications.
inline int seed_steps_per_k(Seed s) {
    return (s == Seed::AbSquare || s == Seed::PenroseSun) ? 2 : 1;
}

inline Patch fixed_point_patch(System sys, Seed seed, int k) {
    Patch s = seed_patch(seed);
    if (s.system != sys) throw std::invalid_argument("fixed_point_patch: seed/system mismatch");
    Patch out = inflate(rule_for(sys), s, k * seed_steps_per_k(seed));
    if (seed == Seed::PenroseSun) {
        Isometry untwist = Isometry::linear(Cyclo::rotation(5, (10 - (k % 10)) % 10), false);
        out = apply_isometry(untwist, out);
    }
    return out;
}

// Largest analysis window for which every tile meeting the ball lies in the
// patch: distance from 0 to the patch boundary minus one tile diameter.
inline double suggested_window(const Patch& p) {
    // Boundary edges appear on exactly one tile.
    struct EKey {
        std::size_t h;
        bool operator==(const EKey& o) const { return h == o.h; }
    };
    std::unordered_map<std::size_t, std::pair<std::pair<Point, Point>, int>> edges;
    for (std::size_t i = 0; i < p.tiles.size(); ++i) {
        Polygon poly = tile_polygon(p.tiles[i]);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            Point a = poly[k], b = poly[(k + 1) % poly.size()];
            if (b.lex_less(a)) std::swap(a, b);
            std::size_t h = a.hash() * 1000003u ^ b.hash();
            auto it = edges.find(h);
            if (it == edges.end()) edges.emplace(h, std::make_pair(std::make_pair(a, b), 1));
            else it->second.second++;
        }
    }
    double best = 1e300;
    for (const auto& kv : edges) {
        if (kv.second.second != 1) continue;
        auto ea = kv.second.first.first.embed();
        auto eb = kv.second.first.second.embed();
        double ax = ea.real(), ay = ea.imag(), bx = eb.real(), by = eb.imag();
        double dx = bx - ax, dy = by - ay;
        double len2 = dx * dx + dy * dy;
        double t = len2 > 0 ? std::max(0.0, std::min(1.0, -(ax * dx + ay * dy) / len2)) : 0.0;
        double px = ax + t * dx, py = ay + t * dy;
        best = std::min(best, std::hypot(px, py));
    }
    if (best > 1e299) return 0.0;
    return std::max(0.0, best - system_tile_diameter(p.system) - 1e-9);
}

// Delone representative of the patch: deduplicated polygon vertices for AB
// and Penrose, control points for the pinwheel, restricted to the window.
inline PointSet vertex_set(const Patch& p, double window) {
    double cap = suggested_window(p);
    if (window > cap + 1e-9)
        throw std::invalid_argument("vertex_set: window exceeds patch support (max " +
                                    std::to_string(cap) + ")");
    PointIndex seen;
    PointSet out;
    out.n = p.field();
    out.window = window;
    auto add = [&](const Point& v) {
        if (!within_radius(v, window)) return;
        if (seen.insert(v).second) out.points.push_back(v);
    };
    for (const auto& t : p.tiles) {
        const ProtoInfo& pi = proto_info(t.proto);
        if (pi.control) {
            add(t.pose(*pi.control));
        } else {
            for (const auto& v : pi.verts) add(t.pose(v));
        }
    }
    return out;
}

// Unwindowed variant: every vertex (or control point) of the patch, with the
// completeness radius recorded but not used as a filter.
inline PointSet vertex_set_all(const Patch& p) {
    PointIndex seen;
    PointSet out;
    out.n = p.field();
    out.window = suggested_window(p);
    out.windowed = false;
    for (const auto& t : p.tiles) {
        const ProtoInfo& pi = proto_info(t.proto);
        if (pi.control) {
            if (seen.insert(t.pose(*pi.control)).second)
                out.points.push_back(t.pose(*pi.control));
        } else {
            for (const auto& v : pi.verts) {
                Point pv = t.pose(v);
                if (seen.insert(pv).second) out.points.push_back(pv);
            }
        }
    }
    return out;
}

inline PointSet vertex_set(const Patch& p) { return vertex_set(p, suggested_window(p)); }

// Distinct placement rotations in a patch; strict growth across pinwheel
// generations is the finite witness of new directions per step.
inline std::size_t orientation_count(const Patch& p) {
    std::unordered_set<Cyclo, CycloHash> rots;
    for (const auto& t : p.tiles) rots.insert(t.pose.rot);
    return rots.size();
}

inline Cyclo patch_area_element(const Patch& p) {
    Cyclo acc(p.field());
    for (const auto& t : p.tiles) acc += area_element(tile_polygon(t));
    return acc;
}

} // namespace aperiodica
