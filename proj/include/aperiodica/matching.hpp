#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "aperiodica/prototiles.hpp"

namespace aperiodica {

// A matching-rule violation on a shared edge (or a face-to-face defect).
struct MatchViolation {
    std::size_t tile_a, tile_b; // tile_b == tile_a for one-sided defects
    Point endpoint_a, endpoint_b;
    std::string reason;
};

struct MatchReport {
    std::vector<MatchViolation> violations;     // decoration mismatches
    std::vector<MatchViolation> face_to_face;   // geometric adjacency defects
    bool ok() const { return violations.empty() && face_to_face.empty(); }
};

// Checks every shared edge of the patch: kinds must agree, the marked ends
// must coincide, and the two tiles must lie on opposite sides. Hypotenuse
// and base edges (Diagonal) must pair into the mirror-glued square/rhombus.
// T-junctions (a vertex interior to another tile's edge) are reported as
// face-to-face violations. Undecorated systems (pinwheel) are rejected.
inline MatchReport validate_matching_rules(const Patch& p) {
    if (p.system == System::Pinwheel)
        throw std::invalid_argument("validate_matching_rules: pinwheel tiles carry no decorations");
    MatchReport rep;

    struct Entry {
        PlacedEdge edge;
        bool forward; // true if stored key order (a,b) equals edge (a,b)
    };
    std::unordered_map<std::size_t, std::vector<Entry>> by_edge;
    std::vector<PlacedEdge> all;
    for (std::size_t i = 0; i < p.tiles.size(); ++i) {
        for (auto& e : tile_edges(p, i)) {
            Point a = e.a, b = e.b;
            bool forward = true;
            if (b.lex_less(a)) { std::swap(a, b); forward = false; }
            std::size_t h = a.hash() * 1000003u ^ b.hash();
            by_edge[h].push_back({e, forward});
            all.push_back(e);
        }
    }

    for (auto& kv : by_edge) {
        auto& entries = kv.second;
        if (entries.size() > 2) {
            rep.face_to_face.push_back({entries[0].edge.tile, entries[1].edge.tile,
                                        entries[0].edge.a, entries[0].edge.b,
                                        "edge shared by more than two tiles"});
            continue;
        }
        if (entries.size() != 2) continue;
        const PlacedEdge& ea = entries[0].edge;
        const PlacedEdge& eb = entries[1].edge;
        // Opposite sides: traversal directions must be opposite once tile
        // orientation is accounted for.
        int dir_a = entries[0].forward ? ea.ccw : -ea.ccw;
        int dir_b = entries[1].forward ? eb.ccw : -eb.ccw;
        if (dir_a == dir_b) {
            rep.face_to_face.push_back({ea.tile, eb.tile, ea.a, ea.b,
                                        "tiles on the same side of a shared edge"});
            continue;
        }
        if (ea.kind != eb.kind) {
            rep.violations.push_back({ea.tile, eb.tile, ea.a, ea.b,
                                      "decoration kinds differ"});
            continue;
        }
        if (ea.kind == DecorKind::None) continue;
        if (!(ea.head == eb.head)) {
            rep.violations.push_back({ea.tile, eb.tile, ea.a, ea.b,
                                      "arrow directions differ"});
        }
    }

    // T-junction scan: any tile vertex lying strictly inside another edge.
    std::vector<Point> verts;
    PointIndex seen;
    for (std::size_t i = 0; i < p.tiles.size(); ++i)
        for (const auto& v : tile_polygon(p.tiles[i]))
            if (seen.insert(v).second) verts.push_back(v);
    std::vector<std::pair<double, double>> emb;
    emb.reserve(verts.size());
    for (const auto& v : verts) {
        auto e = v.embed();
        emb.emplace_back(e.real(), e.imag());
    }
    CellIndex ix(verts, 1.0);
    for (const auto& e : all) {
        auto ca = e.a.embed(), cb = e.b.embed();
        double mx = (ca.real() + cb.real()) / 2, my = (ca.imag() + cb.imag()) / 2;
        double r = std::hypot(cb.real() - ca.real(), cb.imag() - ca.imag()) / 2 + 1e-6;
        Cyclo d = e.b - e.a;
        ix.for_near(mx, my, r, [&](std::size_t vi) {
            const Point& v = verts[vi];
            if (v == e.a || v == e.b) return;
            // v strictly between a and b on the segment: collinear and
            // 0 < dot((v-a), d) < |d|^2.
            Cyclo va = v - e.a;
            if (cross_sign(d, va) != 0) return;
            Cyclo proj = d.conj() * va;
            if (proj.sign_re() <= 0) return;
            if ((d.abs2() - proj).sign_re() <= 0) return;
            rep.face_to_face.push_back({e.tile, e.tile, e.a, e.b,
                                        "vertex interior to an edge (not face-to-face)"});
        });
    }
    return rep;
}

} // namespace aperiodica
