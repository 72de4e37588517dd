#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "aperiodica/inflation.hpp"

namespace aperiodica {

// Raised when a point set is not the vertex set of a legal AB patch; carries
// the approximate location of the defect.
struct ReconstructionFailure : std::runtime_error {
    double x, y;
    ReconstructionFailure(const std::string& what, double px, double py)
        : std::runtime_error(what + " near (" + std::to_string(px) + ", " +
                             std::to_string(py) + ")"),
          x(px), y(py) {}
};

namespace detail {

struct QuadCandidate {
    std::array<Point, 4> corners; // CCW
    int dir;                      // side direction index (power of zeta8)
    bool is_square;
};

} // namespace detail

// Local reconstruction of the Ammann-Beenker tiling from its vertex set
// (the tiling-side half of the MLD pair). Empty unit rhombi/squares spanned
// by vertices are the tiles; square diagonals and all arrows are then pinned
// by constraint propagation of the edge arrows. Sound on the region three
// edge lengths inside the window.
inline Patch reconstruct_tiling(const PointSet& s) {
    if (s.n != 8)
        throw std::invalid_argument("reconstruct_tiling: only the Ammann-Beenker system");
    if (s.window < 3.0)
        throw ReconstructionFailure("window too small for reconstruction (need >= 3)", 0, 0);

    PointIndex have = index_points(s);
    CellIndex cells(s.points, 1.0);
    auto embed_of = [](const Point& p) { return p.embed(); };

    // --- collect empty unit quads -----------------------------------------
    std::vector<detail::QuadCandidate> quads;
    std::unordered_map<std::size_t, std::size_t> quad_seen; // canonical key -> index
    auto quad_key = [](std::array<Point, 4> c) {
        std::sort(c.begin(), c.end(), [](const Point& a, const Point& b) { return a.lex_less(b); });
        std::size_t h = 0;
        for (const auto& v : c) h = h * 1000003u ^ v.hash();
        return h;
    };
    auto interior_empty = [&](const Polygon& poly) {
        auto c0 = embed_of(poly[0]), c2 = embed_of(poly[2]);
        double cx = (c0.real() + c2.real()) / 2, cy = (c0.imag() + c2.imag()) / 2;
        bool empty = true;
        cells.for_near(cx, cy, 1.1, [&](std::size_t i) {
            if (!empty) return;
            if (point_strictly_inside(poly, s.points[i])) empty = false;
        });
        return empty;
    };

    for (const auto& p : s.points) {
        for (int k = 0; k < 8; ++k) {
            Cyclo u = Cyclo::zeta(8, k);
            for (int m : {1, 2}) { // 45 degrees: rhombus, 90 degrees: square
                Cyclo w = Cyclo::zeta(8, (k + m) % 8);
                Point b = p + u, d = p + w, c = p + u + w;
                if (!have.count(b) || !have.count(d) || !have.count(c)) continue;
                std::array<Point, 4> corners{p, b, c, d};
                std::size_t key = quad_key(corners);
                if (quad_seen.count(key)) continue;
                Polygon poly{p, b, c, d};
                if (!interior_empty(poly)) continue;
                quad_seen.emplace(key, quads.size());
                quads.push_back({corners, k, m == 2});
            }
        }
    }

    // --- overlaps mean the input was not a legal vertex set ---------------
    {
        std::vector<Point> centers;
        centers.reserve(quads.size());
        for (const auto& q : quads)
            centers.push_back((q.corners[0] + q.corners[2]) * Rational(1, 2));
        CellIndex qcells(centers, 1.0);
        for (std::size_t i = 0; i < quads.size(); ++i) {
            auto e = centers[i].embed();
            Polygon pi(quads[i].corners.begin(), quads[i].corners.end());
            bool bad = false;
            qcells.for_near(e.real(), e.imag(), 2.2, [&](std::size_t j) {
                if (bad || j <= i) return;
                Polygon pj(quads[j].corners.begin(), quads[j].corners.end());
                if (!interiors_disjoint(pi, pj)) bad = true;
            });
            if (bad)
                throw ReconstructionFailure("overlapping tile candidates", e.real(), e.imag());
        }
    }

    // --- angle sums certify coverage of the inner region ------------------
    {
        std::unordered_map<Point, int, PointKey> angle; // in 45-degree units
        auto bump = [&](const Point& v, int units) { angle[v] += units; };
        for (const auto& q : quads) {
            if (q.is_square) {
                for (const auto& v : q.corners) bump(v, 2);
            } else {
                bump(q.corners[0], 1);
                bump(q.corners[2], 1);
                bump(q.corners[1], 3);
                bump(q.corners[3], 3);
            }
        }
        double inner = s.window - 3.0;
        for (const auto& p : s.points) {
            if (!within_radius(p, inner)) continue;
            auto it = angle.find(p);
            int total = it == angle.end() ? 0 : it->second;
            if (total != 8) {
                auto e = p.embed();
                throw ReconstructionFailure("vertex star incomplete (angle sum " +
                                                std::to_string(total * 45) + ")",
                                            e.real(), e.imag());
            }
        }
    }

    // --- pin square diagonals by arrow propagation -------------------------
    // Each square has an A corner (the marked diagonal's head end); edges at
    // A point into A, the other two edges point into their C endpoint. For
    // edge i = (c_i, c_{i+1}) and A-corner d: head = d if d in {i, i+1},
    // otherwise the endpoint adjacent to d.
    auto square_head = [](int i, int d) {
        if (i == d || (i + 1) % 4 == d) return d;
        int b = (d + 2) % 4;
        return (i == b) ? (i + 1) % 4 : i;
    };

    struct EdgeRef {
        std::size_t quad;
        int edge; // 0..3
    };
    std::unordered_map<std::size_t, std::vector<EdgeRef>> edge_map;
    auto edge_key = [](Point a, Point b) {
        if (b.lex_less(a)) std::swap(a, b);
        return a.hash() * 1000003u ^ b.hash();
    };
    for (std::size_t qi = 0; qi < quads.size(); ++qi)
        for (int e = 0; e < 4; ++e)
            edge_map[edge_key(quads[qi].corners[std::size_t(e)],
                              quads[qi].corners[std::size_t((e + 1) % 4)])]
                .push_back({qi, e});

    std::vector<std::uint8_t> domain(quads.size(), 0xF); // bitmask over d
    // Unary constraints from rhombus neighbours; rhombus arrows head at tips.
    for (std::size_t qi = 0; qi < quads.size(); ++qi) {
        if (quads[qi].is_square) continue;
        for (int e = 0; e < 4; ++e) {
            const Point& a = quads[qi].corners[std::size_t(e)];
            const Point& b = quads[qi].corners[std::size_t((e + 1) % 4)];
            Point head = (e == 0 || e == 3) ? quads[qi].corners[0] : quads[qi].corners[2];
            for (const auto& ref : edge_map[edge_key(a, b)]) {
                if (ref.quad == qi || !quads[ref.quad].is_square) continue;
                auto& dom = domain[ref.quad];
                for (int d = 0; d < 4; ++d) {
                    if (!(dom & (1 << d))) continue;
                    int h = square_head(ref.edge, d);
                    if (!(quads[ref.quad].corners[std::size_t(h)] == head))
                        dom = std::uint8_t(dom & ~(1 << d));
                }
            }
        }
    }
    // Binary square-square constraints to a fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& kv : edge_map) {
            if (kv.second.size() != 2) continue;
            const EdgeRef r1 = kv.second[0], r2 = kv.second[1];
            if (!quads[r1.quad].is_square || !quads[r2.quad].is_square) continue;
            auto supported = [&](const EdgeRef& a, const EdgeRef& b) {
                std::uint8_t keep = 0;
                for (int da = 0; da < 4; ++da) {
                    if (!(domain[a.quad] & (1 << da))) continue;
                    Point ha = quads[a.quad].corners[std::size_t(square_head(a.edge, da))];
                    for (int db = 0; db < 4; ++db) {
                        if (!(domain[b.quad] & (1 << db))) continue;
                        Point hb = quads[b.quad].corners[std::size_t(square_head(b.edge, db))];
                        if (ha == hb) { keep = std::uint8_t(keep | (1 << da)); break; }
                    }
                }
                return keep;
            };
            std::uint8_t k1 = supported(r1, r2), k2 = supported(r2, r1);
            if (k1 != domain[r1.quad]) { domain[r1.quad] = k1; changed = true; }
            if (k2 != domain[r2.quad]) { domain[r2.quad] = k2; changed = true; }
        }
    }

    double inner = s.window - 3.0;
    auto quad_in_inner = [&](const detail::QuadCandidate& q) {
        for (const auto& v : q.corners)
            if (!within_radius(v, inner)) return false;
        return true;
    };

    // --- emit tiles ---------------------------------------------------------
    Patch out{System::AmmannBeenker, {}};
    Cyclo sqrt2 = Cyclo::zeta(8, 1) - Cyclo::zeta(8, 3);
    Cyclo sqrt2_inv = sqrt2.inverse();
    for (std::size_t qi = 0; qi < quads.size(); ++qi) {
        const auto& q = quads[qi];
        if (!q.is_square) {
            out.tiles.push_back({Proto::AbRhombus,
                                 Isometry(Cyclo::zeta(8, q.dir), false, q.corners[0])});
            continue;
        }
        std::uint8_t dom = domain[qi];
        if (dom == 0) {
            auto e = q.corners[0].embed();
            throw ReconstructionFailure("contradictory arrows around a square", e.real(), e.imag());
        }
        if ((dom & (dom - 1)) != 0) {
            // Ambiguous: tolerated outside the certified region only.
            if (quad_in_inner(q)) {
                auto e = q.corners[0].embed();
                throw ReconstructionFailure("underdetermined square diagonal", e.real(), e.imag());
            }
            continue;
        }
        int d = 0;
        while (!(dom & (1 << d))) ++d;
        Point A = q.corners[std::size_t(d)];
        Point B = q.corners[std::size_t((d + 2) % 4)];
        // The mirror pair with hypotenuse A->B covers both halves.
        Cyclo rot = (B - A) * sqrt2_inv;
        out.tiles.push_back({Proto::AbTriangle, Isometry(rot, false, A)});
        out.tiles.push_back({Proto::AbTriangle, Isometry(rot, true, A)});
    }
    return out;
}

} // namespace aperiodica
