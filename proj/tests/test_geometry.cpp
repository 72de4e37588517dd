#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aperiodica/geometry.hpp"
#include "aperiodica/prototiles.hpp"

using namespace aperiodica;

namespace {

PointSet z_sample(int lo, int hi, double window) {
    PointSet s;
    s.n = 4;
    s.window = window;
    for (int k = lo; k <= hi; ++k) s.points.push_back(Cyclo::integer(4, k));
    return s;
}

Isometry random_isometry(int n, std::mt19937_64& gen) {
    int order = Cyclo::max_rotation_order(n);
    Cyclo rot = Cyclo::rotation(n, int(gen() % std::uint64_t(order)));
    bool refl = gen() & 1;
    Cyclo t(n);
    for (int k = 0; k < Cyclo::phi(n); ++k)
        t.set_coeff(k, Rational(std::int64_t(gen() % 21) - 10, std::int64_t(gen() % 4) + 1));
    return Isometry(rot, refl, t);
}

} // namespace

TEST_CASE("isometry composition and inverse round trip", "[property]") {
    std::mt19937_64 gen(21);
    for (int n : {4, 5, 8}) {
        for (int trial = 0; trial < 100; ++trial) {
            Isometry g = random_isometry(n, gen), h = random_isometry(n, gen);
            Cyclo z(n);
            for (int k = 0; k < Cyclo::phi(n); ++k)
                z.set_coeff(k, Rational(std::int64_t(gen() % 15) - 7));
            REQUIRE(compose(g, h)(z) == g(h(z)));
            REQUIRE(compose(g, inverse(g))(z) == z);
            REQUIRE(inverse(g)(g(z)) == z);
            REQUIRE(g.unit_modulus());
        }
    }
}

TEST_CASE("identity preserves point sets, translation shrinks the window") {
    PointSet s = z_sample(-3, 3, 3.0);
    PointSet id = apply_isometry(Isometry::identity(4), s);
    REQUIRE(id.points == s.points);
    REQUIRE(id.window == Catch::Approx(3.0));

    PointSet t = apply_isometry(Isometry::translation(Cyclo::integer(4, 1)), s);
    REQUIRE(t.window == Catch::Approx(2.0));
    std::vector<Point> expect;
    for (int k = -2; k <= 4; ++k) expect.push_back(Cyclo::integer(4, k));
    REQUIRE(t.points == expect);
}

TEST_CASE("difference set on integer samples") {
    PointSet s = z_sample(-10, 10, 10.0);
    auto d = difference_set(s, 3.0);
    REQUIRE(d.size() == 7); // -3..3
    for (const auto& v : d) {
        bool found_neg = false;
        for (const auto& w : d)
            if ((v + w).is_zero()) { found_neg = true; break; }
        REQUIRE(found_neg);
    }
    REQUIRE_THROWS_AS(difference_set(s, 11.0), std::invalid_argument);
}

TEST_CASE("difference set of a two point set") {
    PointSet s;
    s.n = 8;
    s.window = 2.0;
    s.points = {Cyclo(8), Cyclo::zeta(8)};
    auto d = difference_set(s, 2.0);
    REQUIRE(d.size() == 3); // 0, +-zeta8
    PointIndex ix;
    for (auto& v : d) ix.insert(v);
    REQUIRE(ix.count(Cyclo(8)) == 1);
    REQUIRE(ix.count(Cyclo::zeta(8)) == 1);
    REQUIRE(ix.count(-Cyclo::zeta(8)) == 1);
}

TEST_CASE("rotation by zeta8 maps the octagon seed vertex ring to itself") {
    // Setwise invariance of a D8 configuration under the field rotation.
    PointSet s;
    s.n = 8;
    s.window = 2.0;
    for (int j = 0; j < 8; ++j) s.points.push_back(Cyclo::zeta(8, j));
    PointSet r = apply_isometry(Isometry::linear(Cyclo::zeta(8), false), s);
    PointIndex a = index_points(s), b = index_points(r);
    REQUIRE(a == b);
}

TEST_CASE("placed tiles reproduce prototile edge lengths exactly", "[property]") {
    std::mt19937_64 gen(22);
    for (Proto proto : {Proto::AbTriangle, Proto::AbRhombus, Proto::PenroseHalfThick,
                        Proto::PenroseHalfThin, Proto::PinwheelTriangle}) {
        const ProtoInfo& pi = proto_info(proto);
        int n = pi.verts.front().n();
        for (int trial = 0; trial < 30; ++trial) {
            Tile t{proto, random_isometry(n, gen)};
            Polygon placed = tile_polygon(t);
            Polygon ref = pi.verts;
            if (t.pose.reflect) std::reverse(ref.begin(), ref.end());
            REQUIRE(placed.size() == ref.size());
            for (std::size_t i = 0; i < ref.size(); ++i) {
                Cyclo dref = ref[(i + 1) % ref.size()] - ref[i];
                Cyclo dpl = placed[(i + 1) % placed.size()] - placed[i];
                REQUIRE(dpl.abs2() == dref.abs2());
            }
            // Orientation stays counterclockwise after placement.
            REQUIRE(orientation(placed[0], placed[1], placed[2]) == 1);
            REQUIRE(area_element(placed) == area_element(pi.verts));
        }
    }
}

TEST_CASE("convex predicates: disjointness and containment") {
    int n = 4;
    auto pt = [&](std::int64_t x, std::int64_t y) {
        return Cyclo::integer(n, x) + Cyclo::zeta(n) * Rational(y);
    };
    Polygon sq1 = {pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)};
    Polygon sq2 = {pt(2, 0), pt(4, 0), pt(4, 2), pt(2, 2)};  // shares an edge
    Polygon sq3 = {pt(1, 1), pt(3, 1), pt(3, 3), pt(1, 3)};  // overlaps sq1
    Polygon inner = {pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)};
    REQUIRE(interiors_disjoint(sq1, sq2));
    REQUIRE_FALSE(interiors_disjoint(sq1, sq3));
    REQUIRE(polygon_contains(sq1, inner));
    REQUIRE_FALSE(polygon_contains(inner, sq1));
    REQUIRE(point_strictly_inside(sq1, pt(1, 1)));
    REQUIRE_FALSE(point_strictly_inside(sq1, pt(2, 1)));
    REQUIRE(point_inside_or_boundary(sq1, pt(2, 1)));
}
