#include <catch2/catch_amalgamated.hpp>

#include "aperiodica/inflation.hpp"

using namespace aperiodica;

TEST_CASE("stone inflation verifies for all three rules") {
    for (System sys : {System::AmmannBeenker, System::Penrose, System::Pinwheel}) {
        StoneReport rep = verify_stone_inflation(rule_for(sys));
        INFO(system_name(sys));
        REQUIRE(rep.area_ok);
        REQUIRE(rep.disjoint_ok);
        REQUIRE(rep.cover_ok);
        REQUIRE(rep.perron == Catch::Approx(rep.factor_norm).margin(1e-9));
    }
}

TEST_CASE("a corrupted rule fails the stone checks") {
    InflationRule bad = rules::ammann_beenker();
    auto& child = bad.children[Proto::AbTriangle][1];
    child.rel.trans += Cyclo::from_rational(8, Rational(1, 10));
    StoneReport rep = verify_stone_inflation(bad);
    REQUIRE_FALSE((rep.disjoint_ok && rep.cover_ok));
}

TEST_CASE("substitution matrices match the classical ones") {
    SubstitutionMatrix ab = substitution_matrix(rules::ammann_beenker());
    // types sorted by enum order: AbTriangle, AbRhombus
    REQUIRE(ab.counts == std::vector<std::vector<long>>{{3, 4}, {2, 3}});
    SubstitutionMatrix pen = substitution_matrix(rules::penrose());
    REQUIRE(pen.counts == std::vector<std::vector<long>>{{2, 1}, {1, 1}});
    SubstitutionMatrix pin = substitution_matrix(rules::pinwheel());
    REQUIRE(pin.counts == std::vector<std::vector<long>>{{5}});
}

TEST_CASE("inflate with zero steps is the identity") {
    Patch p = ab_octagon_seed();
    REQUIRE(patch_equal(inflate(p, 0), p));
}

TEST_CASE("tile counts follow M^k on unit seeds") {
    for (System sys : {System::AmmannBeenker, System::Penrose, System::Pinwheel}) {
        const InflationRule& rule = rule_for(sys);
        SubstitutionMatrix m = substitution_matrix(rule);
        Patch unit{sys, {Tile{rule.children.begin()->first, Isometry::identity(system_field(sys))}}};
        std::vector<long> v = type_counts(rule, unit);
        for (int k = 0; k <= (sys == System::AmmannBeenker ? 5 : 6); ++k) {
            Patch q = inflate(rule, unit, k);
            REQUIRE(type_counts(rule, q) == m.power_apply(v, k));
        }
    }
}

TEST_CASE("AB square seed: three steps give the M^3 prediction") {
    const InflationRule& rule = rules::ammann_beenker();
    SubstitutionMatrix m = substitution_matrix(rule);
    Patch seed = ab_square_seed();
    Patch p3 = inflate(rule, seed, 3);
    auto predicted = m.power_apply(type_counts(rule, seed), 3);
    REQUIRE(type_counts(rule, p3) == predicted);
    REQUIRE(predicted == std::vector<long>{198, 140});
}

TEST_CASE("area is conserved exactly under inflation") {
    for (System sys : {System::AmmannBeenker, System::Penrose, System::Pinwheel}) {
        const InflationRule& rule = rule_for(sys);
        Patch seed = sys == System::AmmannBeenker ? ab_square_seed()
                   : sys == System::Penrose       ? penrose_sun_seed()
                                                  : pinwheel_origin_seed();
        Cyclo norm = rule.factor.abs2();
        Cyclo a0 = patch_area_element(seed);
        Patch p = seed;
        Cyclo expect = a0;
        for (int k = 1; k <= 3; ++k) {
            p = inflate(rule, p, 1);
            expect = expect * norm;
            REQUIRE(patch_area_element(p) == expect);
        }
    }
}

TEST_CASE("pinwheel: one step gives five tiles of total area five times the parent") {
    Patch unit{System::Pinwheel,
               {Tile{Proto::PinwheelTriangle, Isometry::identity(4)}}};
    Patch p = inflate(unit, 1);
    REQUIRE(p.tiles.size() == 5);
    Cyclo five = Cyclo::integer(4, 5);
    REQUIRE(patch_area_element(p) == patch_area_element(unit) * five);
    // |2+i|^2 = 5
    REQUIRE(rules::pinwheel().factor.abs2() == five);
}

TEST_CASE("octagon seed composition and vertex census") {
    Patch seed = ab_octagon_seed();
    const InflationRule& rule = rules::ammann_beenker();
    auto counts = type_counts(rule, seed);
    REQUIRE(counts == std::vector<long>{16, 16});
    // Vertex count by direct enumeration: 1 centre plus four 8-rings, which
    // the Euler count V = E - F + 1 = 64 - 32 + 1 confirms.
    PointSet vs = vertex_set_all(seed);
    REQUIRE(vs.points.size() == 33);
    // The seed nests into its own single inflation.
    REQUIRE(patch_subset(seed, inflate(rule, seed, 1)));
}

TEST_CASE("fixed point nesting certificates") {
    struct Case { System sys; Seed seed; int k; };
    for (auto c : {Case{System::AmmannBeenker, Seed::AbSquare, 1},
                   Case{System::AmmannBeenker, Seed::AbOctagon, 1},
                   Case{System::Penrose, Seed::PenroseSun, 1},
                   Case{System::Pinwheel, Seed::PinwheelOrigin, 2}}) {
        Patch a = fixed_point_patch(c.sys, c.seed, c.k);
        Patch b = fixed_point_patch(c.sys, c.seed, c.k + 1);
        INFO(system_name(c.sys) << "/" << seed_name(c.seed));
        REQUIRE(patch_subset(a, b));
    }
}

TEST_CASE("penrose sun: D5 invariance of the generated patches") {
    Patch p = fixed_point_patch(System::Penrose, Seed::PenroseSun, 2);
    Isometry r5 = Isometry::linear(Cyclo::rotation(5, 2), false);
    REQUIRE(patch_equal(apply_isometry(r5, p), p));
    // Mirror through the real axis is also exact.
    Isometry refl = Isometry::linear(Cyclo::integer(5, 1), true);
    REQUIRE(patch_equal(apply_isometry(refl, p), p));
    // A zeta10 rotation is NOT an exact symmetry of the patch.
    Isometry r10 = Isometry::linear(Cyclo::rotation(5, 1), false);
    REQUIRE_FALSE(patch_equal(apply_isometry(r10, p), p));
}

TEST_CASE("octagon patches are exactly D8 invariant") {
    Patch p = fixed_point_patch(System::AmmannBeenker, Seed::AbOctagon, 1);
    Isometry r8 = Isometry::linear(Cyclo::zeta(8), false);
    Isometry refl = Isometry::linear(Cyclo::integer(8, 1), true);
    REQUIRE(patch_equal(apply_isometry(r8, p), p));
    REQUIRE(patch_equal(apply_isometry(refl, p), p));
}

TEST_CASE("pinwheel tile counts are powers of five and orientations grow") {
    Patch p = pinwheel_origin_seed();
    std::size_t prev = orientation_count(p);
    long expect = 1;
    for (int k = 1; k <= 5; ++k) {
        p = inflate(p, 1);
        expect *= 5;
        REQUIRE(long(p.tiles.size()) == expect);
        std::size_t cur = orientation_count(p);
        REQUIRE(cur > prev);
        prev = cur;
    }
}

TEST_CASE("vertex sets and windows") {
    Patch seed = ab_octagon_seed();
    double cap = suggested_window(seed);
    REQUIRE(cap > 0.0);
    REQUIRE_THROWS_AS(vertex_set(seed, cap + 1.0), std::invalid_argument);

    // A single AB square (two half triangles) has exactly 4 distinct corners.
    Patch sq = ab_square_seed();
    PointIndex seen;
    std::size_t distinct = 0;
    for (const auto& t : sq.tiles)
        for (const auto& v : tile_polygon(t))
            if (seen.insert(v).second) ++distinct;
    REQUIRE(distinct == 4);

    // Pinwheel vertex set is the control points: one per tile.
    Patch pin = pinwheel_origin_seed();
    PointSet ctrl = vertex_set_all(pin);
    REQUIRE(ctrl.points.size() == 1);
    REQUIRE(ctrl.points.front().is_zero());
}

TEST_CASE("illegal seed and system mismatches are errors") {
    REQUIRE_THROWS_AS(seed_from_name(System::Penrose, "octagon"), std::invalid_argument);
    Patch sun = penrose_sun_seed();
    REQUIRE_THROWS_AS(inflate(rules::ammann_beenker(), sun, 1), std::invalid_argument);
}
