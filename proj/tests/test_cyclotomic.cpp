#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aperiodica/cyclotomic.hpp"

using namespace aperiodica;

namespace {

Cyclo random_cyclo(int n, std::mt19937_64& gen, std::int64_t coeff_range) {
    Cyclo z(n);
    for (int k = 0; k < Cyclo::phi(n); ++k) {
        std::int64_t v = std::int64_t(gen() % std::uint64_t(2 * coeff_range + 1)) - coeff_range;
        z.set_coeff(k, Rational(v));
    }
    return z;
}

} // namespace

TEST_CASE("primitive root identities") {
    for (int n : {4, 5, 8}) {
        Cyclo z = Cyclo::zeta(n);
        REQUIRE(z.pow(n) == Cyclo::integer(n, 1));
        for (int k = 1; k < n; ++k) REQUIRE(z.pow(k) != Cyclo::integer(n, 1));
    }
    // zeta8^2 * zeta8^2 = -1
    Cyclo z2 = Cyclo::zeta(8, 2);
    REQUIRE(z2 * z2 == Cyclo::integer(8, -1));
}

TEST_CASE("inflation factors embed to the book values") {
    // 1 + zeta8 + zeta8^7 = 1 + sqrt2
    Cyclo ab = Cyclo::integer(8, 1) + Cyclo::zeta(8, 1) + Cyclo::zeta(8, 7);
    REQUIRE(ab.embed().real() == Catch::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(std::abs(ab.embed().imag()) < 1e-12);

    // -zeta5^2 - zeta5^3 embeds to the golden ratio; oracle: (1+sqrt5)/2.
    Cyclo tau = -(Cyclo::zeta(5, 2) + Cyclo::zeta(5, 3));
    REQUIRE(tau.embed().real() == Catch::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    REQUIRE(std::abs(tau.embed().imag()) < 1e-12);

    // zeta5 + zeta5^4 = 2cos72; oracle: the positive root of x^2 + x - 1.
    Cyclo c = Cyclo::zeta(5, 1) + Cyclo::zeta(5, 4);
    double root = (-1.0 + std::sqrt(5.0)) / 2.0;
    REQUIRE(c.embed().real() == Catch::Approx(root).epsilon(1e-12));
    REQUIRE(std::abs(c.embed().imag()) < 1e-12);
    // Exact check against the minimal polynomial.
    REQUIRE((c * c + c - Cyclo::integer(5, 1)).is_zero());
}

TEST_CASE("embedding of basic roots") {
    REQUIRE(Cyclo::zeta(4).embed().real() == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(Cyclo::zeta(4).embed().imag() == Catch::Approx(1.0).epsilon(1e-15));
    REQUIRE(Cyclo::zeta(8).embed().real() == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    REQUIRE(Cyclo::zeta(8).embed().imag() == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("index mismatch is an error") {
    REQUIRE_THROWS_AS(Cyclo::zeta(4) + Cyclo::zeta(8), std::invalid_argument);
    REQUIRE_THROWS_AS(Cyclo::zeta(5) * Cyclo::zeta(8), std::invalid_argument);
    REQUIRE_THROWS_AS(Cyclo(6), std::invalid_argument);
}

TEST_CASE("ring axioms on random elements", "[property]") {
    std::mt19937_64 gen(11);
    for (int n : {4, 5, 8}) {
        for (int trial = 0; trial < 1000; ++trial) {
            Cyclo a = random_cyclo(n, gen, 100);
            Cyclo b = random_cyclo(n, gen, 100);
            Cyclo c = random_cyclo(n, gen, 100);
            REQUIRE((a + b) * c == a * c + b * c);
        }
    }
}

TEST_CASE("embedding is multiplicative within tolerance", "[property]") {
    std::mt19937_64 gen(12);
    for (int n : {4, 5, 8}) {
        for (int trial = 0; trial < 200; ++trial) {
            Cyclo a = random_cyclo(n, gen, 1 << 20);
            Cyclo b = random_cyclo(n, gen, 1 << 20);
            auto lhs = (a * b).embed();
            auto rhs = a.embed() * b.embed();
            double scale = std::max(1.0, std::abs(rhs));
            REQUIRE(std::abs(lhs - rhs) / scale < 1e-9);
            auto ls = (a + b).embed(), rs = a.embed() + b.embed();
            REQUIRE(std::abs(ls - rs) / std::max(1.0, std::abs(rs)) < 1e-12);
        }
    }
}

TEST_CASE("conjugation, inverse, exact signs") {
    std::mt19937_64 gen(13);
    for (int n : {4, 5, 8}) {
        for (int trial = 0; trial < 100; ++trial) {
            Cyclo a = random_cyclo(n, gen, 30);
            REQUIRE(a.conj().conj() == a);
            if (!a.is_zero()) {
                REQUIRE(a * a.inverse() == Cyclo::integer(n, 1));
                // |a|^2 is real and positive.
                Cyclo norm = a.abs2();
                REQUIRE(norm.is_real());
                REQUIRE(norm.sign_real() == 1);
            }
            // Embedded signs agree with the exact ones.
            auto e = a.embed();
            if (std::abs(e.imag()) > 1e-9) REQUIRE(a.sign_im() == (e.imag() > 0 ? 1 : -1));
            if (std::abs(e.real()) > 1e-9) REQUIRE(a.sign_re() == (e.real() > 0 ? 1 : -1));
        }
    }
}

TEST_CASE("rotation helper covers 10th roots in the penrose field") {
    Cyclo z10 = Cyclo::rotation(5, 1);
    REQUIRE(z10.pow(10) == Cyclo::integer(5, 1));
    REQUIRE(z10.pow(5) == Cyclo::integer(5, -1));
    REQUIRE(z10.pow(2) == Cyclo::zeta(5, 1));
    for (int k = 1; k < 10; ++k) REQUIRE(z10.pow(k) != Cyclo::integer(5, 1));
}

TEST_CASE("serialization round trip") {
    std::mt19937_64 gen(14);
    for (int n : {4, 5, 8}) {
        for (int trial = 0; trial < 50; ++trial) {
            Cyclo a = random_cyclo(n, gen, 1000);
            a.set_coeff(0, a.coeff(0) / Rational(7));
            REQUIRE(Cyclo::parse(a.str()) == a);
        }
    }
    REQUIRE(Cyclo::parse("8:[1,1,0,-1]") ==
            Cyclo::integer(8, 1) + Cyclo::zeta(8, 1) - Cyclo::zeta(8, 3));
    REQUIRE_THROWS_AS(Cyclo::parse("8:[1,1]"), std::invalid_argument);
    REQUIRE_THROWS_AS(Cyclo::parse("junk"), std::invalid_argument);
}
