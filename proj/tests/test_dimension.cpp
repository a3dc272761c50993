#include "befrac/dimension.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace befrac;

TEST_CASE("be_dimension on reference triples") {
    CHECK(be_dimension({1.0 / 3, 1.0 / 3, 1.0 / 3}, 3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(be_dimension({1, 0, 0}, 3) == 0.0);
    CHECK(be_dimension({0, 0, 1}, 3) == 0.0);
    // 2^k-style split: -2*(1/2)ln(1/2)/ln3 = ln2/ln3
    CHECK(be_dimension({0.5, 0.5, 0}, 3) ==
          doctest::Approx(0.6309297535714574).epsilon(1e-15));
    CHECK(be_dimension({0.2, 0.3, 0.5}, 3) ==
          doctest::Approx(0.9372305632161295).epsilon(1e-14));
    CHECK_THROWS(be_dimension({0.5, 0.5, 0.5}, 3)); // off the simplex
}

TEST_CASE("be_dimension exact-rational route matches the double route") {
    FrequencyVector nu{3, {Rational(1, 5), Rational(3, 10), Rational(1, 2)}};
    CHECK(be_dimension(nu) == doctest::Approx(0.9372305632161295).epsilon(1e-14));
    FrequencyVector bad{3, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}};
    CHECK_THROWS(be_dimension(bad));
}

TEST_CASE("dimension is 1 only at the uniform triple, 0 only at indicators") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        double w0 = u(rng), w1 = u(rng), w2 = u(rng);
        double sum = w0 + w1 + w2;
        std::vector<double> tau{w0 / sum, w1 / sum, w2 / sum};
        double y = be_dimension(tau, 3);
        REQUIRE(y >= 0.0);
        REQUIRE(y <= 1.0 + 1e-15);
        bool uniform = std::abs(tau[0] - tau[1]) < 1e-12 && std::abs(tau[1] - tau[2]) < 1e-12;
        if (!uniform) REQUIRE(y < 1.0);
    }
}

TEST_CASE("closed form at a = 1/2 matches the frozen reference") {
    DimensionReport rep = ka_dimension_closed_form(0.5);
    CHECK(rep.t == doctest::Approx(1.8027756377319946).epsilon(1e-15));
    CHECK(rep.x1 == doctest::Approx(0.11620406037800089).epsilon(1e-14));
    CHECK(rep.nu0 == doctest::Approx(0.6162040603780009).epsilon(1e-14));
    CHECK(rep.nu1 == doctest::Approx(0.2675918792439982).epsilon(1e-14));
    CHECK(rep.nu2 == doctest::Approx(0.11620406037800089).epsilon(1e-14));
    CHECK(rep.closed_form == doctest::Approx(0.8203391769145084).epsilon(1e-14));
    // the maximizer triple reproduces the value through the generic formula
    CHECK(be_dimension({rep.nu0, rep.nu1, rep.nu2}, 3) ==
          doctest::Approx(rep.closed_form).epsilon(1e-12));
}

TEST_CASE("stationary points solve the quadratic at a = 1") {
    DimensionReport rep = ka_dimension_closed_form(1.0);
    CHECK(rep.x1 == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(rep.x2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(!rep.x2_in_domain); // 1 > a/2
    CHECK(rep.closed_form == doctest::Approx(1.0).epsilon(1e-12));
    // 3x^2 - (1+3a)x + a^2 vanishes at both roots
    for (double x : {rep.x1, rep.x2})
        CHECK(3 * x * x - (1 + 3 * 1.0) * x + 1.0 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("numeric optimizer agrees with the closed form across the grid") {
    for (int k = 1; k <= 19; ++k) {
        double a = k / 10.0;
        DimensionReport closed = ka_dimension_closed_form(a);
        DimensionReport numeric = ka_dimension_numeric(a);
        CAPTURE(a);
        REQUIRE(std::abs(closed.closed_form - numeric.numeric_max) <= 1e-8);
        REQUIRE(std::abs(numeric.x_numeric - closed.x1) <= 1e-6);
    }
}

TEST_CASE("symmetry about a = 1") {
    for (int k = 0; k <= 40; ++k) {
        double a = k * 0.05;
        double left = ka_dimension_closed_form(a).closed_form;
        double right = ka_dimension_closed_form(2 - a).closed_form;
        CAPTURE(a);
        REQUIRE(std::abs(left - right) <= 1e-12);
    }
}

TEST_CASE("mirror pair a and 2-a sharing the frozen reference value") {
    CHECK(ka_dimension_closed_form(0.25).closed_form ==
          doctest::Approx(0.560969595150381).epsilon(1e-14));
    CHECK(ka_dimension_closed_form(1.75).closed_form ==
          doctest::Approx(0.560969595150381).epsilon(1e-14));
    CHECK(ka_dimension_closed_form(0.25).t ==
          doctest::Approx(1.5206906325745548).epsilon(1e-15));
}

TEST_CASE("maximizer triple sits on the constraint set") {
    for (int k = 1; k <= 39; ++k) {
        double a = k * 0.05;
        DimensionReport rep = ka_dimension_closed_form(a);
        REQUIRE(rep.nu0 >= -1e-15);
        REQUIRE(rep.nu1 >= -1e-15);
        REQUIRE(rep.nu2 >= -1e-15);
        REQUIRE(std::abs(rep.nu0 + rep.nu1 + rep.nu2 - 1) <= 1e-12);
        REQUIRE(std::abs(rep.nu1 + 2 * rep.nu2 - a) <= 1e-12);
    }
}

TEST_CASE("the closed-form maximizer dominates random feasible points") {
    std::mt19937_64 rng(67);
    for (double a : {0.3, 0.8, 1.0, 1.4, 1.9}) {
        DimensionReport rep = ka_dimension_closed_form(a);
        std::uniform_real_distribution<double> u(rep.lo, rep.hi);
        for (int trial = 0; trial < 100; ++trial) {
            double x = u(rng);
            REQUIRE(ka_objective(a, x) <= rep.closed_form + 1e-12);
        }
    }
}

TEST_CASE("analytic derivative matches finite differences") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> ua(0.1, 1.9);
    int tested = 0;
    while (tested < 100) {
        double a = ua(rng);
        DimensionReport rep = ka_dimension_closed_form(a);
        double span = rep.hi - rep.lo;
        std::uniform_real_distribution<double> ux(rep.lo + 0.15 * span, rep.hi - 0.15 * span);
        double x = ux(rng);
        double h = 1e-6;
        if (x - h <= rep.lo || x + h >= rep.hi) continue;
        double fd = (ka_objective(a, x + h) - ka_objective(a, x - h)) / (2 * h);
        REQUIRE(std::abs(derivative_check(a, x) - fd) <= 1e-5);
        ++tested;
    }
}

TEST_CASE("derivative vanishes at the interior maximizer") {
    for (double a : {0.2, 0.5, 1.0, 1.3, 1.8}) {
        DimensionReport rep = ka_dimension_closed_form(a);
        CHECK(std::abs(derivative_check(a, rep.x1)) <= 1e-9);
    }
    CHECK_THROWS(derivative_check(1.0, 0.0));  // boundary is out of scope
    CHECK_THROWS(derivative_check(1.0, 0.5));
}

TEST_CASE("extended precision confirms the double route") {
    for (double a : {0.05, 0.25, 0.5, 1.0, 1.5, 1.95}) {
        double dbl = ka_dimension_closed_form(a).closed_form;
        double ext = ka_closed_form_ext(a).convert_to<double>();
        CAPTURE(a);
        REQUIRE(std::abs(dbl - ext) <= 1e-13);
    }
}

TEST_CASE("degenerate endpoints") {
    DimensionReport zero = ka_dimension_closed_form(0.0);
    CHECK(zero.closed_form == doctest::Approx(0.0));
    DimensionReport two = ka_dimension_closed_form(2.0);
    CHECK(two.closed_form == doctest::Approx(0.0));
    CHECK(two.nu2 == doctest::Approx(1.0));
    DimensionReport num = ka_dimension_numeric(0.0);
    CHECK(num.numeric_max == doctest::Approx(0.0));
    CHECK(num.iterations == 0);
    CHECK_THROWS(ka_dimension_closed_form(-0.1));
    CHECK_THROWS(ka_dimension_closed_form(2.1));
}
