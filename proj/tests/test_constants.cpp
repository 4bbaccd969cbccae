#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bhc/constants.hpp"

#include <stdexcept>

using namespace bhc;

TEST_CASE("b_max") {
    CHECK(b_max(3, 3) == 52);
    CHECK(b_max(3, 4) == 103);
    CHECK(b_max(4, 3) == 145);
    CHECK(b_max(5, 3) == 418);
    CHECK(b_max(6, 3) == 1231);
    CHECK(b_max(3, 2) == 23);
    CHECK(b_max(3, 1) == 10);  // 3m + 1 for hyperplanes
    CHECK_THROWS_AS(b_max(1, 3), std::invalid_argument);
}

TEST_CASE("betti_sum_hypersurface anchor values") {
    CHECK(betti_sum_hypersurface(3, 4) == 24);  // K3 surface
    CHECK(betti_sum_hypersurface(2, 3) == 4);   // elliptic curve
    CHECK(betti_sum_hypersurface(3, 2) == 4);   // quadric surface
    CHECK(betti_sum_hypersurface(2, 1) == 2);   // line = P^1
    CHECK(betti_sum_hypersurface(3, 3) == 9);   // cubic surface
    CHECK(betti_sum_hypersurface(2, 4) == 8);   // genus-3 curve
    CHECK(betti_sum_hypersurface(4, 1) == 4);   // hyperplane = P^3
}

TEST_CASE("betti sums respect the N + n^N bound") {
    for (unsigned N = 2; N <= 6; ++N) {
        for (unsigned n = 1; n <= 6; ++n) {
            CAPTURE(N);
            CAPTURE(n);
            CHECK(betti_sum_hypersurface(N, n) <=
                  Int(N) + boost::multiprecision::pow(Int(n), N));
        }
    }
}

TEST_CASE("b_geom reproduces the surface column") {
    CHECK(b_geom(3, 2) == 8);
    CHECK(b_geom(3, 3) == 17);
    CHECK(b_geom(3, 4) == 40);
    CHECK_THROWS_AS(b_geom(2, 3), std::invalid_argument);
}

TEST_CASE("b_geom never exceeds b_max on the tested grid") {
    for (unsigned m = 3; m <= 6; ++m)
        for (unsigned n = 2; n <= 6; ++n) CHECK(b_geom(m, n) <= b_max(m, n));
}

TEST_CASE("b_diag exact rationals") {
    CHECK(b_diag(3, 3) == Rational(14, 3));
    CHECK(b_diag(3, 4) == Rational(39, 2));
    CHECK(b_diag(3, 5) == Rational(252, 5));
    CHECK(b_diag(3, 6) == Rational(620, 6));
    CHECK(b_diag(6, 3) == Rational(42));
    CHECK(b_diag(2, 3) == Rational(2));  // (n-1)(n-2) for plane curves
    CHECK_THROWS_AS(b_diag(3, 2), std::domain_error);
    CHECK_THROWS_AS(b_diag(3, 1), std::domain_error);
}

TEST_CASE("diagonal < geometric < universal for m = 3") {
    for (unsigned n = 3; n <= 6; ++n) {
        CAPTURE(n);
        CHECK(b_diag(3, n) < Rational(b_geom(3, n)));
        CHECK(Rational(b_geom(3, n)) < Rational(b_max(3, n)));
    }
}

TEST_CASE("coarse approximations") {
    CHECK(b_diag_approx(3, 3) == 8);
    CHECK(b_diag_approx(6, 4) == 729);
    CHECK(b_diag_approx(5, 1) == 0);
    CHECK(b_gen_approx(3, 3) == 27);
    CHECK(b_gen_approx(9, 3) == 19683);
    CHECK(b_gen_approx(4, 1) == 1);
}

TEST_CASE("constant_profile applicability") {
    ConstantProfile p1 = constant_profile(3, 4);
    CHECK(p1.b_max == 103);
    REQUIRE(p1.b_geom.has_value());
    CHECK(*p1.b_geom == 40);
    REQUIRE(p1.b_diag.has_value());
    CHECK(*p1.b_diag == Rational(39, 2));

    ConstantProfile p2 = constant_profile(2, 2);
    CHECK_FALSE(p2.b_geom.has_value());  // needs m >= 3
    CHECK_FALSE(p2.b_diag.has_value());  // needs n >= 3

    ConstantProfile p3 = constant_profile(2, 5);
    CHECK_FALSE(p3.b_geom.has_value());
    CHECK(p3.b_diag.has_value());
}
