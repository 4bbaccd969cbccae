#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bhc/errors.hpp"
#include "bhc/localdensity.hpp"
#include "bhc/series.hpp"
#include "testutil.hpp"

#include <cstdlib>

using namespace bhc;

TEST_CASE("omega_enumerate on the worked cubic form") {
    Polynomial F = parse_polynomial("x^3 + 2*y^3");
    CHECK(omega_enumerate(F, 2) == 2);
    CHECK(omega_enumerate(F, 3) == 3);
    CHECK(omega_enumerate(F, 7) == 1);
    CHECK(omega_enumerate(F, 31) == 91);
    CHECK(omega_enumerate(F, 109) == 325);
}

TEST_CASE("omega_enumerate corner cases") {
    CHECK(omega_enumerate(parse_polynomial("1"), 7) == 0);
    CHECK(omega_enumerate(parse_polynomial("2"), 2) == 2);  // F = 0 mod 2 identically
    CHECK(omega_enumerate(parse_polynomial("x1"), 11) == 1);
    CHECK_THROWS_AS(omega_enumerate(parse_polynomial("x^2+y^2"), 101, 100), BudgetExceeded);
    CHECK_THROWS_AS(omega_enumerate(parse_polynomial("x1"), 10), std::invalid_argument);
    CHECK_THROWS_AS(omega_enumerate(Polynomial::zero(1), 5), std::domain_error);
}

TEST_CASE("omega_enumerate matches a plain odometer on random inputs") {
    auto& gen = testutil::rng();
    for (int i = 0; i < 30; ++i) {
        Polynomial F = testutil::random_polynomial(gen, 3, 5, 4, 9);
        if (F.is_zero()) continue;
        for (std::uint64_t p : {2, 3, 5, 7}) {
            CAPTURE(format_polynomial(F));
            CHECK(omega_enumerate(F, p) == testutil::brute_omega(F, p));
        }
    }
}

TEST_CASE("power_residue_count examples") {
    CHECK(power_residue_count(Int(-2), 3, 5) == 1);
    CHECK(power_residue_count(Int(-2), 3, 7) == 0);   // cubes mod 7 are {0,1,6}
    CHECK(power_residue_count(Int(-2), 3, 31) == 3);
    CHECK(power_residue_count(Int(0), 5, 11) == 1);
    CHECK(power_residue_count(Int(1), 4, 13) == 4);
}

TEST_CASE("power_residue_count against brute force") {
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        for (std::uint64_t k = 1; k <= 6; ++k) {
            for (std::uint64_t a = 0; a < p; ++a) {
                std::uint64_t brute = 0;
                for (std::uint64_t t = 0; t < p; ++t)
                    if (powmod_u64(t, k, p) == a) ++brute;
                CAPTURE(p);
                CAPTURE(k);
                CAPTURE(a);
                CHECK(power_residue_count(Int(a), k, p) == brute);
            }
        }
    }
}

TEST_CASE("cubic case classifier") {
    CubicCaseReport r7 = cubic_case_classifier(7);
    CHECK(r7.label == CubicCase::OneMod3NonResidue);
    CHECK(r7.n_p == 0);
    CHECK(r7.omega == 1);

    CubicCaseReport r109 = cubic_case_classifier(109);
    CHECK(r109.label == CubicCase::OneMod3Residue);
    CHECK(r109.n_p == 3);
    CHECK(r109.omega == 325);

    CubicCaseReport r5 = cubic_case_classifier(5);
    CHECK(r5.label == CubicCase::TwoMod3);
    CHECK(r5.n_p == 1);
    CHECK(r5.omega == 5);

    CHECK(cubic_case_classifier(2).omega == 2);
    CHECK(cubic_case_classifier(3).omega == 3);
}

TEST_CASE("closed-form law matches enumeration for 5 <= p <= 499") {
    Polynomial F = parse_polynomial("x^3 + 2*y^3");
    for (std::uint64_t p : prime_sieve(499)) {
        if (p < 5) continue;
        Int expected;
        if (p % 3 == 2) {
            expected = p;
        } else {
            std::uint64_t n = power_residue_count(Int(-2), 3, p);
            CHECK((n == 0 || n == 3));
            expected = n == 0 ? Int(1) : Int(3) * p - 2;
        }
        CAPTURE(p);
        CHECK(omega_enumerate(F, p) == expected);
        CHECK(cubic_case_classifier(p).omega == expected);
    }
}

TEST_CASE("power value histograms") {
    auto& gen = testutil::rng();
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        for (unsigned k = 1; k <= 5; ++k) {
            int a = coeff(gen);
            if (a == 0) a = 1;
            auto h = power_value_histogram(Int(a), k, p);
            std::uint64_t mass = 0;
            for (std::uint64_t v = 0; v < p; ++v) {
                std::uint64_t brute = 0;
                for (std::uint64_t x = 0; x < p; ++x)
                    if (mulmod_u64(mod_u64(Int(a), p), powmod_u64(x, k, p), p) == v) ++brute;
                CHECK(h[v] == brute);
                mass += h[v];
            }
            CHECK(mass == p);
        }
    }
}

TEST_CASE("omega_diagonal worked examples") {
    DiagonalForm cubic{{Int(1), Int(2)}, 3};
    CHECK(omega_diagonal(cubic, 31) == 91);
    CHECK(omega_diagonal(cubic, 2) == 2);
    CHECK(omega_diagonal(DiagonalForm{{Int(1), Int(1)}, 2}, 3) == 1);
    CHECK(omega_diagonal(DiagonalForm{{Int(2)}, 3}, 7) == 1);   // m = 1
    CHECK(omega_diagonal(DiagonalForm{{Int(3), Int(1)}, 2}, 3) ==
          testutil::brute_omega(parse_polynomial("3*x1^2 + x2^2"), 3));  // p | a_1
}

TEST_CASE("omega_diagonal equals enumeration on random forms") {
    auto& gen = testutil::rng();
    const auto primes = prime_sieve(31);
    for (int i = 0; i < 25; ++i) {
        DiagonalForm d = testutil::random_diagonal_form(gen, 3, 5, 9);
        Polynomial F = expand(d);
        for (std::uint64_t p : primes) {
            CAPTURE(format_polynomial(F));
            CAPTURE(p);
            CHECK(omega_diagonal(d, p) == omega_enumerate(F, p));
        }
    }
}

TEST_CASE("homogeneous forms have scale-invariant omega") {
    for (const char* text : {"x^3 + 2*y^3", "x^2 + 3*y^2", "x1^2*x2 + x2^3"}) {
        Polynomial F = parse_polynomial(text);
        for (std::uint64_t p : {5, 7, 11, 13}) {
            Int base = omega_enumerate(F, p);
            for (std::uint64_t c = 2; c < p; ++c) {
                std::vector<Term> scaled;
                for (const Term& t : F.terms()) scaled.push_back({t.exponents, t.coefficient * c});
                CHECK(omega_enumerate(Polynomial(F.num_vars(), scaled), p) == base);
            }
        }
    }
}

TEST_CASE("local factors of the worked cubic form") {
    CHECK(local_factor_exact(Int(2), 2, 2) == Rational(1));
    CHECK(local_factor_exact(Int(3), 3, 2) == Rational(1));
    CHECK(local_factor_exact(Int(1), 7, 2) == Rational(8, 7));
    CHECK(local_factor_exact(Int(91), 31, 2) == Rational(29, 31));
    CHECK(local_factor_exact(Int(325), 109, 2) == Rational(11556, 11772));
    CHECK(local_factor_exact(Int(0), 2, 2) == Rational(2));

    CHECK(std::abs(to_double(local_factor(Int(1), 7, 2).l_value) - 1.142857) < 5e-7);
    CHECK(std::abs(to_double(local_factor(Int(91), 31, 2).l_value) - 0.935484) < 5e-7);
    CHECK(std::abs(to_double(local_factor(Int(325), 109, 2).l_value) - 0.981651) < 5e-7);
    CHECK(to_double(local_factor(Int(0), 2, 2).l_value) == 2.0);
}

TEST_CASE("local factor validation") {
    CHECK_THROWS_AS(local_factor_exact(Int(-1), 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(local_factor_exact(Int(26), 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(local_factor_exact(Int(3), 4, 2), std::invalid_argument);  // p not prime
}

TEST_CASE("L_p = 1 exactly iff omega hits the independence count") {
    // L_p = 1 <=> omega = p^m - p^(m-k) (p-1)^k
    auto& gen = testutil::rng();
    std::uniform_int_distribution<int> pm(0, 4);
    const std::uint64_t ps[] = {2, 3, 5, 7, 11};
    for (int i = 0; i < 50; ++i) {
        std::uint64_t p = ps[pm(gen) % 5];
        unsigned m = 1 + pm(gen) % 3 + 1;
        unsigned k = 1 + pm(gen) % std::min(m, 2u);
        Int pmv = boost::multiprecision::pow(Int(p), m);
        Int balanced = pmv - boost::multiprecision::pow(Int(p), m - k) *
                                 boost::multiprecision::pow(Int(p) - 1, k);
        CHECK(local_factor_exact(balanced, p, m, k) == Rational(1));
        CHECK(local_factor_exact(balanced - 1, p, m, k) != Rational(1));
        if (balanced + 1 <= pmv) CHECK(local_factor_exact(balanced + 1, p, m, k) != Rational(1));
    }
}
