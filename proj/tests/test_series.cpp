#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bhc/errors.hpp"
#include "bhc/series.hpp"
#include "testutil.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

using namespace bhc;

TEST_CASE("prime sieve") {
    CHECK(prime_sieve(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(prime_sieve(2) == std::vector<std::uint64_t>{2});
    CHECK(prime_sieve(229).size() == 50);  // 229 is the 50th prime
    CHECK_THROWS_AS(prime_sieve(1), std::invalid_argument);
}

TEST_CASE("pi(10^6) against an independent odd-only sieve") {
    const std::uint64_t limit = 1'000'000;
    // odd-only bitmap, structured differently from the library sieve
    std::vector<bool> odd_composite(limit / 2 + 1, false);
    for (std::uint64_t i = 3; i * i <= limit; i += 2) {
        if (odd_composite[i / 2]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += 2 * i)
            if (j & 1) odd_composite[j / 2] = true;
    }
    std::uint64_t count = 1;  // the prime 2
    for (std::uint64_t n = 3; n <= limit; n += 2)
        if (!odd_composite[n / 2]) ++count;
    CHECK(count == 78498);
    CHECK(prime_sieve(limit).size() == count);
}

TEST_CASE("truncated constant is exactly 1 for F = x") {
    SeriesResult r = truncated_constant(parse_polynomial("x1"), 1000);
    CHECK(r.log_c_p == 0);
    CHECK(r.c_p == 1);
    CHECK(r.primes_used == 168);
    CHECK(r.bound_mode == BoundMode::None);
    CHECK_FALSE(r.epsilon.has_value());
}

TEST_CASE("truncated constant for the worked cubic form") {
    Polynomial F = parse_polynomial("x^3 + 2*y^3");
    SeriesResult r = truncated_constant(F, 229);
    CHECK(r.primes_used == 50);
    CHECK(std::abs(to_double(r.c_p) - 1.25) <= 0.005);
    CHECK(std::abs(to_double(exp(r.log_c_p) - r.c_p)) < 1e-30);

    // Independent recomputation at P = 109 from the closed-form case law,
    // multiplied out as exact rationals.
    Rational product(1);
    for (std::uint64_t p : prime_sieve(109))
        product *= local_factor_exact(cubic_case_classifier(p).omega, p, 2, 1);
    SeriesResult r109 = truncated_constant(F, 109);
    Real diff = abs(r109.c_p - to_real(product));
    CHECK(diff < Real("1e-35"));
}

TEST_CASE("enumeration path matches a hand-rolled product") {
    // Non-diagonal input goes through omega_enumerate; rebuild the product
    // from per-prime exact factors and compare.
    Polynomial F = parse_polynomial("x^2 + x*y + y^2");
    Rational product(1);
    for (std::uint64_t p : prime_sieve(101))
        product *= local_factor_exact(omega_enumerate(F, p), p, 2, 1);
    SeriesResult r = truncated_constant(F, 101);
    CHECK(abs(r.c_p - to_real(product)) < Real("1e-40"));
}

TEST_CASE("truncated constant rejects fixed-divisor inputs") {
    try {
        truncated_constant(parse_polynomial("x1^2 + x1 + 2"), 50);
        FAIL("expected LocalVanishing");
    } catch (const LocalVanishing& e) {
        CHECK(e.prime() == 2);
    }
    CHECK_THROWS_AS(truncated_constant(parse_polynomial("x1"), 1), std::invalid_argument);
}

TEST_CASE("multithreaded run reproduces the single-threaded product") {
    Polynomial F = parse_polynomial("x^3 + 2*y^3");
    SeriesResult serial = truncated_constant(F, 500, {kDefaultBudget, 1});
    SeriesResult parallel = truncated_constant(F, 500, {kDefaultBudget, 4});
    CHECK(serial.log_c_p == parallel.log_c_p);  // ordered reduction is exact
}

TEST_CASE("general tail bound formula") {
    CHECK(tail_bound_general(3, 52.0, 101) == doctest::Approx(1.04).epsilon(1e-12));
    CHECK(tail_bound_general(4, 145.0, 101) == doctest::Approx(0.193333).epsilon(1e-5));
    CHECK(tail_bound_general(6, 1231.0, 101) == doctest::Approx(9.848e-3).epsilon(1e-4));
    CHECK(tail_bound_general(3, 52.0, 100) == doctest::Approx(104.0 / 99.0).epsilon(1e-12));
    CHECK_THROWS_AS(tail_bound_general(1, 5.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(tail_bound_general(3, 0.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(tail_bound_general(3, 5.0, 1), std::invalid_argument);
}

TEST_CASE("alternative exponent variant decays faster") {
    CHECK(tail_bound_general_alt(3, 52.0, 101) ==
          doctest::Approx(104.0 * std::pow(101.0, -2.0)).epsilon(1e-12));
    CHECK(tail_bound_general_alt(3, 52.0, 101) < tail_bound_general(3, 52.0, 101));
}

TEST_CASE("diagonal tail bound and its gate") {
    DiagonalBound b = tail_bound_diagonal(3, 8.0, 101);
    CHECK(b.value == doctest::Approx(32.0 * std::pow(101.0, -1.5)).epsilon(1e-12));
    CHECK(b.value == doctest::Approx(3.2e-2).epsilon(0.02));
    CHECK(b.certified);

    CHECK(tail_bound_diagonal(6, 64.0, 101).value == doctest::Approx(1.0e-4).epsilon(0.01));
    CHECK(tail_bound_diagonal(9, 512.0, 101).value == doctest::Approx(4.896e-7).epsilon(0.001));

    // Enormous constant: the linearization gate fails, value still reported.
    DiagonalBound huge = tail_bound_diagonal(3, 1e6, 101);
    CHECK_FALSE(huge.certified);
    CHECK(huge.value > 0);
}

TEST_CASE("certified interval") {
    auto iv = certified_interval(1.25, 0.04);
    REQUIRE(iv.has_value());
    CHECK(iv->first == doctest::Approx(1.25 / 1.04).epsilon(1e-12));
    CHECK(iv->second == doctest::Approx(1.25 / 0.96).epsilon(1e-12));

    auto exact = certified_interval(1.0, 0.0);
    REQUIRE(exact.has_value());
    CHECK(exact->first == 1.0);
    CHECK(exact->second == 1.0);

    CHECK_FALSE(certified_interval(1.25, 1.04).has_value());
    CHECK_THROWS_AS(certified_interval(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("direct tail sums of the worked cubic form") {
    Polynomial F = parse_polynomial("x^3 + 2*y^3");
    CHECK(tail_sum_direct(F, 2, 3) == 0);              // L_3 = 1
    CHECK(tail_sum_direct(F, 100, 100) == 0);          // empty range
    Real s = tail_sum_direct(F, 3, 7);                 // L_5 = 1, L_7 = 8/7
    CHECK(abs(s - to_real(Rational(1, 7))) < Real("1e-45"));
}

TEST_CASE("bound monotonicity in depth") {
    for (std::uint64_t P = 3; P < 40; ++P) {
        CHECK(tail_bound_general(3, 52.0, P) < tail_bound_general(3, 52.0, P - 1));
        CHECK(tail_bound_diagonal(3, 8.0, P).value < tail_bound_diagonal(3, 8.0, P - 1).value);
    }
}

TEST_CASE("depth planner worked examples") {
    CHECK(depth_for_tolerance(3, 52.0, 0.01, BoundMode::General) == 10401);
    CHECK(depth_for_tolerance(6, 1231.0, 9.85e-3, BoundMode::General) == 101);
    // any depth suffices once the target dwarfs the bound at P = 2
    CHECK(depth_for_tolerance(3, 52.0, 1000.0, BoundMode::General) == 2);
    CHECK(depth_for_tolerance(3, 0.5, 100.0, BoundMode::Diagonal) == 2);
    CHECK(depth_for_tolerance(6, 64.0, 1.0e-4, BoundMode::Diagonal) == 101);
    // a large constant keeps the linearization gate failing well past the
    // tolerance crossing; the planner must keep going until it certifies
    std::uint64_t gated = depth_for_tolerance(3, 8.0, 100.0, BoundMode::Diagonal);
    CHECK(gated == 9);
    CHECK(tail_bound_diagonal(3, 8.0, gated).certified);
    CHECK_FALSE(tail_bound_diagonal(3, 8.0, gated - 1).certified);
    // m = 2 squares the inversion; an extreme target overflows the depth cap
    CHECK_THROWS_AS(depth_for_tolerance(2, 5000.0, 1e-9, BoundMode::General),
                    std::overflow_error);
}

TEST_CASE("depth planner brackets the tolerance exactly") {
    auto& gen = testutil::rng();
    std::uniform_int_distribution<unsigned> mdist(2, 9);
    std::uniform_real_distribution<double> bdist(1.0, 5000.0);
    std::uniform_real_distribution<double> edist(-6.0, -0.31);   // eps in [1e-6, ~0.5]
    std::uniform_real_distribution<double> edist2(-3.0, -0.31);  // m = 2 squares the depth
    for (int i = 0; i < 40; ++i) {
        unsigned m = mdist(gen);
        double B = bdist(gen);
        double eps = std::pow(10.0, (m == 2 ? edist2 : edist)(gen));
        for (BoundMode mode : {BoundMode::General, BoundMode::Diagonal}) {
            std::uint64_t P = depth_for_tolerance(m, B, eps, mode);
            auto bound = [&](std::uint64_t Q) {
                return mode == BoundMode::General ? tail_bound_general(m, B, Q)
                                                  : tail_bound_diagonal(m, B, Q).value;
            };
            CAPTURE(m);
            CAPTURE(B);
            CAPTURE(eps);
            CHECK(bound(P) <= eps);
            if (P > 2)
                CHECK(bound(P - 1) > eps);
        }
    }
}

TEST_CASE("minor arc regime thresholds") {
    RegimeReport r = minor_arc_regime(6, 3);
    CHECK(r.threshold == 6);
    CHECK(r.satisfied);
    CHECK(r.threshold_weyl == 9);
    CHECK_FALSE(r.satisfied_weyl);

    CHECK_FALSE(minor_arc_regime(3, 3).satisfied);
    RegimeReport r94 = minor_arc_regime(9, 4);
    CHECK(r94.threshold == 10);
    CHECK_FALSE(r94.satisfied);
    CHECK(minor_arc_regime(9, 3).satisfied_weyl);
    CHECK_THROWS_AS(minor_arc_regime(5, 1), std::invalid_argument);
}

TEST_CASE("diagonal bound beats the general bound on the archived grids") {
    const std::pair<unsigned, unsigned> grid[] = {{3, 3}, {3, 4}, {6, 4}, {6, 3}, {9, 3}, {9, 4}};
    for (auto [m, k] : grid) {
        double gen_eps =
            tail_bound_general(m, b_gen_approx(m, k).convert_to<double>(), 101);
        double diag_eps =
            tail_bound_diagonal(m, b_diag_approx(m, k).convert_to<double>(), 101).value;
        CAPTURE(m);
        CAPTURE(k);
        CHECK(diag_eps < gen_eps);
    }
}

TEST_CASE("sigma_p for the circle mod 3") {
    DiagonalForm circle{{Int(1), Int(1)}, 2};
    SigmaPResult r = sigma_p_representation(circle, Int(1), 3, 2);
    CHECK(r.value == Rational(4, 3));
    CHECK(r.stabilized);
    CHECK(r.stabilized_at == 1);
}

TEST_CASE("sigma_p at r_cap = 1 reports the raw level") {
    DiagonalForm cubic{{Int(1), Int(2)}, 3};
    SigmaPResult r = sigma_p_representation(cubic, Int(0), 7, 1);
    CHECK(r.value == Rational(1, 7));  // omega_7 = 1 over p^(m-1) = 7
    CHECK_FALSE(r.stabilized);
    CHECK(r.r_used == 1);
}

TEST_CASE("sigma_p with one variable counts k-th roots") {
    DiagonalForm pure{{Int(1)}, 3};
    SigmaPResult r = sigma_p_representation(pure, Int(1), 7, 1);
    CHECK(r.value == Rational(power_residue_count(Int(1), 3, 7)));
}

TEST_CASE("sigma_p stabilizes at r = 1 for good primes") {
    auto& gen = testutil::rng();
    std::uniform_int_distribution<int> coeff(1, 4);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> ndist(1, 6);
    int tested = 0;
    for (int i = 0; i < 40; ++i) {
        DiagonalForm d;
        d.exponent = 2 + (i % 2);  // k in {2, 3}
        for (int v = 0; v < 2; ++v) d.coefficients.emplace_back(coeff(gen) * (sign(gen) ? 1 : -1));
        Int N = ndist(gen);
        for (std::uint64_t p : {3, 5, 7, 11, 13}) {
            Int bad = Int(2) * d.exponent * N * d.coefficients[0] * d.coefficients[1];
            if (bad % p == 0) continue;  // skip non-good primes
            SigmaPResult r = sigma_p_representation(d, N, p, 2);
            CAPTURE(p);
            CAPTURE(N.str());
            CHECK(r.stabilized);
            CHECK(r.stabilized_at == 1);
            ++tested;
        }
    }
    CHECK(tested >= 50);
}

TEST_CASE("log accumulation is order insensitive") {
    Polynomial F = parse_polynomial("x^3 + 2*y^3");
    auto diag = detect_diagonal(F);
    REQUIRE(diag.has_value());
    std::vector<Real> logs;
    for (std::uint64_t p : prime_sieve(500))
        logs.push_back(log(to_real(local_factor_exact(omega_diagonal(*diag, p), p, 2, 1))));

    CompensatedSum<Real> asc, desc;
    for (auto it = logs.begin(); it != logs.end(); ++it) asc.add(*it);
    for (auto it = logs.rbegin(); it != logs.rend(); ++it) desc.add(*it);
    CHECK(abs(asc.value() - desc.value()) < Real("1e-12"));
}

TEST_CASE("with_bound attaches epsilon, interval, and certification") {
    SeriesResult base = truncated_constant(parse_polynomial("x^3 + 2*y^3"), 229);

    SeriesResult gen = with_bound(base, BoundMode::General, 2, 19.0);
    REQUIRE(gen.epsilon.has_value());
    CHECK(*gen.epsilon == doctest::Approx(tail_bound_general(2, 19.0, 229)));
    CHECK_FALSE(gen.certified);  // epsilon > 1 at this shallow depth
    CHECK_FALSE(gen.interval.has_value());

    SeriesResult diag = with_bound(base, BoundMode::Diagonal, 2, 2.0);
    REQUIRE(diag.epsilon.has_value());
    CHECK(*diag.epsilon == doctest::Approx(16.0 / 229.0));
    CHECK(diag.certified);
    REQUIRE(diag.interval.has_value());
    double c = to_double(base.c_p);
    CHECK(diag.interval->first == doctest::Approx(c / (1 + 16.0 / 229.0)));
    CHECK(diag.interval->second == doctest::Approx(c / (1 - 16.0 / 229.0)));

    SeriesResult none = with_bound(base, BoundMode::None, 2, 0.0);
    CHECK_FALSE(none.epsilon.has_value());
    CHECK_FALSE(none.certified);
}

TEST_CASE("series result JSON carries the exact field set") {
    SeriesResult r = truncated_constant(parse_polynomial("x^3 + 2*y^3"), 229);
    r = with_bound(r, BoundMode::Diagonal, 2, 2.0);
    nlohmann::json j = nlohmann::json::parse(series_result_to_json(r));
    const std::vector<std::string> expected = {"bound_mode", "c_p",     "certified", "depth",
                                               "epsilon",    "interval", "log_c_p",  "primes_used"};
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    CHECK(keys == expected);
    CHECK(j["depth"] == 229);
    CHECK(j["primes_used"] == 50);
    CHECK(j["bound_mode"] == "DIAGONAL");
    CHECK(j["certified"] == true);
    CHECK(j["interval"].is_array());
    CHECK(std::abs(j["c_p"].get<double>() - 1.25) < 0.005);

    SeriesResult bare = truncated_constant(parse_polynomial("x1"), 10);
    nlohmann::json j2 = nlohmann::json::parse(series_result_to_json(bare));
    CHECK(j2["epsilon"].is_null());
    CHECK(j2["interval"].is_null());
    CHECK(j2["bound_mode"] == "NONE");
}
