#pragma once

#include "bhc/constants.hpp"
#include "bhc/localdensity.hpp"
#include "bhc/poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bhc {

enum class BoundMode { General, Diagonal, None };

std::string to_string(BoundMode mode);

/// Truncated singular product C_P with an optional certified tail bound.
/// Invariants: c_p = exp(log_c_p); when epsilon < 1 the interval is
/// [c_p/(1+eps), c_p/(1-eps)].
struct SeriesResult {
    std::uint64_t depth = 0;  // truncation depth P (largest prime considered)
    std::size_t primes_used = 0;
    Real log_c_p;
    Real c_p;
    std::optional<double> epsilon;
    std::optional<std::pair<double, double>> interval;
    BoundMode bound_mode = BoundMode::None;
    bool certified = false;
};

struct ComputeOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 1;
};

/// Diagonal tail bound plus its validity gate: the linearization behind the
/// bound needs (4/(m-1)) B P^(-m/2) <= ln 2; outside that range the value is
/// still reported but not certified.
struct DiagonalBound {
    double value = 0.0;
    bool certified = false;
};

/// Minor-arc variable-count thresholds for degree-k diagonal forms:
/// the classical 2^k + 1 and the sharper k(k+1)/2.
struct RegimeReport {
    unsigned m = 0;
    unsigned k = 0;
    std::uint64_t threshold = 0;       // k(k+1)/2
    std::uint64_t threshold_weyl = 0;  // 2^k + 1
    bool satisfied = false;            // m >= k(k+1)/2
    bool satisfied_weyl = false;       // m >= 2^k + 1
};

/// Local density of the representation problem F(x) = N mod p^r, normalized
/// by p^(r(m-1)). `stabilized_at` is the first level r whose value the next
/// level reproduced exactly.
struct SigmaPResult {
    Rational value;
    unsigned r_used = 0;
    bool stabilized = false;
    std::optional<unsigned> stabilized_at;
};

/// All primes <= limit, ascending.
std::vector<std::uint64_t> prime_sieve(std::uint64_t limit);

/// Truncated constant C_P = prod_{p <= P} L_p, accumulated in the log domain
/// with compensated summation over ascending primes. The diagonal histogram
/// path is used when the polynomial is a diagonal form, full enumeration
/// otherwise. Throws LocalVanishing when some L_p = 0 (then C_F = 0).
SeriesResult truncated_constant(const Polynomial& F, std::uint64_t P,
                                const ComputeOptions& opts = {});

/// General tail bound (4B/(m-1)) (P-1)^(-(m-1)/2).
double tail_bound_general(unsigned m, double B, std::uint64_t P);

/// Steeper-exponent variant (4B/(m-1)) P^(-(m+1)/2); kept for comparison,
/// not used by the table reproductions.
double tail_bound_general_alt(unsigned m, double B, std::uint64_t P);

/// Diagonal tail bound (8/(m-1)) B P^(-m/2) plus its certification gate.
DiagonalBound tail_bound_diagonal(unsigned m, double B_diag, std::uint64_t P);

/// |C - C_P|/C <= eps pins C into [C_P/(1+eps), C_P/(1-eps)]. Returns
/// nullopt when eps >= 1 (vacuous bound).
std::optional<std::pair<double, double>> certified_interval(double c_p, double epsilon);

/// Partial tail sum over primes p in (P_lo, P_hi] of |L_p - 1|, from exact
/// omega_p values. Empty range gives 0.
Real tail_sum_direct(const Polynomial& F, std::uint64_t P_lo, std::uint64_t P_hi,
                     const ComputeOptions& opts = {});

/// Smallest depth P with bound(P) <= eps_target; closed-form inversion of the
/// selected bound, then verified and adjusted by direct evaluation (and, in
/// diagonal mode, pushed up until the certification gate holds).
std::uint64_t depth_for_tolerance(unsigned m, double B, double eps_target, BoundMode mode);

/// Threshold report for degree-k diagonal forms in m variables.
RegimeReport minor_arc_regime(unsigned m, unsigned k);

/// Representation-problem density sigma_p: counts x mod p^r with
/// F(x) = N mod p^r for r = 1, 2, ... and returns the first exactly
/// stabilized value, or the r_cap value flagged unstabilized.
SigmaPResult sigma_p_representation(const DiagonalForm& D, const Int& N, std::uint64_t p,
                                    unsigned r_cap, std::uint64_t budget = kDefaultBudget);

/// Attaches a tail bound (and the implied certified interval) to a computed
/// truncation. B is the constant matching the mode.
SeriesResult with_bound(SeriesResult result, BoundMode mode, unsigned m, double B);

/// JSON document with fields: depth, primes_used, log_c_p, c_p, epsilon,
/// interval, bound_mode, certified.
std::string series_result_to_json(const SeriesResult& r, int indent = -1);

}  // namespace bhc
