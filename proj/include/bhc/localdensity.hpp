#pragma once

#include "bhc/poly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bhc {

/// Per-prime record: solution count omega_p and local factor
/// L_p = (1 - omega/p^m) / (1 - 1/p)^k, evaluated exactly as a rational and
/// rounded once to working precision.
struct LocalFactor {
    std::uint64_t p = 0;
    Int omega;
    Real l_value;
};

enum class CubicCase {
    PEquals2Or3,        // handled by direct enumeration
    TwoMod3,            // cubing is a bijection: omega_p = p
    OneMod3NonResidue,  // -2 is not a cube: omega_p = 1
    OneMod3Residue,     // -2 has three cube roots: omega_p = 3p - 2
};

/// Classification of a prime for x^3 + 2 y^3. n_p counts cube roots of -2
/// (absent for p in {2, 3}); omega is the implied solution count.
struct CubicCaseReport {
    CubicCase label;
    std::optional<int> n_p;
    Int omega;
};

/// #{x in [0,p)^m : F(x) = 0 mod p} by full enumeration with per-variable
/// power tables and the last coordinate innermost. Requires p^m <= budget.
Int omega_enumerate(const Polynomial& F, std::uint64_t p, std::uint64_t budget = kDefaultBudget);

/// #{t in F_p : t^k = a mod p}. Zero maps to its single root; otherwise a
/// has gcd(k, p-1) k-th roots when a^((p-1)/gcd) = 1 and none otherwise.
std::uint64_t power_residue_count(const Int& a, std::uint64_t k, std::uint64_t p);

/// Case analysis for F = x^3 + 2 y^3: the Euler-style criterion
/// (-2)^((p-1)/3) = 1 decides residue status for p = 1 mod 3.
CubicCaseReport cubic_case_classifier(std::uint64_t p);

/// Histogram h[v] = #{x in F_p : a x^k = v mod p}; the mass is always p.
std::vector<std::uint64_t> power_value_histogram(const Int& a, unsigned k, std::uint64_t p);

/// omega_p of a_1 x_1^k + ... + a_m x_m^k via per-variable value histograms
/// cyclically convolved over Z/p; agrees with omega_enumerate on the
/// expanded polynomial.
Int omega_diagonal(const DiagonalForm& D, std::uint64_t p);

/// L_p as an exact rational: (p^m - omega) p^k / (p^m (p-1)^k). `k` is the
/// number of polynomials in the set (1 for a single F).
Rational local_factor_exact(const Int& omega, std::uint64_t p, unsigned m, unsigned k = 1);

/// Full per-prime record; the rational value is rounded once to Real.
LocalFactor local_factor(const Int& omega, std::uint64_t p, unsigned m, unsigned k = 1);

namespace detail {

/// Count of tuples whose per-variable values (tallied in `hs` over Z/q) sum
/// to `target` mod q. q need not be prime; used for densities mod p^r too.
Int fold_count_at(const std::vector<std::vector<std::uint64_t>>& hs, std::uint64_t q,
                  std::uint64_t target);

}  // namespace detail
}  // namespace bhc
