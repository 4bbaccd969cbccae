#pragma once

#include "bhc/numeric.hpp"

#include <optional>

namespace bhc {

/// The Betti-sum bound constants for an (m, n) profile, tagged with
/// applicability: the geometric bound needs m >= 3 and n >= 2, the diagonal
/// one needs degree n >= 3.
struct ConstantProfile {
    unsigned m = 0;
    unsigned n = 0;
    Int b_max;
    std::optional<Int> b_geom;
    std::optional<Rational> b_diag;
};

/// Universal bound 3m - 2 + n^m + 2 n^(m-1), valid for any smooth degree-n
/// hypersurface profile in m variables.
Int b_max(unsigned m, unsigned n);

/// Exact Betti sum of a smooth degree-n hypersurface in projective N-space,
/// from the Euler characteristic chi = ((1-n)^(N+1) - 1)/n + N + 1:
/// the sum is chi when dim X = N-1 is even and 2N - chi when odd.
Int betti_sum_hypersurface(unsigned ambient_dim, unsigned degree);

/// Geometric bound: Betti sum of the projective closure plus twice the Betti
/// sum of its hyperplane-at-infinity section.
Int b_geom(unsigned m, unsigned n);

/// Diagonal-form constant ((n-1)^(m+1) - (n-1)) / n as an exact rational.
/// Only meaningful for degrees n >= 3 (throws std::domain_error below that).
Rational b_diag(unsigned m, unsigned n);

/// Coarse diagonal approximation (n-1)^m.
Int b_diag_approx(unsigned m, unsigned n);

/// Coarse general approximation n^m.
Int b_gen_approx(unsigned m, unsigned n);

ConstantProfile constant_profile(unsigned m, unsigned n);

}  // namespace bhc
