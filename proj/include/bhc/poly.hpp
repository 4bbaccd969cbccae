#pragma once

#include "bhc/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bhc {

/// One monomial: coefficient * prod_i x_i^exponents[i].
struct Term {
    std::vector<unsigned> exponents;
    Int coefficient;

    friend bool operator==(const Term& a, const Term& b) {
        return a.exponents == b.exponents && a.coefficient == b.coefficient;
    }
};

/// Sparse multivariate integer polynomial in canonical form: terms sorted by
/// exponent vector (lexicographically descending), no zero coefficients, no
/// repeated exponent vectors, and every exponent vector of length num_vars().
class Polynomial {
public:
    /// Canonicalizes: merges like terms, drops zero terms. Every term must
    /// carry exactly `num_vars` exponents.
    Polynomial(unsigned num_vars, std::vector<Term> terms);

    static Polynomial zero(unsigned num_vars) { return Polynomial(num_vars, {}); }

    unsigned num_vars() const noexcept { return num_vars_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

private:
    unsigned num_vars_;
    std::vector<Term> terms_;
};

/// Diagonal form a_1 x_1^k + ... + a_m x_m^k with k >= 2 and all a_i nonzero.
struct DiagonalForm {
    std::vector<Int> coefficients;
    unsigned exponent = 0;

    unsigned num_vars() const noexcept { return static_cast<unsigned>(coefficients.size()); }
};

/// Result of the fixed-prime-divisor (Bunyakovsky) check. `divisor` is the
/// product of the witness primes, each taken once; 1 means no obstruction.
struct FixedDivisorReport {
    Int divisor = 1;
    std::vector<std::uint64_t> witness_primes;
};

/// Parses the text grammar
///   expr   := term (('+'|'-') term)*
///   term   := [integer '*']? factor ('*' factor)*
///   factor := 'x' index ['^' positive-integer] | integer
/// Whitespace is ignored; bare x, y, z are aliases for x1, x2, x3. The arity
/// is the largest variable index seen (at least 1).
Polynomial parse_polynomial(std::string_view text);

/// Same grammar with a declared arity; a variable index above `declared_arity`
/// is a ParseError.
Polynomial parse_polynomial(std::string_view text, unsigned declared_arity);

/// Canonical text form; parse_polynomial(format_polynomial(F)) == F.
std::string format_polynomial(const Polynomial& F);

/// Exact value of F at an integer point (arity must match).
Int evaluate(const Polynomial& F, const std::vector<Int>& point);

/// F(point) mod p with every intermediate reduced mod p. Point entries are
/// reduced mod p first; arity must match.
std::uint64_t evaluate_mod(const Polynomial& F, const std::vector<std::uint64_t>& point,
                           std::uint64_t p);

/// Max over terms of the exponent sum. Undefined (throws) for the zero
/// polynomial.
unsigned total_degree(const Polynomial& F);

/// Recognizes a_1 x_1^k + ... + a_m x_m^k with a common k >= 2, one term per
/// variable, and no constant term. Returns nullopt otherwise.
std::optional<DiagonalForm> detect_diagonal(const Polynomial& F);

/// The polynomial carrying exactly the terms of a diagonal form.
Polynomial expand(const DiagonalForm& D);

/// Tests, for each prime p <= min(prime_cap, total_degree(F)+1), whether F
/// vanishes on all of (Z/p)^m by full enumeration. Primes above the degree
/// cap but <= prime_cap that divide every coefficient are also reported.
FixedDivisorReport fixed_divisor_check(const Polynomial& F, std::uint64_t prime_cap,
                                       std::uint64_t budget = kDefaultBudget);

}  // namespace bhc
