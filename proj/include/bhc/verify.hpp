#pragma once

#include "bhc/poly.hpp"
#include "bhc/series.hpp"

#include <cstdint>
#include <vector>

namespace bhc {

/// One row of an asymptotic comparison: prime hits in the closed box
/// [-T, T]^m against the heuristic prediction.
struct BoxCountReport {
    std::uint64_t t = 0;
    Int points_scanned;  // (2T+1)^m
    std::uint64_t prime_hits = 0;
    double predicted = 0.0;
    double ratio = 0.0;
};

struct ScanOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 1;
    bool absolute_values = false;  // count |F(x)| prime instead of F(x) prime
};

/// Deterministic primality for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

/// Sum_t |c_t| T^(deg t): an upper bound for |F| over the closed box
/// [-T, T]^m, exact in big integers.
Int box_value_bound(const Polynomial& F, std::uint64_t T);

/// Largest T whose box keeps every |F(x)| strictly below 2^63 (0 if only the
/// origin box is safe).
std::uint64_t safe_box_limit(const Polynomial& F);

/// #{x in [-T, T]^m : F(x) is a positive prime}. With absolute_values set,
/// counts |F(x)| prime instead. Refuses boxes that could overflow 64-bit
/// evaluation (OverflowRisk names the safe maximum T).
std::uint64_t count_prime_values(const Polynomial& F, std::uint64_t T, unsigned threads = 1,
                                 bool absolute_values = false);

/// Heuristic prediction c_p * (2^m / d) * T^m / ln T.
double predicted_count(double c_p, unsigned m, unsigned d, std::uint64_t T);

/// Computes C_P once at the given depth, then one BoxCountReport per T.
/// T values must be >= 2 and ascending.
std::vector<BoxCountReport> asymptotic_scan(const Polynomial& F,
                                            const std::vector<std::uint64_t>& t_list,
                                            std::uint64_t depth, const ScanOptions& opts = {});

}  // namespace bhc
