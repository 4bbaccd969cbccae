#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>

namespace bhc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Working precision for accumulated products. 50 decimal digits (~166 bits
// of mantissa); local factors themselves are carried as exact rationals and
// rounded once on conversion.
using Real = boost::multiprecision::cpp_bin_float_50;

/// Default cap on point enumerations (number of evaluations).
inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000;

inline double to_double(const Real& x) { return x.convert_to<double>(); }
inline Real to_real(const Rational& q) { return q.convert_to<Real>(); }

/// Reduce an arbitrary-precision integer into [0, m).
inline std::uint64_t mod_u64(const Int& v, std::uint64_t m) {
    Int r = v % m;
    if (r < 0) r += m;
    return r.convert_to<std::uint64_t>();
}

/// (a * b) mod m without overflow for any 64-bit modulus.
inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

/// (base ^ exp) mod m by binary exponentiation.
inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Kahan compensated accumulator; keeps ordered sums stable to the last ulp.
template <class F>
class CompensatedSum {
public:
    void add(const F& x) {
        F y = x - carry_;
        F t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    const F& value() const noexcept { return sum_; }

private:
    F sum_{0};
    F carry_{0};
};

namespace detail {

inline bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

// Deterministic over the whole 64-bit range: the first twelve prime bases
// decide primality for all n < 3.3 * 10^24.
inline bool is_prime_u64(std::uint64_t n) {
    constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (std::uint64_t p : bases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : bases) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

}  // namespace detail
}  // namespace bhc
