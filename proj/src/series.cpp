#include "bhc/series.hpp"

#include "bhc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bhc {

namespace {

// Run fn(i) for i in [0, n); worker threads pull indices off a shared
// counter. The first exception wins and is rethrown on the caller.
template <class Fn>
void parallel_indices(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned count = std::min<std::size_t>(threads, n);
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

Rational local_factor_for(const Polynomial& F, const std::optional<DiagonalForm>& diag,
                          std::uint64_t p, std::uint64_t budget) {
    Int omega = diag ? omega_diagonal(*diag, p) : omega_enumerate(F, p, budget);
    return local_factor_exact(omega, p, F.num_vars(), 1);
}

}  // namespace

std::string to_string(BoundMode mode) {
    switch (mode) {
        case BoundMode::General: return "GENERAL";
        case BoundMode::Diagonal: return "DIAGONAL";
        case BoundMode::None: return "NONE";
    }
    return "NONE";
}

std::vector<std::uint64_t> prime_sieve(std::uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("prime_sieve: limit must be >= 2");
    if (limit > 200'000'000ull) throw std::invalid_argument("prime_sieve: limit too large");
    std::vector<std::uint8_t> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

SeriesResult truncated_constant(const Polynomial& F, std::uint64_t P, const ComputeOptions& opts) {
    if (P < 2) throw std::invalid_argument("truncated_constant: depth must be >= 2");
    if (F.is_zero()) throw std::domain_error("truncated_constant: zero polynomial");

    auto obstruction = fixed_divisor_check(F, std::max<std::uint64_t>(P, 997), opts.budget);
    if (obstruction.divisor != 1) throw LocalVanishing(obstruction.witness_primes.front());

    const auto primes = prime_sieve(P);
    const auto diag = detect_diagonal(F);

    std::vector<Rational> factors(primes.size());
    parallel_indices(primes.size(), opts.threads, [&](std::size_t i) {
        factors[i] = local_factor_for(F, diag, primes[i], opts.budget);
    });

    CompensatedSum<Real> log_sum;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (factors[i] == 0) throw LocalVanishing(primes[i]);
        log_sum.add(log(to_real(factors[i])));
    }

    SeriesResult r;
    r.depth = P;
    r.primes_used = primes.size();
    r.log_c_p = log_sum.value();
    r.c_p = exp(log_sum.value());
    r.bound_mode = BoundMode::None;
    return r;
}

namespace {

void check_bound_args(unsigned m, double B, std::uint64_t P, const char* who) {
    if (m < 2) throw std::invalid_argument(std::string(who) + ": m must be >= 2");
    if (!(B > 0)) throw std::invalid_argument(std::string(who) + ": B must be positive");
    if (P < 2) throw std::invalid_argument(std::string(who) + ": P must be >= 2");
}

}  // namespace

double tail_bound_general(unsigned m, double B, std::uint64_t P) {
    check_bound_args(m, B, P, "tail_bound_general");
    const double expo = (static_cast<double>(m) - 1.0) / 2.0;
    return 4.0 * B / (m - 1.0) * std::pow(static_cast<double>(P - 1), -expo);
}

double tail_bound_general_alt(unsigned m, double B, std::uint64_t P) {
    check_bound_args(m, B, P, "tail_bound_general_alt");
    const double expo = (static_cast<double>(m) + 1.0) / 2.0;
    return 4.0 * B / (m - 1.0) * std::pow(static_cast<double>(P), -expo);
}

DiagonalBound tail_bound_diagonal(unsigned m, double B_diag, std::uint64_t P) {
    check_bound_args(m, B_diag, P, "tail_bound_diagonal");
    const double decay = std::pow(static_cast<double>(P), -static_cast<double>(m) / 2.0);
    DiagonalBound b;
    b.value = 8.0 * B_diag / (m - 1.0) * decay;
    b.certified = 4.0 * B_diag / (m - 1.0) * decay <= std::log(2.0);
    return b;
}

std::optional<std::pair<double, double>> certified_interval(double c_p, double epsilon) {
    if (epsilon < 0) throw std::invalid_argument("certified_interval: epsilon must be >= 0");
    if (epsilon >= 1) return std::nullopt;
    return std::make_pair(c_p / (1.0 + epsilon), c_p / (1.0 - epsilon));
}

Real tail_sum_direct(const Polynomial& F, std::uint64_t P_lo, std::uint64_t P_hi,
                     const ComputeOptions& opts) {
    if (P_lo > P_hi) throw std::invalid_argument("tail_sum_direct: P_lo must be <= P_hi");
    if (P_lo == P_hi || P_hi < 2) return Real(0);
    if (F.is_zero()) throw std::domain_error("tail_sum_direct: zero polynomial");

    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : prime_sieve(P_hi))
        if (p > P_lo) primes.push_back(p);

    const auto diag = detect_diagonal(F);
    std::vector<Rational> deviations(primes.size());
    parallel_indices(primes.size(), opts.threads, [&](std::size_t i) {
        Rational l = local_factor_for(F, diag, primes[i], opts.budget);
        deviations[i] = boost::multiprecision::abs(l - 1);
    });

    CompensatedSum<Real> sum;
    for (const Rational& d : deviations) sum.add(to_real(d));
    return sum.value();
}

namespace {

double bound_value(unsigned m, double B, std::uint64_t P, BoundMode mode) {
    if (P < 2) return std::numeric_limits<double>::infinity();
    return mode == BoundMode::General ? tail_bound_general(m, B, P)
                                      : tail_bound_diagonal(m, B, P).value;
}

bool bound_usable(unsigned m, double B, std::uint64_t P, BoundMode mode) {
    if (mode == BoundMode::General) return true;
    return tail_bound_diagonal(m, B, P).certified;
}

}  // namespace

std::uint64_t depth_for_tolerance(unsigned m, double B, double eps_target, BoundMode mode) {
    if (mode == BoundMode::None) throw std::invalid_argument("depth_for_tolerance: pick a bound");
    if (!(eps_target > 0)) throw std::invalid_argument("depth_for_tolerance: eps must be > 0");
    check_bound_args(m, B, 2, "depth_for_tolerance");

    // Keep depths below 2^53 so double(P) stays exact.
    constexpr std::uint64_t kDepthCap = 1'000'000'000'000'000ull;
    auto ok_at = [&](std::uint64_t P) {
        return bound_value(m, B, P, mode) <= eps_target && bound_usable(m, B, P, mode);
    };

    // Closed-form inversion seeds the bracket; it is never trusted alone.
    double est;
    if (mode == BoundMode::General) {
        // (P-1)^(-(m-1)/2) = eps solves to P = 1 + (4B/((m-1) eps))^(2/(m-1)).
        est = 1.0 + std::ceil(std::pow(4.0 * B / ((m - 1.0) * eps_target), 2.0 / (m - 1.0)));
    } else {
        est = std::ceil(std::pow(8.0 * B / ((m - 1.0) * eps_target), 2.0 / m));
    }
    std::uint64_t hi = est < 2.0 || !std::isfinite(est)
                           ? 2
                           : std::min<std::uint64_t>(static_cast<std::uint64_t>(est), kDepthCap);
    while (!ok_at(hi)) {
        if (hi >= kDepthCap)
            throw std::overflow_error("depth_for_tolerance: required depth exceeds 10^15");
        hi = std::min(kDepthCap, hi * 2);
    }
    // Smallest admissible P: both the bound value and the gate are monotone.
    std::uint64_t lo = 2;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (ok_at(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

RegimeReport minor_arc_regime(unsigned m, unsigned k) {
    if (k < 2) throw std::invalid_argument("minor_arc_regime: k must be >= 2");
    if (k > 62) throw std::invalid_argument("minor_arc_regime: k too large");
    RegimeReport r;
    r.m = m;
    r.k = k;
    r.threshold = static_cast<std::uint64_t>(k) * (k + 1) / 2;
    r.threshold_weyl = (std::uint64_t{1} << k) + 1;
    r.satisfied = m >= r.threshold;
    r.satisfied_weyl = m >= r.threshold_weyl;
    return r;
}

SigmaPResult sigma_p_representation(const DiagonalForm& D, const Int& N, std::uint64_t p,
                                    unsigned r_cap, std::uint64_t budget) {
    if (!detail::is_prime_u64(p))
        throw std::invalid_argument("sigma_p_representation: p must be prime");
    if (r_cap < 1) throw std::invalid_argument("sigma_p_representation: r_cap must be >= 1");
    const unsigned m = D.num_vars();
    if (m == 0) throw std::invalid_argument("sigma_p_representation: empty diagonal form");

    std::optional<Rational> prev;
    for (unsigned r = 1; r <= r_cap; ++r) {
        Int points = boost::multiprecision::pow(Int(p), r * m);
        if (points > budget)
            throw BudgetExceeded("sigma_p_representation: p^(r*m) = " + points.str() +
                                     " evaluations exceed the budget of " + std::to_string(budget),
                                 points.convert_to<double>());
        const std::uint64_t q =
            boost::multiprecision::pow(Int(p), r).convert_to<std::uint64_t>();

        // Value histograms of a_i x^k over Z/q, folded just like omega.
        std::vector<std::vector<std::uint64_t>> hists(m, std::vector<std::uint64_t>(q, 0));
        for (unsigned i = 0; i < m; ++i) {
            const std::uint64_t a = mod_u64(D.coefficients[i], q);
            for (std::uint64_t x = 0; x < q; ++x)
                ++hists[i][mulmod_u64(a, powmod_u64(x, D.exponent, q), q)];
        }
        Int count = detail::fold_count_at(hists, q, mod_u64(N, q));
        Rational c_r(count, boost::multiprecision::pow(Int(p), r * (m - 1)));

        if (prev && *prev == c_r) return {c_r, r, true, r - 1};
        prev = std::move(c_r);
    }
    return {*prev, r_cap, false, std::nullopt};
}

SeriesResult with_bound(SeriesResult result, BoundMode mode, unsigned m, double B) {
    result.bound_mode = mode;
    result.epsilon.reset();
    result.interval.reset();
    result.certified = false;
    if (mode == BoundMode::None) return result;

    bool gate = true;
    double eps;
    if (mode == BoundMode::General) {
        eps = tail_bound_general(m, B, result.depth);
    } else {
        DiagonalBound b = tail_bound_diagonal(m, B, result.depth);
        eps = b.value;
        gate = b.certified;
    }
    result.epsilon = eps;
    if (auto iv = certified_interval(to_double(result.c_p), eps)) {
        result.interval = *iv;
        result.certified = gate;
    }
    return result;
}

std::string series_result_to_json(const SeriesResult& r, int indent) {
    nlohmann::json j;
    j["depth"] = r.depth;
    j["primes_used"] = r.primes_used;
    j["log_c_p"] = to_double(r.log_c_p);
    j["c_p"] = to_double(r.c_p);
    j["epsilon"] = r.epsilon ? nlohmann::json(*r.epsilon) : nlohmann::json(nullptr);
    j["interval"] = r.interval
                        ? nlohmann::json::array({r.interval->first, r.interval->second})
                        : nlohmann::json(nullptr);
    j["bound_mode"] = to_string(r.bound_mode);
    j["certified"] = r.certified;
    return j.dump(indent);
}

}  // namespace bhc
