#include "bhc/localdensity.hpp"

#include "bhc/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bhc {

namespace {

void require_prime(std::uint64_t p, const char* who) {
    if (!detail::is_prime_u64(p))
        throw std::invalid_argument(std::string(who) + ": p = " + std::to_string(p) +
                                    " is not prime");
}

}  // namespace

Int omega_enumerate(const Polynomial& F, std::uint64_t p, std::uint64_t budget) {
    require_prime(p, "omega_enumerate");
    if (F.is_zero()) throw std::domain_error("omega_enumerate: zero polynomial");
    const unsigned m = F.num_vars();

    Int space = boost::multiprecision::pow(Int(p), m);
    if (space > budget)
        throw BudgetExceeded("omega_enumerate: p^m = " + space.str() +
                                 " evaluations exceed the budget of " + std::to_string(budget),
                             space.convert_to<double>());

    // Reduce coefficients mod p; terms that vanish drop out entirely.
    struct RTerm {
        const std::vector<unsigned>* exps;
        std::uint64_t c;
    };
    std::vector<RTerm> terms;
    for (const Term& t : F.terms()) {
        std::uint64_t c = mod_u64(t.coefficient, p);
        if (c != 0) terms.push_back({&t.exponents, c});
    }
    if (terms.empty()) return space;  // F = 0 mod p identically

    // Power tables x -> x^e for every (variable, exponent) pair in use.
    std::vector<std::map<unsigned, std::vector<std::uint64_t>>> ptab(m);
    for (const RTerm& t : terms) {
        for (unsigned i = 0; i < m; ++i) {
            unsigned e = (*t.exps)[i];
            if (e == 0 || ptab[i].count(e)) continue;
            std::vector<std::uint64_t> tab(p);
            for (std::uint64_t x = 0; x < p; ++x) tab[x] = powmod_u64(x, e, p);
            ptab[i].emplace(e, std::move(tab));
        }
    }

    // Group terms by the exponent of the innermost (last) variable.
    const unsigned last = m - 1;
    std::map<unsigned, std::vector<std::size_t>> groups;
    for (std::size_t t = 0; t < terms.size(); ++t) groups[(*terms[t].exps)[last]].push_back(t);

    std::vector<std::uint64_t> x(m > 1 ? m - 1 : 0, 0);
    std::vector<std::uint64_t> partial(groups.size());
    std::uint64_t count = 0;
    while (true) {
        // Collapse the outer coordinates: F = sum_e A_e * x_last^e.
        std::size_t gi = 0;
        for (const auto& [e, members] : groups) {
            std::uint64_t a = 0;
            for (std::size_t t : members) {
                std::uint64_t v = terms[t].c;
                for (unsigned i = 0; i + 1 < m; ++i) {
                    unsigned ei = (*terms[t].exps)[i];
                    if (ei > 0) v = mulmod_u64(v, ptab[i].at(ei)[x[i]], p);
                }
                a = (a + v) % p;
            }
            partial[gi++] = a;
        }
        for (std::uint64_t xl = 0; xl < p; ++xl) {
            std::uint64_t v = 0;
            gi = 0;
            for (const auto& [e, members] : groups) {
                std::uint64_t f = partial[gi++];
                if (e > 0) f = mulmod_u64(f, ptab[last].at(e)[xl], p);
                v = (v + f) % p;
            }
            if (v == 0) ++count;
        }
        // Advance the outer odometer.
        unsigned j = static_cast<unsigned>(x.size());
        bool done = x.empty();
        while (j > 0) {
            --j;
            if (++x[j] < p) break;
            x[j] = 0;
            if (j == 0) done = true;
        }
        if (done) break;
    }
    return Int(count);
}

std::uint64_t power_residue_count(const Int& a, std::uint64_t k, std::uint64_t p) {
    require_prime(p, "power_residue_count");
    if (k == 0) throw std::invalid_argument("power_residue_count: k must be >= 1");
    std::uint64_t am = mod_u64(a, p);
    if (am == 0) return 1;
    std::uint64_t g = std::gcd(k, p - 1);
    return powmod_u64(am, (p - 1) / g, p) == 1 ? g : 0;
}

CubicCaseReport cubic_case_classifier(std::uint64_t p) {
    require_prime(p, "cubic_case_classifier");
    if (p == 2 || p == 3) {
        static const Polynomial cubic = parse_polynomial("x1^3 + 2*x2^3");
        return {CubicCase::PEquals2Or3, std::nullopt, omega_enumerate(cubic, p)};
    }
    if (p % 3 == 2) return {CubicCase::TwoMod3, 1, Int(p)};
    std::uint64_t n = power_residue_count(Int(-2), 3, p);  // 0 or 3
    if (n == 0) return {CubicCase::OneMod3NonResidue, 0, Int(1)};
    return {CubicCase::OneMod3Residue, 3, Int(3) * p - 2};
}

std::vector<std::uint64_t> power_value_histogram(const Int& a, unsigned k, std::uint64_t p) {
    require_prime(p, "power_value_histogram");
    if (k == 0) throw std::invalid_argument("power_value_histogram: k must be >= 1");
    std::uint64_t am = mod_u64(a, p);
    std::vector<std::uint64_t> h(p, 0);
    for (std::uint64_t x = 0; x < p; ++x) ++h[mulmod_u64(am, powmod_u64(x, k, p), p)];
    return h;
}

namespace {

template <class T>
bool all_equal(const std::vector<T>& v) {
    for (const T& x : v)
        if (x != v.front()) return false;
    return true;
}

// Cyclic convolution of the accumulated counts with one histogram. A uniform
// operand short-circuits to a uniform result (mass transfers directly).
template <class T>
std::vector<T> cyclic_convolve(const std::vector<T>& a, const std::vector<std::uint64_t>& b) {
    const std::size_t p = a.size();
    if (all_equal(a)) {
        T mass_b(0);
        for (std::uint64_t x : b) mass_b += T(x);
        return std::vector<T>(p, a.front() * mass_b);
    }
    if (all_equal(b)) {
        T mass_a(0);
        for (const T& x : a) mass_a += x;
        return std::vector<T>(p, mass_a * T(b.front()));
    }
    std::vector<T> out(p, T(0));
    for (std::size_t i = 0; i < p; ++i) {
        if (a[i] == 0) continue;
        const T ai = a[i];
        std::size_t idx = i;
        for (std::size_t j = 0; j < p; ++j) {
            out[idx] += ai * T(b[j]);
            if (++idx == p) idx = 0;
        }
    }
    return out;
}

// Fold all histograms and read the count of tuples whose value sum hits
// `target` mod q. The last histogram is consumed by a dot product.
template <class T>
T fold_histograms_at(const std::vector<std::vector<std::uint64_t>>& hs, std::uint64_t q,
                     std::uint64_t target) {
    const std::size_t m = hs.size();
    if (m == 1) return T(hs[0][target]);
    std::vector<T> acc(hs[0].begin(), hs[0].end());
    for (std::size_t i = 1; i + 1 < m; ++i) acc = cyclic_convolve(acc, hs[i]);
    const auto& last = hs[m - 1];
    T total(0);
    for (std::uint64_t v = 0; v < q; ++v) {
        std::uint64_t w = (target + q - v) % q;
        if (last[w] != 0) total += acc[v] * T(last[w]);
    }
    return total;
}

}  // namespace

namespace detail {

Int fold_count_at(const std::vector<std::vector<std::uint64_t>>& hs, std::uint64_t q,
                  std::uint64_t target) {
    // The 64-bit path is safe whenever the full product mass q^m fits;
    // anything larger falls back to exact big integers.
    Int space = boost::multiprecision::pow(Int(q), static_cast<unsigned>(hs.size()));
    if (space <= (Int(1) << 62)) return Int(fold_histograms_at<std::uint64_t>(hs, q, target));
    return fold_histograms_at<Int>(hs, q, target);
}

}  // namespace detail

Int omega_diagonal(const DiagonalForm& D, std::uint64_t p) {
    require_prime(p, "omega_diagonal");
    if (D.num_vars() == 0) throw std::invalid_argument("omega_diagonal: empty diagonal form");
    if (D.exponent < 2) throw std::invalid_argument("omega_diagonal: exponent must be >= 2");
    for (const Int& a : D.coefficients)
        if (a == 0) throw std::invalid_argument("omega_diagonal: zero coefficient");

    std::vector<std::vector<std::uint64_t>> hists;
    hists.reserve(D.num_vars());
    for (const Int& a : D.coefficients) hists.push_back(power_value_histogram(a, D.exponent, p));
    return detail::fold_count_at(hists, p, 0);
}

Rational local_factor_exact(const Int& omega, std::uint64_t p, unsigned m, unsigned k) {
    require_prime(p, "local_factor");
    if (m == 0) throw std::invalid_argument("local_factor: m must be >= 1");
    if (k == 0) throw std::invalid_argument("local_factor: k must be >= 1");
    Int pm = boost::multiprecision::pow(Int(p), m);
    if (omega < 0 || omega > pm)
        throw std::invalid_argument("local_factor: omega out of [0, p^m]");
    Int num = (pm - omega) * boost::multiprecision::pow(Int(p), k);
    Int den = pm * boost::multiprecision::pow(Int(p) - 1, k);
    return Rational(num, den);
}

LocalFactor local_factor(const Int& omega, std::uint64_t p, unsigned m, unsigned k) {
    return {p, omega, to_real(local_factor_exact(omega, p, m, k))};
}

}  // namespace bhc
