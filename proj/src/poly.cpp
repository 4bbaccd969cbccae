#include "bhc/poly.hpp"

#include "bhc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bhc {

namespace {

// Largest variable index we accept; keeps a typo like x10000000 from
// allocating gigantic exponent vectors.
constexpr unsigned kMaxVarIndex = 64;

bool exps_greater(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

Polynomial::Polynomial(unsigned num_vars, std::vector<Term> terms) : num_vars_(num_vars) {
    if (num_vars_ == 0) throw std::invalid_argument("Polynomial: num_vars must be positive");
    for (const Term& t : terms) {
        if (t.exponents.size() != num_vars_)
            throw std::invalid_argument("Polynomial: exponent vector length != num_vars");
    }
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return exps_greater(a.exponents, b.exponents); });
    for (Term& t : terms) {
        if (!terms_.empty() && terms_.back().exponents == t.exponents) {
            terms_.back().coefficient += t.coefficient;
            if (terms_.back().coefficient == 0) terms_.pop_back();
        } else if (t.coefficient != 0) {
            terms_.push_back(std::move(t));
        }
    }
}

namespace {

struct Parser {
    std::string_view s;
    std::size_t i = 0;
    unsigned declared_arity;  // 0 = infer

    explicit Parser(std::string_view text, unsigned arity) : s(text), declared_arity(arity) {}

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    bool eof() {
        skip_ws();
        return i >= s.size();
    }

    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }

    std::uint64_t parse_digits() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            fail("expected a digit");
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            if (v > (UINT64_MAX - 9) / 10) fail("numeric literal too large");
            v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
            ++i;
        }
        return v;
    }

    Int parse_integer() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = (s[i] == '-');
            ++i;
        }
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            fail("expected an integer");
        Int v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            ++i;
        }
        return neg ? -v : v;
    }

    // factor := variable ['^' k] | integer. Returns (coefficient multiplier,
    // optional (var index, exponent)).
    struct Factor {
        Int coeff = 1;
        unsigned var = 0;  // 1-based; 0 = pure constant
        unsigned exp = 0;
    };

    Factor parse_factor() {
        skip_ws();
        if (i >= s.size()) fail("expected a factor");
        char c = s[i];
        Factor f;
        if (c == 'x' || c == 'y' || c == 'z') {
            std::size_t var_pos = i;
            ++i;
            unsigned idx;
            if (c == 'x' && i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                std::uint64_t raw = parse_digits();
                if (raw == 0) {
                    i = var_pos;
                    fail("variable index must be >= 1");
                }
                if (raw > kMaxVarIndex) {
                    i = var_pos;
                    fail("variable index too large");
                }
                idx = static_cast<unsigned>(raw);
            } else {
                idx = (c == 'x') ? 1u : (c == 'y') ? 2u : 3u;
            }
            if (declared_arity != 0 && idx > declared_arity) {
                i = var_pos;
                fail("variable index exceeds declared arity");
            }
            f.var = idx;
            f.exp = 1;
            if (accept('^')) {
                std::uint64_t e = parse_digits();
                if (e == 0) fail("exponent must be positive");
                if (e > 1u << 20) fail("exponent too large");
                f.exp = static_cast<unsigned>(e);
            }
            return f;
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            f.coeff = parse_integer();
            return f;
        }
        fail("unexpected character");
    }

    // term := factor ('*' factor)*
    void parse_term(int sign, std::map<unsigned, unsigned>& exps, Int& coeff) {
        coeff = sign;
        exps.clear();
        while (true) {
            Factor f = parse_factor();
            coeff *= f.coeff;
            if (f.var != 0) exps[f.var] += f.exp;
            if (!accept('*')) break;
        }
    }

    Polynomial parse() {
        std::vector<std::pair<std::map<unsigned, unsigned>, Int>> raw_terms;
        unsigned max_var = 0;
        int sign = 1;
        // A leading sign is tolerated even though the grammar starts at a term.
        if (peek() == '+' || peek() == '-') {
            // Only treat it as a term sign when followed by a variable; a
            // signed integer literal is handled inside parse_factor.
            std::size_t save = i;
            char c = s[i];
            ++i;
            if (peek() == 'x' || peek() == 'y' || peek() == 'z') {
                sign = (c == '-') ? -1 : 1;
            } else {
                i = save;
            }
        }
        while (true) {
            std::map<unsigned, unsigned> exps;
            Int coeff;
            parse_term(sign, exps, coeff);
            for (const auto& [v, _] : exps) max_var = std::max(max_var, v);
            raw_terms.emplace_back(std::move(exps), std::move(coeff));
            if (eof()) break;
            char c = peek();
            if (c == '+')
                sign = 1;
            else if (c == '-')
                sign = -1;
            else
                fail("expected '+' or '-'");
            ++i;
        }
        unsigned m = declared_arity != 0 ? declared_arity : std::max(max_var, 1u);
        std::vector<Term> terms;
        terms.reserve(raw_terms.size());
        for (auto& [exps, coeff] : raw_terms) {
            Term t;
            t.exponents.assign(m, 0);
            for (const auto& [v, e] : exps) t.exponents[v - 1] = e;
            t.coefficient = std::move(coeff);
            terms.push_back(std::move(t));
        }
        return Polynomial(m, std::move(terms));
    }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return Parser(text, 0).parse(); }

Polynomial parse_polynomial(std::string_view text, unsigned declared_arity) {
    if (declared_arity == 0) throw std::invalid_argument("declared arity must be positive");
    return Parser(text, declared_arity).parse();
}

std::string format_polynomial(const Polynomial& F) {
    if (F.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const Term& t : F.terms()) {
        Int c = t.coefficient;
        bool neg = c < 0;
        if (first) {
            if (neg) out << '-';
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        Int a = neg ? Int(-c) : c;
        std::string mono;
        for (unsigned v = 0; v < t.exponents.size(); ++v) {
            unsigned e = t.exponents[v];
            if (e == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += 'x' + std::to_string(v + 1);
            if (e > 1) mono += '^' + std::to_string(e);
        }
        if (mono.empty()) {
            out << a;
        } else {
            if (a != 1) out << a << '*';
            out << mono;
        }
    }
    return out.str();
}

Int evaluate(const Polynomial& F, const std::vector<Int>& point) {
    if (point.size() != F.num_vars())
        throw std::invalid_argument("evaluate: point arity mismatch");
    Int total = 0;
    for (const Term& t : F.terms()) {
        Int v = t.coefficient;
        for (unsigned i = 0; i < t.exponents.size(); ++i) {
            if (t.exponents[i] > 0) v *= boost::multiprecision::pow(point[i], t.exponents[i]);
        }
        total += v;
    }
    return total;
}

std::uint64_t evaluate_mod(const Polynomial& F, const std::vector<std::uint64_t>& point,
                           std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("evaluate_mod: modulus must be >= 2");
    if (point.size() != F.num_vars())
        throw std::invalid_argument("evaluate_mod: point arity mismatch");
    std::uint64_t total = 0;
    for (const Term& t : F.terms()) {
        std::uint64_t v = mod_u64(t.coefficient, p);
        for (unsigned i = 0; i < t.exponents.size() && v != 0; ++i) {
            if (t.exponents[i] > 0)
                v = mulmod_u64(v, powmod_u64(point[i] % p, t.exponents[i], p), p);
        }
        total = (total + v) % p;
    }
    return total;
}

unsigned total_degree(const Polynomial& F) {
    if (F.is_zero()) throw std::domain_error("total_degree: undefined for the zero polynomial");
    unsigned d = 0;
    for (const Term& t : F.terms()) {
        unsigned s = 0;
        for (unsigned e : t.exponents) s += e;
        d = std::max(d, s);
    }
    return d;
}

std::optional<DiagonalForm> detect_diagonal(const Polynomial& F) {
    const unsigned m = F.num_vars();
    if (F.terms().size() != m) return std::nullopt;
    DiagonalForm D;
    D.coefficients.assign(m, Int(0));
    unsigned k = 0;
    for (const Term& t : F.terms()) {
        unsigned var = 0, nonzero = 0, e = 0;
        for (unsigned i = 0; i < m; ++i) {
            if (t.exponents[i] > 0) {
                ++nonzero;
                var = i;
                e = t.exponents[i];
            }
        }
        if (nonzero != 1) return std::nullopt;  // constant or mixed term
        if (k == 0)
            k = e;
        else if (e != k)
            return std::nullopt;
        if (D.coefficients[var] != 0) return std::nullopt;  // two terms on one variable
        D.coefficients[var] = t.coefficient;
    }
    if (k < 2) return std::nullopt;
    for (const Int& a : D.coefficients)
        if (a == 0) return std::nullopt;  // some variable missing
    D.exponent = k;
    return D;
}

Polynomial expand(const DiagonalForm& D) {
    const unsigned m = D.num_vars();
    std::vector<Term> terms;
    terms.reserve(m);
    for (unsigned i = 0; i < m; ++i) {
        Term t;
        t.exponents.assign(m, 0);
        t.exponents[i] = D.exponent;
        t.coefficient = D.coefficients[i];
        terms.push_back(std::move(t));
    }
    return Polynomial(m, std::move(terms));
}

namespace {

// True iff F vanishes at every point of (Z/p)^m; early exit on the first
// nonzero value.
bool vanishes_everywhere(const Polynomial& F, std::uint64_t p, std::uint64_t budget) {
    const unsigned m = F.num_vars();
    Int space = boost::multiprecision::pow(Int(p), m);
    if (space > budget)
        throw BudgetExceeded("fixed_divisor_check: enumeration over p^m exceeds budget",
                             space.convert_to<double>());
    std::vector<std::uint64_t> x(m, 0);
    while (true) {
        if (evaluate_mod(F, x, p) != 0) return false;
        unsigned j = m;
        while (j > 0) {
            --j;
            if (++x[j] < p) break;
            x[j] = 0;
            if (j == 0) return true;
        }
    }
}

}  // namespace

FixedDivisorReport fixed_divisor_check(const Polynomial& F, std::uint64_t prime_cap,
                                       std::uint64_t budget) {
    if (prime_cap < 2) throw std::invalid_argument("fixed_divisor_check: prime_cap must be >= 2");
    if (F.is_zero())
        throw std::domain_error("fixed_divisor_check: zero polynomial has no finite divisor");

    const unsigned d = total_degree(F);
    const std::uint64_t enum_cap = std::min<std::uint64_t>(prime_cap, d + 1);

    FixedDivisorReport report;
    for (std::uint64_t p = 2; p <= enum_cap; ++p) {
        if (!detail::is_prime_u64(p)) continue;
        if (vanishes_everywhere(F, p, budget)) report.witness_primes.push_back(p);
    }

    // Primes beyond the degree cap can only be fixed divisors by dividing
    // every coefficient; pick them off the content.
    Int content = 0;
    for (const Term& t : F.terms()) content = boost::multiprecision::gcd(content, t.coefficient);
    content = boost::multiprecision::abs(content);
    for (std::uint64_t q = 2; q <= prime_cap && content > 1; ++q) {
        if (content % q != 0) continue;
        while (content % q == 0) content /= q;
        if (q > enum_cap) report.witness_primes.push_back(q);
    }

    std::sort(report.witness_primes.begin(), report.witness_primes.end());
    for (std::uint64_t p : report.witness_primes) report.divisor *= p;
    return report;
}

}  // namespace bhc
