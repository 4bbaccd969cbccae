#include "bhc/verify.hpp"

#include "bhc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

namespace bhc {

bool is_prime_u64(std::uint64_t n) { return detail::is_prime_u64(n); }

Int box_value_bound(const Polynomial& F, std::uint64_t T) {
    Int bound = 0;
    for (const Term& t : F.terms()) {
        unsigned deg = 0;
        for (unsigned e : t.exponents) deg += e;
        Int mag = boost::multiprecision::abs(t.coefficient);
        if (deg > 0) {
            if (T == 0) continue;  // term vanishes at the origin
            mag *= boost::multiprecision::pow(Int(T), deg);
        }
        bound += mag;
    }
    return bound;
}

std::uint64_t safe_box_limit(const Polynomial& F) {
    const Int limit = Int(1) << 63;
    if (box_value_bound(F, 0) >= limit) return 0;
    std::uint64_t lo = 0, hi = 1;
    while (hi < (std::uint64_t{1} << 40) && box_value_bound(F, hi) < limit) {
        lo = hi;
        hi *= 2;
    }
    while (lo + 1 < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (box_value_bound(F, mid) < limit)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

namespace {

// Evaluation plan over a box: int64 power tables per (variable, exponent),
// safe because box_value_bound dominates every partial product and sum.
struct BoxEval {
    const Polynomial& F;
    std::uint64_t T;
    std::vector<std::map<unsigned, std::vector<std::int64_t>>> ptab;

    BoxEval(const Polynomial& f, std::uint64_t t) : F(f), T(t), ptab(f.num_vars()) {
        const std::int64_t side = static_cast<std::int64_t>(2 * T + 1);
        for (const Term& term : F.terms()) {
            for (unsigned i = 0; i < F.num_vars(); ++i) {
                unsigned e = term.exponents[i];
                if (e == 0 || ptab[i].count(e)) continue;
                std::vector<std::int64_t> tab(side);
                for (std::int64_t x = -static_cast<std::int64_t>(T);
                     x <= static_cast<std::int64_t>(T); ++x) {
                    std::int64_t v = 1;
                    for (unsigned j = 0; j < e; ++j) v *= x;
                    tab[x + static_cast<std::int64_t>(T)] = v;
                }
                ptab[i].emplace(e, std::move(tab));
            }
        }
    }

    // idx[i] in [0, 2T]; the point is idx - T.
    std::int64_t value_at(const std::vector<std::uint64_t>& idx) const {
        std::int64_t total = 0;
        for (const Term& term : F.terms()) {
            std::int64_t v = term.coefficient.convert_to<std::int64_t>();
            for (unsigned i = 0; i < F.num_vars(); ++i) {
                unsigned e = term.exponents[i];
                if (e > 0) v *= ptab[i].at(e)[idx[i]];
            }
            total += v;
        }
        return total;
    }
};

bool counts_as_hit(std::int64_t v, bool absolute_values) {
    if (absolute_values) {
        std::uint64_t u = v < 0 ? static_cast<std::uint64_t>(-v) : static_cast<std::uint64_t>(v);
        return u >= 2 && detail::is_prime_u64(u);
    }
    return v >= 2 && detail::is_prime_u64(static_cast<std::uint64_t>(v));
}

}  // namespace

std::uint64_t count_prime_values(const Polynomial& F, std::uint64_t T, unsigned threads,
                                 bool absolute_values) {
    if (F.is_zero()) return 0;
    const Int limit = Int(1) << 63;
    if (box_value_bound(F, T) >= limit) {
        std::uint64_t safe = safe_box_limit(F);
        throw OverflowRisk("count_prime_values: values may overflow 64 bits at T = " +
                               std::to_string(T) + "; largest safe T is " + std::to_string(safe),
                           safe);
    }
    const unsigned m = F.num_vars();
    if (T == 0) {
        Int v = evaluate(F, std::vector<Int>(m, 0));
        std::int64_t w = v.convert_to<std::int64_t>();
        return counts_as_hit(w, absolute_values) ? 1 : 0;
    }

    const BoxEval plan(F, T);
    const std::uint64_t side = 2 * T + 1;

    // Slice the box along the first coordinate; each slice is independent.
    std::vector<std::uint64_t> slice_hits(side, 0);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        std::vector<std::uint64_t> idx(m, 0);
        while (true) {
            std::uint64_t s = next.fetch_add(1);
            if (s >= side) return;
            idx.assign(m, 0);
            idx[0] = s;
            std::uint64_t hits = 0;
            while (true) {
                if (counts_as_hit(plan.value_at(idx), absolute_values)) ++hits;
                unsigned j = m;
                bool done = (m == 1);
                while (j > 1) {
                    --j;
                    if (++idx[j] < side) break;
                    idx[j] = 0;
                    if (j == 1) done = true;
                }
                if (done) break;
            }
            slice_hits[s] = hits;
        }
    };
    unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(side)));
    if (count == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    std::uint64_t total = 0;
    for (std::uint64_t h : slice_hits) total += h;
    return total;
}

double predicted_count(double c_p, unsigned m, unsigned d, std::uint64_t T) {
    if (d < 1) throw std::invalid_argument("predicted_count: degree must be >= 1");
    if (T < 2) throw std::invalid_argument("predicted_count: T must be >= 2");
    const double box_volume = std::pow(2.0, static_cast<double>(m));
    return c_p * (box_volume / d) * std::pow(static_cast<double>(T), static_cast<double>(m)) /
           std::log(static_cast<double>(T));
}

std::vector<BoxCountReport> asymptotic_scan(const Polynomial& F,
                                            const std::vector<std::uint64_t>& t_list,
                                            std::uint64_t depth, const ScanOptions& opts) {
    if (t_list.empty()) throw std::invalid_argument("asymptotic_scan: empty T list");
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        if (t_list[i] < 2) throw std::invalid_argument("asymptotic_scan: T values must be >= 2");
        if (i > 0 && t_list[i] <= t_list[i - 1])
            throw std::invalid_argument("asymptotic_scan: T list must be ascending");
    }

    SeriesResult series = truncated_constant(F, depth, {opts.budget, opts.threads});
    const double c = to_double(series.c_p);
    const unsigned m = F.num_vars();
    const unsigned d = total_degree(F);

    std::vector<BoxCountReport> reports;
    reports.reserve(t_list.size());
    for (std::uint64_t T : t_list) {
        BoxCountReport r;
        r.t = T;
        r.points_scanned = boost::multiprecision::pow(Int(2) * T + 1, m);
        r.prime_hits = count_prime_values(F, T, opts.threads, opts.absolute_values);
        r.predicted = predicted_count(c, m, d, T);
        r.ratio = r.predicted > 0 ? static_cast<double>(r.prime_hits) / r.predicted : 0.0;
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace bhc
