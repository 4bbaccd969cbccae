#include "bhc/constants.hpp"

#include <stdexcept>

namespace bhc {

using boost::multiprecision::pow;

Int b_max(unsigned m, unsigned n) {
    if (m < 2) throw std::invalid_argument("b_max: m must be >= 2");
    if (n < 1) throw std::invalid_argument("b_max: n must be >= 1");
    return Int(3) * m - 2 + pow(Int(n), m) + 2 * pow(Int(n), m - 1);
}

Int betti_sum_hypersurface(unsigned ambient_dim, unsigned degree) {
    if (ambient_dim < 2) throw std::invalid_argument("betti_sum_hypersurface: N must be >= 2");
    if (degree < 1) throw std::invalid_argument("betti_sum_hypersurface: degree must be >= 1");
    const unsigned N = ambient_dim;
    const Int n(degree);
    Int chi = (pow(Int(1) - n, N + 1) - 1) / n + N + 1;
    const bool dim_even = (N - 1) % 2 == 0;
    return dim_even ? chi : Int(2) * N - chi;
}

Int b_geom(unsigned m, unsigned n) {
    if (m < 3) throw std::invalid_argument("b_geom: m must be >= 3");
    if (n < 2) throw std::invalid_argument("b_geom: n must be >= 2");
    return betti_sum_hypersurface(m, n) + 2 * betti_sum_hypersurface(m - 1, n);
}

Rational b_diag(unsigned m, unsigned n) {
    if (n < 3)
        throw std::domain_error("b_diag: the diagonal constant is only valid for degree n >= 3");
    if (m < 2) throw std::invalid_argument("b_diag: m must be >= 2");
    Int num = pow(Int(n) - 1, m + 1) - (Int(n) - 1);
    return Rational(num, Int(n));
}

Int b_diag_approx(unsigned m, unsigned n) {
    if (n < 1) throw std::invalid_argument("b_diag_approx: n must be >= 1");
    return pow(Int(n) - 1, m);
}

Int b_gen_approx(unsigned m, unsigned n) { return pow(Int(n), m); }

ConstantProfile constant_profile(unsigned m, unsigned n) {
    ConstantProfile prof;
    prof.m = m;
    prof.n = n;
    prof.b_max = b_max(m, n);
    if (m >= 3 && n >= 2) prof.b_geom = b_geom(m, n);
    if (n >= 3) prof.b_diag = b_diag(m, n);
    return prof;
}

}  // namespace bhc
