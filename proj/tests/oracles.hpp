// Test-only oracles, kept independent of the library code paths they check.
#pragma once

#include <cstdint>
#include <vector>

#include "unitaria/rational.hpp"

namespace oracles {

using unitaria::Integer;
using unitaria::Rational;

// Bernoulli numbers straight from the generating function: expand
// t e^t/(e^t - 1) = e^t / ((e^t - 1)/t) as a power series by long division
// and read off n! * coefficient.
inline std::vector<Rational> bernoulli_series(unsigned upto) {
    std::vector<Rational> fact(upto + 2, Rational(1));
    for (unsigned i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * Rational(Integer(i));

    std::vector<Rational> num(upto + 1), den(upto + 1), c(upto + 1);
    for (unsigned k = 0; k <= upto; ++k) {
        num[k] = Rational(1) / fact[k];        // e^t
        den[k] = Rational(1) / fact[k + 1];    // (e^t - 1)/t
    }
    for (unsigned k = 0; k <= upto; ++k) {
        Rational s = num[k];
        for (unsigned i = 1; i <= k; ++i) s -= den[i] * c[k - i];
        c[k] = s;  // den[0] == 1
    }
    std::vector<Rational> b(upto + 1);
    for (unsigned k = 0; k <= upto; ++k) b[k] = c[k] * fact[k];
    return b;
}

// sigma_e(n) by direct divisor enumeration.
inline Integer divisor_sum_naive(std::uint64_t n, unsigned e) {
    Integer s(0);
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) s += unitaria::pow_int(Integer(d), e);
    return s;
}

// Coefficients a_0..a_bound of q * prod_{m>=1} (1 - q^m)^24, multiplied out
// factor by factor.
inline std::vector<Rational> delta_product_naive(unsigned bound) {
    std::vector<Integer> f(bound + 1, Integer(0));
    f[0] = 1;
    for (unsigned m = 1; m <= bound; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (unsigned i = bound; i >= m; --i) f[i] -= f[i - m];
    std::vector<Rational> out(bound + 1, Rational(0));
    for (unsigned i = 1; i <= bound; ++i) out[i] = Rational(f[i - 1]);
    return out;
}

}  // namespace oracles
