// Bernoulli numbers, special zeta values, divisor sums, and the Kummer
// congruence machinery built on them.
//
// Convention: B_n is the n-th coefficient of t e^t/(e^t - 1) = sum B_n t^n/n!,
// so B_1 = +1/2.  Even-index values agree with the other common convention.
#pragma once

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "unitaria/primes.hpp"
#include "unitaria/rational.hpp"

namespace unitaria {

namespace detail {

// Shared cache: bernoulli() is called with the same small indices all over
// the toolkit.  Guarded so callers stay free to use it concurrently.
inline std::vector<Rational>& bernoulli_cache() {
    static std::vector<Rational> cache{Rational(1)};
    return cache;
}
inline std::mutex& bernoulli_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// B_n via the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 (m >= 1) applied to
/// the convention with B_1 = -1/2, then flipped at n = 1.
inline Rational bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(detail::bernoulli_mutex());
    auto& cache = detail::bernoulli_cache();
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        // B_m = -1/(m+1) * sum_{j=0}^{m-1} C(m+1, j) B_j   (minus convention)
        Rational sum(0);
        Integer binom(1);  // C(m+1, 0)
        for (unsigned j = 0; j < m; ++j) {
            Rational bj = cache[j];
            if (j == 1) bj = -bj;  // cache stores the plus convention
            sum += Rational(binom) * bj;
            binom = binom * Integer(m + 1 - j) / Integer(j + 1);
        }
        Rational bm = -sum / Rational(Integer(m + 1));
        if (m == 1) bm = -bm;
        cache.push_back(bm);
    }
    return cache[n];
}

/// zeta(2k) as (r, e) with zeta(2k) = r * pi^e, e = 2k.
inline std::pair<Rational, unsigned> zeta_even(unsigned k) {
    if (k == 0) throw std::domain_error("zeta_even: k must be positive");
    unsigned n = 2 * k;
    Rational fact(1);
    for (unsigned i = 2; i <= n; ++i) fact *= Rational(Integer(i));
    Rational r = Rational(pow_int(Integer(2), n)) * bernoulli(n) / (Rational(2) * fact);
    if (k % 2 == 0) r = -r;  // (-1)^{k+1}
    return {r, n};
}

/// zeta(1 - 2k) = -B_{2k} / 2k, exact.
inline Rational zeta_neg(unsigned k) {
    if (k == 0) throw std::domain_error("zeta_neg: k must be positive");
    return -bernoulli(2 * k) / Rational(Integer(2 * k));
}

/// sigma_e(n) = sum of d^e over positive divisors d of n.
inline Integer divisor_sum(std::uint64_t n, unsigned e) {
    if (n == 0) throw std::domain_error("divisor_sum: n must be positive");
    Integer total(0);
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        total += pow_int(Integer(d), e);
        std::uint64_t q = n / d;
        if (q != d) total += pow_int(Integer(q), e);
    }
    return total;
}

struct KummerPreconditionError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Whether (1 - p^{m-1}) B_m/m == (1 - p^{n-1}) B_n/n (mod p) as p-integral
/// rationals.  Requires m == n (mod p-1) with m, n even positive and not
/// divisible by p-1; violations raise KummerPreconditionError, which is
/// distinct from a plain `false`.
inline bool kummer_congruent(std::uint64_t p, unsigned m, unsigned n) {
    if (p < 3 || !is_prime(p)) throw KummerPreconditionError("kummer_congruent: p must be an odd prime");
    if (m == 0 || n == 0 || m % 2 || n % 2)
        throw KummerPreconditionError("kummer_congruent: m, n must be even positive");
    if ((m % (p - 1)) != (n % (p - 1)))
        throw KummerPreconditionError("kummer_congruent: m and n must agree mod p-1");
    if (m % (p - 1) == 0)
        throw KummerPreconditionError("kummer_congruent: m, n must not be divisible by p-1");

    auto side = [&](unsigned e) {
        Rational pe = Rational(pow_int(Integer(p), e - 1));
        return (Rational(1) - pe) * bernoulli(e) / Rational(Integer(e));
    };
    Rational diff = side(m) - side(n);
    // Clear the part of the denominator prime to p; p-integrality means no
    // factor p survives below.
    Integer den = diff.den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
        throw KummerPreconditionError("kummer_congruent: side not p-integral");
    return mpz_divisible_ui_p(diff.num().get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

/// Even indices 2 <= 2j <= p-3 with p dividing numerator(B_{2j}).  Empty
/// exactly when p is regular in Kummer's sense.
inline std::vector<unsigned> irregular_prime(std::uint64_t p) {
    if (p < 5 || !is_prime(p)) throw std::domain_error("irregular_prime: requires a prime p >= 5");
    std::vector<unsigned> out;
    for (unsigned twoj = 2; twoj + 3 <= p; twoj += 2) {
        Integer num = bernoulli(twoj).num();
        if (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) out.push_back(twoj);
    }
    return out;
}

}  // namespace unitaria
