// Small prime utilities shared by the arithmetic modules.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "unitaria/rational.hpp"

namespace unitaria {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (std::uint64_t m = p * p; m <= bound; m += p) composite[m] = true;
    }
    return out;
}

// (prime, exponent) pairs, ascending.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: zero");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1u);
    return out;
}

inline unsigned ord_p(std::uint64_t n, std::uint64_t p) {
    if (n == 0) throw std::domain_error("ord_p: zero");
    unsigned e = 0;
    while (n % p == 0) { n /= p; ++e; }
    return e;
}

inline bool is_squarefree(std::uint64_t n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

// Kronecker symbol (a|b).
inline int kronecker(const Integer& a, const Integer& b) {
    return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace unitaria
