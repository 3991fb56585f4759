// Classical Eisenstein series: exact q-expansions, direct lattice sums with
// tail bounds, and the assembly of Fourier coefficients from local factors.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "unitaria/bernoulli.hpp"
#include "unitaria/bigfloat.hpp"
#include "unitaria/dirichlet.hpp"
#include "unitaria/primes.hpp"
#include "unitaria/qexp.hpp"

namespace unitaria {

struct EisensteinSpec {
    unsigned weight;          // lambda
    std::uint64_t level;      // N
    DirichletCharacter chi;   // character mod N
    BigComplex s;             // spectral parameter (numeric mode)
};

/// G_{2k} = zeta(1-2k) + 2 sum_n sigma_{2k-1}(n) q^n as an n = 1 expansion on
/// the lattice Z.  Weight 2 is rejected: not modular of level 1.
inline FourierExpansion<Rational> g2k_qexp(unsigned k, unsigned bound) {
    if (2 * k < 4) throw std::domain_error("g2k_qexp: weight must be at least 4");
    std::vector<Rational> coeffs(bound + 1, Rational(0));
    coeffs[0] = zeta_neg(k);
    for (unsigned n = 1; n <= bound; ++n) coeffs[n] = Rational(2) * Rational(divisor_sum(n, 2 * k - 1));
    return from_classical(1, coeffs);
}

/// Constant-term-one normalization 1 - (2 lambda / B_lambda) sum sigma q^n,
/// level 1; equals G_lambda / zeta(1-lambda).
inline std::vector<Rational> eisenstein_normalized_coeffs(unsigned lambda, unsigned bound) {
    if (lambda < 4 || lambda % 2) throw std::domain_error("eisenstein_normalized_coeffs: even weight >= 4");
    std::vector<Rational> coeffs(bound + 1, Rational(0));
    coeffs[0] = Rational(1);
    Rational factor = -Rational(Integer(2 * lambda)) / bernoulli(lambda);
    for (unsigned n = 1; n <= bound; ++n) coeffs[n] = factor * Rational(divisor_sum(n, lambda - 1));
    return coeffs;
}

struct LatticeSumValue {
    BigComplex value;
    BigFloat tail_bound;
    BigFloat abs_mass;  // sum of |term|: the scale against which cancellation happens
};

namespace detail {

// min over the boundary of the unit sup-ball of |u zeta + v|: the sharp
// constant in |m zeta + n| >= c max(|m|, |n|).
inline BigFloat lattice_gap_constant(const BigComplex& zeta, long prec) {
    BigFloat x = zeta.re(), y = zeta.im();
    auto clamp1 = [&](const BigFloat& t) {
        BigFloat one(1, prec);
        if (t > one) return one;
        if (t < -one) return -one;
        return t;
    };
    // u = +-1, v in [-1, 1]: minimized at v = -clamp(+-x)
    BigFloat dx = x - clamp1(x);
    BigFloat c1 = (dx * dx + y * y).sqrt();
    // v = +-1, u in [-1, 1]: |u zeta +- 1|^2 = u^2 |zeta|^2 +- 2 u x + 1
    BigFloat n2 = zeta.norm();
    BigFloat ustar = clamp1(x / n2);
    auto eval = [&](const BigFloat& u, int sgn) {
        return (u * u * n2 + BigFloat(2 * sgn, prec) * u * x + BigFloat(1, prec)).sqrt();
    };
    BigFloat c2 = eval(-ustar, +1);
    BigFloat c3 = eval(ustar, -1);
    BigFloat c = c1;
    if (c2 < c) c = c2;
    if (c3 < c) c = c3;
    return c;
}

}  // namespace detail

/// Direct double lattice sum sum_{(m,n) != 0} chi(n) (mNz+n)^{-lambda}
/// |mNz+n|^{-2s} over max(|m|,|n|) <= cutoff, inside the region of absolute
/// convergence Re(2s) > 2 - lambda.  No analytic continuation: outside the
/// region this throws.
inline LatticeSumValue eisenstein_numeric(const EisensteinSpec& spec, const BigComplex& z,
                                          unsigned long cutoff) {
    long prec = z.prec();
    if (!(z.im() > BigFloat(0, prec))) throw std::domain_error("eisenstein_numeric: z must satisfy Im z > 0");
    BigFloat two_sigma = spec.s.re() * 2;
    BigFloat p = two_sigma + BigFloat(static_cast<long>(spec.weight), prec);
    if (!(p > BigFloat(2, prec)))
        throw std::domain_error("eisenstein_numeric: outside the convergence region Re(2s) > 2 - lambda");

    BigComplex zeta = z * BigFloat(static_cast<long>(spec.level), prec);
    BigComplex sum = BigComplex::zero(prec);
    // Integer s admits a pure-power fast path for |w|^{-2s}.
    std::optional<long> s_int;
    if (spec.s.im().is_zero()) {
        BigFloat fl(0, prec);
        mpfr_round(fl.raw(), spec.s.re().raw());
        if (fl == spec.s.re()) s_int = static_cast<long>(mpfr_get_si(fl.raw(), MPFR_RNDN));
    }
    BigFloat mass(0, prec);
    long c = static_cast<long>(cutoff);
    for (long m = -c; m <= c; ++m) {
        BigComplex mz = zeta * BigFloat(m, prec);
        for (long n = -c; n <= c; ++n) {
            if (m == 0 && n == 0) continue;
            auto rot = spec.chi.rotation(n);
            if (!rot) continue;
            BigComplex w = mz + BigComplex(BigFloat(n, prec), BigFloat(0, prec));
            BigComplex term = w.pow_int(static_cast<long>(spec.weight)).inverse();
            if (!spec.s.is_zero()) {
                if (s_int) {
                    term *= BigComplex(w.norm().pow_int(-*s_int), BigFloat(0, prec));
                } else {
                    // |w|^{-2s} = exp(-s log |w|^2)
                    BigFloat logn2 = w.norm().log();
                    term *= (BigComplex(-spec.s.re() * logn2, -spec.s.im() * logn2)).exp();
                }
            }
            if (!rot->is_zero()) term *= unit_circle_point(*rot, prec);
            sum += term;
            mass += term.abs();
        }
    }
    BigFloat gap = detail::lattice_gap_constant(zeta, prec);
    BigFloat tail = BigFloat(8, prec) * gap.pow(-p) *
                    BigFloat(static_cast<long>(cutoff), prec).pow(BigFloat(2, prec) - p) / (p - 2);
    return {sum, tail, mass};
}

// --- local coefficient assembly -----------------------------------------------

/// A place of Q: the archimedean place or a finite prime.
struct Place {
    bool infinite;
    std::uint64_t p;

    static Place archimedean() { return {true, 0}; }
    static Place prime(std::uint64_t p) { return {false, p}; }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.infinite != b.infinite) return a.infinite;
        return a.p < b.p;
    }
};

/// One local factor of a Fourier coefficient: index -> value.
struct LocalCoeffProvider {
    Place place;
    std::function<Rational(std::uint64_t)> rule;
};

/// The weight-2k level-1 choices: n^{2k-1} at infinity and the truncated
/// geometric sum over p-powers at finite places.
inline Rational classical_local_coeff(const Place& place, std::uint64_t n, unsigned k) {
    if (n == 0) throw std::domain_error("classical_local_coeff: index must be positive");
    unsigned e = 2 * k - 1;
    if (place.infinite) return Rational(pow_int(Integer(n), e));
    Rational sum(0);
    Rational pe = Rational(Integer(1), pow_int(Integer(place.p), e));
    Rational term(1);
    for (unsigned j = 0; j <= ord_p(n, place.p); ++j) {
        sum += term;
        term *= pe;
    }
    return sum;
}

inline std::vector<LocalCoeffProvider> classical_providers(unsigned k, std::uint64_t prime_cutoff) {
    std::vector<LocalCoeffProvider> out;
    out.push_back({Place::archimedean(), [k](std::uint64_t n) {
                       return classical_local_coeff(Place::archimedean(), n, k);
                   }});
    for (std::uint64_t p : primes_up_to(prime_cutoff))
        out.push_back({Place::prime(p), [k, p](std::uint64_t n) {
                           return classical_local_coeff(Place::prime(p), n, k);
                       }});
    return out;
}

/// Product over the archimedean place and all primes up to the cutoff of the
/// locally provided values.  With the classical providers this reassembles
/// sigma_{2k-1}(n).
inline Rational assemble_global_coeff(const std::vector<LocalCoeffProvider>& providers, std::uint64_t n,
                                      std::uint64_t prime_cutoff) {
    if (n == 0) throw std::domain_error("assemble_global_coeff: index must be positive");
    for (auto& [p, e] : factorize(n))
        if (p > prime_cutoff)
            throw std::domain_error("assemble_global_coeff: index has a prime factor beyond the cutoff");
    std::map<Place, const LocalCoeffProvider*> by_place;
    for (const auto& prov : providers) by_place[prov.place] = &prov;
    auto inf = by_place.find(Place::archimedean());
    if (inf == by_place.end()) throw std::invalid_argument("assemble_global_coeff: missing archimedean provider");
    Rational acc = inf->second->rule(n);
    for (std::uint64_t p : primes_up_to(prime_cutoff)) {
        auto it = by_place.find(Place::prime(p));
        if (it == by_place.end())
            throw std::invalid_argument("assemble_global_coeff: missing provider at p=" + std::to_string(p));
        acc *= it->second->rule(n);
    }
    return acc;
}

}  // namespace unitaria
