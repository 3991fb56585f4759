// Hecke operators on classical q-expansions, Satake parameters and local
// Euler factors, partial L-functions, the doubling normalization d_{n,v},
// Rankin--Selberg series, Petersson inner products, and algebraicity-ratio
// detection.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "unitaria/bernoulli.hpp"
#include "unitaria/bigfloat.hpp"
#include "unitaria/eisenstein.hpp"
#include "unitaria/hermitian_space.hpp"
#include "unitaria/primes.hpp"
#include "unitaria/qexp.hpp"
#include "unitaria/rational.hpp"

namespace unitaria {

/// Classical q-expansion a_0 + a_1 q + ... + a_B q^B with exact rational
/// coefficients.
struct QExp1 {
    long weight;
    std::uint64_t level;
    std::vector<Rational> coeffs;  // index n = 0..bound

    std::size_t bound() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    const Rational& a(std::size_t n) const {
        static const Rational zero(0);
        return n < coeffs.size() ? coeffs[n] : zero;
    }
    bool is_cuspidal() const { return coeffs.empty() || coeffs[0].is_zero(); }

    /// f~(z) = conj(f(-conj z)): coefficient conjugation, the identity on
    /// rational coefficients.
    QExp1 tilde() const { return *this; }

    BigComplex evaluate(const BigComplex& z, long prec) const {
        BigComplex q = (BigComplex(BigFloat(0, prec), BigFloat(2, prec) * BigFloat::pi(prec)) * z).exp();
        BigComplex acc = BigComplex::zero(prec);
        BigComplex qn = BigComplex::one(prec);
        // |q|^n below 2^-(prec+16) contributes nothing at working precision
        double log_q = -2 * 3.141592653589793 * z.im().to_double();
        std::size_t eff = coeffs.size();
        if (log_q < 0) {
            double nmax = (static_cast<double>(prec) + 64) * 0.6931471805599453 / (-log_q);
            eff = std::min<std::size_t>(eff, static_cast<std::size_t>(nmax) + 2);
        }
        for (std::size_t n = 0; n < eff; ++n) {
            if (!coeffs[n].is_zero()) acc += BigComplex::from_rational(coeffs[n], prec) * qn;
            qn *= q;
        }
        return acc;
    }
};

inline QExp1 qexp_add(const QExp1& f, const QExp1& g) {
    if (f.weight != g.weight || f.level != g.level) throw std::invalid_argument("qexp_add: mixed weight/level");
    QExp1 out{f.weight, f.level, {}};
    out.coeffs.resize(std::min(f.coeffs.size(), g.coeffs.size()), Rational(0));
    for (std::size_t n = 0; n < out.coeffs.size(); ++n) out.coeffs[n] = f.a(n) + g.a(n);
    return out;
}

inline QExp1 qexp_scale(const QExp1& f, const Rational& c) {
    QExp1 out = f;
    for (auto& a : out.coeffs) a *= c;
    return out;
}

/// Truncated product; weights add, output bound is the smaller input bound.
inline QExp1 qexp_multiply(const QExp1& f, const QExp1& g) {
    if (f.level != g.level) throw std::invalid_argument("qexp_multiply: mixed levels");
    std::size_t bound = std::min(f.bound(), g.bound());
    QExp1 out{f.weight + g.weight, f.level, std::vector<Rational>(bound + 1, Rational(0))};
    for (std::size_t i = 0; i <= bound; ++i) {
        if (f.a(i).is_zero()) continue;
        for (std::size_t j = 0; i + j <= bound; ++j) {
            if (g.a(j).is_zero()) continue;
            out.coeffs[i + j] += f.a(i) * g.a(j);
        }
    }
    return out;
}

/// Discriminant cusp form q prod (1-q^n)^24 via Jacobi's sparse cube
/// prod (1-q^n)^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}, raised to the eighth
/// power by repeated sparse multiplication.
inline QExp1 delta_qexp(std::size_t bound) {
    std::vector<std::pair<std::size_t, Integer>> cube;
    for (std::size_t k = 0;; ++k) {
        std::size_t e = k * (k + 1) / 2;
        if (e > bound) break;
        Integer c(static_cast<long>(2 * k + 1));
        if (k % 2) c = -c;
        cube.emplace_back(e, c);
    }
    std::vector<Integer> acc(bound + 1, Integer(0));
    acc[0] = 1;
    for (int rep = 0; rep < 8; ++rep) {
        std::vector<Integer> next(bound + 1, Integer(0));
        for (std::size_t i = 0; i <= bound; ++i) {
            if (acc[i] == 0) continue;
            for (const auto& [e, c] : cube) {
                if (i + e > bound) break;
                next[i + e] += acc[i] * c;
            }
        }
        acc.swap(next);
    }
    QExp1 out{12, 1, std::vector<Rational>(bound + 1, Rational(0))};
    for (std::size_t n = 1; n <= bound; ++n) out.coeffs[n] = Rational(acc[n - 1]);
    return out;
}

/// Normalized Eisenstein series (constant term 1) as a QExp1.
inline QExp1 eisenstein_qexp(unsigned weight, std::size_t bound) {
    return QExp1{static_cast<long>(weight), 1,
                 eisenstein_normalized_coeffs(weight, static_cast<unsigned>(bound))};
}

/// T_p at level one: (T_p f)_n = a_{np} + p^{k-1} a_{n/p}.  The input must
/// hold coefficients up to p * out_bound.
inline QExp1 hecke_tp(const QExp1& f, std::uint64_t p, std::size_t out_bound) {
    if (!is_prime(p)) throw std::domain_error("hecke_tp: p must be prime");
    if (f.level != 1) throw std::domain_error("hecke_tp: level one only");
    if (f.bound() < p * out_bound) throw std::domain_error("hecke_tp: insufficient truncation");
    Rational pk = Rational(pow_int(Integer(p), static_cast<unsigned>(f.weight - 1)));
    QExp1 out{f.weight, 1, std::vector<Rational>(out_bound + 1, Rational(0))};
    for (std::size_t n = 0; n <= out_bound; ++n) {
        Rational v = f.a(n * p);
        if (n % p == 0) v += pk * f.a(n / p);
        out.coeffs[n] = v;
    }
    return out;
}

// --- Satake data and Euler factors --------------------------------------------

/// Semisimple parameter data at a finite place: the elementary symmetric
/// functions of the parameters, kept exact, plus numeric parameter values.
struct SatakeData {
    std::uint64_t q;                       // residue field size
    std::size_t n;                         // rank
    std::vector<Rational> esym;            // e_1..e_n of the parameters
    std::vector<BigComplex> params;        // numeric parameter values

    SatakeData(std::uint64_t q_, std::size_t n_, std::vector<Rational> esym_,
               std::vector<BigComplex> params_)
        : q(q_), n(n_), esym(std::move(esym_)), params(std::move(params_)) {
        if (esym.size() != n) throw std::invalid_argument("SatakeData: need n elementary symmetric values");
        if (!params.empty() && params.size() != n)
            throw std::invalid_argument("SatakeData: parameter list must have length n");
        if (!params.empty())
            for (const auto& p : params)
                if (p.is_zero()) throw std::invalid_argument("SatakeData: parameters must be nonzero");
        if (esym.back().is_zero()) throw std::invalid_argument("SatakeData: top symmetric function must be nonzero");
    }
};

/// GL_2 data from a Hecke eigenvalue: roots of X^2 - a_p X + p^{k-1}.
inline SatakeData satake_gl2(const Rational& a_p, std::uint64_t p, unsigned k,
                             long prec = kDefaultPrecisionBits) {
    Rational det = Rational(pow_int(Integer(p), k - 1));
    Rational disc = a_p * a_p - Rational(4) * det;
    BigFloat half_tr = BigFloat::from_rational(a_p, prec) / 2;
    std::vector<BigComplex> params;
    if (disc.sign() >= 0) {
        BigFloat root = BigFloat::from_rational(disc, prec).sqrt() / 2;
        params.emplace_back(half_tr + root, BigFloat(0, prec));
        params.emplace_back(half_tr - root, BigFloat(0, prec));
    } else {
        BigFloat root = BigFloat::from_rational(-disc, prec).sqrt() / 2;
        params.emplace_back(half_tr, root);
        params.emplace_back(half_tr, -root);
    }
    return SatakeData(p, 2, {a_p, det}, std::move(params));
}

/// Rank-n GL data accepted verbatim at a split place of the field.
inline SatakeData satake_at_split(const SplitPlaceMarker& marker, std::vector<Rational> esym,
                                  std::vector<BigComplex> params = {}) {
    return SatakeData(marker.p, marker.n, std::move(esym), std::move(params));
}

/// Local factor det(1 - sigma_v X) with X = q_v^{-s}: reciprocal polynomial
/// with constant coefficient 1 and degree <= n.
struct EulerFactor {
    std::uint64_t q;
    std::vector<Rational> coeffs;  // coeffs[j] multiplies X^j, coeffs[0] = 1

    std::size_t degree() const { return coeffs.size() - 1; }

    BigComplex value_inverse_at(const BigComplex& x) const {  // the polynomial itself
        long prec = x.prec();
        BigComplex acc = BigComplex::zero(prec);
        BigComplex xp = BigComplex::one(prec);
        for (const auto& c : coeffs) {
            if (!c.is_zero()) acc += BigComplex::from_rational(c, prec) * xp;
            xp *= x;
        }
        return acc;
    }

    BigComplex value_at(const BigComplex& x) const { return value_inverse_at(x).inverse(); }
};

inline EulerFactor euler_factor(const SatakeData& data) {
    std::vector<Rational> coeffs{Rational(1)};
    Rational sign(-1);
    for (std::size_t j = 0; j < data.n; ++j) {
        coeffs.push_back(sign * data.esym[j]);
        sign = -sign;
    }
    return EulerFactor{data.q, std::move(coeffs)};
}

inline BigComplex q_pow_minus_s(std::uint64_t q, const BigComplex& s, long prec) {
    BigFloat logq = BigFloat(static_cast<long>(q), prec).log();
    return BigComplex(-s.re() * logq, -s.im() * logq).exp();
}

struct PartialLValue {
    BigComplex value;
    BigFloat last_factor_gap;  // |1 - L_p(s)| at the largest prime used: convergence diagnostic
    std::uint64_t largest_prime = 0;
};

/// prod_{p <= cutoff, p not in S} L_p(s).  Every included place must have a
/// factor; the caller asserts s lies where the truncated product is stable.
inline PartialLValue partial_l(const std::map<std::uint64_t, EulerFactor>& factors,
                               const std::set<std::uint64_t>& excluded, const BigComplex& s,
                               std::uint64_t cutoff, long prec = kDefaultPrecisionBits) {
    BigComplex acc = BigComplex::one(prec);
    BigFloat gap(0, prec);
    std::uint64_t largest = 0;
    for (std::uint64_t p : primes_up_to(cutoff)) {
        if (excluded.count(p)) continue;
        auto it = factors.find(p);
        if (it == factors.end())
            throw std::invalid_argument("partial_l: missing factor at p=" + std::to_string(p));
        BigComplex lp = it->second.value_at(q_pow_minus_s(p, s, prec));
        acc *= lp;
        gap = (BigComplex::one(prec) - lp).abs();
        largest = p;
    }
    return {acc, gap, largest};
}

/// Degree-one all-ones factors (the zeta function's local data) at every
/// prime up to the cutoff.
inline std::map<std::uint64_t, EulerFactor> all_ones_factors(std::uint64_t cutoff) {
    std::map<std::uint64_t, EulerFactor> out;
    for (std::uint64_t p : primes_up_to(cutoff))
        out.emplace(p, EulerFactor{p, {Rational(1), Rational(-1)}});
    return out;
}

/// Dirichlet coefficients a_1..a_bound of prod_p L_p reconstructed from the
/// factors by multiplicativity: per prime, invert the reciprocal polynomial
/// as a power series; assemble over the factorization.
inline std::vector<Rational> dirichlet_from_euler_factors(
    const std::map<std::uint64_t, EulerFactor>& factors, std::size_t bound) {
    std::vector<Rational> out(bound + 1, Rational(0));
    if (bound == 0) return out;
    out[1] = Rational(1);
    // c_{p, e}: coefficient of X^e in 1/poly_p(X)
    std::map<std::uint64_t, std::vector<Rational>> series;
    for (std::size_t m = 2; m <= bound; ++m) {
        Rational val(1);
        for (auto& [p, e] : factorize(m)) {
            auto it = factors.find(p);
            if (it == factors.end())
                throw std::invalid_argument("dirichlet_from_euler_factors: missing factor at p=" +
                                            std::to_string(p));
            auto& ser = series[p];
            if (ser.empty()) ser.push_back(Rational(1));
            while (ser.size() <= e) {
                // next coefficient of the power-series inverse
                std::size_t idx = ser.size();
                Rational acc(0);
                const auto& poly = it->second.coeffs;
                for (std::size_t j = 1; j < poly.size() && j <= idx; ++j) acc += poly[j] * ser[idx - j];
                ser.push_back(-acc);
            }
            val *= ser[e];
        }
        out[m] = val;
    }
    return out;
}

// --- doubling normalization ----------------------------------------------------

/// One abelian local L-factor L_v(arg, psi) with psi(uniformizer) given as an
/// exact rotation (e^{2 pi i t}); a ramified character contributes factor 1.
struct DnvFactor {
    Rational arg;                       // the s-argument 2s + n - r
    std::optional<Rational> char_rot;   // rotation of (chi eta^r)(uniformizer); nullopt = ramified
};

struct DnvProduct {
    std::uint64_t q;
    std::vector<DnvFactor> factors;

    BigComplex evaluate(long prec) const {
        BigComplex acc = BigComplex::one(prec);
        for (const auto& f : factors) {
            if (!f.char_rot) continue;  // ramified: factor 1
            BigComplex x = q_pow_minus_s(q, BigComplex::from_rational(f.arg, prec), prec);
            BigComplex num = BigComplex::one(prec) - unit_circle_point(*f.char_rot, prec) * x;
            acc *= num.inverse();
        }
        return acc;
    }

    /// The bookkeeping quotient Z_v = L_v(s + 1/2, pi, chi) / d_{n,v}(s).
    BigComplex z_ratio(const BigComplex& l_half_shift, long prec) const {
        return l_half_shift / evaluate(prec);
    }
};

/// d_{n,v}(s) = prod_{r=0}^{n-1} L_v(2s + n - r, chi|_{K+_v} eta_v^r), with
/// chi and eta given by their exact values on the uniformizer.
inline DnvProduct doubling_dnv(std::size_t n, const Rational& s, std::optional<Rational> chi_rot,
                               std::optional<Rational> eta_rot, std::uint64_t q_v) {
    if (n < 1) throw std::domain_error("doubling_dnv: n must be at least 1");
    DnvProduct out{q_v, {}};
    for (std::size_t r = 0; r < n; ++r) {
        Rational arg = Rational(2) * s + Rational(Integer(n)) - Rational(Integer(r));
        std::optional<Rational> rot;
        if (chi_rot && eta_rot) {
            Rational t = *chi_rot + *eta_rot * Rational(Integer(r));
            rot = t - Rational(t.floor());
        }
        out.factors.push_back({arg, rot});
    }
    return out;
}

// --- Rankin--Selberg series -----------------------------------------------------

struct RankinSelbergValue {
    BigComplex value;
    BigFloat tail_bound;
};

/// D(s, f, g) = sum a_n b_n n^{-s} truncated at the cutoff.  The caller
/// supplies the crude bound |a_n b_n| <= C n^theta; the tail estimate is the
/// integral bound C cutoff^{theta+1-s}/(s-theta-1), which requires
/// Re(s) > theta + 1.
inline RankinSelbergValue rankin_selberg_d(const QExp1& f, const QExp1& g, const BigComplex& s,
                                           std::size_t cutoff, double tail_c, double tail_theta,
                                           long prec = kDefaultPrecisionBits) {
    if (cutoff > f.bound() || cutoff > g.bound())
        throw std::invalid_argument("rankin_selberg_d: cutoff beyond stored coefficients");
    BigFloat theta(tail_theta, prec);
    if (!(s.re() > theta + BigFloat(1, prec)))
        throw std::domain_error("rankin_selberg_d: Re(s) too small for the requested tail bound");
    BigComplex acc = BigComplex::zero(prec);
    for (std::size_t n = 1; n <= cutoff; ++n) {
        Rational ab = f.a(n) * g.a(n);
        if (ab.is_zero()) continue;
        BigFloat logn = BigFloat(static_cast<long>(n), prec).log();
        acc += BigComplex::from_rational(ab, prec) * BigComplex(-s.re() * logn, -s.im() * logn).exp();
    }
    BigFloat expo = theta + BigFloat(1, prec) - s.re();
    BigFloat tail = BigFloat(tail_c, prec) * BigFloat(static_cast<long>(cutoff), prec).pow(expo) /
                    (s.re() - theta - BigFloat(1, prec));
    return {acc, tail};
}

// --- Petersson inner product -----------------------------------------------------

namespace detail {

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
inline const double kGlNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                   -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                   0.7966664774136267,  0.9602898564975363};
inline const double kGlWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                     0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};

// int_1^infty e^{-c y} y^m dy = (m!/c^{m+1}) e^{-c} sum_{j<=m} c^j/j!
inline BigFloat exp_poly_tail(const BigFloat& c, unsigned m, long prec) {
    BigFloat mfact(1, prec);
    for (unsigned i = 2; i <= m; ++i) mfact *= BigFloat(static_cast<long>(i), prec);
    BigFloat sum(0, prec), cj(1, prec), jfact(1, prec);
    for (unsigned j = 0; j <= m; ++j) {
        sum += cj / jfact;
        cj *= c;
        jfact *= BigFloat(static_cast<long>(j + 1), prec);
    }
    return mfact / c.pow_int(static_cast<long>(m + 1)) * (-c).exp() * sum;
}

}  // namespace detail

struct PeterssonValue {
    BigComplex value;
    BigComplex coarse;        // same integral on the unrefined grid
    BigFloat refinement_gap;  // |value - coarse| / |value|
};

/// <f1, f2> = int_F f1 conj(f2) y^k dx dy / y^2 over the standard level-one
/// fundamental domain.  The rectangle y >= 1 unfolds exactly into
/// sum a_n conj(b_n) int_1^inf e^{-4 pi n y} y^{k-2} dy; the remaining curved
/// piece {|x| <= 1/2, |z| >= 1, y < 1} is integrated by composite
/// Gauss-Legendre panels, once at `grid` and once at 2*grid for the
/// refinement gap.  At least one input must be cuspidal.
inline PeterssonValue petersson(const QExp1& f1, const QExp1& f2, unsigned grid = 8,
                                long prec = kDefaultPrecisionBits) {
    if (f1.level != 1 || f2.level != 1) throw std::domain_error("petersson: level one only");
    if (f1.weight != f2.weight) throw std::invalid_argument("petersson: mixed weights");
    if (!f1.is_cuspidal() && !f2.is_cuspidal())
        throw std::domain_error("petersson: divergent (neither input cuspidal)");
    if (f1.weight < 4) throw std::domain_error("petersson: weight at least 4 expected");
    unsigned k = static_cast<unsigned>(f1.weight);

    // rectangle part, exact in the truncation
    BigComplex rect = BigComplex::zero(prec);
    std::size_t nmax = std::min(f1.bound(), f2.bound());
    BigFloat four_pi = BigFloat(4, prec) * BigFloat::pi(prec);
    for (std::size_t n = 1; n <= nmax; ++n) {
        Rational ab = f1.a(n) * f2.a(n);  // real coefficients: conj is identity
        if (ab.is_zero()) continue;
        BigFloat c = four_pi * BigFloat(static_cast<long>(n), prec);
        if (c.to_double() > 0.693 * (prec + 64)) break;  // e^{-c} below working precision
        rect += BigComplex(BigFloat::from_rational(ab, prec) * detail::exp_poly_tail(c, k - 2, prec),
                           BigFloat(0, prec));
    }

    auto integrand = [&](const BigFloat& x, const BigFloat& y) {
        BigComplex z(x, y);
        BigComplex v = f1.evaluate(z, prec) * f2.evaluate(z, prec).conj();
        return v * BigComplex(y.pow_int(static_cast<long>(k) - 2), BigFloat(0, prec));
    };

    auto curved = [&](unsigned g) {
        BigComplex acc = BigComplex::zero(prec);
        for (unsigned px = 0; px < g; ++px) {
            double x0 = -0.5 + static_cast<double>(px) / g;
            double x1 = x0 + 1.0 / g;
            for (int ix = 0; ix < 8; ++ix) {
                double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * detail::kGlNodes[ix];
                double wx = 0.5 * (x1 - x0) * detail::kGlWeights[ix];
                double ylo = std::sqrt(std::max(0.0, 1.0 - x * x));
                if (ylo >= 1.0) continue;
                for (unsigned py = 0; py < g; ++py) {
                    double y0 = ylo + (1.0 - ylo) * py / g;
                    double y1 = ylo + (1.0 - ylo) * (py + 1) / g;
                    for (int iy = 0; iy < 8; ++iy) {
                        double y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * detail::kGlNodes[iy];
                        double w = wx * 0.5 * (y1 - y0) * detail::kGlWeights[iy];
                        acc += integrand(BigFloat(x, prec), BigFloat(y, prec)) *
                               BigComplex(BigFloat(w, prec), BigFloat(0, prec));
                    }
                }
            }
        }
        return acc;
    };

    BigComplex coarse = rect + curved(grid);
    BigComplex fine = rect + curved(2 * grid);
    BigFloat gap = (fine - coarse).abs();
    BigFloat scale = fine.abs();
    return {fine, coarse, scale.is_zero() ? gap : gap / scale};
}

// --- algebraicity ratios ----------------------------------------------------------

struct AlgebraicityReport {
    BigComplex ratio;                 // D(m, f, g) / (pi^k <f, f>)
    std::optional<Rational> guess;    // stable rational reconstruction, if any
    BigFloat d_tail;
    BigFloat petersson_gap;
};

/// D(m, f, g) / (pi^k <f~, f>) inside Shimura's window
/// (k + l - 2)/2 < m < k, with rational reconstruction attempted at two
/// precisions; an unstable reconstruction is reported as no guess.
inline AlgebraicityReport algebraicity_ratio(const QExp1& f, const QExp1& g, long m,
                                             std::size_t cutoff = 4000, unsigned grid = 8,
                                             long prec = 128) {
    if (!f.is_cuspidal()) throw std::domain_error("algebraicity_ratio: f must be cuspidal");
    long k = f.weight, l = g.weight;
    if (!(2 * m > k + l - 2 && m < k))
        throw std::domain_error("algebraicity_ratio: m outside the window ((k+l-2)/2, k)");
    double theta = 0.5 * k + 0.5 * l;  // crude coefficient growth exponent
    double tail_c = 500.0;
    auto d = rankin_selberg_d(f, g, BigComplex(static_cast<double>(m), 0.0, prec), cutoff, tail_c,
                              theta, prec);
    auto pet = petersson(f.tilde(), f, grid, prec);
    BigComplex denom = pet.value * BigFloat::pi(prec).pow_int(k);
    BigComplex ratio = d.value / denom;
    std::optional<Rational> guess = reconstruct_stable(ratio.re(), Integer(1000000));
    if (guess && ratio.im().abs() > ratio.abs() * BigFloat(1e-20, prec)) guess.reset();
    return {ratio, guess, d.tail_bound, pet.refinement_gap};
}

}  // namespace unitaria
