// Dirichlet characters with exact root-of-unity values, and numeric
// Dirichlet L-series evaluation with a tail bound.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "unitaria/bigfloat.hpp"
#include "unitaria/rational.hpp"

namespace unitaria {

/// chi mod N with chi(r) = e^{2 pi i t_r} stored as the exact rotation t_r,
/// and chi(r) = 0 when gcd(r, N) > 1.  Multiplicativity is validated at
/// construction.
class DirichletCharacter {
  public:
    static DirichletCharacter trivial(std::uint64_t modulus) {
        std::vector<std::optional<Rational>> vals(modulus == 0 ? 1 : modulus);
        for (std::uint64_t r = 0; r < vals.size(); ++r)
            if (gcd(Integer(r), Integer(modulus)) == 1) vals[r] = Rational(0);
        if (modulus == 1) vals[0] = Rational(0);  // the empty modulus: constant 1
        return DirichletCharacter(modulus, std::move(vals));
    }

    /// values[r] = rotation of chi(r), or nullopt for chi(r) = 0.
    DirichletCharacter(std::uint64_t modulus, std::vector<std::optional<Rational>> values)
        : modulus_(modulus), values_(std::move(values)) {
        if (modulus_ == 0 || values_.size() != std::max<std::uint64_t>(modulus_, 1))
            throw std::invalid_argument("DirichletCharacter: bad value table");
        normalize_rotations();
        validate();
    }

    std::uint64_t modulus() const { return modulus_; }

    bool is_zero_at(long n) const { return !rotation(n).has_value(); }

    /// Exact rotation t with chi(n) = e^{2 pi i t}, or nullopt when chi(n)=0.
    std::optional<Rational> rotation(long n) const {
        long r = n % static_cast<long>(modulus_);
        if (r < 0) r += static_cast<long>(modulus_);
        return values_[static_cast<std::size_t>(r)];
    }

    BigComplex value(long n, long prec) const {
        auto t = rotation(n);
        if (!t) return BigComplex::zero(prec);
        return unit_circle_point(*t, prec);
    }

    bool is_trivial() const {
        for (const auto& v : values_)
            if (v && !v->is_zero()) return false;
        return true;
    }

  private:
    void normalize_rotations() {
        for (auto& v : values_) {
            if (!v) continue;
            Rational t = *v - Rational(v->floor());
            v = t;
        }
    }

    void validate() const {
        std::uint64_t m = modulus_;
        if (m == 1) return;
        for (std::uint64_t r = 0; r < m; ++r) {
            bool coprime = gcd(Integer(r), Integer(m)) == 1;
            if (coprime != values_[r].has_value())
                throw std::invalid_argument("DirichletCharacter: support must be exactly the units");
        }
        if (!values_[1] || !values_[1]->is_zero())
            throw std::invalid_argument("DirichletCharacter: chi(1) must be 1");
        for (std::uint64_t a = 1; a < m; ++a) {
            if (!values_[a]) continue;
            for (std::uint64_t b = a; b < m; ++b) {
                if (!values_[b]) continue;
                Rational sum = *values_[a] + *values_[b];
                sum = sum - Rational(sum.floor());
                const auto& prod = values_[(a * b) % m];
                if (!prod || *prod != sum)
                    throw std::invalid_argument("DirichletCharacter: not multiplicative");
            }
        }
    }

    std::uint64_t modulus_;
    std::vector<std::optional<Rational>> values_;
};

struct LSeriesValue {
    BigComplex value;
    BigFloat tail_bound;
};

/// L(s, chi) by truncated Dirichlet series; requires Re(s) > 1 so the
/// standard integral tail bound applies.
inline LSeriesValue dirichlet_l_numeric(const DirichletCharacter& chi, const BigComplex& s,
                                        unsigned long terms, long prec) {
    if (s.re() <= BigFloat(1, prec)) throw std::domain_error("dirichlet_l_numeric: need Re(s) > 1");
    BigComplex sum = BigComplex::zero(prec);
    for (unsigned long n = 1; n <= terms; ++n) {
        if (chi.is_zero_at(static_cast<long>(n))) continue;
        // n^{-s} = exp(-s log n)
        BigFloat logn = BigFloat(static_cast<long>(n), prec).log();
        BigComplex npow = (BigComplex(-s.re() * logn, -s.im() * logn)).exp();
        sum += chi.value(static_cast<long>(n), prec) * npow;
    }
    BigFloat sigma = s.re();
    BigFloat tail = BigFloat(static_cast<long>(terms), prec).pow(BigFloat(1, prec) - sigma) / (sigma - 1);
    return {sum, tail};
}

}  // namespace unitaria
