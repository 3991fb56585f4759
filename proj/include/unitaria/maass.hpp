// Maass--Shimura weight-raising operators on nearly holomorphic q-expansions,
// and the numeric verification of the raising identity for normalized
// Eisenstein series.
//
// A nearly holomorphic form of weight lambda and depth r is stored as the
// table a_{n,j} of sum_j (sum_n a_{n,j} q^n) (1/(4 pi y))^j.  Powers of
// 1/(4 pi y) rather than 1/y keep the tables rational for rational input.
#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "unitaria/bernoulli.hpp"
#include "unitaria/bigfloat.hpp"
#include "unitaria/dirichlet.hpp"
#include "unitaria/eisenstein.hpp"
#include "unitaria/rational.hpp"

namespace unitaria {

class NearlyHolomorphic {
  public:
    explicit NearlyHolomorphic(long weight) : weight_(weight) {}

    static NearlyHolomorphic from_qexp(long weight, const std::vector<Rational>& coeffs) {
        NearlyHolomorphic f(weight);
        for (std::size_t n = 0; n < coeffs.size(); ++n) f.set(static_cast<unsigned>(n), 0, coeffs[n]);
        return f;
    }

    long weight() const { return weight_; }

    unsigned depth() const {
        unsigned d = 0;
        for (const auto& [nj, a] : table_) d = std::max(d, nj.second);
        return d;
    }

    void set(unsigned n, unsigned j, Rational a) {
        if (a.is_zero())
            table_.erase({n, j});
        else
            table_[{n, j}] = std::move(a);
    }
    void add_to(unsigned n, unsigned j, const Rational& a) {
        auto key = std::make_pair(n, j);
        auto it = table_.find(key);
        if (it == table_.end()) {
            if (!a.is_zero()) table_[key] = a;
            return;
        }
        it->second += a;
        if (it->second.is_zero()) table_.erase(it);
    }
    Rational get(unsigned n, unsigned j) const {
        auto it = table_.find({n, j});
        return it == table_.end() ? Rational(0) : it->second;
    }
    const std::map<std::pair<unsigned, unsigned>, Rational>& table() const { return table_; }

    /// The j = 0 slice as a plain q-expansion.
    std::vector<Rational> holomorphic_slice() const {
        unsigned bound = 0;
        for (const auto& [nj, a] : table_)
            if (nj.second == 0) bound = std::max(bound, nj.first);
        std::vector<Rational> out(bound + 1, Rational(0));
        for (const auto& [nj, a] : table_)
            if (nj.second == 0) out[nj.first] = a;
        return out;
    }

    NearlyHolomorphic operator+(const NearlyHolomorphic& o) const {
        if (weight_ != o.weight_) throw std::invalid_argument("NearlyHolomorphic: weight mismatch in sum");
        NearlyHolomorphic out = *this;
        for (const auto& [nj, a] : o.table_) out.add_to(nj.first, nj.second, a);
        return out;
    }
    NearlyHolomorphic scaled(const Rational& c) const {
        NearlyHolomorphic out(weight_);
        for (const auto& [nj, a] : table_) out.set(nj.first, nj.second, a * c);
        return out;
    }

    /// Numeric value at z (upper half plane): sum a_{n,j} e^{2 pi i n z}
    /// (4 pi y)^{-j}.
    BigComplex evaluate(const BigComplex& z, long prec) const {
        BigFloat y = z.im();
        if (!(y > BigFloat(0, prec))) throw std::domain_error("NearlyHolomorphic: Im z > 0 required");
        BigComplex q = (BigComplex(BigFloat(0, prec), BigFloat(2, prec) * BigFloat::pi(prec)) * z).exp();
        BigFloat u = BigFloat(1, prec) / (BigFloat(4, prec) * BigFloat::pi(prec) * y);
        BigComplex acc = BigComplex::zero(prec);
        for (const auto& [nj, a] : table_) {
            BigComplex term = BigComplex::from_rational(a, prec);
            term *= q.pow_int(nj.first);
            term *= BigComplex(u.pow_int(nj.second), BigFloat(0, prec));
            acc += term;
        }
        return acc;
    }

  private:
    long weight_;
    std::map<std::pair<unsigned, unsigned>, Rational> table_;
};

/// delta_lambda = (1/(2 pi i)) (lambda/(2iy) + d/dz): raises weight by 2 and
/// depth by 1.  On tables: d/dz sends a_{n,j} to n a_{n,j} at (n,j) plus
/// j a_{n,j} at (n,j+1) from the y-power, and the lambda/(2iy) term puts
/// -lambda a_{n,j} at (n,j+1).
inline NearlyHolomorphic delta(long lambda, const NearlyHolomorphic& f) {
    if (f.weight() != lambda) throw std::invalid_argument("delta: operator weight must match the form");
    NearlyHolomorphic out(lambda + 2);
    for (const auto& [nj, a] : f.table()) {
        auto [n, j] = nj;
        out.add_to(n, j, a * Rational(Integer(n)));
        out.add_to(n, j + 1, a * (Rational(Integer(j)) - Rational(Integer(lambda))));
    }
    return out;
}

/// delta^{(r)} = delta_{lambda+2r-2} o ... o delta_lambda; r = 0 is the
/// identity.
inline NearlyHolomorphic delta_iter(long lambda, unsigned r, const NearlyHolomorphic& f) {
    NearlyHolomorphic out = f;
    for (unsigned i = 0; i < r; ++i) out = delta(lambda + 2 * static_cast<long>(i), out);
    return out;
}

struct EstarReport {
    BigComplex lhs;           // E*_{lambda+2r}(z, -r)
    BigComplex rhs;           // Gamma(lambda)/Gamma(lambda+r) (-4 pi y)^r delta^{(r)} E*_lambda (z)
    BigFloat abs_error;
    BigFloat rel_error;
    BigFloat scale;           // denominator used for rel_error
    bool value_is_zero;       // both sides cancel below 1e-6 of the sum's mass
    BigFloat lattice_tail;    // truncation bound for the lattice sum side
};

struct EstarParams {
    unsigned long cutoff = 600;   // lattice sum truncation
    unsigned q_bound = 40;        // q-expansion truncation
    unsigned long l_terms = 20000;  // Dirichlet series terms for 2 L(lambda)
    long prec = kDefaultPrecisionBits;
};

/// Both sides of E*_{lambda+2r}(z, -r) = Gamma(lambda)/Gamma(lambda+r)
/// (-4 pi y)^r delta_lambda^{(r)} E*_lambda(z), level 1, trivial character.
/// The left side is a direct lattice sum normalized by 2 L(lambda); the
/// right side applies the operator to the exact expansion of E*_lambda.
///
/// rel_error is |lhs - rhs| / max(|lhs|, |rhs|) as long as the values are
/// resolved; when both sides cancel below 1e-6 of the lattice sum's absolute
/// mass (which happens identically at CM points for weights = 2 mod 4), the
/// value is a numerical zero and the error is reported relative to that mass
/// instead, with value_is_zero set.
inline EstarReport verify_estar_relation(unsigned lambda, unsigned r, const BigComplex& z,
                                         const EstarParams& params = {}) {
    if (lambda < 4 || lambda % 2) throw std::domain_error("verify_estar_relation: lambda must be even, >= 4");
    long prec = params.prec;

    DirichletCharacter triv = DirichletCharacter::trivial(1);
    EisensteinSpec spec{lambda + 2 * r, 1, triv,
                        BigComplex(BigFloat(-static_cast<long>(r), prec), BigFloat(0, prec))};
    auto lattice = eisenstein_numeric(spec, z, params.cutoff);
    auto lval = dirichlet_l_numeric(triv, BigComplex(BigFloat(static_cast<long>(lambda), prec),
                                                     BigFloat(0, prec)),
                                    params.l_terms, prec);
    BigComplex lhs = lattice.value / (lval.value * BigFloat(2, prec));

    NearlyHolomorphic estar =
        NearlyHolomorphic::from_qexp(lambda, eisenstein_normalized_coeffs(lambda, params.q_bound));
    NearlyHolomorphic raised = delta_iter(lambda, r, estar);
    BigComplex value = raised.evaluate(z, prec);
    BigFloat minus_4pi_y = BigFloat(-4, prec) * BigFloat::pi(prec) * z.im();
    Rational rising(1);
    for (unsigned i = 0; i < r; ++i) rising *= Rational(Integer(lambda + i));
    BigComplex rhs = value * minus_4pi_y.pow_int(static_cast<long>(r)) /
                     BigComplex::from_rational(rising, prec);

    BigFloat abs_err = (lhs - rhs).abs();
    BigFloat mass = lattice.abs_mass / (lval.value.abs() * BigFloat(2, prec));
    BigFloat value_scale = lhs.abs();
    if (rhs.abs() > value_scale) value_scale = rhs.abs();
    bool numerically_zero = value_scale < mass * BigFloat(1e-6, prec);
    BigFloat scale = numerically_zero ? mass : value_scale;
    BigFloat rel = scale.is_zero() ? abs_err : abs_err / scale;
    return {lhs, rhs, abs_err, rel, scale, numerically_zero, lattice.tail_bound};
}

}  // namespace unitaria
