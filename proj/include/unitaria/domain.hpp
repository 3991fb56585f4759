// Hermitian symmetric domains (bounded H_{a,b} and unbounded H_n), the
// fractional linear group action, automorphy factors, and scalar-weight
// slash operators.  Everything here is numeric at a caller-chosen precision;
// group elements are verified form-preserving at construction.
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>

#include "unitaria/bigfloat.hpp"
#include "unitaria/matrix.hpp"

namespace unitaria {

inline constexpr double kDomainPdTolerance = 1e-10;  // epsilon_pd

enum class DomainModel { bounded, unbounded };

/// Point of H_{a,b} (z : a x b with 1 - z* z > 0) or of H_n (n x n with
/// positive definite Hermitian imaginary part).
struct DomainPoint {
    DomainModel model;
    std::size_t a, b;  // bounded dims; unbounded uses a == b == n
    ComplexMatrix z;

    static DomainPoint bounded(std::size_t a, std::size_t b, ComplexMatrix z) {
        if (z.rows() != a || z.cols() != b) throw std::invalid_argument("DomainPoint: shape mismatch");
        return {DomainModel::bounded, a, b, std::move(z)};
    }
    static DomainPoint unbounded(ComplexMatrix z) {
        if (!z.is_square()) throw std::invalid_argument("DomainPoint: unbounded model needs a square matrix");
        std::size_t n = z.rows();
        return {DomainModel::unbounded, n, n, std::move(z)};
    }
    std::size_t n() const { return a; }
};

/// i * 1_n, the base point of H_n.
inline DomainPoint base_point(std::size_t n, long prec) {
    ComplexMatrix z(n, n, BigComplex::zero(prec));
    for (std::size_t i = 0; i < n; ++i) z(i, i) = BigComplex::i(prec);
    return DomainPoint::unbounded(std::move(z));
}

/// Positive definiteness by elimination pivots (ratios of consecutive
/// leading principal minors), each required to exceed eps.
inline bool hermitian_positive_definite(ComplexMatrix m, double eps) {
    if (!m.is_square()) throw std::invalid_argument("hermitian_positive_definite: non-square");
    std::size_t n = m.rows();
    if (n == 0) return true;
    long prec = m(0, 0).prec();
    BigFloat tol(eps, prec);
    for (std::size_t k = 0; k < n; ++k) {
        BigFloat pivot = m(k, k).re();
        if (!(pivot > tol)) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            BigComplex f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return true;
}

inline bool in_domain(const DomainPoint& p, double eps = kDomainPdTolerance) {
    long prec = p.z.rows() && p.z.cols() ? p.z(0, 0).prec() : kDefaultPrecisionBits;
    if (p.model == DomainModel::bounded) {
        ComplexMatrix test = complex_identity(p.b, prec) - p.z.conj_transpose() * p.z;
        return hermitian_positive_definite(std::move(test), eps);
    }
    // (Z - Z*) / (2i)
    ComplexMatrix num = p.z - p.z.conj_transpose();
    BigComplex half_i = BigComplex(BigFloat(0, prec), BigFloat(2, prec)).inverse();
    return hermitian_positive_definite(num * half_i, eps);
}

/// eta_n = [[0, -1_n], [1_n, 0]] as a complex matrix.
inline ComplexMatrix eta_matrix(std::size_t n, long prec) {
    ComplexMatrix m(2 * n, 2 * n, BigComplex::zero(prec));
    for (std::size_t i = 0; i < n; ++i) {
        m(i, n + i) = -BigComplex::one(prec);
        m(n + i, i) = BigComplex::one(prec);
    }
    return m;
}

inline ComplexMatrix iab_matrix(std::size_t a, std::size_t b, long prec) {
    ComplexMatrix m(a + b, a + b, BigComplex::zero(prec));
    for (std::size_t i = 0; i < a; ++i) m(i, i) = BigComplex::one(prec);
    for (std::size_t i = a; i < a + b; ++i) m(i, i) = -BigComplex::one(prec);
    return m;
}

inline ComplexMatrix conj_entries(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols(), BigComplex::zero(m.rows() && m.cols() ? m(0, 0).prec()
                                                                                : kDefaultPrecisionBits));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).conj();
    return out;
}

/// Element of GU+ acting on the chosen domain, with block partition
/// [[A, B], [C, D]] (A : a x a, D : b x b) and similitude nu > 0.  The
/// defining relation g J g* = nu J (J = eta for the unbounded model, I_{a,b}
/// for the bounded one) is verified at construction within the stated
/// tolerance.
class GroupElement {
  public:
    static GroupElement make(DomainModel model, std::size_t a, std::size_t b, ComplexMatrix g,
                             double tol = 1e-20) {
        if (model == DomainModel::unbounded && a != b)
            throw std::invalid_argument("GroupElement: unbounded model needs a = b");
        if (g.rows() != a + b || g.cols() != a + b) throw std::invalid_argument("GroupElement: shape mismatch");
        long prec = a + b ? g(0, 0).prec() : kDefaultPrecisionBits;
        ComplexMatrix j = model == DomainModel::unbounded ? eta_matrix(a, prec) : iab_matrix(a, b, prec);
        ComplexMatrix gjg = g * j * g.conj_transpose();
        // nu from the largest-magnitude entry of J
        BigComplex nu_c = BigComplex::zero(prec);
        for (std::size_t i = 0; i < j.rows(); ++i)
            for (std::size_t k = 0; k < j.cols(); ++k)
                if (!j(i, k).is_zero()) {
                    BigComplex cand = gjg(i, k) / j(i, k);
                    if (cand.abs() > nu_c.abs()) nu_c = cand;
                }
        BigFloat scale = max_abs_entry(gjg);
        BigFloat tol_f = BigFloat(tol, prec) * (scale > BigFloat(1, prec) ? scale : BigFloat(1, prec));
        ComplexMatrix residual = gjg - j * nu_c;
        if (max_abs_entry(residual) > tol_f)
            throw std::invalid_argument("GroupElement: matrix does not preserve the form");
        if (!(nu_c.re() > BigFloat(0, prec)) || nu_c.im().abs() > tol_f)
            throw std::invalid_argument("GroupElement: similitude factor not positive");
        return GroupElement(model, a, b, std::move(g), nu_c.re());
    }

    DomainModel model() const { return model_; }
    std::size_t dim_a() const { return a_; }
    std::size_t dim_b() const { return b_; }
    const ComplexMatrix& full() const { return g_; }
    const BigFloat& nu() const { return nu_; }

    ComplexMatrix block(std::size_t which) const {  // 0=A, 1=B, 2=C, 3=D
        std::size_t r0 = which < 2 ? 0 : a_;
        std::size_t c0 = which % 2 == 0 ? 0 : a_;
        std::size_t rows = which < 2 ? a_ : b_;
        std::size_t cols = which % 2 == 0 ? a_ : b_;
        ComplexMatrix out(rows, cols, BigComplex::zero(prec()));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) out(i, j) = g_(r0 + i, c0 + j);
        return out;
    }

    long prec() const { return a_ + b_ ? g_(0, 0).prec() : kDefaultPrecisionBits; }

    friend GroupElement operator*(const GroupElement& x, const GroupElement& y) {
        if (x.model_ != y.model_ || x.a_ != y.a_ || x.b_ != y.b_)
            throw std::invalid_argument("GroupElement: incompatible product");
        return GroupElement(x.model_, x.a_, x.b_, x.g_ * y.g_, x.nu_ * y.nu_);
    }

  private:
    GroupElement(DomainModel model, std::size_t a, std::size_t b, ComplexMatrix g, BigFloat nu)
        : model_(model), a_(a), b_(b), g_(std::move(g)), nu_(std::move(nu)) {}
    DomainModel model_;
    std::size_t a_, b_;
    ComplexMatrix g_;
    BigFloat nu_;
};

struct NumericalDegeneracyError : std::domain_error {
    using std::domain_error::domain_error;
};

/// g z = (A z + B)(C z + D)^{-1}; the result is checked to lie in the domain.
inline DomainPoint act(const GroupElement& g, const DomainPoint& p, double eps = kDomainPdTolerance) {
    if ((g.model() != p.model) || g.dim_a() != p.a || g.dim_b() != p.b)
        throw std::invalid_argument("act: element and point live on different domains");
    ComplexMatrix num = g.block(0) * p.z + g.block(1);
    ComplexMatrix den = g.block(2) * p.z + g.block(3);
    ComplexMatrix w;
    try {
        w = num * inverse_complex(den);
    } catch (const std::domain_error&) {
        throw NumericalDegeneracyError("act: C z + D is numerically singular");
    }
    DomainPoint out{p.model, p.a, p.b, std::move(w)};
    if (!in_domain(out, eps)) throw NumericalDegeneracyError("act: image left the domain");
    return out;
}

struct AutomorphyPair {
    ComplexMatrix lambda;
    ComplexMatrix mu;
};

/// lambda and mu at (g, z): unbounded lambda = conj(c) tz + conj(d),
/// bounded lambda = conj(b) tz + conj(a); mu = c z + d in both models.
/// Definite bounded models (a or b zero) use the constant conventions.
inline AutomorphyPair automorphy_factors(const GroupElement& g, const DomainPoint& p) {
    if ((g.model() != p.model) || g.dim_a() != p.a || g.dim_b() != p.b)
        throw std::invalid_argument("automorphy_factors: domain mismatch");
    long prec = g.prec();
    if (g.model() == DomainModel::bounded && p.b == 0)
        return {conj_entries(g.full()), complex_identity(0, prec)};
    if (g.model() == DomainModel::bounded && p.a == 0)
        return {complex_identity(0, prec), g.full()};
    ComplexMatrix mu = g.block(2) * p.z + g.block(3);
    ComplexMatrix lambda = g.model() == DomainModel::unbounded
                               ? conj_entries(g.block(2)) * p.z.transpose() + conj_entries(g.block(3))
                               : conj_entries(g.block(1)) * p.z.transpose() + conj_entries(g.block(0));
    return {std::move(lambda), std::move(mu)};
}

inline BigComplex scalar_j(const GroupElement& g, const DomainPoint& p) {
    return det_complex(automorphy_factors(g, p).mu);
}

using DomainFunction = std::function<BigComplex(const DomainPoint&)>;

/// (f ||_{det^k} g)(z) = det(mu_g(z))^{-k} f(g z).
inline DomainFunction slash_scalar(DomainFunction f, GroupElement g, long k) {
    return [f = std::move(f), g = std::move(g), k](const DomainPoint& p) {
        DomainPoint gp = act(g, p);
        BigComplex jay = scalar_j(g, p);
        return jay.pow_int(-k) * f(gp);
    };
}

// --- element constructions ------------------------------------------------

/// diag(A, (A*)^{-1}) in U(eta).
inline GroupElement siegel_linear(const ComplexMatrix& a) {
    std::size_t n = a.rows();
    long prec = n ? a(0, 0).prec() : kDefaultPrecisionBits;
    ComplexMatrix g(2 * n, 2 * n, BigComplex::zero(prec));
    ComplexMatrix inv = inverse_complex(a.conj_transpose());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = a(i, j);
            g(n + i, n + j) = inv(i, j);
        }
    return GroupElement::make(DomainModel::unbounded, n, n, std::move(g));
}

/// [[1, X], [0, 1]] for Hermitian X: acts as Z -> Z + X.
inline GroupElement translation(const ComplexMatrix& x) {
    std::size_t n = x.rows();
    long prec = n ? x(0, 0).prec() : kDefaultPrecisionBits;
    ComplexMatrix g(2 * n, 2 * n, BigComplex::zero(prec));
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = BigComplex::one(prec);
        g(n + i, n + i) = BigComplex::one(prec);
        for (std::size_t j = 0; j < n; ++j) g(i, n + j) = x(i, j);
    }
    return GroupElement::make(DomainModel::unbounded, n, n, std::move(g));
}

/// eta_n itself as a group element (Z -> -Z^{-1}).
inline GroupElement eta_element(std::size_t n, long prec) {
    return GroupElement::make(DomainModel::unbounded, n, n, eta_matrix(n, prec));
}

inline GroupElement identity_element(DomainModel model, std::size_t a, std::size_t b, long prec) {
    return GroupElement::make(model, a, b, complex_identity(a + b, prec));
}

/// Stabilizer of i 1_n from a unitary pair: k = [[P, Q], [-Q, P]] with
/// P = (U + V)/2, Q = (U - V)/(2i); U = P + iQ and V = P - iQ unitary.
inline GroupElement stabilizer_element(const ComplexMatrix& u, const ComplexMatrix& v) {
    std::size_t n = u.rows();
    long prec = n ? u(0, 0).prec() : kDefaultPrecisionBits;
    BigComplex half(0.5, 0.0, prec);
    BigComplex half_over_i = BigComplex(0.0, -0.5, prec);  // 1/(2i)
    ComplexMatrix p(n, n, BigComplex::zero(prec)), q(n, n, BigComplex::zero(prec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            p(i, j) = (u(i, j) + v(i, j)) * half;
            q(i, j) = (u(i, j) - v(i, j)) * half_over_i;
        }
    ComplexMatrix g(2 * n, 2 * n, BigComplex::zero(prec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = p(i, j);
            g(i, n + j) = q(i, j);
            g(n + i, j) = -q(i, j);
            g(n + i, n + j) = p(i, j);
        }
    return GroupElement::make(DomainModel::unbounded, n, n, std::move(g));
}

/// Gram-Schmidt unitary from uniform random entries.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng, long prec) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (;;) {
        ComplexMatrix m(n, n, BigComplex::zero(prec));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = BigComplex(dist(rng), dist(rng), prec);
        bool ok = true;
        for (std::size_t col = 0; col < n && ok; ++col) {
            for (std::size_t prev = 0; prev < col; ++prev) {
                BigComplex dot = BigComplex::zero(prec);
                for (std::size_t i = 0; i < n; ++i) dot += m(i, prev).conj() * m(i, col);
                for (std::size_t i = 0; i < n; ++i) m(i, col) -= dot * m(i, prev);
            }
            BigFloat norm2(0, prec);
            for (std::size_t i = 0; i < n; ++i) norm2 += m(i, col).norm();
            if (norm2 < BigFloat(1e-8, prec)) {
                ok = false;
                break;
            }
            BigFloat inv = BigFloat(1, prec) / norm2.sqrt();
            for (std::size_t i = 0; i < n; ++i) m(i, col) *= BigComplex(inv, BigFloat(0, prec));
        }
        if (ok) return m;
    }
}

/// Random GU+(n,n) element in the unbounded model via the parabolic-times-
/// stabilizer decomposition: scalar * diag(A, A*^{-1}) * [[1,X],[0,1]] * k.
/// Form preservation is exact up to rounding by construction.
inline GroupElement random_gu_unbounded(std::size_t n, std::mt19937_64& rng, long prec) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix a(n, n, BigComplex::zero(prec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = BigComplex(dist(rng), dist(rng), prec);
    for (std::size_t i = 0; i < n; ++i) a(i, i) += BigComplex(3.0, 0.0, prec);  // keep well-conditioned
    ComplexMatrix x(n, n, BigComplex::zero(prec));
    for (std::size_t i = 0; i < n; ++i) {
        x(i, i) = BigComplex(dist(rng), 0.0, prec);
        for (std::size_t j = i + 1; j < n; ++j) {
            x(i, j) = BigComplex(dist(rng), dist(rng), prec);
            x(j, i) = x(i, j).conj();
        }
    }
    GroupElement k = stabilizer_element(random_unitary(n, rng, prec), random_unitary(n, rng, prec));
    GroupElement pk = siegel_linear(a) * translation(x) * k;
    double c = 0.5 + 1.5 * std::abs(dist(rng));
    ComplexMatrix scaled = pk.full() * BigComplex(c, 0.0, prec);
    return GroupElement::make(DomainModel::unbounded, n, n, std::move(scaled));
}

/// Random GU+(a,b) element for the bounded model: products of block
/// unitaries diag(u, v), SO(1,1)-style boosts in mixed planes, and a scalar.
inline GroupElement random_gu_bounded(std::size_t a, std::size_t b, std::mt19937_64& rng, long prec) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::size_t n = a + b;
    ComplexMatrix g = complex_identity(n, prec);
    // block unitary
    ComplexMatrix u = random_unitary(a, rng, prec);
    ComplexMatrix v = random_unitary(b, rng, prec);
    ComplexMatrix bu(n, n, BigComplex::zero(prec));
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) bu(i, j) = u(i, j);
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) bu(a + i, a + j) = v(i, j);
    g = g * bu;
    // boosts
    if (a && b)
        for (int rep = 0; rep < 2; ++rep) {
            std::size_t i = rng() % a;
            std::size_t j = a + rng() % b;
            double t = 0.7 * dist(rng);
            ComplexMatrix boost = complex_identity(n, prec);
            BigFloat th(t, prec);
            BigFloat ch = ((th.exp()) + ((-th).exp())) / 2;
            BigFloat sh = ((th.exp()) - ((-th).exp())) / 2;
            boost(i, i) = BigComplex(ch, BigFloat(0, prec));
            boost(j, j) = BigComplex(ch, BigFloat(0, prec));
            boost(i, j) = BigComplex(sh, BigFloat(0, prec));
            boost(j, i) = BigComplex(sh, BigFloat(0, prec));
            g = g * boost;
        }
    double c = 0.5 + 1.5 * std::abs(dist(rng));
    g = g * BigComplex(c, 0.0, prec);
    return GroupElement::make(DomainModel::bounded, a, b, std::move(g));
}

}  // namespace unitaria
