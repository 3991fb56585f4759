// Hermitian spaces over an imaginary quadratic field: signatures, unitary and
// similitude membership, normal forms, PEL data of unitary type, and
// split/inert/ramified place classification.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitaria/field_elem.hpp"
#include "unitaria/matrix.hpp"
#include "unitaria/primes.hpp"
#include "unitaria/rational.hpp"

namespace unitaria {

struct Signature {
    std::size_t pos = 0;
    std::size_t neg = 0;
    std::size_t n() const { return pos + neg; }
    friend bool operator==(const Signature& a, const Signature& b) {
        return a.pos == b.pos && a.neg == b.neg;
    }
};

using FieldMatrix = Matrix<FieldElem>;

inline FieldMatrix field_identity(std::uint64_t d, std::size_t n) {
    return FieldMatrix::identity(n, FieldElem::rational(d, Rational(1)), FieldElem::rational(d, Rational(0)));
}

inline FieldMatrix field_diag(std::uint64_t d, const std::vector<Rational>& entries) {
    FieldMatrix m(entries.size(), entries.size(), FieldElem::rational(d, Rational(0)));
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = FieldElem::rational(d, entries[i]);
    return m;
}

// diag(1_a, -1_b)
inline FieldMatrix field_iab(std::uint64_t d, std::size_t a, std::size_t b) {
    std::vector<Rational> e(a + b, Rational(1));
    for (std::size_t i = a; i < a + b; ++i) e[i] = Rational(-1);
    return field_diag(d, e);
}

namespace detail {

// det(xI - G) for a square rational matrix, by Lagrange interpolation
// through exact determinants at x = 0..m.
inline std::vector<Rational> char_poly(const Matrix<Rational>& g) {
    std::size_t m = g.rows();
    std::vector<Rational> xs(m + 1), ys(m + 1);
    for (std::size_t t = 0; t <= m; ++t) {
        Matrix<Rational> shifted = g;
        for (std::size_t i = 0; i < m; ++i)
            shifted(i, i) = Rational(Integer(t)) - g(i, i);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (i != j) shifted(i, j) = -g(i, j);
        xs[t] = Rational(Integer(t));
        ys[t] = det_exact(shifted);
    }
    // Newton's divided differences, expanded to monomial coefficients.
    std::vector<Rational> coef = ys;
    for (std::size_t level = 1; level <= m; ++level)
        for (std::size_t i = m; i >= level; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);
    std::vector<Rational> poly(m + 1, Rational(0));
    std::vector<Rational> basis{Rational(1)};  // prod (x - xs[j]) so far
    for (std::size_t k = 0; k <= m; ++k) {
        for (std::size_t j = 0; j < basis.size(); ++j) poly[j] += coef[k] * basis[j];
        if (k < m) {
            basis.push_back(Rational(0));
            for (std::size_t j = basis.size() - 1; j > 0; --j)
                basis[j] = basis[j - 1] - xs[k] * basis[j];
            basis[0] = -xs[k] * basis[0];
        }
    }
    return poly;  // poly[i] multiplies x^i, poly[m] == 1
}

// Number of positive roots counted with multiplicity, valid for polynomials
// all of whose roots are real (Descartes' bound is attained there).
inline std::size_t positive_roots_all_real(const std::vector<Rational>& poly) {
    std::size_t variations = 0;
    int last = 0;
    for (const auto& c : poly) {
        int s = c.sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

}  // namespace detail

/// Nondegenerate Hermitian space (K^n, <v,w> = v A w*) with A = A*.
class HermitianSpace {
  public:
    HermitianSpace(std::uint64_t d, FieldMatrix gram) : d_(d), gram_(std::move(gram)) {
        if (!gram_.is_square() || gram_.rows() == 0)
            throw std::invalid_argument("HermitianSpace: Gram matrix must be square and nonempty");
        for (std::size_t i = 0; i < gram_.rows(); ++i)
            for (std::size_t j = 0; j < gram_.cols(); ++j) {
                if (gram_(i, j).d() != d_) throw std::invalid_argument("HermitianSpace: field mismatch in Gram");
                if (gram_(i, j) != gram_(j, i).conj())
                    throw std::invalid_argument("HermitianSpace: Gram matrix is not Hermitian");
            }
        if (det_exact(gram_).is_zero()) throw std::domain_error("HermitianSpace: degenerate Gram matrix");
    }

    std::uint64_t d() const { return d_; }
    std::size_t n() const { return gram_.rows(); }
    const FieldMatrix& gram() const { return gram_; }

    /// The 2n x 2n rational symmetric Gram of Re<.,.> on the Q-basis
    /// {e_1..e_n, w e_1..w e_n}, w = sqrt(-d).  Congruent over R to the
    /// complex Hermitian form taken twice, so its signature is doubled.
    Matrix<Rational> rational_realization() const {
        std::size_t n = gram_.rows();
        Matrix<Rational> g(2 * n, 2 * n, Rational(0));
        Rational dr{Integer(d_)};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const FieldElem& a = gram_(i, j);
                g(i, j) = a.a();
                g(i, n + j) = dr * a.b();
                g(n + i, j) = -dr * a.b();
                g(n + i, n + j) = dr * a.a();
            }
        return g;
    }

  private:
    std::uint64_t d_;
    FieldMatrix gram_;
};

/// Signature (a, b) by exact coefficient sign counts on the characteristic
/// polynomial of the rational realization.  The characteristic polynomial of
/// a symmetric matrix has only real roots, so the Descartes count is exact
/// and multiplicity-aware.  No floating point is involved.
inline Signature signature(const HermitianSpace& space) {
    auto poly = detail::char_poly(space.rational_realization());
    if (poly[0].is_zero()) throw std::domain_error("signature: degenerate Gram matrix");
    std::size_t pos = detail::positive_roots_all_real(poly);
    std::size_t total = poly.size() - 1;
    // Real realization doubles every eigenvalue.
    return Signature{pos / 2, (total - pos) / 2};
}

inline void check_operand(const HermitianSpace& space, const FieldMatrix& g) {
    if (!g.is_square() || g.rows() != space.n())
        throw std::invalid_argument("matrix size does not match the space");
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (g(i, j).d() != space.d()) throw std::invalid_argument("matrix entries from the wrong field");
}

/// Exact test of g A g* = A (row-vector action v -> v g).
inline bool is_unitary(const HermitianSpace& space, const FieldMatrix& g) {
    check_operand(space, g);
    return g * space.gram() * g.conj_transpose() == space.gram();
}

struct NotASimilitudeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The scalar nu with g A g* = nu A, necessarily rational.  Throws
/// NotASimilitudeError when no such scalar exists.
inline Rational similitude_factor(const HermitianSpace& space, const FieldMatrix& g) {
    check_operand(space, g);
    FieldMatrix b = g * space.gram() * g.conj_transpose();
    const FieldMatrix& a = space.gram();
    std::optional<Rational> nu;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) {
                if (!b(i, j).is_zero()) throw NotASimilitudeError("not a similitude");
                continue;
            }
            FieldElem ratio = b(i, j) / a(i, j);
            if (!ratio.is_rational()) throw NotASimilitudeError("not a similitude");
            if (nu && *nu != ratio.a()) throw NotASimilitudeError("not a similitude");
            if (!nu) nu = ratio.a();
        }
    if (!nu || nu->is_zero()) throw NotASimilitudeError("not a similitude");
    return *nu;
}

/// Congruence normal form P A P* = I_{a,b}.  The square roots needed for the
/// final rescaling are kept symbolic: P = diag(scales[i]^{-1/2}) * transform
/// with exact `transform` over K and positive rational `scales`, so the
/// verification transform * A * transform* == diag(sign_i * scales[i]) is an
/// exact statement.
struct NormalForm {
    FieldMatrix transform;
    std::vector<Rational> scales;
    Signature sig;

    bool verify(const HermitianSpace& space) const {
        FieldMatrix m = transform * space.gram() * transform.conj_transpose();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (i == j) continue;
                if (!m(i, j).is_zero()) return false;
            }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Rational expect = i < sig.pos ? scales[i] : -scales[i];
            if (!m(i, i).is_rational() || m(i, i).a() != expect) return false;
        }
        return true;
    }
};

inline NormalForm normalize_to_iab(const HermitianSpace& space) {
    std::size_t n = space.n();
    std::uint64_t d = space.d();
    FieldMatrix m = space.gram();
    FieldMatrix q = field_identity(d, n);
    FieldElem zero = FieldElem::rational(d, Rational(0));

    auto add_row = [&](FieldMatrix& target, std::size_t dst, std::size_t src, const FieldElem& f) {
        for (std::size_t j = 0; j < target.cols(); ++j)
            target(dst, j) += f * target(src, j);
    };
    auto add_col_conj = [&](FieldMatrix& target, std::size_t dst, std::size_t src, const FieldElem& f) {
        FieldElem fc = f.conj();
        for (std::size_t i = 0; i < target.rows(); ++i)
            target(i, dst) += target(i, src) * fc;
    };
    auto swap_rows = [&](FieldMatrix& target, std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < target.cols(); ++c) std::swap(target(i, c), target(j, c));
    };

    for (std::size_t k = 0; k < n; ++k) {
        // Find a nonzero diagonal pivot; Hermitian diagonals are rational.
        std::size_t piv = k;
        while (piv < n && m(piv, piv).is_zero()) ++piv;
        if (piv == n) {
            // All remaining diagonal entries vanish; use an off-diagonal
            // entry to create one: v_i <- v_i + conj(a_ji) v_j makes the new
            // diagonal 2 N(a_ij) > 0.
            bool found = false;
            for (std::size_t i = k; i < n && !found; ++i)
                for (std::size_t j = i + 1; j < n && !found; ++j)
                    if (!m(i, j).is_zero()) {
                        FieldElem f = m(i, j);
                        add_row(m, i, j, f);
                        add_col_conj(m, i, j, f);
                        add_row(q, i, j, f);
                        piv = i;
                        found = true;
                    }
            if (!found) throw std::domain_error("normalize_to_iab: degenerate block");
        }
        if (piv != k) {
            swap_rows(m, k, piv);
            for (std::size_t c = 0; c < n; ++c) std::swap(m(c, k), m(c, piv));
            swap_rows(q, k, piv);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            FieldElem f = zero - m(i, k) / m(k, k);
            add_row(m, i, k, f);
            add_col_conj(m, i, k, f);
            add_row(q, i, k, f);
        }
    }

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i)
        if (m(i, i).a().sign() > 0) order.push_back(i);
    std::size_t pos = order.size();
    for (std::size_t i = 0; i < n; ++i)
        if (m(i, i).a().sign() < 0) order.push_back(i);
    for (std::size_t i = 0; i < n; ++i)
        if (m(i, i).a().sign() == 0) throw std::domain_error("normalize_to_iab: degenerate Gram matrix");

    NormalForm out;
    out.sig = Signature{pos, n - pos};
    out.transform = FieldMatrix(n, n, zero);
    out.scales.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) out.transform(r, c) = q(order[r], c);
        out.scales.push_back(m(order[r], order[r]).a().abs());
    }
    return out;
}

// --- PEL data of unitary type ------------------------------------------------

/// Q-valued alternating pairing <.,.> = sum_i trace_{K/Q}(alpha <.,.>_i)
/// on the direct sum of the given spaces, plus its compatibility data.
class PELDatumUnitary {
  public:
    PELDatumUnitary(std::vector<HermitianSpace> spaces, FieldElem alpha)
        : spaces_(std::move(spaces)), alpha_(std::move(alpha)) {
        if (spaces_.empty()) throw std::invalid_argument("PEL datum: empty space list");
        if (!alpha_.a().is_zero() || alpha_.is_zero())
            throw std::invalid_argument("PEL datum: alpha must be totally imaginary and nonzero");
        for (const auto& s : spaces_)
            if (s.d() != alpha_.d()) throw std::invalid_argument("PEL datum: field mismatch");
        for (const auto& s : spaces_) signatures_.push_back(signature(s));
        build_qgram();
        verify_invariants();
    }

    std::size_t factors() const { return spaces_.size(); }
    const std::vector<HermitianSpace>& spaces() const { return spaces_; }
    const FieldElem& alpha() const { return alpha_; }
    const std::vector<Signature>& signatures() const { return signatures_; }
    const Matrix<Rational>& q_pairing_gram() const { return qgram_; }

    /// trace_{K/Q}(alpha <v, w>_i) for K-coefficient vectors in factor i.
    Rational pair_q(std::size_t i, const std::vector<FieldElem>& v, const std::vector<FieldElem>& w) const {
        const auto& s = spaces_.at(i);
        if (v.size() != s.n() || w.size() != s.n()) throw std::invalid_argument("pair_q: wrong vector length");
        FieldElem h = FieldElem::rational(alpha_.d(), Rational(0));
        for (std::size_t r = 0; r < s.n(); ++r)
            for (std::size_t c = 0; c < s.n(); ++c) h += v[r] * s.gram()(r, c) * w[c].conj();
        return (alpha_ * h).trace();
    }

  private:
    void build_qgram() {
        std::size_t total = 0;
        for (const auto& s : spaces_) total += s.n();
        qgram_ = Matrix<Rational>(2 * total, 2 * total, Rational(0));
        std::size_t offset = 0;
        for (std::size_t idx = 0; idx < spaces_.size(); ++idx) {
            const auto& s = spaces_[idx];
            std::size_t n = s.n();
            FieldElem w = FieldElem::sqrt_minus_d(s.d());
            FieldElem one = FieldElem::rational(s.d(), Rational(1));
            auto basis_vec = [&](std::size_t b) {
                std::vector<FieldElem> v(n, FieldElem::rational(s.d(), Rational(0)));
                v[b % n] = (b < n) ? one : w;
                return v;
            };
            for (std::size_t r = 0; r < 2 * n; ++r)
                for (std::size_t c = 0; c < 2 * n; ++c)
                    qgram_(offset + r, offset + c) = pair_q(idx, basis_vec(r), basis_vec(c));
            offset += 2 * n;
        }
    }

    void verify_invariants() const {
        std::size_t m = qgram_.rows();
        for (std::size_t i = 0; i < m; ++i) {
            if (!qgram_(i, i).is_zero()) throw std::logic_error("PEL datum: pairing not alternating");
            for (std::size_t j = 0; j < m; ++j)
                if (qgram_(i, j) != -qgram_(j, i)) throw std::logic_error("PEL datum: pairing not antisymmetric");
        }
        // <b v, w> = <v, conj(b) w> for b = w generating K over Q, on the
        // full basis of each factor.
        for (std::size_t idx = 0; idx < spaces_.size(); ++idx) {
            const auto& s = spaces_[idx];
            std::size_t n = s.n();
            FieldElem w = FieldElem::sqrt_minus_d(s.d());
            FieldElem one = FieldElem::rational(s.d(), Rational(1));
            FieldElem zero = FieldElem::rational(s.d(), Rational(0));
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) {
                    std::vector<FieldElem> v(n, zero), u(n, zero);
                    v[r] = one;
                    u[c] = one;
                    auto scale = [&](const std::vector<FieldElem>& x, const FieldElem& f) {
                        std::vector<FieldElem> y = x;
                        for (auto& e : y) e *= f;
                        return y;
                    };
                    if (pair_q(idx, scale(v, w), u) != pair_q(idx, v, scale(u, w.conj())))
                        throw std::logic_error("PEL datum: O_K-compatibility fails");
                }
        }
    }

    std::vector<HermitianSpace> spaces_;
    FieldElem alpha_;
    std::vector<Signature> signatures_;
    Matrix<Rational> qgram_;
};

inline PELDatumUnitary build_unitary_pel_datum(std::vector<HermitianSpace> spaces, FieldElem alpha) {
    return PELDatumUnitary(std::move(spaces), std::move(alpha));
}

// --- place classification ----------------------------------------------------

enum class PlaceKind { split, inert, ramified };

inline const char* place_kind_name(PlaceKind k) {
    switch (k) {
        case PlaceKind::split: return "split";
        case PlaceKind::inert: return "inert";
        default: return "ramified";
    }
}

/// Field discriminant of Q(sqrt(-d)): -d when d = 3 (mod 4), else -4d.
inline Integer field_discriminant(std::uint64_t d) {
    Integer md = -Integer(d);
    return (d % 4 == 3) ? md : 4 * md;
}

inline PlaceKind classify_place(std::uint64_t d, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("classify_place: p must be prime");
    int k = kronecker(field_discriminant(d), Integer(p));
    if (k == 0) return PlaceKind::ramified;
    return k > 0 ? PlaceKind::split : PlaceKind::inert;
}

struct PlaceClassificationError : std::domain_error {
    PlaceClassificationError(PlaceKind kind, std::uint64_t p)
        : std::domain_error(std::string("place ") + std::to_string(p) + " is " + place_kind_name(kind) +
                            ", not split"),
          kind(kind) {}
    PlaceKind kind;
};

/// Marker consumed by the L-function layer: at a split place the unitary
/// group is a general linear group of the same rank, so rank-n GL Satake
/// data is accepted there verbatim.
struct SplitPlaceMarker {
    std::uint64_t p;
    std::size_t n;
    std::uint64_t d;
};

inline SplitPlaceMarker split_place_transport(const HermitianSpace& space, std::uint64_t p) {
    PlaceKind kind = classify_place(space.d(), p);
    if (kind != PlaceKind::split) throw PlaceClassificationError(kind, p);
    return SplitPlaceMarker{p, space.n(), space.d()};
}

}  // namespace unitaria
