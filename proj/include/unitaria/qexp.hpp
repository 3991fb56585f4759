// Fourier expansions of Hermitian modular forms: lattices of Hermitian
// matrices, dual lattices under the trace pairing, positive-semidefinite
// index enumeration, and the expansion ring.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "unitaria/bigfloat.hpp"
#include "unitaria/field_elem.hpp"
#include "unitaria/hermitian_space.hpp"
#include "unitaria/matrix.hpp"
#include "unitaria/rational.hpp"

namespace unitaria {

inline bool is_hermitian(const FieldMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != m(j, i).conj()) return false;
    return true;
}

/// trace(h m) for Hermitian h, m is fixed by conjugation, hence rational.
inline Rational trace_pairing(const FieldMatrix& h, const FieldMatrix& m) {
    FieldElem t = (h * m).trace();
    if (!t.is_rational()) throw std::logic_error("trace_pairing: non-rational trace");
    return t.a();
}

inline Rational herm_trace(const FieldMatrix& h) {
    FieldElem t = h.trace();
    if (!t.is_rational()) throw std::logic_error("herm_trace: non-rational trace");
    return t.a();
}

/// All principal minors nonnegative; exact, no tolerance.
inline bool is_psd_exact(const FieldMatrix& h) {
    std::size_t n = h.rows();
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        FieldMatrix sub(idx.size(), idx.size(), FieldElem::rational(h(0, 0).d(), Rational(0)));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = h(idx[i], idx[j]);
        FieldElem det = det_exact(sub);
        if (!det.is_rational()) throw std::logic_error("is_psd_exact: non-rational minor");
        if (det.a().sign() < 0) return false;
    }
    return true;
}

/// Leading principal minors positive (Sylvester); exact.
inline bool is_pd_exact(const FieldMatrix& h) {
    std::size_t n = h.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        FieldMatrix sub(k, k, FieldElem::rational(h(0, 0).d(), Rational(0)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = h(i, j);
        FieldElem det = det_exact(sub);
        if (!det.is_rational()) throw std::logic_error("is_pd_exact: non-rational minor");
        if (det.a().sign() <= 0) return false;
    }
    return true;
}

/// Hermitian matrix index with a canonical ordering key:
/// (trace, diagonal entries, upper-triangle off-diagonal real/imag parts).
class HermIndex {
  public:
    explicit HermIndex(FieldMatrix m) : mat_(std::move(m)) {
        if (!mat_.is_square() || !is_hermitian(mat_)) throw std::invalid_argument("HermIndex: not Hermitian");
        key_.push_back(herm_trace(mat_));
        for (std::size_t i = 0; i < mat_.rows(); ++i) key_.push_back(mat_(i, i).a());
        for (std::size_t i = 0; i < mat_.rows(); ++i)
            for (std::size_t j = i + 1; j < mat_.cols(); ++j) {
                key_.push_back(mat_(i, j).a());
                key_.push_back(mat_(i, j).b());
            }
    }

    const FieldMatrix& matrix() const { return mat_; }
    const std::vector<Rational>& key() const { return key_; }
    Rational trace() const { return key_[0]; }
    bool is_zero() const { return mat_.is_zero(); }

    friend bool operator<(const HermIndex& a, const HermIndex& b) { return a.key_ < b.key_; }
    friend bool operator==(const HermIndex& a, const HermIndex& b) { return a.key_ == b.key_; }
    friend bool operator!=(const HermIndex& a, const HermIndex& b) { return !(a == b); }

    friend HermIndex operator+(const HermIndex& a, const HermIndex& b) {
        return HermIndex(a.mat_ + b.mat_);
    }

  private:
    FieldMatrix mat_;
    std::vector<Rational> key_;
};

/// Z-lattice of Hermitian n x n matrices over K, given by a Z-basis.
class HermLattice {
  public:
    HermLattice(std::uint64_t d, std::size_t n, std::vector<FieldMatrix> basis)
        : d_(d), n_(n), basis_(std::move(basis)) {
        if (basis_.empty()) throw std::invalid_argument("HermLattice: empty basis");
        for (const auto& m : basis_) {
            if (m.rows() != n_ || m.cols() != n_) throw std::invalid_argument("HermLattice: size mismatch");
            if (!is_hermitian(m)) throw std::invalid_argument("HermLattice: basis element not Hermitian");
        }
        gram_ = Matrix<Rational>(basis_.size(), basis_.size(), Rational(0));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = 0; j < basis_.size(); ++j) gram_(i, j) = trace_pairing(basis_[i], basis_[j]);
        // The trace form is positive definite on Hermitian matrices, so a
        // singular Gram means the basis is Z-linearly dependent.
        if (det_exact(gram_).is_zero()) throw std::domain_error("HermLattice: degenerate (dependent basis)");
    }

    std::uint64_t d() const { return d_; }
    std::size_t n() const { return n_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<FieldMatrix>& basis() const { return basis_; }
    const Matrix<Rational>& trace_gram() const { return gram_; }

    FieldMatrix combine(const std::vector<Integer>& coords) const {
        if (coords.size() != rank()) throw std::invalid_argument("combine: wrong coordinate length");
        FieldMatrix acc(n_, n_, FieldElem::rational(d_, Rational(0)));
        for (std::size_t i = 0; i < coords.size(); ++i)
            acc = acc + basis_[i] * FieldElem::rational(d_, Rational(coords[i]));
        return acc;
    }

    /// Rational coordinates of h with respect to the basis (h need not lie
    /// in the lattice; membership is integrality of these coordinates).
    std::vector<Rational> coordinates(const FieldMatrix& h) const {
        Matrix<Rational> rhs(rank(), 1, Rational(0));
        for (std::size_t i = 0; i < rank(); ++i) rhs(i, 0) = trace_pairing(h, basis_[i]);
        Matrix<Rational> inv = inverse_exact(gram_, Rational(1));
        Matrix<Rational> x = inv * rhs;
        std::vector<Rational> out(rank());
        for (std::size_t i = 0; i < rank(); ++i) out[i] = x(i, 0);
        return out;
    }

    bool contains(const FieldMatrix& h) const {
        // Solving through the trace pairing is only valid when h lies in the
        // Q-span; confirm by reconstructing.
        auto c = coordinates(h);
        for (const auto& r : c)
            if (!r.is_integer()) return false;
        FieldMatrix acc(n_, n_, FieldElem::rational(d_, Rational(0)));
        for (std::size_t i = 0; i < c.size(); ++i)
            acc = acc + basis_[i] * FieldElem::rational(d_, c[i]);
        return acc == h;
    }

    bool equals(const HermLattice& other) const {
        if (d_ != other.d_ || n_ != other.n_ || rank() != other.rank()) return false;
        for (const auto& m : other.basis_)
            if (!contains(m)) return false;
        for (const auto& m : basis_)
            if (!other.contains(m)) return false;
        return true;
    }

  private:
    std::uint64_t d_;
    std::size_t n_;
    std::vector<FieldMatrix> basis_;
    Matrix<Rational> gram_;
};

/// Dual lattice under h, m -> trace(h m): exact Gram inversion.
inline HermLattice dual_lattice(const HermLattice& m) {
    Matrix<Rational> inv = inverse_exact(m.trace_gram(), Rational(1));
    std::vector<FieldMatrix> dual_basis;
    for (std::size_t j = 0; j < m.rank(); ++j) {
        FieldMatrix acc(m.n(), m.n(), FieldElem::rational(m.d(), Rational(0)));
        for (std::size_t i = 0; i < m.rank(); ++i)
            acc = acc + m.basis()[i] * FieldElem::rational(m.d(), inv(i, j));
        dual_basis.push_back(acc);
    }
    return HermLattice(m.d(), m.n(), std::move(dual_basis));
}

/// Scalar lattice N Z inside 1x1 Hermitian matrices over Q(sqrt(-d)).
inline HermLattice scalar_lattice(std::uint64_t d, const Rational& generator) {
    FieldMatrix g(1, 1, FieldElem::rational(d, generator));
    return HermLattice(d, 1, {g});
}

/// Hermitian matrices with integer diagonal and O_K off-diagonal entries
/// (for d = 1: Gaussian-integer off-diagonals).  Rank n^2.
inline HermLattice integer_hermitian_lattice(std::uint64_t d, std::size_t n) {
    FieldElem zero = FieldElem::rational(d, Rational(0));
    FieldElem one = FieldElem::rational(d, Rational(1));
    FieldElem w = FieldElem::sqrt_minus_d(d);
    std::vector<FieldMatrix> basis;
    for (std::size_t i = 0; i < n; ++i) {
        FieldMatrix e(n, n, zero);
        e(i, i) = one;
        basis.push_back(e);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            FieldMatrix x(n, n, zero);
            x(i, j) = one;
            x(j, i) = one;
            basis.push_back(x);
            FieldMatrix y(n, n, zero);
            y(i, j) = w;
            y(j, i) = w.conj();
            basis.push_back(y);
        }
    return HermLattice(d, n, std::move(basis));
}

/// All positive-semidefinite points of the lattice with trace <= bound, in
/// canonical order.  Complete: PSD with trace <= T implies trace(h^2) <= T^2,
/// an ellipsoid in coordinates, and each coordinate is boxed by the
/// corresponding diagonal entry of the inverse Gram.
inline std::vector<HermIndex> enumerate_psd(const HermLattice& lattice, const Rational& bound) {
    if (bound.sign() < 0) throw std::invalid_argument("enumerate_psd: negative trace bound");
    std::size_t r = lattice.rank();
    Matrix<Rational> inv = inverse_exact(lattice.trace_gram(), Rational(1));
    Rational t2 = bound * bound;
    std::vector<long> lo(r), hi(r);
    for (std::size_t j = 0; j < r; ++j) {
        Rational limit = t2 * inv(j, j);
        Integer b = isqrt(limit.floor());
        while (Rational(Integer((b + 1) * (b + 1))) <= limit) b += 1;
        long bl = static_cast<long>(b.get_si());
        lo[j] = -bl;
        hi[j] = bl;
    }
    std::vector<HermIndex> out;
    std::vector<long> x(r, 0);
    for (std::size_t j = 0; j < r; ++j) x[j] = lo[j];
    for (;;) {
        std::vector<Integer> coords(r);
        for (std::size_t j = 0; j < r; ++j) coords[j] = Integer(x[j]);
        FieldMatrix h = lattice.combine(coords);
        if (herm_trace(h) <= bound && is_psd_exact(h)) out.emplace_back(h);
        std::size_t j = 0;
        while (j < r && x[j] == hi[j]) {
            x[j] = lo[j];
            ++j;
        }
        if (j == r) break;
        ++x[j];
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- expansion ring -----------------------------------------------------------

/// Truncated Fourier expansion supported on PSD dual-lattice indices of
/// trace <= trace_bound.  Keys are checked against the lattice on insertion;
/// zero coefficients are not stored.
template <typename Coeff>
class FourierExpansion {
  public:
    FourierExpansion(HermLattice lattice, Rational trace_bound)
        : lattice_(std::move(lattice)), bound_(std::move(trace_bound)) {
        if (bound_.sign() < 0) throw std::invalid_argument("FourierExpansion: negative trace bound");
    }

    const HermLattice& lattice() const { return lattice_; }
    const Rational& trace_bound() const { return bound_; }
    const std::map<HermIndex, Coeff>& coeffs() const { return coeffs_; }

    void set(const HermIndex& h, Coeff value) {
        if (!lattice_.contains(h.matrix()))
            throw std::invalid_argument("FourierExpansion: index outside the lattice");
        if (!is_psd_exact(h.matrix()))
            throw std::invalid_argument("FourierExpansion: index not positive semidefinite");
        if (h.trace() > bound_) throw std::invalid_argument("FourierExpansion: index beyond trace bound");
        if (is_zero_coeff(value))
            coeffs_.erase(h);
        else
            coeffs_[h] = std::move(value);
    }

    Coeff get(const HermIndex& h) const {
        auto it = coeffs_.find(h);
        if (it != coeffs_.end()) return it->second;
        if constexpr (std::is_same_v<Coeff, FieldElem>)
            return FieldElem::rational(lattice_.d(), Rational(0));
        else
            return Coeff{};
    }

    friend FourierExpansion operator+(const FourierExpansion& a, const FourierExpansion& b) {
        if (!a.lattice_.equals(b.lattice_)) throw std::invalid_argument("FourierExpansion: lattice mismatch");
        FourierExpansion out(a.lattice_, std::min(a.bound_, b.bound_));
        for (const auto& [h, c] : a.coeffs_)
            if (h.trace() <= out.bound_) out.accumulate(h, c);
        for (const auto& [h, c] : b.coeffs_)
            if (h.trace() <= out.bound_) out.accumulate(h, c);
        return out;
    }

    FourierExpansion scaled(const Coeff& s) const {
        FourierExpansion out(lattice_, bound_);
        for (const auto& [h, c] : coeffs_) out.set(h, c * s);
        return out;
    }

  private:
    static bool is_zero_coeff(const Coeff& c) { return c.is_zero(); }

    void accumulate(const HermIndex& h, const Coeff& c) {
        auto it = coeffs_.find(h);
        if (it == coeffs_.end()) {
            set(h, c);
        } else {
            Coeff s = it->second + c;
            if (is_zero_coeff(s))
                coeffs_.erase(it);
            else
                it->second = std::move(s);
        }
    }

    template <typename C>
    friend FourierExpansion<C> multiply(const FourierExpansion<C>&, const FourierExpansion<C>&);

    HermLattice lattice_;
    Rational bound_;
    std::map<HermIndex, Coeff> coeffs_;
};

/// Convolution product: q^{h1} q^{h2} = q^{h1+h2}, truncated at
/// min(trace bounds).  Exact whenever the coefficients are exact.
template <typename Coeff>
FourierExpansion<Coeff> multiply(const FourierExpansion<Coeff>& f, const FourierExpansion<Coeff>& g) {
    if (!f.lattice().equals(g.lattice())) throw std::invalid_argument("multiply: lattice mismatch");
    FourierExpansion<Coeff> out(f.lattice(), std::min(f.trace_bound(), g.trace_bound()));
    for (const auto& [h1, c1] : f.coeffs())
        for (const auto& [h2, c2] : g.coeffs()) {
            if (h1.trace() + h2.trace() > out.trace_bound()) continue;
            out.accumulate(h1 + h2, c1 * c2);
        }
    return out;
}

enum class SupportMode { holomorphic, cusp };

/// Holomorphic support (all indices PSD) is structural for this type but is
/// re-verified; cusp support requires positive definiteness everywhere.
template <typename Coeff>
bool check_support(const FourierExpansion<Coeff>& f, SupportMode mode) {
    for (const auto& [h, c] : f.coeffs()) {
        if (mode == SupportMode::holomorphic) {
            if (!is_psd_exact(h.matrix())) return false;
        } else {
            if (!is_pd_exact(h.matrix())) return false;
        }
    }
    return true;
}

// --- coefficient ring detection -----------------------------------------------

enum class CoeffRing { integers, integers_inv_n, rationals, imag_quadratic, numeric };

struct RingDescriptor {
    CoeffRing kind;
    Integer n{1};       // for Z[1/N]
    std::uint64_t d{0};  // for Q(sqrt(-d))

    std::string str() const {
        switch (kind) {
            case CoeffRing::integers: return "Z";
            case CoeffRing::integers_inv_n: return "Z[1/" + n.get_str() + "]";
            case CoeffRing::rationals: return "Q";
            case CoeffRing::imag_quadratic: return "Q(sqrt(-" + std::to_string(d) + "))";
            default: return "numeric";
        }
    }
    friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
        return a.kind == b.kind && a.n == b.n && a.d == b.d;
    }
};

// Denominator lcms beyond this are reported as Q rather than Z[1/N].
inline constexpr std::uint64_t kRingDetectDenominatorLimit = 1000000;

inline RingDescriptor detect_ring_rational(const std::vector<Rational>& values) {
    Integer l(1);
    for (const auto& v : values) l = lcm(l, v.den());
    if (l == 1) return {CoeffRing::integers, Integer(1), 0};
    if (l <= Integer(static_cast<unsigned long>(kRingDetectDenominatorLimit)))
        return {CoeffRing::integers_inv_n, l, 0};
    return {CoeffRing::rationals, Integer(1), 0};
}

/// Continued-fraction rational reconstruction with height bound; returns
/// nothing when x is not well-approximated by any bounded-height rational.
inline std::optional<Rational> reconstruct_rational(const BigFloat& x, const Integer& height_bound) {
    long prec = x.prec();
    // acceptance window: agree to better than 2^-(3 prec/4)
    BigFloat tol = BigFloat(2, prec).pow_int(-(3 * prec / 4));
    BigFloat rest = x;
    Integer p_prev(0), q_prev(1), p(1), q(0);  // p_{-2}, q_{-2}, p_{-1}, q_{-1}
    for (int iter = 0; iter < 200; ++iter) {
        BigFloat fl(0.0, prec);
        mpfr_floor(fl.raw(), rest.raw());
        Integer a;
        mpfr_get_z(a.get_mpz_t(), fl.raw(), MPFR_RNDN);
        Integer p_new = a * p + p_prev;
        Integer q_new = a * q + q_prev;
        if (q_new > height_bound || abs(p_new) > height_bound) break;
        p_prev = p;
        q_prev = q;
        p = p_new;
        q = q_new;
        Rational cand(p, q);
        BigFloat err = (x - BigFloat::from_rational(cand, prec)).abs();
        if (err < tol) return cand;
        BigFloat frac = rest - fl;
        if (frac.is_zero()) break;
        rest = BigFloat(1, prec) / frac;
    }
    return std::nullopt;
}

/// Reconstruction at the native precision and at a reduced precision must
/// agree before a value is reported; instability is flagged, not guessed.
inline std::optional<Rational> reconstruct_stable(const BigFloat& x, const Integer& height_bound) {
    auto full = reconstruct_rational(x, height_bound);
    if (!full) return std::nullopt;
    long reduced_prec = std::max<long>(24, x.prec() / 2);
    BigFloat xr = BigFloat::with_prec(reduced_prec) + x;  // rounds to reduced precision
    auto reduced = reconstruct_rational(xr, height_bound);
    if (!reduced || *reduced != *full) return std::nullopt;
    return full;
}

template <typename Coeff>
RingDescriptor detect_coefficient_ring(const FourierExpansion<Coeff>& f) {
    if constexpr (std::is_same_v<Coeff, Rational>) {
        std::vector<Rational> vals;
        for (const auto& [h, c] : f.coeffs()) vals.push_back(c);
        return detect_ring_rational(vals);
    } else if constexpr (std::is_same_v<Coeff, FieldElem>) {
        bool imaginary = false;
        std::vector<Rational> vals;
        for (const auto& [h, c] : f.coeffs()) {
            if (!c.b().is_zero()) imaginary = true;
            vals.push_back(c.a());
            vals.push_back(c.b());
        }
        if (imaginary) return {CoeffRing::imag_quadratic, Integer(1), f.lattice().d()};
        return detect_ring_rational(vals);
    } else {
        static_assert(std::is_same_v<Coeff, BigComplex>);
        Integer height(1000000);
        std::vector<Rational> vals;
        std::uint64_t d = f.lattice().d();
        long prec = kDefaultPrecisionBits;
        for (const auto& [h, c] : f.coeffs()) prec = std::min(prec, c.prec());
        BigFloat sqrt_d = BigFloat::from_integer(Integer(d), prec).sqrt();
        bool imaginary = false;
        for (const auto& [h, c] : f.coeffs()) {
            auto re = reconstruct_stable(c.re(), height);
            if (!re) return {CoeffRing::numeric, Integer(1), 0};
            vals.push_back(*re);
            if (!c.im().is_zero()) {
                auto b = reconstruct_stable(c.im() / sqrt_d, height);
                if (!b) return {CoeffRing::numeric, Integer(1), 0};
                if (!b->is_zero()) imaginary = true;
                vals.push_back(*b);
            }
        }
        if (imaginary) return {CoeffRing::imag_quadratic, Integer(1), d};
        return detect_ring_rational(vals);
    }
}

// --- n = 1 specialization -----------------------------------------------------

/// Classical q-expansion view of an n = 1 expansion on the lattice Z.
inline std::vector<Rational> to_classical(const FourierExpansion<Rational>& f) {
    if (f.lattice().n() != 1) throw std::invalid_argument("to_classical: lattice is not 1x1");
    Integer b = f.trace_bound().floor();
    std::vector<Rational> out(static_cast<std::size_t>(b.get_ui()) + 1, Rational(0));
    for (const auto& [h, c] : f.coeffs()) {
        Rational t = h.trace();
        if (!t.is_integer()) throw std::invalid_argument("to_classical: non-integer index");
        out[static_cast<std::size_t>(t.num().get_ui())] = c;
    }
    return out;
}

inline FourierExpansion<Rational> from_classical(std::uint64_t d, const std::vector<Rational>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("from_classical: empty");
    HermLattice lat = scalar_lattice(d, Rational(1));
    FourierExpansion<Rational> f(lat, Rational(Integer(coeffs.size() - 1)));
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        if (coeffs[n].is_zero()) continue;
        FieldMatrix m(1, 1, FieldElem::rational(d, Rational(Integer(n))));
        f.set(HermIndex(m), coeffs[n]);
    }
    return f;
}

}  // namespace unitaria
