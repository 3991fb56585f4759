// Finite-field verifier for the doubling method's orbit decomposition:
// Hermitian spaces over F_{q^2}, brute-force unitary groups, maximal
// isotropic subspaces of the doubled space, orbit labels d = dim(L cap V+),
// stabilizers, and the constructive negligibility certificate N+ x N-.
//
// Everything is table-driven and exhaustively enumerated under hard budget
// caps: this module is a verifier at small (n, q), not a group library.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitaria/primes.hpp"

namespace unitaria {

struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// F_{q^2} = F_q[t]/(t^2 + c1 t + c0) with log-free full operation tables;
/// elements are indices a + q*b for a + b t.  Conjugation is x -> x^q.
class GF2 {
  public:
    explicit GF2(std::uint64_t q) : q_(q), size_(q * q) {
        if (!is_prime(q) || q > 13) throw std::invalid_argument("GF2: q must be a small prime");
        // find an irreducible monic quadratic t^2 + c1 t + c0
        bool found = false;
        for (std::uint64_t c1 = 0; c1 < q && !found; ++c1)
            for (std::uint64_t c0 = 0; c0 < q && !found; ++c0) {
                bool has_root = false;
                for (std::uint64_t t = 0; t < q; ++t)
                    if ((t * t + c1 * t + c0) % q == 0) has_root = true;
                if (!has_root) {
                    c1_ = c1;
                    c0_ = c0;
                    found = true;
                }
            }
        if (!found) throw std::logic_error("GF2: no irreducible quadratic found");
        build_tables();
    }

    static const GF2& get(std::uint64_t q) {
        static std::map<std::uint64_t, GF2> cache;
        static std::mutex mu;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(q);
        if (it == cache.end()) it = cache.emplace(q, GF2(q)).first;
        return it->second;
    }

    std::uint64_t q() const { return q_; }
    std::size_t size() const { return size_; }

    std::uint8_t add(std::uint8_t x, std::uint8_t y) const { return add_[x * size_ + y]; }
    std::uint8_t sub(std::uint8_t x, std::uint8_t y) const { return add_[x * size_ + neg_[y]]; }
    std::uint8_t mul(std::uint8_t x, std::uint8_t y) const { return mul_[x * size_ + y]; }
    std::uint8_t neg(std::uint8_t x) const { return neg_[x]; }
    std::uint8_t inv(std::uint8_t x) const {
        if (x == 0) throw std::domain_error("GF2: inverse of zero");
        return inv_[x];
    }
    std::uint8_t conj(std::uint8_t x) const { return conj_[x]; }
    std::uint8_t one() const { return 1; }

    std::uint8_t pow(std::uint8_t x, std::uint64_t e) const {
        std::uint8_t acc = 1;
        while (e) {
            if (e & 1) acc = mul(acc, x);
            x = mul(x, x);
            e >>= 1;
        }
        return acc;
    }

  private:
    void build_tables() {
        add_.resize(size_ * size_);
        mul_.resize(size_ * size_);
        neg_.resize(size_);
        inv_.resize(size_, 0);
        conj_.resize(size_);
        auto a_of = [&](std::uint8_t x) { return x % q_; };
        auto b_of = [&](std::uint8_t x) { return x / q_; };
        auto enc = [&](std::uint64_t a, std::uint64_t b) {
            return static_cast<std::uint8_t>(a % q_ + q_ * (b % q_));
        };
        for (std::size_t x = 0; x < size_; ++x) {
            neg_[x] = enc(q_ - a_of(x), q_ - b_of(x));
            for (std::size_t y = 0; y < size_; ++y) {
                add_[x * size_ + y] = enc(a_of(x) + a_of(y), b_of(x) + b_of(y));
                // (a + bt)(c + dt) = ac + (ad + bc) t + bd t^2,
                // t^2 = -c1 t - c0
                std::uint64_t a = a_of(x), b = b_of(x), c = a_of(y), d = b_of(y);
                std::uint64_t lo = a * c + b * d % q_ * ((q_ - c0_) % q_);
                std::uint64_t hi = a * d + b * c + b * d % q_ * ((q_ - c1_) % q_);
                mul_[x * size_ + y] = enc(lo, hi);
            }
        }
        for (std::size_t x = 1; x < size_; ++x) {
            conj_[x] = pow(static_cast<std::uint8_t>(x), q_);
            for (std::size_t y = 1; y < size_; ++y)
                if (mul_[x * size_ + y] == 1) inv_[x] = static_cast<std::uint8_t>(y);
        }
        conj_[0] = 0;
    }

    std::uint64_t q_, c0_ = 0, c1_ = 0;
    std::size_t size_;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_, conj_;
};

/// Dense matrix over F_{q^2} with explicit field context.
struct FMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> v;

    FMat() = default;
    FMat(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0) {}
    std::uint8_t& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
    std::uint8_t at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
    friend bool operator==(const FMat& x, const FMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.v == y.v;
    }
    friend bool operator<(const FMat& x, const FMat& y) { return x.v < y.v; }
};

inline FMat f_identity(std::size_t n) {
    FMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

inline FMat f_mul(const GF2& F, const FMat& a, const FMat& b) {
    if (a.cols != b.rows) throw std::invalid_argument("f_mul: shape mismatch");
    FMat out(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            std::uint8_t aik = a.at(i, k);
            if (!aik) continue;
            for (std::size_t j = 0; j < b.cols; ++j)
                out.at(i, j) = F.add(out.at(i, j), F.mul(aik, b.at(k, j)));
        }
    return out;
}

inline FMat f_conj_transpose(const GF2& F, const FMat& a) {
    FMat out(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) out.at(j, i) = F.conj(a.at(i, j));
    return out;
}

/// In-place reduced row echelon form; returns the rank.  The fixed element
/// order makes this a canonical form for row spans.
inline std::size_t f_rref(const GF2& F, FMat& m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t piv = rank;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        std::uint8_t inv = F.inv(m.at(rank, col));
        for (std::size_t j = 0; j < m.cols; ++j) m.at(rank, j) = F.mul(m.at(rank, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == rank || m.at(i, col) == 0) continue;
            std::uint8_t f = m.at(i, col);
            for (std::size_t j = 0; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

inline FMat f_inverse(const GF2& F, const FMat& a) {
    std::size_t n = a.rows;
    FMat work(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) work.at(i, j) = a.at(i, j);
        work.at(i, n + i) = 1;
    }
    if (f_rref(F, work) != n) throw std::domain_error("f_inverse: singular");
    FMat out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = work.at(i, n + j);
    return out;
}

/// Nondegenerate Hermitian space over F_{q^2}: gram = conj-transpose(gram).
class FiniteHermSpace {
  public:
    FiniteHermSpace(std::uint64_t q, FMat gram) : q_(q), gram_(std::move(gram)) {
        const GF2& F = field();
        if (gram_.rows != gram_.cols || gram_.rows == 0)
            throw std::invalid_argument("FiniteHermSpace: Gram must be square, nonempty");
        if (!(f_conj_transpose(F, gram_) == gram_))
            throw std::invalid_argument("FiniteHermSpace: Gram not Hermitian under x -> x^q");
        FMat copy = gram_;
        if (f_rref(F, copy) != gram_.rows) throw std::domain_error("FiniteHermSpace: degenerate Gram");
    }

    std::uint64_t q() const { return q_; }
    std::size_t n() const { return gram_.rows; }
    const FMat& gram() const { return gram_; }
    const GF2& field() const { return GF2::get(q_); }

  private:
    std::uint64_t q_;
    FMat gram_;
};

/// Identity Gram of size n over F_{q^2}.
inline FiniteHermSpace standard_finite_space(std::uint64_t q, std::size_t n) {
    return FiniteHermSpace(q, f_identity(n));
}

/// Block-diagonal (A, -A): the doubled pairing < , > + (-< , >).
inline FiniteHermSpace doubled_space(const FiniteHermSpace& v) {
    const GF2& F = v.field();
    std::size_t n = v.n();
    FMat g(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            g.at(i, j) = v.gram().at(i, j);
            g.at(n + i, n + j) = F.neg(v.gram().at(i, j));
        }
    return FiniteHermSpace(v.q(), std::move(g));
}

inline constexpr std::uint64_t kDefaultEnumBudget = 2000000;

/// All g with g A conj-transpose(g) = A, by exhaustive enumeration of the
/// q^{2 n^2} candidate matrices.
inline std::vector<FMat> unitary_elements(const FiniteHermSpace& space,
                                          std::uint64_t budget = kDefaultEnumBudget) {
    const GF2& F = space.field();
    std::size_t n = space.n();
    std::size_t cells = n * n;
    double total = 1;
    for (std::size_t i = 0; i < cells; ++i) total *= static_cast<double>(F.size());
    if (total > static_cast<double>(budget))
        throw BudgetExceededError("unitary_elements: q^(2n^2) exceeds the enumeration budget");

    std::vector<FMat> out;
    FMat g(n, n);
    std::vector<std::size_t> digits(cells, 0);
    for (;;) {
        for (std::size_t c = 0; c < cells; ++c) g.v[c] = static_cast<std::uint8_t>(digits[c]);
        if (f_mul(F, f_mul(F, g, space.gram()), f_conj_transpose(F, g)) == space.gram()) out.push_back(g);
        std::size_t c = 0;
        while (c < cells && digits[c] + 1 == F.size()) digits[c++] = 0;
        if (c == cells) break;
        ++digits[c];
    }
    return out;
}

/// Subspace of the doubled space in canonical reduced-row-echelon form.
struct IsotropicSubspace {
    FMat basis;  // dim x 2n, RREF
    std::size_t dim() const { return basis.rows; }
};

/// All maximal isotropic (dimension n) subspaces of the 2n-dimensional
/// doubled space, via the RREF parametrization of n-dimensional subspaces:
/// choose pivot columns, then fill the free cells.
inline std::vector<IsotropicSubspace> maximal_isotropic(const FiniteHermSpace& w,
                                                        std::uint64_t budget = kDefaultEnumBudget) {
    const GF2& F = w.field();
    if (w.n() % 2) throw std::invalid_argument("maximal_isotropic: doubled space has even dimension");
    std::size_t two_n = w.n(), n = two_n / 2;

    std::vector<IsotropicSubspace> out;
    std::uint64_t visited = 0;

    // iterate over pivot-column subsets of size n
    std::vector<std::size_t> pivots(n);
    for (std::size_t i = 0; i < n; ++i) pivots[i] = i;
    auto next_subset = [&]() {
        std::size_t i = n;
        while (i-- > 0) {
            if (pivots[i] + (n - i) < two_n) {
                ++pivots[i];
                for (std::size_t j = i + 1; j < n; ++j) pivots[j] = pivots[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    do {
        // free cells: row i, columns beyond pivots[i] that are not pivots
        std::vector<std::pair<std::size_t, std::size_t>> free_cells;
        std::vector<bool> is_pivot(two_n, false);
        for (std::size_t p : pivots) is_pivot[p] = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = pivots[i] + 1; c < two_n; ++c)
                if (!is_pivot[c]) free_cells.emplace_back(i, c);

        std::vector<std::size_t> digits(free_cells.size(), 0);
        for (;;) {
            if (++visited > budget)
                throw BudgetExceededError("maximal_isotropic: enumeration budget exceeded");
            FMat b(n, two_n);
            for (std::size_t i = 0; i < n; ++i) b.at(i, pivots[i]) = 1;
            for (std::size_t c = 0; c < free_cells.size(); ++c)
                b.at(free_cells[c].first, free_cells[c].second) = static_cast<std::uint8_t>(digits[c]);
            FMat pairing = f_mul(F, f_mul(F, b, w.gram()), f_conj_transpose(F, b));
            bool isotropic = true;
            for (std::uint8_t x : pairing.v)
                if (x) {
                    isotropic = false;
                    break;
                }
            if (isotropic) out.push_back({b});

            std::size_t c = 0;
            while (c < digits.size() && digits[c] + 1 == F.size()) digits[c++] = 0;
            if (c == digits.size()) break;
            ++digits[c];
        }
    } while (next_subset());

    std::sort(out.begin(), out.end(), [](const IsotropicSubspace& a, const IsotropicSubspace& b) {
        return a.basis < b.basis;
    });
    return out;
}

/// The diagonal embedding V^Delta = {(v, v)}.
inline IsotropicSubspace diagonal_subspace(const GF2& F, std::size_t n) {
    FMat b(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        b.at(i, i) = 1;
        b.at(i, n + i) = 1;
    }
    f_rref(F, b);
    return {b};
}

/// (g, h) acting on row spans: L -> L diag(g, h), recanonicalized.
inline IsotropicSubspace act_pair(const GF2& F, const IsotropicSubspace& l, const FMat& g, const FMat& h) {
    std::size_t n = g.rows;
    FMat m(l.basis.rows, 2 * n);
    // right-multiply by diag(g, h) blockwise
    for (std::size_t i = 0; i < l.basis.rows; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::uint8_t accl = 0, accr = 0;
            for (std::size_t k = 0; k < n; ++k) {
                accl = F.add(accl, F.mul(l.basis.at(i, k), g.at(k, j)));
                accr = F.add(accr, F.mul(l.basis.at(i, n + k), h.at(k, j)));
            }
            m.at(i, j) = accl;
            m.at(i, n + j) = accr;
        }
    f_rref(F, m);
    return {m};
}

/// dim(L cap V+) where V+ is the span of the first n coordinates:
/// dim L + n - rank([L; V+]).
inline std::size_t intersection_label(const GF2& F, const IsotropicSubspace& l) {
    std::size_t two_n = l.basis.cols, n = two_n / 2;
    FMat stack(l.basis.rows + n, two_n);
    for (std::size_t i = 0; i < l.basis.rows; ++i)
        for (std::size_t j = 0; j < two_n; ++j) stack.at(i, j) = l.basis.at(i, j);
    for (std::size_t i = 0; i < n; ++i) stack.at(l.basis.rows + i, i) = 1;
    std::size_t rank = f_rref(F, stack);
    return l.basis.rows + n - rank;
}

/// Same with V- (last n coordinates).
inline std::size_t intersection_label_minus(const GF2& F, const IsotropicSubspace& l) {
    std::size_t two_n = l.basis.cols, n = two_n / 2;
    FMat stack(l.basis.rows + n, two_n);
    for (std::size_t i = 0; i < l.basis.rows; ++i)
        for (std::size_t j = 0; j < two_n; ++j) stack.at(i, j) = l.basis.at(i, j);
    for (std::size_t i = 0; i < n; ++i) stack.at(l.basis.rows + i, n + i) = 1;
    std::size_t rank = f_rref(F, stack);
    return l.basis.rows + n - rank;
}

struct Orbit {
    std::size_t label;                    // d = dim(L cap V+)
    std::vector<IsotropicSubspace> members;
    IsotropicSubspace representative;
};

struct OrbitDecomposition {
    std::vector<Orbit> orbits;  // sorted by label
    std::size_t total;
};

/// Orbits of U(V) x U(V) on the maximal isotropic subspaces, with their
/// labels; verifies that each orbit carries exactly one label and that each
/// label class X_d is a single orbit.
inline OrbitDecomposition classify_orbits(const FiniteHermSpace& w, const std::vector<FMat>& group,
                                          std::uint64_t budget = kDefaultEnumBudget) {
    const GF2& F = w.field();
    auto all = maximal_isotropic(w, budget);
    std::map<FMat, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) index[all[i].basis] = i;

    std::vector<int> orbit_of(all.size(), -1);
    std::vector<Orbit> orbits;
    for (std::size_t seed = 0; seed < all.size(); ++seed) {
        if (orbit_of[seed] >= 0) continue;
        int id = static_cast<int>(orbits.size());
        std::vector<std::size_t> frontier{seed};
        orbit_of[seed] = id;
        std::vector<std::size_t> members{seed};
        while (!frontier.empty()) {
            std::size_t cur = frontier.back();
            frontier.pop_back();
            for (const FMat& g : group)
                for (const FMat& h : group) {
                    IsotropicSubspace moved = act_pair(F, all[cur], g, h);
                    std::size_t idx = index.at(moved.basis);
                    if (orbit_of[idx] < 0) {
                        orbit_of[idx] = id;
                        frontier.push_back(idx);
                        members.push_back(idx);
                    }
                }
        }
        Orbit orb;
        orb.label = intersection_label(F, all[seed]);
        orb.representative = all[seed];
        for (std::size_t m : members) {
            orb.members.push_back(all[m]);
            if (intersection_label(F, all[m]) != orb.label)
                throw std::logic_error("classify_orbits: mixed labels inside an orbit");
        }
        orbits.push_back(std::move(orb));
    }
    std::sort(orbits.begin(), orbits.end(), [](const Orbit& a, const Orbit& b) { return a.label < b.label; });
    std::set<std::size_t> seen;
    for (const auto& o : orbits)
        if (!seen.insert(o.label).second)
            throw std::logic_error("classify_orbits: a label class split into several orbits");
    return {std::move(orbits), all.size()};
}

/// All (g, h) fixing L as a set.
inline std::vector<std::pair<FMat, FMat>> stabilizer(const FiniteHermSpace& w,
                                                     const std::vector<FMat>& group,
                                                     const IsotropicSubspace& l) {
    const GF2& F = w.field();
    FMat canon = l.basis;
    f_rref(F, canon);
    std::vector<std::pair<FMat, FMat>> out;
    for (const FMat& g : group)
        for (const FMat& h : group)
            if (act_pair(F, l, g, h).basis == canon) out.emplace_back(g, h);
    return out;
}

struct NegligibilityReport {
    bool negligible;
    std::string reason;
    std::vector<std::pair<FMat, FMat>> witness;  // the subgroup N+ x N-
};

namespace detail_ff {

// basis (rows) of the left/right projection pi^{pm}(L) inside V, and of
// L^{pm} = L cap V^{pm} viewed inside V.
inline FMat projection_basis(const GF2& F, const IsotropicSubspace& l, bool plus) {
    std::size_t two_n = l.basis.cols, n = two_n / 2;
    FMat proj(l.basis.rows, n);
    for (std::size_t i = 0; i < l.basis.rows; ++i)
        for (std::size_t j = 0; j < n; ++j) proj.at(i, j) = l.basis.at(i, plus ? j : n + j);
    f_rref(F, proj);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < proj.rows; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (proj.at(i, j)) {
                rank = i + 1;
                break;
            }
    FMat out(rank, n);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = proj.at(i, j);
    return out;
}

inline FMat cap_basis(const GF2& F, const IsotropicSubspace& l, bool plus) {
    // vectors of L whose other-side block vanishes
    std::size_t two_n = l.basis.cols, n = two_n / 2;
    std::size_t r = l.basis.rows;
    // kernel of the other-side block as a map on coefficient vectors
    FMat other(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) other.at(i, j) = l.basis.at(i, plus ? n + j : j);
    // solve x * other = 0 by rref of transpose-augmented system
    FMat tr(n, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) tr.at(j, i) = other.at(i, j);
    FMat work = tr;
    std::size_t rank = f_rref(F, work);
    // free coordinates give the kernel basis
    std::vector<std::size_t> pivot_col(rank);
    std::vector<bool> is_pivot(r, false);
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < r; ++j)
            if (work.at(i, j)) {
                pivot_col[i] = j;
                is_pivot[j] = true;
                break;
            }
    }
    std::vector<std::vector<std::uint8_t>> kernel;
    for (std::size_t freec = 0; freec < r; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<std::uint8_t> x(r, 0);
        x[freec] = 1;
        for (std::size_t i = 0; i < rank; ++i)
            x[pivot_col[i]] = F.neg(work.at(i, freec));
        kernel.push_back(std::move(x));
    }
    // kernel coefficients against the chosen-side block give L^{pm} in V
    FMat side(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) side.at(i, j) = l.basis.at(i, plus ? j : n + j);
    FMat out(kernel.size(), n);
    for (std::size_t kidx = 0; kidx < kernel.size(); ++kidx)
        for (std::size_t j = 0; j < n; ++j) {
            std::uint8_t acc = 0;
            for (std::size_t i = 0; i < r; ++i) acc = F.add(acc, F.mul(kernel[kidx][i], side.at(i, j)));
            out.at(kidx, j) = acc;
        }
    f_rref(F, out);
    return out;
}

inline bool row_in_span(const GF2& F, const FMat& span, const std::vector<std::uint8_t>& row) {
    FMat stack(span.rows + 1, span.cols);
    for (std::size_t i = 0; i < span.rows; ++i)
        for (std::size_t j = 0; j < span.cols; ++j) stack.at(i, j) = span.at(i, j);
    for (std::size_t j = 0; j < span.cols; ++j) stack.at(span.rows, j) = row[j];
    FMat base = span;
    return f_rref(F, stack) == f_rref(F, base);
}

// Elements of U(V) inducing the identity on the graded pieces of
// V > middle > bottom: the unipotent radical of the flag stabilizer.
inline std::vector<FMat> flag_unipotent(const GF2& F, const std::vector<FMat>& group, const FMat& middle,
                                        const FMat& bottom) {
    std::size_t n = group.front().rows;
    std::vector<FMat> out;
    for (const FMat& g : group) {
        bool ok = true;
        // identity on bottom (exactly)
        for (std::size_t i = 0; i < bottom.rows && ok; ++i) {
            std::vector<std::uint8_t> moved(n, 0);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    moved[j] = F.add(moved[j], F.mul(bottom.at(i, k), g.at(k, j)));
            for (std::size_t j = 0; j < n; ++j)
                if (moved[j] != bottom.at(i, j)) ok = false;
        }
        // v g - v in bottom for v in middle
        for (std::size_t i = 0; i < middle.rows && ok; ++i) {
            std::vector<std::uint8_t> diff(n, 0);
            for (std::size_t j = 0; j < n; ++j) {
                std::uint8_t acc = 0;
                for (std::size_t k = 0; k < n; ++k) acc = F.add(acc, F.mul(middle.at(i, k), g.at(k, j)));
                diff[j] = F.sub(acc, middle.at(i, j));
            }
            if (!row_in_span(F, bottom, diff)) ok = false;
        }
        // v g - v in middle for all v
        for (std::size_t i = 0; i < n && ok; ++i) {
            std::vector<std::uint8_t> diff(n, 0);
            for (std::size_t j = 0; j < n; ++j) diff[j] = j == i ? F.sub(g.at(i, j), 1) : g.at(i, j);
            if (!row_in_span(F, middle, diff)) ok = false;
        }
        if (ok) out.push_back(g);
    }
    return out;
}

inline bool is_unipotent(const GF2& F, const FMat& g) {
    std::size_t n = g.rows;
    FMat m = g;
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F.sub(m.at(i, i), 1);
    FMat acc = m;
    for (std::size_t k = 1; k < n; ++k) acc = f_mul(F, acc, m);
    for (std::uint8_t x : acc.v)
        if (x) return false;
    return true;
}

}  // namespace detail_ff

/// Checks the constructive negligibility certificate for an orbit: build
/// N_d = N+ x N- from the flags V > pi^{pm}(L) > L^{pm} of a representative
/// and verify it is a nontrivial normal subgroup of the stabilizer made of
/// unipotent pairs.  Orbits with d = 0 have an improper flag and are not
/// negligible by this recipe; n = 1 has no proper parabolic at all.
inline NegligibilityReport check_negligible(const FiniteHermSpace& w, const std::vector<FMat>& group,
                                            const Orbit& orbit) {
    const GF2& F = w.field();
    std::size_t n = group.front().rows;
    if (n == 1) return {false, "no proper parabolic exists", {}};
    if (orbit.label == 0) return {false, "flag V > pi(L) > L cap V is improper for d = 0", {}};

    const IsotropicSubspace& l = orbit.representative;
    FMat mid_plus = detail_ff::projection_basis(F, l, true);
    FMat bot_plus = detail_ff::cap_basis(F, l, true);
    FMat mid_minus = detail_ff::projection_basis(F, l, false);
    FMat bot_minus = detail_ff::cap_basis(F, l, false);

    std::vector<FMat> n_plus = detail_ff::flag_unipotent(F, group, mid_plus, bot_plus);
    std::vector<FMat> n_minus = detail_ff::flag_unipotent(F, group, mid_minus, bot_minus);
    if (n_plus.size() <= 1 && n_minus.size() <= 1)
        return {false, "constructed unipotent radical is trivial", {}};

    auto stab = stabilizer(w, group, l);
    std::set<std::pair<FMat, FMat>> nd;
    for (const FMat& g : n_plus)
        for (const FMat& h : n_minus) nd.emplace(g, h);

    for (const auto& [g, h] : nd) {
        if (!detail_ff::is_unipotent(F, g) || !detail_ff::is_unipotent(F, h))
            return {false, "constructed element is not unipotent", {}};
        bool in_stab = false;
        for (const auto& s : stab)
            if (s.first == g && s.second == h) {
                in_stab = true;
                break;
            }
        if (!in_stab) return {false, "constructed subgroup does not stabilize L", {}};
    }
    // normality in the stabilizer
    for (const auto& [s1, s2] : stab) {
        FMat s1i = f_inverse(F, s1), s2i = f_inverse(F, s2);
        for (const auto& [g, h] : nd) {
            FMat cg = f_mul(F, f_mul(F, s1i, g), s1);
            FMat ch = f_mul(F, f_mul(F, s2i, h), s2);
            if (!nd.count({cg, ch}))
                return {false, "constructed subgroup is not normal in the stabilizer", {}};
        }
    }
    std::vector<std::pair<FMat, FMat>> witness(nd.begin(), nd.end());
    return {true, "unipotent pairs fixing the projection/intersection flags", std::move(witness)};
}

}  // namespace unitaria
