// Small dense matrices over the toolkit's scalar types.
//
// Sizes here are tiny (n <= 8 or so); everything is straightforward
// Gaussian elimination, exact over Rational/FieldElem, pivoted by absolute
// value over BigComplex.
#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "unitaria/bigfloat.hpp"
#include "unitaria/field_elem.hpp"
#include "unitaria/rational.hpp"

namespace unitaria {

template <typename T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& one, const T& zero) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: size mismatch in product");
        Matrix r(a.rows_, b.cols_);
        // Seed each accumulator from the first product so precision tags
        // propagate instead of being clipped by a default-constructed zero.
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (a.cols_ == 0) continue;
                T acc = a(i, 0) * b(0, j);
                for (std::size_t k = 1; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
                r(i, j) = std::move(acc);
            }
        return r;
    }
    Matrix operator*(const T& s) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x * s;
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix conj_transpose() const {
        using unitaria::conj;
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = conj((*this)(i, j));
        return r;
    }

    T trace() const {
        if (!is_square()) throw std::invalid_argument("Matrix: trace of non-square");
        if (rows_ == 0) return T{};
        T t = (*this)(0, 0);
        for (std::size_t i = 1; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    const std::vector<T>& data() const { return data_; }

  private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

// Exact determinant over a field (Rational or FieldElem); T() must be zero.
template <typename T>
T det_exact(Matrix<T> m) {
    if (!m.is_square()) throw std::invalid_argument("det: non-square");
    std::size_t n = m.rows();
    if (n == 0) throw std::invalid_argument("det: empty matrix");
    bool neg = false;
    std::vector<T> pivots;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) return T();
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            neg = !neg;
        }
        pivots.push_back(m(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            T f = m(i, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    T det = pivots[0];
    for (std::size_t k = 1; k < n; ++k) det *= pivots[k];
    return neg ? -det : det;
}

// Exact inverse over a field; throws on singular input.
template <typename T>
Matrix<T> inverse_exact(Matrix<T> m, const T& one) {
    if (!m.is_square()) throw std::invalid_argument("inverse: non-square");
    std::size_t n = m.rows();
    Matrix<T> inv = Matrix<T>::identity(n, one, T());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) throw std::domain_error("inverse: singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        T p = m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m(i, col).is_zero()) continue;
            T f = m(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

using ComplexMatrix = Matrix<BigComplex>;

inline ComplexMatrix complex_identity(std::size_t n, long prec) {
    return ComplexMatrix::identity(n, BigComplex::one(prec), BigComplex::zero(prec));
}

// LU-based solve with partial pivoting; returns X with A X = B.
inline ComplexMatrix solve_complex(ComplexMatrix a, ComplexMatrix b) {
    if (!a.is_square() || a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    std::size_t n = a.rows(), m = b.cols();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        BigFloat best = a(col, col).abs();
        for (std::size_t i = col + 1; i < n; ++i) {
            BigFloat cand = a(i, col).abs();
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best.is_zero()) throw std::domain_error("solve: numerically singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            for (std::size_t j = 0; j < m; ++j) std::swap(b(piv, j), b(col, j));
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            BigComplex f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            for (std::size_t j = 0; j < m; ++j) b(i, j) -= f * b(col, j);
        }
    }
    ComplexMatrix x(n, m, BigComplex::zero(a(0, 0).prec()));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = 0; j < m; ++j) {
            BigComplex s = b(i, j);
            for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x(k, j);
            x(i, j) = s / a(i, i);
        }
    }
    return x;
}

inline ComplexMatrix inverse_complex(const ComplexMatrix& a) {
    return solve_complex(a, complex_identity(a.rows(), a.rows() ? a(0, 0).prec() : kDefaultPrecisionBits));
}

inline BigComplex det_complex(ComplexMatrix a) {
    if (!a.is_square()) throw std::invalid_argument("det: non-square");
    std::size_t n = a.rows();
    if (n == 0) return BigComplex(1.0);
    long prec = a(0, 0).prec();
    BigComplex det = BigComplex::one(prec);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        BigFloat best = a(col, col).abs();
        for (std::size_t i = col + 1; i < n; ++i) {
            BigFloat cand = a(i, col).abs();
            if (cand > best) {
                best = cand;
                piv = i;
            }
        }
        if (best.is_zero()) return BigComplex::zero(prec);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            BigComplex f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

inline BigFloat max_abs_entry(const ComplexMatrix& m) {
    BigFloat best(0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            BigFloat a = m(i, j).abs();
            if (a > best) best = a;
        }
    return best;
}

}  // namespace unitaria
