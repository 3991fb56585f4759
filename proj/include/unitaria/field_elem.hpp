// Elements of an imaginary quadratic field K = Q(sqrt(-d)).
#pragma once

#include <stdexcept>
#include <string>

#include "unitaria/primes.hpp"
#include "unitaria/rational.hpp"

namespace unitaria {

/// x = a + b*sqrt(-d), exact rational coordinates in the basis {1, sqrt(-d)}.
/// d is a squarefree positive integer fixing the field; elements of different
/// fields never mix.
class FieldElem {
  public:
    FieldElem() : d_(1), a_(0), b_(0) {}
    FieldElem(std::uint64_t d, Rational a, Rational b) : d_(d), a_(std::move(a)), b_(std::move(b)) {
        if (d == 0 || !is_squarefree(d))
            throw std::domain_error("FieldElem: d must be a squarefree positive integer");
    }

    static FieldElem rational(std::uint64_t d, Rational a) { return FieldElem(d, std::move(a), Rational(0)); }
    static FieldElem sqrt_minus_d(std::uint64_t d) { return FieldElem(d, Rational(0), Rational(1)); }

    std::uint64_t d() const { return d_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    FieldElem conj() const { return FieldElem(d_, a_, -b_); }
    Rational trace() const { return a_ + a_; }
    Rational norm() const { return a_ * a_ + Rational(Integer(d_)) * b_ * b_; }

    FieldElem operator-() const { return FieldElem(d_, -a_, -b_); }

    FieldElem& operator+=(const FieldElem& o) {
        check(o);
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    FieldElem& operator-=(const FieldElem& o) {
        check(o);
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    FieldElem& operator*=(const FieldElem& o) {
        check(o);
        Rational na = a_ * o.a_ - Rational(Integer(d_)) * b_ * o.b_;
        Rational nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    FieldElem& operator/=(const FieldElem& o) {
        check(o);
        if (o.is_zero()) throw std::domain_error("FieldElem: division by zero");
        FieldElem num = *this * o.conj();
        Rational n = o.norm();
        a_ = num.a_ / n;
        b_ = num.b_ / n;
        return *this;
    }

    friend FieldElem operator+(FieldElem x, const FieldElem& y) { x += y; return x; }
    friend FieldElem operator-(FieldElem x, const FieldElem& y) { x -= y; return x; }
    friend FieldElem operator*(FieldElem x, const FieldElem& y) { x *= y; return x; }
    friend FieldElem operator/(FieldElem x, const FieldElem& y) { x /= y; return x; }

    FieldElem operator*(const Rational& r) const { return FieldElem(d_, a_ * r, b_ * r); }

    friend bool operator==(const FieldElem& x, const FieldElem& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return !(x == y); }

    FieldElem inverse() const {
        if (is_zero()) throw std::domain_error("FieldElem: inverse of zero");
        Rational n = norm();
        return FieldElem(d_, a_ / n, -b_ / n);
    }

    std::string str() const { return a_.str() + (b_.sign() == 0 ? "" : " + (" + b_.str() + ")w"); }

  private:
    void check(const FieldElem& o) const {
        if (d_ != o.d_) throw std::domain_error("FieldElem: mixed fields");
    }
    std::uint64_t d_;
    Rational a_, b_;
};

inline FieldElem conj(const FieldElem& x) { return x.conj(); }

}  // namespace unitaria
