// Arbitrary-precision floating point and complex numbers on top of MPFR.
//
// Every value carries its working precision in bits; binary operations
// produce a result at the minimum precision of the operands, so a
// low-precision input can never masquerade as a high-precision result.
#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "unitaria/rational.hpp"

namespace unitaria {

inline constexpr long kDefaultPrecisionBits = 128;

class BigFloat {
  public:
    BigFloat() : BigFloat(0.0, kDefaultPrecisionBits) {}
    explicit BigFloat(double x, long prec = kDefaultPrecisionBits) {
        init(prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigFloat(long x, long prec) {
        init(prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    BigFloat(int x, long prec) : BigFloat(static_cast<long>(x), prec) {}

    static BigFloat with_prec(long prec) { return BigFloat(0.0, prec); }
    static BigFloat from_rational(const Rational& r, long prec) {
        BigFloat f = with_prec(prec);
        mpfr_set_q(f.v_, r.mpq().get_mpq_t(), MPFR_RNDN);
        return f;
    }
    static BigFloat from_integer(const Integer& n, long prec) {
        BigFloat f = with_prec(prec);
        mpfr_set_z(f.v_, n.get_mpz_t(), MPFR_RNDN);
        return f;
    }
    static BigFloat pi(long prec) {
        BigFloat f = with_prec(prec);
        mpfr_const_pi(f.v_, MPFR_RNDN);
        return f;
    }

    BigFloat(const BigFloat& o) {
        init(o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, o.prec());
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.prec());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r = with_prec(std::min(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r = with_prec(std::min(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r = with_prec(std::min(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r = with_prec(std::min(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r = with_prec(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { *this = *this + o; return *this; }
    BigFloat& operator-=(const BigFloat& o) { *this = *this - o; return *this; }
    BigFloat& operator*=(const BigFloat& o) { *this = *this * o; return *this; }
    BigFloat& operator/=(const BigFloat& o) { *this = *this / o; return *this; }

    friend BigFloat operator*(const BigFloat& a, long b) { return a * BigFloat(b, a.prec()); }
    friend BigFloat operator*(long a, const BigFloat& b) { return BigFloat(a, b.prec()) * b; }
    friend BigFloat operator/(const BigFloat& a, long b) { return a / BigFloat(b, a.prec()); }
    friend BigFloat operator+(const BigFloat& a, long b) { return a + BigFloat(b, a.prec()); }
    friend BigFloat operator-(const BigFloat& a, long b) { return a - BigFloat(b, a.prec()); }
    friend BigFloat operator-(long a, const BigFloat& b) { return BigFloat(a, b.prec()) - b; }

    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) != 0; }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }

    BigFloat abs() const {
        BigFloat r = with_prec(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        BigFloat r = with_prec(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat exp() const {
        BigFloat r = with_prec(prec());
        mpfr_exp(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat log() const {
        BigFloat r = with_prec(prec());
        mpfr_log(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat sin() const {
        BigFloat r = with_prec(prec());
        mpfr_sin(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat cos() const {
        BigFloat r = with_prec(prec());
        mpfr_cos(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat pow_int(long e) const {
        BigFloat r = with_prec(prec());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }
    // x^y = exp(y log x), x > 0.
    BigFloat pow(const BigFloat& y) const {
        BigFloat r = with_prec(std::min(prec(), y.prec()));
        mpfr_pow(r.v_, v_, y.v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Deterministic decimal rendering at full working precision.
    std::string str() const {
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
        if (is_zero()) return "0";
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
        std::string digits(s);
        mpfr_free_str(s);
        std::string sign_part;
        if (digits[0] == '-') {
            sign_part = "-";
            digits.erase(0, 1);
        }
        // digits = d1 d2 d3 ..., value = 0.d1d2... * 10^e
        std::string out = sign_part + digits.substr(0, 1) + "." + digits.substr(1);
        out += "e" + std::to_string(static_cast<long>(e) - 1);
        return out;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    void init(long prec) {
        if (prec < 2) throw std::domain_error("BigFloat: precision too small");
        mpfr_init2(v_, prec);
    }
    mpfr_t v_;
};

inline BigFloat abs(const BigFloat& x) { return x.abs(); }
inline BigFloat sqrt(const BigFloat& x) { return x.sqrt(); }

/// Complex number with BigFloat components; precision = min of parts.
class BigComplex {
  public:
    BigComplex() = default;
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit BigComplex(double re, double im = 0.0, long prec = kDefaultPrecisionBits)
        : re_(re, prec), im_(im, prec) {}

    static BigComplex zero(long prec) { return BigComplex(BigFloat::with_prec(prec), BigFloat::with_prec(prec)); }
    static BigComplex one(long prec) { return BigComplex(BigFloat(1.0, prec), BigFloat::with_prec(prec)); }
    static BigComplex i(long prec) { return BigComplex(BigFloat::with_prec(prec), BigFloat(1.0, prec)); }
    static BigComplex from_rational(const Rational& r, long prec) {
        return BigComplex(BigFloat::from_rational(r, prec), BigFloat::with_prec(prec));
    }

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    long prec() const { return std::min(re_.prec(), im_.prec()); }

    BigComplex conj() const { return BigComplex(re_, -im_); }
    BigFloat norm() const { return re_ * re_ + im_ * im_; }
    BigFloat abs() const { return norm().sqrt(); }

    BigComplex operator-() const { return BigComplex(-re_, -im_); }
    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend BigComplex operator*(const BigComplex& a, const BigFloat& s) {
        return BigComplex(a.re_ * s, a.im_ * s);
    }
    friend BigComplex operator*(const BigFloat& s, const BigComplex& a) { return a * s; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n = b.norm();
        if (n.is_zero()) throw std::domain_error("BigComplex: division by zero");
        BigComplex t = a * b.conj();
        return BigComplex(t.re_ / n, t.im_ / n);
    }
    friend BigComplex operator/(const BigComplex& a, const BigFloat& s) {
        return BigComplex(a.re_ / s, a.im_ / s);
    }
    BigComplex& operator+=(const BigComplex& o) { *this = *this + o; return *this; }
    BigComplex& operator-=(const BigComplex& o) { *this = *this - o; return *this; }
    BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }
    BigComplex& operator/=(const BigComplex& o) { *this = *this / o; return *this; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const BigComplex& a, const BigComplex& b) { return !(a == b); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    BigComplex inverse() const { return one(prec()) / *this; }

    BigComplex pow_int(long e) const {
        if (e < 0) return inverse().pow_int(-e);
        BigComplex acc = one(prec());
        BigComplex base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    // exp(z) = exp(re) (cos im + i sin im)
    BigComplex exp() const {
        BigFloat m = re_.exp();
        return BigComplex(m * im_.cos(), m * im_.sin());
    }

    std::string str() const { return re_.str() + (im_.sign() < 0 ? " - " : " + ") + im_.abs().str() + "i"; }

  private:
    BigFloat re_, im_;
};

inline BigComplex conj(const BigComplex& z) { return z.conj(); }

// e^{2 pi i t} at the given precision.
inline BigComplex unit_circle_point(const Rational& t, long prec) {
    BigFloat angle = BigFloat(2, prec) * BigFloat::pi(prec) * BigFloat::from_rational(t, prec);
    return BigComplex(angle.cos(), angle.sin());
}

}  // namespace unitaria
