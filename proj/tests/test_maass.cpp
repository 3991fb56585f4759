#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>

#include "unitaria/maass.hpp"

using namespace unitaria;

namespace {

// Finite-difference application of the analytic operator
// (1/(2 pi i)) (lambda/(2iy) + d/dz), with d/dz = (d/dx - i d/dy)/2 by
// central differences, Richardson extrapolated.  Everything in double.
std::complex<double> delta_fd(long lambda, const std::function<std::complex<double>(std::complex<double>)>& f,
                              std::complex<double> z, double h) {
    using C = std::complex<double>;
    auto ddz = [&](double step) {
        C dx = (f(z + C(step, 0)) - f(z - C(step, 0))) / (2 * step);
        C dy = (f(z + C(0, step)) - f(z - C(0, step))) / (2 * step);
        return (dx - C(0, 1) * dy) / 2.0;
    };
    C d1 = ddz(h), d2 = ddz(h / 2);
    C dz = (4.0 * d2 - d1) / 3.0;
    C pref = C(0, 1) * 2.0 * M_PI;  // 2 pi i
    return (C(double(lambda), 0) / (C(0, 2) * z.imag()) * f(z) + dz) / pref;
}

std::complex<double> eval_table(const NearlyHolomorphic& f, std::complex<double> z) {
    BigComplex v = f.evaluate(BigComplex(z.real(), z.imag(), 128), 128);
    return {v.re().to_double(), v.im().to_double()};
}

}  // namespace

TEST_CASE("delta on constants and q") {
    long lambda = 6;
    NearlyHolomorphic one = NearlyHolomorphic::from_qexp(lambda, {Rational(1)});
    NearlyHolomorphic d1 = delta(lambda, one);
    CHECK(d1.weight() == lambda + 2);
    CHECK(d1.get(0, 1) == Rational(-lambda));
    CHECK(d1.get(0, 0) == Rational(0));
    CHECK(d1.depth() == 1);

    NearlyHolomorphic fq = NearlyHolomorphic::from_qexp(lambda, {Rational(0), Rational(1)});
    NearlyHolomorphic dq = delta(lambda, fq);
    CHECK(dq.get(1, 0) == Rational(1));        // n * a_n at j = 0
    CHECK(dq.get(1, 1) == Rational(-lambda));
    CHECK(dq.depth() == fq.depth() + 1);

    CHECK_THROWS_AS(delta(lambda + 2, one), std::invalid_argument);
}

TEST_CASE("delta table rule against the finite-difference oracle") {
    // f = 3 + 5q + 7q^2 of weight 4, then a depth-1 form
    NearlyHolomorphic f = NearlyHolomorphic::from_qexp(4, {Rational(3), Rational(5), Rational(7)});
    auto fh = [&](std::complex<double> z) { return eval_table(f, z); };
    std::complex<double> z(0.23, 1.17);
    auto got = eval_table(delta(4, f), z);
    auto want = delta_fd(4, fh, z, 1e-4);
    CHECK(std::abs(got - want) < 1e-5);

    NearlyHolomorphic g = delta(4, f);  // depth 1, weight 6
    auto gh = [&](std::complex<double> w) { return eval_table(g, w); };
    auto got2 = eval_table(delta(6, g), z);
    auto want2 = delta_fd(6, gh, z, 1e-4);
    CHECK(std::abs(got2 - want2) < 1e-5);
}

TEST_CASE("delta is linear on tables") {
    NearlyHolomorphic f = NearlyHolomorphic::from_qexp(4, {Rational(1), Rational(2)});
    NearlyHolomorphic g = NearlyHolomorphic::from_qexp(4, {Rational(0), Rational(5), Rational(-3)});
    Rational a(3), b(-7, 2);
    NearlyHolomorphic lhs = delta(4, f.scaled(a) + g.scaled(b));
    NearlyHolomorphic rhs = delta(4, f).scaled(a) + delta(4, g).scaled(b);
    CHECK(lhs.table() == rhs.table());
}

TEST_CASE("holomorphic slice of delta f is the q-derivative") {
    NearlyHolomorphic f = NearlyHolomorphic::from_qexp(8, {Rational(2), Rational(-3), Rational(0), Rational(11)});
    auto slice = delta(8, f).holomorphic_slice();
    CHECK(slice == std::vector<Rational>{Rational(0), Rational(-3), Rational(0), Rational(33)});
}

TEST_CASE("delta_iter composition") {
    NearlyHolomorphic f = NearlyHolomorphic::from_qexp(4, {Rational(1), Rational(1)});
    CHECK(delta_iter(4, 0, f).table() == f.table());
    NearlyHolomorphic two_steps = delta(6, delta(4, f));
    CHECK(delta_iter(4, 2, f).table() == two_steps.table());
    CHECK(delta_iter(4, 2, f).weight() == 8);
}

TEST_CASE("estar relation at r = 0 is the identity") {
    EstarParams params;
    params.cutoff = 150;
    auto report = verify_estar_relation(8, 0, BigComplex(0.0, 1.0, 128), params);
    CHECK(report.rel_error.to_double() < 1e-9);
}

TEST_CASE("estar relation, lambda 8 r 1 at z = i (a CM zero of weight 10)") {
    EstarParams params;
    params.cutoff = 600;
    auto report = verify_estar_relation(8, 1, BigComplex(0.0, 1.0, 128), params);
    // Weight 10 vanishes identically at i; both sides are numerical zeros
    // and the cancellation-relative error is tiny.
    CHECK(report.value_is_zero);
    CHECK(report.lhs.abs().to_double() < 1e-10);
    CHECK(report.rhs.abs().to_double() < 1e-30);
    CHECK(report.rel_error.to_double() < 1e-6);
}

TEST_CASE("estar relation at generic points") {
    EstarParams params;
    params.cutoff = 600;
    auto r81 = verify_estar_relation(8, 1, BigComplex(0.2, 1.1, 128), params);
    CHECK_FALSE(r81.value_is_zero);
    CHECK(r81.rel_error.to_double() < 1e-6);

    params.cutoff = 800;
    auto r42 = verify_estar_relation(4, 2, BigComplex(1.0 / 3.0, 1.0, 128), params);
    CHECK_FALSE(r42.value_is_zero);
    CHECK(r42.rel_error.to_double() < 1e-5);
}

TEST_CASE("estar relation error shrinks with the lattice cutoff") {
    double last = 1e9;
    for (unsigned long cutoff : {60ul, 120ul, 240ul}) {
        EstarParams params;
        params.cutoff = cutoff;
        auto report = verify_estar_relation(8, 1, BigComplex(0.2, 1.1, 128), params);
        double err = report.rel_error.to_double();
        CHECK(err < last + 1e-12);
        last = err;
    }
    CHECK(last < 1e-4);
}

TEST_CASE("estar relation rejects bad weights") {
    CHECK_THROWS_AS(verify_estar_relation(3, 1, BigComplex(0.0, 1.0, 128)), std::domain_error);
    CHECK_THROWS_AS(verify_estar_relation(2, 0, BigComplex(0.0, 1.0, 128)), std::domain_error);
}
