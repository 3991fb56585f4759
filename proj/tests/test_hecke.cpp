#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unitaria/hecke.hpp"

using namespace unitaria;

TEST_CASE("delta_qexp agrees with the naive product oracle") {
    QExp1 delta = delta_qexp(60);
    auto naive = oracles::delta_product_naive(60);
    for (std::size_t n = 0; n <= 60; ++n) CHECK(delta.a(n) == naive[n]);
    CHECK(delta.a(1) == Rational(1));
    CHECK(delta.a(2) == Rational(-24));
    CHECK(delta.is_cuspidal());
}

TEST_CASE("T_2 Delta = -24 Delta on the first 20 coefficients") {
    QExp1 delta = delta_qexp(40);
    QExp1 t2 = hecke_tp(delta, 2, 20);
    for (std::size_t n = 0; n <= 20; ++n) CHECK(t2.a(n) == Rational(-24) * delta.a(n));
}

TEST_CASE("Eisenstein series are Hecke eigenforms with eigenvalue sigma_{2k-1}(p)") {
    for (unsigned twok : {4u, 6u}) {
        QExp1 e = eisenstein_qexp(twok, 40);
        for (std::uint64_t p : {2ull, 3ull, 5ull}) {
            QExp1 te = hecke_tp(e, p, static_cast<std::size_t>(40 / p));
            Rational eigen{divisor_sum(p, twok - 1)};
            for (std::size_t n = 0; n <= te.bound(); ++n) CHECK(te.a(n) == eigen * e.a(n));
        }
    }
}

TEST_CASE("hecke_tp error paths") {
    QExp1 delta = delta_qexp(20);
    CHECK_THROWS_AS(hecke_tp(delta, 4, 5), std::domain_error);
    CHECK_THROWS_AS(hecke_tp(delta, 2, 15), std::domain_error);  // needs bound 30
    QExp1 lvl2 = delta;
    lvl2.level = 2;
    CHECK_THROWS_AS(hecke_tp(lvl2, 2, 5), std::domain_error);
}

TEST_CASE("Hecke operators commute") {
    QExp1 delta = delta_qexp(360);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull})
        for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
            if (p >= q) continue;
            std::size_t out = static_cast<std::size_t>(360 / (p * q));
            QExp1 pq = hecke_tp(hecke_tp(delta, p, 360 / p), q, out);
            QExp1 qp = hecke_tp(hecke_tp(delta, q, 360 / q), p, out);
            CHECK(pq.coeffs == qp.coeffs);
        }
}

TEST_CASE("satake_gl2") {
    long prec = 128;
    auto delta = delta_qexp(6);
    SatakeData d2 = satake_gl2(delta.a(2), 2, 12, prec);
    CHECK(d2.esym[0] == Rational(-24));
    CHECK(d2.esym[1] == Rational(2048));
    BigComplex sum = d2.params[0] + d2.params[1];
    BigComplex prod = d2.params[0] * d2.params[1];
    CHECK((sum - BigComplex(-24.0, 0.0, prec)).abs().to_double() < 1e-30);
    CHECK((prod - BigComplex(2048.0, 0.0, prec)).abs().to_double() < 1e-25);

    // Eisenstein: a_p = 1 + p^{k-1} splits as {1, p^{k-1}}
    SatakeData e = satake_gl2(Rational(1 + 8), 2, 4, prec);
    BigFloat lo = e.params[1].re(), hi = e.params[0].re();
    CHECK((hi - BigFloat(8, prec)).abs().to_double() < 1e-30);
    CHECK((lo - BigFloat(1, prec)).abs().to_double() < 1e-30);

    // a_p = 0: conjugate purely imaginary pair +- i p^{(k-1)/2}
    SatakeData z = satake_gl2(Rational(0), 3, 3, prec);
    CHECK(z.params[0].re().is_zero());
    CHECK((z.params[0].im() - BigFloat(3, prec)).abs().to_double() < 1e-30);
}

TEST_CASE("satake at split places only") {
    HermitianSpace v(1, field_identity(1, 3));
    SplitPlaceMarker marker = split_place_transport(v, 5);
    SatakeData s = satake_at_split(marker, {Rational(1), Rational(2), Rational(3)});
    CHECK(s.n == 3);
    CHECK(euler_factor(s).degree() == 3);
    CHECK_THROWS_AS(split_place_transport(v, 3), PlaceClassificationError);
}

TEST_CASE("euler factors and partial L") {
    long prec = 128;
    auto factors = all_ones_factors(10000);
    for (auto& [p, f] : factors) {
        CHECK(f.coeffs[0] == Rational(1));
        CHECK(f.degree() == 1);
    }
    auto val = partial_l(factors, {}, BigComplex(2.0, 0.0, prec), 10000, prec);
    auto [zr, ze] = zeta_even(1);
    BigFloat zeta2 = BigFloat::from_rational(zr, prec) * BigFloat::pi(prec).pow_int(2);
    CHECK((val.value.re() - zeta2).abs().to_double() < 1e-4);
    CHECK(val.largest_prime == 9973);

    // telescoping: dropping p=2 multiplies by (1 - 2^{-s})
    auto val2 = partial_l(factors, {2}, BigComplex(2.0, 0.0, prec), 10000, prec);
    BigComplex expected = val.value * BigComplex(0.75, 0.0, prec);
    CHECK((val2.value - expected).abs().to_double() < 1e-10);

    // monotone approach from below
    double last = 0;
    for (std::uint64_t cutoff : {10ull, 100ull, 1000ull, 10000ull}) {
        auto v = partial_l(factors, {}, BigComplex(2.0, 0.0, prec), cutoff, prec);
        double x = v.value.re().to_double();
        CHECK(x > last);
        CHECK(x < zeta2.to_double());
        last = x;
    }

    // missing factor
    std::map<std::uint64_t, EulerFactor> incomplete;
    incomplete.emplace(2, EulerFactor{2, {Rational(1), Rational(-1)}});
    CHECK_THROWS_AS(partial_l(incomplete, {}, BigComplex(2.0, 0.0, prec), 10, prec),
                    std::invalid_argument);
}

TEST_CASE("tau multiplicativity from Euler factors") {
    QExp1 delta = delta_qexp(50);
    std::map<std::uint64_t, EulerFactor> factors;
    for (std::uint64_t p : primes_up_to(50))
        factors.emplace(p, euler_factor(satake_gl2(delta.a(p), p, 12)));
    auto coeffs = dirichlet_from_euler_factors(factors, 50);
    for (std::size_t n = 1; n <= 50; ++n) CHECK(coeffs[n] == delta.a(n));
}

TEST_CASE("doubling d_{n,v}") {
    // n = 1: a single factor at 2s + 1
    DnvProduct d1 = doubling_dnv(1, Rational(1), Rational(0), Rational(0), 5);
    REQUIRE(d1.factors.size() == 1);
    CHECK(d1.factors[0].arg == Rational(3));

    // n = 2: L(2s+2, chi) L(2s+1, chi eta)
    DnvProduct d2 = doubling_dnv(2, Rational(1), Rational(0), Rational(1, 2), 5);
    REQUIRE(d2.factors.size() == 2);
    CHECK(d2.factors[0].arg == Rational(4));
    CHECK(d2.factors[0].char_rot == Rational(0));
    CHECK(d2.factors[1].arg == Rational(3));
    CHECK(d2.factors[1].char_rot == Rational(1, 2));

    CHECK_THROWS_AS(doubling_dnv(0, Rational(1), Rational(0), Rational(0), 5), std::domain_error);

    // numeric consistency: unramified trivial data at s = 1 equals the
    // product of geometric series values
    long prec = 128;
    for (std::size_t n : {1u, 2u, 3u}) {
        DnvProduct d = doubling_dnv(n, Rational(1), Rational(0), Rational(0), 3);
        BigFloat direct(1, prec);
        for (std::size_t r = 0; r < n; ++r) {
            long arg = 2 + static_cast<long>(n - r);
            BigFloat geo(0, prec);
            BigFloat term(1, prec);
            BigFloat ratio = BigFloat(3, prec).pow_int(-arg);
            for (int j = 0; j < 200; ++j) {
                geo += term;
                term *= ratio;
            }
            direct *= geo;
        }
        CHECK((d.evaluate(prec).re() - direct).abs().to_double() < 1e-12);
        CHECK(d.evaluate(prec).im().is_zero());
    }

    // the half-shift bookkeeping: Z_v = L_v(s + 1/2) / d_{n,v}(s)
    DnvProduct d = doubling_dnv(2, Rational(1), Rational(0), Rational(0), 5);
    BigComplex lhalf(1.25, 0.0, prec);
    CHECK(((d.z_ratio(lhalf, prec) * d.evaluate(prec)) - lhalf).abs().to_double() < 1e-30);
}

TEST_CASE("rankin_selberg_d") {
    long prec = 128;
    QExp1 delta = delta_qexp(1);
    auto v = rankin_selberg_d(delta, delta, BigComplex(13.0, 0.0, prec), 1, 10.0, 11.5, prec);
    CHECK((v.value - BigComplex::one(prec)).abs().to_double() < 1e-30);

    QExp1 d2 = delta_qexp(2000);
    QExp1 e4 = eisenstein_qexp(4, 2000);
    auto a = rankin_selberg_d(d2, e4, BigComplex(11.0, 0.0, prec), 1000, 500.0, 8.0, prec);
    auto b = rankin_selberg_d(d2, e4, BigComplex(11.0, 0.0, prec), 2000, 500.0, 8.0, prec);
    CHECK((a.value - b.value).abs() <= a.tail_bound);

    CHECK_THROWS_AS(rankin_selberg_d(d2, e4, BigComplex(11.0, 0.0, prec), 5000, 500.0, 8.0, prec),
                    std::invalid_argument);
}

TEST_CASE("petersson inner product") {
    long prec = 128;
    QExp1 delta = delta_qexp(200);
    auto v = petersson(delta, delta, 6, prec);
    CHECK(v.value.re().to_double() > 0);
    CHECK(v.value.im().abs().to_double() < 1e-20);
    CHECK(v.refinement_gap.to_double() < 1e-6);
    // right order of magnitude for the norm of Delta
    CHECK(v.value.re().to_double() > 1e-7);
    CHECK(v.value.re().to_double() < 1e-5);

    QExp1 e4 = eisenstein_qexp(4, 50);
    QExp1 e4sq = qexp_multiply(e4, e4);  // weight 8, not cuspidal
    QExp1 e8 = eisenstein_qexp(8, 50);
    CHECK_THROWS_AS(petersson(e4sq, e8, 4, prec), std::domain_error);
}

TEST_CASE("algebraicity ratio") {
    long prec = 128;
    QExp1 delta = delta_qexp(3000);
    QExp1 e4 = eisenstein_qexp(4, 3000);

    CHECK_THROWS_AS(algebraicity_ratio(delta, e4, 7, 1000, 4, prec), std::domain_error);
    CHECK_THROWS_AS(algebraicity_ratio(delta, e4, 12, 1000, 4, prec), std::domain_error);

    auto rep = algebraicity_ratio(delta, e4, 11, 3000, 4, prec);
    CHECK(rep.ratio.abs().to_double() > 0);
    CHECK(rep.ratio.abs().to_double() < 1e9);

    // linearity: doubling g doubles the ratio bit-exactly
    auto rep2 = algebraicity_ratio(delta, qexp_scale(e4, Rational(2)), 11, 3000, 4, prec);
    CHECK(rep2.ratio == rep.ratio * BigFloat(2, prec));
}
