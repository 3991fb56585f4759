#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unitaria/finite_unitary.hpp"

using namespace unitaria;

namespace {

std::uint64_t unitary_order_formula(std::uint64_t q, std::size_t n) {
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < n * (n - 1) / 2; ++i) order *= q;
    for (std::size_t i = 1; i <= n; ++i) {
        std::uint64_t qi = 1;
        for (std::size_t j = 0; j < i; ++j) qi *= q;
        order *= (i % 2) ? qi + 1 : qi - 1;
    }
    return order;
}

}  // namespace

TEST_CASE("GF(q^2) arithmetic") {
    for (std::uint64_t q : {2ull, 3ull}) {
        const GF2& F = GF2::get(q);
        for (std::size_t x = 0; x < F.size(); ++x) {
            CHECK(F.conj(F.conj(static_cast<std::uint8_t>(x))) == x);  // Frobenius involution
            if (x && x < q) CHECK(F.conj(static_cast<std::uint8_t>(x)) == x);  // fixes the prime field
            if (x) CHECK(F.mul(static_cast<std::uint8_t>(x), F.inv(static_cast<std::uint8_t>(x))) == 1);
        }
        // norm x * conj(x) lands in F_q and is multiplicative
        for (std::size_t x = 0; x < F.size(); ++x)
            for (std::size_t y = 0; y < F.size(); ++y) {
                auto norm = [&](std::uint8_t v) { return F.mul(v, F.conj(v)); };
                CHECK(norm(F.mul(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y))) ==
                      F.mul(norm(static_cast<std::uint8_t>(x)), norm(static_cast<std::uint8_t>(y))));
                CHECK(norm(static_cast<std::uint8_t>(x)) < q);
            }
    }
}

TEST_CASE("unitary group orders by brute force") {
    CHECK(unitary_elements(standard_finite_space(2, 1)).size() == 3);
    CHECK(unitary_elements(standard_finite_space(3, 1)).size() == 4);
    CHECK(unitary_elements(standard_finite_space(2, 2)).size() == 18);
    CHECK(unitary_elements(standard_finite_space(3, 2)).size() == 96);
    for (std::uint64_t q : {2ull, 3ull})
        for (std::size_t n : {1u, 2u})
            CHECK(unitary_elements(standard_finite_space(q, n)).size() == unitary_order_formula(q, n));
}

TEST_CASE("enumeration budget is a hard cap") {
    CHECK_THROWS_AS(unitary_elements(standard_finite_space(3, 3)), BudgetExceededError);
}

TEST_CASE("doubled space") {
    FiniteHermSpace v = standard_finite_space(2, 1);
    FiniteHermSpace w = doubled_space(v);
    CHECK(w.n() == 2);
    const GF2& F = v.field();
    CHECK(w.gram().at(0, 0) == 1);
    CHECK(w.gram().at(1, 1) == F.neg(1));

    // V^Delta is isotropic in W
    IsotropicSubspace diag = diagonal_subspace(F, 1);
    FMat pairing = f_mul(F, f_mul(F, diag.basis, w.gram()), f_conj_transpose(F, diag.basis));
    for (std::uint8_t x : pairing.v) CHECK(x == 0);

    FiniteHermSpace v23 = standard_finite_space(3, 2);
    FiniteHermSpace w23 = doubled_space(v23);
    IsotropicSubspace diag2 = diagonal_subspace(v23.field(), 2);
    FMat pairing2 =
        f_mul(v23.field(), f_mul(v23.field(), diag2.basis, w23.gram()), f_conj_transpose(v23.field(), diag2.basis));
    for (std::uint8_t x : pairing2.v) CHECK(x == 0);
}

TEST_CASE("maximal isotropic subspace counts") {
    CHECK(maximal_isotropic(doubled_space(standard_finite_space(2, 1))).size() == 3);
    CHECK(maximal_isotropic(doubled_space(standard_finite_space(3, 1))).size() == 4);
    CHECK(maximal_isotropic(doubled_space(standard_finite_space(2, 2))).size() == 27);
    CHECK(maximal_isotropic(doubled_space(standard_finite_space(3, 2))).size() == 112);
}

TEST_CASE("orbit classification n=1") {
    for (std::uint64_t q : {2ull, 3ull}) {
        FiniteHermSpace v = standard_finite_space(q, 1);
        FiniteHermSpace w = doubled_space(v);
        auto group = unitary_elements(v);
        auto decomp = classify_orbits(w, group);
        REQUIRE(decomp.orbits.size() == 1);
        CHECK(decomp.orbits[0].label == 0);
        CHECK(decomp.orbits[0].members.size() == q + 1);
        CHECK(decomp.total == q + 1);
    }
}

TEST_CASE("orbit classification n=2 q=2") {
    FiniteHermSpace v = standard_finite_space(2, 2);
    FiniteHermSpace w = doubled_space(v);
    auto group = unitary_elements(v);
    auto decomp = classify_orbits(w, group);
    REQUIRE(decomp.orbits.size() == 2);
    CHECK(decomp.orbits[0].label == 0);
    CHECK(decomp.orbits[0].members.size() == 18);
    CHECK(decomp.orbits[1].label == 1);
    CHECK(decomp.orbits[1].members.size() == 9);
    CHECK(decomp.total == 27);

    // dim(L cap V+) = dim(L cap V-) for every maximal isotropic L
    const GF2& F = v.field();
    for (const auto& orbit : decomp.orbits)
        for (const auto& l : orbit.members)
            CHECK(intersection_label(F, l) == intersection_label_minus(F, l));
}

TEST_CASE("stabilizer of the diagonal is the diagonal subgroup") {
    for (auto [q, n] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        FiniteHermSpace v = standard_finite_space(q, n);
        FiniteHermSpace w = doubled_space(v);
        auto group = unitary_elements(v);
        IsotropicSubspace diag = diagonal_subspace(v.field(), n);
        auto stab = stabilizer(w, group, diag);
        CHECK(stab.size() == group.size());
        for (const auto& [g, h] : stab) CHECK(g == h);
    }
}

TEST_CASE("orbit-stabilizer audit") {
    for (auto [q, n] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        FiniteHermSpace v = standard_finite_space(q, n);
        FiniteHermSpace w = doubled_space(v);
        auto group = unitary_elements(v);
        auto decomp = classify_orbits(w, group);
        std::size_t group_sq = group.size() * group.size();
        for (const auto& orbit : decomp.orbits) {
            auto stab = stabilizer(w, group, orbit.representative);
            CHECK(orbit.members.size() * stab.size() == group_sq);
        }
    }
}

TEST_CASE("negligibility of orbits, n=2 q=2") {
    FiniteHermSpace v = standard_finite_space(2, 2);
    FiniteHermSpace w = doubled_space(v);
    auto group = unitary_elements(v);
    auto decomp = classify_orbits(w, group);

    auto x0 = check_negligible(w, group, decomp.orbits[0]);
    CHECK_FALSE(x0.negligible);

    auto x1 = check_negligible(w, group, decomp.orbits[1]);
    CHECK(x1.negligible);
    CHECK(x1.witness.size() > 1);
    const GF2& F = v.field();
    for (const auto& [g, h] : x1.witness) {
        // (g - 1)^n = 0 in each factor
        for (const FMat& m : {g, h}) {
            FMat shifted = m;
            for (std::size_t i = 0; i < 2; ++i) shifted.at(i, i) = F.sub(shifted.at(i, i), 1);
            FMat sq = f_mul(F, shifted, shifted);
            for (std::uint8_t x : sq.v) CHECK(x == 0);
        }
    }
}

TEST_CASE("negligibility is vacuous for n=1") {
    FiniteHermSpace v = standard_finite_space(2, 1);
    FiniteHermSpace w = doubled_space(v);
    auto group = unitary_elements(v);
    auto decomp = classify_orbits(w, group);
    auto rep = check_negligible(w, group, decomp.orbits[0]);
    CHECK_FALSE(rep.negligible);
    CHECK(rep.reason == "no proper parabolic exists");
}
