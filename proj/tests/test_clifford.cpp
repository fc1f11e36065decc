#include "qfermion/relation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qfermion;

namespace {

AlgebraElement random_element(std::mt19937_64& rng, int n_modes, int max_terms = 4) {
    std::uniform_int_distribution<int> mask(0, (1 << n_modes) - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> expo(-2, 2);
    AlgebraElement x(n_modes);
    for (int t = 0; t < max_terms; ++t) {
        FermionMonomial m{static_cast<std::uint16_t>(mask(rng)),
                          static_cast<std::uint16_t>(mask(rng))};
        QISqrt2 c(coeff(rng), coeff(rng), Rational(coeff(rng), 2), 0);
        x.add(m, ExactScalar::term(expo(rng), c));
    }
    return x;
}

}  // namespace

TEST_CASE("monomial products normal-order correctly") {
    const int n = 2;
    // ψ₁ ψ₁† = 1 − ψ₁†ψ₁
    AlgebraElement lhs = psi(n, 1) * psi_dagger(n, 1);
    AlgebraElement want = AlgebraElement::unit(n);
    want.add(FermionMonomial{1, 1}, ExactScalar(-1));
    REQUIRE(lhs == want);

    REQUIRE((psi(n, 1) * psi(n, 1)).is_zero());

    // ψ₂ ψ₁† = −ψ₁†ψ₂
    AlgebraElement cross = psi(n, 2) * psi_dagger(n, 1);
    AlgebraElement want2(n);
    want2.add(FermionMonomial{1, 2}, ExactScalar(-1));
    REQUIRE(cross == want2);

    // (ψ₁ψ₁†)(ψ₁†ψ₁) = 0 and (ψ₁ψ₁†)² = ψ₁ψ₁†
    AlgebraElement nbar = AlgebraElement::monomial(n, FermionMonomial{1, 1});
    AlgebraElement nproj = psi(n, 1) * psi_dagger(n, 1);
    REQUIRE((nproj * nbar).is_zero());
    REQUIRE(nproj * nproj == nproj);
}

TEST_CASE("algebra multiplication is associative and unital") {
    std::mt19937_64 rng(1337);
    for (int n = 1; n <= 4; ++n) {
        AlgebraElement one = AlgebraElement::unit(n);
        for (int t = 0; t < 30; ++t) {
            AlgebraElement a = random_element(rng, n), b = random_element(rng, n),
                           c = random_element(rng, n);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * one == a);
            REQUIRE(one * a == a);
        }
    }
    REQUIRE_THROWS_AS(psi(2, 1) * psi(3, 1), std::invalid_argument);
}

TEST_CASE("star operation") {
    const int n = 2;
    REQUIRE(psi(n, 1).star() == psi_dagger(n, 1));
    REQUIRE(psi_dagger(n, 1).star() == psi(n, 1));

    // star(i ψ₁ψ₂†) = −i ψ₂ψ₁† = i ψ₁†ψ₂
    AlgebraElement x = ExactScalar(QISqrt2::i()) * (psi(n, 1) * psi_dagger(n, 2));
    AlgebraElement want(n);
    want.add(FermionMonomial{1, 2}, ExactScalar(QISqrt2::i()));
    REQUIRE(x.star() == want);

    REQUIRE(omega(n, 1).star() == omega(n, 1));
    REQUIRE(zeta(n, 1).star() == zeta(n, 1));

    std::mt19937_64 rng(99);
    for (int t = 0; t < 40; ++t) {
        AlgebraElement a = random_element(rng, 3), b = random_element(rng, 3);
        REQUIRE(a.star().star() == a);
        REQUIRE((a * b).star() == b.star() * a.star());
    }
}

TEST_CASE("reversal fixes generators and is an involutive anti-automorphism") {
    const int n = 3;
    REQUIRE(psi(n, 2).reversal_y() == psi(n, 2));
    REQUIRE(psi_dagger(n, 3).reversal_y() == psi_dagger(n, 3));

    // Y(ψ₁†ψ₁) = ψ₁ψ₁† = 1 − ψ₁†ψ₁
    AlgebraElement nbar = AlgebraElement::monomial(n, FermionMonomial{1, 1});
    REQUIRE(nbar.reversal_y() == psi(n, 1) * psi_dagger(n, 1));

    // Y(ω) = q⁻¹ω⁻¹
    REQUIRE(omega(n, 1).reversal_y() == ExactScalar::q_power(-1) * omega_inverse(n, 1));

    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        AlgebraElement a = random_element(rng, 3), b = random_element(rng, 3);
        REQUIRE(a.reversal_y().reversal_y() == a);
        REQUIRE((a * b).reversal_y() == b.reversal_y() * a.reversal_y());
    }
    // involutivity on every basis monomial up to three modes
    for (int n_modes = 1; n_modes <= 3; ++n_modes)
        for (const auto& m : basis_monomials(n_modes)) {
            AlgebraElement x = AlgebraElement::monomial(n_modes, m);
            REQUIRE(x.reversal_y().reversal_y() == x);
        }
}

TEST_CASE("grading") {
    const int n = 2;
    REQUIRE((psi(n, 1) * psi_dagger(n, 2)).grade() == Grade::Even);
    REQUIRE(psi(n, 1).grade() == Grade::Odd);
    REQUIRE((AlgebraElement::unit(n) + psi(n, 1)).grade() == Grade::Mixed);

    // grade is additive mod 2 on homogeneous elements with nonzero product
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> mask(0, 3);
    for (int t = 0; t < 60; ++t) {
        FermionMonomial a{static_cast<std::uint16_t>(mask(rng)),
                          static_cast<std::uint16_t>(mask(rng))};
        FermionMonomial b{static_cast<std::uint16_t>(mask(rng)),
                          static_cast<std::uint16_t>(mask(rng))};
        AlgebraElement prod = mono_mul(2, a, b);
        if (prod.is_zero()) continue;
        int want = (a.grade_bit() + b.grade_bit()) & 1;
        REQUIRE(prod.grade() == (want ? Grade::Odd : Grade::Even));
    }
}

TEST_CASE("omega elements") {
    const int n = 2;
    REQUIRE(omega(n, 1) * omega_inverse(n, 1) == AlgebraElement::unit(n));
    REQUIRE(omega_power(n, 1, 2) ==
            psi(n, 1) * psi_dagger(n, 1) +
                ExactScalar::q_power(-2) * (psi_dagger(n, 1) * psi(n, 1)));
    // (ω−1)(qω−1) = 0
    AlgebraElement w = omega(n, 1), one = AlgebraElement::unit(n);
    REQUIRE(((w - one) * (ExactScalar::q_power(1) * w - one)).is_zero());

    for (int m = -3; m <= 3; ++m)
        for (int k = -3; k <= 3; ++k)
            REQUIRE(omega_power(n, 1, m) * omega_power(n, 1, k) == omega_power(n, 1, m + k));

    REQUIRE(zeta(n, 1) * zeta(n, 1) == AlgebraElement::unit(n));
    REQUIRE_THROWS_AS(omega(2, 3), std::invalid_argument);
}

TEST_CASE("q-Clifford relation suite passes exactly") {
    for (int n = 1; n <= 3; ++n) {
        Report rep = verify_q_clifford(n);
        INFO(rep.to_text());
        REQUIRE(rep.passed());
    }
}

TEST_CASE("monomial text form round-trips") {
    FermionMonomial m{0b101, 0b010};  // ψ₁†ψ₃†ψ₂
    REQUIRE(m.to_string() == "d1 d3 a2");
    REQUIRE(FermionMonomial::parse("d1 d3 a2") == m);
    REQUIRE(FermionMonomial::parse("1") == FermionMonomial{});
    for (const auto& mono : basis_monomials(3))
        REQUIRE(FermionMonomial::parse(mono.to_string()) == mono);
}
