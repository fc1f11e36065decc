#include "qfermion/homs.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qfermion;

namespace {

ExactScalar i_over_sqrt2() { return ExactScalar(QISqrt2(0, 0, 0, Rational(1, 2))); }
ExactScalar inv_sqrt2() { return ExactScalar(QISqrt2::inv_sqrt2()); }

}  // namespace

TEST_CASE("admissibility constraints") {
    REQUIRE(check_constraints(FermionHom::delta1().params()).passed());
    REQUIRE(check_constraints(FermionHom::delta2().params()).passed());
    REQUIRE(check_constraints(FermionHom::delta1_partner().params()).passed());
    REQUIRE(check_constraints(FermionHom::delta2_partner().params()).passed());
    REQUIRE(check_constraints(FermionHom::trivial_left().params()).passed());
    REQUIRE(check_constraints(FermionHom::trivial_right().params()).passed());

    HomParams bad{QISqrt2::one(), QISqrt2::one(), QISqrt2::one(), QISqrt2::one()};
    Report rep = check_constraints(bad);
    REQUIRE(!rep.passed());
    REQUIRE_THROWS_AS(FermionHom::from_params(bad), std::invalid_argument);
}

TEST_CASE("generator images match the published forms") {
    const int n = 2;
    AlgebraElement one = AlgebraElement::unit(n);
    AlgebraElement p = psi(n, 1), z = zeta(n, 1);

    // second solution: (1⊗ψ + ψ⊗1)/√2
    REQUIRE(FermionHom::delta2().psi_image(n, 1) ==
            (GradedTensor::pure(one, p) + GradedTensor::pure(p, one)) * inv_sqrt2());
    // first solution: (i/√2)(ζ⊗ψ − ψ⊗ζ)
    REQUIRE(FermionHom::delta1().psi_image(n, 1) ==
            (GradedTensor::pure(z, p) - GradedTensor::pure(p, z)) * i_over_sqrt2());
    // trivial embeddings
    REQUIRE(FermionHom::trivial_left().psi_image(n, 1) == GradedTensor::pure(p, one));
    REQUIRE(FermionHom::trivial_right().psi_image(n, 1) == GradedTensor::pure(one, p));
    // partner of the second solution: (ψ⊗1 − 1⊗ψ)/√2
    REQUIRE(FermionHom::delta2_partner().psi_image(n, 1) ==
            (GradedTensor::pure(p, one) - GradedTensor::pure(one, p)) * inv_sqrt2());
}

TEST_CASE("homomorphism axioms hold for all four named maps") {
    for (int n = 1; n <= 3; ++n) {
        bool full_pairs = n <= 2;  // the N = 3 full-pair check runs in the CLI suite
        for (const FermionHom& h :
             {FermionHom::delta1(), FermionHom::delta2(), FermionHom::trivial_left(),
              FermionHom::trivial_right()}) {
            Report rep = verify_hom_axioms(h, n, full_pairs);
            INFO(h.name() << " at n=" << n << "\n" << rep.to_text());
            REQUIRE(rep.passed());
        }
    }
}

TEST_CASE("inadmissible ansatz is refused, admissible custom ansatz works") {
    // a = 1, b = 1, c = 0, d = 0 is the trivial right embedding
    FermionHom h = FermionHom::from_params(
        {QISqrt2::one(), QISqrt2::one(), QISqrt2::zero(), QISqrt2::zero()});
    const int n = 1;
    REQUIRE(h.psi_image(n, 1) ==
            GradedTensor::pure(AlgebraElement::unit(n), psi(n, 1)));
    REQUIRE(verify_hom_axioms(h, 1, true).passed());
}

TEST_CASE("omega images") {
    for (int n = 1; n <= 2; ++n) {
        Report rep = delta_omega_identities(n);
        INFO(rep.to_text());
        REQUIRE(rep.passed());
    }
    // the published display for the first solution carries the correction
    // term with the opposite sign; the oracle-confirmed forms are frozen here
    const int n = 1;
    FermionHom d1 = FermionHom::delta1(), d2 = FermionHom::delta2();
    AlgebraElement one = AlgebraElement::unit(n), w = omega(n, 1);
    ExactScalar half(Rational(1, 2));
    ExactScalar cm = ExactScalar::one() - ExactScalar::q_power(-1);
    GradedTensor sym = GradedTensor::pure(one, w) + GradedTensor::pure(w, one);
    GradedTensor corr = GradedTensor::pure(psi(n, 1), psi_dagger(n, 1)) -
                        GradedTensor::pure(psi_dagger(n, 1), psi(n, 1));
    REQUIRE(d1.apply(w) == half * (sym - cm * corr));
    REQUIRE(d2.apply(w) == half * (sym + cm * corr));
    REQUIRE(d1.apply(w) != half * (sym + cm * corr));
}

TEST_CASE("m-condition") {
    for (int n = 1; n <= 2; ++n) {
        for (const FermionHom& h :
             {FermionHom::delta1(), FermionHom::delta2(), FermionHom::trivial_left(),
              FermionHom::trivial_right()}) {
            Report rep = verify_m_condition(h, n);
            INFO(h.name() << "\n" << rep.to_text());
            REQUIRE(rep.passed());
        }
    }
}

TEST_CASE("modified coassociativity holds for the two nontrivial solutions") {
    for (int n = 1; n <= 2; ++n) {
        for (const FermionHom& h : {FermionHom::delta1(), FermionHom::delta2()}) {
            Report rep = verify_pseudo_coassoc(h, n);
            INFO(h.name() << "\n" << rep.to_text());
            REQUIRE(rep.passed());
        }
    }
    // generators only at three modes (monomial sweep is quadratic in 4^N)
    for (const FermionHom& h : {FermionHom::delta1(), FermionHom::delta2()}) {
        for (int i = 1; i <= 3; ++i) {
            REQUIRE(map_u(h, psi(3, i)) == map_w(h, psi(3, i)));
            REQUIRE(map_u(h, psi_dagger(3, i)) == map_w(h, psi_dagger(3, i)));
        }
    }
}

TEST_CASE("U and W are multiplicative") {
    for (int n = 1; n <= 2; ++n) {
        for (const FermionHom& h : {FermionHom::delta1(), FermionHom::delta2()}) {
            Report rep = verify_uw_homomorphism(h, n);
            INFO(h.name() << "\n" << rep.to_text());
            REQUIRE(rep.passed());
        }
    }
}

TEST_CASE("strict coassociativity fails exactly for the nontrivial solutions") {
    for (int n = 1; n <= 2; ++n) {
        Report rep = verify_strict_coassociativity(n);
        INFO(rep.to_text());
        REQUIRE(rep.passed());
    }
}

TEST_CASE("doubled family: true relations pass, same-mode mixed cases are nonzero") {
    for (int n = 1; n <= 2; ++n) {
        Report rep = verify_big_fermions(n, /*as_printed=*/false);
        INFO(rep.to_text());
        REQUIRE(rep.passed());
    }
    // the same-mode mixed anticommutators do not vanish; freeze the N = 1 values
    const int n = 1;
    FermionHom d1 = FermionHom::delta1(), d2 = FermionHom::delta2();
    GradedTensor x = d1.psi_image(n, 1);
    GradedTensor y = d2.psi_image(n, 1);
    GradedTensor anti = x * y + y * x;
    AlgebraElement p = psi(n, 1);
    // {δ₁(ψ), δ₂(ψ)} = −2i ψ⊗ψ
    REQUIRE(anti == GradedTensor::pure(p, p) * ExactScalar(QISqrt2(0, -2)));

    GradedTensor yd = d2.psi_dagger_image(n, 1);
    GradedTensor mixed = x * yd + yd * x;
    REQUIRE(!mixed.is_zero());
}

TEST_CASE("as-printed doubled-family check reports the known failures") {
    for (int n = 1; n <= 2; ++n) {
        Report rep = verify_big_fermions(n, /*as_printed=*/true);
        REQUIRE(!rep.passed());
        // failures occur exactly on same-mode pairs taken across families
        for (const auto& c : rep.checks) {
            if (c.pass) continue;
            REQUIRE(c.id.starts_with("bigfermion.anticommutator."));
            int i = c.params.at("I"), j = c.params.at("J");
            REQUIRE(i != j);
            REQUIRE((i - 1) % n == (j - 1) % n);
        }
    }
}

TEST_CASE("balanced combination and coproduct reconstruction") {
    for (int n = 2; n <= 3; ++n) {
        Report rep = verify_coproduct_reconstruction(n);
        INFO(rep.to_text());
        REQUIRE(rep.passed());
    }

    // at q = 1 the balanced combination degenerates to the second solution
    const int n = 2;
    GradedTensor dt = delta_tilde(n, 1, false);
    GradedTensor d2 = FermionHom::delta2().psi_image(n, 1);
    auto m_dt = tensor_to_matrix_complex(dt, 1.0);
    auto m_d2 = tensor_to_matrix_complex(d2, 1.0);
    for (std::size_t r = 0; r < m_dt.rows(); ++r)
        for (std::size_t c = 0; c < m_dt.cols(); ++c)
            REQUIRE(std::abs(m_dt(r, c) - m_d2(r, c)) < 1e-12);

    REQUIRE_THROWS_AS(delta_tilde(2, 3, false), std::invalid_argument);
    REQUIRE_THROWS_AS(coproduct_via_homs(2, 1, GeneratorKind::K, ReconstructionRoute::FoldZ),
                      std::invalid_argument);
}

TEST_CASE("reconstruction matches on doubled Fock matrices at q = 3/2") {
    const int n = 2;
    QGroupGenerators g = build_generators(n);
    for (auto which : {GeneratorKind::E, GeneratorKind::F}) {
        GradedTensor direct = coproduct_delta(g, which, 1);
        GradedTensor rebuilt = coproduct_via_homs(n, 1, which, ReconstructionRoute::FoldZ);
        REQUIRE(tensor_to_matrix_at(direct, Rational(3, 2)) ==
                tensor_to_matrix_at(rebuilt, Rational(3, 2)));
    }
}

TEST_CASE("ansatz grid scan finds the four essential solutions") {
    auto entries = scan_ansatz_grid();
    REQUIRE(!entries.empty());
    std::size_t m_cond = 0, coassoc = 0;
    bool has_d1 = false, has_d2 = false, has_d1p = false, has_d2p = false;
    for (const auto& e : entries) {
        if (!e.m_condition) continue;
        ++m_cond;
        if (e.pseudo_coassoc) ++coassoc;
        if (e.params == FermionHom::delta1().params()) has_d1 = true;
        if (e.params == FermionHom::delta2().params()) has_d2 = true;
        if (e.params == FermionHom::delta1_partner().params()) has_d1p = true;
        if (e.params == FermionHom::delta2_partner().params()) has_d2p = true;
    }
    REQUIRE(has_d1);
    REQUIRE(has_d2);
    REQUIRE(has_d1p);
    REQUIRE(has_d2p);
    REQUIRE(m_cond >= 4);
    REQUIRE(coassoc >= 2);
}
