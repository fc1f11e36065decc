#include "qfermion/scalar.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qfermion;

namespace {

QISqrt2 random_qisqrt2(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 4);
    auto r = [&] { return Rational(num(rng), den(rng)); };
    return QISqrt2(r(), r(), r(), r());
}

}  // namespace

TEST_CASE("field arithmetic in Q(i, sqrt2)") {
    QISqrt2 i = QISqrt2::i();
    QISqrt2 r2 = QISqrt2::sqrt2();
    REQUIRE(i * i == QISqrt2(-1));
    REQUIRE(r2 * r2 == QISqrt2(2));
    REQUIRE((i * r2) * (i * r2) == QISqrt2(-2));
    REQUIRE(QISqrt2::inv_sqrt2() * r2 == QISqrt2::one());

    QISqrt2 x(Rational(1, 2), Rational(-3, 4), Rational(2), Rational(1, 3));
    REQUIRE(x.conj() == QISqrt2(Rational(1, 2), Rational(3, 4), Rational(2), Rational(-1, 3)));
    REQUIRE(x * x.inverse() == QISqrt2::one());

    // |i/sqrt2|^2 = 1/2
    QISqrt2 v = QISqrt2::i() * QISqrt2::inv_sqrt2();
    REQUIRE(v * v.conj() == QISqrt2(Rational(1, 2)));
}

TEST_CASE("field axioms hold on random elements") {
    std::mt19937_64 rng(271828);
    for (int t = 0; t < 200; ++t) {
        QISqrt2 x = random_qisqrt2(rng), y = random_qisqrt2(rng), z = random_qisqrt2(rng);
        REQUIRE((x * y) * z == x * (y * z));
        REQUIRE(x * (y + z) == x * y + x * z);
        REQUIRE(x + y == y + x);
        REQUIRE(x * y == y * x);
        if (!x.is_zero()) REQUIRE(x * x.inverse() == QISqrt2::one());
        REQUIRE((x * y).conj() == x.conj() * y.conj());
    }
}

TEST_CASE("Laurent polynomial ring basics") {
    ExactScalar q = ExactScalar::q_power(1);
    ExactScalar s = ExactScalar::s_power(1);
    REQUIRE(s * s == q);
    REQUIRE(s * ExactScalar::s_power(-1) == ExactScalar::one());
    REQUIRE(ExactScalar::q_power(2) + ExactScalar::q_power(-2) - ExactScalar::q_power(2)
            == ExactScalar::q_power(-2));
    REQUIRE((q - ExactScalar::one()) * (q + ExactScalar::one())
            == ExactScalar::q_power(2) - ExactScalar::one());

    // conjugation fixes s and conjugates coefficients
    ExactScalar x = ExactScalar::term(3, QISqrt2::i()) + ExactScalar::term(-1, QISqrt2(2));
    REQUIRE(x.conj() == ExactScalar::term(3, -QISqrt2::i()) + ExactScalar::term(-1, QISqrt2(2)));
}

TEST_CASE("q-numbers match their closed form") {
    REQUIRE(q_number(0, 2).is_zero());
    REQUIRE(q_number(1, 2) == ExactScalar::one());
    REQUIRE(q_number(2, 2) == ExactScalar::s_power(4) + ExactScalar::s_power(-4));
    REQUIRE(q_number(3, 1) ==
            ExactScalar::q_power(2) + ExactScalar::one() + ExactScalar::q_power(-2));
    REQUIRE_THROWS_AS(q_number(-1, 1), std::invalid_argument);

    // numeric oracle: [m]_Q = (Q^m − Q^−m)/(Q − Q^−1) at q₀ = 2.0
    const double q0 = 2.0;
    for (int k = 1; k <= 2; ++k) {
        double big_q = std::pow(q0, k);
        for (int m = 1; m <= 8; ++m) {
            double want = (std::pow(big_q, m) - std::pow(big_q, -m)) / (big_q - 1.0 / big_q);
            double got = q_number(m, k).eval_complex(q0).real();
            REQUIRE_THAT(got, Catch::Matchers::WithinRel(want, 1e-10));
        }
    }
    // spot value from the definition at q = 2: [3]_q = 4 + 1 + 1/4
    REQUIRE_THAT(q_number(3, 1).eval_complex(2.0).real(),
                 Catch::Matchers::WithinRel(5.25, 1e-12));
}

TEST_CASE("Gaussian binomials") {
    for (int m = 0; m <= 6; ++m) REQUIRE(gauss_binom(m, 0, 2) == ExactScalar::one());
    REQUIRE(gauss_binom(2, 1, 2) == q_number(2, 2));
    ExactScalar g42 = gauss_binom(4, 2, 1);
    ExactScalar want = ExactScalar::q_power(4) + ExactScalar::q_power(2) + ExactScalar(2) +
                       ExactScalar::q_power(-2) + ExactScalar::q_power(-4);
    REQUIRE(g42 == want);
    REQUIRE_THROWS_AS(gauss_binom(2, 3, 1), std::invalid_argument);

    // numeric oracle: factorial formula at q₀ = 1.7
    auto qfact = [](int m, double big_q) {
        double out = 1.0;
        for (int j = 1; j <= m; ++j)
            out *= (std::pow(big_q, j) - std::pow(big_q, -j)) / (big_q - 1.0 / big_q);
        return out;
    };
    const double q0 = 1.7;
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n <= m; ++n) {
            double want_val = qfact(m, q0) / (qfact(n, q0) * qfact(m - n, q0));
            double got = gauss_binom(m, n, 1).eval_complex(q0).real();
            REQUIRE_THAT(got, Catch::Matchers::WithinRel(want_val, 1e-9));
        }

    // symmetry {m,n} = {m,m−n}
    for (int m = 0; m <= 7; ++m)
        for (int n = 0; n <= m; ++n)
            REQUIRE(gauss_binom(m, n, 2) == gauss_binom(m, m - n, 2));
}

TEST_CASE("scalar text form round-trips") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> exp_dist(-5, 5);
    for (int t = 0; t < 100; ++t) {
        ExactScalar x;
        for (int k = 0; k < 3; ++k) x.add_term(exp_dist(rng), random_qisqrt2(rng));
        REQUIRE(ExactScalar::parse(x.to_string()) == x);
    }
    REQUIRE(ExactScalar::parse("0").is_zero());
    REQUIRE(ExactScalar::parse("(1/2)*s^-1 + (0+1i)*s^3") ==
            ExactScalar::term(-1, QISqrt2(Rational(1, 2))) + ExactScalar::term(3, QISqrt2::i()));
    REQUIRE_THROWS_AS(ExactScalar::parse("(1x)"), std::invalid_argument);
}

TEST_CASE("exact evaluation at rational q") {
    ExactScalar x = ExactScalar::q_power(2) + ExactScalar::q_power(-1);
    Rational q(3, 2);
    REQUIRE(x.eval_q(q) == QISqrt2(Rational(9, 4) + Rational(2, 3)));
    REQUIRE_THROWS_AS(ExactScalar::s_power(1).eval_q(q), std::domain_error);
}
