#include "qfermion/serialization.hpp"

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
        QISqrt2 c(coeff(rng), Rational(coeff(rng), 3), Rational(coeff(rng), 2), coeff(rng));
        x.add(m, ExactScalar::term(expo(rng), c));
    }
    return x;
}

}  // namespace

TEST_CASE("algebra elements round-trip through JSON") {
    std::mt19937_64 rng(10101);
    for (int n = 1; n <= 3; ++n)
        for (int t = 0; t < 30; ++t) {
            AlgebraElement x = random_element(rng, n);
            REQUIRE(algebra_element_from_json(to_json(x)) == x);
        }
}

TEST_CASE("graded tensors round-trip through JSON") {
    std::mt19937_64 rng(20202);
    std::uniform_int_distribution<int> mask(0, 3);
    for (int arity : {2, 3}) {
        for (int t = 0; t < 30; ++t) {
            GradedTensor x(2, arity);
            for (int k = 0; k < 3; ++k) {
                TensorKey key;
                for (int c = 0; c < arity; ++c)
                    key.comp[static_cast<std::size_t>(c)] =
                        FermionMonomial{static_cast<std::uint16_t>(mask(rng)),
                                        static_cast<std::uint16_t>(mask(rng))};
                key.comp[2] = arity == 2 ? FermionMonomial{} : key.comp[2];
                x.add(key, ExactScalar::term(mask(rng) - 1, QISqrt2(mask(rng) - 1, 1)));
            }
            REQUIRE(graded_tensor_from_json(to_json(x)) == x);
        }
    }
}

TEST_CASE("matrix JSON carries exact scalar text") {
    Matrix<ExactScalar> m = to_matrix(omega(1, 1));
    nlohmann::json j = to_json(m);
    REQUIRE(j.at("rows") == 2);
    REQUIRE(j.at("entries")[0][0].get<std::string>() == "(1)");
    REQUIRE(ExactScalar::parse(j.at("entries")[1][1].get<std::string>()) ==
            ExactScalar::q_power(-1));
}

TEST_CASE("malformed JSON input is rejected") {
    nlohmann::json bad;
    bad["n"] = 1;
    bad["terms"] = nlohmann::json::array({nlohmann::json::array({"d1"})});
    REQUIRE_THROWS_AS(algebra_element_from_json(bad), std::invalid_argument);
}
