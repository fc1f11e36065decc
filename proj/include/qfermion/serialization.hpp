#pragma once

#include "qfermion/tensor.hpp"

#include <json.hpp>

namespace qfermion {

inline nlohmann::json to_json(const AlgebraElement& x) {
    nlohmann::json out;
    out["n"] = x.modes();
    auto& terms = out["terms"] = nlohmann::json::array();
    for (const auto& [m, c] : x.terms())
        terms.push_back(nlohmann::json::array({m.to_string(), c.to_string()}));
    return out;
}

inline AlgebraElement algebra_element_from_json(const nlohmann::json& j) {
    AlgebraElement x(j.at("n").get<int>());
    for (const auto& term : j.at("terms")) {
        if (!term.is_array() || term.size() != 2)
            throw std::invalid_argument("element term must be [monomial, scalar]");
        x.add(FermionMonomial::parse(term[0].get<std::string>()),
              ExactScalar::parse(term[1].get<std::string>()));
    }
    return x;
}

inline nlohmann::json to_json(const GradedTensor& t) {
    nlohmann::json out;
    out["n"] = t.modes();
    out["arity"] = t.arity();
    auto& terms = out["terms"] = nlohmann::json::array();
    for (const auto& [k, c] : t.terms()) {
        nlohmann::json tuple = nlohmann::json::array();
        for (int i = 0; i < t.arity(); ++i) tuple.push_back(k.comp[i].to_string());
        terms.push_back(nlohmann::json::array({std::move(tuple), c.to_string()}));
    }
    return out;
}

inline GradedTensor graded_tensor_from_json(const nlohmann::json& j) {
    GradedTensor t(j.at("n").get<int>(), j.at("arity").get<int>());
    for (const auto& term : j.at("terms")) {
        if (!term.is_array() || term.size() != 2)
            throw std::invalid_argument("tensor term must be [[monomials...], scalar]");
        TensorKey key;
        const auto& tuple = term[0];
        if (static_cast<int>(tuple.size()) != t.arity())
            throw std::invalid_argument("tensor term arity mismatch");
        for (int i = 0; i < t.arity(); ++i)
            key.comp[static_cast<std::size_t>(i)] =
                FermionMonomial::parse(tuple[static_cast<std::size_t>(i)].get<std::string>());
        t.add(key, ExactScalar::parse(term[1].get<std::string>()));
    }
    return t;
}

inline nlohmann::json to_json(const Matrix<ExactScalar>& m) {
    nlohmann::json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    auto& rows = out["entries"] = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return out;
}

inline nlohmann::json to_json(const Matrix<std::complex<double>>& m) {
    nlohmann::json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    auto& rows = out["entries"] = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(nlohmann::json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace qfermion
