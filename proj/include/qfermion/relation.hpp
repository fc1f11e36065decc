#pragma once

#include "qfermion/report.hpp"
#include "qfermion/tensor.hpp"

#include <optional>

namespace qfermion {

/** q sample points for the matrix re-verification of symbolic identities */
struct QSamples {
    std::vector<Rational> values{Rational(3, 2), Rational(5, 7)};

    static QSamples none() { return QSamples{{}}; }
    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        for (const auto& q : values) {
            std::ostringstream os;
            os << q;
            out.push_back(os.str());
        }
        return out;
    }
};

inline bool all_even_in_s(const AlgebraElement& x) {
    for (const auto& [m, c] : x.terms())
        if (!c.even_in_s()) return false;
    return true;
}
inline bool all_even_in_s(const GradedTensor& t) {
    for (const auto& [k, c] : t.terms())
        if (!c.even_in_s()) return false;
    return true;
}

// Check lhs == rhs symbolically, then re-verify on the Fock matrices at each
// rational q sample (both sides mapped independently; the representation is
// faithful, so this doubles as an engine oracle).  Skips the matrix pass when
// odd powers of s occur (no exact value at rational q).
inline CheckResult check_element_relation(std::string id,
                                          std::map<std::string, int> params,
                                          const AlgebraElement& lhs,
                                          const AlgebraElement& rhs,
                                          const QSamples& samples,
                                          std::string note = {}) {
    CheckResult r = CheckResult::from_residual(std::move(id), lhs - rhs,
                                               std::move(params), std::move(note));
    if (!r.pass) return r;
    if (all_even_in_s(lhs) && all_even_in_s(rhs)) {
        for (const auto& q : samples.values) {
            if (to_matrix_at(lhs, q) != to_matrix_at(rhs, q)) {
                r.pass = false;
                r.note = "matrix oracle disagrees with symbolic identity";
                return r;
            }
        }
    }
    return r;
}

inline CheckResult check_tensor_relation(std::string id,
                                         std::map<std::string, int> params,
                                         const GradedTensor& lhs,
                                         const GradedTensor& rhs,
                                         const QSamples& samples,
                                         std::string note = {}) {
    CheckResult r = CheckResult::from_residual(std::move(id), lhs - rhs,
                                               std::move(params), std::move(note));
    if (!r.pass) return r;
    if (lhs.arity() == 2 && all_even_in_s(lhs) && all_even_in_s(rhs)) {
        for (const auto& q : samples.values) {
            if (tensor_to_matrix_at(lhs, q) != tensor_to_matrix_at(rhs, q)) {
                r.pass = false;
                r.note = "matrix oracle disagrees with symbolic identity";
                return r;
            }
        }
    }
    return r;
}

// numeric variant: compares complex Fock matrices at a floating q sample
inline CheckResult check_element_relation_numeric(std::string id,
                                                  std::map<std::string, int> params,
                                                  const AlgebraElement& lhs,
                                                  const AlgebraElement& rhs,
                                                  double q, double tol) {
    auto ml = to_matrix_complex(lhs, q);
    auto mr = to_matrix_complex(rhs, q);
    double worst = 0.0;
    for (std::size_t i = 0; i < ml.rows(); ++i)
        for (std::size_t j = 0; j < ml.cols(); ++j)
            worst = std::max(worst, std::abs(ml(i, j) - mr(i, j)));
    return CheckResult::boolean(std::move(id), worst <= tol, std::move(params));
}

inline CheckResult check_tensor_relation_numeric(std::string id,
                                                 std::map<std::string, int> params,
                                                 const GradedTensor& lhs,
                                                 const GradedTensor& rhs,
                                                 double q, double tol) {
    auto ml = tensor_to_matrix_complex(lhs, q);
    auto mr = tensor_to_matrix_complex(rhs, q);
    double worst = 0.0;
    for (std::size_t i = 0; i < ml.rows(); ++i)
        for (std::size_t j = 0; j < ml.cols(); ++j)
            worst = std::max(worst, std::abs(ml(i, j) - mr(i, j)));
    return CheckResult::boolean(std::move(id), worst <= tol, std::move(params));
}

// ----- q-Clifford relation suite --------------------------------------------
//
// Everything the diagonal elements ω_i = ψ_iψ_i† + q⁻¹ψ_i†ψ_i must satisfy,
// checked as exact identities in the fermion algebra.

inline Report verify_q_clifford(int n_modes, const QSamples& samples = {},
                                unsigned jobs = 1) {
    Report rep;
    rep.suite = "clifford";
    rep.n = n_modes;
    rep.q_samples = samples.to_strings();

    std::vector<std::function<CheckResult()>> tasks;
    const AlgebraElement one = AlgebraElement::unit(n_modes);
    const ExactScalar q = ExactScalar::q_power(1), qinv = ExactScalar::q_power(-1);

    for (int i = 1; i <= n_modes; ++i) {
        AlgebraElement wi = omega(n_modes, i), wi_inv = omega_inverse(n_modes, i);
        AlgebraElement pi = psi(n_modes, i), pdi = psi_dagger(n_modes, i);

        tasks.push_back([=] {
            return check_element_relation("omega.inverse", {{"i", i}},
                                          wi * wi_inv, one, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("omega.inverse.swapped", {{"i", i}},
                                          wi_inv * wi, one, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("omega.conj.annih.same", {{"i", i}},
                                          wi * pi * wi_inv, q * pi, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("omega.conj.create.same", {{"i", i}},
                                          wi * pdi * wi_inv, qinv * pdi, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("qclifford.quadratic.minus", {{"i", i}},
                                          pi * pdi + q * q * pdi * pi,
                                          omega_power(n_modes, i, -2), samples);
        });
        tasks.push_back([=] {
            return check_element_relation("qclifford.quadratic.plus", {{"i", i}},
                                          pi * pdi + qinv * qinv * pdi * pi,
                                          omega_power(n_modes, i, 2), samples);
        });
        tasks.push_back([=] {
            return check_element_relation("omega.quadratic", {{"i", i}},
                                          (wi - one) * (q * wi - one),
                                          AlgebraElement::zero(n_modes), samples);
        });
        tasks.push_back([=] {
            return check_element_relation("omega.absorb.left", {{"i", i}},
                                          wi * pi, pi, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("omega.absorb.right", {{"i", i}},
                                          pi * wi, qinv * pi, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("omega.absorb.dagger.left", {{"i", i}},
                                          wi * pdi, qinv * pdi, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("omega.absorb.dagger.right", {{"i", i}},
                                          pdi * wi, pdi, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("zeta.square", {{"i", i}},
                                          zeta(n_modes, i) * zeta(n_modes, i), one, samples);
        });
        tasks.push_back([=] {
            // ω_i = ½{(q⁻¹+1) − (q⁻¹−1)ζ_i}
            ExactScalar half(Rational(1, 2));
            AlgebraElement rhs = half * ((qinv + ExactScalar::one()) * one -
                                         (qinv - ExactScalar::one()) * zeta(n_modes, i));
            return check_element_relation("omega.via.zeta", {{"i", i}}, wi, rhs, samples);
        });
        tasks.push_back([=] {
            ExactScalar half(Rational(1, 2));
            AlgebraElement rhs = half * ((q + ExactScalar::one()) * one -
                                         (q - ExactScalar::one()) * zeta(n_modes, i));
            return check_element_relation("omega.inverse.via.zeta", {{"i", i}},
                                          wi_inv, rhs, samples);
        });

        // ω_i^n both satisfies the closed form and composes additively
        for (int n = -3; n <= 3; ++n) {
            tasks.push_back([=] {
                AlgebraElement prod = one;
                for (int t = 0; t < std::abs(n); ++t)
                    prod *= (n > 0 ? wi : wi_inv);
                return check_element_relation("omega.power.product", {{"i", i}, {"n", n}},
                                              prod, omega_power(n_modes, i, n), samples);
            });
            for (int m = -3; m <= 3; ++m) {
                tasks.push_back([=] {
                    return check_element_relation(
                        "omega.power.additive", {{"i", i}, {"m", m}, {"n", n}},
                        omega_power(n_modes, i, m) * omega_power(n_modes, i, n),
                        omega_power(n_modes, i, m + n), samples);
                });
            }
        }

        for (int j = 1; j <= n_modes; ++j) {
            AlgebraElement pj = psi(n_modes, j), pdj = psi_dagger(n_modes, j);
            if (j > i) {
                tasks.push_back([=] {
                    AlgebraElement wj = omega(n_modes, j);
                    return check_element_relation("omega.commute", {{"i", i}, {"j", j}},
                                                  wi * wj, wj * wi, samples);
                });
            }
            if (j != i) {
                tasks.push_back([=] {
                    return check_element_relation("omega.conj.annih.diff", {{"i", i}, {"j", j}},
                                                  wi * pj * wi_inv, pj, samples);
                });
                tasks.push_back([=] {
                    return check_element_relation("omega.conj.create.diff", {{"i", i}, {"j", j}},
                                                  wi * pdj * wi_inv, pdj, samples);
                });
                tasks.push_back([=] {
                    return check_element_relation("car.mixed.offdiag", {{"i", i}, {"j", j}},
                                                  pi * pdj + pdj * pi,
                                                  AlgebraElement::zero(n_modes), samples);
                });
            }
            if (j >= i) {
                tasks.push_back([=] {
                    return check_element_relation("car.annih.anticommute", {{"i", i}, {"j", j}},
                                                  pi * pj + pj * pi,
                                                  AlgebraElement::zero(n_modes), samples);
                });
                tasks.push_back([=] {
                    return check_element_relation("car.create.anticommute", {{"i", i}, {"j", j}},
                                                  pdi * pdj + pdj * pdi,
                                                  AlgebraElement::zero(n_modes), samples);
                });
            }
        }
        tasks.push_back([=] {
            return check_element_relation("car.mixed.diag", {{"i", i}},
                                          pi * pdi + pdi * pi, one, samples);
        });
    }

    rep.checks = run_checks(tasks, jobs);
    return rep;
}

}  // namespace qfermion
