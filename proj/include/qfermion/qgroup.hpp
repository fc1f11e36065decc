#pragma once

#include "qfermion/relation.hpp"

namespace qfermion {

/** (N−1)×(N−1) Cartan matrix of type A: 2 on the diagonal, −1 adjacent. */
struct CartanMatrix {
    int size = 0;

    explicit CartanMatrix(int n_modes) : size(n_modes - 1) {}
    int operator()(int i, int j) const {  // 1-based
        if (i == j) return 2;
        return (i - j == 1 || j - i == 1) ? -1 : 0;
    }
};

/**
 * The spinor realization of the quantum-group generators inside the fermion
 * algebra:  e_i = ψ_iψ_{i+1}†,  f_i = ψ_{i+1}ψ_i†,  k_i = ω_iω_{i+1}⁻¹.
 */
struct QGroupGenerators {
    int n_modes = 2;
    std::vector<AlgebraElement> e, f, k, k_inv;  // index 0 holds i = 1

    const AlgebraElement& e_at(int i) const { return at(e, i); }
    const AlgebraElement& f_at(int i) const { return at(f, i); }
    const AlgebraElement& k_at(int i) const { return at(k, i); }
    const AlgebraElement& k_inv_at(int i) const { return at(k_inv, i); }

private:
    const AlgebraElement& at(const std::vector<AlgebraElement>& v, int i) const {
        if (i < 1 || i > static_cast<int>(v.size()))
            throw std::invalid_argument("generator index out of range");
        return v[static_cast<std::size_t>(i) - 1];
    }
};

inline QGroupGenerators build_generators(int n_modes) {
    if (n_modes < 2) throw std::invalid_argument("quantum-group generators need at least 2 modes");
    QGroupGenerators g;
    g.n_modes = n_modes;
    for (int i = 1; i < n_modes; ++i) {
        g.e.push_back(psi(n_modes, i) * psi_dagger(n_modes, i + 1));
        g.f.push_back(psi(n_modes, i + 1) * psi_dagger(n_modes, i));
        g.k.push_back(omega(n_modes, i) * omega_inverse(n_modes, i + 1));
        g.k_inv.push_back(omega(n_modes, i + 1) * omega_inverse(n_modes, i));
    }
    return g;
}

// ----- defining relations -----------------------------------------------------

inline Report verify_uq_relations(const QGroupGenerators& g, const QSamples& samples = {},
                                  unsigned jobs = 1) {
    Report rep;
    rep.suite = "qgroup";
    rep.n = g.n_modes;
    rep.q_samples = samples.to_strings();

    const int rank_count = g.n_modes - 1;
    const CartanMatrix cartan(g.n_modes);
    const AlgebraElement one = AlgebraElement::unit(g.n_modes);
    const AlgebraElement zero = AlgebraElement::zero(g.n_modes);
    std::vector<std::function<CheckResult()>> tasks;

    for (int i = 1; i <= rank_count; ++i) {
        tasks.push_back([=, &g] {
            return check_element_relation("k.inverse", {{"i", i}},
                                          g.k_at(i) * g.k_inv_at(i), one, samples);
        });
        tasks.push_back([=, &g] {
            return check_element_relation("k.inverse.swapped", {{"i", i}},
                                          g.k_inv_at(i) * g.k_at(i), one, samples);
        });
        for (int j = 1; j <= rank_count; ++j) {
            if (j > i) {
                tasks.push_back([=, &g] {
                    return check_element_relation("k.commute", {{"i", i}, {"j", j}},
                                                  g.k_at(i) * g.k_at(j),
                                                  g.k_at(j) * g.k_at(i), samples);
                });
            }
            int a = cartan(i, j);
            tasks.push_back([=, &g] {
                return check_element_relation(
                    "k.e.conjugation", {{"i", i}, {"j", j}},
                    g.k_at(i) * g.e_at(j) * g.k_inv_at(i),
                    ExactScalar::q_power(a) * g.e_at(j), samples);
            });
            tasks.push_back([=, &g] {
                return check_element_relation(
                    "k.f.conjugation", {{"i", i}, {"j", j}},
                    g.k_at(i) * g.f_at(j) * g.k_inv_at(i),
                    ExactScalar::q_power(-a) * g.f_at(j), samples);
            });
            tasks.push_back([=, &g] {
                // cross-multiplied: (q²−q⁻²)(e_if_j − f_je_i) = δ_ij (k_i² − k_i⁻²)
                ExactScalar denom = ExactScalar::q_power(2) - ExactScalar::q_power(-2);
                AlgebraElement lhs = denom * (g.e_at(i) * g.f_at(j) - g.f_at(j) * g.e_at(i));
                AlgebraElement rhs = (i == j)
                    ? g.k_at(i) * g.k_at(i) - g.k_inv_at(i) * g.k_inv_at(i)
                    : zero;
                return check_element_relation("ef.commutator", {{"i", i}, {"j", j}},
                                              lhs, rhs, samples);
            });
            if (i != j) {
                // Serre relations, Gaussian binomials taken at Q = q²
                tasks.push_back([=, &g] {
                    int bound = 1 - a;
                    AlgebraElement lhs = zero;
                    for (int n = 0; n <= bound; ++n) {
                        AlgebraElement term = one;
                        for (int t = 0; t < bound - n; ++t) term *= g.e_at(i);
                        term *= g.e_at(j);
                        for (int t = 0; t < n; ++t) term *= g.e_at(i);
                        ExactScalar coeff = gauss_binom(bound, n, 2);
                        lhs += (n & 1) ? (-coeff) * term : coeff * term;
                    }
                    return check_element_relation("serre.e", {{"i", i}, {"j", j}},
                                                  lhs, zero, samples);
                });
                tasks.push_back([=, &g] {
                    int bound = 1 - a;
                    AlgebraElement lhs = zero;
                    for (int n = 0; n <= bound; ++n) {
                        AlgebraElement term = one;
                        for (int t = 0; t < bound - n; ++t) term *= g.f_at(i);
                        term *= g.f_at(j);
                        for (int t = 0; t < n; ++t) term *= g.f_at(i);
                        ExactScalar coeff = gauss_binom(bound, n, 2);
                        lhs += (n & 1) ? (-coeff) * term : coeff * term;
                    }
                    return check_element_relation("serre.f", {{"i", i}, {"j", j}},
                                                  lhs, zero, samples);
                });
            }
        }
    }
    rep.checks = run_checks(tasks, jobs);
    return rep;
}

// the additional relations the spinor realization satisfies on V
inline Report verify_extra_relations(const QGroupGenerators& g, const QSamples& samples = {},
                                     unsigned jobs = 1) {
    Report rep;
    rep.suite = "qgroup.extra";
    rep.n = g.n_modes;
    rep.q_samples = samples.to_strings();

    const AlgebraElement one = AlgebraElement::unit(g.n_modes);
    const AlgebraElement zero = AlgebraElement::zero(g.n_modes);
    const ExactScalar q = ExactScalar::q_power(1), qinv = ExactScalar::q_power(-1);
    std::vector<std::function<CheckResult()>> tasks;

    for (int i = 1; i < g.n_modes; ++i) {
        const AlgebraElement e = g.e_at(i), f = g.f_at(i);
        const AlgebraElement k = g.k_at(i), kinv = g.k_inv_at(i);
        tasks.push_back([=] {
            return check_element_relation("e.nilpotent", {{"i", i}}, e * e, zero, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("f.nilpotent", {{"i", i}}, f * f, zero, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("k.cubic", {{"i", i}},
                                          (k - one) * (k - q * one) * (k - qinv * one),
                                          zero, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("efe", {{"i", i}}, e * f * e, e, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("fef", {{"i", i}}, f * e * f, f, samples);
        });
        tasks.push_back([=] {
            // cross-multiplied: q·k_i = q + (1−q)(f_ie_i − q e_if_i)
            AlgebraElement lhs = q * k;
            AlgebraElement rhs = q * one +
                (ExactScalar::one() - q) * (f * e - q * (e * f));
            return check_element_relation("k.from.ef", {{"i", i}}, lhs, rhs, samples);
        });
        tasks.push_back([=] {
            AlgebraElement lhs = q * kinv;
            AlgebraElement rhs = q * one +
                (ExactScalar::one() - q) * (e * f - q * (f * e));
            return check_element_relation("kinv.from.ef", {{"i", i}}, lhs, rhs, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("ek", {{"i", i}}, e * k, qinv * e, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("fk", {{"i", i}}, f * k, q * f, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("ke", {{"i", i}}, k * e, q * e, samples);
        });
        tasks.push_back([=] {
            return check_element_relation("kf", {{"i", i}}, k * f, qinv * f, samples);
        });
    }
    rep.checks = run_checks(tasks, jobs);
    return rep;
}

inline Report verify_star_structure(const QGroupGenerators& g, const QSamples& samples = {},
                                    unsigned jobs = 1) {
    Report rep;
    rep.suite = "qgroup.star";
    rep.n = g.n_modes;
    rep.q_samples = samples.to_strings();
    std::vector<std::function<CheckResult()>> tasks;
    for (int i = 1; i < g.n_modes; ++i) {
        tasks.push_back([=, &g] {
            return check_element_relation("star.e", {{"i", i}},
                                          g.e_at(i).star(), g.f_at(i), samples);
        });
        tasks.push_back([=, &g] {
            return check_element_relation("star.f", {{"i", i}},
                                          g.f_at(i).star(), g.e_at(i), samples);
        });
        tasks.push_back([=, &g] {
            return check_element_relation("star.k", {{"i", i}},
                                          g.k_at(i).star(), g.k_at(i), samples);
        });
        tasks.push_back([=, &g] {
            return check_element_relation("star.kinv", {{"i", i}},
                                          g.k_inv_at(i).star(), g.k_inv_at(i), samples);
        });
    }
    rep.checks = run_checks(tasks, jobs);
    return rep;
}

// ----- standard coproduct ----------------------------------------------------

enum class GeneratorKind { E, F, K, KInv };

inline GradedTensor coproduct_delta(const QGroupGenerators& g, GeneratorKind which, int i) {
    switch (which) {
        case GeneratorKind::E:
            return GradedTensor::pure(g.k_at(i), g.e_at(i)) +
                   GradedTensor::pure(g.e_at(i), g.k_inv_at(i));
        case GeneratorKind::F:
            return GradedTensor::pure(g.k_at(i), g.f_at(i)) +
                   GradedTensor::pure(g.f_at(i), g.k_inv_at(i));
        case GeneratorKind::K:
            return GradedTensor::pure(g.k_at(i), g.k_at(i));
        case GeneratorKind::KInv:
            return GradedTensor::pure(g.k_inv_at(i), g.k_inv_at(i));
    }
    throw std::logic_error("unreachable");
}

// the coproduct images must satisfy the defining relations in A(N)⊗A(N)
inline Report verify_coproduct_relations(const QGroupGenerators& g,
                                         const QSamples& samples = {}, unsigned jobs = 1) {
    Report rep;
    rep.suite = "coproduct";
    rep.n = g.n_modes;
    rep.q_samples = samples.to_strings();

    const int rank_count = g.n_modes - 1;
    const CartanMatrix cartan(g.n_modes);
    const GradedTensor unit2 = GradedTensor::unit(g.n_modes, 2);
    const GradedTensor zero2 = GradedTensor::zero(g.n_modes, 2);
    std::vector<std::function<CheckResult()>> tasks;

    std::vector<GradedTensor> de, df, dk, dkinv;
    for (int i = 1; i <= rank_count; ++i) {
        de.push_back(coproduct_delta(g, GeneratorKind::E, i));
        df.push_back(coproduct_delta(g, GeneratorKind::F, i));
        dk.push_back(coproduct_delta(g, GeneratorKind::K, i));
        dkinv.push_back(coproduct_delta(g, GeneratorKind::KInv, i));
    }
    auto E = [&](int i) { return de[static_cast<std::size_t>(i) - 1]; };
    auto F = [&](int i) { return df[static_cast<std::size_t>(i) - 1]; };
    auto K = [&](int i) { return dk[static_cast<std::size_t>(i) - 1]; };
    auto KInv = [&](int i) { return dkinv[static_cast<std::size_t>(i) - 1]; };

    for (int i = 1; i <= rank_count; ++i) {
        tasks.push_back([=] {
            return check_tensor_relation("coproduct.k.inverse", {{"i", i}},
                                         K(i) * KInv(i), unit2, samples);
        });
        for (int j = 1; j <= rank_count; ++j) {
            int a = cartan(i, j);
            if (j > i) {
                tasks.push_back([=] {
                    return check_tensor_relation("coproduct.k.commute", {{"i", i}, {"j", j}},
                                                 K(i) * K(j), K(j) * K(i), samples);
                });
            }
            tasks.push_back([=] {
                return check_tensor_relation("coproduct.k.e.conjugation", {{"i", i}, {"j", j}},
                                             K(i) * E(j) * KInv(i),
                                             ExactScalar::q_power(a) * E(j), samples);
            });
            tasks.push_back([=] {
                return check_tensor_relation("coproduct.k.f.conjugation", {{"i", i}, {"j", j}},
                                             K(i) * F(j) * KInv(i),
                                             ExactScalar::q_power(-a) * F(j), samples);
            });
            tasks.push_back([=] {
                ExactScalar denom = ExactScalar::q_power(2) - ExactScalar::q_power(-2);
                GradedTensor lhs = denom * (E(i) * F(j) - F(j) * E(i));
                GradedTensor rhs = (i == j) ? K(i) * K(i) - KInv(i) * KInv(i) : zero2;
                return check_tensor_relation("coproduct.ef.commutator", {{"i", i}, {"j", j}},
                                             lhs, rhs, samples);
            });
            if (i != j) {
                tasks.push_back([=] {
                    int bound = 1 - a;
                    GradedTensor lhs = zero2;
                    for (int n = 0; n <= bound; ++n) {
                        GradedTensor term = unit2;
                        for (int t = 0; t < bound - n; ++t) term *= E(i);
                        term *= E(j);
                        for (int t = 0; t < n; ++t) term *= E(i);
                        ExactScalar coeff = gauss_binom(bound, n, 2);
                        lhs += (n & 1) ? (-coeff) * term : coeff * term;
                    }
                    return check_tensor_relation("coproduct.serre.e", {{"i", i}, {"j", j}},
                                                 lhs, zero2, samples);
                });
                tasks.push_back([=] {
                    int bound = 1 - a;
                    GradedTensor lhs = zero2;
                    for (int n = 0; n <= bound; ++n) {
                        GradedTensor term = unit2;
                        for (int t = 0; t < bound - n; ++t) term *= F(i);
                        term *= F(j);
                        for (int t = 0; t < n; ++t) term *= F(i);
                        ExactScalar coeff = gauss_binom(bound, n, 2);
                        lhs += (n & 1) ? (-coeff) * term : coeff * term;
                    }
                    return check_tensor_relation("coproduct.serre.f", {{"i", i}, {"j", j}},
                                                 lhs, zero2, samples);
                });
            }
        }
        tasks.push_back([=, &g] {
            // Δ(e_i)² does not vanish although e_i² = 0
            bool nilpotent_inside = (g.e_at(i) * g.e_at(i)).is_zero();
            bool square_nonzero = !(E(i) * E(i)).is_zero();
            return CheckResult::boolean("coproduct.e.square.nonvanishing", square_nonzero && nilpotent_inside,
                                        {{"i", i}});
        });
    }
    rep.checks = run_checks(tasks, jobs);
    return rep;
}

// ----- weight decomposition --------------------------------------------------

// exact invariance on V: every generator maps each weight sector into itself
// (structural zero check on the exact matrices), plus an irreducibility rank
// check at two generic rational q values.
inline Report check_invariance(int n_modes, const QSamples& samples = {}, unsigned jobs = 1) {
    Report rep;
    rep.suite = "fock.weights";
    rep.n = n_modes;
    rep.q_samples = samples.to_strings();
    QGroupGenerators g = build_generators(n_modes);
    auto sectors = weight_sectors(n_modes);
    std::vector<std::function<CheckResult()>> tasks;

    // sector sizes are binomial(N, r) and they partition V
    tasks.push_back([=] {
        std::size_t total = 0;
        bool sizes_ok = true;
        long long binom = 1;
        for (int r = 0; r <= n_modes; ++r) {
            if (sectors[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(binom))
                sizes_ok = false;
            total += sectors[static_cast<std::size_t>(r)].size();
            binom = binom * (n_modes - r) / (r + 1);
        }
        return CheckResult::boolean("weights.sector.sizes",
                                    sizes_ok && total == fock_dim(n_modes), {{"n", n_modes}});
    });

    for (int i = 1; i < n_modes; ++i) {
        for (auto [name, elem] : {std::pair<const char*, AlgebraElement>{"e", g.e_at(i)},
                                  {"f", g.f_at(i)},
                                  {"k", g.k_at(i)}}) {
            std::string id = std::string("weights.invariance.") + name;
            tasks.push_back([=] {
                Matrix<ExactScalar> m = to_matrix(elem);
                bool ok = true;
                for (std::size_t col = 0; col < m.cols() && ok; ++col) {
                    int col_w = popcount16(static_cast<std::uint16_t>(col));
                    for (std::size_t row = 0; row < m.rows() && ok; ++row)
                        if (!m(row, col).is_zero() &&
                            popcount16(static_cast<std::uint16_t>(row)) != col_w)
                            ok = false;
                }
                return CheckResult::boolean(id, ok, {{"i", i}});
            });
        }
    }

    // orbit of any single basis vector of V_r under {e_i, f_i} spans V_r
    for (const auto& q : samples.values) {
        std::vector<Matrix<QISqrt2>> action;
        for (int i = 1; i < n_modes; ++i) {
            action.push_back(to_matrix_at(g.e_at(i), q));
            action.push_back(to_matrix_at(g.f_at(i), q));
        }
        std::ostringstream qs;
        qs << q;
        int qnum = static_cast<int>(numerator(q).convert_to<long long>());
        int qden = static_cast<int>(denominator(q).convert_to<long long>());
        for (int r = 0; r <= n_modes; ++r) {
            const auto& sector = sectors[static_cast<std::size_t>(r)];
            for (std::size_t start : sector) {
                tasks.push_back([=, &g] {
                    const std::size_t dim = fock_dim(n_modes);
                    std::vector<std::vector<QISqrt2>> span;
                    std::vector<std::vector<QISqrt2>> frontier;
                    std::vector<QISqrt2> v0(dim);
                    v0[start] = QISqrt2::one();
                    // row-reduced span basis with pivot bookkeeping
                    std::vector<std::size_t> pivots;
                    auto try_add = [&](std::vector<QISqrt2> v) {
                        for (std::size_t b = 0; b < span.size(); ++b) {
                            const QISqrt2& lead = v[pivots[b]];
                            if (!lead.is_zero()) {
                                QISqrt2 f = lead;
                                for (std::size_t t = 0; t < dim; ++t)
                                    v[t] -= f * span[b][t];
                            }
                        }
                        std::size_t p = 0;
                        while (p < dim && v[p].is_zero()) ++p;
                        if (p == dim) return false;
                        QISqrt2 inv = v[p].inverse();
                        for (std::size_t t = 0; t < dim; ++t) v[t] *= inv;
                        span.push_back(v);
                        pivots.push_back(p);
                        frontier.push_back(std::move(v));
                        return true;
                    };
                    try_add(v0);
                    while (!frontier.empty()) {
                        auto v = std::move(frontier.back());
                        frontier.pop_back();
                        for (const auto& m : action) {
                            std::vector<QISqrt2> w(dim);
                            for (std::size_t row = 0; row < dim; ++row) {
                                QISqrt2 sum;
                                for (std::size_t cc = 0; cc < dim; ++cc)
                                    if (!m(row, cc).is_zero() && !v[cc].is_zero())
                                        sum += m(row, cc) * v[cc];
                                w[row] = sum;
                            }
                            try_add(std::move(w));
                        }
                    }
                    bool ok = span.size() == sector.size();
                    return CheckResult::boolean("weights.irreducible",
                                                ok,
                                                {{"r", r},
                                                 {"start", static_cast<int>(start)},
                                                 {"q_num", qnum},
                                                 {"q_den", qden}});
                });
            }
        }
    }

    rep.checks = run_checks(tasks, jobs);
    return rep;
}

}  // namespace qfermion
