#pragma once

#include "qfermion/fock.hpp"

#include <array>
#include <map>

namespace qfermion {

/** key of one graded-tensor term: a tuple of homogeneous monomials */
struct TensorKey {
    std::array<FermionMonomial, 3> comp{};  // unused slots stay identity

    bool operator==(const TensorKey& o) const { return comp == o.comp; }
    bool operator<(const TensorKey& o) const { return comp < o.comp; }
};

/**
 * GradedTensor: element of A(N)^⊗n (n = 2 or 3) with the Koszul-sign
 * multiplication rule
 *
 *   (a_1⊗…⊗a_n)(b_1⊗…⊗b_n) = (−1)^M a_1b_1 ⊗ … ⊗ a_nb_n,
 *   M = Σ_{i>j} d(a_i) d(b_j),
 *
 * on homogeneous tuples, extended bilinearly.  Every stored tuple component
 * is a single normal-ordered monomial, hence homogeneous by construction.
 */
class GradedTensor {
public:
    GradedTensor() = default;
    GradedTensor(int n_modes, int arity) : n_(n_modes), arity_(arity) {
        if (arity != 2 && arity != 3) throw std::invalid_argument("tensor arity must be 2 or 3");
    }

    static GradedTensor zero(int n_modes, int arity) { return GradedTensor(n_modes, arity); }
    static GradedTensor unit(int n_modes, int arity) {
        GradedTensor r(n_modes, arity);
        r.terms_[TensorKey{}] = ExactScalar::one();
        return r;
    }

    // x ⊗ y (bilinear, no sign: this is a tensor of elements, not a product)
    static GradedTensor pure(const AlgebraElement& x, const AlgebraElement& y) {
        GradedTensor r(x.modes(), 2);
        if (x.modes() != y.modes()) throw std::invalid_argument("mode count mismatch");
        for (const auto& [mx, cx] : x.terms())
            for (const auto& [my, cy] : y.terms())
                r.add(TensorKey{{mx, my}}, cx * cy);
        return r;
    }
    static GradedTensor pure(const AlgebraElement& x, const AlgebraElement& y,
                             const AlgebraElement& z) {
        GradedTensor r(x.modes(), 3);
        if (x.modes() != y.modes() || x.modes() != z.modes())
            throw std::invalid_argument("mode count mismatch");
        for (const auto& [mx, cx] : x.terms())
            for (const auto& [my, cy] : y.terms())
                for (const auto& [mz, cz] : z.terms())
                    r.add(TensorKey{{mx, my, mz}}, cx * cy * cz);
        return r;
    }

    int modes() const { return n_; }
    int arity() const { return arity_; }
    const std::map<TensorKey, ExactScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add(const TensorKey& k, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const GradedTensor& o) const {
        return n_ == o.n_ && arity_ == o.arity_ && terms_ == o.terms_;
    }
    bool operator!=(const GradedTensor& o) const { return !(*this == o); }

    GradedTensor operator+(const GradedTensor& o) const {
        require_compatible(o);
        GradedTensor r = *this;
        for (const auto& [k, c] : o.terms_) r.add(k, c);
        return r;
    }
    GradedTensor operator-() const {
        GradedTensor r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    GradedTensor operator-(const GradedTensor& o) const { return *this + (-o); }

    GradedTensor operator*(const GradedTensor& o) const {
        require_compatible(o);
        GradedTensor r(n_, arity_);
        for (const auto& [kx, cx] : terms_) {
            std::array<int, 3> dx{kx.comp[0].grade_bit(), kx.comp[1].grade_bit(),
                                  kx.comp[2].grade_bit()};
            for (const auto& [ky, cy] : o.terms_) {
                int m = 0;
                for (int i = 1; i < arity_; ++i)
                    for (int j = 0; j < i; ++j)
                        m += dx[i] * ky.comp[j].grade_bit();
                ExactScalar c = cx * cy;
                if (m & 1) c = -c;
                accumulate_product(r, kx, ky, c);
            }
        }
        return r;
    }

    GradedTensor operator*(const ExactScalar& c) const {
        GradedTensor r(n_, arity_);
        for (const auto& [k, ck] : terms_) r.add(k, ck * c);
        return r;
    }

    GradedTensor& operator+=(const GradedTensor& o) { return *this = *this + o; }
    GradedTensor& operator-=(const GradedTensor& o) { return *this = *this - o; }
    GradedTensor& operator*=(const GradedTensor& o) { return *this = *this * o; }

    // graded star: (a_1⊗…⊗a_n)* = (−1)^L a_1*⊗…⊗a_n*, L = Σ_{i<j} d(a_i)d(a_j)
    GradedTensor star() const {
        GradedTensor r(n_, arity_);
        for (const auto& [k, c] : terms_) {
            int l = 0;
            for (int i = 0; i < arity_; ++i)
                for (int j = i + 1; j < arity_; ++j)
                    l += k.comp[i].grade_bit() * k.comp[j].grade_bit();
            TensorKey sk;
            int sign = (l & 1) ? -1 : 1;
            for (int i = 0; i < arity_; ++i) {
                const FermionMonomial& m = k.comp[i];
                int kk = popcount16(m.ann), ll = popcount16(m.dag);
                if ((kk * (kk - 1) / 2 + ll * (ll - 1) / 2) & 1) sign = -sign;
                sk.comp[i] = FermionMonomial{m.ann, m.dag};
            }
            r.add(sk, sign < 0 ? -c.conj() : c.conj());
        }
        return r;
    }

    // Y(a_1⊗…⊗a_n) = Y(a_n)⊗…⊗Y(a_1), componentwise word reversal, linear
    GradedTensor reversal_y() const {
        GradedTensor r(n_, arity_);
        for (const auto& [k, c] : terms_) {
            std::array<AlgebraElement, 3> rev;
            for (int i = 0; i < arity_; ++i)
                rev[i] = AlgebraElement::monomial(n_, k.comp[arity_ - 1 - i]).reversal_y();
            distribute(r, rev, c);
        }
        return r;
    }

    // m(a_1⊗…⊗a_n) = a_1 a_2 … a_n
    AlgebraElement mult_m() const {
        AlgebraElement out(n_);
        for (const auto& [k, c] : terms_) {
            AlgebraElement prod = AlgebraElement::monomial(n_, k.comp[0], c);
            for (int i = 1; i < arity_; ++i)
                prod *= AlgebraElement::monomial(n_, k.comp[i]);
            out += prod;
        }
        return out;
    }

    // τ(a⊗b) = b⊗a, no sign, arity 2 only
    GradedTensor flip_tau() const {
        require_arity2("flip_tau");
        GradedTensor r(n_, 2);
        for (const auto& [k, c] : terms_)
            r.add(TensorKey{{k.comp[1], k.comp[0]}}, c);
        return r;
    }

    // Z(a⊗b) = Y^{d(a)d(b)}(a⊗b)
    GradedTensor map_z() const {
        require_arity2("map_z");
        GradedTensor r(n_, 2);
        for (const auto& [k, c] : terms_) {
            if (k.comp[0].grade_bit() && k.comp[1].grade_bit()) {
                GradedTensor one_term(n_, 2);
                one_term.add(k, c);
                r += one_term.reversal_y();
            } else {
                r.add(k, c);
            }
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            if (!out.empty()) out += "  +  ";
            out += "[" + c.to_string() + "] ";
            for (int i = 0; i < arity_; ++i) {
                if (i) out += " (x) ";
                out += k.comp[i].to_string();
            }
        }
        return out;
    }

private:
    void require_compatible(const GradedTensor& o) const {
        if (n_ != o.n_ || arity_ != o.arity_)
            throw std::invalid_argument("tensor shape mismatch");
    }
    void require_arity2(const char* op) const {
        if (arity_ != 2) throw std::invalid_argument(std::string(op) + ": arity 2 required");
    }

    // r += c · (x_1 y_1) ⊗ … ⊗ (x_n y_n), each componentwise product expanded
    void accumulate_product(GradedTensor& r, const TensorKey& kx, const TensorKey& ky,
                            const ExactScalar& c) const {
        std::array<std::vector<detail::SignedMono>, 3> expanded;
        for (int i = 0; i < arity_; ++i) {
            expanded[i] = detail::mono_mul_expand(kx.comp[i], ky.comp[i]);
            if (expanded[i].empty()) return;
        }
        TensorKey key;
        if (arity_ == 2) {
            for (const auto& [m0, s0] : expanded[0])
                for (const auto& [m1, s1] : expanded[1]) {
                    key.comp = {m0, m1, FermionMonomial{}};
                    r.add(key, (s0 * s1) < 0 ? -c : c);
                }
        } else {
            for (const auto& [m0, s0] : expanded[0])
                for (const auto& [m1, s1] : expanded[1])
                    for (const auto& [m2, s2] : expanded[2]) {
                        key.comp = {m0, m1, m2};
                        r.add(key, (s0 * s1 * s2) < 0 ? -c : c);
                    }
        }
    }

    // r += c · e_1 ⊗ … ⊗ e_n for element-valued components
    void distribute(GradedTensor& r, const std::array<AlgebraElement, 3>& comps,
                    const ExactScalar& c) const {
        TensorKey key;
        if (arity_ == 2) {
            for (const auto& [m0, c0] : comps[0].terms())
                for (const auto& [m1, c1] : comps[1].terms()) {
                    key.comp = {m0, m1, FermionMonomial{}};
                    r.add(key, c * c0 * c1);
                }
        } else {
            for (const auto& [m0, c0] : comps[0].terms())
                for (const auto& [m1, c1] : comps[1].terms())
                    for (const auto& [m2, c2] : comps[2].terms()) {
                        key.comp = {m0, m1, m2};
                        r.add(key, c * c0 * c1 * c2);
                    }
        }
    }

    int n_ = 1;
    int arity_ = 2;
    std::map<TensorKey, ExactScalar> terms_;
};

inline GradedTensor operator*(const ExactScalar& c, const GradedTensor& t) { return t * c; }

// matrix of a⊗b on V⊗V: a ↦ mat(a)·P^{d(b)}, b ↦ mat(b), Kronecker product.
// Conjugating the left factor by parity reproduces the Koszul sign, making
// this embedding multiplicative (the independent oracle for the sign rules).
template <typename T, typename Conv>
Matrix<T> tensor_to_matrix_impl(const GradedTensor& t, Conv&& convert) {
    if (t.arity() != 2) throw std::invalid_argument("tensor_to_matrix: arity 2 required");
    const std::size_t dim = fock_dim(t.modes());
    Matrix<T> out(dim * dim, dim * dim);
    const Matrix<T> par = parity_matrix<T>(t.modes());
    auto unit_conv = [](const ExactScalar&) { return T{1}; };  // monomials carry coefficient 1
    for (const auto& [k, c] : t.terms()) {
        Matrix<T> ma = to_matrix_impl<T>(AlgebraElement::monomial(t.modes(), k.comp[0]), unit_conv);
        Matrix<T> mb = to_matrix_impl<T>(AlgebraElement::monomial(t.modes(), k.comp[1]), unit_conv);
        if (k.comp[1].grade_bit()) ma = ma * par;
        out = out + Matrix<T>::kron(ma, mb) * convert(c);
    }
    return out;
}

inline Matrix<ExactScalar> tensor_to_matrix(const GradedTensor& t) {
    return tensor_to_matrix_impl<ExactScalar>(t, [](const ExactScalar& c) { return c; });
}

inline Matrix<QISqrt2> tensor_to_matrix_at(const GradedTensor& t, const Rational& q) {
    return tensor_to_matrix_impl<QISqrt2>(t, [&q](const ExactScalar& c) { return c.eval_q(q); });
}

inline Matrix<std::complex<double>> tensor_to_matrix_complex(const GradedTensor& t, double q) {
    return tensor_to_matrix_impl<std::complex<double>>(
        t, [q](const ExactScalar& c) { return c.eval_complex(q); });
}

}  // namespace qfermion
