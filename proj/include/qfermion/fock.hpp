#pragma once

#include "qfermion/clifford.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace qfermion {

namespace detail {
inline ExactScalar conj_value(const ExactScalar& x) { return x.conj(); }
inline QISqrt2 conj_value(const QISqrt2& x) { return x.conj(); }
inline std::complex<double> conj_value(const std::complex<double>& x) { return std::conj(x); }
}  // namespace detail

/** Small dense matrix over an exact or floating scalar type. */
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = r.data_[k] + o.data_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        Matrix r = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = r.data_[k] - o.data_[k];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T{}) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) = r(i, j) + a * o(k, j);
            }
        return r;
    }
    Matrix operator*(const T& c) const {
        Matrix r = *this;
        for (auto& v : r.data_) v = v * c;
        return r;
    }

    Matrix conjugate_transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = detail::conj_value((*this)(i, j));
        return r;
    }

    static Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                if (a(i, j) == T{}) continue;
                for (std::size_t k = 0; k < b.rows(); ++k)
                    for (std::size_t l = 0; l < b.cols(); ++l)
                        r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
            }
        return r;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!(v == T{})) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

// ----- Fock space -----------------------------------------------------------
//
// Basis vector |m>, m ∈ {0,1}^N, is indexed by Σ m_i 2^{i−1}.  The action is
//   ψ_i |m> = (−1)^{m_1+…+m_{i−1}} δ_{m_i,1} |m − e_i>
//   ψ_i†|m> = (−1)^{m_1+…+m_{i−1}} δ_{m_i,0} |m + e_i>
// (the creation condition reads δ_{m_i,0}; ψ_i†ψ_i† = 0 forces it).

inline std::size_t fock_dim(int n_modes) { return std::size_t{1} << n_modes; }

// apply one normal-ordered monomial to basis state `m`; returns false when
// the result vanishes, otherwise sets `out` and `sign`.
inline bool mono_apply_basis(const FermionMonomial& mono, std::size_t m,
                             std::size_t& out, int& sign) {
    std::size_t state = m;
    int s = 1;
    // annihilators act first, rightmost (highest index) first
    for (int i = 15; i >= 0; --i) {
        if (!(mono.ann & (1u << i))) continue;
        if (!(state & (1u << i))) return false;
        if (popcount16(static_cast<std::uint16_t>(state & ((1u << i) - 1))) & 1) s = -s;
        state &= ~(std::size_t{1} << i);
    }
    for (int i = 15; i >= 0; --i) {
        if (!(mono.dag & (1u << i))) continue;
        if (state & (1u << i)) return false;
        if (popcount16(static_cast<std::uint16_t>(state & ((1u << i) - 1))) & 1) s = -s;
        state |= (std::size_t{1} << i);
    }
    out = state;
    sign = s;
    return true;
}

// apply an algebra element to a Fock vector over scalar type T;
// `convert` maps each ExactScalar coefficient into T.
template <typename T, typename Conv>
std::vector<T> apply(const AlgebraElement& x, const std::vector<T>& v, Conv&& convert) {
    const std::size_t dim = fock_dim(x.modes());
    if (v.size() != dim) throw std::invalid_argument("Fock vector dimension mismatch");
    std::vector<T> out(dim, T{});
    for (const auto& [mono, coeff] : x.terms()) {
        T c = convert(coeff);
        for (std::size_t m = 0; m < dim; ++m) {
            if (v[m] == T{}) continue;
            std::size_t target;
            int sign;
            if (!mono_apply_basis(mono, m, target, sign)) continue;
            T w = c * v[m];
            out[target] = (sign < 0) ? out[target] - w : out[target] + w;
        }
    }
    return out;
}

inline std::vector<ExactScalar> apply(const AlgebraElement& x, const std::vector<ExactScalar>& v) {
    return apply(x, v, [](const ExactScalar& c) { return c; });
}

template <typename T, typename Conv>
Matrix<T> to_matrix_impl(const AlgebraElement& x, Conv&& convert) {
    const std::size_t dim = fock_dim(x.modes());
    Matrix<T> mat(dim, dim);
    for (const auto& [mono, coeff] : x.terms()) {
        T c = convert(coeff);
        for (std::size_t m = 0; m < dim; ++m) {
            std::size_t target;
            int sign;
            if (!mono_apply_basis(mono, m, target, sign)) continue;
            mat(target, m) = (sign < 0) ? mat(target, m) - c : mat(target, m) + c;
        }
    }
    return mat;
}

inline Matrix<ExactScalar> to_matrix(const AlgebraElement& x) {
    return to_matrix_impl<ExactScalar>(x, [](const ExactScalar& c) { return c; });
}

// exact matrix at a rational sample value of q (coefficients must be even in s)
inline Matrix<QISqrt2> to_matrix_at(const AlgebraElement& x, const Rational& q) {
    return to_matrix_impl<QISqrt2>(x, [&q](const ExactScalar& c) { return c.eval_q(q); });
}

inline Matrix<std::complex<double>> to_matrix_complex(const AlgebraElement& x, double q) {
    return to_matrix_impl<std::complex<double>>(
        x, [q](const ExactScalar& c) { return c.eval_complex(q); });
}

// parity operator P|m> = (−1)^{|m|}|m>
template <typename T>
Matrix<T> parity_matrix(int n_modes) {
    const std::size_t dim = fock_dim(n_modes);
    Matrix<T> p(dim, dim);
    for (std::size_t m = 0; m < dim; ++m)
        p(m, m) = (popcount16(static_cast<std::uint16_t>(m)) & 1) ? T{-1} : T{1};
    return p;
}

// V = ⊕_r V_r by fermion number; returns the basis indices of each V_r
inline std::vector<std::vector<std::size_t>> weight_sectors(int n_modes) {
    std::vector<std::vector<std::size_t>> sectors(static_cast<std::size_t>(n_modes) + 1);
    for (std::size_t m = 0; m < fock_dim(n_modes); ++m)
        sectors[popcount16(static_cast<std::uint16_t>(m))].push_back(m);
    return sectors;
}

// rank of a matrix over the field QISqrt2, by Gaussian elimination
inline std::size_t rank(Matrix<QISqrt2> m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
        QISqrt2 inv = m(rank, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m(rank, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m(i, col).is_zero()) continue;
            QISqrt2 f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace qfermion
