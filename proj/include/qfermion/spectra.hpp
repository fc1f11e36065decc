#pragma once

#include "qfermion/homs.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <complex>
#include <fstream>
#include <numeric>
#include <sstream>

namespace qfermion {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/**
 * CouplingMatrix: the N×N coefficient matrix of the doubled-space quadratic
 * operator.  Variant A demands a real symmetric matrix, variant B a purely
 * imaginary symmetric one (i·a real symmetric).
 */
struct CouplingMatrix {
    int n = 1;
    char variant = 'A';
    CMatrix a;

    static constexpr double kInputTol = 1e-12;

    void validate() const {
        if (n < 1 || n > 6) throw std::invalid_argument("coupling: mode count out of range [1,6]");
        if (variant != 'A' && variant != 'B')
            throw std::invalid_argument("coupling: variant must be A or B");
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("coupling: matrix shape mismatch");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (std::abs(a(i, j) - a(j, i)) > kInputTol)
                    throw std::invalid_argument("coupling: matrix must be symmetric");
                double off = (variant == 'A') ? std::abs(a(i, j).imag())
                                              : std::abs(a(i, j).real());
                if (off > kInputTol)
                    throw std::invalid_argument(
                        variant == 'A' ? "coupling: variant A needs real entries"
                                       : "coupling: variant B needs purely imaginary entries");
            }
    }

    // real symmetric core: a itself (variant A) or Im(a) (variant B)
    Eigen::MatrixXd symmetric_core() const {
        Eigen::MatrixXd g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                g(i, j) = (variant == 'A') ? a(i, j).real() : a(i, j).imag();
        return g;
    }

    static CouplingMatrix from_json(const nlohmann::json& j) {
        CouplingMatrix c;
        c.n = j.at("n").get<int>();
        std::string v = j.at("variant").get<std::string>();
        if (v.size() != 1) throw std::invalid_argument("coupling: bad variant string");
        c.variant = static_cast<char>(std::toupper(static_cast<unsigned char>(v[0])));
        const auto& entries = j.at("entries");
        if (static_cast<int>(entries.size()) != c.n * c.n)
            throw std::invalid_argument("coupling: entry count mismatch");
        c.a = CMatrix::Zero(c.n, c.n);
        for (int k = 0; k < c.n * c.n; ++k) {
            const auto& e = entries[static_cast<std::size_t>(k)];
            if (!e.is_array() || e.size() != 2)
                throw std::invalid_argument("coupling: entries must be [re, im] pairs");
            c.a(k / c.n, k % c.n) = Cplx(e[0].get<double>(), e[1].get<double>());
        }
        c.validate();
        return c;
    }

    // CSV: header line "N,variant"; then one line per row holding 2N numbers,
    // re and im interleaved
    static CouplingMatrix from_csv(std::istream& in) {
        CouplingMatrix c;
        std::string line;
        if (!std::getline(in, line)) throw std::invalid_argument("coupling csv: empty file");
        {
            std::istringstream hs(line);
            std::string n_str, v_str;
            if (!std::getline(hs, n_str, ',') || !std::getline(hs, v_str, ','))
                throw std::invalid_argument("coupling csv: bad header");
            c.n = std::stoi(n_str);
            while (!v_str.empty() && v_str.front() == ' ') v_str.erase(v_str.begin());
            if (v_str.empty()) throw std::invalid_argument("coupling csv: bad variant");
            c.variant = static_cast<char>(std::toupper(static_cast<unsigned char>(v_str[0])));
        }
        if (c.n < 1 || c.n > 6) throw std::invalid_argument("coupling csv: bad mode count");
        c.a = CMatrix::Zero(c.n, c.n);
        for (int row = 0; row < c.n; ++row) {
            if (!std::getline(in, line))
                throw std::invalid_argument("coupling csv: missing row");
            std::istringstream rs(line);
            std::string cell;
            for (int col = 0; col < c.n; ++col) {
                if (!std::getline(rs, cell, ','))
                    throw std::invalid_argument("coupling csv: short row");
                double re = std::stod(cell);
                if (!std::getline(rs, cell, ','))
                    throw std::invalid_argument("coupling csv: short row");
                double im = std::stod(cell);
                c.a(row, col) = Cplx(re, im);
            }
        }
        c.validate();
        return c;
    }

    static CouplingMatrix load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("coupling: cannot open '" + path + "'");
        char first = 0;
        in >> first;
        in.seekg(0);
        if (first == '{') {
            nlohmann::json j;
            in >> j;
            return from_json(j);
        }
        return from_csv(in);
    }
};

namespace detail {

inline CMatrix to_eigen(const Matrix<Cplx>& m) {
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

inline CMatrix hom_image_matrix(const FermionHom& h, int n_modes, int i) {
    // the homomorphism images carry no q dependence; any positive sample works
    return to_eigen(tensor_to_matrix_complex(h.psi_image(n_modes, i), 1.0));
}

}  // namespace detail

// H on V⊗V from the coupling: Σ a_ij (ψ_i⊗ψ_j† ∓ ψ_i†⊗ψ_j), − for variant A
inline CMatrix build_h(const CouplingMatrix& c) {
    c.validate();
    const int n = c.n;
    // weight the numeric images of the exact tensors so the embedding stays
    // single-sourced with the symbolic machinery
    const std::size_t dim2 = fock_dim(n) * fock_dim(n);
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(dim2), static_cast<Eigen::Index>(dim2));
    const double sign = (c.variant == 'A') ? -1.0 : 1.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            Cplx w = c.a(i - 1, j - 1);
            if (w == Cplx{}) continue;
            GradedTensor hop = GradedTensor::pure(psi(n, i), psi_dagger(n, j));
            GradedTensor back = GradedTensor::pure(psi_dagger(n, i), psi(n, j));
            CMatrix mh = detail::to_eigen(tensor_to_matrix_complex(hop, 1.0));
            CMatrix mb = detail::to_eigen(tensor_to_matrix_complex(back, 1.0));
            h += w * (mh + sign * mb);
        }
    }
    return h;
}

/** unitary row basis u (rows = eigenvectors) and eigenvalues of the coupling */
struct CouplingDiagonalization {
    Eigen::MatrixXd u;       // real orthogonal; rows are eigenvectors
    Eigen::VectorXd values;  // descending
};

inline CouplingDiagonalization diagonalize_coupling(const CouplingMatrix& c) {
    c.validate();
    Eigen::MatrixXd g = c.symmetric_core();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("coupling eigensolver failed");
    Eigen::VectorXd vals = solver.eigenvalues();
    Eigen::MatrixXd vecs = solver.eigenvectors();  // columns
    std::vector<int> order(static_cast<std::size_t>(c.n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (vals(x) != vals(y)) return vals(x) > vals(y);
        return x < y;
    });
    CouplingDiagonalization out;
    out.u.resize(c.n, c.n);
    out.values.resize(c.n);
    for (int r = 0; r < c.n; ++r) {
        out.values(r) = vals(order[static_cast<std::size_t>(r)]);
        Eigen::VectorXd v = vecs.col(order[static_cast<std::size_t>(r)]);
        // deterministic phase: first nonzero component positive
        for (int t = 0; t < c.n; ++t) {
            if (std::abs(v(t)) > 1e-12) {
                if (v(t) < 0) v = -v;
                break;
            }
        }
        out.u.row(r) = v.transpose();
    }
    return out;
}

enum class FamilyPairing {
    CarComplete,  // partner pair: genuine 2N fermion family, valid for any coupling
    Printed       // first/second solutions side by side (diagonal couplings only)
};

// the 2N rotated operators Φ_l, Φ_{l+N} on V⊗V
inline std::vector<CMatrix> phi_operators(int n_modes, const Eigen::MatrixXd& u,
                                          FamilyPairing pairing) {
    if (u.rows() != n_modes || u.cols() != n_modes)
        throw std::invalid_argument("phi_operators: rotation shape mismatch");
    if ((u * u.transpose() - Eigen::MatrixXd::Identity(n_modes, n_modes)).cwiseAbs().maxCoeff() >
        1e-10)
        throw std::invalid_argument("phi_operators: rotation must be orthogonal");
    FermionHom first = (pairing == FamilyPairing::CarComplete) ? FermionHom::delta2_partner()
                                                               : FermionHom::delta1();
    FermionHom second = FermionHom::delta2();
    std::vector<CMatrix> base1, base2;
    for (int m = 1; m <= n_modes; ++m) {
        base1.push_back(detail::hom_image_matrix(first, n_modes, m));
        base2.push_back(detail::hom_image_matrix(second, n_modes, m));
    }
    std::vector<CMatrix> out;
    for (int l = 0; l < n_modes; ++l) {
        CMatrix phi = CMatrix::Zero(base1[0].rows(), base1[0].cols());
        for (int m = 0; m < n_modes; ++m) phi += u(l, m) * base1[static_cast<std::size_t>(m)];
        out.push_back(phi);
    }
    for (int l = 0; l < n_modes; ++l) {
        CMatrix phi = CMatrix::Zero(base2[0].rows(), base2[0].cols());
        for (int m = 0; m < n_modes; ++m) phi += u(l, m) * base2[static_cast<std::size_t>(m)];
        out.push_back(phi);
    }
    return out;
}

inline double car_deviation(const std::vector<CMatrix>& fam) {
    const auto count = fam.size();
    const Eigen::Index dim = fam[0].rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            CMatrix mixed = fam[i] * fam[j].adjoint() + fam[j].adjoint() * fam[i];
            if (i == j) mixed -= CMatrix::Identity(dim, dim);
            worst = std::max(worst, mixed.cwiseAbs().maxCoeff());
            CMatrix plain = fam[i] * fam[j] + fam[j] * fam[i];
            worst = std::max(worst, plain.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

struct EigenPair {
    std::uint32_t occupation = 0;  // bit I−1 set when mode I is filled
    double energy = 0.0;
    double residual = 0.0;
    CVector vec;
};

struct SpectralSolution {
    int n = 1;
    char variant = 'A';
    Eigen::MatrixXd u;
    Eigen::VectorXd values;
    std::vector<EigenPair> pairs;
    double car_deviation = 0.0;
    double normal_form_deviation = 0.0;
    double gram_deviation = 0.0;
    double spectrum_deviation = 0.0;
    double max_residual = 0.0;

    bool within(double tol) const {
        return car_deviation < tol && normal_form_deviation < tol && gram_deviation < tol &&
               spectrum_deviation < tol && max_residual < tol;
    }

    nlohmann::json to_json() const {
        nlohmann::json out;
        out["n"] = n;
        out["variant"] = std::string(1, variant);
        out["lambda"] = std::vector<double>(values.data(), values.data() + values.size());
        auto& uu = out["u"] = nlohmann::json::array();
        for (int i = 0; i < u.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < u.cols(); ++j) row.push_back(u(i, j));
            uu.push_back(std::move(row));
        }
        out["car_deviation"] = car_deviation;
        out["normal_form_deviation"] = normal_form_deviation;
        out["gram_deviation"] = gram_deviation;
        out["spectrum_deviation"] = spectrum_deviation;
        out["max_residual"] = max_residual;
        auto& st = out["states"] = nlohmann::json::array();
        for (const auto& p : pairs) {
            nlohmann::json j;
            std::vector<int> occ;
            for (int b = 0; b < 2 * n; ++b) occ.push_back((p.occupation >> b) & 1);
            j["occ"] = occ;
            j["energy"] = p.energy;
            j["residual"] = p.residual;
            st.push_back(std::move(j));
        }
        return out;
    }
};

// Diagonalize via the doubled fermion tower: H = Σ λ_l (Φ_l†Φ_l − Φ_{l+N}†Φ_{l+N})
// with the CAR-complete family pair; the eigenvectors are the creation-string
// states over the doubled vacuum and E_M = Σ λ_l (M_l − M_{l+N}).
inline SpectralSolution solve(const CouplingMatrix& c) {
    c.validate();
    const int n = c.n;
    const std::size_t dim = fock_dim(n) * fock_dim(n);

    CMatrix h = build_h(c);
    CouplingDiagonalization diag = diagonalize_coupling(c);
    std::vector<CMatrix> phi = phi_operators(n, diag.u, FamilyPairing::CarComplete);

    if (c.variant == 'B') {
        // recombine the hopping normal form into number operators:
        // w±_l = (Φ_l ± iΦ_{l+N})/√2
        const Cplx half_i(0.0, 1.0);
        std::vector<CMatrix> rec;
        for (int l = 0; l < n; ++l)
            rec.push_back((phi[static_cast<std::size_t>(l)] +
                           half_i * phi[static_cast<std::size_t>(l + n)]) /
                          std::sqrt(2.0));
        for (int l = 0; l < n; ++l)
            rec.push_back((phi[static_cast<std::size_t>(l)] -
                           half_i * phi[static_cast<std::size_t>(l + n)]) /
                          std::sqrt(2.0));
        phi = std::move(rec);
    }

    SpectralSolution sol;
    sol.n = n;
    sol.variant = c.variant;
    sol.u = diag.u;
    sol.values = diag.values;
    sol.car_deviation = car_deviation(phi);

    CMatrix normal_form = CMatrix::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
    for (int l = 0; l < n; ++l) {
        const CMatrix& lo = phi[static_cast<std::size_t>(l)];
        const CMatrix& hi = phi[static_cast<std::size_t>(l + n)];
        normal_form += diag.values(l) * (lo.adjoint() * lo - hi.adjoint() * hi);
    }
    sol.normal_form_deviation = (h - normal_form).cwiseAbs().maxCoeff();

    CVector vac = CVector::Zero(static_cast<Eigen::Index>(dim));
    vac(0) = 1.0;
    const std::uint32_t states = 1u << (2 * n);
    sol.pairs.reserve(states);
    for (std::uint32_t occ = 0; occ < states; ++occ) {
        EigenPair p;
        p.occupation = occ;
        CVector v = vac;
        for (int bit = 2 * n - 1; bit >= 0; --bit)
            if (occ & (1u << bit)) v = phi[static_cast<std::size_t>(bit)].adjoint() * v;
        double e = 0.0;
        for (int l = 0; l < n; ++l)
            e += diag.values(l) * (((occ >> l) & 1) - ((occ >> (l + n)) & 1));
        p.energy = e;
        p.vec = v;
        p.residual = (h * v - e * v).norm();
        sol.max_residual = std::max(sol.max_residual, p.residual);
        sol.pairs.push_back(std::move(p));
    }

    double gram = 0.0;
    for (std::uint32_t x = 0; x < states; ++x)
        for (std::uint32_t y = 0; y < states; ++y) {
            Cplx inner = sol.pairs[x].vec.dot(sol.pairs[y].vec);
            double want = (x == y) ? 1.0 : 0.0;
            gram = std::max(gram, std::abs(inner - want));
        }
    sol.gram_deviation = gram;

    // dense oracle: the tower energies must reproduce the full spectrum
    Eigen::SelfAdjointEigenSolver<CMatrix> dense(h);
    if (dense.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    std::vector<double> tower, oracle;
    for (const auto& p : sol.pairs) tower.push_back(p.energy);
    for (Eigen::Index k = 0; k < dense.eigenvalues().size(); ++k)
        oracle.push_back(dense.eigenvalues()(k));
    std::sort(tower.begin(), tower.end());
    std::sort(oracle.begin(), oracle.end());
    for (std::size_t k = 0; k < tower.size(); ++k)
        sol.spectrum_deviation = std::max(sol.spectrum_deviation,
                                          std::abs(tower[k] - oracle[k]));
    return sol;
}

}  // namespace qfermion
