#pragma once

#include "qfermion/scalar.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfermion {

inline int popcount16(std::uint16_t x) { return std::popcount(static_cast<unsigned>(x)); }

/**
 * FermionMonomial: a normal-ordered word in N fermion modes, encoded by two
 * bit masks.  Bit i−1 of `dag` means a ψ_i† factor, bit i−1 of `ann` a ψ_i
 * factor.  The word is the canonical form
 *
 *     (creation ops, ascending index) · (annihilation ops, ascending index)
 *
 * so two monomials are equal iff their masks are equal.
 */
struct FermionMonomial {
    std::uint16_t dag = 0;
    std::uint16_t ann = 0;

    bool operator==(const FermionMonomial& o) const { return dag == o.dag && ann == o.ann; }
    bool operator!=(const FermionMonomial& o) const { return !(*this == o); }
    bool operator<(const FermionMonomial& o) const {
        return dag != o.dag ? dag < o.dag : ann < o.ann;
    }

    bool is_identity() const { return dag == 0 && ann == 0; }
    int letter_count() const { return popcount16(dag) + popcount16(ann); }
    int grade_bit() const { return letter_count() & 1; }

    std::string to_string() const {
        if (is_identity()) return "1";
        std::string out;
        for (int i = 0; i < 16; ++i)
            if (dag & (1u << i)) {
                if (!out.empty()) out += ' ';
                out += 'd';
                out += std::to_string(i + 1);
            }
        for (int i = 0; i < 16; ++i)
            if (ann & (1u << i)) {
                if (!out.empty()) out += ' ';
                out += 'a';
                out += std::to_string(i + 1);
            }
        return out;
    }

    static FermionMonomial parse(const std::string& text) {
        FermionMonomial m;
        if (text == "1" || text.empty()) return m;
        std::size_t pos = 0;
        while (pos < text.size()) {
            while (pos < text.size() && text[pos] == ' ') ++pos;
            if (pos >= text.size()) break;
            char kind = text[pos++];
            if (kind != 'd' && kind != 'a')
                throw std::invalid_argument("bad monomial letter: '" + text + "'");
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            int idx = std::stoi(text.substr(start, pos - start));
            if (idx < 1 || idx > 16) throw std::invalid_argument("monomial index out of range");
            std::uint16_t bit = static_cast<std::uint16_t>(1u << (idx - 1));
            if (kind == 'd') m.dag |= bit;
            else m.ann |= bit;
        }
        return m;
    }
};

enum class Grade { Even, Odd, Mixed };

namespace detail {

// parity of the number of set bits in `mask` strictly above bit position `i`
inline int bits_above(std::uint16_t mask, int i) {
    return popcount16(static_cast<std::uint16_t>(mask & ~((2u << i) - 1)));
}

using SignedMono = std::pair<FermionMonomial, int>;

// m · ψ_i† (0-based mode index), appended from the right and normal-ordered.
// The incoming ψ_i† must cross the whole annihilator block; meeting a ψ_i
// there splits off a contraction term.
inline void right_mul_dagger(const FermionMonomial& m, int i, int coeff,
                             std::vector<SignedMono>& out) {
    const std::uint16_t bit = static_cast<std::uint16_t>(1u << i);
    if (m.ann & bit) {
        int sign = (bits_above(m.ann, i) & 1) ? -1 : 1;
        out.push_back({FermionMonomial{m.dag, static_cast<std::uint16_t>(m.ann & ~bit)},
                       coeff * sign});
    }
    if (!(m.dag & bit)) {
        int swaps = popcount16(m.ann) + bits_above(m.dag, i);
        int sign = (swaps & 1) ? -1 : 1;
        out.push_back({FermionMonomial{static_cast<std::uint16_t>(m.dag | bit), m.ann},
                       coeff * sign});
    }
}

// m · ψ_i: joins the annihilator block from the right; never meets daggers.
inline void right_mul_annih(const FermionMonomial& m, int i, int coeff,
                            std::vector<SignedMono>& out) {
    const std::uint16_t bit = static_cast<std::uint16_t>(1u << i);
    if (m.ann & bit) return;  // ψ_i² = 0
    int sign = (bits_above(m.ann, i) & 1) ? -1 : 1;
    out.push_back({FermionMonomial{m.dag, static_cast<std::uint16_t>(m.ann | bit)},
                   coeff * sign});
}

// normal-ordered expansion of x·y as a list of (monomial, ±1) terms
inline std::vector<SignedMono> mono_mul_expand(const FermionMonomial& x,
                                               const FermionMonomial& y) {
    std::vector<SignedMono> cur{{x, 1}};
    std::vector<SignedMono> next;
    for (int i = 0; i < 16; ++i) {
        if (!(y.dag & (1u << i))) continue;
        next.clear();
        for (const auto& [m, c] : cur) right_mul_dagger(m, i, c, next);
        std::swap(cur, next);
        if (cur.empty()) return cur;
    }
    for (int i = 0; i < 16; ++i) {
        if (!(y.ann & (1u << i))) continue;
        next.clear();
        for (const auto& [m, c] : cur) right_mul_annih(m, i, c, next);
        std::swap(cur, next);
        if (cur.empty()) return cur;
    }
    return cur;
}

}  // namespace detail

/**
 * AlgebraElement: a finite QISqrt2(s)-linear combination of normal-ordered
 * fermion monomials; the general element of the N-mode fermion algebra.
 * Values are immutable in spirit: all operations return new elements.
 */
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(int n_modes) : n_(check_modes(n_modes)) {}

    static AlgebraElement zero(int n_modes) { return AlgebraElement(n_modes); }
    static AlgebraElement unit(int n_modes) {
        AlgebraElement r(n_modes);
        r.terms_[FermionMonomial{}] = ExactScalar::one();
        return r;
    }
    static AlgebraElement monomial(int n_modes, const FermionMonomial& m,
                                   const ExactScalar& c = ExactScalar::one()) {
        AlgebraElement r(n_modes);
        r.add(m, c);
        return r;
    }

    int modes() const { return n_; }
    const std::map<FermionMonomial, ExactScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add(const FermionMonomial& m, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const AlgebraElement& o) const {
        return n_ == o.n_ && terms_ == o.terms_;
    }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    AlgebraElement operator+(const AlgebraElement& o) const {
        require_same_modes(o);
        AlgebraElement r = *this;
        for (const auto& [m, c] : o.terms_) r.add(m, c);
        return r;
    }
    AlgebraElement operator-() const {
        AlgebraElement r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    AlgebraElement operator-(const AlgebraElement& o) const { return *this + (-o); }

    AlgebraElement operator*(const AlgebraElement& o) const {
        require_same_modes(o);
        AlgebraElement r(n_);
        for (const auto& [mx, cx] : terms_) {
            for (const auto& [my, cy] : o.terms_) {
                ExactScalar c = cx * cy;
                for (const auto& [m, sign] : detail::mono_mul_expand(mx, my))
                    r.add(m, sign < 0 ? -c : c);
            }
        }
        return r;
    }

    AlgebraElement operator*(const ExactScalar& c) const {
        AlgebraElement r(n_);
        for (const auto& [m, cm] : terms_) r.add(m, cm * c);
        return r;
    }

    AlgebraElement& operator+=(const AlgebraElement& o) { return *this = *this + o; }
    AlgebraElement& operator-=(const AlgebraElement& o) { return *this = *this - o; }
    AlgebraElement& operator*=(const AlgebraElement& o) { return *this = *this * o; }

    // anti-linear anti-automorphism: (ψ_i)* = ψ_i†, coefficients conjugated.
    // Reversing a normal-ordered word and swapping daggers lands directly in
    // normal order again; only a reordering sign is picked up.
    AlgebraElement star() const {
        AlgebraElement r(n_);
        for (const auto& [m, c] : terms_) {
            int k = popcount16(m.ann), l = popcount16(m.dag);
            int swaps = k * (k - 1) / 2 + l * (l - 1) / 2;
            FermionMonomial sm{m.ann, m.dag};
            r.add(sm, (swaps & 1) ? -c.conj() : c.conj());
        }
        return r;
    }

    // linear anti-automorphism fixing every ψ_i and ψ_i† (word reversal)
    AlgebraElement reversal_y() const {
        AlgebraElement r(n_);
        for (const auto& [m, c] : terms_) {
            int k = popcount16(m.ann), l = popcount16(m.dag);
            int swaps = k * (k - 1) / 2 + l * (l - 1) / 2;
            ExactScalar cc = (swaps & 1) ? -c : c;
            // reversed word = (ann block ascending)(dag block ascending)
            FermionMonomial left{0, m.ann}, right{m.dag, 0};
            for (const auto& [mm, sign] : detail::mono_mul_expand(left, right))
                r.add(mm, sign < 0 ? -cc : cc);
        }
        return r;
    }

    Grade grade() const {
        bool even = false, odd = false;
        for (const auto& [m, c] : terms_)
            (m.grade_bit() ? odd : even) = true;
        if (even && odd) return Grade::Mixed;
        return odd ? Grade::Odd : Grade::Even;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += "  +  ";
            out += "[" + c.to_string() + "] " + m.to_string();
        }
        return out;
    }

private:
    static int check_modes(int n) {
        if (n < 1 || n > 14) throw std::invalid_argument("mode count out of range [1,14]");
        return n;
    }
    void require_same_modes(const AlgebraElement& o) const {
        if (n_ != o.n_) throw std::invalid_argument("mode count mismatch");
    }

    int n_ = 1;
    std::map<FermionMonomial, ExactScalar> terms_;
};

inline AlgebraElement operator*(const ExactScalar& c, const AlgebraElement& x) { return x * c; }

// generators (1-based mode index)
inline FermionMonomial psi_mono(int i) {
    return FermionMonomial{0, static_cast<std::uint16_t>(1u << (i - 1))};
}
inline FermionMonomial psi_dagger_mono(int i) {
    return FermionMonomial{static_cast<std::uint16_t>(1u << (i - 1)), 0};
}

inline void check_mode_index(int n_modes, int i) {
    if (i < 1 || i > n_modes) throw std::invalid_argument("mode index out of range");
}

inline AlgebraElement psi(int n_modes, int i) {
    check_mode_index(n_modes, i);
    return AlgebraElement::monomial(n_modes, psi_mono(i));
}
inline AlgebraElement psi_dagger(int n_modes, int i) {
    check_mode_index(n_modes, i);
    return AlgebraElement::monomial(n_modes, psi_dagger_mono(i));
}

inline AlgebraElement mono_mul(int n_modes, const FermionMonomial& x, const FermionMonomial& y) {
    AlgebraElement r(n_modes);
    for (const auto& [m, sign] : detail::mono_mul_expand(x, y))
        r.add(m, ExactScalar(sign));
    return r;
}

// ω_i^n = ψ_iψ_i† + q^{−n}ψ_i†ψ_i = 1 + (q^{−n} − 1)·ψ_i†ψ_i
inline AlgebraElement omega_power(int n_modes, int i, int n) {
    check_mode_index(n_modes, i);
    AlgebraElement r = AlgebraElement::unit(n_modes);
    std::uint16_t bit = static_cast<std::uint16_t>(1u << (i - 1));
    r.add(FermionMonomial{bit, bit}, ExactScalar::q_power(-n) - ExactScalar::one());
    return r;
}

inline AlgebraElement omega(int n_modes, int i) { return omega_power(n_modes, i, 1); }
inline AlgebraElement omega_inverse(int n_modes, int i) { return omega_power(n_modes, i, -1); }

// ζ_i = ψ_iψ_i† − ψ_i†ψ_i = 1 − 2ψ_i†ψ_i;  ζ_i² = 1
inline AlgebraElement zeta(int n_modes, int i) {
    check_mode_index(n_modes, i);
    AlgebraElement r = AlgebraElement::unit(n_modes);
    std::uint16_t bit = static_cast<std::uint16_t>(1u << (i - 1));
    r.add(FermionMonomial{bit, bit}, ExactScalar(-2));
    return r;
}

// all 4^N basis monomials, in deterministic mask order
inline std::vector<FermionMonomial> basis_monomials(int n_modes) {
    std::vector<FermionMonomial> out;
    const std::uint16_t top = static_cast<std::uint16_t>(1u << n_modes);
    out.reserve(static_cast<std::size_t>(top) * top);
    for (std::uint16_t d = 0; d < top; ++d)
        for (std::uint16_t a = 0; a < top; ++a)
            out.push_back(FermionMonomial{d, a});
    return out;
}

}  // namespace qfermion
