#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfermion {

using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_pow(const Rational& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw std::domain_error("rational_pow: 0 to negative power");
        return rational_pow(Rational(denominator(base), numerator(base)), -exp);
    }
    Rational result{1};
    Rational b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

inline Rational parse_rational(const std::string& text) {
    try {
        return Rational(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

/**
 * QISqrt2: exact numbers a + b·i + c·√2 + d·i·√2 with rational a,b,c,d.
 *
 * This is a field: every nonzero element has an exact inverse, computed from
 * the Galois conjugates (i → −i and √2 → −√2).
 */
class QISqrt2 {
public:
    QISqrt2() = default;
    QISqrt2(Rational a, Rational b = 0, Rational c = 0, Rational d = 0)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}
    QISqrt2(int v) : a_(v) {}
    QISqrt2(long v) : a_(v) {}

    static QISqrt2 zero() { return QISqrt2(); }
    static QISqrt2 one() { return QISqrt2(1); }
    static QISqrt2 i() { return QISqrt2(0, 1); }
    static QISqrt2 sqrt2() { return QISqrt2(0, 0, 1); }
    // 1/√2 = √2/2
    static QISqrt2 inv_sqrt2() { return QISqrt2(0, 0, Rational(1, 2)); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_real() const { return b_ == 0 && d_ == 0; }

    bool operator==(const QISqrt2& o) const {
        return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
    }
    bool operator!=(const QISqrt2& o) const { return !(*this == o); }

    QISqrt2 operator+(const QISqrt2& o) const {
        return QISqrt2(a_ + o.a_, b_ + o.b_, c_ + o.c_, d_ + o.d_);
    }
    QISqrt2 operator-(const QISqrt2& o) const {
        return QISqrt2(a_ - o.a_, b_ - o.b_, c_ - o.c_, d_ - o.d_);
    }
    QISqrt2 operator-() const { return QISqrt2(-a_, -b_, -c_, -d_); }

    QISqrt2 operator*(const QISqrt2& o) const {
        // i² = −1, (√2)² = 2, (i√2)² = −2
        return QISqrt2(
            a_ * o.a_ - b_ * o.b_ + 2 * (c_ * o.c_ - d_ * o.d_),
            a_ * o.b_ + b_ * o.a_ + 2 * (c_ * o.d_ + d_ * o.c_),
            a_ * o.c_ + c_ * o.a_ - (b_ * o.d_ + d_ * o.b_),
            a_ * o.d_ + d_ * o.a_ + b_ * o.c_ + c_ * o.b_);
    }

    QISqrt2& operator+=(const QISqrt2& o) { return *this = *this + o; }
    QISqrt2& operator-=(const QISqrt2& o) { return *this = *this - o; }
    QISqrt2& operator*=(const QISqrt2& o) { return *this = *this * o; }

    // complex conjugation: fixes √2, sends i to −i
    QISqrt2 conj() const { return QISqrt2(a_, -b_, c_, -d_); }
    // Galois conjugation √2 → −√2
    QISqrt2 conj_sqrt2() const { return QISqrt2(a_, b_, -c_, -d_); }

    // |x|² = x · conj(x), a real element (b = d = 0)
    QISqrt2 norm_sq() const { return *this * conj(); }

    QISqrt2 inverse() const {
        if (is_zero()) throw std::domain_error("QISqrt2: division by zero");
        QISqrt2 y = conj();
        QISqrt2 p = *this * y;          // real: p = a' + c'√2
        QISqrt2 z = p.conj_sqrt2();
        QISqrt2 w = p * z;              // rational
        Rational norm = w.a_;
        QISqrt2 num = y * z;
        Rational inv = Rational(denominator(norm), numerator(norm));
        return QISqrt2(num.a_ * inv, num.b_ * inv, num.c_ * inv, num.d_ * inv);
    }

    QISqrt2 operator/(const QISqrt2& o) const { return *this * o.inverse(); }

    std::complex<double> to_complex() const {
        static const double r2 = 1.4142135623730950488;
        return {a_.convert_to<double>() + r2 * c_.convert_to<double>(),
                b_.convert_to<double>() + r2 * d_.convert_to<double>()};
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        auto emit = [&](const Rational& r, const char* suffix) {
            if (r == 0) return;
            if (!first && r > 0) os << "+";
            os << r << suffix;
            first = false;
        };
        emit(a_, "");
        emit(b_, "i");
        emit(c_, "r2");
        emit(d_, "ir2");
        return os.str();
    }

    static QISqrt2 parse(const std::string& text);

private:
    Rational a_{0}, b_{0}, c_{0}, d_{0};
};

inline QISqrt2 conj(const QISqrt2& x) { return x.conj(); }

inline std::ostream& operator<<(std::ostream& os, const QISqrt2& x) {
    return os << x.to_string();
}

inline QISqrt2 QISqrt2::parse(const std::string& text) {
    Rational a = 0, b = 0, c = 0, d = 0;
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    skip_ws();
    if (pos >= text.size()) throw std::invalid_argument("empty scalar component");
    bool any = false;
    while (pos < text.size()) {
        skip_ws();
        int sign = 1;
        if (text[pos] == '+') { ++pos; }
        else if (text[pos] == '-') { sign = -1; ++pos; }
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
            ++pos;
        if (start == pos) throw std::invalid_argument("bad scalar component: '" + text + "'");
        Rational r = parse_rational(text.substr(start, pos - start));
        if (sign < 0) r = -r;
        // suffix: "", "i", "r2", "ir2"
        if (text.compare(pos, 3, "ir2") == 0) { d += r; pos += 3; }
        else if (text.compare(pos, 2, "r2") == 0) { c += r; pos += 2; }
        else if (pos < text.size() && text[pos] == 'i') { b += r; pos += 1; }
        else { a += r; }
        any = true;
        skip_ws();
        if (pos < text.size() && text[pos] != '+' && text[pos] != '-')
            throw std::invalid_argument("trailing junk in scalar: '" + text + "'");
    }
    if (!any) throw std::invalid_argument("empty scalar: '" + text + "'");
    return QISqrt2(a, b, c, d);
}

/**
 * ExactScalar: Laurent polynomial in the formal square root s of q (q = s²)
 * with QISqrt2 coefficients.  Stored sparse, sorted by exponent, no zero
 * coefficients; equality of the term lists is equality of scalars.
 *
 * Conjugation fixes s (q is a real parameter) and conjugates coefficients.
 */
class ExactScalar {
public:
    using Term = std::pair<int, QISqrt2>;

    ExactScalar() = default;
    ExactScalar(const QISqrt2& c) {
        if (!c.is_zero()) terms_.emplace_back(0, c);
    }
    ExactScalar(int v) : ExactScalar(QISqrt2(v)) {}
    ExactScalar(const Rational& v) : ExactScalar(QISqrt2(v)) {}

    static ExactScalar zero() { return ExactScalar(); }
    static ExactScalar one() { return ExactScalar(1); }
    // c · s^k
    static ExactScalar term(int k, const QISqrt2& c) {
        ExactScalar r;
        if (!c.is_zero()) r.terms_.emplace_back(k, c);
        return r;
    }
    static ExactScalar s_power(int k) { return term(k, QISqrt2::one()); }
    static ExactScalar q_power(int k) { return s_power(2 * k); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == QISqrt2::one();
    }

    bool operator==(const ExactScalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const ExactScalar& o) const { return !(*this == o); }

    ExactScalar operator+(const ExactScalar& o) const {
        ExactScalar r;
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            if (terms_[i].first < o.terms_[j].first) r.terms_.push_back(terms_[i++]);
            else if (terms_[i].first > o.terms_[j].first) r.terms_.push_back(o.terms_[j++]);
            else {
                QISqrt2 c = terms_[i].second + o.terms_[j].second;
                if (!c.is_zero()) r.terms_.emplace_back(terms_[i].first, c);
                ++i; ++j;
            }
        }
        while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
        while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
        return r;
    }

    ExactScalar operator-() const {
        ExactScalar r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    ExactScalar operator-(const ExactScalar& o) const { return *this + (-o); }

    ExactScalar operator*(const ExactScalar& o) const {
        ExactScalar r;
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_)
                r.add_term(ka + kb, ca * cb);
        return r;
    }

    ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
    ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

    void add_term(int k, const QISqrt2& c) {
        if (c.is_zero()) return;
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const Term& t, int key) { return t.first < key; });
        if (it != terms_.end() && it->first == k) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        } else {
            terms_.insert(it, Term{k, c});
        }
    }

    ExactScalar conj() const {
        ExactScalar r = *this;
        for (auto& t : r.terms_) t.second = t.second.conj();
        return r;
    }

    // true when only even powers of s occur (pure polynomial in q and q⁻¹)
    bool even_in_s() const {
        for (const auto& t : terms_)
            if (t.first % 2 != 0) return false;
        return true;
    }

    // exact evaluation at a rational q value; requires even_in_s()
    QISqrt2 eval_q(const Rational& q) const {
        QISqrt2 sum;
        for (const auto& [k, c] : terms_) {
            if (k % 2 != 0)
                throw std::domain_error("ExactScalar: odd power of s has no exact value at rational q");
            sum += c * QISqrt2(rational_pow(q, k / 2));
        }
        return sum;
    }

    std::complex<double> eval_complex(double q) const {
        if (q <= 0.0) throw std::domain_error("ExactScalar: numeric evaluation needs q > 0");
        double s = std::sqrt(q);
        std::complex<double> sum{0.0, 0.0};
        for (const auto& [k, c] : terms_)
            sum += c.to_complex() * std::pow(s, k);
        return sum;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            os << "(" << c.to_string() << ")";
            if (k != 0) os << "*s^" << k;
            first = false;
        }
        return os.str();
    }

    static ExactScalar parse(const std::string& text) {
        ExactScalar r;
        std::size_t pos = 0;
        auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
        skip_ws();
        if (text.compare(pos, 1, "0") == 0 && pos + 1 >= text.size()) return r;
        while (pos < text.size()) {
            skip_ws();
            if (text[pos] != '(') throw std::invalid_argument("expected '(' in scalar: '" + text + "'");
            std::size_t close = text.find(')', pos);
            if (close == std::string::npos) throw std::invalid_argument("unbalanced '(' in scalar");
            QISqrt2 c = QISqrt2::parse(text.substr(pos + 1, close - pos - 1));
            pos = close + 1;
            int k = 0;
            if (text.compare(pos, 3, "*s^") == 0) {
                pos += 3;
                std::size_t start = pos;
                if (pos < text.size() && text[pos] == '-') ++pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                k = std::stoi(text.substr(start, pos - start));
            }
            r.add_term(k, c);
            skip_ws();
            if (pos < text.size()) {
                if (text.compare(pos, 1, "+") != 0)
                    throw std::invalid_argument("expected '+' between scalar terms");
                ++pos;
            }
        }
        return r;
    }

private:
    std::vector<Term> terms_;
};

inline ExactScalar conj(const ExactScalar& x) { return x.conj(); }

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& x) {
    return os << x.to_string();
}

// [m]_Q with Q = q^k, in product-free polynomial form:
//   [m]_Q = Σ_{j=0}^{m−1} Q^{m−1−2j};   [0] = 0, [1] = 1.
inline ExactScalar q_number(int m, int k) {
    if (m < 0) throw std::invalid_argument("q_number: m must be nonnegative");
    ExactScalar r;
    for (int j = 0; j < m; ++j)
        r.add_term(2 * k * (m - 1 - 2 * j), QISqrt2::one());
    return r;
}

// Gaussian binomial {m over n}_Q with Q = q^k, via the q-Pascal recursion
//   {m,n} = Q^{-n}{m-1,n} + Q^{m-n}{m-1,n-1}
// so no division is ever performed.
inline ExactScalar gauss_binom(int m, int n, int k) {
    if (m < 0 || n < 0 || n > m)
        throw std::invalid_argument("gauss_binom: need 0 <= n <= m");
    std::vector<ExactScalar> row(static_cast<std::size_t>(n) + 1);
    row[0] = ExactScalar::one();
    for (int mm = 1; mm <= m; ++mm) {
        for (int nn = std::min(mm, n); nn >= 1; --nn) {
            ExactScalar v = ExactScalar::s_power(-2 * k * nn) * row[nn];
            v += ExactScalar::s_power(2 * k * (mm - nn)) * row[nn - 1];
            row[nn] = v;
        }
    }
    return row[n];
}

}  // namespace qfermion
