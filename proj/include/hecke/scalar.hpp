#pragma once

#include <gmpxx.h>

#include <cctype>
#include <ostream>
#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace hecke {

// Thin value wrapper around mpq_class so that arithmetic never leaks
// gmpxx expression templates into `auto` variables.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(int n) : q_(n) {}
    Rational(long num, long den) : q_(num, den) { q_.canonicalize(); }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(const std::string& s) {
        if (q_.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
        if (q_.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
        q_.canonicalize();
    }

    const mpq_class& raw() const { return q_; }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.q_ == 0) throw std::domain_error("division by zero");
        return Rational(mpq_class(a.q_ / b.q_));
    }
    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
    Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
    Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    bool is_zero() const { return q_ == 0; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    std::string str() const { return q_.get_str(); }

private:
    mpq_class q_;
};

// a + b*sqrt(5), ordered through the real embedding with sqrt(5) > 0.
class QSqrt5 {
public:
    QSqrt5() = default;
    QSqrt5(int n) : a_(n) {}
    QSqrt5(long n) : a_(n) {}
    QSqrt5(const Rational& a) : a_(a) {}
    QSqrt5(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    friend QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
    friend QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
    friend QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y) {
        return {x.a_ * y.a_ + Rational(5) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
    }
    QSqrt5 conj() const { return {a_, -b_}; }
    Rational norm() const { return a_ * a_ - Rational(5) * b_ * b_; }
    friend QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y) {
        Rational n = y.norm();
        if (n.is_zero()) throw std::domain_error("division by zero");
        QSqrt5 p = x * y.conj();
        return {p.a_ / n, p.b_ / n};
    }
    QSqrt5 operator-() const { return {-a_, -b_}; }
    QSqrt5& operator+=(const QSqrt5& y) { a_ += y.a_; b_ += y.b_; return *this; }
    QSqrt5& operator-=(const QSqrt5& y) { a_ -= y.a_; b_ -= y.b_; return *this; }
    QSqrt5& operator*=(const QSqrt5& y) { *this = *this * y; return *this; }
    QSqrt5& operator/=(const QSqrt5& y) { *this = *this / y; return *this; }

    friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_integer() const { return a_.is_integer() && b_.is_zero(); }

    int sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 with 5 b^2
        Rational d = a_ * a_ - Rational(5) * b_ * b_;
        return d.sign() > 0 ? sa : sb;
    }

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s = "(";
        if (!a_.is_zero()) s += a_.str() + (b_.sign() > 0 ? "+" : "");
        s += b_.str() + "*sqrt5)";
        return s;
    }

private:
    Rational a_, b_;
};

inline bool operator<(const QSqrt5& x, const QSqrt5& y) { return (x - y).sign() < 0; }

inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(const QSqrt5& x) { return x.str(); }
inline std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }
inline std::ostream& operator<<(std::ostream& os, const QSqrt5& x) { return os << x.str(); }

template <class F> F parse_scalar(const std::string& s);

template <> inline Rational parse_scalar<Rational>(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty()) throw std::invalid_argument("empty scalar");
    return Rational(t);
}

// Accepts "a", "b*sqrt5", "sqrt5", "(a+b*sqrt5)", "(a-sqrt5)" and so on.
template <> inline QSqrt5 parse_scalar<QSqrt5>(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
    if (t.empty()) throw std::invalid_argument("empty scalar");
    Rational a, b;
    size_t i = 0;
    while (i < t.size()) {
        size_t j = i + 1;
        while (j < t.size() && t[j] != '+' && t[j] != '-') ++j;
        std::string term = t.substr(i, j - i);
        i = j;
        int sg = 1;
        if (term[0] == '+' || term[0] == '-') {
            if (term[0] == '-') sg = -1;
            term.erase(0, 1);
        }
        auto p = term.find("sqrt5");
        if (p == std::string::npos) {
            a += Rational(sg) * Rational(term);
        } else {
            std::string c = term.substr(0, p);
            if (!c.empty() && c.back() == '*') c.pop_back();
            b += Rational(sg) * (c.empty() ? Rational(1) : Rational(c));
        }
    }
    return {a, b};
}

}  // namespace hecke
