#pragma once

#include "hecke/scalar.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

inline constexpr int kInfinity = INT_MAX;

// Sparse Laurent polynomial in v over F; zero coefficients are never stored.
template <class F>
class Laurent {
public:
    using Map = std::map<int, F>;

    Laurent() = default;
    Laurent(const F& c) {
        if (!c.is_zero()) c_.emplace(0, c);
    }
    Laurent(int c) : Laurent(F(c)) {}

    static Laurent monomial(const F& c, int k) {
        Laurent r;
        if (!c.is_zero()) r.c_.emplace(k, c);
        return r;
    }
    static Laurent vpow(int k) { return monomial(F(1), k); }

    const Map& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    size_t size() const { return c_.size(); }

    int valuation() const { return c_.empty() ? kInfinity : c_.begin()->first; }
    // Largest exponent; -kInfinity for zero.
    int degree() const { return c_.empty() ? -kInfinity : c_.rbegin()->first; }

    F coeff(int k) const {
        auto it = c_.find(k);
        return it == c_.end() ? F(0) : it->second;
    }

    F lowest_term() const {
        if (c_.empty()) throw std::domain_error("zero polynomial has no lowest term");
        return c_.begin()->second;
    }

    Laurent bar() const {
        Laurent r;
        for (auto& [k, a] : c_) r.c_.emplace(-k, a);
        return r;
    }

    Laurent shift(int k) const {
        Laurent r;
        for (auto& [e, a] : c_) r.c_.emplace(e + k, a);
        return r;
    }

    bool is_palindromic() const { return *this == bar(); }
    bool is_monomial() const { return c_.size() == 1; }

    Laurent& operator+=(const Laurent& o) {
        for (auto& [k, a] : o.c_) add_term(k, a);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (auto& [k, a] : o.c_) add_term(k, -a);
        return *this;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    Laurent& operator*=(const F& s) {
        if (s.is_zero()) {
            c_.clear();
            return *this;
        }
        for (auto& [k, a] : c_) a *= s;
        return *this;
    }

    void add_term(int k, const F& a) {
        if (a.is_zero()) return;
        auto [it, fresh] = c_.emplace(k, a);
        if (!fresh) {
            it->second += a;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    Laurent operator-() const {
        Laurent r;
        for (auto& [k, a] : c_) r.c_.emplace(k, -a);
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (auto& [i, x] : a.c_)
            for (auto& [j, y] : b.c_) r.add_term(i + j, x * y);
        return r;
    }
    friend Laurent operator*(Laurent a, const F& s) { return a *= s; }
    friend Laurent operator*(const F& s, Laurent a) { return a *= s; }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }

    // Division by a unit of F[v,v^-1], i.e. a monomial with nonzero coefficient.
    Laurent divide_by_unit(const Laurent& u) const {
        if (!u.is_monomial()) throw std::domain_error("division by a non-unit Laurent polynomial");
        auto [k, a] = *u.c_.begin();
        Laurent r;
        for (auto& [e, x] : c_) r.c_.emplace(e - k, x / a);
        return r;
    }

    // Exact division in F[v,v^-1]; throws if d does not divide *this.
    Laurent divide_exact(const Laurent& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        if (is_zero()) return {};
        if (d.is_monomial()) return divide_by_unit(d);
        int a = valuation(), b = d.valuation();
        std::vector<F> num = dense(a), den = d.dense(b);
        if (num.size() < den.size()) throw std::domain_error("inexact Laurent division");
        std::vector<F> q(num.size() - den.size() + 1, F(0));
        const F& lead = den.back();
        for (size_t i = q.size(); i-- > 0;) {
            F c = num[i + den.size() - 1] / lead;
            q[i] = c;
            if (c.is_zero()) continue;
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
        }
        for (auto& x : num)
            if (!x.is_zero()) throw std::domain_error("inexact Laurent division");
        Laurent r;
        for (size_t i = 0; i < q.size(); ++i)
            if (!q[i].is_zero()) r.c_.emplace(int(i) + a - b, q[i]);
        return r;
    }

    // Coefficients from exponent `from` upward, dense.
    std::vector<F> dense(int from) const {
        std::vector<F> v;
        if (c_.empty()) return v;
        v.assign(size_t(degree() - from + 1), F(0));
        for (auto& [k, a] : c_) v[size_t(k - from)] = a;
        return v;
    }

    std::string str() const;

private:
    Map c_;
};

template <class F>
struct LaurentParts {
    Laurent<F> negative;
    F constant;
    Laurent<F> positive;
};

template <class F>
LaurentParts<F> split_parts(const Laurent<F>& f) {
    LaurentParts<F> p{{}, F(0), {}};
    for (auto& [k, a] : f.terms()) {
        if (k < 0) p.negative.add_term(k, a);
        else if (k > 0) p.positive.add_term(k, a);
        else p.constant = a;
    }
    return p;
}

template <class F>
Laurent<F> positive_part(const Laurent<F>& f) { return split_parts(f).positive; }
template <class F>
Laurent<F> negative_part(const Laurent<F>& f) { return split_parts(f).negative; }
template <class F>
Laurent<F> nonnegative_part(const Laurent<F>& f) { return f - split_parts(f).negative; }

template <class F>
int valuation(const Laurent<F>& f) { return f.valuation(); }
template <class F>
F lowest_term(const Laurent<F>& f) { return f.lowest_term(); }
template <class F>
Laurent<F> bar(const Laurent<F>& f) { return f.bar(); }

// gcd in F[v,v^-1], normalized to valuation 0 and lowest coefficient 1.
template <class F>
Laurent<F> gcd(const Laurent<F>& f, const Laurent<F>& g) {
    if (f.is_zero() && g.is_zero()) return {};
    auto strip = [](const Laurent<F>& p) { return p.is_zero() ? p : p.shift(-p.valuation()); };
    Laurent<F> a = strip(f), b = strip(g);
    auto rem = [](Laurent<F> x, const Laurent<F>& y) {
        while (!x.is_zero() && x.degree() >= y.degree()) {
            int k = x.degree() - y.degree();
            F c = x.coeff(x.degree()) / y.coeff(y.degree());
            x -= Laurent<F>::monomial(c, k) * y;
        }
        return x;
    };
    while (!b.is_zero()) {
        Laurent<F> r = rem(a, b);
        a = b;
        b = r.is_zero() ? r : r.shift(-r.valuation());
    }
    a = a.shift(-a.valuation());
    return a * (F(1) / a.lowest_term());
}

namespace detail {

template <class F>
std::string coeff_text(const F& c) { return to_string(c); }

inline bool is_negative_text(const std::string& s) { return !s.empty() && s[0] == '-'; }

}  // namespace detail

// Text form "c*v^k" joined by " + " / " - ", e.g. "-1*v^-1 + 2 + 1*v^3".
template <class F>
std::string Laurent<F>::str() const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [k, a] : c_) {
        std::string c = detail::coeff_text(a);
        if (!first) {
            if (detail::is_negative_text(c)) {
                out += " - ";
                c.erase(0, 1);
            } else {
                out += " + ";
            }
        }
        out += c;
        if (k != 0) out += "*v^" + std::to_string(k);
        first = false;
    }
    return out;
}

template <class F>
std::string to_string(const Laurent<F>& f) { return f.str(); }

template <class F>
std::ostream& operator<<(std::ostream& os, const Laurent<F>& f) { return os << f.str(); }

// Accepts the output of str() and variants: omitted unit coefficients ("v^2",
// "-v"), missing '*', arbitrary whitespace, parenthesized coefficients.
template <class F>
Laurent<F> parse_laurent(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty Laurent polynomial");
    Laurent<F> r;
    size_t i = 0;
    while (i < t.size()) {
        int sign = 1;
        while (i < t.size() && (t[i] == '+' || t[i] == '-')) {
            if (t[i] == '-') sign = -sign;
            ++i;
        }
        size_t j = i;
        int depth = 0;
        while (j < t.size()) {
            char c = t[j];
            if (c == '(') ++depth;
            else if (c == ')') --depth;
            else if (depth == 0 && (c == '+' || c == '-') && j > i && t[j - 1] != '^') break;
            ++j;
        }
        std::string term = t.substr(i, j - i);
        i = j;
        if (term.empty()) throw std::invalid_argument("bad Laurent polynomial: " + text);
        int k = 0;
        std::string coeff = term;
        size_t depth0 = 0;
        size_t vpos = std::string::npos;
        for (size_t p = 0; p < term.size(); ++p) {
            if (term[p] == '(') ++depth0;
            else if (term[p] == ')') --depth0;
            else if (depth0 == 0 && term[p] == 'v') {
                vpos = p;
                break;
            }
        }
        if (vpos != std::string::npos) {
            coeff = term.substr(0, vpos);
            if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
            std::string ex = term.substr(vpos + 1);
            if (ex.empty()) k = 1;
            else if (ex[0] == '^') k = std::stoi(ex.substr(1));
            else throw std::invalid_argument("bad exponent in: " + term);
        }
        F c = coeff.empty() ? F(1) : parse_scalar<F>(coeff);
        if (sign < 0) c = -c;
        r.add_term(k, c);
    }
    return r;
}

}  // namespace hecke
