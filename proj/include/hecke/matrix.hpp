#pragma once

#include "hecke/laurent.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * size_t(cols), T(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    T& operator()(int i, int j) { return a_[size_t(i) * size_t(c_) + size_t(j)]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * size_t(c_) + size_t(j)]; }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const T& x) { return x.is_zero(); });
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    template <class Fn>
    auto map(Fn f) const {
        using U = decltype(f(std::declval<const T&>()));
        Matrix<U> m(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    Matrix operator-() const {
        Matrix m(r_, c_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = -a_[k];
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix dimension mismatch in product");
        Matrix m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < b.c_; ++j) {
                    const T& y = b(k, j);
                    if (!y.is_zero()) m(i, j) += x * y;
                }
            }
        return m;
    }
    template <class S>
    Matrix scaled(const S& s) const {
        Matrix m(*this);
        for (auto& x : m.a_) x = x * s;
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    T trace() const {
        T t(0);
        for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
        return t;
    }

    Matrix block(const std::vector<int>& rows, const std::vector<int>& cols) const {
        Matrix m(int(rows.size()), int(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) m(int(i), int(j)) = (*this)(rows[i], cols[j]);
        return m;
    }

    void swap_rows(int i, int j) {
        for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }

private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix dimension mismatch");
    }
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

template <class F>
using LMatrix = Matrix<Laurent<F>>;

template <class F>
int matrix_valuation(const LMatrix<F>& A) {
    int v = kInfinity;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) v = std::min(v, A(i, j).valuation());
    return v;
}

// Largest exponent occurring in any entry (the degree tracked by balancing).
template <class F>
int matrix_degree(const LMatrix<F>& A) {
    int d = -kInfinity;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) d = std::max(d, A(i, j).degree());
    return d;
}

template <class F>
Matrix<F> coefficient_matrix(const LMatrix<F>& A, int k) {
    return A.map([k](const Laurent<F>& x) { return x.coeff(k); });
}

// Image in F^{r x c} of a matrix over O = F[v] localized; requires valuation >= 0.
template <class F>
Matrix<F> residue(const LMatrix<F>& A) {
    if (matrix_valuation(A) < 0) throw std::domain_error("matrix not integral: negative valuation");
    return coefficient_matrix(A, 0);
}

template <class F>
LMatrix<F> shift(const LMatrix<F>& A, int k) {
    return A.map([k](const Laurent<F>& x) { return x.shift(k); });
}

template <class F>
LMatrix<F> lift(const Matrix<F>& A) {
    return A.map([](const F& x) { return Laurent<F>(x); });
}

template <class F>
LMatrix<F> bar(const LMatrix<F>& A) {
    return A.map([](const Laurent<F>& x) { return x.bar(); });
}

// ---- linear algebra over the field F ----

template <class F>
struct RowEchelon {
    Matrix<F> R;
    std::vector<int> pivots;
};

template <class F>
RowEchelon<F> rref(Matrix<F> A) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
        int p = -1;
        for (int i = r; i < A.rows(); ++i)
            if (!A(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        A.swap_rows(p, r);
        F inv = F(1) / A(r, c);
        for (int j = 0; j < A.cols(); ++j) A(r, j) *= inv;
        for (int i = 0; i < A.rows(); ++i) {
            if (i == r || A(i, c).is_zero()) continue;
            F f = A(i, c);
            for (int j = 0; j < A.cols(); ++j)
                if (!A(r, j).is_zero()) A(i, j) -= f * A(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(A), std::move(piv)};
}

template <class F>
int rank(const Matrix<F>& A) { return int(rref(A).pivots.size()); }

// Basis of {x : A x = 0}, one column vector per entry.
template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& A) {
    auto [R, piv] = rref(A);
    std::vector<bool> is_piv(size_t(A.cols()), false);
    for (int p : piv) is_piv[size_t(p)] = true;
    std::vector<std::vector<F>> basis;
    for (int f = 0; f < A.cols(); ++f) {
        if (is_piv[size_t(f)]) continue;
        std::vector<F> x(size_t(A.cols()), F(0));
        x[size_t(f)] = F(1);
        for (size_t i = 0; i < piv.size(); ++i) x[size_t(piv[i])] = -R(int(i), f);
        basis.push_back(std::move(x));
    }
    return basis;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& A) {
    int n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("inverse of non-square matrix");
    Matrix<F> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = F(1);
    }
    auto [R, piv] = rref(aug);
    if (int(piv.size()) < n || piv[size_t(n - 1)] != n - 1) return std::nullopt;
    Matrix<F> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = R(i, n + j);
    return inv;
}

template <class F>
F determinant(Matrix<F> A) {
    int n = A.rows();
    F det(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!A(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return F(0);
        if (p != c) {
            A.swap_rows(p, c);
            det = -det;
        }
        det *= A(c, c);
        F inv = F(1) / A(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (A(i, c).is_zero()) continue;
            F f = A(i, c) * inv;
            for (int j = c; j < n; ++j) A(i, j) -= f * A(c, j);
        }
    }
    return det;
}

// A = L D L^T with L unit lower triangular; nullopt if a zero pivot occurs.
template <class F>
struct LDLT {
    Matrix<F> L;
    std::vector<F> D;
};

template <class F>
std::optional<LDLT<F>> ldlt(const Matrix<F>& A) {
    int n = A.rows();
    Matrix<F> L = Matrix<F>::identity(n);
    std::vector<F> D(size_t(n), F(0));
    for (int j = 0; j < n; ++j) {
        F d = A(j, j);
        for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k) * D[size_t(k)];
        if (d.is_zero()) return std::nullopt;
        D[size_t(j)] = d;
        for (int i = j + 1; i < n; ++i) {
            F s = A(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k) * D[size_t(k)];
            L(i, j) = s / d;
        }
    }
    return LDLT<F>{std::move(L), std::move(D)};
}

// ---- fraction-free elimination over F[v,v^-1] ----

template <class F>
RowEchelon<Laurent<F>> bareiss(LMatrix<F> A) {
    std::vector<int> piv;
    Laurent<F> prev(F(1));
    int r = 0;
    for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
        int p = -1;
        size_t best = 0;
        for (int i = r; i < A.rows(); ++i)
            if (!A(i, c).is_zero() && (p < 0 || A(i, c).size() < best)) {
                p = i;
                best = A(i, c).size();
            }
        if (p < 0) continue;
        A.swap_rows(p, r);
        for (int i = r + 1; i < A.rows(); ++i) {
            for (int j = c + 1; j < A.cols(); ++j) {
                Laurent<F> x = A(r, c) * A(i, j) - A(i, c) * A(r, j);
                A(i, j) = x.divide_exact(prev);
            }
            A(i, c) = Laurent<F>();
        }
        prev = A(r, c);
        piv.push_back(c);
        ++r;
    }
    return {std::move(A), std::move(piv)};
}

template <class F>
int rank(const LMatrix<F>& A) { return int(bareiss(A).pivots.size()); }

// Kernel basis over K with entries in F[v,v^-1]. Each vector is primitive,
// shifted to valuation 0 and scaled so its first nonzero entry has lowest term 1.
template <class F>
std::vector<std::vector<Laurent<F>>> kernel_basis(const LMatrix<F>& A) {
    auto [U, piv] = bareiss(A);
    int n = A.cols();
    std::vector<bool> is_piv(size_t(n), false);
    for (int p : piv) is_piv[size_t(p)] = true;
    std::vector<std::vector<Laurent<F>>> out;
    Laurent<F> all(F(1));
    for (size_t i = 0; i < piv.size(); ++i) all = all * U(int(i), piv[i]);
    for (int f = 0; f < n; ++f) {
        if (is_piv[size_t(f)]) continue;
        std::vector<Laurent<F>> x(static_cast<size_t>(n));
        x[size_t(f)] = all;
        for (size_t ii = piv.size(); ii-- > 0;) {
            int i = int(ii);
            Laurent<F> s;
            for (int k = piv[ii] + 1; k < n; ++k)
                if (!U(i, k).is_zero() && !x[size_t(k)].is_zero()) s += U(i, k) * x[size_t(k)];
            x[size_t(piv[ii])] = (-s).divide_exact(U(i, piv[ii]));
        }
        Laurent<F> g;
        for (auto& e : x)
            if (!e.is_zero()) g = g.is_zero() ? gcd(e, e) : gcd(g, e);
        for (auto& e : x) e = e.divide_exact(g);
        int nu = kInfinity;
        for (auto& e : x) nu = std::min(nu, e.valuation());
        F lead(0);
        for (auto& e : x)
            if (!e.is_zero()) {
                lead = e.lowest_term();
                break;
            }
        F inv = F(1) / lead;
        for (auto& e : x) e = e.shift(-nu) * inv;
        out.push_back(std::move(x));
    }
    return out;
}

template <class T>
std::string matrix_to_string(const Matrix<T>& A) {
    std::string s;
    for (int i = 0; i < A.rows(); ++i) {
        s += "[";
        for (int j = 0; j < A.cols(); ++j) s += (j ? ", " : "") + to_string(A(i, j));
        s += "]\n";
    }
    return s;
}

}  // namespace hecke
