#pragma once

#include "hecke/balance.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

inline long integer_value(const Rational& q) { return q.raw().get_num().get_si(); }
inline long integer_value(const QSqrt5& x) { return integer_value(x.a()); }

// All reduced words of w, built from left descents.
inline std::vector<std::vector<int>> reduced_words(const Group& grp, int w) {
    if (w == grp.identity()) return {{}};
    std::vector<std::vector<int>> out;
    for (int s : members(grp.left_descents(w)))
        for (auto& tail : reduced_words(grp, grp.lmul(s, w))) {
            std::vector<int> word{s};
            word.insert(word.end(), tail.begin(), tail.end());
            out.push_back(std::move(word));
        }
    return out;
}

template <class F>
struct CongruenceReport {
    bool ok = true;
    Matrix<F> residue;          // (v^L(w) omega(T_w)) mod m
    std::vector<F> expected;    // d_x
    std::string failure;
};

// v^L(w) omega(T_w) = prod (v_s omega(T_s)) along the given reduced word (default: grp.word(w)).
template <class F>
CongruenceReport<F> tw_diagonal_congruence(const WGraph<F>& G, const Group& grp, int w,
                                           const std::optional<std::vector<int>>& word = std::nullopt) {
    GeckReport geck = is_geck(G, grp);
    if (!geck.ok) throw std::invalid_argument("not a Geck W-graph: " + geck.problems.front());
    std::vector<int> wd = word ? *word : grp.word(w);
    if (grp.from_word(wd) != w || int(wd.size()) != grp.length(w))
        throw std::invalid_argument("word is not a reduced expression of " + grp.word_string(w));
    Representation<F> R = wgraph_matrices(G, grp);
    int d = R.dim;
    LMatrix<F> M = LMatrix<F>::identity(d);
    for (int s : wd) M = M * R.T[size_t(s)].scaled(vpow_f<F>(grp.L(s)));

    CongruenceReport<F> rep;
    GenSet supp = grp.support(w);
    F sign = grp.length(w) % 2 ? F(-1) : F(1);
    for (int x = 0; x < d; ++x) rep.expected.push_back((supp & ~G.labels[size_t(x)]) == 0 ? sign : F(0));
    for (int i = 0; i < d && rep.ok; ++i)
        for (int j = 0; j < d; ++j)
            if (M(i, j).valuation() < 0) {
                rep.ok = false;
                rep.failure = "negative valuation at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                break;
            }
    if (!rep.ok) return rep;
    rep.residue = residue(M);
    for (int i = 0; i < d && rep.ok; ++i)
        for (int j = 0; j < d; ++j) {
            F want = i == j ? rep.expected[size_t(i)] : F(0);
            if (rep.residue(i, j) != want) {
                rep.ok = false;
                rep.failure = "congruence fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                break;
            }
        }
    return rep;
}

// Moebius recursion on m(J) = (-1)^l(w_J) (v^L(w_J) tr rho(T_{w_J}))|_{v^0}, largest J first.
template <class F>
std::map<GenSet, int> label_multiset_from_character(const Representation<F>& R, const Group& grp) {
    GenSet all = grp.all_generators();
    std::vector<GenSet> subsets;
    for (GenSet J = 0; J <= all; ++J) subsets.push_back(J);
    std::stable_sort(subsets.begin(), subsets.end(), [](GenSet a, GenSet b) { return popcount(a) > popcount(b); });
    std::map<GenSet, long> count;
    for (GenSet J : subsets) {
        int wJ = grp.longest_element(J);
        Laurent<F> tr = rep_T(R, grp, wJ).trace().shift(grp.weight(wJ));
        if (tr.valuation() < 0) throw std::runtime_error("not a Geck W-graph character: trace below the bound at J = " + genset_string(J));
        F m = tr.coeff(0);
        if (grp.length(wJ) % 2) m = -m;
        if (!m.is_integer()) throw std::runtime_error("not a Geck W-graph character: non-integral m(" + genset_string(J) + ")");
        long c = integer_value(m);
        for (auto& [K, n] : count)
            if (K != J && (J & ~K) == 0) c -= n;
        if (c < 0) throw std::runtime_error("not a Geck W-graph character: negative count at " + genset_string(J));
        count[J] = c;
    }
    std::map<GenSet, int> out;
    for (auto& [J, n] : count)
        if (n != 0) out[J] = int(n);
    return out;
}

struct ABoundReport {
    bool ok = false;
    int a = 0, bound = 0, slack = 0;
};

// a >= max L(w_I) over occurring labels I.
inline ABoundReport a_bound_check(int a, const std::map<GenSet, int>& labels, const Group& grp) {
    ABoundReport r;
    r.a = a;
    for (auto& [I, n] : labels)
        if (n > 0) r.bound = std::max(r.bound, grp.weight(grp.longest_element(I)));
    r.slack = a - r.bound;
    r.ok = r.slack >= 0;
    return r;
}

template <class F>
ABoundReport a_bound_check(const Representation<F>& R, const Group& grp) {
    return a_bound_check(a_value(R, grp), label_multiset_from_character(R, grp), grp);
}

// Divide by v^nu(A), then by the lowest term of the first nonzero entry (row-major).
template <class F>
LMatrix<F> normalize_matrix(LMatrix<F> A) {
    int nu = matrix_valuation(A);
    if (nu == kInfinity) return A;
    A = shift(A, -nu);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (!A(i, j).is_zero()) {
                F inv = F(1) / A(i, j).lowest_term();
                for (int k = 0; k < A.rows(); ++k)
                    for (int l = 0; l < A.cols(); ++l) A(k, l) = A(k, l) * inv;
                return A;
            }
    return A;
}

// Basis of {A : A rho1(T_s) = rho2(T_s) A for all s}, A of size dim2 x dim1.
template <class F>
std::vector<LMatrix<F>> intertwiner_space(const Representation<F>& R1, const Representation<F>& R2) {
    if (R1.T.size() != R2.T.size()) throw std::invalid_argument("representations of different groups");
    int d1 = R1.dim, d2 = R2.dim, n = d1 * d2;
    if (n == 0) return {};
    auto var = [&](int i, int j) { return i * d1 + j; };
    LMatrix<F> E(int(R1.T.size()) * n, n);
    int row = 0;
    for (size_t s = 0; s < R1.T.size(); ++s)
        for (int i = 0; i < d2; ++i)
            for (int j = 0; j < d1; ++j, ++row) {
                for (int k = 0; k < d1; ++k)
                    if (!R1.T[s](k, j).is_zero()) E(row, var(i, k)) += R1.T[s](k, j);
                for (int k = 0; k < d2; ++k)
                    if (!R2.T[s](i, k).is_zero()) E(row, var(k, j)) -= R2.T[s](i, k);
            }
    std::vector<LMatrix<F>> out;
    for (auto& x : kernel_basis(E)) {
        LMatrix<F> A(d2, d1);
        for (int i = 0; i < d2; ++i)
            for (int j = 0; j < d1; ++j) A(i, j) = x[size_t(var(i, j))];
        out.push_back(normalize_matrix(A));
    }
    return out;
}

template <class F>
Representation<F> transpose_rep(const Representation<F>& R) {
    Representation<F> out{R.dim, {}};
    for (auto& T : R.T) out.T.push_back(T.transpose());
    return out;
}

// Basis of the forms B with B rho(T_s) = rho(T_s)^T B.
template <class F>
std::vector<LMatrix<F>> invariant_form_space(const Representation<F>& R) {
    return intertwiner_space(R, transpose_rep(R));
}

// |I| descending, then lexicographic on the members.
inline bool block_order(GenSet a, GenSet b) {
    if (popcount(a) != popcount(b)) return popcount(a) > popcount(b);
    return members(a) < members(b);
}

template <class F>
struct BlockReport {
    std::vector<std::pair<GenSet, int>> row_blocks, col_blocks;
    std::map<std::pair<GenSet, GenSet>, Matrix<F>> offdiag_residues;  // (A mod m)_IJ for I != J
    bool triangular = true;  // (A mod m)_IJ = 0 unless I contains J
    bool diagonal = true;    // (A mod m)_IJ = 0 for I != J
};

template <class F>
BlockReport<F> block_report(const LMatrix<F>& A, const std::vector<GenSet>& row_labels, const std::vector<GenSet>& col_labels) {
    if (int(row_labels.size()) != A.rows() || int(col_labels.size()) != A.cols())
        throw std::invalid_argument("label partition does not match the matrix dimensions");
    if (matrix_valuation(A) != 0 && matrix_valuation(A) != kInfinity)
        throw std::invalid_argument("block_report needs nu(A) = 0, got " + std::to_string(matrix_valuation(A)));
    auto group = [](const std::vector<GenSet>& labels) {
        std::map<GenSet, std::vector<int>> idx;
        for (size_t i = 0; i < labels.size(); ++i) idx[labels[i]].push_back(int(i));
        std::vector<std::pair<GenSet, std::vector<int>>> v(idx.begin(), idx.end());
        std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return block_order(a.first, b.first); });
        return v;
    };
    auto rows = group(row_labels), cols = group(col_labels);
    Matrix<F> res = residue(A);
    BlockReport<F> r;
    for (auto& [I, ix] : rows) r.row_blocks.emplace_back(I, int(ix.size()));
    for (auto& [J, jx] : cols) r.col_blocks.emplace_back(J, int(jx.size()));
    for (auto& [I, ix] : rows)
        for (auto& [J, jx] : cols) {
            if (I == J) continue;
            Matrix<F> b = res.block(ix, jx);
            bool zero = b.is_zero();
            if (!zero) {
                r.diagonal = false;
                if ((J & ~I) != 0) r.triangular = false;
            }
            r.offdiag_residues.emplace(std::make_pair(I, J), std::move(b));
        }
    if (r.diagonal && !r.triangular) throw std::logic_error("block report flags are inconsistent");
    return r;
}

template <class F>
struct OmegaCertificate {
    LMatrix<F> A;  // A omega_1 = omega_2 A
    std::vector<int> e_residual, x_residual;  // nonzero entries of A e1_s - e2_s A and A x1_s - x2_s A
    bool ok = false;
    std::string verdict;
};

// An H-isomorphism G1 -> G2 that is constant over F, re-verified on omega(e_s) and omega(x_s).
// Absent when no invertible intertwiner exists.
template <class F>
std::optional<OmegaCertificate<F>> omega_iso_certificate(const WGraph<F>& G1, const WGraph<F>& G2, const Group& grp) {
    for (const WGraph<F>* G : {&G1, &G2}) {
        GeckReport g = is_geck(*G, grp);
        if (!g.ok) throw std::invalid_argument("not a Geck W-graph: " + g.problems.front());
    }
    if (G1.size() != G2.size()) throw std::invalid_argument("W-graphs of different size");
    auto basis = intertwiner_space(wgraph_matrices(G1, grp), wgraph_matrices(G2, grp));
    if (basis.empty()) return std::nullopt;
    int d = G1.size();
    std::optional<LMatrix<F>> A;
    if (basis.size() == 1) {
        if (rank(basis[0]) == d) A = basis[0];
    } else {
        // seeded random F-combinations of the basis
        std::mt19937 rng(1);
        std::uniform_int_distribution<int> dist(-5, 5);
        for (int attempt = 0; attempt < 16 && !A; ++attempt) {
            LMatrix<F> S(d, d);
            for (auto& B : basis) S = S + B.scaled(Laurent<F>(F(dist(rng))));
            if (rank(S) == d) A = normalize_matrix(S);
        }
    }
    if (!A) return std::nullopt;
    OmegaCertificate<F> cert;
    cert.A = *A;
    if (matrix_degree(cert.A) != 0 || matrix_valuation(cert.A) != 0) {
        cert.verdict = "H-isomorphic, Omega-certificate failed";
        return cert;
    }
    auto O1 = omega_matrices(G1, grp), O2 = omega_matrices(G2, grp);
    auto nonzero = [](const LMatrix<F>& M) {
        int n = 0;
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) n += !M(i, j).is_zero();
        return n;
    };
    cert.ok = true;
    for (int s = 0; s < grp.rank(); ++s) {
        cert.e_residual.push_back(nonzero(cert.A * O1.e[size_t(s)] - O2.e[size_t(s)] * cert.A));
        cert.x_residual.push_back(nonzero(cert.A * O1.x[size_t(s)] - O2.x[size_t(s)] * cert.A));
        if (cert.e_residual.back() || cert.x_residual.back()) cert.ok = false;
    }
    cert.verdict = cert.ok ? "Omega-isomorphic" : "H-isomorphic, Omega-certificate failed";
    return cert;
}

}  // namespace hecke
