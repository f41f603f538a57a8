#pragma once

#include "hecke/wgraph.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

template <class F>
struct InvariantForm {
    LMatrix<F> matrix;
    bool singular = false;
};

// Calls fn(w, rho(T_w)) for every w, walking the canonical tree with one working matrix.
template <class F>
void for_each_T(const Representation<F>& R, const Group& grp, const std::function<void(int, const LMatrix<F>&)>& fn) {
    LMatrix<F> M = LMatrix<F>::identity(R.dim);
    std::function<void(int)> rec = [&](int w) {
        fn(w, M);
        GenSet asc = grp.canonical_left_ascent_set(w);
        for (int s : members(asc)) {
            M = R.T[size_t(s)] * M;
            rec(grp.lmul(s, w));
            LMatrix<F> inv = R.T[size_t(s)] - LMatrix<F>::identity(R.dim).scaled(zeta_f<F>(grp, s));
            M = inv * M;
        }
    };
    rec(0);
}

template <class F>
InvariantForm<F> gram_invariant_form(const Representation<F>& R, const Group& grp) {
    LMatrix<F> W(R.dim, R.dim);
    for_each_T<F>(R, grp, [&](int, const LMatrix<F>& M) { W = W + M.transpose() * M; });
    InvariantForm<F> out;
    out.matrix = shift(W, -matrix_valuation(W));
    for (auto& T : R.T)
        if (out.matrix * T != T.transpose() * out.matrix) throw std::logic_error("gram form is not invariant");
    out.singular = rank(out.matrix) < R.dim;
    return out;
}

template <class F>
struct BalanceSteps {
    LMatrix<F> Q, Qinv, omega;
    std::vector<F> D;
    std::vector<int> degrees;  // nu_infty(Omega^(i)), i = 0..d
    bool over_F = true;        // no monomial step was needed
};

// Works directly on a symmetric form with nu(Omega) = 0 whose leading Gram is positive.
// Each pivot is scaled to valuation 0, made orthogonal mod m to the earlier pivots
// (repeating the scaling if that raises its valuation again), then used to clear the
// v^0 part of the later entries in its row.
template <class F>
BalanceSteps<F> balance_form(LMatrix<F> omega) {
    int d = omega.rows();
    BalanceSteps<F> st;
    st.Q = LMatrix<F>::identity(d);
    st.Qinv = LMatrix<F>::identity(d);
    st.D.assign(size_t(d), F(0));
    st.degrees.push_back(matrix_degree(omega));

    auto scale = [&](int i, int gamma) {
        for (int j = 0; j < d; ++j) {
            omega(i, j) = omega(i, j).shift(-gamma);
            omega(j, i) = omega(j, i).shift(-gamma);
            st.Q(j, i) = st.Q(j, i).shift(-gamma);
            st.Qinv(i, j) = st.Qinv(i, j).shift(gamma);
        }
    };
    // column/row j += r * column/row i
    auto add = [&](int j, int i, const F& r) {
        Laurent<F> rl(r);
        for (int k = 0; k < d; ++k) omega(k, j) = omega(k, j) + omega(k, i) * rl;
        for (int k = 0; k < d; ++k) omega(j, k) = omega(j, k) + omega(i, k) * rl;
        for (int k = 0; k < d; ++k) st.Q(k, j) = st.Q(k, j) + st.Q(k, i) * rl;
        for (int k = 0; k < d; ++k) st.Qinv(i, k) = st.Qinv(i, k) - st.Qinv(j, k) * rl;
    };
    auto monotone = [&](int step) {
        int deg = matrix_degree(omega);
        if (deg > st.degrees.back())
            throw std::logic_error("degree increased at balance step " + std::to_string(step));
        return deg;
    };

    for (int i = 0; i < d; ++i) {
        for (;;) {
            int nu = omega(i, i).valuation();
            if (nu == kInfinity) throw std::runtime_error("degenerate pivot at balance step " + std::to_string(i));
            if (nu % 2 != 0) throw std::runtime_error("odd pivot valuation at balance step " + std::to_string(i));
            if (nu != 0) {
                st.over_F = false;
                scale(i, nu / 2);
                monotone(i);
            }
            bool changed = false;
            for (int k = 0; k < i; ++k) {
                F c = omega(k, i).coeff(0);
                if (c.is_zero()) continue;
                add(i, k, -c / st.D[size_t(k)]);
                changed = true;
            }
            if (!changed || omega(i, i).valuation() == 0) break;
        }
        if (omega(i, i).valuation() != 0) throw std::runtime_error("degenerate pivot at balance step " + std::to_string(i));
        st.D[size_t(i)] = omega(i, i).lowest_term();
        for (int j = i + 1; j < d; ++j) {
            F c = omega(i, j).coeff(0);
            if (!c.is_zero()) add(j, i, -c / st.D[size_t(i)]);
        }
        st.degrees.push_back(monotone(i));
    }
    if (matrix_valuation(omega) < 0) throw std::logic_error("balanced form left the valuation ring");
    Matrix<F> res = residue(omega);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j && !res(i, j).is_zero()) throw std::logic_error("balanced form is not diagonal mod m");
    st.omega = std::move(omega);
    return st;
}

// -min_w nu(trace rho(T_w))
template <class F>
int a_value(const Representation<F>& R, const Group& grp) {
    int lo = kInfinity;
    for_each_T<F>(R, grp, [&](int, const LMatrix<F>& M) { lo = std::min(lo, M.trace().valuation()); });
    return -lo;
}

struct BalanceCheck {
    bool ok = false;
    int witness = -1;  // violating element, or one attaining the bound
};

template <class F>
BalanceCheck is_balanced(const Representation<F>& R, const Group& grp, int a) {
    BalanceCheck out;
    int attained = -1, violated = -1;
    for_each_T<F>(R, grp, [&](int w, const LMatrix<F>& M) {
        int nu = matrix_valuation(M);
        if (nu < -a && violated < 0) violated = w;
        if (nu == -a && attained < 0) attained = w;
    });
    out.ok = violated < 0 && attained >= 0;
    out.witness = violated >= 0 ? violated : attained;
    return out;
}

// c(w) = (v^a rho(T_w)) mod m, zero matrices omitted.
template <class F>
std::map<int, Matrix<F>> leading_coefficients(const Representation<F>& R, const Group& grp, int a) {
    std::map<int, Matrix<F>> out;
    for_each_T<F>(R, grp, [&](int w, const LMatrix<F>& M) {
        if (matrix_valuation(M) < -a) throw std::runtime_error("Representation not balanced! w = " + grp.word_string(w));
        Matrix<F> c = coefficient_matrix(M, -a);
        if (!c.is_zero()) out.emplace(w, std::move(c));
    });
    return out;
}

template <class F>
struct BalancedData {
    int a_value = 0;
    LMatrix<F> Q, Qinv, omega;
    std::vector<F> D;
    std::map<int, Matrix<F>> leading;
    std::vector<int> degrees;
    bool over_F = true;
};

template <class F>
struct Balanced {
    Representation<F> rep;
    BalancedData<F> data;
};

template <class F>
Balanced<F> balance(const Representation<F>& R, const Group& grp) {
    InvariantForm<F> form = gram_invariant_form(R, grp);
    BalanceSteps<F> st = balance_form(form.matrix);
    Balanced<F> out;
    out.rep = conjugate(R, st.Qinv, st.Q);
    auto& d = out.data;
    d.a_value = a_value(out.rep, grp);
    BalanceCheck chk = is_balanced(out.rep, grp, d.a_value);
    if (!chk.ok) throw std::runtime_error("balance produced an unbalanced representation at w = " + grp.word_string(chk.witness));
    d.leading = leading_coefficients(out.rep, grp, d.a_value);
    d.Q = std::move(st.Q);
    d.Qinv = std::move(st.Qinv);
    d.omega = std::move(st.omega);
    d.D = std::move(st.D);
    d.degrees = std::move(st.degrees);
    d.over_F = st.over_F;
    return out;
}

template <class F>
struct Strictified {
    Representation<F> rep;
    LMatrix<F> omega;
    std::vector<F> D;
    Matrix<F> M, Minv;  // rep = M^-1 R M
};

// Per label block, (Omega mod m)_II = L D L^T; conjugating by L^-T diagonalizes Omega mod m.
template <class F>
Strictified<F> strictify(const Representation<F>& R, const LMatrix<F>& omega, const std::vector<GenSet>& labels) {
    int d = R.dim;
    if (int(labels.size()) != d) throw std::invalid_argument("label count does not match the dimension");
    if (matrix_valuation(omega) < 0) throw std::invalid_argument("invariant form must have valuation >= 0");
    Matrix<F> res = residue(omega);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (labels[size_t(i)] != labels[size_t(j)] && !res(i, j).is_zero())
                throw std::runtime_error("form is not block diagonal mod m at (" + std::to_string(i) + "," +
                                         std::to_string(j) + "); see the block report");
    std::map<GenSet, std::vector<int>> blocks;
    for (int x = 0; x < d; ++x) blocks[labels[size_t(x)]].push_back(x);
    Matrix<F> Lfull = Matrix<F>::identity(d);
    for (auto& [I, idx] : blocks) {
        auto f = ldlt(res.block(idx, idx));
        if (!f) throw std::runtime_error("zero pivot in block " + genset_string(I));
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) Lfull(idx[a], idx[b]) = f->L(int(a), int(b));
    }
    Strictified<F> out;
    out.Minv = Lfull.transpose();
    out.M = *inverse(out.Minv);
    out.rep = conjugate(R, lift(out.Minv), lift(out.M));
    out.omega = lift(out.M.transpose()) * omega * lift(out.M);
    Matrix<F> r2 = residue(out.omega);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            if (i != j && !r2(i, j).is_zero()) throw std::logic_error("strictify left an off-diagonal residue");
        out.D.push_back(r2(i, i));
    }
    return out;
}

// d_t c(w^-1)_ts = d_s c(w)_st for all w, s, t.
template <class F>
bool strict_balance_relation(const std::map<int, Matrix<F>>& leading, const std::vector<F>& D, const Group& grp, int dim) {
    Matrix<F> zero(dim, dim);
    for (int w = 0; w < grp.size(); ++w) {
        auto it = leading.find(w), jt = leading.find(grp.inverse(w));
        const Matrix<F>& c = it == leading.end() ? zero : it->second;
        const Matrix<F>& ci = jt == leading.end() ? zero : jt->second;
        for (int s = 0; s < dim; ++s)
            for (int t = 0; t < dim; ++t)
                if (D[size_t(t)] * ci(t, s) != D[size_t(s)] * c(s, t)) return false;
    }
    return true;
}

}  // namespace hecke
