#pragma once

#include "hecke/balance.hpp"
#include "hecke/catalog.hpp"

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

template <class F>
Laurent<F> lift_poly(const Poly& p) {
    Laurent<F> r;
    for (auto& [k, c] : p.terms()) r.add_term(k, F(c));
    return r;
}

template <class F>
struct SchurData {
    Laurent<F> c;
    F f;
};

// c from sum_w rho(T_w)_st rho(T_w^-1)_ts; f = lowest term of v^2a c.
template <class F>
SchurData<F> schur_f(const Representation<F>& R, const Group& grp, int a, int s = 0, int t = 0) {
    auto T = all_T(R, grp);
    Laurent<F> c;
    for (int w = 0; w < grp.size(); ++w) c += T[size_t(w)](s, t) * T[size_t(grp.inverse(w))](t, s);
    if (c.is_zero() || c.valuation() != -2 * a) throw std::runtime_error("not irreducible/balanced");
    return {c, c.lowest_term()};
}

// A balanced irreducible representation together with its leading data.
template <class F>
struct Irrep {
    Representation<F> rep;
    int a = 0;
    F f;
    std::map<int, Matrix<F>> leading;
};

// Keeps R when it is already balanced, otherwise balances it first.
template <class F>
Irrep<F> make_irrep(const Representation<F>& R, const Group& grp) {
    Irrep<F> out;
    int a = a_value(R, grp);
    if (is_balanced(R, grp, a).ok) {
        out.rep = R;
    } else {
        out.rep = balance(R, grp).rep;
    }
    out.a = a;
    out.leading = leading_coefficients(out.rep, grp, a);
    out.f = schur_f(out.rep, grp, a).f;
    return out;
}

template <class F>
const Matrix<F>* leading_at(const Irrep<F>& L, int w) {
    auto it = L.leading.find(w);
    return it == L.leading.end() ? nullptr : &it->second;
}

template <class F>
struct JData {
    int size = 0;
    std::vector<int> inv;
    std::vector<F> f;
    std::map<std::pair<int, int>, std::map<int, F>> gamma;  // (x,y) -> z -> gamma_{x,y,z}
    std::vector<F> n;
    std::vector<int> duflo;

    F gamma_at(int x, int y, int z) const {
        auto it = gamma.find({x, y});
        if (it == gamma.end()) return F(0);
        auto jt = it->second.find(z);
        return jt == it->second.end() ? F(0) : jt->second;
    }
};

template <class F>
JData<F> gamma_n_table(const std::vector<Irrep<F>>& reps, const Group& grp) {
    long dims = 0;
    for (auto& r : reps) dims += long(r.rep.dim) * r.rep.dim;
    if (dims != grp.size())
        throw std::invalid_argument("incomplete representation set: sum of squared dimensions " + std::to_string(dims) +
                                    " != |W| = " + std::to_string(grp.size()));
    JData<F> J;
    J.size = grp.size();
    for (int w = 0; w < grp.size(); ++w) J.inv.push_back(grp.inverse(w));
    J.n.assign(size_t(grp.size()), F(0));
    for (auto& r : reps) {
        F finv = F(1) / r.f;
        J.f.push_back(r.f);
        for (auto& [x, cx] : r.leading) {
            for (auto& [y, cy] : r.leading) {
                Matrix<F> P = cx * cy;
                if (P.is_zero()) continue;
                auto& row = J.gamma[{x, y}];
                for (auto& [z, cz] : r.leading) {
                    F g = (P * cz).trace() * finv;
                    if (g.is_zero()) continue;
                    F& e = row[z];
                    e += g;
                    if (e.is_zero()) row.erase(z);
                }
                if (row.empty()) J.gamma.erase({x, y});
            }
            J.n[size_t(grp.inverse(x))] += cx.trace() * finv;
        }
    }
    for (int x = 0; x < grp.size(); ++x)
        if (!J.n[size_t(x)].is_zero()) J.duflo.push_back(x);
    return J;
}

// t_x t_y = sum_z gamma_{x,y,z} t_{z^-1}, extended bilinearly over any coefficient ring.
template <class F, class C>
std::map<int, C> j_multiply(const std::map<int, C>& a, const std::map<int, C>& b, const JData<F>& J) {
    std::map<int, C> r;
    for (auto& [x, ax] : a)
        for (auto& [y, by] : b) {
            auto it = J.gamma.find({x, y});
            if (it == J.gamma.end()) continue;
            C ab = ax * by;
            for (auto& [z, g] : it->second) {
                C& e = r[J.inv[size_t(z)]];
                e += ab * C(g);
            }
        }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

template <class F>
std::map<int, F> j_unit(const JData<F>& J) {
    std::map<int, F> u;
    for (int d : J.duflo) u[d] = J.n[size_t(d)];
    return u;
}

template <class F>
struct DufloResult {
    std::vector<int> duflo;
    std::map<int, F> ntilde;  // (-1)^l(d) * lowest term of bar(P*_{1,d})
};

// Involutions with +-idempotent leading matrix, pruned pairwise, then tested against Delta(d) = a.
template <class F>
DufloResult<F> duflo_from_reps(const Irrep<F>& L, const Group& grp, KL& kl) {
    std::vector<Matrix<F>> idem;
    std::vector<std::vector<int>> fib;
    for (auto& [z, c] : L.leading) {
        if (grp.inverse(z) != z) continue;
        int lz = 0;
        for (int s : grp.word(z)) lz += grp.L(s);
        if ((lz - L.a) % 2 != 0) continue;
        Matrix<F> E = c, P = c * c;
        if (!(E == P)) {
            if (!(E == -P)) continue;
            E = -E;
        }
        size_t i = 0;
        while (i < idem.size() && !(idem[i] == E)) ++i;
        if (i == idem.size()) {
            idem.push_back(E);
            fib.push_back({z});
        } else {
            fib[i].push_back(z);
        }
    }
    std::vector<char> alive(idem.size(), 1);
    for (size_t i = 0; i < idem.size(); ++i) {
        if (!alive[i]) continue;
        for (size_t j = i + 1; j < idem.size(); ++j) {
            if (!alive[j]) continue;
            Matrix<F> A = idem[i] * idem[j];
            if (!(A == idem[j] * idem[i])) {
                alive[i] = alive[j] = 0;
                break;
            }
            if (!A.is_zero()) {
                if (!(A == idem[j])) {
                    alive[i] = 0;
                    break;
                }
                if (!(A == idem[i])) alive[j] = 0;
            }
        }
    }
    DufloResult<F> out;
    for (size_t i = 0; i < idem.size(); ++i) {
        if (!alive[i]) continue;
        for (int z : fib[i]) {
            Poly b = kl.pstar(0, z).bar();
            if (b.is_zero() || b.valuation() != L.a) continue;
            out.duflo.push_back(z);
            F n = F(b.lowest_term());
            out.ntilde[z] = grp.length(z) % 2 ? -n : n;
        }
    }
    std::sort(out.duflo.begin(), out.duflo.end());
    return out;
}

template <class F>
using LJElement = std::map<int, Laurent<F>>;

// phi(C_w) = sum over d in D, z ~LR d of n_d h_{w,d,z} t_z.
template <class F>
LJElement<F> lusztig_phi(int w, const std::map<int, F>& n, KL& kl, const CellPartition& twosided) {
    LJElement<F> r;
    for (auto& [d, nd] : n) {
        if (nd.is_zero()) continue;
        for (auto& [z, h] : kl.h_structure(w, d)) {
            if (twosided.block_of[size_t(z)] != twosided.block_of[size_t(d)]) continue;
            Laurent<F>& e = r[z];
            e += lift_poly<F>(h) * Laurent<F>(nd);
        }
    }
    for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
}

// Apply rho-bar (t_z -> c(z)) to an element of A tensor J.
template <class F>
LMatrix<F> rho_bar(const Irrep<F>& L, const LJElement<F>& x) {
    LMatrix<F> M(L.rep.dim, L.rep.dim);
    for (auto& [z, a] : x)
        if (auto c = leading_at(L, z)) M = M + lift(*c).scaled(a);
    return M;
}

// psi(T_s) = sum_d sum_{z in cell(d)} n~_d sigma(T_s)_{zd} c(z), sigma the KL left-cell matrices.
template <class F>
Representation<F> cell_representation(const Irrep<F>& L, const DufloResult<F>& D, const Representation<F>& regular,
                                      const CellPartition& left) {
    if (D.duflo.empty()) throw std::runtime_error("no Duflo involution with nonzero leading matrix");
    Representation<F> psi{L.rep.dim, {}};
    for (size_t s = 0; s < regular.T.size(); ++s) {
        LMatrix<F> M(L.rep.dim, L.rep.dim);
        for (int d : D.duflo) {
            Laurent<F> nd(D.ntilde.at(d));
            for (int z : left.blocks[size_t(left.block_of[size_t(d)])]) {
                auto c = leading_at(L, z);
                if (!c) continue;
                const Laurent<F>& sig = regular.T[s](z, d);
                if (sig.is_zero()) continue;
                M = M + lift(*c).scaled(sig * nd);
            }
        }
        psi.T.push_back(std::move(M));
    }
    return psi;
}

template <class F>
bool same_character(const Representation<F>& A, const Representation<F>& B, const Group& grp) {
    if (A.dim != B.dim) return false;
    auto TA = all_T(A, grp), TB = all_T(B, grp);
    for (int w = 0; w < grp.size(); ++w)
        if (TA[size_t(w)].trace() != TB[size_t(w)].trace()) return false;
    return true;
}

struct GeckMuellerReport {
    bool balanced = false;
    int a = 0;
    bool same_character = false;
    bool psi_is_rep = false;
    std::string verdict;  // "equal", "H-isomorphic-but-unequal", "not balanced", "not a representation"
};

template <class F>
GeckMuellerReport geck_mueller_check(const WGraph<F>& G, const Group& grp, KL& kl) {
    GeckMuellerReport rep;
    ValidationReport v = validate_wgraph(G, grp);
    if (!v.ok()) {
        rep.verdict = "not a representation: " + v.failure;
        return rep;
    }
    auto R = wgraph_matrices(G, grp);
    rep.a = a_value(R, grp);
    rep.balanced = is_balanced(R, grp, rep.a).ok;
    if (!rep.balanced) {
        rep.verdict = "not balanced";
        return rep;
    }
    Irrep<F> L{R, rep.a, schur_f(R, grp, rep.a).f, leading_coefficients(R, grp, rep.a)};
    auto D = duflo_from_reps(L, grp, kl);
    auto regular = wgraph_matrices(kl_wgraph<F>(kl), grp);
    auto psi = cell_representation(L, D, regular, kl.cells(CellKind::Left));
    rep.psi_is_rep = validate(psi, grp).ok();
    rep.same_character = same_character(psi, R, grp);
    if (psi.T == R.T) rep.verdict = "equal";
    else if (rep.psi_is_rep && rep.same_character) rep.verdict = "H-isomorphic-but-unequal";
    else rep.verdict = "cell representation mismatch";
    return rep;
}

// One left cell per two-sided cell; only a complete set of irreducibles when every left cell is irreducible.
template <class F>
std::vector<WGraph<F>> kl_cell_irreps(KL& kl) {
    WGraph<F> G = kl_wgraph<F>(kl);
    auto left = kl.cells(CellKind::Left);
    auto two = kl.cells(CellKind::TwoSided);
    std::vector<WGraph<F>> out;
    std::set<int> seen;
    for (auto& blk : left.blocks) {
        if (!seen.insert(two.block_of[size_t(blk.front())]).second) continue;
        out.push_back(induced_subgraph(G, blk));
    }
    return out;
}

// B = sum_x c(x)^T c(x), scaled by the gcd of its entries when they are integers, else by the first nonzero entry.
inline Matrix<Rational> leading_gram(const Irrep<Rational>& L) {
    Matrix<Rational> B(L.rep.dim, L.rep.dim);
    for (auto& [x, c] : L.leading) B = B + c.transpose() * c;
    bool integral = true;
    mpz_class g = 0;
    Rational first(0);
    for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            const Rational& e = B(i, j);
            if (e.is_zero()) continue;
            if (first.is_zero()) first = e;
            if (!e.is_integer()) integral = false;
            else g = gcd(g, mpz_class(e.raw().get_num()));
        }
    Rational scale = integral ? Rational(mpq_class(g)) : first;
    return B.scaled(Rational(1) / scale);
}

struct CellElement {
    int lambda, s, t;
    std::map<int, Rational> coeffs;  // over the C-basis
};

struct CellDatum {
    std::vector<Irrep<Rational>> reps;
    std::vector<Matrix<Rational>> B;
    std::vector<int> family;                  // two-sided cell of each lambda
    std::vector<std::vector<char>> lambda_lt; // lambda_lt[mu][lambda]: mu < lambda
    std::vector<CellElement> basis;
    bool c1 = false, c2 = false, c3 = false;
    std::string failure;
};

// C^lambda_st = sum_w (B_lambda c(w))_st C_w, checked against (C1)-(C3) for every T_s.
inline CellDatum cell_basis(const std::vector<Irrep<Rational>>& reps, KL& kl) {
    const Group& grp = kl.group();
    const int W = grp.size();
    CellDatum cd;
    cd.reps = reps;
    auto two = kl.cells(CellKind::TwoSided);
    for (auto& L : reps) {
        if (L.leading.empty()) throw std::invalid_argument("representation without leading coefficients");
        cd.family.push_back(two.block_of[size_t(L.leading.begin()->first)]);
        cd.B.push_back(leading_gram(L));
    }
    const size_t nl = reps.size();
    cd.lambda_lt.assign(nl, std::vector<char>(nl, 0));
    for (size_t m = 0; m < nl; ++m)
        for (size_t l = 0; l < nl; ++l)
            cd.lambda_lt[m][l] = cd.family[m] != cd.family[l] && two.below[size_t(cd.family[l])][size_t(cd.family[m])];

    std::vector<std::vector<std::vector<int>>> index(nl);
    for (size_t l = 0; l < nl; ++l) {
        int d = reps[l].rep.dim;
        index[l].assign(size_t(d), std::vector<int>(size_t(d), -1));
        for (int s = 0; s < d; ++s)
            for (int t = 0; t < d; ++t) {
                CellElement e{int(l), s, t, {}};
                for (auto& [w, c] : reps[l].leading) {
                    Rational x = (cd.B[l] * c)(s, t);
                    if (!x.is_zero()) e.coeffs[w] = x;
                }
                index[l][size_t(s)][size_t(t)] = int(cd.basis.size());
                cd.basis.push_back(std::move(e));
            }
    }
    if (int(cd.basis.size()) != W) {
        cd.failure = "basis has " + std::to_string(cd.basis.size()) + " elements, |W| = " + std::to_string(W);
        return cd;
    }
    Matrix<Rational> M(W, W);
    for (int k = 0; k < W; ++k)
        for (auto& [w, c] : cd.basis[size_t(k)].coeffs) M(w, k) = c;
    auto Minv = inverse(M);
    cd.c1 = bool(Minv);
    if (!cd.c1) {
        cd.failure = "(C1) cell basis is linearly dependent";
        return cd;
    }

    cd.c2 = true;
    for (size_t l = 0; l < nl && cd.c2; ++l)
        for (int w = 0; w < W && cd.c2; ++w) {
            auto c = leading_at(reps[l], w), ci = leading_at(reps[l], grp.inverse(w));
            int d = reps[l].rep.dim;
            Matrix<Rational> zero(d, d);
            Matrix<Rational> X = cd.B[l] * (c ? *c : zero), Y = cd.B[l] * (ci ? *ci : zero);
            if (!(X == Y.transpose())) {
                cd.c2 = false;
                cd.failure = "(C2) fails for lambda " + std::to_string(l) + " at w = " + grp.word_string(w);
            }
        }

    cd.c3 = true;
    for (size_t l = 0; l < nl && cd.c3; ++l) {
        int d = reps[l].rep.dim;
        for (int g = 0; g < grp.rank() && cd.c3; ++g)
            for (int s = 0; s < d && cd.c3; ++s) {
                std::vector<Poly> r0;
                for (int t = 0; t < d && cd.c3; ++t) {
                    HeckeElement h;
                    for (auto& [w, c] : cd.basis[size_t(index[l][size_t(s)][size_t(t)])].coeffs) add_to(h, w, Poly(c));
                    HeckeElement x = kl.left_mul_Cs(g, h) + scaled(h, Poly::vpow(grp.L(g)));
                    auto y = std::vector<Poly>(size_t(W));
                    for (auto& [w, a] : x)
                        for (int k = 0; k < W; ++k)
                            if (!(*Minv)(k, w).is_zero()) y[size_t(k)] += a * Poly((*Minv)(k, w));
                    std::vector<Poly> col;
                    for (int k = 0; k < W && cd.c3; ++k) {
                        const CellElement& e = cd.basis[size_t(k)];
                        size_t m = size_t(e.lambda);
                        if (m == l) {
                            if (e.t != t && !y[size_t(k)].is_zero()) cd.c3 = false;
                        } else if (!cd.lambda_lt[m][l] && !y[size_t(k)].is_zero()) {
                            cd.c3 = false;
                        }
                    }
                    for (int u = 0; u < d; ++u) col.push_back(y[size_t(index[l][size_t(u)][size_t(t)])]);
                    if (t == 0) r0 = col;
                    else if (col != r0) cd.c3 = false;
                    if (!cd.c3)
                        cd.failure = "(C3) fails for lambda " + std::to_string(l) + ", s = " + std::to_string(g) +
                                     ", (" + std::to_string(s) + "," + std::to_string(t) + ")";
                }
            }
    }
    return cd;
}

}  // namespace hecke
