#pragma once

#include "hecke/kl.hpp"
#include "hecke/matrix.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hecke {

// Vertices carry label sets I(x); edges[{s, x, y}] = m^s_{xy}.
template <class F>
struct WGraph {
    std::string group;
    std::vector<GenSet> labels;
    std::map<std::array<int, 3>, Laurent<F>> edges;
    GenSet parabolic = ~GenSet(0);  // generators of the parent type kept, renumbered

    int size() const { return int(labels.size()); }

    void set_edge(int s, int x, int y, const Laurent<F>& w) {
        if (w.is_zero()) edges.erase({s, x, y});
        else edges[{s, x, y}] = w;
    }
    Laurent<F> weight(int s, int x, int y) const {
        auto it = edges.find({s, x, y});
        return it == edges.end() ? Laurent<F>() : it->second;
    }
    friend bool operator==(const WGraph&, const WGraph&) = default;
};

template <class F>
struct Representation {
    int dim = 0;
    std::vector<LMatrix<F>> T;  // rho(T_s) per generator
};

inline CoxeterDatum parabolic_datum(const CoxeterDatum& d, GenSet J) {
    auto keep = members(J & d.all_generators());
    CoxeterDatum p;
    p.type = d.type + "|" + genset_string(J);
    p.family = d.family;
    p.rank = int(keep.size());
    p.needs_sqrt5 = d.needs_sqrt5;
    p.m.assign(keep.size(), std::vector<int>(keep.size(), 2));
    for (size_t i = 0; i < keep.size(); ++i) {
        p.L.push_back(d.L[size_t(keep[i])]);
        for (size_t j = 0; j < keep.size(); ++j) p.m[i][j] = d.m[size_t(keep[i])][size_t(keep[j])];
    }
    return p;
}

template <class F>
Group group_of(const WGraph<F>& G) {
    CoxeterDatum d = parse_type(G.group);
    if ((G.parabolic & d.all_generators()) == d.all_generators()) return Group(d);
    return Group(parabolic_datum(d, G.parabolic));
}

template <class F>
Laurent<F> vpow_f(int k) { return Laurent<F>::vpow(k); }

template <class F>
Laurent<F> zeta_f(const Group& grp, int s) { return vpow_f<F>(grp.L(s)) - vpow_f<F>(-grp.L(s)); }

template <class F>
void check_support(const WGraph<F>& G, const Group& grp) {
    GenSet all = grp.all_generators();
    for (int x = 0; x < G.size(); ++x)
        if ((G.labels[size_t(x)] & ~all) != 0)
            throw std::invalid_argument("label of vertex " + std::to_string(x) + " is not a subset of S");
    for (auto& [k, w] : G.edges) {
        auto [s, x, y] = k;
        if (s < 0 || s >= grp.rank() || x < 0 || y < 0 || x >= G.size() || y >= G.size())
            throw std::invalid_argument("edge index out of range");
        if (!contains(G.labels[size_t(x)], s) || contains(G.labels[size_t(y)], s))
            throw std::invalid_argument("support condition violated at s=" + std::to_string(s) + ", x=" +
                                        std::to_string(x) + ", y=" + std::to_string(y));
    }
}

template <class F>
Representation<F> wgraph_matrices(const WGraph<F>& G, const Group& grp) {
    check_support(G, grp);
    Representation<F> R;
    R.dim = G.size();
    for (int s = 0; s < grp.rank(); ++s) {
        LMatrix<F> M(R.dim, R.dim);
        for (int x = 0; x < R.dim; ++x)
            M(x, x) = contains(G.labels[size_t(x)], s) ? -vpow_f<F>(-grp.L(s)) : vpow_f<F>(grp.L(s));
        R.T.push_back(std::move(M));
    }
    for (auto& [k, w] : G.edges) R.T[size_t(k[0])](k[1], k[2]) = w;
    return R;
}

// rho(T_w) for every w, built along the canonical tree.
template <class F>
std::vector<LMatrix<F>> all_T(const Representation<F>& R, const Group& grp) {
    std::vector<LMatrix<F>> out(static_cast<size_t>(grp.size()));
    out[0] = LMatrix<F>::identity(R.dim);
    for (int w = 1; w < grp.size(); ++w) {
        int s = grp.parent_gen(w);
        out[size_t(w)] = R.T[size_t(s)] * out[size_t(grp.lmul(s, w))];
    }
    return out;
}

template <class F>
LMatrix<F> rep_T(const Representation<F>& R, const Group& grp, int w) {
    LMatrix<F> M = LMatrix<F>::identity(R.dim);
    for (int s : grp.word(w)) M = M * R.T[size_t(s)];
    return M;
}

template <class F>
Representation<F> conjugate(const Representation<F>& R, const LMatrix<F>& Qinv, const LMatrix<F>& Q) {
    Representation<F> out{R.dim, {}};
    for (auto& T : R.T) out.T.push_back(Qinv * T * Q);
    return out;
}

// Coefficients of tau_r, lowest degree first; tau_{-1} = 0.
inline std::vector<long> tau_poly(int r) {
    if (r < -1) throw std::invalid_argument("tau_r needs r >= -1");
    std::vector<long> prev, cur{1};
    if (r == -1) return prev;
    for (int k = 1; k <= r; ++k) {
        std::vector<long> next(cur.size() + 1, 0);
        for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
        for (size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

template <class F>
LMatrix<F> eval_poly(const std::vector<long>& c, const LMatrix<F>& X) {
    LMatrix<F> acc(X.rows(), X.cols());
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * X;
        if (c[i] != 0) acc += LMatrix<F>::identity(X.rows()).scaled(Laurent<F>(F(Rational(c[i]))));
    }
    return acc;
}

// Alternating product x y x ... with k factors.
template <class F>
LMatrix<F> alternating(const LMatrix<F>& x, const LMatrix<F>& y, int k) {
    LMatrix<F> P = LMatrix<F>::identity(x.rows());
    for (int i = 0; i < k; ++i) P = P * (i % 2 ? y : x);
    return P;
}

// Delta_m(x, y) = xyx... - yxy... directly.
template <class F>
LMatrix<F> braid_commutator_direct(const LMatrix<F>& x, const LMatrix<F>& y, int m) {
    return alternating(x, y, m) - alternating(y, x, m);
}

// Delta_m(x, y) = (-1)^{m-1} tau_{m-1}(x + y - zeta) (x - y).
template <class F>
LMatrix<F> braid_commutator_tau(const LMatrix<F>& x, const LMatrix<F>& y, const Laurent<F>& zeta, int m) {
    LMatrix<F> E = x + y - LMatrix<F>::identity(x.rows()).scaled(zeta);
    LMatrix<F> r = eval_poly(tau_poly(m - 1), E) * (x - y);
    return (m - 1) % 2 ? -r : r;
}

struct ValidationReport {
    bool support = true;
    bool quadratic = true;
    bool braid = true;
    bool routes_agree = true;
    std::string failure;
    bool ok() const { return support && quadratic && braid && routes_agree; }
};

template <class F>
ValidationReport validate(const Representation<F>& R, const Group& grp, int direct_limit = 24) {
    ValidationReport rep;
    auto fail = [&](bool& flag, const std::string& msg) {
        if (rep.failure.empty()) rep.failure = msg;
        flag = false;
    };
    const auto I = LMatrix<F>::identity(R.dim);
    for (int s = 0; s < grp.rank(); ++s) {
        const auto& X = R.T[size_t(s)];
        if (!(X * X == I + X.scaled(zeta_f<F>(grp, s)))) fail(rep.quadratic, "quadratic relation fails for s=" + std::to_string(s));
    }
    for (int s = 0; s < grp.rank(); ++s)
        for (int t = s + 1; t < grp.rank(); ++t) {
            int m = grp.coxeter_m(s, t);
            const auto &X = R.T[size_t(s)], &Y = R.T[size_t(t)];
            std::string where = "braid relation fails for (s,t)=(" + std::to_string(s) + "," + std::to_string(t) + ")";
            if (grp.L(s) == grp.L(t)) {
                LMatrix<F> tau = braid_commutator_tau(X, Y, zeta_f<F>(grp, s), m);
                if (!tau.is_zero()) fail(rep.braid, where);
                if (R.dim <= direct_limit && !(braid_commutator_direct(X, Y, m) == tau))
                    fail(rep.routes_agree, "tau route differs from direct products at (s,t)=(" + std::to_string(s) +
                                               "," + std::to_string(t) + ")");
            } else {
                if (m % 2) throw std::invalid_argument("mixed weights on an odd braid edge");
                if (!braid_commutator_direct(X, Y, m).is_zero()) fail(rep.braid, where);
            }
        }
    return rep;
}

template <class F>
ValidationReport validate_wgraph(const WGraph<F>& G, const Group& grp) {
    try {
        return validate(wgraph_matrices(G, grp), grp);
    } catch (const std::invalid_argument& e) {
        ValidationReport r;
        r.support = false;
        r.failure = e.what();
        return r;
    }
}

struct GeckReport {
    bool ok = true;
    std::vector<std::string> problems;
};

// Palindromic weights with exponents strictly inside (-L(s), L(s)).
template <class F>
GeckReport is_geck(const WGraph<F>& G, const Group& grp) {
    GeckReport r;
    for (auto& [k, w] : G.edges) {
        std::string at = "s=" + std::to_string(k[0]) + " x=" + std::to_string(k[1]) + " y=" + std::to_string(k[2]);
        if (!w.is_palindromic()) r.problems.push_back("weight not palindromic at " + at);
        int L = grp.L(k[0]);
        if (w.valuation() <= -L || w.degree() >= L) r.problems.push_back("degree bound violated at " + at);
    }
    r.ok = r.problems.empty();
    return r;
}

template <class F>
WGraph<F> dual_wgraph(const WGraph<F>& G, const Group& grp) {
    WGraph<F> D = G;
    D.edges.clear();
    for (auto& l : D.labels) l = grp.all_generators() & ~l;
    for (auto& [k, w] : G.edges) D.edges[{k[0], k[2], k[1]}] = -w;
    return D;
}

// Labels intersected with J and generators renumbered in increasing order.
template <class F>
WGraph<F> parabolic_restrict(const WGraph<F>& G, const Group& grp, GenSet J) {
    J &= grp.all_generators();
    if (J == grp.all_generators()) return G;
    auto keep = members(J);
    std::vector<int> pos(static_cast<size_t>(grp.rank()), -1);
    for (size_t i = 0; i < keep.size(); ++i) pos[size_t(keep[i])] = int(i);
    WGraph<F> R;
    R.group = G.group;
    GenSet parent = 0;
    {
        // compose with an existing restriction
        CoxeterDatum d = parse_type(G.group);
        auto outer = members(G.parabolic & d.all_generators());
        for (int s : keep) parent |= GenSet(1) << outer[size_t(s)];
    }
    R.parabolic = parent;
    for (GenSet l : G.labels) {
        GenSet n = 0;
        for (int s : members(l & J)) n |= GenSet(1) << pos[size_t(s)];
        R.labels.push_back(n);
    }
    for (auto& [k, w] : G.edges)
        if (contains(J, k[0])) R.edges[{pos[size_t(k[0])], k[1], k[2]}] = w;
    return R;
}

template <class F>
WGraph<F> induced_subgraph(const WGraph<F>& G, const std::vector<int>& verts) {
    std::vector<int> pos(static_cast<size_t>(G.size()), -1);
    for (size_t i = 0; i < verts.size(); ++i) pos[size_t(verts[i])] = int(i);
    WGraph<F> H;
    H.group = G.group;
    H.parabolic = G.parabolic;
    for (int x : verts) H.labels.push_back(G.labels[size_t(x)]);
    for (auto& [k, w] : G.edges)
        if (pos[size_t(k[1])] >= 0 && pos[size_t(k[2])] >= 0) H.edges[{k[0], pos[size_t(k[1])], pos[size_t(k[2])]}] = w;
    return H;
}

// Strongly connected components of the edge-support digraph y -> x.
template <class F>
Condensation wgraph_cells(const WGraph<F>& G) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(G.size()));
    for (auto& [k, w] : G.edges) adj[size_t(k[2])].push_back(k[1]);
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    Condensation c = strongly_connected(adj);
    for (auto& comp : c.components) std::sort(comp.begin(), comp.end());
    return c;
}

template <class F>
WGraph<F> kl_wgraph(KL& kl) {
    const Group& g = kl.group();
    WGraph<F> G;
    G.group = g.datum().type;
    for (int w = 0; w < g.size(); ++w) G.labels.push_back(g.left_descents(w));
    for (int y = 0; y < g.size(); ++y)
        for (int s = 0; s < g.rank(); ++s) {
            if (g.left_descent(s, y)) continue;
            G.edges[{s, g.lmul(s, y), y}] = Laurent<F>(F(1));
            for (auto& [z, m] : kl.mu_list(y, s)) {
                Laurent<F> w;
                for (auto& [k, c] : m.terms()) w.add_term(k, F(c));
                if ((g.length(z) + g.length(y) + 1) % 2) w = -w;
                G.edges[{s, z, y}] = w;
            }
        }
    return G;
}

template <class F>
struct OmegaMatrices {
    std::vector<LMatrix<F>> e, x;
    std::vector<GenSet> labels;

    LMatrix<F> E(GenSet I) const {
        int d = int(labels.size());
        LMatrix<F> M(d, d);
        for (int i = 0; i < d; ++i)
            if (labels[size_t(i)] == I) M(i, i) = Laurent<F>(F(1));
        return M;
    }
    LMatrix<F> X(GenSet I, GenSet J, int s) const { return E(I) * x[size_t(s)] * E(J); }
};

template <class F>
OmegaMatrices<F> omega_matrices(const WGraph<F>& G, const Group& grp) {
    check_support(G, grp);
    OmegaMatrices<F> O;
    O.labels = G.labels;
    int d = G.size();
    for (int s = 0; s < grp.rank(); ++s) {
        LMatrix<F> e(d, d), x(d, d);
        for (int i = 0; i < d; ++i)
            if (contains(G.labels[size_t(i)], s)) e(i, i) = Laurent<F>(F(1));
        O.e.push_back(std::move(e));
        O.x.push_back(std::move(x));
    }
    for (auto& [k, w] : G.edges) O.x[size_t(k[0])](k[1], k[2]) = w;
    return O;
}

// -v_s^-1 e_s + v_s (1 - e_s) + x_s
template <class F>
LMatrix<F> omega_to_T(const OmegaMatrices<F>& O, const Group& grp, int s) {
    int d = int(O.labels.size());
    auto I = LMatrix<F>::identity(d);
    const auto& e = O.e[size_t(s)];
    return e.scaled(-vpow_f<F>(-grp.L(s))) + (I - e).scaled(vpow_f<F>(grp.L(s))) + O.x[size_t(s)];
}

struct RelationReport {
    bool ok = true;
    int checked = 0;
    std::vector<std::string> failures;
};

// E_I x_s x_t x_s ... E_J with k factors
template <class F>
LMatrix<F> path_sum(const OmegaMatrices<F>& O, GenSet I, GenSet J, int s, int t, int k) {
    return O.E(I) * alternating(O.x[size_t(s)], O.x[size_t(t)], k) * O.E(J);
}

template <class F>
RelationReport omega_gy_relations_check(const WGraph<F>& G, const Group& grp) {
    if (!grp.datum().equal_parameters()) throw std::invalid_argument("Omega^Gy relations need equal parameters");
    for (auto& [k, w] : G.edges)
        if (w.valuation() != 0 || w.degree() != 0)
            throw std::invalid_argument("Omega^Gy relations need constant edge weights");
    OmegaMatrices<F> O = omega_matrices(G, grp);
    RelationReport r;
    const GenSet all = grp.all_generators();
    auto record = [&](bool good, const std::string& what) {
        ++r.checked;
        if (!good) {
            r.ok = false;
            r.failures.push_back(what);
        }
    };
    auto name = [&](char fam, int s, int t, GenSet I, GenSet J) {
        return std::string("(") + fam + ") s=" + std::to_string(s) + " t=" + std::to_string(t) + " I=" +
               genset_string(I) + " J=" + genset_string(J);
    };
    for (int s = 0; s < grp.rank(); ++s)
        for (int t = 0; t < grp.rank(); ++t) {
            if (s == t) continue;
            int m = grp.coxeter_m(s, t);
            auto tau = tau_poly(m - 1);
            for (GenSet I = 0; I <= all; ++I)
                for (GenSet J = 0; J <= all; ++J) {
                    bool alpha = contains(I, s) && !contains(I, t) &&
                                 (m % 2 ? contains(J, s) && !contains(J, t) : !contains(J, s) && contains(J, t));
                    if (alpha) {
                        LMatrix<F> acc(G.size(), G.size());
                        for (size_t k = 0; k < tau.size(); ++k)
                            if (tau[k] != 0)
                                acc += path_sum(O, I, J, s, t, int(k)).scaled(Laurent<F>(F(Rational(tau[k]))));
                        record(acc.is_zero(), name('a', s, t, I, J));
                    }
                    if (s < t && contains(I, s) && contains(I, t) && !contains(J, s) && !contains(J, t)) {
                        record(O.X(I, J, s) == O.X(I, J, t), name('b', s, t, I, J));
                        for (int k = 2; k <= m; ++k)
                            record(path_sum(O, I, J, s, t, k) == path_sum(O, I, J, t, s, k), name('c', s, t, I, J));
                    }
                }
        }
    return r;
}

struct CompatEdge {
    GenSet to, from;  // I <- J
    bool transversal;
    friend bool operator==(const CompatEdge&, const CompatEdge&) = default;
};

inline std::vector<CompatEdge> compatibility_graph(const CoxeterDatum& d) {
    std::vector<CompatEdge> out;
    GenSet all = d.all_generators();
    for (GenSet I = 0; I <= all; ++I)
        for (GenSet J = 0; J <= all; ++J) {
            GenSet a = I & ~J, b = J & ~I;
            if (a == 0) continue;
            bool ok = true;
            for (int s : members(a))
                for (int t : members(b))
                    if (d.m[size_t(s)][size_t(t)] <= 2) ok = false;
            if (ok) out.push_back({I, J, b != 0});
        }
    return out;
}

// Basis (as columns) of the intersection of the -v_s^-1 eigenspaces, s in J.
template <class F>
std::vector<std::vector<Laurent<F>>> eigen_intersection(const Representation<F>& R, const Group& grp, GenSet J) {
    int d = R.dim;
    int k = popcount(J);
    LMatrix<F> A(std::max(k, 1) * d, d);
    int row = 0;
    for (int s : members(J)) {
        LMatrix<F> M = R.T[size_t(s)] + LMatrix<F>::identity(d).scaled(vpow_f<F>(-grp.L(s)));
        for (int i = 0; i < d; ++i, ++row)
            for (int j = 0; j < d; ++j) A(row, j) = M(i, j);
    }
    return kernel_basis(A);
}

// dim of V_I / sum_{s not in I} V_{I+s}, V_J the joint -v^-1 eigenspace.
template <class F>
std::map<GenSet, int> eigenspace_label_multiplicities(const Representation<F>& R, const Group& grp) {
    std::map<GenSet, int> out;
    GenSet all = grp.all_generators();
    std::vector<int> dim(static_cast<size_t>(all) + 1);
    std::vector<std::vector<std::vector<Laurent<F>>>> basis(static_cast<size_t>(all) + 1);
    for (GenSet J = 0; J <= all; ++J) basis[J] = eigen_intersection(R, grp, J);
    for (GenSet I = 0; I <= all; ++I) {
        std::vector<std::vector<Laurent<F>>> cols;
        for (int s = 0; s < grp.rank(); ++s)
            if (!contains(I, s))
                for (auto& c : basis[I | (GenSet(1) << s)]) cols.push_back(c);
        int sub = 0;
        if (!cols.empty()) {
            LMatrix<F> M(R.dim, int(cols.size()));
            for (size_t j = 0; j < cols.size(); ++j)
                for (int i = 0; i < R.dim; ++i) M(i, int(j)) = cols[j][size_t(i)];
            sub = rank(M);
        }
        int n = int(basis[I].size()) - sub;
        if (n != 0) out[I] = n;
    }
    return out;
}

template <class F>
std::map<GenSet, int> label_counts(const WGraph<F>& G) {
    std::map<GenSet, int> out;
    for (GenSet l : G.labels) ++out[l];
    return out;
}

}  // namespace hecke
