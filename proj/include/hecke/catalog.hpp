#pragma once

#include "hecke/wgraph.hpp"

#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace hecke {

struct IntEdge {
    int s, x, y;
    int w;
};

template <class F>
WGraph<F> make_graph(const std::string& type, std::vector<GenSet> labels, const std::vector<IntEdge>& edges) {
    WGraph<F> G;
    G.group = parse_type(type).type;
    G.labels = std::move(labels);
    for (auto& e : edges) G.set_edge(e.s, e.x, e.y, Laurent<F>(F(e.w)));
    return G;
}

inline GenSet gs(std::initializer_list<int> l) {
    GenSet I = 0;
    for (int s : l) I |= GenSet(1) << s;
    return I;
}

template <class F>
WGraph<F> trivial_graph(const std::string& type) { return make_graph<F>(type, {0}, {}); }

template <class F>
WGraph<F> sign_graph(const std::string& type) {
    return make_graph<F>(type, {parse_type(type).all_generators()}, {});
}

// 4 cos^2(pi/m) split as m^s_{s,t} * m^t_{t,s} with s < t.
template <class F>
std::pair<F, F> bond_weights(int m) {
    switch (m) {
        case 3: return {F(-1), F(-1)};
        case 4: return {F(-2), F(-1)};
        case 6: return {F(-3), F(-1)};
        case 5:
            if constexpr (std::is_same_v<F, QSqrt5>) {
                QSqrt5 phi(Rational(-1, 2), Rational(-1, 2));
                return {phi, phi};
            } else {
                throw std::invalid_argument("m = 5 needs the field Q(sqrt5)");
            }
    }
    throw std::invalid_argument("unsupported bond");
}

// One vertex {s} per generator; equal parameters only.
template <class F>
WGraph<F> reflection_graph(const std::string& type) {
    CoxeterDatum d = parse_type(type);
    WGraph<F> G;
    G.group = d.type;
    for (int s = 0; s < d.rank; ++s) G.labels.push_back(GenSet(1) << s);
    for (int s = 0; s < d.rank; ++s)
        for (int t = s + 1; t < d.rank; ++t) {
            int m = d.m[size_t(s)][size_t(t)];
            if (m <= 2) continue;
            auto [a, b] = bond_weights<F>(m);
            G.set_edge(s, s, t, Laurent<F>(a));
            G.set_edge(t, t, s, Laurent<F>(b));
        }
    return G;
}

// The ten irreducible W-graphs of B3 (equal parameters), chi_1 .. chi_10.
template <class F>
std::vector<WGraph<F>> b3_table() {
    const std::string B3 = "B3";
    std::vector<WGraph<F>> t;
    t.push_back(make_graph<F>(B3, {0}, {}));
    t.push_back(make_graph<F>(B3, {gs({0, 1, 2})}, {}));
    t.push_back(make_graph<F>(B3, {gs({0})}, {}));
    t.push_back(make_graph<F>(B3, {gs({1, 2})}, {}));
    t.push_back(make_graph<F>(B3, {gs({1}), gs({2})}, {{1, 0, 1, 1}, {2, 1, 0, 1}}));
    t.push_back(make_graph<F>(B3, {gs({0, 2}), gs({0, 1})}, {{2, 0, 1, -1}, {1, 1, 0, -1}}));
    auto chi7 = make_graph<F>(B3, {gs({0}), gs({1}), gs({2})}, {{1, 1, 0, 2}, {0, 0, 1, 1}, {1, 1, 2, 1}, {2, 2, 1, 1}});
    t.push_back(chi7);
    t.push_back(dual_wgraph(chi7, Group(B3)));
    t.push_back(make_graph<F>(B3, {gs({0}), gs({1}), gs({0, 2})},
                              {{1, 1, 0, -1}, {0, 0, 1, -1}, {1, 1, 2, 1}, {0, 2, 1, 1}, {2, 2, 1, 1}}));
    t.push_back(make_graph<F>(B3, {gs({1, 2}), gs({0, 2}), gs({1})},
                              {{0, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 2, -1}, {2, 1, 2, -1}, {1, 2, 1, -1}}));
    return t;
}

// rho' = D^-1 rho D for an invertible diagonal D over F: m'^s_{xy} = d_x^-1 m^s_{xy} d_y.
template <class F>
WGraph<F> diagonal_conjugate(const WGraph<F>& G, const std::vector<F>& d) {
    WGraph<F> H = G;
    for (auto& [k, w] : H.edges) w = w * (d[size_t(k[2])] / d[size_t(k[1])]);
    return H;
}

// Direct sum of W-graphs over the same group, vertices of A first.
template <class F>
WGraph<F> direct_sum(const WGraph<F>& A, const WGraph<F>& B) {
    WGraph<F> G = A;
    int n = A.size();
    for (GenSet l : B.labels) G.labels.push_back(l);
    for (auto& [k, w] : B.edges) G.edges[{k[0], k[1] + n, k[2] + n}] = w;
    return G;
}

// Conjugate the weight matrices by M (x_s -> M^-1 x_s M). M must commute with
// every omega(e_s), i.e. respect labels, for the result to be a W-graph.
template <class F>
WGraph<F> matrix_conjugate(const WGraph<F>& G, const Matrix<F>& M, const Matrix<F>& Minv, int rank) {
    WGraph<F> H = G;
    H.edges.clear();
    int d = G.size();
    for (int s = 0; s < rank; ++s) {
        LMatrix<F> X(d, d);
        for (auto& [k, w] : G.edges)
            if (k[0] == s) X(k[1], k[2]) = w;
        LMatrix<F> Y = lift(Minv) * X * lift(M);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) H.set_edge(s, i, j, Y(i, j));
    }
    return H;
}

// Random invertible F-matrix that is block diagonal with respect to the labels,
// small integer entries drawn from a seeded generator.
template <class F>
std::pair<Matrix<F>, Matrix<F>> random_label_respecting(const std::vector<GenSet>& labels, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-3, 3);
    int d = int(labels.size());
    for (;;) {
        Matrix<F> M(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (labels[size_t(i)] == labels[size_t(j)]) M(i, j) = F(dist(rng));
        if (auto inv = inverse(M)) return {M, *inv};
    }
}

// chi9 of the B3 table conjugated by a fixed label-respecting F-matrix.
template <class F>
WGraph<F> b3_chi9_conjugate() {
    WGraph<F> g = b3_table<F>()[8];
    auto [M, Mi] = random_label_respecting<F>(g.labels, 9);
    return matrix_conjugate(g, M, Mi, 3);
}

template <class F>
std::vector<WGraph<F>> kl_left_cell_graphs(KL& kl) {
    WGraph<F> G = kl_wgraph<F>(kl);
    std::vector<WGraph<F>> out;
    for (auto& comp : wgraph_cells(G).components) out.push_back(induced_subgraph(G, comp));
    return out;
}

}  // namespace hecke
