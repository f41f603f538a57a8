#include "hecke/asymptotic.hpp"
#include "hecke/blocks.hpp"
#include "hecke/catalog.hpp"
#include "oracles.hpp"

#include <functional>
#include <iostream>
#include <random>
#include <set>

using namespace hecke;
using Q = Rational;

namespace {

struct Check {
    bool ok = true;
    std::string note;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            note = what;
        }
    }
};

Poly classical(KL& kl, int y, int w) {
    const Group& G = kl.group();
    return kl.pstar(y, w).shift(G.weight(w) - G.weight(y));
}

Matrix<Q> lead_or_zero(const Irrep<Q>& L, int w) {
    auto c = leading_at(L, w);
    return c ? *c : Matrix<Q>(L.rep.dim, L.rep.dim);
}

std::vector<Irrep<Q>> cell_irreps(KL& kl) {
    std::vector<Irrep<Q>> out;
    for (auto& g : kl_cell_irreps<Q>(kl)) out.push_back(make_irrep(wgraph_matrices(g, kl.group()), kl.group()));
    return out;
}

struct GraphPair {
    std::string name;
    WGraph<Q> g1, g2;
};

std::vector<GraphPair> conjugate_pairs() {
    std::vector<GraphPair> out;
    auto refl2 = direct_sum(reflection_graph<Q>("A2"), reflection_graph<Q>("A2"));
    out.push_back({"identity", refl2, refl2});
    auto [M, Mi] = random_label_respecting<Q>(refl2.labels, 17);
    out.push_back({"random label-respecting conjugate", refl2, matrix_conjugate(refl2, M, Mi, 2)});
    out.push_back({"B3 chi9", b3_table<Q>()[8], b3_chi9_conjugate<Q>()});
    return out;
}

Check dihedral() {
    Check c;
    for (int m = 3; m <= 6; ++m) {
        Group G("I2(" + std::to_string(m) + ")");
        KL kl(G);
        for (int w = 0; w < G.size(); ++w)
            for (int y : G.bruhat_interval(0, w)) c.require(classical(kl, y, w) == Poly(1), "I2(" + std::to_string(m) + ")");
    }
    return c;
}

Check longest_column() {
    Check c;
    for (const char* t : {"A3", "B3", "B3:2,1,1"}) {
        Group G(t);
        KL kl(G);
        for (int x = 0; x < G.size(); ++x) c.require(classical(kl, x, G.longest()) == Poly(1), t);
    }
    return c;
}

Check c_basis_oracle() {
    Check c;
    for (const char* t : {"A2", "B3"}) {
        Group G(t);
        KL kl(G);
        HeckeAlgebra H(G);
        for (int w = 0; w < G.size(); ++w) {
            const auto& cw = kl.c_basis(w);
            c.require(cw == fixed_point_oracle(G, H, w), std::string(t) + " oracle differs at " + G.word_string(w));
            c.require(H.hecke_bar(cw) == cw, std::string(t) + " not bar-invariant");
            for (auto& [y, p] : cw)
                if (y != w) c.require(p.valuation() > 0, std::string(t) + " off-diagonal valuation");
        }
    }
    return c;
}

Check parity() {
    Check c;
    Group G("B3:2,1,1");
    KL kl(G);
    for (int y = 0; y < G.size(); ++y)
        for (int w = 0; w < G.size(); ++w) {
            Poly p = classical(kl, y, w);
            for (auto& [k, x] : p.terms()) c.require(k % 2 == 0, "odd exponent");
        }
    return c;
}

Check b3_table_validation() {
    Check c;
    Group G("B3");
    auto table = b3_table<Q>();
    c.require(table.size() == 10, "table size");
    for (size_t i = 0; i < table.size(); ++i) {
        auto r = validate_wgraph(table[i], G);
        c.require(r.ok(), "chi" + std::to_string(i + 1) + ": " + r.failure);
    }
    return c;
}

Check label_multisets() {
    Check c;
    std::vector<std::pair<std::string, WGraph<Q>>> graphs;
    for (const char* t : {"A1", "A2", "A3", "B3", "B3:2,1,1", "I2(4)", "I2(6)"}) {
        graphs.emplace_back(t, trivial_graph<Q>(t));
        graphs.emplace_back(t, sign_graph<Q>(t));
        Group G(t);
        KL kl(G);
        graphs.emplace_back(t, kl_wgraph<Q>(kl));
    }
    Group A3("A3");
    graphs.emplace_back("A2", reflection_graph<Q>("A2"));
    graphs.emplace_back("A3", reflection_graph<Q>("A3"));
    graphs.emplace_back("A3", dual_wgraph(reflection_graph<Q>("A3"), A3));
    for (auto& g : b3_table<Q>()) graphs.emplace_back("B3", g);
    graphs.emplace_back("B3", b3_chi9_conjugate<Q>());
    for (auto& [t, g] : graphs) {
        Group G(t);
        auto R = wgraph_matrices(g, G);
        c.require(label_multiset_from_character(R, G) == eigenspace_label_multiplicities(R, G), t + " routes differ");
    }
    for (const char* t : {"I2(5)", "H3"}) {
        Group G(t);
        for (auto& g : {trivial_graph<QSqrt5>(t), sign_graph<QSqrt5>(t), reflection_graph<QSqrt5>(t)}) {
            auto R = wgraph_matrices(g, G);
            c.require(label_multiset_from_character(R, G) == eigenspace_label_multiplicities(R, G), std::string(t) + " routes differ");
        }
    }
    Group B3("B3");
    auto chi7 = label_multiset_from_character(wgraph_matrices(b3_table<Q>()[6], B3), B3);
    c.require(chi7 == std::map<GenSet, int>{{gs({0}), 1}, {gs({1}), 1}, {gs({2}), 1}}, "chi7 labels");
    return c;
}

Check diagonal_congruence() {
    Check c;
    Group A2("A2"), B3("B3");
    KL kl2(A2), kl3(B3);
    std::vector<WGraph<Q>> b3 = b3_table<Q>();
    b3.push_back(kl_wgraph<Q>(kl3));
    for (int w = 0; w < A2.size(); ++w) {
        auto r = tw_diagonal_congruence(kl_wgraph<Q>(kl2), A2, w);
        c.require(r.ok, "A2 " + A2.word_string(w) + ": " + r.failure);
    }
    for (auto& g : b3)
        for (int w = 0; w < B3.size(); ++w)
            if (B3.length(w) <= 3) {
                auto r = tw_diagonal_congruence(g, B3, w);
                c.require(r.ok, "B3 " + B3.word_string(w) + ": " + r.failure);
            }
    return c;
}

Check balancing() {
    Check c;
    std::mt19937 rng(7);
    for (const char* t : {"A2", "A3"}) {
        Group G(t);
        KL kl(G);
        for (auto& g : kl_left_cell_graphs<Q>(kl)) {
            auto R = wgraph_matrices(g, G);
            int a = a_value(R, G);
            c.require(is_balanced(R, G, a).ok, std::string(t) + " left cell not balanced");
            LMatrix<Q> S(R.dim, R.dim), Si(R.dim, R.dim);
            for (int i = 0; i < R.dim; ++i) {
                int e = int(rng() % 5) - 2;
                S(i, i) = Poly::vpow(e);
                Si(i, i) = Poly::vpow(-e);
            }
            auto b = balance(conjugate(R, Si, S), G);
            c.require(b.data.a_value == a && is_balanced(b.rep, G, a).ok, std::string(t) + " balance failed");
            for (size_t i = 1; i < b.data.degrees.size(); ++i)
                c.require(b.data.degrees[i] <= b.data.degrees[i - 1], std::string(t) + " degree increased");
        }
    }
    return c;
}

Check schur_relations() {
    Check c;
    for (const char* t : {"A2", "A3"}) {
        Group G(t);
        KL kl(G);
        auto reps = cell_irreps(kl);
        c.require(reps.size() == (std::string(t) == "A2" ? 3u : 5u), std::string(t) + " rep count");
        long dims = 0;
        for (auto& L : reps) dims += long(L.rep.dim) * L.rep.dim;
        c.require(dims == G.size(), std::string(t) + " sum of squares");
        for (size_t l = 0; l < reps.size(); ++l)
            for (size_t m = 0; m < reps.size(); ++m) {
                int dl = reps[l].rep.dim, dm = reps[m].rep.dim;
                for (int s = 0; s < dl; ++s)
                    for (int u = 0; u < dl; ++u)
                        for (int p = 0; p < dm; ++p)
                            for (int q = 0; q < dm; ++q) {
                                Q sum(0);
                                for (int w = 0; w < G.size(); ++w)
                                    sum += lead_or_zero(reps[l], w)(s, u) * lead_or_zero(reps[m], G.inverse(w))(p, q);
                                Q expect = (l == m && s == q && u == p) ? reps[l].f : Q(0);
                                c.require(sum == expect, std::string(t) + " orthogonality");
                            }
            }
    }
    return c;
}

Check j_algebra() {
    Check c;
    Group G("A2");
    KL kl(G);
    auto J = gamma_n_table(cell_irreps(kl), G);
    const int W = G.size();
    auto t = [](int x) { return std::map<int, Q>{{x, Q(1)}}; };
    for (int x = 0; x < W; ++x)
        for (int y = 0; y < W; ++y)
            for (int z = 0; z < W; ++z)
                c.require(j_multiply(j_multiply(t(x), t(y), J), t(z), J) == j_multiply(t(x), j_multiply(t(y), t(z), J), J),
                          "associativity");
    auto one = j_unit(J);
    for (int x = 0; x < W; ++x)
        c.require(j_multiply(one, t(x), J) == t(x) && j_multiply(t(x), one, J) == t(x), "unit");
    for (int x = 0; x < W; ++x)
        for (int y = 0; y < W; ++y) {
            Q sum(0);
            for (int z = 0; z < W; ++z) {
                c.require(J.gamma_at(x, y, z) == J.gamma_at(y, z, x), "cyclic symmetry");
                sum += J.gamma_at(G.inverse(x), y, z) * J.n[size_t(z)];
            }
            c.require(sum == (x == y ? Q(1) : Q(0)), "n-orthogonality");
        }
    return c;
}

Check cell_representation_a2() {
    Check c;
    Group G("A2");
    KL kl(G);
    auto regular = wgraph_matrices(kl_wgraph<Q>(kl), G);
    auto left = kl.cells(CellKind::Left);
    for (auto& g : kl_left_cell_graphs<Q>(kl)) {
        auto R = wgraph_matrices(g, G);
        auto L = make_irrep(R, G);
        auto psi = cell_representation(L, duflo_from_reps(L, G, kl), regular, left);
        c.require(validate(psi, G).ok(), "psi is not a representation");
        c.require(is_balanced(psi, G, L.a).ok, "psi not balanced");
        c.require(same_character(psi, R, G), "character differs");
        c.require(leading_coefficients(psi, G, L.a) == L.leading, "leading coefficients differ");
    }
    return c;
}

Check cell_basis_a2() {
    Check c;
    Group G("A2");
    KL kl(G);
    auto cd = cell_basis(cell_irreps(kl), kl);
    c.require(cd.basis.size() == 6, "basis size");
    c.require(cd.c1, "C1: " + cd.failure);
    c.require(cd.c2, "C2: " + cd.failure);
    c.require(cd.c3, "C3: " + cd.failure);
    return c;
}

Check block_diagonality() {
    Check c;
    for (auto& p : conjugate_pairs()) {
        Group G(p.g1.group);
        auto R1 = wgraph_matrices(p.g1, G), R2 = wgraph_matrices(p.g2, G);
        auto sp = intertwiner_space(R1, R2);
        c.require(!sp.empty(), p.name + ": no intertwiner");
        for (auto& A : sp) c.require(block_report(A, p.g2.labels, p.g1.labels).diagonal, p.name + ": intertwiner");
        for (auto& B : invariant_form_space(R1)) c.require(block_report(B, p.g1.labels, p.g1.labels).diagonal, p.name + ": form");
    }
    return c;
}

Check strictification() {
    Check c;
    Group G("A2");
    auto g = reflection_graph<Q>("A2");
    auto R = wgraph_matrices(g, G);
    auto s = strictify(R, gram_invariant_form(R, G).matrix, g.labels);
    Matrix<Q> r = residue(s.omega);
    for (int i = 0; i < R.dim; ++i)
        for (int j = 0; j < R.dim; ++j)
            if (i != j) c.require(r(i, j).is_zero(), "residue not diagonal");
    int a = a_value(s.rep, G);
    c.require(strict_balance_relation(leading_coefficients(s.rep, G, a), s.D, G, R.dim), "d_t c(w^-1)_ts != d_s c(w)_st");
    return c;
}

Check omega_gy() {
    Check c;
    Group A3("A3");
    KL kl(A3);
    auto rel = omega_gy_relations_check(kl_wgraph<Q>(kl), A3);
    c.require(rel.ok && rel.checked > 0, rel.failures.empty() ? "no relations checked" : rel.failures.front());
    std::set<std::set<GenSet>> got, want{{gs({0}), gs({1})},
                                         {gs({1}), gs({2})},
                                         {gs({1}), gs({0, 2})},
                                         {gs({0, 2}), gs({1, 2})},
                                         {gs({0, 2}), gs({0, 1})}};
    for (auto& e : compatibility_graph(A3.datum()))
        if (e.transversal) got.insert({e.to, e.from});
    c.require(got == want, "transversal pairs differ");
    return c;
}

Check omega_certificates() {
    Check c;
    for (auto& p : conjugate_pairs()) {
        Group G(p.g1.group);
        auto cert = omega_iso_certificate(p.g1, p.g2, G);
        c.require(cert.has_value(), p.name + ": no certificate");
        if (!cert) continue;
        c.require(cert->ok, p.name + ": " + cert->verdict);
        for (int s = 0; s < G.rank(); ++s)
            c.require(cert->e_residual[size_t(s)] == 0 && cert->x_residual[size_t(s)] == 0, p.name + ": nonzero residual");
    }
    return c;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"dihedral KL polynomials are 1 for I2(3..6)", dihedral},
        {"P_{x,w0} = 1 in A3, B3, B3:2,1,1", longest_column},
        {"C-basis equals the fixed-point oracle on A2 and B3", c_basis_oracle},
        {"parity of P in B3:2,1,1", parity},
        {"B3 table graphs validate, tau route agrees", b3_table_validation},
        {"label multisets: eigenspace route = character route", label_multisets},
        {"v^L(w) omega(T_w) diagonal congruence", diagonal_congruence},
        {"balancing of KL left cells and scaled conjugates", balancing},
        {"Schur relations for leading coefficients (A2, A3)", schur_relations},
        {"J-algebra axioms on A2", j_algebra},
        {"cell representations of A2 left cells", cell_representation_a2},
        {"A2 cell basis satisfies (C1)-(C3)", cell_basis_a2},
        {"intertwiners and invariant forms block diagonal mod m", block_diagonality},
        {"strictify on the A2 reflection representation", strictification},
        {"Omega^Gy relations on A3, transversal pairs", omega_gy},
        {"Omega-isomorphism certificates with zero residuals", omega_certificates},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.note = std::string("exception: ") + e.what();
        }
        failed += !c.ok;
        std::cout << (c.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
        if (!c.ok) std::cout << " -- " << c.note;
        std::cout << "\n";
    }
    std::cout << criteria.size() - size_t(failed) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
