#include "hecke/blocks.hpp"
#include "hecke/catalog.hpp"

#include <gtest/gtest.h>

using namespace hecke;
using Q = Rational;
using LP = Laurent<Q>;

namespace {

struct Pair {
    std::string name;
    WGraph<Q> g1, g2;
};

// Equal-character pairs: identity, random label-respecting conjugate, the B3 chi9 pair.
std::vector<Pair> conjugate_pairs() {
    std::vector<Pair> out;
    auto refl2 = direct_sum(reflection_graph<Q>("A2"), reflection_graph<Q>("A2"));
    out.push_back({"refl+refl identity", refl2, refl2});
    auto [M, Mi] = random_label_respecting<Q>(refl2.labels, 17);
    out.push_back({"refl+refl conjugate", refl2, matrix_conjugate(refl2, M, Mi, 2)});
    out.push_back({"B3 chi9", b3_table<Q>()[8], b3_chi9_conjugate<Q>()});
    return out;
}

std::vector<WGraph<Q>> shipped_irreducible() {
    std::vector<WGraph<Q>> out;
    for (const char* t : {"A2", "A3"}) {
        out.push_back(trivial_graph<Q>(t));
        out.push_back(sign_graph<Q>(t));
        out.push_back(reflection_graph<Q>(t));
    }
    for (auto& g : b3_table<Q>()) out.push_back(g);
    Group A3("A3");
    KL kl(A3);
    for (auto& g : kl_left_cell_graphs<Q>(kl)) out.push_back(g);
    return out;
}

bool proportional(const LMatrix<Q>& A, const LMatrix<Q>& B) {
    return normalize_matrix(A) == normalize_matrix(B);
}

}  // namespace

TEST(Blocks, ReducedWords) {
    Group A2("A2"), B3("B3");
    EXPECT_EQ(reduced_words(A2, A2.longest()).size(), 2u);
    EXPECT_EQ(reduced_words(B3, B3.longest()).size(), 42u);
    EXPECT_EQ(reduced_words(B3, 0), std::vector<std::vector<int>>{{}});
}

TEST(Blocks, CongruenceTrivialCases) {
    Group G("B3");
    auto chi7 = b3_table<Q>()[6];
    auto r1 = tw_diagonal_congruence(chi7, G, 0);
    EXPECT_TRUE(r1.ok);
    EXPECT_EQ(r1.residue, Matrix<Q>::identity(3));
    for (int s = 0; s < 3; ++s) {
        auto r = tw_diagonal_congruence(chi7, G, G.generator(s));
        EXPECT_TRUE(r.ok) << r.failure;
        for (int x = 0; x < 3; ++x) EXPECT_EQ(r.residue(x, x), contains(chi7.labels[size_t(x)], s) ? Q(-1) : Q(0));
    }
    auto r12 = tw_diagonal_congruence(chi7, G, G.from_word({1, 2}));
    EXPECT_TRUE(r12.ok) << r12.failure;
    EXPECT_TRUE(r12.residue.is_zero());
}

TEST(Blocks, CongruenceOnKLAndTableGraphs) {
    Group A2("A2");
    KL kl2(A2);
    std::vector<WGraph<Q>> a2 = {kl_wgraph<Q>(kl2), trivial_graph<Q>("A2"), sign_graph<Q>("A2"), reflection_graph<Q>("A2")};
    for (auto& g : a2)
        for (int w = 0; w < A2.size(); ++w)
            for (auto& word : reduced_words(A2, w)) {
                auto r = tw_diagonal_congruence(g, A2, w, word);
                EXPECT_TRUE(r.ok) << A2.word_string(w) << ": " << r.failure;
            }
    Group B3("B3");
    KL kl3(B3);
    std::vector<WGraph<Q>> b3 = b3_table<Q>();
    b3.push_back(kl_wgraph<Q>(kl3));
    for (auto& g : b3)
        for (int w = 0; w < B3.size(); ++w) {
            if (B3.length(w) > 3) continue;
            for (auto& word : reduced_words(B3, w)) {
                auto r = tw_diagonal_congruence(g, B3, w, word);
                EXPECT_TRUE(r.ok) << B3.word_string(w) << ": " << r.failure;
            }
        }
}

TEST(Blocks, CongruenceRejects) {
    Group G("A2");
    auto g = reflection_graph<Q>("A2");
    g.set_edge(0, 0, 1, parse_laurent<Q>("v^2"));
    EXPECT_THROW(tw_diagonal_congruence(g, G, 1), std::invalid_argument);
    EXPECT_THROW(tw_diagonal_congruence(reflection_graph<Q>("A2"), G, G.longest(), std::vector<int>{0, 1}), std::invalid_argument);
}

TEST(Blocks, LabelMultisetExamples) {
    Group A2("A2"), B3("B3");
    EXPECT_EQ(label_multiset_from_character(wgraph_matrices(trivial_graph<Q>("A2"), A2), A2), (std::map<GenSet, int>{{0, 1}}));
    EXPECT_EQ(label_multiset_from_character(wgraph_matrices(sign_graph<Q>("A2"), A2), A2), (std::map<GenSet, int>{{3, 1}}));
    auto chi7 = wgraph_matrices(b3_table<Q>()[6], B3);
    EXPECT_EQ(label_multiset_from_character(chi7, B3), (std::map<GenSet, int>{{gs({0}), 1}, {gs({1}), 1}, {gs({2}), 1}}));
}

TEST(Blocks, LabelMultisetInvariantUnderConjugation) {
    Group G("A3");
    auto R = wgraph_matrices(reflection_graph<Q>("A3"), G);
    Matrix<Q> M(3, 3);
    M(0, 0) = Q(1), M(0, 1) = Q(2), M(1, 1) = Q(1), M(1, 2) = Q(-1), M(2, 2) = Q(3), M(2, 0) = Q(1);
    auto C = conjugate(R, lift(*inverse(M)), lift(M));
    EXPECT_EQ(label_multiset_from_character(C, G), label_multiset_from_character(R, G));
    LMatrix<Q> S = LMatrix<Q>::identity(3);
    S(1, 1) = parse_laurent<Q>("v^2");
    LMatrix<Q> Si = LMatrix<Q>::identity(3);
    Si(1, 1) = parse_laurent<Q>("v^-2");
    EXPECT_EQ(label_multiset_from_character(conjugate(C, Si, S), G), label_multiset_from_character(R, G));
}

TEST(Blocks, EigenspaceRouteAgreesWithCharacterRoute) {
    std::vector<std::pair<std::string, std::vector<WGraph<Q>>>> cases;
    for (const char* t : {"A1", "A2", "A3", "B3", "B3:2,1,1", "I2(4)", "I2(6)"}) {
        std::vector<WGraph<Q>> gs_ = {trivial_graph<Q>(t), sign_graph<Q>(t)};
        Group G(t);
        KL kl(G);
        gs_.push_back(kl_wgraph<Q>(kl));
        cases.emplace_back(t, gs_);
    }
    cases.emplace_back("A2", std::vector<WGraph<Q>>{reflection_graph<Q>("A2")});
    cases.emplace_back("A3", std::vector<WGraph<Q>>{reflection_graph<Q>("A3")});
    cases.emplace_back("B3", b3_table<Q>());
    for (auto& [t, graphs] : cases) {
        Group G(t);
        for (auto& g : graphs) {
            auto R = wgraph_matrices(g, G);
            auto lm = label_multiset_from_character(R, G);
            EXPECT_EQ(lm, eigenspace_label_multiplicities(R, G)) << t;
            EXPECT_EQ(lm, label_counts(g)) << t;
        }
    }
}

TEST(Blocks, EigenspaceRouteAgreesOverSqrt5) {
    using F = QSqrt5;
    for (const char* t : {"I2(5)", "H3"}) {
        Group G(t);
        for (auto& g : {trivial_graph<F>(t), sign_graph<F>(t), reflection_graph<F>(t)}) {
            auto R = wgraph_matrices(g, G);
            EXPECT_EQ(label_multiset_from_character(R, G), eigenspace_label_multiplicities(R, G)) << t;
            EXPECT_EQ(label_multiset_from_character(R, G), label_counts(g)) << t;
        }
    }
}

TEST(Blocks, LabelMultisetRejectsNonGeckCharacter) {
    Group G("A2");
    Representation<Q> R{1, {}};
    for (int s = 0; s < 2; ++s) {
        LMatrix<Q> T(1, 1);
        T(0, 0) = parse_laurent<Q>("-1/2 v^-1");
        R.T.push_back(T);
    }
    EXPECT_THROW(label_multiset_from_character(R, G), std::runtime_error);
}

TEST(Blocks, ABound) {
    Group A2("A2"), B3("B3");
    auto sgn = a_bound_check(wgraph_matrices(sign_graph<Q>("A2"), A2), A2);
    EXPECT_TRUE(sgn.ok);
    EXPECT_EQ(sgn.a, 3);
    EXPECT_EQ(sgn.slack, 0);
    auto triv = a_bound_check(wgraph_matrices(trivial_graph<Q>("A2"), A2), A2);
    EXPECT_TRUE(triv.ok);
    EXPECT_EQ(triv.a, 0);
    auto chi7 = a_bound_check(wgraph_matrices(b3_table<Q>()[6], B3), B3);
    EXPECT_TRUE(chi7.ok);
    EXPECT_EQ(chi7.bound, 1);
    EXPECT_EQ(chi7.a, 1);
    EXPECT_EQ(chi7.slack, 0);
    for (auto& g : b3_table<Q>()) EXPECT_TRUE(a_bound_check(wgraph_matrices(g, B3), B3).ok);
    EXPECT_FALSE(a_bound_check(1, {{gs({0, 1}), 1}}, A2).ok);
}

TEST(Blocks, IntertwinerSchur) {
    Group G("A2");
    auto R = wgraph_matrices(reflection_graph<Q>("A2"), G);
    auto self = intertwiner_space(R, R);
    ASSERT_EQ(self.size(), 1u);
    EXPECT_EQ(self[0], LMatrix<Q>::identity(2));
    EXPECT_TRUE(intertwiner_space(wgraph_matrices(trivial_graph<Q>("A2"), G), wgraph_matrices(sign_graph<Q>("A2"), G)).empty());
    EXPECT_TRUE(intertwiner_space(R, wgraph_matrices(sign_graph<Q>("A2"), G)).empty());
}

TEST(Blocks, IntertwinerOfConjugateIsTheConjugator) {
    Group G("A2");
    auto R = wgraph_matrices(reflection_graph<Q>("A2"), G);
    Matrix<Q> M(2, 2);
    M(0, 0) = Q(2), M(0, 1) = Q(-1), M(1, 0) = Q(5), M(1, 1) = Q(3);
    Matrix<Q> Mi = *inverse(M);
    auto C = conjugate(R, lift(Mi), lift(M));
    auto sp = intertwiner_space(R, C);
    ASSERT_EQ(sp.size(), 1u);
    EXPECT_TRUE(proportional(sp[0], lift(Mi)));
    EXPECT_EQ(intertwiner_space(R, wgraph_matrices(direct_sum(reflection_graph<Q>("A2"), reflection_graph<Q>("A2")), G)).size(), 2u);
}

TEST(Blocks, IntertwinerOfReducibleSum) {
    Group G("A2");
    auto R = wgraph_matrices(direct_sum(reflection_graph<Q>("A2"), reflection_graph<Q>("A2")), G);
    auto sp = intertwiner_space(R, R);
    EXPECT_EQ(sp.size(), 4u);
    for (auto& A : sp) {
        EXPECT_EQ(matrix_valuation(A), 0);
        for (auto& T : R.T) EXPECT_EQ(A * T, T * A);
    }
}

TEST(Blocks, BlockReportOrderingAndFlags) {
    std::vector<GenSet> labels = {gs({0}), gs({1}), gs({0, 2})};
    auto id = block_report(LMatrix<Q>::identity(3), labels, labels);
    EXPECT_TRUE(id.diagonal);
    EXPECT_TRUE(id.triangular);
    ASSERT_EQ(id.row_blocks.size(), 3u);
    EXPECT_EQ(id.row_blocks[0].first, gs({0, 2}));
    EXPECT_EQ(id.row_blocks[1].first, gs({0}));
    EXPECT_EQ(id.row_blocks[2].first, gs({1}));
    EXPECT_EQ(id.offdiag_residues.size(), 6u);

    LMatrix<Q> A = LMatrix<Q>::identity(3);
    A(2, 0) = LP(Q(4));  // row {0,2}, column {0}: allowed by inclusion
    auto tri = block_report(A, labels, labels);
    EXPECT_FALSE(tri.diagonal);
    EXPECT_TRUE(tri.triangular);
    EXPECT_EQ(tri.offdiag_residues.at({gs({0, 2}), gs({0})})(0, 0), Q(4));
    A(0, 1) = LP(Q(1));  // row {0}, column {1}
    auto bad = block_report(A, labels, labels);
    EXPECT_FALSE(bad.diagonal);
    EXPECT_FALSE(bad.triangular);
    A(0, 1) = parse_laurent<Q>("v");
    A(2, 0) = parse_laurent<Q>("v + 3v^2");
    EXPECT_TRUE(block_report(A, labels, labels).diagonal);
}

TEST(Blocks, BlockReportRejects) {
    std::vector<GenSet> labels = {gs({0}), gs({1})};
    EXPECT_THROW(block_report(LMatrix<Q>::identity(3), labels, labels), std::invalid_argument);
    EXPECT_THROW(block_report(shift(LMatrix<Q>::identity(2), -1), labels, labels), std::invalid_argument);
}

TEST(Blocks, IntertwinersAndFormsAreBlockDiagonal) {
    for (auto& p : conjugate_pairs()) {
        Group G(p.g1.group);
        auto R1 = wgraph_matrices(p.g1, G), R2 = wgraph_matrices(p.g2, G);
        auto sp = intertwiner_space(R1, R2);
        ASSERT_FALSE(sp.empty()) << p.name;
        LMatrix<Q> mix(R2.dim, R1.dim);
        int k = 1;
        for (auto& A : sp) {
            auto rep = block_report(A, p.g2.labels, p.g1.labels);
            EXPECT_TRUE(rep.diagonal) << p.name;
            mix = mix + A.scaled(LP(Q(k)));
            k = -2 * k + 1;
        }
        EXPECT_TRUE(block_report(normalize_matrix(mix), p.g2.labels, p.g1.labels).diagonal) << p.name;
        for (auto& B : invariant_form_space(R1)) {
            for (auto& T : R1.T) EXPECT_EQ(B * T, T.transpose() * B);
            EXPECT_TRUE(block_report(B, p.g1.labels, p.g1.labels).diagonal) << p.name;
        }
    }
}

TEST(Blocks, GramFormsBlockDiagonalThenStrict) {
    for (auto& g : shipped_irreducible()) {
        Group G(g.group);
        auto R = wgraph_matrices(g, G);
        auto form = gram_invariant_form(R, G);
        auto rep = block_report(form.matrix, g.labels, g.labels);
        EXPECT_TRUE(rep.diagonal) << g.group;
        auto st = strictify(R, form.matrix, g.labels);
        Matrix<Q> r = residue(st.omega);
        for (int i = 0; i < R.dim; ++i)
            for (int j = 0; j < R.dim; ++j)
                if (i != j) {
                    EXPECT_TRUE(r(i, j).is_zero());
                }
    }
}

TEST(Blocks, OmegaCertificates) {
    for (auto& p : conjugate_pairs()) {
        Group G(p.g1.group);
        auto cert = omega_iso_certificate(p.g1, p.g2, G);
        ASSERT_TRUE(cert.has_value()) << p.name;
        EXPECT_TRUE(cert->ok) << p.name << ": " << cert->verdict;
        EXPECT_EQ(matrix_degree(cert->A), 0);
        for (int s = 0; s < G.rank(); ++s) {
            EXPECT_EQ(cert->e_residual[size_t(s)], 0) << p.name;
            EXPECT_EQ(cert->x_residual[size_t(s)], 0) << p.name;
        }
    }
    auto chi9 = b3_table<Q>()[8];
    auto [M, Mi] = random_label_respecting<Q>(chi9.labels, 9);
    auto cert = omega_iso_certificate(chi9, b3_chi9_conjugate<Q>(), Group("B3"));
    ASSERT_TRUE(cert.has_value());
    EXPECT_TRUE(proportional(cert->A, lift(Mi)));
}

TEST(Blocks, OmegaCertificateTrivialCases) {
    Group G("A2");
    auto refl = reflection_graph<Q>("A2");
    auto self = omega_iso_certificate(refl, refl, G);
    ASSERT_TRUE(self.has_value());
    EXPECT_EQ(self->A, LMatrix<Q>::identity(2));
    EXPECT_FALSE(omega_iso_certificate(trivial_graph<Q>("A2"), sign_graph<Q>("A2"), G).has_value());
    EXPECT_THROW(omega_iso_certificate(refl, trivial_graph<Q>("A2"), G), std::invalid_argument);
}
