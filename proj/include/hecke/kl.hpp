#pragma once

#include "hecke/hecke.hpp"
#include "hecke/scc.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hecke {

struct CriticalPair {
    int gamma;  // kInfinity when P*_{y,w} = 0
    int u, v;
};

struct MuEntry {
    int z;
    Poly mu;
};

enum class CellKind { Left, Right, TwoSided };

struct CellPartition {
    CellKind kind;
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of;
    // leq[a][b]: block b lies below block a (C-basis multiplication from a reaches b)
    std::vector<std::vector<char>> below;
};

struct LusztigData {
    std::vector<int> a;
    std::vector<int> delta;  // kInfinity when P*_{1,z} = 0
    std::vector<Rational> n; // lowest term of bar(P*_{1,z})
    std::vector<int> duflo;
};

// Kazhdan-Lusztig polynomials P*_{y,w}, mu^s_{y,w} and derived data, with
// memoization on critical pairs only.
class KL {
public:
    explicit KL(const Group& g) : g_(g), H_(g), mu_lists_(size_t(g.rank()) * size_t(g.size())),
                                  mu_done_(size_t(g.rank()) * size_t(g.size()), 0),
                                  cbasis_(size_t(g.size())) {}

    const Group& group() const { return g_; }
    HeckeAlgebra& hecke() { return H_; }

    CriticalPair critical_pair(int y, int w) const {
        if (!g_.bruhat_le(y, w)) return {kInfinity, y, w};
        int gamma = 0;
        const int n = g_.rank();
        for (bool moved = true; moved;) {
            moved = false;
            for (int t = 0; t < n && !moved; ++t)
                if (g_.left_descent(t, w) && !g_.left_descent(t, y)) {
                    y = g_.lmul(t, y);
                    gamma += g_.L(t);
                    moved = true;
                }
            for (int t = 0; t < n && !moved; ++t)
                if (g_.right_descent(w, t) && !g_.right_descent(y, t)) {
                    y = g_.rmul(y, t);
                    gamma += g_.L(t);
                    moved = true;
                }
        }
        return {gamma, y, w};
    }

    Poly pstar(int y, int w) {
        CriticalPair c = critical_pair(y, w);
        if (c.gamma == kInfinity) return {};
        if (c.u == c.v) return Poly::vpow(-c.gamma);
        uint64_t key = pair_key(c.u, c.v);
        auto it = crit_.find(key);
        if (it == crit_.end()) it = crit_.emplace(key, compute_critical(c.u, c.v)).first;
        return it->second.shift(-c.gamma);
    }

    Poly mu(int y, int w, int s) {
        if (!g_.left_descent(s, y) || g_.left_descent(s, w) || g_.L(s) <= 0) return {};
        if (!g_.bruhat_le(y, w)) return {};
        uint64_t key = pair_key(y, w) * uint64_t(g_.rank()) + uint64_t(s);
        if (auto it = mu_.find(key); it != mu_.end()) return it->second;
        Poly p = pstar(y, w);
        Poly r;
        if (constant_weight_on(g_.support(w))) {
            r = nonnegative_part(p.shift(g_.L(s)));
        } else {
            Poly alpha = nonnegative_part(p.shift(g_.L(s)));
            for (int z : g_.bruhat_interval(y, w)) {
                if (z == y || !g_.left_descent(s, z)) continue;
                Poly m = mu(z, w, s);
                if (!m.is_zero()) alpha -= pstar(y, z) * m;
            }
            alpha = nonnegative_part(alpha);
            r = alpha + positive_part(alpha).bar();
        }
        mu_.emplace(key, r);
        return r;
    }

    // z < w with sz < z and mu^s_{z,w} != 0; empty unless sw > w.
    const std::vector<MuEntry>& mu_list(int w, int s) {
        size_t k = size_t(s) * size_t(g_.size()) + size_t(w);
        if (mu_done_[k]) return mu_lists_[k];
        std::vector<MuEntry> out;
        if (!g_.left_descent(s, w)) {
            for (int z = 0; z < g_.size(); ++z) {
                if (g_.length(z) >= g_.length(w) || !g_.left_descent(s, z)) continue;
                Poly m = mu(z, w, s);
                if (!m.is_zero()) out.push_back({z, m});
            }
        }
        mu_done_[k] = 1;
        return mu_lists_[k] = std::move(out);
    }

    // C_w = sum_y (-1)^{l(y)+l(w)} bar(P*_{y,w}) T_y
    const HeckeElement& c_basis(int w) {
        auto& slot = cbasis_[size_t(w)];
        if (!slot.empty()) return slot;
        for (int y : g_.bruhat_interval(0, w)) {
            Poly p = pstar(y, w).bar();
            if ((g_.length(y) + g_.length(w)) % 2) p = -p;
            add_to(slot, y, p);
        }
        return slot;
    }

    // Rewrite a T-basis element in the C-basis by unitriangular elimination.
    HeckeElement to_c_basis(HeckeElement h) {
        HeckeElement r;
        while (!h.empty()) {
            int top = -1;
            for (auto& [w, a] : h)
                if (top < 0 || g_.length(w) > g_.length(top)) top = w;
            Poly a = h.at(top);
            add_to(r, top, a);
            h = h - scaled(c_basis(top), a);
        }
        return r;
    }

    // h_{x,y,z} with C_x C_y = sum_z h_{x,y,z} C_z, via the T-basis.
    HeckeElement h_structure(int x, int y) {
        return to_c_basis(H_.t_multiply(c_basis(x), c_basis(y)));
    }

    // C_s * h for h in the C-basis.
    HeckeElement left_mul_Cs(int s, const HeckeElement& h) {
        HeckeElement r;
        for (auto& [w, a] : h) {
            if (g_.left_descent(s, w)) {
                add_to(r, w, -a * (Poly::vpow(g_.L(s)) + Poly::vpow(-g_.L(s))));
                continue;
            }
            add_to(r, g_.lmul(s, w), a);
            for (auto& [z, m] : mu_list(w, s)) {
                Poly c = a * m;
                if ((g_.length(z) + g_.length(w) + 1) % 2) c = -c;
                add_to(r, z, c);
            }
        }
        return r;
    }

    // All products C_x C_y for fixed y, in the C-basis, by recursion on x.
    std::vector<HeckeElement> products_with(int y) {
        std::vector<HeckeElement> prod(size_t(g_.size()));
        prod[0] = basis_element(y);
        for (int x = 1; x < g_.size(); ++x) {
            int s = g_.parent_gen(x);
            int p = g_.lmul(s, x);
            HeckeElement r = left_mul_Cs(s, prod[size_t(p)]);
            for (auto& [z, m] : mu_list(p, s)) {
                Poly c = m;
                if ((g_.length(z) + g_.length(p) + 1) % 2) c = -c;
                r = r - scaled(prod[size_t(z)], c);
            }
            prod[size_t(x)] = std::move(r);
        }
        return prod;
    }

    LusztigData lusztig_a_delta_n(int limit = 1200) {
        if (g_.size() > limit)
            throw std::runtime_error("group order " + std::to_string(g_.size()) + " exceeds h-table limit " +
                                     std::to_string(limit) + "; use representation a-values instead");
        const int W = g_.size();
        LusztigData d;
        d.a.assign(size_t(W), -kInfinity);
        for (int y = 0; y < W; ++y) {
            auto prod = products_with(y);
            for (int x = 0; x < W; ++x)
                for (auto& [z, h] : prod[size_t(x)]) d.a[size_t(z)] = std::max(d.a[size_t(z)], -h.valuation());
        }
        d.delta.assign(size_t(W), kInfinity);
        d.n.assign(size_t(W), Rational(0));
        for (int z = 0; z < W; ++z) {
            Poly p = pstar(0, z);
            if (p.is_zero()) continue;
            d.delta[size_t(z)] = p.bar().valuation();
            d.n[size_t(z)] = p.bar().lowest_term();
            if (d.a[size_t(z)] == d.delta[size_t(z)]) d.duflo.push_back(z);
        }
        return d;
    }

    // Edges y -> x whenever C_x occurs in C_s C_y.
    std::vector<std::vector<int>> left_graph() {
        const int W = g_.size();
        std::vector<std::vector<int>> adj(static_cast<size_t>(W));
        for (int y = 0; y < W; ++y)
            for (int s = 0; s < g_.rank(); ++s) {
                if (g_.left_descent(s, y)) continue;
                adj[size_t(y)].push_back(g_.lmul(s, y));
                for (auto& e : mu_list(y, s)) adj[size_t(y)].push_back(e.z);
            }
        for (auto& a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
        return adj;
    }

    CellPartition cells(CellKind kind) {
        auto left = left_graph();
        const int W = g_.size();
        std::vector<std::vector<int>> adj(static_cast<size_t>(W));
        for (int y = 0; y < W; ++y) {
            if (kind != CellKind::Right)
                for (int x : left[size_t(y)]) adj[size_t(y)].push_back(x);
            if (kind != CellKind::Left)
                for (int x : left[size_t(g_.inverse(y))]) adj[size_t(y)].push_back(g_.inverse(x));
        }
        Condensation c = strongly_connected(adj);
        return {kind, c.components, c.component_of, c.reach};
    }

private:
    static uint64_t pair_key(int y, int w) { return (uint64_t(uint32_t(y)) << 32) | uint32_t(w); }

    bool constant_weight_on(GenSet J) const {
        int first = -1;
        for (int s : members(J)) {
            if (first < 0) first = g_.L(s);
            else if (g_.L(s) != first) return false;
        }
        return true;
    }

    // P*_{u,v} for a critical pair u < v: every descent of v is one of u.
    Poly compute_critical(int u, int v) {
        int t = std::countr_zero(g_.left_descents(v));
        int tv = g_.lmul(t, v);
        Poly r = pstar(u, tv).shift(g_.L(t)) + pstar(g_.lmul(t, u), tv);
        for (auto& [z, m] : mu_list(tv, t)) {
            if (!g_.bruhat_le(u, z)) continue;
            r -= pstar(u, z) * m;
        }
        return r;
    }

    const Group& g_;
    HeckeAlgebra H_;
    std::unordered_map<uint64_t, Poly> crit_;
    std::unordered_map<uint64_t, Poly> mu_;
    std::vector<std::vector<MuEntry>> mu_lists_;
    std::vector<char> mu_done_;
    std::vector<HeckeElement> cbasis_;
};

}  // namespace hecke
