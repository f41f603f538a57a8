#pragma once

#include "hecke/coxeter.hpp"
#include "hecke/laurent.hpp"

#include <map>
#include <vector>

namespace hecke {

using Poly = Laurent<Rational>;

// Coefficients keyed by canonical element index; the basis (T or C) is
// implied by the producing function.
using HeckeElement = std::map<int, Poly>;

inline void add_to(HeckeElement& h, int w, const Poly& a) {
    if (a.is_zero()) return;
    auto [it, fresh] = h.emplace(w, a);
    if (!fresh) {
        it->second += a;
        if (it->second.is_zero()) h.erase(it);
    }
}

inline HeckeElement scaled(const HeckeElement& h, const Poly& a) {
    HeckeElement r;
    if (a.is_zero()) return r;
    for (auto& [w, c] : h) add_to(r, w, c * a);
    return r;
}

inline HeckeElement operator+(HeckeElement a, const HeckeElement& b) {
    for (auto& [w, c] : b) add_to(a, w, c);
    return a;
}

inline HeckeElement operator-(HeckeElement a, const HeckeElement& b) {
    for (auto& [w, c] : b) add_to(a, w, -c);
    return a;
}

inline HeckeElement basis_element(int w) { return {{w, Poly(1)}}; }

// T-basis arithmetic of the Iwahori-Hecke algebra with T_s^2 = 1 + (v_s - v_s^-1) T_s.
class HeckeAlgebra {
public:
    explicit HeckeAlgebra(const Group& g) : g_(g), bar_cache_(size_t(g.size())) {}

    const Group& group() const { return g_; }

    Poly vs(int s) const { return Poly::vpow(g_.L(s)); }
    Poly zeta(int s) const { return Poly::vpow(g_.L(s)) - Poly::vpow(-g_.L(s)); }

    HeckeElement left_mul_T(int s, const HeckeElement& h) const {
        HeckeElement r;
        Poly z = zeta(s);
        for (auto& [w, a] : h) {
            add_to(r, g_.lmul(s, w), a);
            if (g_.left_descent(s, w)) add_to(r, w, a * z);
        }
        return r;
    }

    HeckeElement right_mul_T(const HeckeElement& h, int s) const {
        HeckeElement r;
        Poly z = zeta(s);
        for (auto& [w, a] : h) {
            add_to(r, g_.rmul(w, s), a);
            if (g_.right_descent(w, s)) add_to(r, w, a * z);
        }
        return r;
    }

    // T_w * h
    HeckeElement left_mul_Tw(int w, HeckeElement h) const {
        auto word = g_.word(w);
        for (auto it = word.rbegin(); it != word.rend(); ++it) h = left_mul_T(*it, h);
        return h;
    }

    HeckeElement t_multiply(const HeckeElement& a, const HeckeElement& b) const {
        HeckeElement r;
        for (auto& [w, c] : a) r = r + scaled(left_mul_Tw(w, b), c);
        return r;
    }

    // bar(T_w) = T_{s_1}^{-1} ... T_{s_k}^{-1} for a reduced word of w.
    const HeckeElement& bar_T(int w) {
        auto& slot = bar_cache_[size_t(w)];
        if (!slot.empty()) return slot;
        if (w == 0) return slot = basis_element(0);
        int s = g_.parent_gen(w);
        HeckeElement p = bar_T(g_.lmul(s, w));
        slot = left_mul_T(s, p) - scaled(p, zeta(s));
        return slot;
    }

    HeckeElement hecke_bar(const HeckeElement& h) {
        HeckeElement r;
        for (auto& [w, a] : h) r = r + scaled(bar_T(w), a.bar());
        return r;
    }

private:
    const Group& g_;
    std::vector<HeckeElement> bar_cache_;
};

}  // namespace hecke
