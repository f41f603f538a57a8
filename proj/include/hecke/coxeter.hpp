#pragma once

#include "hecke/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <ranges>
#include <regex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hecke {

using GenSet = std::uint32_t;  // subsets of S as bit masks

inline bool contains(GenSet I, int s) { return (I >> s) & 1u; }
inline int popcount(GenSet I) { return std::popcount(I); }

inline std::vector<int> members(GenSet I) {
    std::vector<int> v;
    for (int s = 0; s < 32 && (I >> s); ++s)
        if (contains(I, s)) v.push_back(s);
    return v;
}

inline std::string genset_string(GenSet I) {
    std::string s;
    for (int g : members(I)) s += std::to_string(g);
    return s.empty() ? "-" : s;
}

struct CoxeterDatum {
    std::string type;  // e.g. "B3:2,1,1"
    std::string family;
    int rank = 0;
    std::vector<std::vector<int>> m;
    std::vector<int> L;
    bool needs_sqrt5 = false;

    GenSet all_generators() const { return (GenSet(1) << rank) - 1; }

    bool equal_parameters() const {
        return std::all_of(L.begin(), L.end(), [&](int x) { return x == L[0]; });
    }
};

// Grammar: <Family><rank> with Family in {A,B,D,H}, or I2(<m>); optional
// ":w1,w2,..." giving L(s) in generator order.
inline CoxeterDatum parse_type(const std::string& text) {
    static const std::regex re(R"(^\s*(?:([ABDH])(\d+)|I2\((\d+)\))\s*(?::\s*([0-9,\s]+))?\s*$)");
    std::smatch mt;
    if (!std::regex_match(text, mt, re)) throw std::invalid_argument("unsupported Coxeter type: " + text);
    CoxeterDatum d;
    int n = 0;
    if (mt[1].matched) {
        d.family = mt[1].str();
        n = std::stoi(mt[2].str());
    } else {
        d.family = "I2";
        n = 2;
    }
    d.rank = n;
    d.m.assign(size_t(n), std::vector<int>(size_t(n), 2));
    for (int i = 0; i < n; ++i) d.m[size_t(i)][size_t(i)] = 1;
    auto bond = [&](int i, int j, int m) { d.m[size_t(i)][size_t(j)] = d.m[size_t(j)][size_t(i)] = m; };
    std::string base;
    if (d.family == "A") {
        if (n < 1 || n > 5) throw std::invalid_argument("supported ranks for A are 1..5");
        for (int i = 0; i + 1 < n; ++i) bond(i, i + 1, 3);
        base = "A" + std::to_string(n);
    } else if (d.family == "B") {
        if (n < 2 || n > 4) throw std::invalid_argument("supported ranks for B are 2..4");
        bond(0, 1, 4);
        for (int i = 1; i + 1 < n; ++i) bond(i, i + 1, 3);
        base = "B" + std::to_string(n);
    } else if (d.family == "D") {
        if (n != 4) throw std::invalid_argument("supported rank for D is 4");
        bond(0, 2, 3);
        bond(1, 2, 3);
        bond(2, 3, 3);
        base = "D4";
    } else if (d.family == "H") {
        if (n != 3) throw std::invalid_argument("supported rank for H is 3");
        bond(0, 1, 5);
        bond(1, 2, 3);
        d.needs_sqrt5 = true;
        base = "H3";
    } else {
        int m = std::stoi(mt[3].str());
        if (m < 3 || m > 6) throw std::invalid_argument("supported I2(m) have m in 3..6");
        bond(0, 1, m);
        d.needs_sqrt5 = (m == 5);
        base = "I2(" + std::to_string(m) + ")";
    }
    d.L.assign(size_t(n), 1);
    if (mt[4].matched) {
        std::vector<int> w;
        std::string s = mt[4].str();
        size_t i = 0;
        while (i < s.size()) {
            size_t j = s.find(',', i);
            if (j == std::string::npos) j = s.size();
            std::string tok = s.substr(i, j - i);
            tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
            if (tok.empty()) throw std::invalid_argument("empty weight in: " + text);
            w.push_back(std::stoi(tok));
            i = j + 1;
        }
        if (int(w.size()) != n) throw std::invalid_argument("weight list length differs from rank in: " + text);
        for (int x : w)
            if (x <= 0) throw std::invalid_argument("weights must be positive integers");
        d.L = w;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && d.m[size_t(i)][size_t(j)] % 2 == 1 && d.L[size_t(i)] != d.L[size_t(j)])
                throw std::invalid_argument("weights differ on conjugate generators " + std::to_string(i) +
                                            " and " + std::to_string(j));
    d.type = base;
    if (!d.equal_parameters() || (mt[4].matched && d.L[0] != 1)) {
        d.type += ":";
        for (int i = 0; i < n; ++i) d.type += (i ? "," : "") + std::to_string(d.L[size_t(i)]);
    }
    return d;
}

struct Subword {
    std::vector<int> word;    // reduced word of w
    std::vector<bool> flags;  // positions forming a reduced word of y
};

// Finite Coxeter group, fully enumerated. Elements are indices into the
// canonical breadth-first order; index 0 is the identity.
class Group {
public:
    explicit Group(CoxeterDatum d) : d_(std::move(d)) { enumerate(); }
    explicit Group(const std::string& type) : Group(parse_type(type)) {}

    const CoxeterDatum& datum() const { return d_; }
    int rank() const { return d_.rank; }
    int size() const { return int(len_.size()); }
    int identity() const { return 0; }
    int longest() const { return w0_; }
    GenSet all_generators() const { return (GenSet(1) << d_.rank) - 1; }
    int coxeter_m(int s, int t) const { return d_.m[size_t(s)][size_t(t)]; }
    int L(int s) const { return d_.L[size_t(s)]; }

    int generator(int s) const { return lmul_[size_t(s)][0]; }
    int lmul(int s, int w) const { return lmul_[size_t(s)][size_t(w)]; }
    int rmul(int w, int s) const { return rmul_[size_t(s)][size_t(w)]; }
    int inverse(int w) const { return inv_[size_t(w)]; }
    int length(int w) const { return len_[size_t(w)]; }
    int weight(int w) const { return weight_[size_t(w)]; }
    GenSet left_descents(int w) const { return dl_[size_t(w)]; }
    GenSet right_descents(int w) const { return dr_[size_t(w)]; }
    bool left_descent(int s, int w) const { return contains(dl_[size_t(w)], s); }
    bool right_descent(int w, int s) const { return contains(dr_[size_t(w)], s); }

    // Parent in the canonical tree: w = s * parent with s the smallest left descent.
    int parent(int w) const { return w == 0 ? -1 : lmul(parent_gen(w), w); }
    int parent_gen(int w) const { return w == 0 ? -1 : std::countr_zero(dl_[size_t(w)]); }

    GenSet canonical_left_ascent_set(int w) const {
        GenSet r = 0;
        for (int s = 0; s < rank(); ++s) {
            if (left_descent(s, w)) continue;
            int u = lmul(s, w);
            if (std::countr_zero(dl_[size_t(u)]) == s) r |= GenSet(1) << s;
        }
        return r;
    }

    // Reduced word following the canonical tree: w = word[0] * word[1] * ...
    std::vector<int> word(int w) const {
        std::vector<int> r;
        while (w != 0) {
            int s = parent_gen(w);
            r.push_back(s);
            w = lmul(s, w);
        }
        return r;
    }

    int from_word(const std::vector<int>& word) const {
        int w = 0;
        for (auto it = word.rbegin(); it != word.rend(); ++it) w = lmul(*it, w);
        return w;
    }

    int multiply(int x, int y) const {
        auto wd = word(x);
        for (auto it = wd.rbegin(); it != wd.rend(); ++it) y = lmul(*it, y);
        return y;
    }

    GenSet support(int w) const { return supp_[size_t(w)]; }

    bool bruhat_le(int y, int w) const {
        while (length(y) > 0 && length(y) < length(w)) {
            int s = std::countr_zero(dl_[size_t(w)]);
            w = lmul(s, w);
            if (left_descent(s, y)) y = lmul(s, y);
        }
        if (length(y) == 0) return true;
        return y == w;
    }

    std::optional<Subword> bruhat_subword(int y, int w) const {
        Subword sw;
        while (length(w) > 0) {
            int s = std::countr_zero(dl_[size_t(w)]);
            sw.word.push_back(s);
            if (left_descent(s, y)) {
                sw.flags.push_back(true);
                y = lmul(s, y);
            } else {
                sw.flags.push_back(false);
            }
            w = lmul(s, w);
        }
        if (y != 0) return std::nullopt;
        return sw;
    }

    // All z with y <= z <= w, sorted by canonical index.
    std::vector<int> bruhat_interval(int y, int w) const {
        auto sw = bruhat_subword(y, w);
        if (!sw) return {};
        std::vector<int> X{0};
        std::vector<char> mark(size_t(size()), 0);
        int u = 0;
        for (size_t k = sw->word.size(); k-- > 0;) {
            int s = sw->word[k];
            std::vector<int> next;
            auto add = [&](int x) {
                if (!mark[size_t(x)]) {
                    mark[size_t(x)] = 1;
                    next.push_back(x);
                }
            };
            if (sw->flags[k]) {
                int su = lmul(s, u);
                for (int x : X)
                    if (bruhat_le(su, x)) add(x);
                for (int x : X)
                    if (!left_descent(s, x)) add(lmul(s, x));
                u = su;
            } else {
                for (int x : X) add(x);
                for (int x : X)
                    if (!left_descent(s, x)) add(lmul(s, x));
            }
            for (int x : next) mark[size_t(x)] = 0;
            X = std::move(next);
        }
        std::sort(X.begin(), X.end());
        return X;
    }

    int longest_element(GenSet J) const {
        int w = 0;
        for (bool grew = true; grew;) {
            grew = false;
            for (int s = 0; s < rank(); ++s)
                if (contains(J, s) && !left_descent(s, w)) {
                    w = lmul(s, w);
                    grew = true;
                }
        }
        return w;
    }

    std::string word_string(int w) const {
        std::string s;
        for (int g : word(w)) s += std::to_string(g);
        return s.empty() ? "1" : s;
    }

private:
    using Root = std::vector<QSqrt5>;
    struct RootLess {
        bool operator()(const Root& a, const Root& b) const {
            for (size_t i = 0; i < a.size(); ++i) {
                if (auto c = a[i].a() <=> b[i].a(); c != 0) return c < 0;
                if (auto c = a[i].b() <=> b[i].b(); c != 0) return c < 0;
            }
            return false;
        }
    };

    QSqrt5 cartan(int i, int j) const {
        if (i == j) return QSqrt5(2);
        switch (coxeter_m(i, j)) {
            case 2: return QSqrt5(0);
            case 3: return QSqrt5(-1);
            case 4: return QSqrt5(i < j ? -2 : -1);
            case 6: return QSqrt5(i < j ? -3 : -1);
            case 5: return QSqrt5(Rational(-1, 2), Rational(-1, 2));
        }
        throw std::invalid_argument("unsupported Coxeter matrix entry");
    }

    void enumerate() {
        const int n = d_.rank;
        const size_t kMaxRoots = 4096;
        std::vector<Root> roots;
        std::map<Root, int, RootLess> index;
        auto intern = [&](const Root& r) {
            auto [it, fresh] = index.emplace(r, int(roots.size()));
            if (fresh) roots.push_back(r);
            return it->second;
        };
        for (int i = 0; i < n; ++i) {
            Root r(size_t(n), QSqrt5(0));
            r[size_t(i)] = QSqrt5(1);
            intern(r);
        }
        auto reflect = [&](int i, const Root& b) {
            QSqrt5 c(0);
            for (int j = 0; j < n; ++j) c += b[size_t(j)] * cartan(i, j);
            Root r = b;
            r[size_t(i)] -= c;
            return r;
        };
        for (size_t k = 0; k < roots.size(); ++k) {
            if (roots.size() > kMaxRoots) throw std::invalid_argument("Coxeter group is not finite or too large");
            for (int i = 0; i < n; ++i) intern(reflect(i, roots[k]));
        }
        const int N = int(roots.size());
        std::vector<std::vector<int>> sperm(size_t(n), std::vector<int>(static_cast<size_t>(N)));
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < N; ++r) sperm[size_t(i)][size_t(r)] = index.at(reflect(i, roots[size_t(r)]));
        std::vector<char> positive(static_cast<size_t>(N));
        for (int r = 0; r < N; ++r) {
            int sg = 0;
            for (auto& c : roots[size_t(r)])
                if ((sg = c.sign()) != 0) break;
            positive[size_t(r)] = sg > 0;
        }

        using Perm = std::vector<int>;
        std::vector<Perm> perms;
        std::map<std::vector<int>, int> byKey;
        auto key = [&](const Perm& p) { return std::vector<int>(p.begin(), p.begin() + n); };
        auto left_desc = [&](const Perm& p) {
            // s in D_L(w) iff w^{-1}(alpha_s) < 0
            GenSet m = 0;
            for (int r = 0; r < N; ++r)
                if (p[size_t(r)] < n && !positive[size_t(r)]) m |= GenSet(1) << p[size_t(r)];
            return m;
        };
        Perm id(static_cast<size_t>(N));
        for (int r = 0; r < N; ++r) id[size_t(r)] = r;
        perms.push_back(id);
        byKey[key(id)] = 0;
        len_.push_back(0);
        std::vector<GenSet> dls{0};
        for (size_t k = 0; k < perms.size(); ++k) {
            for (int i = 0; i < n; ++i) {
                if (contains(dls[k], i)) continue;
                Perm u(static_cast<size_t>(N));
                for (int r = 0; r < N; ++r) u[size_t(r)] = sperm[size_t(i)][size_t(perms[k][size_t(r)])];
                GenSet du = left_desc(u);
                if (std::countr_zero(du) != i) continue;
                byKey[key(u)] = int(perms.size());
                perms.push_back(std::move(u));
                dls.push_back(du);
                len_.push_back(len_[k] + 1);
            }
        }
        const size_t W = perms.size();
        dl_ = dls;
        dr_.assign(W, 0);
        inv_.assign(W, 0);
        lmul_.assign(size_t(n), std::vector<int>(W));
        rmul_.assign(size_t(n), std::vector<int>(W));
        for (size_t w = 0; w < W; ++w) {
            const Perm& p = perms[w];
            for (int s = 0; s < n; ++s)
                if (!positive[size_t(p[size_t(s)])]) dr_[w] |= GenSet(1) << s;
            Perm q(static_cast<size_t>(N));
            for (int r = 0; r < N; ++r) q[size_t(p[size_t(r)])] = r;
            inv_[w] = byKey.at(key(q));
            for (int i = 0; i < n; ++i) {
                std::vector<int> kl(static_cast<size_t>(n)), kr(static_cast<size_t>(n));
                for (int j = 0; j < n; ++j) {
                    kl[size_t(j)] = sperm[size_t(i)][size_t(p[size_t(j)])];
                    kr[size_t(j)] = p[size_t(sperm[size_t(i)][size_t(j)])];
                }
                lmul_[size_t(i)][w] = byKey.at(kl);
                rmul_[size_t(i)][w] = byKey.at(kr);
            }
        }
        w0_ = int(std::max_element(len_.begin(), len_.end()) - len_.begin());
        weight_.assign(W, 0);
        supp_.assign(W, 0);
        for (size_t w = 1; w < W; ++w) {
            int s = std::countr_zero(dl_[w]);
            int p = lmul_[size_t(s)][w];
            weight_[w] = weight_[size_t(p)] + d_.L[size_t(s)];
            supp_[w] = supp_[size_t(p)] | (GenSet(1) << s);
        }
    }

    CoxeterDatum d_;
    std::vector<int> len_, inv_, weight_;
    std::vector<GenSet> dl_, dr_, supp_;
    std::vector<std::vector<int>> lmul_, rmul_;
    int w0_ = 0;
};

}  // namespace hecke
