#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <vector>

namespace hecke {

struct Condensation {
    // Components in topological order of the condensation (sources first,
    // ties broken by smallest contained vertex); vertices ascending inside.
    std::vector<std::vector<int>> components;
    std::vector<int> component_of;
    // reach[a][b]: component b is reachable from component a (reflexive).
    std::vector<std::vector<char>> reach;
};

// Tarjan's algorithm, iterative, followed by a Kahn sort of the condensation.
inline Condensation strongly_connected(const std::vector<std::vector<int>>& adj) {
    const int n = int(adj.size());
    std::vector<int> idx(size_t(n), -1), low(size_t(n), 0), comp(size_t(n), -1), stack;
    std::vector<char> on(size_t(n), 0);
    int counter = 0, ncomp = 0;
    std::vector<std::pair<int, size_t>> call;
    for (int root = 0; root < n; ++root) {
        if (idx[size_t(root)] >= 0) continue;
        call.push_back({root, 0});
        idx[size_t(root)] = low[size_t(root)] = counter++;
        stack.push_back(root);
        on[size_t(root)] = 1;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < adj[size_t(v)].size()) {
                int w = adj[size_t(v)][i++];
                if (idx[size_t(w)] < 0) {
                    idx[size_t(w)] = low[size_t(w)] = counter++;
                    stack.push_back(w);
                    on[size_t(w)] = 1;
                    call.push_back({w, 0});
                } else if (on[size_t(w)]) {
                    low[size_t(v)] = std::min(low[size_t(v)], idx[size_t(w)]);
                }
                continue;
            }
            if (low[size_t(v)] == idx[size_t(v)]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[size_t(w)] = 0;
                    comp[size_t(w)] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) {
                int p = call.back().first;
                low[size_t(p)] = std::min(low[size_t(p)], low[size_t(done)]);
            }
        }
    }
    std::vector<std::vector<int>> members(static_cast<size_t>(ncomp));
    for (int v = 0; v < n; ++v) members[size_t(comp[size_t(v)])].push_back(v);
    std::vector<std::vector<int>> cadj(static_cast<size_t>(ncomp));
    std::vector<int> indeg(size_t(ncomp), 0);
    for (int v = 0; v < n; ++v)
        for (int w : adj[size_t(v)]) {
            int a = comp[size_t(v)], b = comp[size_t(w)];
            if (a != b) cadj[size_t(a)].push_back(b);
        }
    for (auto& e : cadj) {
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        for (int b : e) ++indeg[size_t(b)];
    }
    using Item = std::pair<int, int>;  // (smallest vertex, component)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
    for (int c = 0; c < ncomp; ++c)
        if (indeg[size_t(c)] == 0) ready.push({members[size_t(c)][0], c});
    std::vector<int> order, rank(static_cast<size_t>(ncomp));
    while (!ready.empty()) {
        int c = ready.top().second;
        ready.pop();
        rank[size_t(c)] = int(order.size());
        order.push_back(c);
        for (int b : cadj[size_t(c)])
            if (--indeg[size_t(b)] == 0) ready.push({members[size_t(b)][0], b});
    }
    Condensation out;
    out.component_of.assign(size_t(n), 0);
    for (int c : order) out.components.push_back(members[size_t(c)]);
    for (int v = 0; v < n; ++v) out.component_of[size_t(v)] = rank[size_t(comp[size_t(v)])];
    out.reach.assign(size_t(ncomp), std::vector<char>(size_t(ncomp), 0));
    // reverse topological order: reach(a) = {a} union reach of successors
    for (int k = ncomp - 1; k >= 0; --k) {
        int c = order[size_t(k)];
        auto& row = out.reach[size_t(k)];
        row[size_t(k)] = 1;
        for (int b : cadj[size_t(c)]) {
            auto& other = out.reach[size_t(rank[size_t(b)])];
            for (int j = 0; j < ncomp; ++j)
                if (other[size_t(j)]) row[size_t(j)] = 1;
        }
    }
    return out;
}

}  // namespace hecke
