#pragma once

#include "hecke/wgraph.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace hecke {

using json = nlohmann::json;

inline json genset_json(GenSet I) {
    json a = json::array();
    for (int s : members(I)) a.push_back(s);
    return a;
}

inline GenSet genset_from_json(const json& a) {
    GenSet I = 0;
    for (auto& s : a) {
        int k = s.get<int>();
        if (k < 0 || k >= 32) throw std::invalid_argument("generator index out of range");
        I |= GenSet(1) << k;
    }
    return I;
}

template <class F>
json wgraph_to_json(const WGraph<F>& G) {
    json j;
    j["group"] = G.group;
    CoxeterDatum d = parse_type(G.group);
    if ((G.parabolic & d.all_generators()) != d.all_generators()) j["parabolic"] = genset_json(G.parabolic & d.all_generators());
    json verts = json::array();
    for (int x = 0; x < G.size(); ++x) verts.push_back({{"id", x}, {"label", genset_json(G.labels[size_t(x)])}});
    j["vertices"] = verts;
    json edges = json::array();
    for (auto& [k, w] : G.edges) edges.push_back({{"s", k[0]}, {"from", k[2]}, {"to", k[1]}, {"weight", w.str()}});
    j["edges"] = edges;
    return j;
}

template <class F>
WGraph<F> wgraph_from_json(const json& j) {
    WGraph<F> G;
    G.group = j.at("group").get<std::string>();
    CoxeterDatum d = parse_type(G.group);
    if (j.contains("parabolic")) G.parabolic = genset_from_json(j.at("parabolic"));
    const auto& verts = j.at("vertices");
    G.labels.assign(verts.size(), 0);
    std::vector<char> seen(verts.size(), 0);
    for (auto& v : verts) {
        int id = v.at("id").get<int>();
        if (id < 0 || size_t(id) >= verts.size() || seen[size_t(id)])
            throw std::invalid_argument("vertex ids must be 0..n-1 without repetition");
        seen[size_t(id)] = 1;
        G.labels[size_t(id)] = genset_from_json(v.at("label"));
    }
    for (auto& e : j.at("edges")) {
        Laurent<F> w = parse_laurent<F>(e.at("weight").get<std::string>());
        int x = e.at("to").get<int>(), y = e.at("from").get<int>();
        if (x < 0 || y < 0 || x >= G.size() || y >= G.size()) throw std::invalid_argument("edge endpoint out of range");
        G.set_edge(e.at("s").get<int>(), x, y, w);
    }
    return G;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

template <class F>
json matrix_json(const LMatrix<F>& A) {
    json rows = json::array();
    for (int i = 0; i < A.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < A.cols(); ++j) r.push_back(A(i, j).str());
        rows.push_back(r);
    }
    return rows;
}

template <class T>
json scalar_matrix_json(const Matrix<T>& A) {
    json rows = json::array();
    for (int i = 0; i < A.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < A.cols(); ++j) r.push_back(to_string(A(i, j)));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace hecke
