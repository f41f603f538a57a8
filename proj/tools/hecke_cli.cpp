#include "hecke/asymptotic.hpp"
#include "hecke/blocks.hpp"
#include "hecke/catalog.hpp"
#include "hecke/wgraph_json.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hecke;

namespace {

struct Options {
    std::string group, weights, pair, subset, out;
    std::vector<std::string> files;
    int limit = 1200;
    bool json = false;
};

struct Result {
    json doc;
    bool pass = true;
    std::string summary;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string group_type(const Options& o) {
    if (o.group.empty()) throw UsageError("--group is required");
    if (o.weights.empty()) return o.group;
    if (o.group.find(':') != std::string::npos) throw UsageError("weights given twice");
    return o.group + ":" + o.weights;
}

const std::string& single_file(const Options& o) {
    if (o.files.size() != 1) throw UsageError("expected exactly one W-graph file");
    return o.files[0];
}

void check_limit(const Group& g, const Options& o) {
    if (g.size() > o.limit)
        throw std::runtime_error("group order " + std::to_string(g.size()) + " exceeds h-table limit " + std::to_string(o.limit));
}

template <class Fn>
Result with_field(const std::string& type, Fn&& fn) {
    if (parse_type(type).needs_sqrt5) return fn.template operator()<QSqrt5>();
    return fn.template operator()<Rational>();
}

json genset_counts_json(const std::map<GenSet, int>& m) {
    json j = json::object();
    for (auto& [I, n] : m) j[genset_string(I)] = n;
    return j;
}

json element_json(const Group& g, int w) { return {{"index", w}, {"word", g.word_string(w)}}; }

template <class F>
json representation_json(const Representation<F>& R) {
    json T = json::array();
    for (auto& M : R.T) T.push_back(matrix_json(M));
    return {{"dim", R.dim}, {"T", T}};
}

template <class F>
json scalar_list(const std::vector<F>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(to_string(x));
    return a;
}

// ---- group-level commands ----

Result cmd_group(const Options& o) {
    Group g(group_type(o));
    const auto& d = g.datum();
    Result r;
    json elems = json::array();
    for (int w = 0; w < g.size(); ++w)
        elems.push_back({{"index", w},
                         {"word", g.word_string(w)},
                         {"length", g.length(w)},
                         {"weight", g.weight(w)},
                         {"left_descents", genset_json(g.left_descents(w))},
                         {"right_descents", genset_json(g.right_descents(w))}});
    r.doc = {{"type", d.type}, {"rank", g.rank()}, {"order", g.size()}, {"L", d.L},
             {"coxeter_matrix", d.m}, {"w0", element_json(g, g.longest())}, {"elements", elems}};
    r.summary = d.type + ": order " + std::to_string(g.size()) + ", w0 = " + g.word_string(g.longest());
    return r;
}

Result cmd_kl(const Options& o) {
    Group g(group_type(o));
    KL kl(g);
    Result r;
    if (o.pair == "w0-col") {
        int w0 = g.longest();
        json col = json::array();
        int ones = 0;
        for (int x = 0; x < g.size(); ++x) {
            Poly p = kl.pstar(x, w0);
            Poly P = p.shift(g.weight(w0) - g.weight(x));
            bool one = P == Poly(Rational(1));
            ones += one;
            col.push_back({{"x", x}, {"word", g.word_string(x)}, {"pstar", p.str()}, {"P", P.str()}});
        }
        r.pass = ones == g.size();
        r.doc = {{"w", element_json(g, w0)}, {"column", col}, {"all_ones", r.pass}};
        r.summary = "P_{x,w0} = 1 for " + std::to_string(ones) + " of " + std::to_string(g.size()) + " elements";
        return r;
    }
    if (!o.pair.empty()) {
        int y = 0, w = 0;
        char comma = 0;
        std::istringstream in(o.pair);
        if (!(in >> y >> comma >> w) || comma != ',' || y < 0 || w < 0 || y >= g.size() || w >= g.size())
            throw UsageError("--pair expects w0-col or y,w with element indices");
        json mu = json::object();
        for (int s = 0; s < g.rank(); ++s) mu[std::to_string(s)] = kl.mu(y, w, s).str();
        r.doc = {{"y", element_json(g, y)}, {"w", element_json(g, w)}, {"pstar", kl.pstar(y, w).str()}, {"mu", mu}};
        r.summary = "P*_{" + g.word_string(y) + "," + g.word_string(w) + "} = " + kl.pstar(y, w).str();
        return r;
    }
    json table = json::array(), mus = json::array();
    for (int w = 0; w < g.size(); ++w) {
        for (int y : g.bruhat_interval(0, w)) table.push_back({{"y", y}, {"w", w}, {"pstar", kl.pstar(y, w).str()}});
        for (int s = 0; s < g.rank(); ++s)
            for (auto& [z, m] : kl.mu_list(w, s)) mus.push_back({{"y", z}, {"w", w}, {"s", s}, {"mu", m.str()}});
    }
    r.doc = {{"type", g.datum().type}, {"pstar", table}, {"mu", mus}};
    r.summary = std::to_string(table.size()) + " Bruhat pairs, " + std::to_string(mus.size()) + " mu entries";
    return r;
}

json partition_json(const CellPartition& c) {
    json below = json::array();
    for (auto& row : c.below) {
        json b = json::array();
        for (char x : row) b.push_back(bool(x));
        below.push_back(b);
    }
    return {{"blocks", c.blocks}, {"below", below}};
}

Result cmd_cells(const Options& o) {
    Group g(group_type(o));
    KL kl(g);
    Result r;
    auto L = kl.cells(CellKind::Left), R = kl.cells(CellKind::Right), T = kl.cells(CellKind::TwoSided);
    r.doc = {{"left", partition_json(L)}, {"right", partition_json(R)}, {"two_sided", partition_json(T)}};
    r.summary = std::to_string(L.blocks.size()) + " left, " + std::to_string(R.blocks.size()) + " right, " +
                std::to_string(T.blocks.size()) + " two-sided cells";
    return r;
}

Result cmd_compat(const Options& o) {
    Group g(group_type(o));
    Result r;
    json edges = json::array();
    int transversal = 0;
    for (auto& e : compatibility_graph(g.datum())) {
        edges.push_back({{"to", genset_json(e.to)}, {"from", genset_json(e.from)}, {"transversal", e.transversal}});
        transversal += e.transversal;
    }
    r.doc = {{"edges", edges}};
    r.summary = std::to_string(edges.size()) + " edges, " + std::to_string(transversal) + " transversal";
    return r;
}

// ---- W-graph commands ----

template <class F>
Result wgraph_validate(const WGraph<F>& G) {
    Group g = group_of(G);
    Result r;
    auto v = validate_wgraph(G, g);
    auto geck = is_geck(G, g);
    r.pass = v.ok();
    r.doc = {{"support", v.support}, {"quadratic", v.quadratic}, {"braid", v.braid}, {"routes_agree", v.routes_agree},
             {"failure", v.failure}, {"geck", geck.ok}, {"geck_problems", geck.problems}, {"valid", r.pass}};
    r.summary = r.pass ? "valid W-graph" + std::string(geck.ok ? " (Geck)" : "") : "invalid: " + v.failure;
    return r;
}

template <class F>
Result wgraph_command(const std::string& sub, const WGraph<F>& G, const Options& o) {
    Group g = group_of(G);
    Result r;
    if (sub == "validate") return wgraph_validate(G);
    if (sub == "matrices") {
        auto R = wgraph_matrices(G, g);
        r.doc = representation_json(R);
        r.summary = std::to_string(R.dim) + "-dimensional, " + std::to_string(R.T.size()) + " generators";
    } else if (sub == "dual") {
        r.doc = wgraph_to_json(dual_wgraph(G, g));
        r.summary = "dual W-graph on " + std::to_string(G.size()) + " vertices";
    } else if (sub == "restrict") {
        if (o.subset.empty()) throw UsageError("restrict needs --subset");
        GenSet J = 0;
        std::istringstream in(o.subset);
        for (std::string tok; std::getline(in, tok, ',');) J |= GenSet(1) << std::stoi(tok);
        r.doc = wgraph_to_json(parabolic_restrict(G, g, J));
        r.summary = "restricted to " + genset_string(J);
    } else if (sub == "cells") {
        auto c = wgraph_cells(G);
        json reach = json::array();
        for (auto& row : c.reach) {
            json b = json::array();
            for (char x : row) b.push_back(bool(x));
            reach.push_back(b);
        }
        r.doc = {{"components", c.components}, {"reach", reach}};
        r.summary = std::to_string(c.components.size()) + " cells";
    } else if (sub == "omegagy") {
        auto rel = omega_gy_relations_check(G, g);
        r.pass = rel.ok;
        r.doc = {{"ok", rel.ok}, {"checked", rel.checked}, {"failures", rel.failures}};
        r.summary = std::to_string(rel.checked) + " relations checked, " + std::to_string(rel.failures.size()) + " failures";
    } else {
        throw UsageError("unknown wgraph subcommand " + sub);
    }
    return r;
}

template <class F>
F field_of(const WGraph<F>&);

template <class Fn>
Result with_graph_file(const std::string& path, Fn&& fn) {
    json j = read_json_file(path);
    std::string type = j.at("group").get<std::string>();
    if (parse_type(type).needs_sqrt5) return fn(wgraph_from_json<QSqrt5>(j));
    return fn(wgraph_from_json<Rational>(j));
}

Result cmd_wgraph(const std::string& sub, const Options& o) {
    if (sub == "klgraph" || (sub == "omegagy" && o.files.empty())) {
        std::string type = group_type(o);
        return with_field(type, [&]<class F>() {
            Group g(type);
            KL kl(g);
            WGraph<F> G = kl_wgraph<F>(kl);
            if (sub == "omegagy") return wgraph_command<F>(sub, G, o);
            Result r;
            r.doc = wgraph_to_json(G);
            r.summary = "KL W-graph of " + type + " on " + std::to_string(G.size()) + " vertices";
            return r;
        });
    }
    return with_graph_file(single_file(o), [&](const auto& G) { return wgraph_command(sub, G, o); });
}

// ---- balancing and leading coefficients ----

Result cmd_balance(const Options& o, bool leading) {
    return with_graph_file(single_file(o), [&](const auto& G) {
        using F = decltype(field_of(G));
        Group g = group_of(G);
        auto B = balance(wgraph_matrices(G, g), g);
        Result r;
        bool ok = is_balanced(B.rep, g, B.data.a_value).ok;
        r.pass = ok;
        if (leading) {
            json lead = json::array();
            for (auto& [w, c] : B.data.leading) lead.push_back({{"w", element_json(g, w)}, {"c", scalar_matrix_json(c)}});
            r.doc = {{"a_value", B.data.a_value}, {"leading", lead}, {"balanced", ok}};
            r.summary = "a = " + std::to_string(B.data.a_value) + ", " + std::to_string(lead.size()) + " nonzero leading coefficients";
        } else {
            r.doc = {{"a_value", B.data.a_value}, {"D", scalar_list<F>(B.data.D)}, {"Q", matrix_json(B.data.Q)},
                     {"balanced", ok}, {"degrees", B.data.degrees}, {"over_F", B.data.over_F}};
            r.summary = std::string(ok ? "balanced" : "not balanced") + ", a = " + std::to_string(B.data.a_value);
        }
        return r;
    });
}

// ---- asymptotic algebra ----

Result cmd_jdata(const Options& o) {
    std::string type = group_type(o);
    return with_field(type, [&]<class F>() {
        Group g(type);
        check_limit(g, o);
        KL kl(g);
        std::vector<Irrep<F>> reps;
        for (auto& G : kl_cell_irreps<F>(kl)) reps.push_back(make_irrep(wgraph_matrices(G, g), g));
        auto J = gamma_n_table(reps, g);
        json gamma = json::array();
        for (auto& [xy, row] : J.gamma)
            for (auto& [z, c] : row) gamma.push_back({xy.first, xy.second, z, to_string(c)});
        Result r;
        r.doc = {{"gamma", gamma}, {"n", scalar_list<F>(J.n)}, {"duflo", J.duflo}, {"f", scalar_list<F>(J.f)}};
        r.summary = std::to_string(gamma.size()) + " nonzero gamma, " + std::to_string(J.duflo.size()) + " Duflo involutions";
        return r;
    });
}

Result cmd_cellrep(const Options& o) {
    std::string type = group_type(o);
    return with_field(type, [&]<class F>() {
        Group g(type);
        check_limit(g, o);
        KL kl(g);
        Result r;
        json cells = json::array();
        std::map<std::string, int> verdicts;
        for (auto& G : kl_left_cell_graphs<F>(kl)) {
            auto rep = geck_mueller_check(G, g, kl);
            bool ok = rep.balanced && rep.same_character && rep.psi_is_rep;
            r.pass = r.pass && ok;
            ++verdicts[rep.verdict];
            cells.push_back({{"dim", G.size()}, {"balanced", rep.balanced}, {"a", rep.a},
                             {"same_character", rep.same_character}, {"psi_is_rep", rep.psi_is_rep}, {"verdict", rep.verdict}});
        }
        r.doc = {{"cells", cells}};
        for (auto& [v, n] : verdicts) r.summary += (r.summary.empty() ? "" : ", ") + std::to_string(n) + " " + v;
        return r;
    });
}

Result cmd_cellbasis(const Options& o) {
    std::string type = group_type(o);
    Group g(type);
    if (g.datum().needs_sqrt5) throw UsageError("cellbasis is implemented over Q only");
    check_limit(g, o);
    KL kl(g);
    std::vector<Irrep<Rational>> reps;
    for (auto& G : kl_cell_irreps<Rational>(kl)) reps.push_back(make_irrep(wgraph_matrices(G, g), g));
    auto cd = cell_basis(reps, kl);
    json basis = json::array();
    for (auto& e : cd.basis) {
        json c = json::array();
        for (auto& [w, x] : e.coeffs) c.push_back({{"w", w}, {"coeff", to_string(x)}});
        basis.push_back({{"lambda", e.lambda}, {"s", e.s}, {"t", e.t}, {"C", c}});
    }
    Result r;
    r.pass = cd.c1 && cd.c2 && cd.c3;
    r.doc = {{"basis", basis}, {"family", cd.family}, {"C1", cd.c1}, {"C2", cd.c2}, {"C3", cd.c3}, {"failure", cd.failure}};
    r.summary = std::to_string(basis.size()) + " basis elements; C1 " + (cd.c1 ? "ok" : "FAIL") + ", C2 " +
                (cd.c2 ? "ok" : "FAIL") + ", C3 " + (cd.c3 ? "ok" : "FAIL");
    return r;
}

// ---- block structure ----

template <class F>
json block_report_json(const LMatrix<F>& A, const BlockReport<F>& b) {
    json blocks = json::array(), off = json::array();
    for (auto& [I, n] : b.row_blocks) blocks.push_back({genset_string(I), n});
    for (auto& [IJ, m] : b.offdiag_residues)
        off.push_back({{"I", genset_string(IJ.first)}, {"J", genset_string(IJ.second)}, {"residue", scalar_matrix_json(m)}});
    return {{"matrix", matrix_json(A)}, {"blocks", blocks}, {"offdiag_residues", off},
            {"triangular", b.triangular}, {"diagonal", b.diagonal}};
}

template <class F>
Result blocks_pair(const WGraph<F>& G1, const WGraph<F>& G2) {
    if (G1.group != G2.group) throw UsageError("W-graphs of different groups");
    Group g = group_of(G1);
    auto R1 = wgraph_matrices(G1, g), R2 = wgraph_matrices(G2, g);
    Result r;
    json inter = json::array(), forms = json::array();
    bool diagonal = true;
    for (auto& A : intertwiner_space(R1, R2)) {
        auto b = block_report(A, G2.labels, G1.labels);
        diagonal = diagonal && b.diagonal;
        inter.push_back(block_report_json(A, b));
    }
    for (auto& B : invariant_form_space(R1)) {
        auto b = block_report(B, G1.labels, G1.labels);
        diagonal = diagonal && b.diagonal;
        forms.push_back(block_report_json(B, b));
    }
    json cert = nullptr;
    bool cert_ok = true;
    if (G1.size() == G2.size()) {
        if (auto c = omega_iso_certificate(G1, G2, g)) {
            cert = {{"A", matrix_json(c->A)}, {"e_residual", c->e_residual}, {"x_residual", c->x_residual},
                    {"ok", c->ok}, {"verdict", c->verdict}};
            cert_ok = c->ok;
        }
    }
    r.pass = diagonal && cert_ok;
    r.doc = {{"intertwiners", inter}, {"invariant_forms", forms}, {"diagonal", diagonal}, {"certificate", cert}};
    r.summary = std::to_string(inter.size()) + " intertwiners, " + std::to_string(forms.size()) + " forms; diagonality " +
                (diagonal ? "pass" : "FAIL") + "; certificate " +
                (cert.is_null() ? "absent" : cert_ok ? "ok" : "FAILED");
    return r;
}

Result cmd_blocks(const Options& o) {
    if (o.files.size() != 2) throw UsageError("blocks expects two W-graph files");
    json j1 = read_json_file(o.files[0]), j2 = read_json_file(o.files[1]);
    std::string type = j1.at("group").get<std::string>();
    if (parse_type(type).needs_sqrt5) return blocks_pair(wgraph_from_json<QSqrt5>(j1), wgraph_from_json<QSqrt5>(j2));
    return blocks_pair(wgraph_from_json<Rational>(j1), wgraph_from_json<Rational>(j2));
}

Result cmd_labels(const Options& o) {
    return with_graph_file(single_file(o), [&](const auto& G) {
        Group g = group_of(G);
        auto R = wgraph_matrices(G, g);
        auto chr = label_multiset_from_character(R, g);
        auto eig = eigenspace_label_multiplicities(R, g);
        auto ab = a_bound_check(R, g);
        Result r;
        r.pass = chr == eig && chr == label_counts(G);
        r.doc = {{"character", genset_counts_json(chr)}, {"eigenspace", genset_counts_json(eig)},
                 {"graph", genset_counts_json(label_counts(G))}, {"agree", r.pass},
                 {"a_bound", {{"a", ab.a}, {"bound", ab.bound}, {"slack", ab.slack}, {"ok", ab.ok}}}};
        r.summary = std::string(r.pass ? "label multisets agree" : "label multisets DIFFER") + "; a = " +
                    std::to_string(ab.a) + ", bound " + std::to_string(ab.bound);
        return r;
    });
}

// ---- fixture catalogue ----

std::vector<std::pair<std::string, json>> catalogue() {
    std::vector<std::pair<std::string, json>> out;
    auto name = [](std::string t) {
        std::string s;
        for (char c : t)
            if (std::isalnum(static_cast<unsigned char>(c))) s += char(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    for (const char* t : {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "I2(3)", "I2(4)", "I2(6)"}) {
        out.emplace_back(name(t) + "_trivial", wgraph_to_json(trivial_graph<Rational>(t)));
        out.emplace_back(name(t) + "_sign", wgraph_to_json(sign_graph<Rational>(t)));
    }
    for (const char* t : {"I2(5)", "H3"}) {
        out.emplace_back(name(t) + "_trivial", wgraph_to_json(trivial_graph<QSqrt5>(t)));
        out.emplace_back(name(t) + "_sign", wgraph_to_json(sign_graph<QSqrt5>(t)));
        out.emplace_back(name(t) + "_reflection", wgraph_to_json(reflection_graph<QSqrt5>(t)));
    }
    Group A3("A3");
    out.emplace_back("a2_reflection", wgraph_to_json(reflection_graph<Rational>("A2")));
    out.emplace_back("a2_exterior2", wgraph_to_json(sign_graph<Rational>("A2")));
    out.emplace_back("a3_reflection", wgraph_to_json(reflection_graph<Rational>("A3")));
    out.emplace_back("a3_exterior2", wgraph_to_json(dual_wgraph(reflection_graph<Rational>("A3"), A3)));
    out.emplace_back("a3_exterior3", wgraph_to_json(sign_graph<Rational>("A3")));
    auto table = b3_table<Rational>();
    for (size_t i = 0; i < table.size(); ++i) out.emplace_back("b3_chi" + std::to_string(i + 1), wgraph_to_json(table[i]));
    out.emplace_back("b3_chi9_conj", wgraph_to_json(b3_chi9_conjugate<Rational>()));
    return out;
}

Result cmd_fixtures(const Options& o) {
    std::filesystem::path dir = o.out.empty() ? "fixtures" : o.out;
    std::filesystem::create_directories(dir);
    Result r;
    json names = json::array();
    for (auto& [n, j] : catalogue()) {
        std::ofstream f(dir / (n + ".json"));
        f << j.dump(2) << "\n";
        if (!f) throw std::runtime_error("cannot write " + (dir / (n + ".json")).string());
        names.push_back(n);
    }
    r.doc = {{"directory", dir.string()}, {"fixtures", names}};
    r.summary = "wrote " + std::to_string(names.size()) + " fixtures to " + dir.string();
    return r;
}

Result selftest() {
    Result r;
    json rows = json::array();
    int failed = 0;
    for (auto& [n, j] : catalogue()) {
        std::string type = j.at("group").get<std::string>();
        auto check = [&](const auto& G) {
            Group g = group_of(G);
            bool ok = validate_wgraph(G, g).ok() && is_geck(G, g).ok;
            auto R = wgraph_matrices(G, g);
            ok = ok && label_multiset_from_character(R, g) == label_counts(G);
            ok = ok && wgraph_to_json(G) == j;
            return ok;
        };
        bool ok = parse_type(type).needs_sqrt5 ? check(wgraph_from_json<QSqrt5>(j)) : check(wgraph_from_json<Rational>(j));
        failed += !ok;
        rows.push_back({{"fixture", n}, {"ok", ok}});
    }
    r.pass = failed == 0;
    r.doc = {{"fixtures", rows}, {"failed", failed}};
    r.summary = "selftest: " + std::to_string(rows.size() - size_t(failed)) + "/" + std::to_string(rows.size()) + " fixtures pass";
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kazhdan-Lusztig data, W-graphs and block structure"};
    app.require_subcommand(0, 1);
    Options o;
    bool self = false;
    app.add_option("--group", o.group, "Coxeter type, e.g. A3, B3:2,1,1, I2(5)");
    app.add_option("--weights", o.weights, "weights L(s) per generator, e.g. 2,1,1");
    app.add_option("--limit-h-table", o.limit, "largest group order for h-table based commands");
    app.add_flag("--json", o.json, "print the JSON document instead of a summary");
    app.add_flag("--selftest", self, "validate every fixture of the catalogue");
    app.add_option("--out", o.out, "write the JSON document (or fixtures) here");

    std::string wsub;
    std::map<std::string, CLI::App*> cmds;
    for (auto [name, help] : std::vector<std::pair<const char*, const char*>>{
             {"group", "element table"},
             {"kl", "P* and mu tables"},
             {"cells", "left, right and two-sided cells"},
             {"compat", "compatibility graph"},
             {"balance", "balance a W-graph representation"},
             {"leading", "leading coefficients"},
             {"jdata", "gamma, n and Duflo involutions"},
             {"cellrep", "cell representations of the left cells"},
             {"cellbasis", "cellular basis and axioms"},
             {"blocks", "block structure of intertwiners and forms"},
             {"labels", "label multiset from the character"},
             {"fixtures", "write the fixture catalogue"},
             {"wgraph", "W-graph tools"}}) {
        CLI::App* c = app.add_subcommand(name, help);
        c->fallthrough();
        cmds[name] = c;
    }
    cmds["kl"]->add_option("--pair", o.pair, "w0-col or y,w");
    for (const char* n : {"balance", "leading", "blocks", "labels"}) cmds[n]->add_option("files", o.files)->check(CLI::ExistingFile);
    auto* wg = cmds["wgraph"];
    wg->add_option("action", wsub, "validate|matrices|dual|restrict|cells|klgraph|omegagy")
        ->required()
        ->check(CLI::IsMember({"validate", "matrices", "dual", "restrict", "cells", "klgraph", "omegagy"}));
    wg->add_option("files", o.files)->check(CLI::ExistingFile);
    wg->add_option("--subset", o.subset, "generators kept by restrict, e.g. 0,2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Result r;
        if (self) r = selftest();
        else if (cmds["group"]->parsed()) r = cmd_group(o);
        else if (cmds["kl"]->parsed()) r = cmd_kl(o);
        else if (cmds["cells"]->parsed()) r = cmd_cells(o);
        else if (cmds["compat"]->parsed()) r = cmd_compat(o);
        else if (cmds["balance"]->parsed()) r = cmd_balance(o, false);
        else if (cmds["leading"]->parsed()) r = cmd_balance(o, true);
        else if (cmds["jdata"]->parsed()) r = cmd_jdata(o);
        else if (cmds["cellrep"]->parsed()) r = cmd_cellrep(o);
        else if (cmds["cellbasis"]->parsed()) r = cmd_cellbasis(o);
        else if (cmds["blocks"]->parsed()) r = cmd_blocks(o);
        else if (cmds["labels"]->parsed()) r = cmd_labels(o);
        else if (cmds["fixtures"]->parsed()) r = cmd_fixtures(o);
        else if (cmds["wgraph"]->parsed()) r = cmd_wgraph(wsub, o);
        else {
            std::cerr << app.help();
            return 2;
        }
        if (!o.out.empty() && !cmds["fixtures"]->parsed()) {
            std::ofstream f(o.out);
            f << r.doc.dump(2) << "\n";
            if (!f) throw std::runtime_error("cannot write " + o.out);
        }
        if (o.json) std::cout << r.doc.dump(2) << "\n";
        else std::cout << (r.pass ? "pass: " : "FAIL: ") << r.summary << "\n";
        return r.pass ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
