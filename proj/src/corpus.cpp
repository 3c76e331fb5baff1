#include "defkernel/corpus.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "defkernel/parser.hpp"

namespace defkernel {

namespace {

std::string param(const CorpusParams& params, const std::string& key, const std::string& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::size_t param_size(const CorpusParams& params, const std::string& key, std::size_t fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return static_cast<std::size_t>(std::stoul(it->second));
}

// "a:b,c:d" -> {(a,b), (c,d)}
std::vector<std::pair<std::string, std::string>> parse_edges(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
            throw InputError("bad edge '" + item + "', expected 'from:to'");
        out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
    }
    if (out.empty()) throw InputError("empty edge list");
    return out;
}

std::vector<std::string> edge_vertices(const std::vector<std::pair<std::string, std::string>>& es) {
    std::vector<std::string> vs;
    auto add = [&](const std::string& v) {
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    };
    for (const auto& [a, b] : es) {
        add(a);
        add(b);
    }
    return vs;
}

std::size_t atom1(const Problem& p, const std::string& pred, const std::string& a) {
    return p.universe().require_index(pred, {p.context().require_element(a)});
}

std::size_t atom2(const Problem& p, const std::string& pred, const std::string& a,
                  const std::string& b) {
    return p.universe().require_index(
        pred, {p.context().require_element(a), p.context().require_element(b)});
}

void append_expectations(std::ostringstream& out, const Problem& problem, const AtomSet& defined,
                         bool saturated) {
    out << "expect defined {";
    defined.for_each([&](std::size_t i) { out << " " << problem.label(i); });
    out << " } ;\n";
    out << "expect saturated = " << (saturated ? "true" : "false") << " ;\n";
}

CorpusEntry finish(std::string name, std::string text, CorpusExpectation expectation) {
    Problem problem = parse_problem(text);
    return CorpusEntry{std::move(name), std::move(text), std::move(problem),
                       std::move(expectation)};
}

// --------------------------------------------------------------- tc --------

CorpusEntry build_tc(const CorpusParams& params) {
    const auto edges = parse_edges(param(params, "edges", "a:a,b:c,c:b"));
    const auto vertices = edge_vertices(edges);

    std::ostringstream out;
    out << "# reachability (transitive closure) of a directed graph\n";
    out << "domain";
    for (const auto& v : vertices) out << " " << v;
    out << " ;\n";
    out << "pred G/2 = { ";
    for (std::size_t i = 0; i < edges.size(); ++i)
        out << (i ? ", " : "") << "(" << edges[i].first << "," << edges[i].second << ")";
    out << " } ;\n";
    out << "pred R/2 ;\n";
    out << "define {\n";
    out << "  R(x,y) <- G(x,y).\n";
    out << "  R(x,y) <- exists z: (R(x,z) & R(z,y)).\n";
    out << "}\n";

    // Oracle: Warshall-style closure over the vertex list.
    const std::size_t n = vertices.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    auto vid = [&](const std::string& v) {
        return static_cast<std::size_t>(
            std::find(vertices.begin(), vertices.end(), v) - vertices.begin());
    };
    for (const auto& [a, b] : edges) reach[vid(a)][vid(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;

    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j]) defined.set(atom2(probe, "R", vertices[i], vertices[j]));
    append_expectations(out, probe, defined, true);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = true;
    AtomSet f = defined.complement();
    expectation.defined_false = f;
    expectation.notes = "positive and monotone; the total relation is its only dependency";
    return finish("tc", out.str(), std::move(expectation));
}

// -------------------------------------------------------------- even -------

CorpusEntry build_even(const CorpusParams& params) {
    const std::size_t n = param_size(params, "n", 6);
    const std::string order = param(params, "order", "standard");
    if (order != "standard" && order != "swapped")
        throw InputError("even: order must be 'standard' or 'swapped'");

    std::ostringstream out;
    out << "# even numbers on the segment 0.." << n << " over an explicit successor relation\n";
    out << "domain";
    for (std::size_t i = 0; i <= n; ++i) out << " " << i;
    out << " ;\n";
    out << "pred Next/2 = { ";
    for (std::size_t i = 0; i < n; ++i) out << (i ? ", " : "") << "(" << i << "," << (i + 1) << ")";
    out << " } ;\n";
    out << "obj zero = 0 ;\n";
    out << "pred Ev/1 ;\n";
    out << "define {\n";
    out << "  Ev(x) <- x = zero.\n";
    out << "  Ev(y) <- exists x: (Next(x,y) & ~Ev(x)).\n";
    out << "}\n";
    out << "order {\n";
    if (order == "standard") {
        for (std::size_t i = 0; i + 1 <= n; ++i)
            out << "  Ev(" << i << ") < Ev(" << (i + 1) << ").\n";
    } else if (n >= 1) {
        // Ev(1) ≺ Ev(0) ≺ Ev(2) ≺ Ev(3) ≺ ...
        out << "  Ev(1) < Ev(0).\n";
        if (n >= 2) out << "  Ev(0) < Ev(2).\n";
        for (std::size_t i = 2; i + 1 <= n; ++i)
            out << "  Ev(" << i << ") < Ev(" << (i + 1) << ").\n";
    }
    out << "}\n";

    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    for (std::size_t i = 0; i <= n; i += 2) defined.set(atom1(probe, "Ev", std::to_string(i)));
    append_expectations(out, probe, defined, true);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = true;
    expectation.defined_false = defined.complement();
    ExpectedOrderVerdicts verdicts;
    if (order == "standard") {
        verdicts = {true, true, true, true};
        expectation.notes = "ordered definition; the standard order strictly orders it";
    } else {
        verdicts = {false, false, false, false};
        expectation.notes = "the swapped order is not a dependency (Ev(1) reads Ev(0))";
    }
    expectation.order_verdicts = verdicts;
    return finish("even", out.str(), std::move(expectation));
}

// ---------------------------------------------------------- even-next ------

CorpusEntry build_even_next(const CorpusParams& params) {
    const std::size_t n = param_size(params, "n", 2);
    std::ostringstream out;
    out << "# evenness with the successor relation defined as well; beyond iterated induction\n";
    out << "domain";
    for (std::size_t i = 0; i <= n; ++i) out << " " << i;
    out << " ;\n";
    out << "pred Pred/2 = { ";
    for (std::size_t i = 0; i < n; ++i) out << (i ? ", " : "") << "(" << (i + 1) << "," << i << ")";
    out << " } ;\n";
    out << "obj zero = 0 ;\n";
    out << "pred Next/2 ;\n";
    out << "pred Ev/1 ;\n";
    out << "define {\n";
    out << "  Next(x,y) <- Pred(x,y).\n";
    out << "  Ev(x) <- x = zero.\n";
    out << "  Ev(x) <- exists y: (Next(x,y) & ~Ev(y)).\n";
    out << "}\n";

    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    for (std::size_t i = 0; i < n; ++i)
        defined.set(atom2(probe, "Next", std::to_string(i + 1), std::to_string(i)));
    for (std::size_t i = 0; i <= n; i += 2) defined.set(atom1(probe, "Ev", std::to_string(i)));
    append_expectations(out, probe, defined, true);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = true;
    expectation.defined_false = defined.complement();
    expectation.notes = "no relation monotonically orders it, yet every safe induction finds "
                        "the intended set";
    return finish("even-next", out.str(), std::move(expectation));
}

// --------------------------------------------------------------- sat -------

struct PropFormulas {
    // kind 'a' (atom over vocab index l), '~' (l), '&', '|' (l, r)
    struct Node {
        char kind;
        std::size_t l = 0, r = 0;
        std::size_t depth = 0, size = 1;
    };
    std::vector<Node> nodes;
    std::vector<std::string> vocab;

    std::string show(std::size_t i) const {
        const Node& f = nodes[i];
        switch (f.kind) {
        case 'a': return vocab[f.l];
        case '~': return "~(" + show(f.l) + ")";
        case '&': return "(" + show(f.l) + " & " + show(f.r) + ")";
        default: return "(" + show(f.l) + " | " + show(f.r) + ")";
        }
    }

    bool eval(std::size_t structure_mask, std::size_t i) const {
        const Node& f = nodes[i];
        switch (f.kind) {
        case 'a': return (structure_mask >> f.l) & 1;
        case '~': return !eval(structure_mask, f.l);
        case '&': return eval(structure_mask, f.l) && eval(structure_mask, f.r);
        default: return eval(structure_mask, f.l) || eval(structure_mask, f.r);
        }
    }
};

PropFormulas enumerate_formulas(const std::vector<std::string>& vocab, std::size_t max_depth) {
    PropFormulas fs;
    fs.vocab = vocab;
    for (std::size_t v = 0; v < vocab.size(); ++v)
        fs.nodes.push_back({'a', v, 0, 0, 1});
    std::size_t level_start = 0;
    for (std::size_t d = 1; d <= max_depth; ++d) {
        const std::size_t level_end = fs.nodes.size();
        for (std::size_t i = level_start; i < level_end; ++i)
            if (fs.nodes[i].depth == d - 1)
                fs.nodes.push_back({'~', i, 0, d, fs.nodes[i].size + 1});
        for (char kind : {'&', '|'})
            for (std::size_t i = 0; i < level_end; ++i)
                for (std::size_t j = 0; j < level_end; ++j) {
                    if (std::max(fs.nodes[i].depth, fs.nodes[j].depth) != d - 1) continue;
                    fs.nodes.push_back(
                        {kind, i, j, d, fs.nodes[i].size + fs.nodes[j].size + 1});
                }
        level_start = 0;
    }
    return fs;
}

CorpusEntry build_sat(const CorpusParams& params) {
    std::vector<std::string> vocab;
    {
        std::stringstream ss(param(params, "vocab", "P"));
        std::string item;
        while (std::getline(ss, item, ',')) vocab.push_back(item);
    }
    const std::size_t depth = param_size(params, "depth", 2);
    const std::string order = param(params, "order", "sub");
    if (order != "sub" && order != "suball" && order != "size" && order != "depth")
        throw InputError("sat: order must be sub, suball, size, or depth");
    const bool in_range = (vocab.size() == 1 && depth <= 2) || (vocab.size() == 2 && depth <= 1);
    if (!in_range)
        throw InputError("sat: supported instances are one proposition up to depth 2 or two "
                         "propositions up to depth 1");

    const PropFormulas fs = enumerate_formulas(vocab, depth);
    const std::size_t n_structures = std::size_t(1) << vocab.size();

    std::ostringstream out;
    out << "# propositional satisfaction as an inductive definition; order variant '" << order
        << "'\n";
    for (std::size_t i = 0; i < fs.nodes.size(); ++i)
        out << "# f" << i << " = " << fs.show(i) << "\n";
    for (std::size_t s = 0; s < n_structures; ++s) {
        out << "# i" << s << " = {";
        for (std::size_t v = 0; v < vocab.size(); ++v)
            if ((s >> v) & 1) out << " " << vocab[v];
        out << " }\n";
    }
    out << "domain";
    for (std::size_t s = 0; s < n_structures; ++s) out << " i" << s;
    for (std::size_t i = 0; i < fs.nodes.size(); ++i) out << " f" << i;
    out << " ;\n";
    out << "pred Str/1 = { ";
    for (std::size_t s = 0; s < n_structures; ++s) out << (s ? ", " : "") << "(i" << s << ")";
    out << " } ;\n";
    out << "pred AtomF/1 = { ";
    for (std::size_t v = 0; v < vocab.size(); ++v) out << (v ? ", " : "") << "(f" << v << ")";
    out << " } ;\n";
    {
        out << "pred In/2 = { ";
        bool first = true;
        for (std::size_t v = 0; v < vocab.size(); ++v)
            for (std::size_t s = 0; s < n_structures; ++s)
                if ((s >> v) & 1) {
                    out << (first ? "" : ", ") << "(f" << v << ",i" << s << ")";
                    first = false;
                }
        out << " } ;\n";
    }
    auto emit_constructor = [&](const char* name, char kind, bool binary) {
        out << "pred " << name << (binary ? "/3" : "/2") << " = { ";
        bool first = true;
        for (std::size_t i = 0; i < fs.nodes.size(); ++i) {
            if (fs.nodes[i].kind != kind) continue;
            out << (first ? "" : ", ") << "(f" << i << ",f" << fs.nodes[i].l;
            if (binary) out << ",f" << fs.nodes[i].r;
            out << ")";
            first = false;
        }
        out << " } ;\n";
    };
    emit_constructor("IsNot", '~', false);
    emit_constructor("IsAnd", '&', true);
    emit_constructor("IsOr", '|', true);
    out << "pred Sat/2 ;\n";
    out << "define {\n";
    out << "  Sat(i,f) <- Str(i) & AtomF(f) & In(f,i).\n";
    out << "  Sat(i,h) <- Str(i) & exists f: (IsNot(h,f) & ~Sat(i,f)).\n";
    out << "  Sat(i,h) <- Str(i) & exists f: (exists g: (IsAnd(h,f,g) & Sat(i,f) & Sat(i,g))).\n";
    out << "  Sat(i,h) <- Str(i) & exists f: (exists g: (IsOr(h,f,g) & (Sat(i,f) | Sat(i,g)))).\n";
    out << "}\n";

    out << "order {\n";
    auto children = [&](std::size_t h) {
        std::vector<std::size_t> cs;
        if (fs.nodes[h].kind == '~') cs.push_back(fs.nodes[h].l);
        if (fs.nodes[h].kind == '&' || fs.nodes[h].kind == '|') {
            cs.push_back(fs.nodes[h].l);
            if (fs.nodes[h].r != fs.nodes[h].l) cs.push_back(fs.nodes[h].r);
        }
        return cs;
    };
    if (order == "sub") {
        for (std::size_t s = 0; s < n_structures; ++s)
            for (std::size_t h = 0; h < fs.nodes.size(); ++h)
                for (std::size_t c : children(h))
                    out << "  Sat(i" << s << ",f" << c << ") < Sat(i" << s << ",f" << h << ").\n";
    } else if (order == "suball") {
        for (std::size_t s = 0; s < n_structures; ++s)
            for (std::size_t t = 0; t < n_structures; ++t)
                for (std::size_t h = 0; h < fs.nodes.size(); ++h)
                    for (std::size_t c : children(h))
                        out << "  Sat(i" << s << ",f" << c << ") < Sat(i" << t << ",f" << h
                            << ").\n";
    } else {
        auto measure = [&](std::size_t i) {
            return order == "size" ? fs.nodes[i].size : fs.nodes[i].depth;
        };
        for (std::size_t s = 0; s < n_structures; ++s)
            for (std::size_t f = 0; f < fs.nodes.size(); ++f)
                for (std::size_t g = 0; g < fs.nodes.size(); ++g)
                    if (measure(f) < measure(g))
                        out << "  Sat(i" << s << ",f" << f << ") < Sat(i" << s << ",f" << g
                            << ").\n";
    }
    out << "}\n";

    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    for (std::size_t s = 0; s < n_structures; ++s)
        for (std::size_t i = 0; i < fs.nodes.size(); ++i)
            if (fs.eval(s, i))
                defined.set(atom2(probe, "Sat", "i" + std::to_string(s), "f" + std::to_string(i)));
    append_expectations(out, probe, defined, true);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = true;
    expectation.defined_false = defined.complement();
    expectation.order_verdicts = ExpectedOrderVerdicts{true, true, true, true};
    expectation.notes = "ordered definition under each shipped order variant";
    return finish("sat", out.str(), std::move(expectation));
}

// ------------------------------------------------------------ kripke -------

CorpusEntry build_kripke(const CorpusParams&) {
    // Two mutually accessible worlds, one agent; formulas p, ~p, DC p, DC ~p,
    // C p. The declared relation has cycles among the DC atoms.
    std::ostringstream out;
    out << "# multi-agent modal satisfaction with common-knowledge operators\n";
    out << "# fp = p, fnp = ~p, fdp = DC{g1} p, fdnp = DC{g1} ~p, fcp = C{g1} p,\n";
    out << "# fq = q (nowhere true), fdq = DC{g1} q\n";
    out << "domain w1 w2 a1 g1 fp fnp fdp fdnp fcp fq fdq ;\n";
    out << "pred Wld/1 = { (w1), (w2) } ;\n";
    out << "pred PropF/1 = { (fp), (fq) } ;\n";
    out << "pred Lbl/2 = { (w1,fp) } ;\n";
    out << "pred IsNot/2 = { (fnp,fp) } ;\n";
    out << "pred IsDC/3 = { (fdp,g1,fp), (fdnp,g1,fnp), (fdq,g1,fq) } ;\n";
    out << "pred IsC/3 = { (fcp,g1,fp) } ;\n";
    out << "pred CPar/2 = { (fcp,fdnp) } ;\n";
    out << "pred InG/2 = { (a1,g1) } ;\n";
    out << "pred R/3 = { (w1,a1,w2), (w2,a1,w1) } ;\n";
    out << "pred Sat/2 ;\n";
    out << "define {\n";
    out << "  Sat(w,f) <- Wld(w) & PropF(f) & Lbl(w,f).\n";
    out << "  Sat(w,h) <- Wld(w) & exists f: (IsNot(h,f) & ~Sat(w,f)).\n";
    out << "  Sat(w,h) <- Wld(w) & exists g: (exists f: (exists b: (exists v: ("
           "IsDC(h,g,f) & InG(b,g) & R(w,b,v) & Sat(v,f))))).\n";
    out << "  Sat(w,h) <- Wld(w) & exists g: (exists f: (exists b: (exists v: ("
           "IsDC(h,g,f) & InG(b,g) & R(w,b,v) & Sat(v,h))))).\n";
    out << "  Sat(w,h) <- Wld(w) & exists f: (exists g: (exists d: ("
           "IsC(h,g,f) & CPar(h,d) & ~Sat(w,d)))).\n";
    out << "}\n";
    out << "order {\n";
    const std::vector<std::pair<std::string, std::string>> edges = {{"w1", "w2"}, {"w2", "w1"}};
    for (const auto& w : {"w1", "w2"})
        out << "  Sat(" << w << ",fp) < Sat(" << w << ",fnp).\n";
    for (const auto& [w, v] : edges) {
        out << "  Sat(" << v << ",fp) < Sat(" << w << ",fdp).\n";
        out << "  Sat(" << v << ",fnp) < Sat(" << w << ",fdnp).\n";
        out << "  Sat(" << v << ",fq) < Sat(" << w << ",fdq).\n";
        out << "  Sat(" << v << ",fdp) < Sat(" << w << ",fdp).\n";  // cyclic DC layer
        out << "  Sat(" << v << ",fdnp) < Sat(" << w << ",fdnp).\n";
        out << "  Sat(" << v << ",fdq) < Sat(" << w << ",fdq).\n";
    }
    for (const auto& w : {"w1", "w2"})
        out << "  Sat(" << w << ",fdnp) < Sat(" << w << ",fcp).\n";
    out << "}\n";

    // Oracle: direct modal checking; DC = a satisfying world reachable in one
    // or more steps, C = dual.
    const std::vector<std::string> worlds = {"w1", "w2"};
    auto reach_some = [&](std::size_t w, const std::function<bool(std::size_t)>& ok) {
        // BFS over ≥1-step paths.
        std::vector<bool> seen(worlds.size(), false);
        std::vector<std::size_t> frontier;
        auto push_succ = [&](std::size_t u) {
            const std::size_t succ = (u == 0) ? 1 : 0; // w1 <-> w2
            if (!seen[succ]) {
                seen[succ] = true;
                frontier.push_back(succ);
            }
        };
        push_succ(w);
        while (!frontier.empty()) {
            const std::size_t u = frontier.back();
            frontier.pop_back();
            if (ok(u)) return true;
            push_succ(u);
        }
        return false;
    };
    auto holds_p = [&](std::size_t w) { return w == 0; };
    auto holds_np = [&](std::size_t w) { return !holds_p(w); };

    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    for (std::size_t w = 0; w < worlds.size(); ++w) {
        if (holds_p(w)) defined.set(atom2(probe, "Sat", worlds[w], "fp"));
        if (holds_np(w)) defined.set(atom2(probe, "Sat", worlds[w], "fnp"));
        const bool dcp = reach_some(w, holds_p);
        const bool dcnp = reach_some(w, holds_np);
        if (dcp) defined.set(atom2(probe, "Sat", worlds[w], "fdp"));
        if (dcnp) defined.set(atom2(probe, "Sat", worlds[w], "fdnp"));
        if (!dcnp) defined.set(atom2(probe, "Sat", worlds[w], "fcp"));
    }
    append_expectations(out, probe, defined, true);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = true;
    expectation.defined_false = defined.complement();
    expectation.order_verdicts = ExpectedOrderVerdicts{true, true, false, true};
    expectation.notes = "iterated definition; the declared relation has cycles among the DC "
                        "atoms, so it is not a strict order; the self-supporting DC q "
                        "fixpoint makes the defined one non-unique";
    return finish("kripke", out.str(), std::move(expectation));
}

// ------------------------------------------------- propositional set -------

CorpusEntry build_fixed(const std::string& name, const std::string& body,
                        const std::vector<std::string>& defined_atoms, bool saturated,
                        const std::vector<std::string>& false_atoms, bool all_undecided,
                        const std::string& notes,
                        std::optional<ExpectedOrderVerdicts> verdicts = std::nullopt) {
    std::ostringstream out;
    out << body;
    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    for (const auto& a : defined_atoms) defined.set(parse_ground_atom(a, probe));
    append_expectations(out, probe, defined, saturated);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = saturated;
    AtomSet f = probe.empty_set();
    for (const auto& a : false_atoms) f.set(parse_ground_atom(a, probe));
    expectation.defined_false = f;
    expectation.all_defined_atoms_undecided = all_undecided;
    expectation.order_verdicts = verdicts;
    expectation.notes = notes;
    return finish(name, out.str(), std::move(expectation));
}

CorpusEntry build_foo(const CorpusParams& params) {
    const std::size_t n = param_size(params, "n", 2);
    std::ostringstream out;
    out << "# a number is Foo if it is not Foo\n";
    out << "domain";
    for (std::size_t i = 1; i <= n; ++i) out << " d" << i;
    out << " ;\n";
    out << "pred Foo/1 ;\n";
    out << "define {\n  Foo(x) <- ~Foo(x).\n}\n";
    return build_fixed("foo", out.str(), {}, false, {}, true,
                       "paradoxical: every atom is derivable, none safely");
}

CorpusEntry build_mutual(const CorpusParams&) {
    return build_fixed("mutual",
                       "# mutually negative pair\n"
                       "domain u ;\n"
                       "pred P/0 ;\npred Q/0 ;\n"
                       "define {\n  P <- ~Q.\n  Q <- ~P.\n}\n",
                       {}, false, {}, true,
                       "no paradoxical flavour, yet nothing is safely derivable");
}

CorpusEntry build_pq(const CorpusParams&) {
    return build_fixed("pq",
                       "# respects the declared order without following it\n"
                       "domain u ;\n"
                       "pred P/0 ;\npred Q/0 ;\n"
                       "define {\n  Q <- true.\n  P <- Q.\n}\n"
                       "order {\n  P < Q.\n}\n",
                       {"P", "Q"}, true, {}, false,
                       "P is underivable at the start, so deriving Q first respects P < Q",
                       ExpectedOrderVerdicts{false, false, false, false});
}

CorpusEntry build_insensible(const CorpusParams&) {
    return build_fixed("insensible",
                       "# tautological body split into two rules\n"
                       "domain u ;\n"
                       "pred P/0 ;\n"
                       "define {\n  P <- ~P.\n  P <- P.\n}\n"
                       "order {\n}\n",
                       {"P"}, true, {}, false,
                       "defines {P}; the empty order strictly orders it although each rule "
                       "alone reads P",
                       ExpectedOrderVerdicts{true, true, true, true});
}

CorpusEntry build_nonminimal(const CorpusParams&) {
    return build_fixed("nonminimal",
                       "# safely defined structure is a non-minimal fixpoint\n"
                       "domain u ;\n"
                       "pred P/0 ;\npred Q/0 ;\n"
                       "define {\n  Q <- ~P.\n  Q <- P & Q.\n  P <- Q.\n  P <- P.\n}\n",
                       {"P", "Q"}, true, {}, false,
                       "defines {P,Q}; the least fixpoint is {P}");
}

CorpusEntry build_liar(const CorpusParams&) {
    return build_fixed("liar",
                       "# this sentence is false\n"
                       "domain u ;\n"
                       "pred T/0 ;\n"
                       "define {\n  T <- ~T.\n}\n",
                       {}, false, {}, true,
                       "not safely derivable, not strictly underivable: undecided");
}

CorpusEntry build_teller(const CorpusParams&) {
    return build_fixed("teller",
                       "# this sentence is true\n"
                       "domain u ;\n"
                       "pred T/0 ;\n"
                       "define {\n  T <- T.\n}\n",
                       {}, true, {"T"}, false, "strictly underivable: defined false");
}

// -------------------------------------------------------------- term -------

CorpusEntry build_term(const CorpusParams& params) {
    const auto edges = parse_edges(param(params, "edges", "a:b,b:a,c:d"));
    const auto vertices = edge_vertices(edges);
    std::ostringstream out;
    out << "# terminating states of a transition graph\n";
    out << "domain";
    for (const auto& v : vertices) out << " " << v;
    out << " ;\n";
    out << "pred G/2 = { ";
    for (std::size_t i = 0; i < edges.size(); ++i)
        out << (i ? ", " : "") << "(" << edges[i].first << "," << edges[i].second << ")";
    out << " } ;\n";
    out << "pred Term/1 ;\n";
    out << "define {\n  Term(x) <- forall y: (G(x,y) => Term(y)).\n}\n";

    // Oracle: a state is non-terminating iff a cycle is reachable from it.
    const std::size_t n = vertices.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    auto vid = [&](const std::string& v) {
        return static_cast<std::size_t>(
            std::find(vertices.begin(), vertices.end(), v) - vertices.begin());
    };
    for (const auto& [a, b] : edges) reach[vid(a)][vid(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;

    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    for (std::size_t s = 0; s < n; ++s) {
        bool reaches_cycle = false;
        for (std::size_t c = 0; c < n; ++c)
            if ((s == c || reach[s][c]) && reach[c][c]) reaches_cycle = true;
        if (!reaches_cycle) defined.set(atom1(probe, "Term", vertices[s]));
    }
    append_expectations(out, probe, defined, true);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = true;
    expectation.defined_false = defined.complement();
    expectation.notes = "monotone definition with a universally quantified definiens";
    return finish("term", out.str(), std::move(expectation));
}

// -------------------------------------------------------------- grue -------

CorpusEntry build_grue(const CorpusParams& params) {
    const std::size_t n = param_size(params, "n", 5);
    std::ostringstream out;
    out << "# n is grue if n+1 is grue; the declared order fails the parity check\n";
    out << "domain";
    for (std::size_t i = 0; i <= n; ++i) out << " " << i;
    out << " ;\n";
    out << "pred Next/2 = { ";
    for (std::size_t i = 0; i < n; ++i) out << (i ? ", " : "") << "(" << i << "," << (i + 1) << ")";
    out << " } ;\n";
    out << "pred Grue/1 ;\n";
    out << "define {\n  Grue(x) <- exists y: (Next(x,y) & Grue(y)).\n}\n";
    out << "order {\n";
    for (std::size_t i = 0; i + 1 <= n; ++i)
        out << "  Grue(" << i << ") < Grue(" << (i + 1) << ").\n";
    out << "}\n";

    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    append_expectations(out, probe, defined, true);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = true;
    expectation.defined_false = defined.complement();
    expectation.order_verdicts = ExpectedOrderVerdicts{false, false, false, false};
    expectation.notes = "monotone, defines the empty set; the standard order does not match "
                        "the inductive rule";
    return finish("grue", out.str(), std::move(expectation));
}

// -------------------------------------------------------------- rank -------

CorpusEntry build_rank(const CorpusParams& params) {
    const auto edges = parse_edges(param(params, "edges", "a:b,b:c"));
    const auto vertices = edge_vertices(edges);
    const std::size_t n = vertices.size();
    const std::size_t numbers = n + 1;

    std::ostringstream out;
    out << "# longest-path rank of terminating states (experimental relational form)\n";
    out << "domain";
    for (const auto& v : vertices) out << " " << v;
    for (std::size_t i = 0; i < numbers; ++i) out << " n" << i;
    out << " ;\n";
    out << "pred G/2 = { ";
    for (std::size_t i = 0; i < edges.size(); ++i)
        out << (i ? ", " : "") << "(" << edges[i].first << "," << edges[i].second << ")";
    out << " } ;\n";
    out << "pred IsState/1 = { ";
    for (std::size_t i = 0; i < n; ++i) out << (i ? ", " : "") << "(" << vertices[i] << ")";
    out << " } ;\n";
    out << "pred IsNum/1 = { ";
    for (std::size_t i = 0; i < numbers; ++i) out << (i ? ", " : "") << "(n" << i << ")";
    out << " } ;\n";
    out << "pred Lt/2 = { ";
    bool first = true;
    for (std::size_t i = 0; i < numbers; ++i)
        for (std::size_t j = i + 1; j < numbers; ++j) {
            out << (first ? "" : ", ") << "(n" << i << ",n" << j << ")";
            first = false;
        }
    out << " } ;\n";
    out << "pred Term/1 ;\n";
    out << "pred Rank/2 ;\n";
    out << "define {\n";
    out << "  Term(x) <- IsState(x) & forall y: (G(x,y) => Term(y)).\n";
    out << "  Rank(x,r) <- IsState(x) & IsNum(r) & Term(x)\n";
    out << "             & forall y: (forall r1: (G(x,y) & IsNum(r1) & Rank(y,r1) => Lt(r1,r)))\n";
    out << "             & forall r2: ((IsNum(r2) & forall y: (forall r1: "
           "(G(x,y) & IsNum(r1) & Rank(y,r1) => Lt(r1,r2)))) => ~Lt(r2,r)).\n";
    out << "}\n";
    out << "order {\n";
    auto vid = [&](const std::string& v) {
        return static_cast<std::size_t>(
            std::find(vertices.begin(), vertices.end(), v) - vertices.begin());
    };
    for (const auto& [a, b] : edges) {
        out << "  Term(" << b << ") < Term(" << a << ").\n";
        for (std::size_t r1 = 0; r1 < numbers; ++r1)
            for (std::size_t r = 0; r < numbers; ++r)
                out << "  Rank(" << b << ",n" << r1 << ") < Rank(" << a << ",n" << r << ").\n";
    }
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t r = 0; r < numbers; ++r)
            out << "  Term(" << vertices[s] << ") < Rank(" << vertices[s] << ",n" << r << ").\n";
    out << "}\n";

    // Oracle: terminating as in `term`, ranks by longest-path recursion.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : edges) reach[vid(a)][vid(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    std::vector<bool> terminating(n, false);
    for (std::size_t s = 0; s < n; ++s) {
        bool reaches_cycle = false;
        for (std::size_t c = 0; c < n; ++c)
            if ((s == c || reach[s][c]) && reach[c][c]) reaches_cycle = true;
        terminating[s] = !reaches_cycle;
    }
    std::vector<std::size_t> rank(n, 0);
    std::function<std::size_t(std::size_t)> rank_of = [&](std::size_t s) -> std::size_t {
        std::size_t best = 0;
        for (const auto& [a, b] : edges)
            if (vid(a) == s) best = std::max(best, rank_of(vid(b)) + 1);
        return best;
    };

    Problem probe = parse_problem(out.str());
    AtomSet defined = probe.empty_set();
    for (std::size_t s = 0; s < n; ++s) {
        if (!terminating[s]) continue;
        defined.set(atom1(probe, "Term", vertices[s]));
        rank[s] = rank_of(s);
        defined.set(atom2(probe, "Rank", vertices[s], "n" + std::to_string(rank[s])));
    }
    append_expectations(out, probe, defined, true);

    CorpusExpectation expectation;
    expectation.safely_defined = defined;
    expectation.saturated = true;
    expectation.defined_false = defined.complement();
    expectation.order_verdicts = ExpectedOrderVerdicts{true, true, true, true};
    expectation.notes = "experimental: acyclic graphs only; the aggregate form is out of scope";
    return finish("rank", out.str(), std::move(expectation));
}

} // namespace

std::vector<std::string> corpus_names() {
    return {"tc",   "even",       "even-next", "sat",  "kripke", "foo",  "mutual", "pq",
            "insensible", "nonminimal", "liar", "teller", "term", "grue", "rank"};
}

std::string corpus_describe(const std::string& name) {
    if (name == "tc") return "transitive closure of a graph [edges=a:a,b:c,c:b]";
    if (name == "even") return "even numbers on a segment [n=6, order=standard|swapped]";
    if (name == "even-next") return "evenness with a defined successor relation [n=2]";
    if (name == "sat") return "propositional satisfaction [vocab=P, depth=2, order=sub|suball|size|depth]";
    if (name == "kripke") return "multi-agent modal satisfaction with common knowledge";
    if (name == "foo") return "Foo(x) <- ~Foo(x) [n=2]";
    if (name == "mutual") return "P <- ~Q. Q <- ~P.";
    if (name == "pq") return "Q <- true. P <- Q. with order P < Q";
    if (name == "insensible") return "P <- ~P. P <- P.";
    if (name == "nonminimal") return "four rules whose safely defined structure is a non-minimal fixpoint";
    if (name == "liar") return "T <- ~T.";
    if (name == "teller") return "T <- T.";
    if (name == "term") return "terminating states of a transition graph [edges=a:b,b:a,c:d]";
    if (name == "grue") return "grue numbers; the declared order fails the dependency parity check [n=5]";
    if (name == "rank") return "longest-path rank over terminating states [edges=a:b,b:c]";
    throw InputError("unknown corpus entry '" + name + "'");
}

CorpusEntry corpus_build(const std::string& name, const CorpusParams& params) {
    if (name == "tc") return build_tc(params);
    if (name == "even") return build_even(params);
    if (name == "even-next") return build_even_next(params);
    if (name == "sat") return build_sat(params);
    if (name == "kripke") return build_kripke(params);
    if (name == "foo") return build_foo(params);
    if (name == "mutual") return build_mutual(params);
    if (name == "pq") return build_pq(params);
    if (name == "insensible") return build_insensible(params);
    if (name == "nonminimal") return build_nonminimal(params);
    if (name == "liar") return build_liar(params);
    if (name == "teller") return build_teller(params);
    if (name == "term") return build_term(params);
    if (name == "grue") return build_grue(params);
    if (name == "rank") return build_rank(params);
    throw InputError("unknown corpus entry '" + name + "'");
}

std::string corpus_export(const std::string& name, const CorpusParams& params) {
    return corpus_build(name, params).text;
}

} // namespace defkernel
