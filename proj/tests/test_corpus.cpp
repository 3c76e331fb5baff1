#include <doctest.h>

#include "defkernel/corpus.hpp"
#include "defkernel/parser.hpp"
#include "defkernel/safety.hpp"

#include "support.hpp"

using namespace defkernel;
using namespace defkernel::testing;

TEST_CASE("every entry builds, exports, and reparses") {
    for (const auto& name : corpus_names()) {
        CAPTURE(name);
        CorpusEntry e = corpus_build(name);
        CHECK(!e.text.empty());
        const Problem reparsed = parse_problem(e.text);
        CHECK(reparsed.universe().size() == e.problem.universe().size());
        std::set<std::string> declared;
        for (const auto& [sym_name, sym] : e.problem.context().symbols()) {
            declared.insert(sym_name);
            (void)sym;
        }
        CHECK(well_formed(e.problem.definition(), declared).ok());
        // Exports re-render stably.
        const std::string rendered = render(e.problem);
        CHECK(render(parse_problem(rendered)) == rendered);
    }
}

TEST_CASE("generator parameters reach the problem") {
    CorpusEntry tc = corpus_build("tc", {{"edges", "x:y,y:z"}});
    CHECK(tc.problem.context().domain() == std::vector<std::string>{"x", "y", "z"});
    CHECK(*tc.expectation.safely_defined ==
          atoms(tc.problem, {"R(x,y)", "R(y,z)", "R(x,z)"}));

    CorpusEntry even = corpus_build("even", {{"n", "8"}});
    CHECK(even.problem.universe().size() == 9);

    CHECK_THROWS_AS(corpus_build("nonsense"), InputError);
    CHECK_THROWS_AS(corpus_build("tc", {{"edges", "zz"}}), InputError);
}

TEST_CASE("oracle fixtures") {
    SUBCASE("transitive closure of the running example") {
        CorpusEntry tc = corpus_build("tc");
        CHECK(*tc.expectation.safely_defined ==
              atoms(tc.problem, {"R(a,a)", "R(b,c)", "R(c,b)", "R(b,b)", "R(c,c)"}));
    }
    SUBCASE("parity") {
        CorpusEntry even = corpus_build("even", {{"n", "6"}});
        CHECK(*even.expectation.safely_defined ==
              atoms(even.problem, {"Ev(0)", "Ev(2)", "Ev(4)", "Ev(6)"}));
    }
    SUBCASE("recursive satisfaction: double negation in, single negation out") {
        CorpusEntry sat = corpus_build("sat", {{"vocab", "P"}, {"depth", "2"}});
        // Name table: f0 = P, f1 = ~P, and ~~P appears as the negation of f1.
        REQUIRE(sat.text.find("# f0 = P\n") != std::string::npos);
        REQUIRE(sat.text.find("# f1 = ~(P)\n") != std::string::npos);
        const std::size_t not_not_p = [&] {
            const auto pos = sat.text.find(" = ~(~(P))");
            REQUIRE(pos != std::string::npos);
            const auto hash = sat.text.rfind("# f", pos);
            return std::stoul(sat.text.substr(hash + 3, pos - hash - 3));
        }();
        const std::string nnp = "f" + std::to_string(not_not_p);
        const AtomSet& defined = *sat.expectation.safely_defined;
        CHECK(defined.test(parse_ground_atom("Sat(i1," + nnp + ")", sat.problem)));
        CHECK(!defined.test(parse_ground_atom("Sat(i1,f1)", sat.problem)));
        CHECK(defined.test(parse_ground_atom("Sat(i0,f1)", sat.problem)));
    }
    SUBCASE("termination: cycle states are out, the tail is in") {
        CorpusEntry term = corpus_build("term"); // a:b, b:a, c:d
        CHECK(*term.expectation.safely_defined == atoms(term.problem, {"Term(c)", "Term(d)"}));
    }
    SUBCASE("ranks on the default chain") {
        CorpusEntry rank = corpus_build("rank"); // a -> b -> c
        CHECK(*rank.expectation.safely_defined ==
              atoms(rank.problem, {"Term(a)", "Term(b)", "Term(c)", "Rank(a,n2)", "Rank(b,n1)",
                                   "Rank(c,n0)"}));
    }
}

TEST_CASE("entries with a total-information oracle match the engine") {
    const std::vector<std::pair<std::string, CorpusParams>> entries = {
        {"tc", {}},
        {"tc", {{"edges", "a:b,b:c,c:a"}}},
        {"even", {{"n", "0"}}},
        {"even", {{"n", "7"}}},
        {"even-next", {{"n", "3"}}},
        {"sat", {{"vocab", "P"}, {"depth", "1"}}},
        {"sat", {{"vocab", "P"}, {"depth", "2"}}},
        {"sat", {{"vocab", "P,Q"}, {"depth", "1"}}},
        {"kripke", {}},
        {"pq", {}},
        {"insensible", {}},
        {"nonminimal", {}},
        {"teller", {}},
        {"term", {}},
        {"term", {{"edges", "a:a"}}},
        {"grue", {{"n", "4"}}},
        {"rank", {}},
        {"rank", {{"edges", "a:b,a:c,b:d,c:d"}}},
    };
    for (const auto& [name, params] : entries) {
        const std::string entry = name;
        CAPTURE(entry);
        CorpusEntry e = corpus_build(name, params);
        REQUIRE(e.expectation.safely_defined.has_value());
        SafetyEngine engine(e.problem);
        const SafeConstruction c = engine.safely_defined_structure();
        CHECK(c.limit == *e.expectation.safely_defined);
        CHECK(is_saturated(e.problem, c.limit) == e.expectation.saturated);
    }
}

TEST_CASE("paradox entries report as expected") {
    for (const char* name : {"foo", "mutual", "liar"}) {
        CAPTURE(name);
        CorpusEntry e = corpus_build(name);
        SafetyEngine engine(e.problem);
        const SafetyReport r = engine.report();
        CHECK(r.defined_true.empty());
        CHECK(!r.saturated);
        CHECK(e.expectation.all_defined_atoms_undecided);
        CHECK(r.undecided == AtomSet::full(e.problem.universe().size()));
    }
}

TEST_CASE("the sat entry ships the negation-fragment formulas") {
    CorpusEntry sat = corpus_build("sat", {{"vocab", "P"}, {"depth", "2"}});
    // P, ~P, ~~P, P&P, P|P all appear among the enumerated formulas.
    for (const char* shown : {"= P\n", "= ~(P)\n", "= ~(~(P))\n", "= (P & P)\n", "= (P | P)\n"})
        CHECK(sat.text.find(shown) != std::string::npos);
    // Both structures over {P} are present.
    CHECK(sat.text.find("# i0 = { }") != std::string::npos);
    CHECK(sat.text.find("# i1 = { P }") != std::string::npos);
}
