#include <doctest.h>

#include "defkernel/dnf.hpp"
#include "defkernel/parser.hpp"

#include "support.hpp"

using namespace defkernel;
using namespace defkernel::testing;

TEST_CASE("parsing DNF text") {
    const DnfFormula f = parse_dnf("(p & ~q) | q | ~p");
    CHECK(f.variables == std::vector<std::string>{"p", "q"});
    REQUIRE(f.disjuncts.size() == 3);
    CHECK(f.disjuncts[0].positive == std::vector<std::string>{"p"});
    CHECK(f.disjuncts[0].negative == std::vector<std::string>{"q"});
    CHECK(render(f) == "(p & ~q) | q | ~p");
    CHECK_THROWS_AS(parse_dnf("p |"), ParseError);
    CHECK_THROWS_AS(parse_dnf("(p & q"), ParseError);

    // Duplicate literals inside a disjunct are dropped.
    const DnfFormula g = parse_dnf("p & p & ~q");
    CHECK(g.disjuncts[0].positive == std::vector<std::string>{"p"});
}

TEST_CASE("the encoding of a DNF as a context structure") {
    SUBCASE("p | ~p") {
        const Problem p = dnf_to_problem(parse_dnf("p | ~p"));
        CHECK(p.context().domain() == std::vector<std::string>{"p", "d1", "d2"});
        CHECK(p.context().predicate_tuples("Pos") ==
              std::set<std::vector<std::size_t>>{{1, 0}});
        CHECK(p.context().predicate_tuples("Neg") ==
              std::set<std::vector<std::size_t>>{{2, 0}});
        CHECK(p.definition().defined ==
              std::set<Symbol>{predicate_symbol("T", 1), predicate_symbol("Val", 0)});
    }
    SUBCASE("p alone") {
        const Problem p = dnf_to_problem(parse_dnf("p"));
        CHECK(p.context().domain() == std::vector<std::string>{"p", "d1"});
        CHECK(p.context().predicate_tuples("Neg").empty());
    }
    SUBCASE("(p & q) | ~p") {
        const Problem p = dnf_to_problem(parse_dnf("(p & q) | ~p"));
        CHECK(p.context().predicate_tuples("Pos").size() == 2);
        CHECK(p.context().predicate_tuples("Neg").size() == 1);
        // Encoding size stays linear in the formula.
        CHECK(p.context().domain().size() == 2 + 2);
    }
    SUBCASE("the encoding round-trips through the problem syntax") {
        const Problem p = dnf_to_problem(parse_dnf("(p & ~q) | q"));
        const std::string text = render(p);
        const Problem q = parse_problem(text);
        CHECK(render(q) == text);
    }
}

TEST_CASE("validity through the safely defined structure") {
    CHECK(dnf_validity_via_safety(parse_dnf("p | ~p")));
    CHECK(!dnf_validity_via_safety(parse_dnf("p")));          // false in the empty structure
    CHECK(!dnf_validity_via_safety(parse_dnf("(p & q) | ~p"))); // true at ∅, falsified by {p}
    CHECK(dnf_validity_oracle(parse_dnf("p | ~p")));
    CHECK(!dnf_validity_oracle(parse_dnf("p")));
    CHECK(dnf_validity_oracle(parse_dnf("(p & ~q) | q | ~p")));
}

TEST_CASE("unsatisfiable disjuncts flow through the encoding unchanged") {
    CHECK(!dnf_validity_via_safety(parse_dnf("p & ~p")));
    CHECK(dnf_validity_via_safety(parse_dnf("(p & ~p) | p | ~p")));
}
