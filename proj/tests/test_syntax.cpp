#include <doctest.h>

#include "defkernel/parser.hpp"
#include "defkernel/syntax.hpp"

#include "support.hpp"

using namespace defkernel;
using namespace defkernel::testing;

namespace {

// Small harness: a definition over parameter-free 0-ary predicates P, Q (or a
// unary Even with a successor function), evaluated across every context.
Problem make_problem(std::vector<Rule> rules, const FiniteStructure& context) {
    return Problem(Definition::from_rules(std::move(rules)), context);
}

} // namespace

TEST_CASE("rule normalization") {
    const Symbol even = predicate_symbol("Even", 1);
    const Symbol succ = function_symbol("s", 1);

    SUBCASE("general head becomes fresh variables with an existential body") {
        // Even(s(x)) <- ~Even(x)  ~~>  Even($v0) <- exists x: ($v0 = s(x) & ~Even(x))
        RawRule raw{even, {t_app(succ, {t_var("x")})}, f_not(f_atom(even, {t_var("x")}))};
        const Rule rule = normalize_rule(raw);
        CHECK(rule.head_vars == std::vector<std::string>{"$v0"});
        REQUIRE(rule.body->kind == Formula::Kind::Exists);
        CHECK(rule.body->var == "x");
        const Formula& conj = *rule.body->a;
        REQUIRE(conj.kind == Formula::Kind::And);
        CHECK(conj.a->kind == Formula::Kind::Eq);
        CHECK(render(rule) == "Even($v0) <- exists x: ($v0 = s(x) & ~Even(x)).");
    }
    SUBCASE("already normalized rules are unchanged") {
        const Symbol r = predicate_symbol("R", 2);
        const Symbol g = predicate_symbol("G", 2);
        RawRule raw{r, {t_var("x"), t_var("y")}, f_atom(g, {t_var("x"), t_var("y")})};
        const Rule rule = normalize_rule(raw);
        CHECK(rule.head_vars == std::vector<std::string>{"x", "y"});
        CHECK(formula_equal(*rule.body, *raw.body));
    }
    SUBCASE("constant head argument, checked against the operator") {
        // P(a) <- Q  ~~>  P($v0) <- $v0 = a & Q ; Γ must agree on every
        // structure over D = {a,b}.
        const Symbol p = predicate_symbol("P", 1);
        const Symbol q = predicate_symbol("Q", 0);
        RawRule raw{p, {t_obj("a")}, f_atom(q, {})};
        const Rule normalized = normalize_rule(raw);
        CHECK(normalized.head_vars == std::vector<std::string>{"$v0"});

        for (bool q_true : {false, true}) {
            FiniteStructure ctx({"a", "b"});
            ctx.set_object("a", 0);
            ctx.set_predicate("Q", 0, q_true ? std::set<std::vector<std::size_t>>{{}}
                                             : std::set<std::vector<std::size_t>>{});
            // Hand-written ground semantics of the raw rule: P(a) derivable iff Q.
            Problem normal = make_problem({normalized}, ctx);
            for (const auto& s : all_structures(normal)) {
                const AtomSet g = gamma(normal, s);
                CHECK(g.test(normal.universe().require_index("P", {0})) == q_true);
                CHECK(!g.test(normal.universe().require_index("P", {1})));
            }
        }
    }
    SUBCASE("equality heads are rejected") {
        Symbol bad_eq{"=", SymbolKind::Predicate, 2};
        RawRule raw{bad_eq, {t_var("x"), t_var("y")}, f_true()};
        CHECK_THROWS_AS(normalize_rule(raw), InputError);
    }
}

TEST_CASE("well-formedness diagnostics") {
    const Symbol p = predicate_symbol("P", 0);
    const Symbol q = predicate_symbol("Q", 0);

    SUBCASE("clean definition computes the defp/pars partition") {
        Definition def = Definition::from_rules({Rule{p, {}, f_atom(q, {})}});
        CHECK(well_formed(def).ok());
        CHECK(def.defined.count(p) == 1);
        CHECK(def.parameters.count(q) == 1);
    }
    SUBCASE("empty rule set") {
        Definition def = Definition::from_rules({});
        CHECK(!well_formed(def).ok());
    }
    SUBCASE("free object symbols surface as parameter diagnostics") {
        const Symbol r = predicate_symbol("R", 2);
        // R(x,y) with a body reading a stray 'z' as an object symbol.
        Definition def = Definition::from_rules(
            {Rule{r, {"x", "y"}, f_atom(r, {t_var("x"), t_obj("z")})}});
        const auto report = well_formed(def);
        REQUIRE(!report.ok());
        bool mentions_z = false;
        for (const auto& d : report.diagnostics)
            if (d.message.find("'z'") != std::string::npos) mentions_z = true;
        CHECK(mentions_z);
        CHECK(def.parameters.count(object_symbol("z")) == 1);
    }
    SUBCASE("defp and pars are stable under rule reordering") {
        const Symbol r = predicate_symbol("R", 1);
        Rule r1{p, {}, f_atom(q, {})};
        Rule r2{r, {"x"}, f_atom(p, {})};
        Definition a = Definition::from_rules({r1, r2});
        Definition b = Definition::from_rules({r2, r1});
        CHECK(a.defined == b.defined);
        CHECK(a.parameters == b.parameters);
    }
}

TEST_CASE("splitting a disjunctive rule preserves the operator") {
    const Symbol p = predicate_symbol("P", 0);

    SUBCASE("the tautology split of the insensible example") {
        Definition def =
            Definition::from_rules({Rule{p, {}, f_or(f_not(f_atom(p, {})), f_atom(p, {}))}});
        Definition split = split_disjunctive_rule(def, 0);
        REQUIRE(split.rules.size() == 2);
        CHECK(render(split.rules[0].body) == "~P");
        CHECK(render(split.rules[1].body) == "P");
    }
    SUBCASE("operator identical over every parameter context") {
        const Symbol q = predicate_symbol("Q", 0);
        const Symbol a = predicate_symbol("A", 0);
        const Symbol b = predicate_symbol("B", 0);
        Definition def = Definition::from_rules({Rule{q, {}, f_or(f_atom(a, {}), f_atom(b, {}))}});
        Definition split = split_disjunctive_rule(def, 0);
        for (bool va : {false, true})
            for (bool vb : {false, true}) {
                FiniteStructure ctx({"d"});
                ctx.set_predicate("A", 0, va ? std::set<std::vector<std::size_t>>{{}}
                                             : std::set<std::vector<std::size_t>>{});
                ctx.set_predicate("B", 0, vb ? std::set<std::vector<std::size_t>>{{}}
                                             : std::set<std::vector<std::size_t>>{});
                CHECK(gamma_pointwise_equal(make_problem(def.rules, ctx),
                                            make_problem(split.rules, ctx)));
            }
    }
    SUBCASE("non-disjunctive bodies are rejected") {
        Definition def = Definition::from_rules({Rule{p, {}, f_not(f_atom(p, {}))}});
        CHECK_THROWS_AS(split_disjunctive_rule(def, 0), InputError);
    }
}

TEST_CASE("body replacement is syntactic; equivalence is checked by the caller") {
    const Symbol p = predicate_symbol("P", 0);
    const Symbol q = predicate_symbol("Q", 0);
    FiniteStructure ctx_true({"d"}), ctx_false({"d"});
    ctx_true.set_predicate("Q", 0, {{}});
    ctx_false.set_predicate("Q", 0, {});

    SUBCASE("tautology for tautology") {
        Definition def = Definition::from_rules({Rule{p, {}, f_true()}});
        Definition rep = replace_body(def, 0, f_or(f_not(f_atom(p, {})), f_atom(p, {})));
        FiniteStructure empty_ctx({"d"});
        CHECK(gamma_pointwise_equal(make_problem(def.rules, empty_ctx),
                                    make_problem(rep.rules, empty_ctx)));
    }
    SUBCASE("double negation") {
        Definition def = Definition::from_rules({Rule{p, {}, f_atom(q, {})}});
        Definition rep = replace_body(def, 0, f_not(f_not(f_atom(q, {}))));
        for (const auto* ctx : {&ctx_true, &ctx_false})
            CHECK(gamma_pointwise_equal(make_problem(def.rules, *ctx),
                                        make_problem(rep.rules, *ctx)));
    }
    SUBCASE("an inequivalent body is detected by the brute-force comparison") {
        Definition def = Definition::from_rules({Rule{p, {}, f_atom(q, {})}});
        Definition rep = replace_body(def, 0, f_not(f_atom(q, {})));
        bool all_equal = true;
        for (const auto* ctx : {&ctx_true, &ctx_false})
            if (!gamma_pointwise_equal(make_problem(def.rules, *ctx),
                                       make_problem(rep.rules, *ctx)))
                all_equal = false;
        CHECK(!all_equal);
    }
}

TEST_CASE("polarity classifies occurrences by negation parity") {
    const Symbol r = predicate_symbol("R", 2);
    const Symbol g = predicate_symbol("G", 2);
    const Symbol term = predicate_symbol("Term", 1);
    const Symbol even = predicate_symbol("Even", 1);

    SUBCASE("transitive closure bodies are positive in R") {
        FormulaPtr base = f_atom(g, {t_var("x"), t_var("y")});
        FormulaPtr trans = f_exists(
            "z", f_and(f_atom(r, {t_var("x"), t_var("z")}), f_atom(r, {t_var("z"), t_var("y")})));
        CHECK(polarity(base, {"R"}).positive);
        CHECK(polarity(trans, {"R"}).positive);
    }
    SUBCASE("one negation is non-positive") {
        const auto report = polarity(f_not(f_atom(even, {t_var("x")})), {"Even"});
        CHECK(!report.positive);
        REQUIRE(report.occurrences.size() == 1);
        CHECK(report.occurrences[0].negative);
    }
    SUBCASE("two nested negations cancel") {
        // ~(G(x,y) & ~Term(y)) : Term occurs under two negations
        FormulaPtr f = f_not(f_and(f_atom(g, {t_var("x"), t_var("y")}),
                                   f_not(f_atom(term, {t_var("y")}))));
        const auto report = polarity(f, {"Term"});
        CHECK(report.positive);
        REQUIRE(report.occurrences.size() == 1);
        CHECK(!report.occurrences[0].negative);
    }
    SUBCASE("implication desugars before counting") {
        // G(x,y) => Term(y) : G on the left of => is negative, Term positive
        FormulaPtr f = f_implies(f_atom(g, {t_var("x"), t_var("y")}),
                                 f_atom(term, {t_var("y")}));
        CHECK(polarity(f, {"Term"}).positive);
        CHECK(!polarity(f, {"G"}).positive);
        CHECK(formula_equal(*desugar(f), *f_or(f_not(f_atom(g, {t_var("x"), t_var("y")})),
                                               f_atom(term, {t_var("y")}))));
    }
}
