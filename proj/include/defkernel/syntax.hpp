#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "defkernel/model.hpp"

namespace defkernel {

// Terms: variables and symbol applications; object symbols are zero-ary
// applications.
struct Term {
    struct Var {
        std::string name;
    };
    struct App {
        Symbol symbol;
        std::vector<Term> args;
    };
    std::variant<Var, App> node;

    bool is_var() const { return std::holds_alternative<Var>(node); }
    const Var& var() const { return std::get<Var>(node); }
    const App& app() const { return std::get<App>(node); }
};

Term t_var(std::string name);
Term t_app(Symbol symbol, std::vector<Term> args = {});
Term t_obj(std::string name); // zero-ary application of an object symbol
bool term_equal(const Term& a, const Term& b);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { True, False, Atom, Eq, Not, And, Or, Implies, Exists, Forall };
    Kind kind;
    // Atom
    Symbol pred;
    std::vector<Term> terms;
    // Eq
    Term lhs, rhs;
    // Not (a), binary (a, b), quantifiers (var, a)
    FormulaPtr a, b;
    std::string var;
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(Symbol pred, std::vector<Term> terms);
FormulaPtr f_eq(Term lhs, Term rhs);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(std::string var, FormulaPtr body);
FormulaPtr f_forall(std::string var, FormulaPtr body);

bool formula_equal(const Formula& a, const Formula& b);

// Rewrites every Implies(f, g) to Or(Not(f), g). Evaluation, polarity and all
// engines operate on the core connectives only.
FormulaPtr desugar(const FormulaPtr& f);

// A rule in normalized form: the head is the predicate applied to pairwise
// distinct variables.
struct Rule {
    Symbol head;
    std::vector<std::string> head_vars;
    FormulaPtr body;
};

// A rule as written, with arbitrary head terms.
struct RawRule {
    Symbol head;
    std::vector<Term> head_terms;
    FormulaPtr body;
};

// ∀x̄ (P(t̄) ← φ) becomes ∀ȳ (P(ȳ) ← ∃x̄ (ȳ = t̄ ∧ φ)) with fresh ȳ from the
// reserved namespace $v0, $v1, ... Rules already in normalized form are kept
// unchanged.
Rule normalize_rule(const RawRule& rule);

struct Definition {
    std::vector<Rule> rules;
    std::set<Symbol> defined;    // defp(Δ): predicates occurring in heads
    std::set<Symbol> parameters; // pars(Δ): all other free non-logical symbols

    static Definition from_rules(std::vector<Rule> rules);
};

struct Diagnostic {
    std::string message;
};

struct WellFormedReport {
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return diagnostics.empty(); }
};

// Arity mismatches, `=` used as a head, empty rule sets, free object symbols
// picked up as implicit parameters (suppressed for names in `declared`).
// Reports rather than throws.
WellFormedReport well_formed(const Definition& def, const std::set<std::string>& declared = {});

// Splits rule `index`, whose body must be a top-level disjunction φ ∨ ψ, into
// two rules with bodies φ and ψ. Preserves the operator pointwise.
Definition split_disjunctive_rule(const Definition& def, std::size_t index);

// Replaces rule `index`'s body. Purely syntactic; logical equivalence is the
// caller's claim to verify.
Definition replace_body(const Definition& def, std::size_t index, FormulaPtr body);

struct PolarityOccurrence {
    Symbol pred;
    bool negative; // under an odd number of negations
};

struct PolarityReport {
    bool positive = true;
    std::vector<PolarityOccurrence> occurrences;
};

// Occurrences of the given predicates, classified by negation parity.
// Implications are desugared first.
PolarityReport polarity(const FormulaPtr& formula, const std::set<std::string>& predicates);

// Symbols with at least one free occurrence; free variables are reported as
// object symbols.
std::set<Symbol> free_symbols(const Term& t);
std::set<Symbol> free_symbols(const FormulaPtr& f);

} // namespace defkernel
