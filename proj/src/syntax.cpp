#include "defkernel/syntax.hpp"

#include <algorithm>

namespace defkernel {

Term t_var(std::string name) { return Term{Term::Var{std::move(name)}}; }

Term t_app(Symbol symbol, std::vector<Term> args) {
    if (symbol.arity != args.size())
        throw InputError("arity mismatch applying symbol '" + symbol.name + "'");
    return Term{Term::App{std::move(symbol), std::move(args)}};
}

Term t_obj(std::string name) { return t_app(object_symbol(std::move(name))); }

bool term_equal(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.var().name == b.var().name;
    if (!(a.app().symbol == b.app().symbol)) return false;
    if (a.app().args.size() != b.app().args.size()) return false;
    for (std::size_t i = 0; i < a.app().args.size(); ++i)
        if (!term_equal(a.app().args[i], b.app().args[i])) return false;
    return true;
}

namespace {
FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
} // namespace

FormulaPtr f_true() {
    static FormulaPtr t = make(Formula{Formula::Kind::True, {}, {}, {}, {}, nullptr, nullptr, ""});
    return t;
}

FormulaPtr f_false() {
    static FormulaPtr f = make(Formula{Formula::Kind::False, {}, {}, {}, {}, nullptr, nullptr, ""});
    return f;
}

FormulaPtr f_atom(Symbol pred, std::vector<Term> terms) {
    if (pred.kind != SymbolKind::Predicate || pred.arity != terms.size())
        throw InputError("malformed atom for predicate '" + pred.name + "'");
    if (pred.name == "=") throw InputError("equality is logical; use f_eq");
    return make(Formula{Formula::Kind::Atom, std::move(pred), std::move(terms), {}, {}, nullptr,
                        nullptr, ""});
}

FormulaPtr f_eq(Term lhs, Term rhs) {
    return make(Formula{Formula::Kind::Eq, {}, {}, std::move(lhs), std::move(rhs), nullptr, nullptr,
                        ""});
}

FormulaPtr f_not(FormulaPtr f) {
    return make(Formula{Formula::Kind::Not, {}, {}, {}, {}, std::move(f), nullptr, ""});
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    return make(Formula{Formula::Kind::And, {}, {}, {}, {}, std::move(a), std::move(b), ""});
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    return make(Formula{Formula::Kind::Or, {}, {}, {}, {}, std::move(a), std::move(b), ""});
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
    return make(Formula{Formula::Kind::Implies, {}, {}, {}, {}, std::move(a), std::move(b), ""});
}

FormulaPtr f_exists(std::string var, FormulaPtr body) {
    return make(Formula{Formula::Kind::Exists, {}, {}, {}, {}, std::move(body), nullptr,
                        std::move(var)});
}

FormulaPtr f_forall(std::string var, FormulaPtr body) {
    return make(Formula{Formula::Kind::Forall, {}, {}, {}, {}, std::move(body), nullptr,
                        std::move(var)});
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
        return true;
    case Formula::Kind::Atom:
        if (!(a.pred == b.pred) || a.terms.size() != b.terms.size()) return false;
        for (std::size_t i = 0; i < a.terms.size(); ++i)
            if (!term_equal(a.terms[i], b.terms[i])) return false;
        return true;
    case Formula::Kind::Eq:
        return term_equal(a.lhs, b.lhs) && term_equal(a.rhs, b.rhs);
    case Formula::Kind::Not:
        return formula_equal(*a.a, *b.a);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
        return formula_equal(*a.a, *b.a) && formula_equal(*a.b, *b.b);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        return a.var == b.var && formula_equal(*a.a, *b.a);
    }
    return false;
}

FormulaPtr desugar(const FormulaPtr& f) {
    switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
        return f;
    case Formula::Kind::Not: {
        FormulaPtr a = desugar(f->a);
        return a == f->a ? f : f_not(a);
    }
    case Formula::Kind::And: {
        FormulaPtr a = desugar(f->a), b = desugar(f->b);
        return (a == f->a && b == f->b) ? f : f_and(a, b);
    }
    case Formula::Kind::Or: {
        FormulaPtr a = desugar(f->a), b = desugar(f->b);
        return (a == f->a && b == f->b) ? f : f_or(a, b);
    }
    case Formula::Kind::Implies:
        return f_or(f_not(desugar(f->a)), desugar(f->b));
    case Formula::Kind::Exists: {
        FormulaPtr a = desugar(f->a);
        return a == f->a ? f : f_exists(f->var, a);
    }
    case Formula::Kind::Forall: {
        FormulaPtr a = desugar(f->a);
        return a == f->a ? f : f_forall(f->var, a);
    }
    }
    return f;
}

namespace {

void collect_term_vars(const Term& t, std::vector<std::string>& out) {
    if (t.is_var()) {
        if (std::find(out.begin(), out.end(), t.var().name) == out.end())
            out.push_back(t.var().name);
        return;
    }
    for (const auto& a : t.app().args) collect_term_vars(a, out);
}

void collect_free_vars(const FormulaPtr& f, std::vector<std::string>& bound,
                       std::vector<std::string>& out) {
    switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
        return;
    case Formula::Kind::Atom: {
        std::vector<std::string> vars;
        for (const auto& t : f->terms) collect_term_vars(t, vars);
        for (auto& v : vars)
            if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
                std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
        return;
    }
    case Formula::Kind::Eq: {
        std::vector<std::string> vars;
        collect_term_vars(f->lhs, vars);
        collect_term_vars(f->rhs, vars);
        for (auto& v : vars)
            if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
                std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
        return;
    }
    case Formula::Kind::Not:
        collect_free_vars(f->a, bound, out);
        return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
        collect_free_vars(f->a, bound, out);
        collect_free_vars(f->b, bound, out);
        return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        bound.push_back(f->var);
        collect_free_vars(f->a, bound, out);
        bound.pop_back();
        return;
    }
}

} // namespace

Rule normalize_rule(const RawRule& rule) {
    if (rule.head.name == "=")
        throw InputError("equality may not be defined: rule head is '='");
    if (rule.head.kind != SymbolKind::Predicate || rule.head.arity != rule.head_terms.size())
        throw InputError("rule head arity mismatch for '" + rule.head.name + "'");

    // Rule variables in first-occurrence order: head terms, then body.
    std::vector<std::string> rule_vars;
    for (const auto& t : rule.head_terms) collect_term_vars(t, rule_vars);
    {
        std::vector<std::string> bound;
        collect_free_vars(rule.body, bound, rule_vars);
    }

    bool head_is_distinct_vars = true;
    std::set<std::string> seen;
    for (const auto& t : rule.head_terms) {
        if (!t.is_var() || !seen.insert(t.var().name).second) {
            head_is_distinct_vars = false;
            break;
        }
    }
    if (head_is_distinct_vars) {
        // Already normal when the body introduces no further free variables.
        std::vector<std::string> body_vars;
        std::vector<std::string> bound;
        collect_free_vars(rule.body, bound, body_vars);
        const bool body_covered = std::all_of(body_vars.begin(), body_vars.end(), [&](auto& v) {
            return seen.count(v) != 0;
        });
        if (body_covered) {
            std::vector<std::string> head_vars;
            for (const auto& t : rule.head_terms) head_vars.push_back(t.var().name);
            return Rule{rule.head, std::move(head_vars), rule.body};
        }
    }

    std::vector<std::string> fresh;
    for (std::size_t i = 0; i < rule.head_terms.size(); ++i)
        fresh.push_back("$v" + std::to_string(i));

    FormulaPtr body = rule.body;
    // ȳ = t̄ conjoined left to right in front of the original body.
    for (std::size_t i = rule.head_terms.size(); i-- > 0;)
        body = f_and(f_eq(t_var(fresh[i]), rule.head_terms[i]), body);
    for (std::size_t i = rule_vars.size(); i-- > 0;) body = f_exists(rule_vars[i], body);
    return Rule{rule.head, std::move(fresh), std::move(body)};
}

Definition Definition::from_rules(std::vector<Rule> rules) {
    Definition def;
    def.rules = std::move(rules);
    for (const auto& r : def.rules) def.defined.insert(r.head);
    for (const auto& r : def.rules) {
        for (const auto& s : free_symbols(r.body)) {
            if (s.kind == SymbolKind::Object &&
                std::find(r.head_vars.begin(), r.head_vars.end(), s.name) != r.head_vars.end())
                continue; // head variable, bound by the rule
            if (def.defined.count(s) != 0) continue;
            def.parameters.insert(s);
        }
    }
    return def;
}

WellFormedReport well_formed(const Definition& def, const std::set<std::string>& declared) {
    WellFormedReport report;
    if (def.rules.empty()) report.diagnostics.push_back({"definition has no rules"});
    for (std::size_t i = 0; i < def.rules.size(); ++i) {
        const Rule& r = def.rules[i];
        if (r.head.name == "=")
            report.diagnostics.push_back({"rule " + std::to_string(i) + ": equality head"});
        if (r.head.arity != r.head_vars.size())
            report.diagnostics.push_back({"rule " + std::to_string(i) + ": head arity mismatch"});
        std::set<std::string> seen;
        for (const auto& v : r.head_vars)
            if (!seen.insert(v).second)
                report.diagnostics.push_back(
                    {"rule " + std::to_string(i) + ": repeated head variable '" + v + "'"});
    }
    for (const auto& p : def.parameters) {
        // Free object symbols are parameters; surfaced so unintended free
        // variables are visible.
        if (p.kind == SymbolKind::Object && declared.count(p.name) == 0)
            report.diagnostics.push_back(
                {"free symbol '" + p.name + "' is a parameter object symbol"});
    }
    for (const auto& d : def.defined)
        if (def.parameters.count(d) != 0)
            report.diagnostics.push_back({"symbol '" + d.name + "' is both defined and parameter"});
    return report;
}

Definition split_disjunctive_rule(const Definition& def, std::size_t index) {
    if (index >= def.rules.size()) throw InputError("rule index out of range");
    const Rule& r = def.rules[index];
    if (r.body->kind != Formula::Kind::Or)
        throw InputError("rule body is not a top-level disjunction");
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < def.rules.size(); ++i) {
        if (i != index) {
            rules.push_back(def.rules[i]);
            continue;
        }
        rules.push_back(Rule{r.head, r.head_vars, r.body->a});
        rules.push_back(Rule{r.head, r.head_vars, r.body->b});
    }
    return Definition::from_rules(std::move(rules));
}

Definition replace_body(const Definition& def, std::size_t index, FormulaPtr body) {
    if (index >= def.rules.size()) throw InputError("rule index out of range");
    if (!body) throw InputError("replacement body is empty");
    std::vector<Rule> rules = def.rules;
    rules[index].body = desugar(body);
    return Definition::from_rules(std::move(rules));
}

namespace {

void polarity_walk(const FormulaPtr& f, const std::set<std::string>& preds, bool negative,
                   PolarityReport& report) {
    switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Eq:
        return;
    case Formula::Kind::Atom:
        if (preds.count(f->pred.name) != 0) {
            report.occurrences.push_back({f->pred, negative});
            if (negative) report.positive = false;
        }
        return;
    case Formula::Kind::Not:
        polarity_walk(f->a, preds, !negative, report);
        return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
        polarity_walk(f->a, preds, negative, report);
        polarity_walk(f->b, preds, negative, report);
        return;
    case Formula::Kind::Implies:
        // Unreachable after desugaring, kept for direct calls.
        polarity_walk(f->a, preds, !negative, report);
        polarity_walk(f->b, preds, negative, report);
        return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        polarity_walk(f->a, preds, negative, report);
        return;
    }
}

} // namespace

PolarityReport polarity(const FormulaPtr& formula, const std::set<std::string>& predicates) {
    PolarityReport report;
    polarity_walk(desugar(formula), predicates, false, report);
    return report;
}

namespace {

void free_symbols_term(const Term& t, const std::vector<std::string>& bound,
                       std::set<Symbol>& out) {
    if (t.is_var()) {
        if (std::find(bound.begin(), bound.end(), t.var().name) == bound.end())
            out.insert(object_symbol(t.var().name));
        return;
    }
    out.insert(t.app().symbol);
    for (const auto& a : t.app().args) free_symbols_term(a, bound, out);
}

void free_symbols_walk(const FormulaPtr& f, std::vector<std::string>& bound,
                       std::set<Symbol>& out) {
    switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
        return;
    case Formula::Kind::Atom:
        out.insert(f->pred);
        for (const auto& t : f->terms) free_symbols_term(t, bound, out);
        return;
    case Formula::Kind::Eq:
        free_symbols_term(f->lhs, bound, out);
        free_symbols_term(f->rhs, bound, out);
        return;
    case Formula::Kind::Not:
        free_symbols_walk(f->a, bound, out);
        return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
        free_symbols_walk(f->a, bound, out);
        free_symbols_walk(f->b, bound, out);
        return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        bound.push_back(f->var);
        free_symbols_walk(f->a, bound, out);
        bound.pop_back();
        return;
    }
}

} // namespace

std::set<Symbol> free_symbols(const Term& t) {
    std::set<Symbol> out;
    free_symbols_term(t, {}, out);
    return out;
}

std::set<Symbol> free_symbols(const FormulaPtr& f) {
    std::set<Symbol> out;
    std::vector<std::string> bound;
    free_symbols_walk(f, bound, out);
    return out;
}

} // namespace defkernel
