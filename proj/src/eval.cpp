#include "defkernel/eval.hpp"

namespace defkernel {

std::size_t Assignment::lookup(const std::string& var) const {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it)
        if (it->first == var) return it->second;
    throw InputError("unassigned variable '" + var + "'");
}

bool EvalContext::atom_truth(const Symbol& pred, const std::vector<std::size_t>& args) const {
    if (universe != nullptr && universe->is_defined(pred.name)) {
        const std::size_t idx = universe->require_index(pred.name, args);
        return defined != nullptr && defined->test(idx);
    }
    return context->predicate_holds(pred.name, args);
}

std::size_t eval_term(const EvalContext& ctx, Assignment& assignment, const Term& term) {
    if (term.is_var()) return assignment.lookup(term.var().name);
    const auto& app = term.app();
    if (app.symbol.kind == SymbolKind::Object) return ctx.context->object_value(app.symbol.name);
    std::vector<std::size_t> args(app.args.size());
    for (std::size_t i = 0; i < app.args.size(); ++i)
        args[i] = eval_term(ctx, assignment, app.args[i]);
    return ctx.context->apply_function(app.symbol.name, args);
}

bool eval_formula(const EvalContext& ctx, Assignment& assignment, const FormulaPtr& formula) {
    switch (formula->kind) {
    case Formula::Kind::True:
        return true;
    case Formula::Kind::False:
        return false;
    case Formula::Kind::Atom: {
        std::vector<std::size_t> args(formula->terms.size());
        for (std::size_t i = 0; i < formula->terms.size(); ++i)
            args[i] = eval_term(ctx, assignment, formula->terms[i]);
        return ctx.atom_truth(formula->pred, args);
    }
    case Formula::Kind::Eq:
        // Identity on the domain; never table-driven.
        return eval_term(ctx, assignment, formula->lhs) ==
               eval_term(ctx, assignment, formula->rhs);
    case Formula::Kind::Not:
        return !eval_formula(ctx, assignment, formula->a);
    case Formula::Kind::And:
        return eval_formula(ctx, assignment, formula->a) &&
               eval_formula(ctx, assignment, formula->b);
    case Formula::Kind::Or:
        return eval_formula(ctx, assignment, formula->a) ||
               eval_formula(ctx, assignment, formula->b);
    case Formula::Kind::Implies:
        return !eval_formula(ctx, assignment, formula->a) ||
               eval_formula(ctx, assignment, formula->b);
    case Formula::Kind::Exists: {
        // Domain iterated in declaration order; short-circuit only affects timing.
        for (std::size_t d = 0; d < ctx.context->domain_size(); ++d) {
            assignment.push(formula->var, d);
            const bool v = eval_formula(ctx, assignment, formula->a);
            assignment.pop();
            if (v) return true;
        }
        return false;
    }
    case Formula::Kind::Forall: {
        for (std::size_t d = 0; d < ctx.context->domain_size(); ++d) {
            assignment.push(formula->var, d);
            const bool v = eval_formula(ctx, assignment, formula->a);
            assignment.pop();
            if (!v) return false;
        }
        return true;
    }
    }
    throw Error("unreachable formula kind");
}

std::size_t eval_term(const FiniteStructure& structure, Assignment& assignment, const Term& term) {
    EvalContext ctx{&structure, nullptr, nullptr};
    return eval_term(ctx, assignment, term);
}

bool eval_formula(const FiniteStructure& structure, Assignment& assignment,
                  const FormulaPtr& formula) {
    EvalContext ctx{&structure, nullptr, nullptr};
    return eval_formula(ctx, assignment, formula);
}

} // namespace defkernel
