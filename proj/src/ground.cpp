#include "defkernel/ground.hpp"

#include <algorithm>

#include "defkernel/eval.hpp"

namespace defkernel {

GroundFormula GroundFormula::constant(bool v) {
    GroundFormula g;
    g.kind = Kind::Const;
    g.value = v;
    return g;
}

GroundFormula GroundFormula::literal(std::uint32_t atom) {
    GroundFormula g;
    g.kind = Kind::Lit;
    g.atom = atom;
    return g;
}

bool GroundFormula::eval(const AtomSet& structure) const {
    switch (kind) {
    case Kind::Const:
        return value;
    case Kind::Lit:
        return structure.test(atom);
    case Kind::Not:
        return !kids[0].eval(structure);
    case Kind::And:
        for (const auto& k : kids)
            if (!k.eval(structure)) return false;
        return true;
    case Kind::Or:
        for (const auto& k : kids)
            if (k.eval(structure)) return true;
        return false;
    }
    return false;
}

void GroundFormula::collect_atoms(AtomSet& out) const {
    switch (kind) {
    case Kind::Const:
        return;
    case Kind::Lit:
        out.set(atom);
        return;
    default:
        for (const auto& k : kids) k.collect_atoms(out);
    }
}

bool GroundFormula::has_negative_literal(bool under_negation) const {
    switch (kind) {
    case Kind::Const:
        return false;
    case Kind::Lit:
        return under_negation;
    case Kind::Not:
        return kids[0].has_negative_literal(!under_negation);
    default:
        for (const auto& k : kids)
            if (k.has_negative_literal(under_negation)) return true;
        return false;
    }
}

namespace {

struct Grounder {
    const Problem& problem;
    EvalContext param_ctx; // context-only view for parameter evaluation
    Assignment assignment;
    std::size_t nodes = 0;

    explicit Grounder(const Problem& p) : problem(p) {
        param_ctx.context = &p.context();
    }

    void bump() {
        if (++nodes > (1u << 24))
            throw BudgetError("grounding exceeds the supported scale");
    }

    GroundFormula ground(const FormulaPtr& f) {
        bump();
        switch (f->kind) {
        case Formula::Kind::True:
            return GroundFormula::constant(true);
        case Formula::Kind::False:
            return GroundFormula::constant(false);
        case Formula::Kind::Eq: {
            const std::size_t l = eval_term(param_ctx, assignment, f->lhs);
            const std::size_t r = eval_term(param_ctx, assignment, f->rhs);
            return GroundFormula::constant(l == r);
        }
        case Formula::Kind::Atom: {
            std::vector<std::size_t> args(f->terms.size());
            for (std::size_t i = 0; i < args.size(); ++i)
                args[i] = eval_term(param_ctx, assignment, f->terms[i]);
            if (problem.universe().is_defined(f->pred.name)) {
                const std::size_t idx = problem.universe().require_index(f->pred.name, args);
                return GroundFormula::literal(static_cast<std::uint32_t>(idx));
            }
            return GroundFormula::constant(problem.context().predicate_holds(f->pred.name, args));
        }
        case Formula::Kind::Not: {
            GroundFormula inner = ground(f->a);
            if (inner.kind == GroundFormula::Kind::Const)
                return GroundFormula::constant(!inner.value);
            GroundFormula g;
            g.kind = GroundFormula::Kind::Not;
            g.kids.push_back(std::move(inner));
            return g;
        }
        case Formula::Kind::And: {
            GroundFormula g;
            g.kind = GroundFormula::Kind::And;
            if (!append_junct(g, f->a, false)) return GroundFormula::constant(false);
            if (!append_junct(g, f->b, false)) return GroundFormula::constant(false);
            if (g.kids.empty()) return GroundFormula::constant(true);
            if (g.kids.size() == 1) return std::move(g.kids[0]);
            return g;
        }
        case Formula::Kind::Or: {
            GroundFormula g;
            g.kind = GroundFormula::Kind::Or;
            if (!append_junct(g, f->a, true)) return GroundFormula::constant(true);
            if (!append_junct(g, f->b, true)) return GroundFormula::constant(true);
            if (g.kids.empty()) return GroundFormula::constant(false);
            if (g.kids.size() == 1) return std::move(g.kids[0]);
            return g;
        }
        case Formula::Kind::Implies:
            return ground(f_or(f_not(f->a), f->b));
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            const bool exists = f->kind == Formula::Kind::Exists;
            GroundFormula g;
            g.kind = exists ? GroundFormula::Kind::Or : GroundFormula::Kind::And;
            for (std::size_t d = 0; d < problem.context().domain_size(); ++d) {
                assignment.push(f->var, d);
                GroundFormula inner = ground(f->a);
                assignment.pop();
                if (inner.kind == GroundFormula::Kind::Const) {
                    if (inner.value == exists) return GroundFormula::constant(exists);
                    continue; // neutral element, drop
                }
                g.kids.push_back(std::move(inner));
            }
            if (g.kids.empty()) return GroundFormula::constant(!exists);
            if (g.kids.size() == 1) return std::move(g.kids[0]);
            return g;
        }
        }
        return GroundFormula::constant(false);
    }

    // Grounds a conjunct/disjunct into g.kids, folding constants. Returns
    // false when the whole junction collapses to the absorbing constant.
    bool append_junct(GroundFormula& g, const FormulaPtr& f, bool absorbing) {
        GroundFormula inner = ground(f);
        if (inner.kind == GroundFormula::Kind::Const) {
            if (inner.value == absorbing) return false;
            return true; // neutral, drop
        }
        if (inner.kind == g.kind) {
            for (auto& k : inner.kids) g.kids.push_back(std::move(k));
            return true;
        }
        g.kids.push_back(std::move(inner));
        return true;
    }
};

} // namespace

GroundProblem::GroundProblem(const Problem& problem) {
    const std::size_t n = problem.universe().size();
    rules_for.assign(n, {});
    support.assign(n, AtomSet(n));
    dependents.assign(n, {});
    const_true = AtomSet(n);
    const_false = AtomSet(n);

    Grounder grounder(problem);
    const auto& rules = problem.definition().rules;
    for (std::size_t i = 0; i < n; ++i) {
        const DomainAtom& atom = problem.universe().atom(i);
        bool always = false;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            const Rule& rule = rules[r];
            if (rule.head.name != atom.predicate.name) continue;
            for (std::size_t k = 0; k < rule.head_vars.size(); ++k)
                grounder.assignment.push(rule.head_vars[k], atom.args[k]);
            GroundFormula body = grounder.ground(rule.body);
            for (std::size_t k = 0; k < rule.head_vars.size(); ++k) grounder.assignment.pop();

            if (body.kind == GroundFormula::Kind::Const) {
                if (!body.value) continue; // can never fire
                always = true;
            }
            GroundRule gr;
            gr.rule_index = r;
            gr.positive = !body.has_negative_literal();
            gr.body = std::move(body);
            rules_for[i].push_back(std::move(gr));
        }
        for (const auto& gr : rules_for[i]) gr.body.collect_atoms(support[i]);
        if (always) const_true.set(i);
        if (rules_for[i].empty()) const_false.set(i);
    }
    for (std::size_t i = 0; i < n; ++i)
        support[i].for_each([&](std::size_t a) {
            dependents[a].push_back(static_cast<std::uint32_t>(i));
        });
}

bool GroundProblem::derivable(const AtomSet& structure, std::size_t atom) const {
    for (const auto& gr : rules_for[atom])
        if (gr.body.eval(structure)) return true;
    return false;
}

bool GroundProblem::positively_derivable(const AtomSet& structure, std::size_t atom) const {
    for (const auto& gr : rules_for[atom])
        if (gr.positive && gr.body.eval(structure)) return true;
    return false;
}

AtomSet GroundProblem::gamma(const AtomSet& structure) const {
    AtomSet out(universe_size());
    for (std::size_t i = 0; i < universe_size(); ++i)
        if (derivable(structure, i)) out.set(i);
    return out;
}

void GroundProblem::gamma_update(const AtomSet& structure, const std::vector<std::size_t>& changed,
                                 AtomSet& gamma_bits) const {
    for (std::size_t c : changed)
        for (std::uint32_t dep : dependents[c]) gamma_bits.set(dep, derivable(structure, dep));
}

const GroundProblem& grounded(const Problem& problem) {
    std::lock_guard<std::mutex> lock(problem.ground_mutex_);
    if (!problem.ground_) problem.ground_ = std::make_shared<const GroundProblem>(problem);
    return *problem.ground_;
}

} // namespace defkernel
