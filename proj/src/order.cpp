#include "defkernel/order.hpp"

#include <algorithm>

#include "defkernel/ground.hpp"

namespace defkernel {

namespace {

// Evaluates atom derivability as a function of a valuation over its support
// atoms (all other atoms false; they cannot influence the result).
struct SupportFunction {
    const GroundProblem* g;
    std::size_t atom;
    std::vector<std::size_t> vars; // support atoms in canonical order
    mutable AtomSet scratch;

    SupportFunction(const GroundProblem& gp, std::size_t a)
        : g(&gp), atom(a), vars(gp.support[a].members()), scratch(gp.universe_size()) {}

    std::size_t arity() const { return vars.size(); }

    bool eval(std::uint64_t mask) const {
        for (std::size_t i = 0; i < vars.size(); ++i) scratch.set(vars[i], (mask >> i) & 1);
        return g->derivable(scratch, atom);
    }

    AtomSet structure(std::uint64_t mask) const {
        AtomSet s(g->universe_size());
        for (std::size_t i = 0; i < vars.size(); ++i)
            if ((mask >> i) & 1) s.set(vars[i]);
        return s;
    }
};

void check_support_budget(const SupportFunction& fn, const OrderCheckOptions& opts,
                          const Problem& problem) {
    if (fn.arity() > opts.max_support)
        throw BudgetError("dependency check budget exceeded: definiens of " +
                          problem.label(fn.atom) + " reads " + std::to_string(fn.arity()) +
                          " defined atoms (cap " + std::to_string(opts.max_support) + ")");
}

} // namespace

CheckResult is_dependency(const Problem& problem, const AtomRelation& rel,
                          const OrderCheckOptions& opts) {
    if (rel.universe_size() != problem.universe().size())
        throw InputError("relation universe mismatch");
    const GroundProblem& g = grounded(problem);
    for (std::size_t a = 0; a < g.universe_size(); ++a) {
        SupportFunction fn(g, a);
        if (fn.arity() == 0) continue;
        check_support_budget(fn, opts, problem);
        const AtomSet related = rel.below(a);
        // Bits of the support valuation that lie outside {B | B ∝ a}: the
        // function must be insensitive to them.
        std::uint64_t outside = 0;
        for (std::size_t i = 0; i < fn.arity(); ++i)
            if (!related.test(fn.vars[i])) outside |= UINT64_C(1) << i;
        if (outside == 0) continue;
        const std::uint64_t total = UINT64_C(1) << fn.arity();
        for (std::uint64_t base = 0; base < total; ++base) {
            if ((base & outside) != 0) continue; // enumerate inside-valuations once
            std::optional<std::uint64_t> first_true, first_false;
            // Sweep completions of the outside bits in increasing order.
            std::uint64_t sub = 0;
            for (;;) {
                const std::uint64_t mask = base | sub;
                const bool v = fn.eval(mask);
                if (v && !first_true) first_true = mask;
                if (!v && !first_false) first_false = mask;
                if (first_true && first_false) {
                    CheckResult r;
                    r.holds = false;
                    r.witness = OrderWitness{a, fn.structure(*first_true),
                                             fn.structure(*first_false)};
                    return r;
                }
                if (sub == outside) break;
                sub = (sub - outside) & outside; // next subset of `outside`
            }
        }
    }
    return {};
}

CheckResult is_monotone_dependency(const Problem& problem, const AtomRelation& rel,
                                   const OrderCheckOptions& opts) {
    if (rel.universe_size() != problem.universe().size())
        throw InputError("relation universe mismatch");
    const AtomRelation closed = rel.is_transitive() ? rel : rel.transitive_closure();
    const GroundProblem& g = grounded(problem);
    for (std::size_t a = 0; a < g.universe_size(); ++a) {
        SupportFunction fn(g, a);
        if (fn.arity() == 0) continue;
        check_support_budget(fn, opts, problem);
        const AtomSet related = closed.below(a);
        const AtomSet strict = closed.strictly_below(a);
        // Strict-cone bits stay fixed inside a base valuation; only same-layer
        // bits may be raised, and outside bits are swept freely.
        std::uint64_t layer_bits = 0, outside = 0;
        for (std::size_t i = 0; i < fn.arity(); ++i) {
            if (strict.test(fn.vars[i])) continue;
            if (related.test(fn.vars[i]))
                layer_bits |= UINT64_C(1) << i;
            else
                outside |= UINT64_C(1) << i;
        }
        // For each valuation of the strict cone and the layer, any(v) must
        // imply all(w) for every layer valuation w ⊇ v; covering flips plus
        // the diagonal suffice (the chain argument closes the rest).
        const std::uint64_t total = UINT64_C(1) << fn.arity();
        for (std::uint64_t base = 0; base < total; ++base) {
            if ((base & outside) != 0) continue;
            // any/all over completions of `outside`.
            std::optional<std::uint64_t> witness_true;
            bool any = false;
            {
                std::uint64_t sub = 0;
                for (;;) {
                    if (fn.eval(base | sub)) {
                        any = true;
                        witness_true = base | sub;
                        break;
                    }
                    if (sub == outside) break;
                    sub = (sub - outside) & outside;
                }
            }
            if (!any) continue;
            // Check all(w) for w = base's layer and each single-bit layer raise.
            std::vector<std::uint64_t> raised{base};
            for (std::size_t i = 0; i < fn.arity(); ++i) {
                const std::uint64_t bit = UINT64_C(1) << i;
                if ((layer_bits & bit) != 0 && (base & bit) == 0) raised.push_back(base | bit);
            }
            for (std::uint64_t w : raised) {
                std::uint64_t sub = 0;
                for (;;) {
                    const std::uint64_t mask = w | sub;
                    if (!fn.eval(mask)) {
                        CheckResult r;
                        r.holds = false;
                        r.witness = OrderWitness{a, fn.structure(*witness_true), fn.structure(mask)};
                        return r;
                    }
                    if (sub == outside) break;
                    sub = (sub - outside) & outside;
                }
            }
        }
    }
    return {};
}

CheckResult is_monotone_definition(const Problem& problem, const OrderCheckOptions& opts) {
    const GroundProblem& g = grounded(problem);
    for (std::size_t a = 0; a < g.universe_size(); ++a) {
        SupportFunction fn(g, a);
        if (fn.arity() == 0) continue;
        check_support_budget(fn, opts, problem);
        const std::uint64_t total = UINT64_C(1) << fn.arity();
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            if (!fn.eval(mask)) continue;
            for (std::size_t i = 0; i < fn.arity(); ++i) {
                const std::uint64_t bit = UINT64_C(1) << i;
                if ((mask & bit) != 0) continue;
                if (!fn.eval(mask | bit)) {
                    CheckResult r;
                    r.holds = false;
                    r.witness = OrderWitness{a, fn.structure(mask), fn.structure(mask | bit)};
                    return r;
                }
            }
        }
    }
    return {};
}

OrderReport analyze_order(const Problem& problem, const AtomRelation& rel,
                          const OrderCheckOptions& opts) {
    OrderReport report;
    report.transitive = rel.is_transitive();
    report.irreflexive = rel.is_irreflexive();
    report.asymmetric = rel.is_asymmetric();
    report.strict_part_well_founded = rel.strict_part_acyclic(&report.strict_cycle);
    report.dependency = is_dependency(problem, rel, opts);
    report.monotone_dependency = is_monotone_dependency(problem, rel, opts);
    report.strictly_orders = report.transitive && report.irreflexive && report.asymmetric &&
                             report.strict_part_well_founded && report.dependency.holds;
    // The monotone verdict is about the transitive closure (the canonical
    // candidate when the given relation is not already transitive).
    const bool closed_wf = report.transitive
                               ? report.strict_part_well_founded
                               : rel.transitive_closure().strict_part_acyclic();
    report.monotonically_orders = closed_wf && report.monotone_dependency.holds;
    return report;
}

Classification classify(const Problem& problem, const OrderCheckOptions& opts) {
    Classification c;
    std::set<std::string> defined_names;
    for (const auto& d : problem.definition().defined) defined_names.insert(d.name);
    c.positive = true;
    for (const auto& rule : problem.definition().rules)
        if (!polarity(rule.body, defined_names).positive) c.positive = false;
    c.monotone = is_monotone_definition(problem, opts);
    c.iterated_via_total = c.monotone.holds; // Δ monotone iff iterated over ∝_t
    if (problem.declared_relation)
        c.declared = analyze_order(problem, *problem.declared_relation, opts);
    return c;
}

InductionTrace extend_to_terminal(const Problem& problem, InductionTrace trace,
                                  const AtomRelation& rel) {
    if (!rel.strict_part_acyclic())
        throw InputError("extend_to_terminal needs an acyclic strict part");
    {
        const RespectReport r = respects(problem, trace, rel);
        if (!r.ok)
            throw InputError("trace does not respect the relation (atom " +
                             problem.label(*r.atom) + " at stage " + std::to_string(*r.stage) +
                             ")");
    }
    const GroundProblem& g = grounded(problem);
    for (;;) {
        const AtomSet& current = trace.limit();
        AtomSet gamma_bits = g.gamma(current);
        AtomSet applicable = gamma_bits;
        applicable.subtract(current);
        if (applicable.empty()) return trace;
        // A ≺-minimal applicable atom always has a saturated strict cone.
        std::optional<std::size_t> pick;
        applicable.for_each([&](std::size_t a) {
            if (pick) return;
            AtomSet blockers = rel.strictly_below(a);
            blockers &= applicable;
            if (blockers.empty()) pick = a;
        });
        if (!pick) throw Error("no ≺-minimal applicable atom; strict part not acyclic?");
        AtomSet chosen(current.universe_size());
        chosen.set(*pick);
        step(problem, trace, chosen);
    }
}

} // namespace defkernel
