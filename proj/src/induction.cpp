#include "defkernel/induction.hpp"

#include "defkernel/eval.hpp"
#include "defkernel/ground.hpp"

namespace defkernel {

InductionTrace InductionTrace::from_start(const AtomSet& start) {
    InductionTrace t;
    t.stages.push_back(start);
    t.rank.assign(start.universe_size(), -1);
    start.for_each([&](std::size_t i) { t.rank[i] = 0; }); // present from the start
    return t;
}

AtomSet InductionTrace::derived_at(std::size_t stage) const {
    AtomSet d = stages.at(stage + 1);
    d.subtract(stages.at(stage));
    return d;
}

bool InductionTrace::consistent() const {
    for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
        if (!stages[i].is_subset_of(stages[i + 1])) return false;
        if (stages[i] == stages[i + 1]) return false;
    }
    for (std::size_t a = 0; a < rank.size(); ++a) {
        if (!stages.back().test(a)) {
            if (rank[a] != -1) return false;
            continue;
        }
        if (stages.front().test(a)) continue;
        const auto r = rank[a];
        if (r < 0 || static_cast<std::size_t>(r) + 1 >= stages.size()) return false;
        if (stages[static_cast<std::size_t>(r)].test(a)) return false;
        if (!stages[static_cast<std::size_t>(r) + 1].test(a)) return false;
    }
    return true;
}

bool derives(const Problem& problem, const AtomSet& set, std::size_t atom) {
    const DomainAtom& a = problem.universe().atom(atom);
    EvalContext ctx{&problem.context(), &problem.universe(), &set};
    for (const auto& rule : problem.definition().rules) {
        if (rule.head.name != a.predicate.name) continue;
        Assignment assignment;
        for (std::size_t i = 0; i < rule.head_vars.size(); ++i)
            assignment.push(rule.head_vars[i], a.args[i]);
        if (eval_formula(ctx, assignment, rule.body)) return true;
    }
    return false;
}

AtomSet gamma(const Problem& problem, const AtomSet& set) { return grounded(problem).gamma(set); }

bool is_saturated_on(const Problem& problem, const AtomSet& set, const AtomSet& scope) {
    AtomSet derivable = gamma(problem, set);
    derivable &= scope;
    return derivable.is_subset_of(set);
}

bool is_saturated(const Problem& problem, const AtomSet& set) {
    return gamma(problem, set).is_subset_of(set);
}

bool is_terminal(const Problem& problem, const InductionTrace& trace) {
    return is_saturated(problem, trace.limit());
}

void step(const Problem& problem, InductionTrace& trace, const AtomSet& chosen) {
    if (chosen.empty()) throw StepError("step derives no atom", std::nullopt);
    const AtomSet& last = trace.limit();
    std::optional<std::size_t> bad;
    chosen.for_each([&](std::size_t a) {
        if (!bad && last.test(a)) bad = a;
    });
    if (bad) throw StepError("atom already derived: " + problem.label(*bad), bad);
    const GroundProblem& g = grounded(problem);
    chosen.for_each([&](std::size_t a) {
        if (!bad && !g.derivable(last, a)) bad = a;
    });
    if (bad) throw StepError("atom not derivable at this stage: " + problem.label(*bad), bad);

    AtomSet next = last;
    next |= chosen;
    const auto stage = static_cast<std::int32_t>(trace.stages.size() - 1);
    chosen.for_each([&](std::size_t a) { trace.rank[a] = stage; });
    trace.stages.push_back(std::move(next));
}

InductionTrace eager_induction(const Problem& problem, std::size_t max_stages) {
    if (max_stages == 0) max_stages = problem.universe().size() + 2;
    const GroundProblem& g = grounded(problem);
    InductionTrace trace = InductionTrace::from_start(problem.empty_set());
    for (std::size_t i = 0; i < max_stages; ++i) {
        AtomSet add = g.gamma(trace.limit());
        add.subtract(trace.limit());
        if (add.empty()) return trace;
        step(problem, trace, add);
    }
    throw Error("eager induction exceeded the stage bound");
}

RespectReport respects(const Problem& problem, const InductionTrace& trace,
                       const AtomRelation& rel) {
    if (rel.universe_size() != problem.universe().size())
        throw InputError("relation universe mismatch");
    const GroundProblem& g = grounded(problem);
    for (std::size_t i = 0; i + 1 < trace.stages.size(); ++i) {
        const AtomSet& current = trace.stages[i];
        AtomSet gamma_bits = g.gamma(current);
        AtomSet derived = trace.derived_at(i);
        RespectReport bad;
        derived.for_each([&](std::size_t a) {
            if (!bad.stage) {
                AtomSet cone = rel.strictly_below(a);
                cone &= gamma_bits;
                cone.subtract(current);
                if (!cone.empty()) {
                    bad.ok = false;
                    bad.stage = i;
                    bad.atom = a;
                    bad.missing = cone.members().front();
                }
            }
        });
        if (!bad.ok) return bad;
    }
    return {};
}

FollowReport follows(const InductionTrace& trace, const AtomRelation& rel) {
    const std::size_t n = trace.rank.size();
    for (std::size_t b = 0; b < n; ++b) {
        if (trace.rank[b] < 0) continue;
        FollowReport bad;
        rel.strictly_below(b).for_each([&](std::size_t a) {
            if (!bad.earlier && trace.rank[a] >= 0 && trace.rank[a] >= trace.rank[b]) {
                bad.ok = false;
                bad.earlier = a;
                bad.later = b;
            }
        });
        if (!bad.ok) return bad;
    }
    return {};
}

std::vector<std::size_t> Rng::nonempty_subset(const std::vector<std::size_t>& items) {
    if (items.empty()) throw InputError("cannot draw from an empty applicable set");
    std::vector<std::size_t> out;
    while (out.empty()) {
        out.clear();
        for (std::size_t item : items)
            if (next() & 1) out.push_back(item);
    }
    return out;
}

InductionTrace random_induction(const Problem& problem, std::uint64_t seed, InductionPolicy policy,
                                const AtomRelation* rel) {
    if (policy == InductionPolicy::Respect) {
        if (rel == nullptr) throw InputError("respect policy needs a relation");
        if (!rel->strict_part_acyclic())
            throw InputError("respect policy needs an acyclic strict part");
    }
    const GroundProblem& g = grounded(problem);
    Rng rng(seed);
    InductionTrace trace = InductionTrace::from_start(problem.empty_set());
    for (;;) {
        const AtomSet& current = trace.limit();
        AtomSet applicable = g.gamma(current);
        applicable.subtract(current);
        if (policy == InductionPolicy::Respect) {
            AtomSet gamma_bits = g.gamma(current);
            AtomSet eligible(applicable.universe_size());
            applicable.for_each([&](std::size_t a) {
                AtomSet cone = rel->strictly_below(a);
                cone &= gamma_bits;
                if (cone.is_subset_of(current)) eligible.set(a);
            });
            applicable = eligible;
        }
        if (applicable.empty()) return trace;

        AtomSet chosen(applicable.universe_size());
        if (policy == InductionPolicy::Singleton) {
            const auto items = applicable.members();
            chosen.set(items[rng.below(items.size())]);
        } else {
            for (std::size_t a : rng.nonempty_subset(applicable.members())) chosen.set(a);
        }
        step(problem, trace, chosen);
    }
}

} // namespace defkernel
