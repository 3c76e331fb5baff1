#include "defkernel/safety.hpp"

#include <algorithm>
#include <deque>

#include "defkernel/ground.hpp"
#include "defkernel/order.hpp"

namespace defkernel {

SafetyEngine::SafetyEngine(const Problem& problem, SafetyBudgets budgets)
    : problem_(problem), budgets_(budgets) {}

void SafetyEngine::set_verified_order(const AtomRelation& rel) {
    verified_order_ = rel.is_transitive() ? rel : rel.transitive_closure();
}

bool SafetyEngine::adopt_declared_order() {
    if (verified_order_) return true;
    if (!problem_.declared_relation) return false;
    const OrderReport report = analyze_order(problem_, *problem_.declared_relation);
    if (!report.monotonically_orders) return false;
    set_verified_order(*problem_.declared_relation);
    return true;
}

bool SafetyEngine::exhaustive_feasible() const {
    // Atoms no rule can ever derive never enter a reachable structure, so the
    // searchable space is 2^(universe minus those).
    const GroundProblem& g = grounded(problem_);
    const std::size_t live = problem_.universe().size() - g.const_false.count();
    return live <= budgets_.max_exhaustive_atoms;
}

const ReachabilityIndex& SafetyEngine::reachable(const AtomSet& start) {
    auto it = reach_cache_.find(start);
    if (it != reach_cache_.end()) return it->second;

    const GroundProblem& g = grounded(problem_);
    ReachabilityIndex index;
    index.start = start;
    index.safe = AtomSet::full(problem_.universe().size());
    index.possible = problem_.empty_set();

    std::unordered_map<AtomSet, bool, AtomSetHash> seen;
    std::deque<AtomSet> frontier;
    seen.emplace(start, true);
    frontier.push_back(start);
    std::size_t edges = 0;
    while (!frontier.empty()) {
        AtomSet state = std::move(frontier.front());
        frontier.pop_front();
        index.visited.push_back(state);
        const AtomSet gamma_bits = g.gamma(state);
        index.safe &= gamma_bits;
        index.possible |= gamma_bits;

        AtomSet applicable = gamma_bits;
        applicable.subtract(state);
        const auto items = applicable.members();
        if (items.size() >= 25)
            throw BudgetError("safety search budget exceeded: " + std::to_string(items.size()) +
                              " simultaneously applicable atoms");
        const std::uint64_t subsets = (UINT64_C(1) << items.size()) - 1;
        for (std::uint64_t mask = 1; mask <= subsets; ++mask) {
            if (++edges > budgets_.max_edges)
                throw BudgetError("safety search budget exceeded (successor enumerations)");
            AtomSet next = state;
            for (std::size_t i = 0; i < items.size(); ++i)
                if ((mask >> i) & 1) next.set(items[i]);
            if (seen.emplace(next, true).second) {
                if (seen.size() > budgets_.max_states)
                    throw BudgetError("safety search budget exceeded (visited structures)");
                frontier.push_back(std::move(next));
            }
        }
    }
    return reach_cache_.emplace(start, std::move(index)).first->second;
}

bool SafetyEngine::order_certificate(const AtomSet& start, std::size_t atom) const {
    if (!verified_order_) return false;
    const GroundProblem& g = grounded(problem_);
    if (!g.derivable(start, atom)) return false;
    // Respecting a verified monotone dependency: derivable with a saturated
    // strictly-smaller cone is safely derivable.
    AtomSet cone = verified_order_->strictly_below(atom);
    bool saturated = true;
    cone.for_each([&](std::size_t b) {
        if (saturated && !start.test(b) && g.derivable(start, b)) saturated = false;
    });
    return saturated;
}

std::optional<SafetyMethod> SafetyEngine::certify(const AtomSet& start, std::size_t atom) {
    const GroundProblem& g = grounded(problem_);
    if (g.positively_derivable(start, atom)) return SafetyMethod::PositiveRule;
    if (order_certificate(start, atom)) return SafetyMethod::OrderCertificate;
    if (g.derivable(start, atom) && exhaustive_feasible() && reachable(start).safe.test(atom))
        return SafetyMethod::Exhaustive;
    return std::nullopt;
}

bool SafetyEngine::safely_derivable(const AtomSet& start, std::size_t atom) {
    const GroundProblem& g = grounded(problem_);
    if (!g.derivable(start, atom)) return false;
    if (g.positively_derivable(start, atom)) return true;
    if (order_certificate(start, atom)) return true;
    if (!exhaustive_feasible())
        throw BudgetError("safe derivability undecided within budget for " + problem_.label(atom));
    return reachable(start).safe.test(atom);
}

bool SafetyEngine::strictly_underivable(const AtomSet& start, std::size_t atom) {
    const GroundProblem& g = grounded(problem_);
    if (g.derivable(start, atom)) return false;
    if (g.const_false.test(atom)) return true;
    if (is_saturated(problem_, start)) return true; // only reachable structure is `start`
    if (!exhaustive_feasible())
        throw BudgetError("strict underivability undecided within budget for " +
                          problem_.label(atom));
    return !reachable(start).possible.test(atom);
}

AtomSet SafetyEngine::safe_set(const AtomSet& start) {
    const GroundProblem& g = grounded(problem_);
    AtomSet candidates = g.gamma(start);
    // Certificates first; the remainder needs the exhaustive closure.
    AtomSet certified(problem_.universe().size());
    bool rest = false;
    candidates.for_each([&](std::size_t a) {
        if (g.positively_derivable(start, a) || order_certificate(start, a))
            certified.set(a);
        else
            rest = true;
    });
    if (!rest) return certified;
    if (!exhaustive_feasible())
        throw BudgetError("safe set undecided within budget (" +
                          std::to_string(problem_.universe().size()) + " defined atoms)");
    return reachable(start).safe | certified;
}

AtomSet SafetyEngine::certified_safe_set(const AtomSet& start) {
    const GroundProblem& g = grounded(problem_);
    AtomSet out(problem_.universe().size());
    g.gamma(start).for_each([&](std::size_t a) {
        if (g.positively_derivable(start, a) || order_certificate(start, a)) out.set(a);
    });
    return out;
}

SafeConstruction SafetyEngine::safely_defined_structure() {
    // Greedy iteration 𝔄_{i+1} = 𝔄_i ∪ Safe(𝔄_i); confluence makes the
    // greediness irrelevant. When the exact search is (or turns out to be)
    // beyond budget, fall back to the certified construction, which is
    // complete once a declared relation verifiably monotonically orders Δ.
    bool exhaustive = exhaustive_feasible();
    if (!exhaustive && !adopt_declared_order())
        throw BudgetError("instance beyond the exhaustive budget and no declared relation "
                          "monotonically orders it");
    InductionTrace trace = InductionTrace::from_start(problem_.empty_set());
    for (;;) {
        AtomSet grow(problem_.universe().size());
        if (exhaustive) {
            try {
                grow = safe_set(trace.limit());
            } catch (const BudgetError&) {
                if (!adopt_declared_order()) throw;
                exhaustive = false;
                continue;
            }
        } else {
            grow = certified_safe_set(trace.limit());
        }
        grow.subtract(trace.limit());
        if (grow.empty()) break;
        step(problem_, trace, grow);
    }
    return SafeConstruction{trace.limit(), std::move(trace),
                            exhaustive ? "exhaustive" : "order-certified"};
}

InductionTrace SafetyEngine::random_safe_induction(std::uint64_t seed) {
    Rng rng(seed);
    InductionTrace trace = InductionTrace::from_start(problem_.empty_set());
    const bool exhaustive = exhaustive_feasible();
    if (!exhaustive && !adopt_declared_order())
        throw BudgetError("instance beyond the exhaustive budget and no declared relation "
                          "monotonically orders it");
    for (;;) {
        AtomSet safe = exhaustive ? safe_set(trace.limit()) : certified_safe_set(trace.limit());
        safe.subtract(trace.limit());
        if (safe.empty()) return trace; // safe-terminal
        AtomSet chosen(safe.universe_size());
        for (std::size_t a : rng.nonempty_subset(safe.members())) chosen.set(a);
        step(problem_, trace, chosen);
    }
}

std::vector<AtomSet> SafetyEngine::all_fixpoints() {
    if (fixpoints_) return *fixpoints_;
    const GroundProblem& g = grounded(problem_);
    const std::size_t n = problem_.universe().size();
    // Constant atoms are forced: never-derivable ones are false in every
    // fixpoint, always-derivable ones true. Enumerate the rest.
    std::vector<std::size_t> free_atoms;
    AtomSet forced(n);
    for (std::size_t a = 0; a < n; ++a) {
        if (g.const_false.test(a)) continue;
        if (g.const_true.test(a)) {
            forced.set(a);
            continue;
        }
        free_atoms.push_back(a);
    }
    if (free_atoms.size() > std::min<std::size_t>(budgets_.max_fixpoint_atoms, 30))
        throw BudgetError("fixpoint enumeration budget exceeded: " +
                          std::to_string(free_atoms.size()) + " non-constant atoms");
    std::vector<AtomSet> out;
    const std::uint64_t total = UINT64_C(1) << free_atoms.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        AtomSet candidate = forced;
        for (std::size_t i = 0; i < free_atoms.size(); ++i)
            if ((mask >> i) & 1) candidate.set(free_atoms[i]);
        if (g.gamma(candidate) == candidate) out.push_back(std::move(candidate));
    }
    std::sort(out.begin(), out.end());
    fixpoints_ = out;
    return out;
}

SafetyReport SafetyEngine::report() {
    SafetyReport report;
    SafeConstruction construction = safely_defined_structure();
    report.method = construction.method;
    report.defined_true = construction.limit;
    const GroundProblem& g = grounded(problem_);
    const AtomSet gamma_limit = g.gamma(construction.limit);
    report.saturated = gamma_limit.is_subset_of(construction.limit);
    report.is_fixpoint = gamma_limit == construction.limit;

    // Strict underivability from the limit, not from ∅: atoms that no
    // continuation of the construction can ever derive.
    report.defined_false = problem_.empty_set();
    if (report.saturated) {
        report.defined_false = gamma_limit.complement();
        report.defined_false.subtract(construction.limit);
    } else {
        const ReachabilityIndex& r = reachable(construction.limit);
        report.defined_false = r.possible.complement();
        report.defined_false.subtract(construction.limit);
    }
    report.undecided = AtomSet::full(problem_.universe().size());
    report.undecided.subtract(report.defined_true);
    report.undecided.subtract(report.defined_false);

    // Minimality / uniqueness of the limit among Γ-fixpoints: enumerate when
    // affordable, otherwise use the ordered/iterated fixpoint propositions.
    bool via_theorems = false;
    try {
        const std::vector<AtomSet> fps = all_fixpoints();
        report.unique_fixpoint = report.is_fixpoint && fps.size() == 1;
        report.minimal_fixpoint = false;
        if (report.is_fixpoint) {
            report.minimal_fixpoint = true;
            for (const auto& f : fps)
                if (!(f == construction.limit) && f.is_subset_of(construction.limit))
                    report.minimal_fixpoint = false;
        }
    } catch (const BudgetError&) {
        via_theorems = true;
    }
    if (via_theorems) {
        if (!problem_.declared_relation)
            throw BudgetError("fixpoint analysis beyond budget and no declared relation");
        const OrderReport order = analyze_order(problem_, *problem_.declared_relation);
        if (order.strictly_orders) {
            // Ordered definitions: the defined structure is the one fixpoint.
            report.unique_fixpoint = true;
            report.minimal_fixpoint = true;
        } else {
            throw BudgetError("fixpoint analysis beyond budget; the declared relation does not "
                              "strictly order the definition");
        }
    }
    return report;
}

std::vector<std::string> SafetyEngine::premise_violations(const InductionTrace& trace) const {
    const GroundProblem& g = grounded(problem_);
    std::vector<std::string> notes;
    const AtomSet& limit = trace.limit();
    for (std::size_t i = 0; i + 1 < trace.stages.size(); ++i) {
        const AtomSet derived = trace.derived_at(i);
        derived.for_each([&](std::size_t a) {
            // The rule applied at stage i no longer fires at the limit even
            // though some other rule may still cover A.
            bool fired_then = false, fires_now = false;
            for (const auto& rule : g.rules_for[a]) {
                const bool then = rule.body.eval(trace.stages[i]);
                const bool now = rule.body.eval(limit);
                if (then && now) return; // some applied rule still holds
                fired_then = fired_then || then;
                fires_now = fires_now || now;
            }
            if (fired_then)
                notes.push_back(problem_.label(a) + " derived at stage " + std::to_string(i) +
                                (fires_now ? " by a rule whose premise was later violated "
                                             "(another rule covers it now)"
                                           : " by a rule whose premise was later violated"));
        });
    }
    return notes;
}

} // namespace defkernel
