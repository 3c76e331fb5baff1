#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "defkernel/induction.hpp"
#include "defkernel/problem.hpp"

namespace defkernel {

struct SafetyBudgets {
    std::size_t max_states = std::size_t(1) << 18; // visited structures per reachability closure
    std::size_t max_edges = std::size_t(1) << 24;  // successor enumerations per closure
    std::size_t max_exhaustive_atoms = 20;         // exhaustive searches need |domat| within this
    std::size_t max_fixpoint_atoms = 20;           // non-constant atoms for fixpoint enumeration
};

// Closure of the natural-induction successor relation from a start structure.
// Every reachable structure is the limit of some natural induction from the
// start and vice versa, so:
//   safe     = ∩ Γ(𝔄') over reachable 𝔄'  (the safely derivable atoms)
//   possible = ∪ Γ(𝔄') over reachable 𝔄'  (complement = strictly underivable)
struct ReachabilityIndex {
    AtomSet start;
    std::vector<AtomSet> visited; // insertion (BFS) order; closed under successors
    AtomSet safe;
    AtomSet possible;
};

// How a safety verdict was certified.
enum class SafetyMethod { PositiveRule, OrderCertificate, Exhaustive };

struct SafetyReport {
    AtomSet defined_true;  // the safely defined structure
    AtomSet defined_false; // strictly underivable at the limit
    AtomSet undecided;     // derivable-but-not-safely-derivable or neither
    bool saturated = false;
    bool is_fixpoint = false;
    bool minimal_fixpoint = false;
    bool unique_fixpoint = false;
    std::string method; // "exhaustive" or "order-certified" construction
};

struct SafeConstruction {
    AtomSet limit;
    InductionTrace trace; // a safe-terminal natural induction reaching the limit
    std::string method;
};

// Safe derivability, strict underivability, safe inductions and the safely
// defined structure. Exhaustive reachability is exact within budgets; larger
// instances fall back to sound certificates (positive rules, and the
// saturated-cone criterion once a declared relation has been verified to
// monotonically order the definition).
class SafetyEngine {
public:
    explicit SafetyEngine(const Problem& problem, SafetyBudgets budgets = {});

    const Problem& problem() const { return problem_; }
    const SafetyBudgets& budgets() const { return budgets_; }

    // Registers a relation already verified to monotonically order Δ in O;
    // enables the order certificate and the large-instance construction.
    void set_verified_order(const AtomRelation& rel);
    // Verifies the problem's declared relation and registers it when it
    // passes; returns whether a verified order is now available.
    bool adopt_declared_order();

    // Whether exact reachability searches fit the configured budget.
    bool exhaustive_available() const { return exhaustive_feasible(); }

    const ReachabilityIndex& reachable(const AtomSet& start);

    bool safely_derivable(const AtomSet& start, std::size_t atom);
    bool strictly_underivable(const AtomSet& start, std::size_t atom);
    // Like safely_derivable, reporting how the verdict was certified.
    std::optional<SafetyMethod> certify(const AtomSet& start, std::size_t atom);

    // Safe_Δ(start), exact. Throws BudgetError beyond the exhaustive cap.
    AtomSet safe_set(const AtomSet& start);
    // Sound under-approximation by certificates only; never throws.
    AtomSet certified_safe_set(const AtomSet& start);

    SafeConstruction safely_defined_structure();
    InductionTrace random_safe_induction(std::uint64_t seed);

    // All Γ-fixpoints in canonical order. Enumerates over the non-constant
    // atoms only.
    std::vector<AtomSet> all_fixpoints();

    SafetyReport report();

    // Diagnostic for rule applications whose premise was later violated (the
    // trace stays formally safe; reported for information only).
    std::vector<std::string> premise_violations(const InductionTrace& trace) const;

private:
    bool exhaustive_feasible() const;
    bool order_certificate(const AtomSet& start, std::size_t atom) const;

    const Problem& problem_;
    SafetyBudgets budgets_;
    std::optional<AtomRelation> verified_order_;
    std::unordered_map<AtomSet, ReachabilityIndex, AtomSetHash> reach_cache_;
    std::optional<std::vector<AtomSet>> fixpoints_;
};

} // namespace defkernel
