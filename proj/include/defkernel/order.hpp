#pragma once

#include <optional>
#include <string>

#include "defkernel/induction.hpp"
#include "defkernel/problem.hpp"

namespace defkernel {

// Counterexample to a dependency/monotonicity check: structures 𝔄 ⊢ atom and
// 𝔅 ⊬ atom that the checked condition says should agree.
struct OrderWitness {
    std::size_t atom = 0;
    AtomSet derives_in;
    AtomSet fails_in;
};

struct CheckResult {
    bool holds = true;
    std::optional<OrderWitness> witness;
};

struct OrderCheckOptions {
    // The checks are exponential in the number of defined atoms a single
    // atom's definiens reads; fail loudly beyond this.
    std::size_t max_support = 16;
};

// Def.: ∝ is a dependency of Δ in O when for all A and all 𝔄, 𝔅 agreeing on
// {B | B ∝ A}, 𝔄 ⊢ A iff 𝔅 ⊢ A. Checked exactly, factored per atom through
// the grounded definientia.
CheckResult is_dependency(const Problem& problem, const AtomRelation& rel,
                          const OrderCheckOptions& opts = {});

// Def.: ∝ (transitive; closed here if not) is a monotone dependency when for
// all A and all 𝔄, 𝔅 with 𝔄|_{≺A} = 𝔅|_{≺A} and 𝔄|_{∝A} ⊆ 𝔅|_{∝A},
// 𝔄 ⊢ A implies 𝔅 ⊢ A.
CheckResult is_monotone_dependency(const Problem& problem, const AtomRelation& rel,
                                   const OrderCheckOptions& opts = {});

// Δ is monotone in O: 𝔄 ⊆ 𝔅 implies Γ(𝔄) ⊆ Γ(𝔅); covering pairs suffice.
CheckResult is_monotone_definition(const Problem& problem, const OrderCheckOptions& opts = {});

struct OrderReport {
    bool transitive = false;
    bool irreflexive = false;
    bool asymmetric = false;
    bool strict_part_well_founded = false; // acyclicity of ≺ on the finite universe
    std::vector<std::size_t> strict_cycle; // witness when not well-founded
    CheckResult dependency;
    CheckResult monotone_dependency; // of the transitive closure
    bool strictly_orders = false;
    bool monotonically_orders = false;
};

OrderReport analyze_order(const Problem& problem, const AtomRelation& rel,
                          const OrderCheckOptions& opts = {});

struct Classification {
    bool positive = false; // every rule body positive in defp(Δ)
    CheckResult monotone;
    bool iterated_via_total = false; // Δ monotone iff iterated over the total relation
    std::optional<OrderReport> declared; // verdicts for the declared relation, when present
    bool iterated() const {
        return iterated_via_total || (declared && declared->monotonically_orders);
    }
    bool ordered() const { return declared && declared->strictly_orders; }
};

Classification classify(const Problem& problem, const OrderCheckOptions& opts = {});

// Extends a trace respecting `rel` to a terminal one that still respects it,
// deriving at each step a ≺-minimal derivable-but-underived atom. The strict
// part must be acyclic and the given trace must respect `rel`.
InductionTrace extend_to_terminal(const Problem& problem, InductionTrace trace,
                                  const AtomRelation& rel);

} // namespace defkernel
