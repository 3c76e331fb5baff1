#pragma once

#include <cstdint>
#include <vector>

#include "defkernel/problem.hpp"

namespace defkernel {

// Rule bodies instantiated per defined atom, with quantifiers expanded over
// the domain and every parameter-only subformula evaluated away. What remains
// is a Boolean function over defined atoms; its variable set is the exact
// dependency support the order and safety analyses enumerate over.
struct GroundFormula {
    enum class Kind : std::uint8_t { Const, Lit, Not, And, Or };
    Kind kind = Kind::Const;
    bool value = false;     // Const
    std::uint32_t atom = 0; // Lit
    std::vector<GroundFormula> kids;

    static GroundFormula constant(bool v);
    static GroundFormula literal(std::uint32_t atom);

    bool eval(const AtomSet& structure) const;
    void collect_atoms(AtomSet& out) const;
    bool has_negative_literal(bool under_negation = false) const;
};

struct GroundRule {
    std::size_t rule_index = 0;
    GroundFormula body;
    bool positive = false; // no defined atom occurs under a negation
};

struct GroundProblem {
    explicit GroundProblem(const Problem& problem);

    std::size_t universe_size() const { return rules_for.size(); }
    // Grounded definientia of each atom; empty when no rule can derive it.
    std::vector<std::vector<GroundRule>> rules_for;
    std::vector<AtomSet> support;          // atoms read by the definientia
    std::vector<std::vector<std::uint32_t>> dependents; // reverse support index
    AtomSet const_true;  // derivable in every structure
    AtomSet const_false; // derivable in none

    bool derivable(const AtomSet& structure, std::size_t atom) const;
    // True when some rule for `atom` has a positive grounded body that holds.
    bool positively_derivable(const AtomSet& structure, std::size_t atom) const;
    AtomSet gamma(const AtomSet& structure) const;
    // Refresh `gamma_bits` after `changed` atoms flipped in `structure`.
    void gamma_update(const AtomSet& structure, const std::vector<std::size_t>& changed,
                      AtomSet& gamma_bits) const;
};

// Shared lazily-built grounding for a problem.
const GroundProblem& grounded(const Problem& problem);

} // namespace defkernel
