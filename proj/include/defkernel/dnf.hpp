#pragma once

#include <string>
#include <vector>

#include "defkernel/problem.hpp"

namespace defkernel {

// A propositional DNF: a non-empty list of disjuncts, each a conjunction of
// literals over `variables`.
struct DnfFormula {
    struct Disjunct {
        std::vector<std::string> positive;
        std::vector<std::string> negative;
    };
    std::vector<std::string> variables;
    std::vector<Disjunct> disjuncts;
};

// `(p & ~q) | q | ~p` — propositional literals only.
DnfFormula parse_dnf(const std::string& text);

// Encodes the DNF as a context structure over Prop/1, Dis/1, Pos/2, Neg/2
// with domain = variables ∪ fresh disjunct identifiers d1..dk, defining
//   Val    <- exists d: (Dis(d) & forall p: (Pos(d,p) => T(p))
//                               & forall p: (Neg(d,p) => ~T(p))).
//   T(p)   <- Val & Prop(p).
// Val holds in the safely defined structure iff the DNF is valid.
Problem dnf_to_problem(const DnfFormula& dnf);

// Membership of Val in the safely defined structure of the encoding.
bool dnf_validity_via_safety(const DnfFormula& dnf);

// Truth-table evaluation over all 2^n assignments; at most 20 variables.
bool dnf_validity_oracle(const DnfFormula& dnf);

std::string render(const DnfFormula& dnf);

} // namespace defkernel
