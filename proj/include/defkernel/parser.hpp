#pragma once

#include <map>
#include <string>

#include "defkernel/problem.hpp"

namespace defkernel {

// Text front-end for the problem file format:
//
//   # transitive closure
//   domain a b c ;
//   pred G/2 = { (a,a), (b,c), (c,b) } ;
//   pred R/2 ;
//   fun s/1 = { (a)->b, (b)->c, (c)->c } ;
//   obj zero = a ;
//   define {
//     R(x,y) <- G(x,y).
//     R(x,y) <- exists z: (R(x,z) & R(z,y)).
//   }
//   order { R(a,a) < R(b,b). }
//   expect defined { R(a,a) R(b,b) } ;
//   expect saturated = true ;
//
// Declarations end with `;`, rules with `.` inside `define { }`. A predicate
// is defined iff it heads a rule; declaring an extension for a defined
// predicate is an error. `order` pairs are closed transitively on load.
// Comments run from `#` to end of line.
Problem parse_problem(const std::string& text);

// Formula syntax: precedence ~ > & > | > =>, quantifier bodies parenthesized
// (`exists x: (...)`, `forall x: (...)`), equality `t = t`, constants
// `true` / `false`. Unbound identifiers resolve against `vocabulary`;
// names in `free_variables` parse as variables; other unknown bare
// identifiers become parameter object symbols.
FormulaPtr parse_formula(const std::string& text, const std::map<std::string, Symbol>& vocabulary,
                         const std::vector<std::string>& free_variables = {});

// A ground atom of the problem's defined-atom universe, e.g. "R(a,b)" or "Val".
std::size_t parse_ground_atom(const std::string& text, const Problem& problem);

std::string render(const Problem& problem);
std::string render(const FormulaPtr& formula);
std::string render(const Term& term);
std::string render(const Rule& rule);

} // namespace defkernel
