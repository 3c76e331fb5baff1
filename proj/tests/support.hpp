#pragma once

#include <set>
#include <string>
#include <vector>

#include "defkernel/eval.hpp"
#include "defkernel/induction.hpp"
#include "defkernel/parser.hpp"
#include "defkernel/problem.hpp"

namespace defkernel::testing {

inline AtomSet atoms(const Problem& p, const std::vector<std::string>& labels) {
    AtomSet s = p.empty_set();
    for (const auto& l : labels) s.set(parse_ground_atom(l, p));
    return s;
}

inline std::vector<std::string> labels(const Problem& p, const AtomSet& s) {
    std::vector<std::string> out;
    s.for_each([&](std::size_t i) { out.push_back(p.label(i)); });
    return out;
}

// All defp-structures of the problem, in canonical order. Test-scale only.
inline std::vector<AtomSet> all_structures(const Problem& p) {
    const std::size_t n = p.universe().size();
    std::vector<AtomSet> out;
    for (std::uint64_t mask = 0; mask < (UINT64_C(1) << n); ++mask) {
        AtomSet s(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) s.set(i);
        out.push_back(std::move(s));
    }
    return out;
}

// Independent oracle for derivability: evaluates rule bodies on the fully
// composed structure, bypassing both the grounded path and the overlay view.
inline bool derives_composed(const Problem& p, const AtomSet& set, std::size_t atom) {
    const FiniteStructure composed = compose(p.context(), p.universe(), set);
    const DomainAtom& a = p.universe().atom(atom);
    for (const auto& rule : p.definition().rules) {
        if (rule.head.name != a.predicate.name) continue;
        Assignment assignment;
        for (std::size_t i = 0; i < rule.head_vars.size(); ++i)
            assignment.push(rule.head_vars[i], a.args[i]);
        if (eval_formula(composed, assignment, rule.body)) return true;
    }
    return false;
}

// Pointwise Γ agreement of two problems over every structure (same universe).
inline bool gamma_pointwise_equal(const Problem& a, const Problem& b) {
    if (a.universe().size() != b.universe().size()) return false;
    for (const auto& s : all_structures(a))
        if (!(gamma(a, s) == gamma(b, s))) return false;
    return true;
}

// The reachable-structure set computed by definition: repeated expansion with
// derivability checked through the slow composed-structure oracle.
inline std::set<std::vector<std::size_t>> reachable_brute(const Problem& p, const AtomSet& start) {
    std::set<std::vector<std::size_t>> seen;
    std::vector<AtomSet> frontier{start};
    seen.insert(start.members());
    while (!frontier.empty()) {
        AtomSet state = frontier.back();
        frontier.pop_back();
        std::vector<std::size_t> applicable;
        for (std::size_t i = 0; i < p.universe().size(); ++i)
            if (!state.test(i) && derives_composed(p, state, i)) applicable.push_back(i);
        for (std::uint64_t mask = 1; mask < (UINT64_C(1) << applicable.size()); ++mask) {
            AtomSet next = state;
            for (std::size_t i = 0; i < applicable.size(); ++i)
                if ((mask >> i) & 1) next.set(applicable[i]);
            if (seen.insert(next.members()).second) frontier.push_back(next);
        }
    }
    return seen;
}

} // namespace defkernel::testing
