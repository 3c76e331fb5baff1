#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "defkernel/model.hpp"
#include "defkernel/syntax.hpp"

namespace defkernel {

struct GroundProblem;

// A definition together with the finite context it is evaluated in, the
// enumerated defined-atom universe, and optional declared order/expectations.
// Treated as immutable once built.
class Problem {
public:
    Problem() = default;
    Problem(Definition definition, FiniteStructure context);

    const Definition& definition() const { return definition_; }
    const FiniteStructure& context() const { return context_; }
    const AtomUniverse& universe() const { return universe_; }

    std::optional<AtomRelation> declared_relation; // transitively closed on load
    std::map<std::string, AtomSet> expected_sets;
    std::map<std::string, bool> expected_flags;

    AtomSet empty_set() const { return AtomSet(universe_.size()); }
    std::string label(std::size_t atom) const { return universe_.label(atom); }

private:
    Definition definition_;
    FiniteStructure context_;
    AtomUniverse universe_;

    mutable std::shared_ptr<const GroundProblem> ground_;
    mutable std::mutex ground_mutex_;
    friend const GroundProblem& grounded(const Problem&);

public:
    Problem(const Problem& o)
        : declared_relation(o.declared_relation), expected_sets(o.expected_sets),
          expected_flags(o.expected_flags), definition_(o.definition_), context_(o.context_),
          universe_(o.universe_), ground_(o.ground_) {}
    Problem& operator=(const Problem& o) {
        if (this != &o) {
            declared_relation = o.declared_relation;
            expected_sets = o.expected_sets;
            expected_flags = o.expected_flags;
            definition_ = o.definition_;
            context_ = o.context_;
            universe_ = o.universe_;
            ground_ = o.ground_;
        }
        return *this;
    }
};

} // namespace defkernel
