#pragma once

#include <string>
#include <vector>

#include "defkernel/model.hpp"
#include "defkernel/syntax.hpp"

namespace defkernel {

// Variable assignment as a scoped environment; lookups are by innermost
// binding.
class Assignment {
public:
    void push(const std::string& var, std::size_t value) { frames_.emplace_back(var, value); }
    void pop() { frames_.pop_back(); }
    std::size_t lookup(const std::string& var) const;

private:
    std::vector<std::pair<std::string, std::size_t>> frames_;
};

// Evaluation view of O ∘ A without materializing the composed structure:
// defined predicates read from `defined` (when given), everything else from
// `context`.
struct EvalContext {
    const FiniteStructure* context = nullptr;
    const AtomUniverse* universe = nullptr; // may be null: plain structure evaluation
    const AtomSet* defined = nullptr;

    bool atom_truth(const Symbol& pred, const std::vector<std::size_t>& args) const;
};

std::size_t eval_term(const EvalContext& ctx, Assignment& assignment, const Term& term);
bool eval_formula(const EvalContext& ctx, Assignment& assignment, const FormulaPtr& formula);

// Convenience wrappers over a bare structure.
std::size_t eval_term(const FiniteStructure& structure, Assignment& assignment, const Term& term);
bool eval_formula(const FiniteStructure& structure, Assignment& assignment,
                  const FormulaPtr& formula);

} // namespace defkernel
