#include "defkernel/problem.hpp"

namespace defkernel {

Problem::Problem(Definition definition, FiniteStructure context)
    : definition_(std::move(definition)), context_(std::move(context)) {
    std::vector<Symbol> preds(definition_.defined.begin(), definition_.defined.end());
    universe_ = AtomUniverse(std::move(preds), context_.domain());

    // The context must interpret every parameter of the definition.
    for (const auto& p : definition_.parameters) {
        const Symbol* s = context_.find_symbol(p.name);
        if (s == nullptr)
            throw InputError("context does not interpret parameter '" + p.name + "'");
        if (!(*s == p))
            throw InputError("context interprets '" + p.name + "' at a different kind or arity");
    }
    for (const auto& d : definition_.defined)
        if (context_.interprets(d.name))
            throw InputError("defined predicate '" + d.name + "' has a context extension");
}

} // namespace defkernel
