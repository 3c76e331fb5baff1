#include "defkernel/model.hpp"

#include <algorithm>
#include <numeric>

namespace defkernel {

std::uint64_t checked_power(std::size_t base, std::size_t exponent, std::uint64_t limit) {
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > limit / base)
            throw BudgetError("instance too large: |D|^arity exceeds the supported scale");
        result *= base;
    }
    return result;
}

FiniteStructure::FiniteStructure(std::vector<std::string> domain_elements)
    : domain_(std::move(domain_elements)) {
    if (domain_.empty()) throw InputError("structure domain must be non-empty");
    for (std::size_t i = 0; i < domain_.size(); ++i) {
        if (!element_index_.emplace(domain_[i], i).second)
            throw InputError("duplicate domain element '" + domain_[i] + "'");
    }
}

std::optional<std::size_t> FiniteStructure::element_index(const std::string& name) const {
    auto it = element_index_.find(name);
    if (it == element_index_.end()) return std::nullopt;
    return it->second;
}

std::size_t FiniteStructure::require_element(const std::string& name) const {
    auto i = element_index(name);
    if (!i) throw InputError("unknown domain element '" + name + "'");
    return *i;
}

void FiniteStructure::set_object(const std::string& name, std::size_t value) {
    if (value >= domain_.size()) throw InputError("object value out of domain");
    symbols_[name] = object_symbol(name);
    objects_[name] = value;
}

void FiniteStructure::set_function(const std::string& name, std::size_t arity,
                                   std::vector<std::size_t> table) {
    const auto expected = checked_power(domain_.size(), arity, UINT64_C(1) << 22);
    if (table.size() != expected)
        throw InputError("function table for '" + name + "' is not total on D^" +
                         std::to_string(arity));
    for (std::size_t v : table)
        if (v >= domain_.size()) throw InputError("function value out of domain in '" + name + "'");
    symbols_[name] = function_symbol(name, arity);
    functions_[name] = FunctionTable{arity, std::move(table)};
}

void FiniteStructure::set_predicate(const std::string& name, std::size_t arity,
                                    std::set<std::vector<std::size_t>> tuples) {
    for (const auto& t : tuples) {
        if (t.size() != arity) throw InputError("tuple arity mismatch in '" + name + "'");
        for (std::size_t v : t)
            if (v >= domain_.size()) throw InputError("tuple element out of domain in '" + name + "'");
    }
    symbols_[name] = predicate_symbol(name, arity);
    relations_[name] = Relation{arity, std::move(tuples)};
}

const Symbol* FiniteStructure::find_symbol(const std::string& name) const {
    auto it = symbols_.find(name);
    return it == symbols_.end() ? nullptr : &it->second;
}

std::size_t FiniteStructure::object_value(const std::string& name) const {
    auto it = objects_.find(name);
    if (it == objects_.end()) throw InputError("uninterpreted object symbol '" + name + "'");
    return it->second;
}

std::size_t FiniteStructure::tuple_key_checked(std::size_t arity,
                                               const std::vector<std::size_t>& args) const {
    if (args.size() != arity) throw InputError("argument arity mismatch");
    std::size_t key = 0;
    for (std::size_t a : args) key = key * domain_.size() + a;
    return key;
}

std::size_t FiniteStructure::apply_function(const std::string& name,
                                            const std::vector<std::size_t>& args) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) throw InputError("uninterpreted function symbol '" + name + "'");
    return it->second.table[tuple_key_checked(it->second.arity, args)];
}

bool FiniteStructure::predicate_holds(const std::string& name,
                                      const std::vector<std::size_t>& args) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw InputError("uninterpreted predicate symbol '" + name + "'");
    if (args.size() != it->second.arity) throw InputError("argument arity mismatch for '" + name + "'");
    return it->second.tuples.count(args) != 0;
}

const std::set<std::vector<std::size_t>>&
FiniteStructure::predicate_tuples(const std::string& name) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw InputError("uninterpreted predicate symbol '" + name + "'");
    return it->second.tuples;
}

bool FiniteStructure::agrees_on(const FiniteStructure& other,
                                const std::set<std::string>& names) const {
    if (domain_ != other.domain_) return false;
    for (const auto& name : names) {
        const Symbol* a = find_symbol(name);
        const Symbol* b = other.find_symbol(name);
        if (!a || !b || !(*a == *b)) return false;
        switch (a->kind) {
        case SymbolKind::Object:
            if (object_value(name) != other.object_value(name)) return false;
            break;
        case SymbolKind::Function:
            if (functions_.at(name).table != other.functions_.at(name).table) return false;
            break;
        case SymbolKind::Predicate:
            if (relations_.at(name).tuples != other.relations_.at(name).tuples) return false;
            break;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

AtomUniverse::AtomUniverse(std::vector<Symbol> defined_predicates,
                           std::vector<std::string> domain_elements)
    : preds_(std::move(defined_predicates)), domain_(std::move(domain_elements)) {
    if (domain_.empty()) throw InputError("atom universe needs a non-empty domain");
    std::sort(preds_.begin(), preds_.end(),
              [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
    for (std::size_t i = 1; i < preds_.size(); ++i)
        if (preds_[i].name == preds_[i - 1].name)
            throw InputError("duplicate defined predicate '" + preds_[i].name + "'");

    // name_rank_[element index] = position of the element's name in sorted order
    std::vector<std::size_t> by_name(domain_.size());
    std::iota(by_name.begin(), by_name.end(), 0);
    std::sort(by_name.begin(), by_name.end(),
              [&](std::size_t a, std::size_t b) { return domain_[a] < domain_[b]; });
    name_rank_.assign(domain_.size(), 0);
    for (std::size_t r = 0; r < by_name.size(); ++r) name_rank_[by_name[r]] = r;

    std::uint64_t total = 0;
    for (const auto& p : preds_) {
        total += checked_power(domain_.size(), p.arity, UINT64_C(1) << 22);
        if (total > (UINT64_C(1) << 21))
            throw BudgetError("atom universe exceeds the supported scale (2^21 atoms)");
    }
    atoms_.reserve(static_cast<std::size_t>(total));
    for (const auto& p : preds_) {
        pred_offset_[p.name] = atoms_.size();
        pred_arity_[p.name] = p.arity;
        const std::uint64_t block = checked_power(domain_.size(), p.arity, UINT64_C(1) << 22);
        std::vector<std::size_t> ranks(p.arity, 0);
        for (std::uint64_t t = 0; t < block; ++t) {
            std::vector<std::size_t> args(p.arity);
            for (std::size_t i = 0; i < p.arity; ++i) args[i] = by_name[ranks[i]];
            atoms_.push_back(DomainAtom{p, std::move(args)});
            for (std::size_t i = p.arity; i-- > 0;) {
                if (++ranks[i] < domain_.size()) break;
                ranks[i] = 0;
            }
        }
    }
}

std::string AtomUniverse::label(std::size_t i) const {
    const DomainAtom& a = atom(i);
    if (a.args.empty()) return a.predicate.name;
    std::string out = a.predicate.name + "(";
    for (std::size_t k = 0; k < a.args.size(); ++k) {
        if (k > 0) out += ",";
        out += domain_[a.args[k]];
    }
    return out + ")";
}

std::optional<std::size_t> AtomUniverse::index_of(const std::string& predicate,
                                                  const std::vector<std::size_t>& args) const {
    auto it = pred_offset_.find(predicate);
    if (it == pred_offset_.end()) return std::nullopt;
    if (args.size() != pred_arity_.at(predicate)) return std::nullopt;
    std::size_t key = 0;
    for (std::size_t a : args) {
        if (a >= domain_.size()) return std::nullopt;
        key = key * domain_.size() + name_rank_[a];
    }
    return it->second + key;
}

std::size_t AtomUniverse::require_index(const std::string& predicate,
                                        const std::vector<std::size_t>& args) const {
    auto i = index_of(predicate, args);
    if (!i) throw InputError("atom outside the defined-atom universe: " + predicate);
    return *i;
}

// ---------------------------------------------------------------------------

AtomSet::AtomSet(std::size_t universe_size)
    : size_(universe_size), words_((universe_size + 63) / 64, 0) {}

AtomSet AtomSet::full(std::size_t universe_size) {
    AtomSet s(universe_size);
    for (std::size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~UINT64_C(0);
    if (universe_size % 64 != 0 && !s.words_.empty())
        s.words_.back() &= (UINT64_C(1) << (universe_size % 64)) - 1;
    return s;
}

bool AtomSet::test(std::size_t i) const {
    if (i >= size_) throw InputError("atom index out of universe");
    return (words_[i / 64] >> (i % 64)) & 1;
}

void AtomSet::set(std::size_t i, bool value) {
    if (i >= size_) throw InputError("atom index out of universe");
    if (value)
        words_[i / 64] |= UINT64_C(1) << (i % 64);
    else
        words_[i / 64] &= ~(UINT64_C(1) << (i % 64));
}

std::size_t AtomSet::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

bool AtomSet::empty() const {
    for (auto w : words_)
        if (w != 0) return false;
    return true;
}

AtomSet& AtomSet::operator|=(const AtomSet& o) {
    if (size_ != o.size_) throw InputError("atom set universe mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

AtomSet& AtomSet::operator&=(const AtomSet& o) {
    if (size_ != o.size_) throw InputError("atom set universe mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

AtomSet& AtomSet::subtract(const AtomSet& o) {
    if (size_ != o.size_) throw InputError("atom set universe mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

AtomSet AtomSet::complement() const {
    AtomSet s = full(size_);
    s.subtract(*this);
    return s;
}

bool AtomSet::is_subset_of(const AtomSet& o) const {
    if (size_ != o.size_) throw InputError("atom set universe mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
}

bool AtomSet::intersects(const AtomSet& o) const {
    if (size_ != o.size_) throw InputError("atom set universe mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & o.words_[i]) != 0) return true;
    return false;
}

bool operator<(const AtomSet& a, const AtomSet& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    // Lexicographic by atom index: compare from the lowest word, reversed bits
    // within a word so that a smaller first-index membership sorts first.
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
        if (a.words_[i] == b.words_[i]) continue;
        const std::uint64_t diff = a.words_[i] ^ b.words_[i];
        const int bit = __builtin_ctzll(diff);
        return (b.words_[i] >> bit) & 1; // b has the smaller differing atom -> a < b is false
    }
    return false;
}

std::vector<std::size_t> AtomSet::members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
}

std::size_t AtomSet::hash() const {
    std::uint64_t h = UINT64_C(1469598103934665603);
    for (auto w : words_) {
        h ^= w;
        h *= UINT64_C(1099511628211);
    }
    h ^= size_;
    return static_cast<std::size_t>(h * UINT64_C(1099511628211));
}

// ---------------------------------------------------------------------------

AtomRelation::AtomRelation(std::size_t universe_size)
    : n_(universe_size), below_(universe_size, AtomSet(universe_size)) {}

AtomRelation AtomRelation::total(std::size_t universe_size) {
    AtomRelation r(universe_size);
    for (auto& b : r.below_) b = AtomSet::full(universe_size);
    return r;
}

AtomRelation AtomRelation::from_pairs(std::size_t universe_size,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    AtomRelation r(universe_size);
    for (auto [a, b] : pairs) r.add(a, b);
    return r;
}

void AtomRelation::add(std::size_t a, std::size_t b) {
    if (a >= n_ || b >= n_) throw InputError("relation pair outside the atom universe");
    below_[b].set(a);
}

AtomSet AtomRelation::strictly_below(std::size_t atom) const {
    AtomSet out(n_);
    below_.at(atom).for_each([&](std::size_t b) {
        if (!below_[b].test(atom)) out.set(b); // b ∝ atom and not atom ∝ b
    });
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> AtomRelation::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t b = 0; b < n_; ++b)
        below_[b].for_each([&](std::size_t a) { out.emplace_back(a, b); });
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t AtomRelation::pair_count() const {
    std::size_t c = 0;
    for (const auto& b : below_) c += b.count();
    return c;
}

AtomRelation AtomRelation::transitive_closure() const {
    AtomRelation r = *this;
    // Warshall over predecessor sets: a ∝ k and k ∝ b imply a ∝ b.
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t b = 0; b < n_; ++b)
            if (r.below_[b].test(k)) r.below_[b] |= r.below_[k];
    return r;
}

bool AtomRelation::is_transitive() const {
    for (std::size_t b = 0; b < n_; ++b) {
        AtomSet need(n_);
        below_[b].for_each([&](std::size_t k) { need |= below_[k]; });
        if (!need.is_subset_of(below_[b])) return false;
    }
    return true;
}

bool AtomRelation::is_irreflexive() const {
    for (std::size_t a = 0; a < n_; ++a)
        if (below_[a].test(a)) return false;
    return true;
}

bool AtomRelation::is_asymmetric() const {
    for (std::size_t b = 0; b < n_; ++b) {
        bool bad = false;
        below_[b].for_each([&](std::size_t a) {
            if (below_[a].test(b)) bad = true;
        });
        if (bad) return false;
    }
    return true;
}

bool AtomRelation::strict_part_acyclic(std::vector<std::size_t>* cycle) const {
    // DFS over the strict-part edges a ≺ b (edge a -> b).
    std::vector<AtomSet> strict(n_, AtomSet(n_));
    for (std::size_t b = 0; b < n_; ++b) strict[b] = strictly_below(b);
    std::vector<int> state(n_, 0); // 0 unvisited, 1 on stack, 2 done
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n_; ++start) {
        if (state[start] != 0) continue;
        // Iterative DFS with explicit parent chain for the witness.
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> work;
        work.emplace_back(start, strict[start].members());
        state[start] = 1;
        stack.push_back(start);
        while (!work.empty()) {
            auto& [node, succ] = work.back();
            if (succ.empty()) {
                state[node] = 2;
                stack.pop_back();
                work.pop_back();
                continue;
            }
            const std::size_t next = succ.back();
            succ.pop_back();
            if (state[next] == 1) {
                if (cycle) {
                    auto it = std::find(stack.begin(), stack.end(), next);
                    cycle->assign(it, stack.end());
                    cycle->push_back(next);
                }
                return false;
            }
            if (state[next] == 0) {
                state[next] = 1;
                stack.push_back(next);
                work.emplace_back(next, strict[next].members());
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

std::vector<DomainAtom> enumerate_domain_atoms(const std::vector<Symbol>& defined_predicates,
                                               const std::vector<std::string>& domain_elements) {
    AtomUniverse u(defined_predicates, domain_elements);
    std::vector<DomainAtom> out;
    out.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out.push_back(u.atom(i));
    return out;
}

FiniteStructure compose(const FiniteStructure& context, const AtomUniverse& universe,
                        const AtomSet& defined) {
    if (context.domain() != universe.domain())
        throw InputError("compose: context and universe have different domains");
    if (defined.universe_size() != universe.size())
        throw InputError("compose: atom set does not fit the universe");
    FiniteStructure out = context;
    std::map<std::string, std::set<std::vector<std::size_t>>> tuples;
    for (const auto& p : universe.defined_predicates()) tuples[p.name] = {};
    defined.for_each([&](std::size_t i) {
        const DomainAtom& a = universe.atom(i);
        tuples[a.predicate.name].insert(a.args);
    });
    for (const auto& p : universe.defined_predicates())
        out.set_predicate(p.name, p.arity, std::move(tuples[p.name]));
    return out;
}

AtomSet restrict_set(const AtomSet& set, const AtomRelation& rel, std::size_t atom,
                     RestrictMode mode) {
    if (atom >= rel.universe_size()) throw InputError("restrict: atom outside universe");
    AtomSet cone = (mode == RestrictMode::AllRelated) ? rel.below(atom) : rel.strictly_below(atom);
    cone &= set;
    return cone;
}

} // namespace defkernel
