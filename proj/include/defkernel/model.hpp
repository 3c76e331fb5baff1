#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "defkernel/errors.hpp"

namespace defkernel {

enum class SymbolKind { Object, Function, Predicate };

// A non-logical vocabulary symbol. The equality predicate is logical and is
// never represented as a Symbol.
struct Symbol {
    std::string name;
    SymbolKind kind = SymbolKind::Object;
    std::size_t arity = 0; // 0 for object symbols

    friend bool operator==(const Symbol& a, const Symbol& b) {
        return a.name == b.name && a.kind == b.kind && a.arity == b.arity;
    }
    friend bool operator<(const Symbol& a, const Symbol& b) { return a.name < b.name; }
};

inline Symbol object_symbol(std::string name) { return {std::move(name), SymbolKind::Object, 0}; }
inline Symbol function_symbol(std::string name, std::size_t arity) {
    return {std::move(name), SymbolKind::Function, arity};
}
inline Symbol predicate_symbol(std::string name, std::size_t arity) {
    return {std::move(name), SymbolKind::Predicate, arity};
}

// |D|^arity with an overflow / desk-scale guard.
std::uint64_t checked_power(std::size_t base, std::size_t exponent, std::uint64_t limit);

// A finite structure: an ordered, non-empty domain of named elements plus
// total interpretations for every symbol it carries. Elements are handled by
// their index in declaration order.
class FiniteStructure {
public:
    FiniteStructure() = default;
    explicit FiniteStructure(std::vector<std::string> domain_elements);

    std::size_t domain_size() const { return domain_.size(); }
    const std::vector<std::string>& domain() const { return domain_; }
    const std::string& element_name(std::size_t i) const { return domain_.at(i); }
    std::optional<std::size_t> element_index(const std::string& name) const;
    std::size_t require_element(const std::string& name) const;

    void set_object(const std::string& name, std::size_t value);
    // `table` is indexed in mixed radix over argument indices, row-major.
    void set_function(const std::string& name, std::size_t arity, std::vector<std::size_t> table);
    void set_predicate(const std::string& name, std::size_t arity,
                       std::set<std::vector<std::size_t>> tuples);

    bool interprets(const std::string& name) const { return symbols_.count(name) != 0; }
    const Symbol* find_symbol(const std::string& name) const;
    const std::map<std::string, Symbol>& symbols() const { return symbols_; }

    std::size_t object_value(const std::string& name) const;
    std::size_t apply_function(const std::string& name, const std::vector<std::size_t>& args) const;
    bool predicate_holds(const std::string& name, const std::vector<std::size_t>& args) const;
    const std::set<std::vector<std::size_t>>& predicate_tuples(const std::string& name) const;

    // Structural equality of the interpretations named in `names` (used for
    // restriction round-trip checks).
    bool agrees_on(const FiniteStructure& other, const std::set<std::string>& names) const;

private:
    struct FunctionTable {
        std::size_t arity = 0;
        std::vector<std::size_t> table;
    };
    struct Relation {
        std::size_t arity = 0;
        std::set<std::vector<std::size_t>> tuples;
    };

    std::size_t tuple_key_checked(std::size_t arity, const std::vector<std::size_t>& args) const;

    std::vector<std::string> domain_;
    std::unordered_map<std::string, std::size_t> element_index_;
    std::map<std::string, Symbol> symbols_;
    std::map<std::string, std::size_t> objects_;
    std::map<std::string, FunctionTable> functions_;
    std::map<std::string, Relation> relations_;
};

// A defined predicate applied to a tuple of domain elements.
struct DomainAtom {
    Symbol predicate;
    std::vector<std::size_t> args;
};

// The enumerated set domat(defp, D) in canonical order: lexicographic by
// predicate name, then by argument tuple compared element-name-wise. This
// ordering is the determinism anchor for the whole engine.
class AtomUniverse {
public:
    AtomUniverse() = default;
    AtomUniverse(std::vector<Symbol> defined_predicates, std::vector<std::string> domain_elements);

    std::size_t size() const { return atoms_.size(); }
    const DomainAtom& atom(std::size_t i) const { return atoms_.at(i); }
    std::string label(std::size_t i) const;
    const std::vector<std::string>& domain() const { return domain_; }
    const std::vector<Symbol>& defined_predicates() const { return preds_; }
    bool is_defined(const std::string& predicate) const { return pred_offset_.count(predicate) != 0; }

    std::optional<std::size_t> index_of(const std::string& predicate,
                                        const std::vector<std::size_t>& args) const;
    std::size_t require_index(const std::string& predicate,
                              const std::vector<std::size_t>& args) const;

private:
    std::vector<Symbol> preds_;          // sorted by name
    std::vector<std::string> domain_;    // declaration order
    std::vector<std::size_t> name_rank_; // element index -> rank in name order
    std::map<std::string, std::size_t> pred_offset_;
    std::map<std::string, std::size_t> pred_arity_;
    std::vector<DomainAtom> atoms_;
};

// A subset of the atom universe, encoded against the canonical enumeration so
// sets are comparable across the engine. Subset order coincides with the
// truth order on defp-structures.
class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(std::size_t universe_size);
    static AtomSet full(std::size_t universe_size);

    std::size_t universe_size() const { return size_; }
    bool test(std::size_t i) const;
    void set(std::size_t i, bool value = true);
    void reset(std::size_t i) { set(i, false); }
    std::size_t count() const;
    bool empty() const;

    AtomSet& operator|=(const AtomSet& o);
    AtomSet& operator&=(const AtomSet& o);
    AtomSet& subtract(const AtomSet& o);
    friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
    friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
    friend AtomSet difference(AtomSet a, const AtomSet& b) { return a.subtract(b); }
    AtomSet complement() const;

    bool is_subset_of(const AtomSet& o) const;
    bool intersects(const AtomSet& o) const;
    friend bool operator==(const AtomSet& a, const AtomSet& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }
    // Canonical (lexicographic-by-index) order for stable listings.
    friend bool operator<(const AtomSet& a, const AtomSet& b);

    std::vector<std::size_t> members() const;
    template <typename Fn> void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int b = __builtin_ctzll(bits);
                fn(w * 64 + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
    }

    std::size_t hash() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct AtomSetHash {
    std::size_t operator()(const AtomSet& s) const { return s.hash(); }
};

// A binary relation on the atom universe (an induction relation). The strict part
// is derived: A ≺ B iff A ∝ B and not B ∝ A.
class AtomRelation {
public:
    AtomRelation() = default;
    explicit AtomRelation(std::size_t universe_size);
    static AtomRelation total(std::size_t universe_size);
    static AtomRelation from_pairs(std::size_t universe_size,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

    std::size_t universe_size() const { return n_; }
    void add(std::size_t a, std::size_t b); // a ∝ b
    bool related(std::size_t a, std::size_t b) const { return below_.at(b).test(a); }

    // {B | B ∝ A} and {B | B ≺ A}.
    const AtomSet& below(std::size_t atom) const { return below_.at(atom); }
    AtomSet strictly_below(std::size_t atom) const;

    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
    std::size_t pair_count() const;

    AtomRelation transitive_closure() const;
    bool is_transitive() const;
    bool is_irreflexive() const;
    bool is_asymmetric() const;
    // Well-foundedness of the strict part over a finite universe = acyclicity;
    // returns a cycle as witness when it fails.
    bool strict_part_acyclic(std::vector<std::size_t>* cycle = nullptr) const;

    friend bool operator==(const AtomRelation& a, const AtomRelation& b) {
        return a.n_ == b.n_ && a.below_ == b.below_;
    }

private:
    std::size_t n_ = 0;
    std::vector<AtomSet> below_; // below_[b] = {a | a ∝ b}
};

// Ordered enumeration of domat(preds, D); see AtomUniverse for the ordering.
std::vector<DomainAtom> enumerate_domain_atoms(const std::vector<Symbol>& defined_predicates,
                                               const std::vector<std::string>& domain_elements);

// O ∘ A: the structure over pars ∪ defp agreeing with `context` on the
// parameters and with `defined` on the defined predicates.
FiniteStructure compose(const FiniteStructure& context, const AtomUniverse& universe,
                        const AtomSet& defined);

enum class RestrictMode { AllRelated, StrictlyBelow };

// A|_{∝atom} (or A|_{≺atom}): the members of `set` related below `atom`.
AtomSet restrict_set(const AtomSet& set, const AtomRelation& rel, std::size_t atom,
                     RestrictMode mode);

} // namespace defkernel
