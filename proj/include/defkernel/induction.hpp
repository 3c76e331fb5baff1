#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "defkernel/problem.hpp"

namespace defkernel {

// An increasing sequence of defp-structures ⟨𝔄₀, 𝔄₁, ...⟩ with the stage at
// which each atom was derived. Stages store full sets, not deltas.
struct InductionTrace {
    std::vector<AtomSet> stages;
    std::vector<std::int32_t> rank; // atom -> stage index at which derived, -1 if never

    static InductionTrace from_start(const AtomSet& start);
    const AtomSet& limit() const { return stages.back(); }
    std::size_t length() const { return stages.size() - 1; }
    AtomSet derived_at(std::size_t stage) const; // 𝔄_{stage+1} \ 𝔄_stage
    // Internal consistency: strictly increasing stages, ranks matching.
    bool consistent() const;
};

// 𝔄 ⊢_Δ A: some rule for A's predicate has a true body in O ∘ 𝔄 under the
// head assignment. Direct structural evaluation; the grounded fast path used
// by the engines is differential-tested against this.
bool derives(const Problem& problem, const AtomSet& set, std::size_t atom);

// Γ_Δ^O(𝔄): the set of all derivable atoms.
AtomSet gamma(const Problem& problem, const AtomSet& set);

// Every derivable atom inside `scope` is already a member of `set`.
bool is_saturated_on(const Problem& problem, const AtomSet& set, const AtomSet& scope);
bool is_saturated(const Problem& problem, const AtomSet& set);
bool is_terminal(const Problem& problem, const InductionTrace& trace);

struct StepError : Error {
    std::optional<std::size_t> witness; // offending atom, when one exists
    StepError(std::string msg, std::optional<std::size_t> atom)
        : Error(std::move(msg)), witness(atom) {}
};

// Extends the trace by one stage deriving exactly `chosen`. Throws StepError
// when `chosen` is empty, overlaps the current stage, or contains an atom not
// derivable from it.
void step(const Problem& problem, InductionTrace& trace, const AtomSet& chosen);

// The inflationary construction 𝔄_{i+1} = 𝔄_i ∪ Γ(𝔄_i); for monotone
// definitions this is the least fixpoint construction. Always terminal.
InductionTrace eager_induction(const Problem& problem, std::size_t max_stages = 0);

struct RespectReport {
    bool ok = true;
    std::optional<std::size_t> stage;
    std::optional<std::size_t> atom;    // atom derived too early
    std::optional<std::size_t> missing; // strictly smaller derivable atom not yet derived
};

// The trace derives A at stage i only when 𝔄_i is saturated on {B | B ≺ A};
// the strict part of `rel` is used, so transitive relations and strict orders
// are both handled.
RespectReport respects(const Problem& problem, const InductionTrace& trace,
                       const AtomRelation& rel);

struct FollowReport {
    bool ok = true;
    std::optional<std::size_t> earlier; // atom that should have come first
    std::optional<std::size_t> later;
};

// A ≺ B implies rank(A) < rank(B), over derived atoms only.
FollowReport follows(const InductionTrace& trace, const AtomRelation& rel);

enum class InductionPolicy { AnySubset, Singleton, Respect };

// Seed-deterministic random terminal induction. AnySubset draws a uniformly
// random non-empty subset of the applicable atoms at each stage; Respect
// restricts choices to atoms whose strictly-smaller cone is saturated (the
// relation's strict part must be acyclic).
InductionTrace random_induction(const Problem& problem, std::uint64_t seed,
                                InductionPolicy policy = InductionPolicy::AnySubset,
                                const AtomRelation* rel = nullptr);

// Seeded RNG with platform-stable draws, shared by every randomized routine.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t next() { return gen_(); }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen_() % n; }
    // Uniformly random non-empty subset of `items`.
    std::vector<std::size_t> nonempty_subset(const std::vector<std::size_t>& items);

private:
    std::mt19937_64 gen_;
};

} // namespace defkernel
