#include <doctest.h>

#include "defkernel/model.hpp"

using namespace defkernel;

TEST_CASE("domain atom enumeration is canonical and complete") {
    SUBCASE("binary predicate over three elements") {
        const auto atoms = enumerate_domain_atoms({predicate_symbol("R", 2)}, {"a", "b", "c"});
        REQUIRE(atoms.size() == 9);
        CHECK(atoms.front().args == std::vector<std::size_t>{0, 0});
        CHECK(atoms.back().args == std::vector<std::size_t>{2, 2});
        // R(a,a), R(a,b), R(a,c), R(b,a), ...
        CHECK(atoms[1].args == std::vector<std::size_t>{0, 1});
        CHECK(atoms[3].args == std::vector<std::size_t>{1, 0});
    }
    SUBCASE("unary predicate keeps the numeric element order") {
        const auto atoms = enumerate_domain_atoms({predicate_symbol("Even", 1)}, {"0", "1", "2"});
        REQUIRE(atoms.size() == 3);
        CHECK(atoms[0].args == std::vector<std::size_t>{0});
        CHECK(atoms[2].args == std::vector<std::size_t>{2});
    }
    SUBCASE("predicates sort by name, arguments by element name") {
        AtomUniverse u({predicate_symbol("Val", 0), predicate_symbol("T", 1)}, {"p", "d1"});
        REQUIRE(u.size() == 3);
        CHECK(u.label(0) == "T(d1)");
        CHECK(u.label(1) == "T(p)");
        CHECK(u.label(2) == "Val");
    }
    SUBCASE("deterministic: repeated enumeration is identical") {
        const auto a = enumerate_domain_atoms({predicate_symbol("R", 2)}, {"x", "y"});
        const auto b = enumerate_domain_atoms({predicate_symbol("R", 2)}, {"x", "y"});
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].args == b[i].args);
    }
}

TEST_CASE("atom sets form a boolean lattice matching the truth order") {
    AtomSet a(5), b(5);
    a.set(0);
    a.set(3);
    b.set(3);
    CHECK(b.is_subset_of(a));
    CHECK((a & b).count() == 1);
    CHECK((a | b).count() == 2);
    CHECK(difference(a, b).members() == std::vector<std::size_t>{0});
    CHECK(a.complement().count() == 3);
    CHECK(AtomSet(5).is_subset_of(a));
    CHECK(a.is_subset_of(AtomSet::full(5)));

    // Canonical order is compatible with the subset order.
    CHECK(b < a);
    CHECK(AtomSet(5) < b);
    CHECK(!(a < a));
}

TEST_CASE("compose overlays defined predicates on the context") {
    FiniteStructure context({"a", "b", "c"});
    context.set_predicate("G", 2, {{0, 0}});
    AtomUniverse u({predicate_symbol("R", 2)}, {"a", "b", "c"});

    SUBCASE("empty defined part") {
        const FiniteStructure s = compose(context, u, AtomSet(u.size()));
        CHECK(s.predicate_holds("G", {0, 0}));
        CHECK(!s.predicate_holds("R", {0, 0}));
    }
    SUBCASE("one defined atom") {
        AtomSet d(u.size());
        d.set(u.require_index("R", {0, 0}));
        const FiniteStructure s = compose(context, u, d);
        CHECK(s.predicate_holds("R", {0, 0}));
        CHECK(!s.predicate_holds("R", {0, 1}));
    }
    SUBCASE("restriction to the parameters is the original context") {
        AtomSet d(u.size());
        d.set(u.require_index("R", {1, 2}));
        const FiniteStructure s = compose(context, u, d);
        CHECK(s.agrees_on(context, {"G"}));
    }
}

TEST_CASE("restriction to a relation cone") {
    AtomUniverse u({predicate_symbol("Ev", 1)}, {"0", "1", "2"});
    AtomSet set(u.size());
    set.set(u.require_index("Ev", {0}));
    set.set(u.require_index("Ev", {2}));

    SUBCASE("standard order, strictly below Ev(1)") {
        AtomRelation rel(u.size());
        rel.add(u.require_index("Ev", {0}), u.require_index("Ev", {1}));
        rel.add(u.require_index("Ev", {1}), u.require_index("Ev", {2}));
        rel.add(u.require_index("Ev", {0}), u.require_index("Ev", {2}));
        const AtomSet r =
            restrict_set(set, rel, u.require_index("Ev", {1}), RestrictMode::StrictlyBelow);
        CHECK(r.members() == std::vector<std::size_t>{u.require_index("Ev", {0})});
    }
    SUBCASE("empty relation restricts to nothing") {
        AtomRelation rel(u.size());
        for (std::size_t a = 0; a < u.size(); ++a)
            CHECK(restrict_set(set, rel, a, RestrictMode::AllRelated).empty());
    }
    SUBCASE("total relation has an empty strict part") {
        const AtomRelation total = AtomRelation::total(u.size());
        for (std::size_t a = 0; a < u.size(); ++a) {
            CHECK(total.strictly_below(a).empty());
            CHECK(restrict_set(set, total, a, RestrictMode::StrictlyBelow).empty());
            CHECK(restrict_set(set, total, a, RestrictMode::AllRelated) == set);
        }
    }
}

TEST_CASE("relation properties and strict parts") {
    // Random relations: the derived strict part is irreflexive and asymmetric
    // by construction.
    std::uint64_t state = 12345;
    auto next = [&] { return state = state * 6364136223846793005ULL + 1442695040888963407ULL; };
    for (int trial = 0; trial < 50; ++trial) {
        AtomRelation rel(6);
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b)
                if (next() & 1) rel.add(a, b);
        for (std::size_t b = 0; b < 6; ++b) {
            const AtomSet strict = rel.strictly_below(b);
            CHECK(!strict.test(b)); // irreflexive
            strict.for_each([&](std::size_t a) { CHECK(!rel.strictly_below(a).test(b)); });
        }
    }

    AtomRelation chain(4);
    chain.add(0, 1);
    chain.add(1, 2);
    chain.add(2, 3);
    CHECK(!chain.is_transitive());
    const AtomRelation closed = chain.transitive_closure();
    CHECK(closed.is_transitive());
    CHECK(closed.is_irreflexive());
    CHECK(closed.is_asymmetric());
    CHECK(closed.related(0, 3));
    CHECK(closed.strict_part_acyclic());

    AtomRelation cyclic(3);
    cyclic.add(0, 1);
    cyclic.add(1, 0);
    std::vector<std::size_t> cycle;
    CHECK(cyclic.strict_part_acyclic(&cycle)); // the 0<->1 cycle is not strict
    cyclic.add(1, 2);
    cyclic.add(2, 0);
    // Now 2 -> 0 is strict only if 0 !∝ 2; close the picture with a pure cycle.
    AtomRelation pure(3);
    pure.add(0, 1);
    pure.add(1, 2);
    pure.add(2, 0);
    CHECK(!pure.strict_part_acyclic(&cycle));
    CHECK(cycle.size() >= 3);
}
