#include "defkernel/jsonio.hpp"

namespace defkernel {

using nlohmann::json;

json atoms_json(const Problem& problem, const AtomSet& set) {
    json out = json::array();
    set.for_each([&](std::size_t i) { out.push_back(problem.label(i)); });
    return out;
}

json trace_json(const Problem& problem, const InductionTrace& trace) {
    json stages = json::array();
    for (const auto& s : trace.stages) stages.push_back(atoms_json(problem, s));
    return json{{"stages", stages}, {"terminal", is_terminal(problem, trace)}};
}

json safety_report_json(const Problem& problem, const SafetyReport& report) {
    return json{{"true", atoms_json(problem, report.defined_true)},
                {"false", atoms_json(problem, report.defined_false)},
                {"undecided", atoms_json(problem, report.undecided)},
                {"saturated", report.saturated},
                {"fixpoint", report.is_fixpoint},
                {"minimal", report.minimal_fixpoint},
                {"unique", report.unique_fixpoint}};
}

namespace {

json check_json(const Problem& problem, const CheckResult& check) {
    json out{{"holds", check.holds}};
    if (check.witness) {
        out["witness"] = json{{"atom", problem.label(check.witness->atom)},
                              {"derives_in", atoms_json(problem, check.witness->derives_in)},
                              {"fails_in", atoms_json(problem, check.witness->fails_in)}};
    }
    return out;
}

} // namespace

json order_report_json(const Problem& problem, const OrderReport& report) {
    json out{{"transitive", report.transitive},
             {"irreflexive", report.irreflexive},
             {"asymmetric", report.asymmetric},
             {"strict_part_well_founded", report.strict_part_well_founded},
             {"is_dependency", check_json(problem, report.dependency)},
             {"is_monotone_dependency", check_json(problem, report.monotone_dependency)},
             {"strictly_orders", report.strictly_orders},
             {"monotonically_orders", report.monotonically_orders}};
    if (!report.strict_part_well_founded) {
        json cycle = json::array();
        for (std::size_t a : report.strict_cycle) cycle.push_back(problem.label(a));
        out["strict_cycle"] = cycle;
    }
    return out;
}

json classification_json(const Problem& problem, const Classification& classification) {
    json out{{"positive", classification.positive},
             {"monotone", check_json(problem, classification.monotone)},
             {"iterated_via_total", classification.iterated_via_total},
             {"ordered", classification.ordered()},
             {"iterated", classification.iterated()}};
    if (classification.declared)
        out["declared_order"] = order_report_json(problem, *classification.declared);
    return out;
}

} // namespace defkernel
