#pragma once

#include <json.hpp>

#include "defkernel/induction.hpp"
#include "defkernel/order.hpp"
#include "defkernel/safety.hpp"

namespace defkernel {

nlohmann::json atoms_json(const Problem& problem, const AtomSet& set);
nlohmann::json trace_json(const Problem& problem, const InductionTrace& trace);
nlohmann::json safety_report_json(const Problem& problem, const SafetyReport& report);
nlohmann::json order_report_json(const Problem& problem, const OrderReport& report);
nlohmann::json classification_json(const Problem& problem, const Classification& classification);

} // namespace defkernel
