#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "defkernel/problem.hpp"

namespace defkernel {

// Verdicts the declared relation is expected to earn from the order analysis.
struct ExpectedOrderVerdicts {
    bool dependency = false;
    bool monotone_dependency = false;
    bool strictly_orders = false;
    bool monotonically_orders = false;
};

// Independently computed ground truth for an entry (never via the engines).
struct CorpusExpectation {
    std::optional<AtomSet> safely_defined;
    bool saturated = false;
    std::optional<AtomSet> defined_false;
    bool all_defined_atoms_undecided = false;
    std::optional<ExpectedOrderVerdicts> order_verdicts;
    std::string notes;
};

struct CorpusEntry {
    std::string name;
    std::string text; // problem file source
    Problem problem;
    CorpusExpectation expectation;
};

using CorpusParams = std::map<std::string, std::string>;

std::vector<std::string> corpus_names();
std::string corpus_describe(const std::string& name);
CorpusEntry corpus_build(const std::string& name, const CorpusParams& params = {});
std::string corpus_export(const std::string& name, const CorpusParams& params = {});

} // namespace defkernel
