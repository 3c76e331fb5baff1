#include "defkernel/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "defkernel/corpus.hpp"
#include "defkernel/dnf.hpp"
#include "defkernel/ground.hpp"
#include "defkernel/jsonio.hpp"
#include "defkernel/parser.hpp"

namespace defkernel {

namespace {

using nlohmann::json;

struct CliOptions {
    std::string input;
    bool as_json = false;
    std::uint64_t seed = 0;
    std::string strategy = "eager";
    bool interactive = false;
    std::string script;
    std::size_t max_atoms = 0;
    std::size_t max_states = 0;
    std::string atom;
    std::string formula;
    bool show_problem = false;
};

std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path);
    if (!file) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

SafetyBudgets budgets_from(const CliOptions& opts) {
    SafetyBudgets budgets;
    if (const char* env = std::getenv("DEFKERNEL_BUDGET_STATES"))
        budgets.max_states = static_cast<std::size_t>(std::stoull(env));
    if (opts.max_states != 0) budgets.max_states = opts.max_states;
    if (opts.max_atoms != 0) {
        budgets.max_exhaustive_atoms = opts.max_atoms;
        budgets.max_fixpoint_atoms = opts.max_atoms;
    }
    return budgets;
}

void print_atoms(std::ostream& out, const Problem& problem, const AtomSet& set) {
    out << "{";
    bool first = true;
    set.for_each([&](std::size_t i) {
        out << (first ? " " : ", ") << problem.label(i);
        first = false;
    });
    out << (first ? "}" : " }");
}

void print_trace(std::ostream& out, const Problem& problem, const InductionTrace& trace) {
    for (std::size_t i = 0; i + 1 < trace.stages.size(); ++i) {
        out << "  -> ";
        print_atoms(out, problem, trace.derived_at(i));
        out << "\n";
    }
    out << "limit: ";
    print_atoms(out, problem, trace.limit());
    out << "\nterminal: " << (is_terminal(problem, trace) ? "yes" : "no") << "\n";
}

int cmd_analyze(const CliOptions& opts, std::istream& in, std::ostream& out) {
    Problem problem = parse_problem(read_input(opts.input, in));
    SafetyEngine engine(problem, budgets_from(opts));
    const Classification classification = classify(problem);
    const SafetyReport report = engine.report();

    json expectations = json::object();
    for (const auto& [name, set] : problem.expected_sets) {
        if (name == "defined")
            expectations[name] = (set == report.defined_true) ? "match" : "mismatch";
        else
            expectations[name] = "unchecked";
    }
    for (const auto& [name, value] : problem.expected_flags) {
        if (name == "saturated")
            expectations[name] = (value == report.saturated) ? "match" : "mismatch";
        else
            expectations[name] = "unchecked";
    }

    if (opts.as_json) {
        json output{{"classification", classification_json(problem, classification)},
                    {"report", safety_report_json(problem, report)},
                    {"method", report.method}};
        if (!expectations.empty()) output["expectations"] = expectations;
        out << output.dump(2) << "\n";
    } else {
        out << "classification: " << (classification.positive ? "positive" : "non-positive")
            << ", " << (classification.monotone.holds ? "monotone" : "non-monotone");
        if (classification.ordered()) out << ", ordered (declared relation)";
        else if (classification.iterated()) out << ", iterated";
        out << "\n";
        out << "safely defined (" << report.method << "): ";
        print_atoms(out, problem, report.defined_true);
        out << "\nfalse: ";
        print_atoms(out, problem, report.defined_false);
        out << "\nundecided: ";
        print_atoms(out, problem, report.undecided);
        out << "\nsaturated: " << (report.saturated ? "yes" : "no")
            << ", fixpoint: " << (report.is_fixpoint ? "yes" : "no")
            << ", minimal: " << (report.minimal_fixpoint ? "yes" : "no")
            << ", unique: " << (report.unique_fixpoint ? "yes" : "no") << "\n";
        for (const auto& [name, verdict] : expectations.items())
            out << "expectation " << name << ": " << verdict.get<std::string>() << "\n";
        if (!report.undecided.empty())
            out << "borderline: the definition leaves atoms undecided\n";
    }
    for (const auto& [name, verdict] : expectations.items())
        if (verdict.get<std::string>() == "mismatch") return 1;
    return report.undecided.empty() ? 0 : 3;
}

// One selection line: "all", 1-based indices, or atom labels.
AtomSet parse_selection(const std::string& line, const Problem& problem,
                        const std::vector<std::size_t>& applicable) {
    AtomSet chosen = problem.empty_set();
    std::istringstream words(line);
    std::string word;
    while (words >> word) {
        if (word == "all") {
            for (std::size_t a : applicable) chosen.set(a);
            continue;
        }
        bool numeric = !word.empty() &&
                       std::all_of(word.begin(), word.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
        if (numeric) {
            const std::size_t idx = std::stoul(word);
            if (idx == 0 || idx > applicable.size())
                throw InputError("selection index out of range: " + word);
            chosen.set(applicable[idx - 1]);
        } else {
            chosen.set(parse_ground_atom(word, problem));
        }
    }
    return chosen;
}

int interactive_induce(const CliOptions& opts, Problem& problem, std::istream& in,
                       std::ostream& out) {
    SafetyBudgets budgets = budgets_from(opts);
    SafetyEngine engine(problem, budgets);
    engine.adopt_declared_order();
    std::ifstream script_file;
    std::istream* source = &in;
    if (!opts.script.empty()) {
        script_file.open(opts.script);
        if (!script_file) throw InputError("cannot open script '" + opts.script + "'");
        source = &script_file;
    }

    InductionTrace trace = InductionTrace::from_start(problem.empty_set());
    for (;;) {
        AtomSet applicable_set = gamma(problem, trace.limit());
        applicable_set.subtract(trace.limit());
        const auto applicable = applicable_set.members();
        out << "stage " << trace.length() << ": ";
        print_atoms(out, problem, trace.limit());
        out << "\n";
        if (applicable.empty()) {
            out << "saturated; induction is terminal\n";
            break;
        }
        out << "applicable:\n";
        for (std::size_t i = 0; i < applicable.size(); ++i) {
            std::string note = "unknown";
            try {
                if (engine.certify(trace.limit(), applicable[i]).has_value())
                    note = "safe";
                else if (engine.exhaustive_available())
                    note = "unsafe"; // exactly decided
            } catch (const BudgetError&) {
                note = "unknown";
            }
            out << "  " << (i + 1) << ". " << problem.label(applicable[i]) << " [" << note
                << "]\n";
        }
        out << "select> ";
        std::string line;
        if (!std::getline(*source, line)) {
            out << "\n(end of input)\n";
            break;
        }
        if (!opts.script.empty()) out << line << "\n";
        if (line == "quit" || line == "stop") break;
        if (line.empty() || line[0] == '#') continue;
        try {
            AtomSet chosen = parse_selection(line, problem, applicable);
            step(problem, trace, chosen);
        } catch (const Error& e) {
            out << "invalid selection: " << e.what() << "\n";
        }
    }
    if (opts.as_json)
        out << trace_json(problem, trace).dump(2) << "\n";
    else
        print_trace(out, problem, trace);
    return 0;
}

int cmd_induce(const CliOptions& opts, std::istream& in, std::ostream& out) {
    Problem problem = parse_problem(read_input(opts.input, in));
    if (opts.interactive || !opts.script.empty()) return interactive_induce(opts, problem, in, out);

    SafetyEngine engine(problem, budgets_from(opts));
    InductionTrace trace = InductionTrace::from_start(problem.empty_set());
    std::string warning;
    if (opts.strategy == "eager") {
        trace = eager_induction(problem);
    } else if (opts.strategy == "safe") {
        trace = engine.random_safe_induction(opts.seed);
        for (const auto& note : engine.premise_violations(trace))
            warning += "note: " + note + "\n";
    } else if (opts.strategy == "random") {
        trace = random_induction(problem, opts.seed, InductionPolicy::AnySubset);
        try {
            const SafeConstruction c = engine.safely_defined_structure();
            if (!(c.limit == trace.limit()))
                warning = "warning: limit differs from the safely defined structure (unsafe "
                          "derivations occurred)\n";
        } catch (const BudgetError&) {
            warning = "warning: safety of this run not checked (budget)\n";
        }
    } else if (opts.strategy == "respect-order") {
        if (!problem.declared_relation)
            throw InputError("strategy respect-order needs an order block");
        trace = random_induction(problem, opts.seed, InductionPolicy::Respect,
                                 &*problem.declared_relation);
    } else {
        throw InputError("unknown strategy '" + opts.strategy +
                         "' (eager, safe, random, respect-order)");
    }

    if (opts.as_json) {
        json output = trace_json(problem, trace);
        output["strategy"] = opts.strategy;
        if (opts.strategy != "eager") output["seed"] = opts.seed;
        if (!warning.empty()) output["warning"] = warning;
        out << output.dump(2) << "\n";
    } else {
        out << "strategy: " << opts.strategy;
        if (opts.strategy != "eager") out << " (seed " << opts.seed << ")";
        out << "\n";
        print_trace(out, problem, trace);
        out << warning;
    }
    return 0;
}

int cmd_safe(const CliOptions& opts, std::istream& in, std::ostream& out) {
    Problem problem = parse_problem(read_input(opts.input, in));
    SafetyEngine engine(problem, budgets_from(opts));
    engine.adopt_declared_order();
    const std::size_t atom = parse_ground_atom(opts.atom, problem);

    auto status_from = [&](const AtomSet& start) -> std::string {
        if (engine.safely_derivable(start, atom)) return "safe";
        if (engine.strictly_underivable(start, atom)) return "strictly-underivable";
        if (grounded(problem).derivable(start, atom)) return "derivable-unsafe";
        return "underivable-now";
    };
    const std::string from_empty = status_from(problem.empty_set());
    std::string from_limit = from_empty;
    std::string limit_note;
    try {
        const SafeConstruction c = engine.safely_defined_structure();
        if (c.limit.test(atom))
            from_limit = "safe"; // already a member of the limit
        else
            from_limit = status_from(c.limit);
    } catch (const BudgetError& e) {
        limit_note = e.what();
    }

    if (opts.as_json) {
        json output{{"atom", problem.label(atom)}, {"status", from_empty}};
        if (from_limit != from_empty) output["status_at_limit"] = from_limit;
        out << output.dump(2) << "\n";
    } else {
        out << problem.label(atom) << ": " << from_empty << "\n";
        if (from_limit != from_empty)
            out << "at the safely defined limit: " << from_limit << "\n";
        if (!limit_note.empty()) out << "note: " << limit_note << "\n";
    }
    return 0;
}

int cmd_check_order(const CliOptions& opts, std::istream& in, std::ostream& out) {
    Problem problem = parse_problem(read_input(opts.input, in));
    if (!problem.declared_relation) throw InputError("no order block in this problem");
    const OrderReport report = analyze_order(problem, *problem.declared_relation);
    if (opts.as_json) {
        out << order_report_json(problem, report).dump(2) << "\n";
    } else {
        out << "transitive: " << report.transitive << ", irreflexive: " << report.irreflexive
            << ", asymmetric: " << report.asymmetric
            << ", strict part well-founded: " << report.strict_part_well_founded << "\n";
        auto show = [&](const char* name, const CheckResult& check) {
            out << name << ": " << (check.holds ? "yes" : "no");
            if (check.witness) {
                out << "  witness: " << problem.label(check.witness->atom) << " derivable in ";
                print_atoms(out, problem, check.witness->derives_in);
                out << " but not in ";
                print_atoms(out, problem, check.witness->fails_in);
            }
            out << "\n";
        };
        show("dependency", report.dependency);
        show("monotone dependency", report.monotone_dependency);
        out << "strictly orders: " << (report.strictly_orders ? "yes" : "no") << "\n";
        out << "monotonically orders: " << (report.monotonically_orders ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_dnf(const CliOptions& opts, std::ostream& out) {
    const DnfFormula dnf = parse_dnf(opts.formula);
    const bool via_safety = dnf_validity_via_safety(dnf);
    const bool via_oracle = dnf_validity_oracle(dnf);
    if (opts.as_json) {
        json output{{"formula", render(dnf)},
                    {"valid_via_safety", via_safety},
                    {"valid_via_truth_table", via_oracle},
                    {"agreement", via_safety == via_oracle}};
        if (opts.show_problem) output["problem"] = render(dnf_to_problem(dnf));
        out << output.dump(2) << "\n";
    } else {
        if (opts.show_problem) out << render(dnf_to_problem(dnf)) << "\n";
        out << render(dnf) << " is " << (via_safety ? "valid" : "not valid")
            << " (safely defined structure)\n";
        out << "truth table: " << (via_oracle ? "valid" : "not valid") << "\n";
        out << "agreement: " << (via_safety == via_oracle ? "yes" : "NO") << "\n";
    }
    return via_safety == via_oracle ? 0 : 1;
}

int cmd_oracle(const CliOptions& opts, std::istream& in, std::ostream& out) {
    Problem problem = parse_problem(read_input(opts.input, in));
    SafetyEngine engine(problem, budgets_from(opts));
    const std::vector<AtomSet> fixpoints = engine.all_fixpoints();
    std::vector<bool> minimal(fixpoints.size(), true);
    for (std::size_t i = 0; i < fixpoints.size(); ++i)
        for (std::size_t j = 0; j < fixpoints.size(); ++j)
            if (i != j && fixpoints[j].is_subset_of(fixpoints[i])) minimal[i] = false;

    // Minimal saturated structures, by the same enumeration.
    std::vector<AtomSet> saturated;
    {
        const GroundProblem& g = grounded(problem);
        const std::size_t n = problem.universe().size();
        std::vector<std::size_t> live;
        AtomSet forced(n);
        for (std::size_t a = 0; a < n; ++a) {
            if (g.const_false.test(a)) continue;
            if (g.const_true.test(a)) {
                forced.set(a);
                continue;
            }
            live.push_back(a);
        }
        if (live.size() <= engine.budgets().max_fixpoint_atoms) {
            std::vector<AtomSet> all;
            const std::uint64_t total = UINT64_C(1) << live.size();
            for (std::uint64_t mask = 0; mask < total; ++mask) {
                AtomSet candidate = forced;
                for (std::size_t i = 0; i < live.size(); ++i)
                    if ((mask >> i) & 1) candidate.set(live[i]);
                if (g.gamma(candidate).is_subset_of(candidate)) all.push_back(candidate);
            }
            for (const auto& s : all) {
                bool is_min = true;
                for (const auto& t : all)
                    if (!(t == s) && t.is_subset_of(s)) is_min = false;
                if (is_min) saturated.push_back(s);
            }
            std::sort(saturated.begin(), saturated.end());
        }
    }

    if (opts.as_json) {
        json fps = json::array();
        for (std::size_t i = 0; i < fixpoints.size(); ++i)
            fps.push_back(json{{"atoms", atoms_json(problem, fixpoints[i])},
                               {"minimal", static_cast<bool>(minimal[i])}});
        json sats = json::array();
        for (const auto& s : saturated) sats.push_back(atoms_json(problem, s));
        out << json{{"fixpoints", fps}, {"minimal_saturated", sats}}.dump(2) << "\n";
    } else {
        out << "fixpoints of the operator (" << fixpoints.size() << "):\n";
        for (std::size_t i = 0; i < fixpoints.size(); ++i) {
            out << "  ";
            print_atoms(out, problem, fixpoints[i]);
            out << (minimal[i] ? "  (minimal)" : "") << "\n";
        }
        out << "minimal saturated structures (" << saturated.size() << "):\n";
        for (const auto& s : saturated) {
            out << "  ";
            print_atoms(out, problem, s);
            out << "\n";
        }
    }
    return 0;
}

int cmd_corpus(const std::vector<std::string>& rest, std::ostream& out) {
    if (rest.empty()) throw InputError("corpus needs a subcommand: list | export");
    if (rest[0] == "list") {
        for (const auto& name : corpus_names())
            out << name << "  " << corpus_describe(name) << "\n";
        return 0;
    }
    if (rest[0] == "export") {
        if (rest.size() < 2) throw InputError("corpus export needs an entry name");
        CorpusParams params;
        for (std::size_t i = 2; i < rest.size(); ++i) {
            const auto eq = rest[i].find('=');
            if (eq == std::string::npos)
                throw InputError("corpus parameters are key=value, got '" + rest[i] + "'");
            params[rest[i].substr(0, eq)] = rest[i].substr(eq + 1);
        }
        out << corpus_export(rest[1], params);
        return 0;
    }
    throw InputError("unknown corpus subcommand '" + rest[0] + "'");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"defkernel: a semantics engine for rule-based inductive definitions over "
                 "finite structures"};
    app.require_subcommand(1);
    CliOptions opts;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input)
            cmd->add_option("input", opts.input, "problem file, or - for stdin")->required();
        cmd->add_flag("--json", opts.as_json, "JSON output");
        cmd->add_option("--seed", opts.seed, "seed for randomized strategies");
        cmd->add_option("--max-atoms", opts.max_atoms,
                        "cap for exhaustive safety and fixpoint enumeration");
        cmd->add_option("--max-states", opts.max_states, "cap for visited structures per search");
    };

    auto* analyze = app.add_subcommand("analyze", "classification and safety report");
    add_common(analyze, true);
    auto* induce = app.add_subcommand("induce", "construct a natural induction");
    add_common(induce, true);
    induce->add_option("--strategy", opts.strategy, "eager | safe | random | respect-order");
    induce->add_flag("--interactive", opts.interactive, "stepper on stdin");
    induce->add_option("--script", opts.script, "replay selections from a file");
    auto* safe = app.add_subcommand("safe", "safety status of one atom");
    add_common(safe, true);
    safe->add_option("atom", opts.atom, "defined domain atom, e.g. R(a,b)")->required();
    auto* check = app.add_subcommand("check-order", "analyze the declared order");
    add_common(check, true);
    auto* dnf = app.add_subcommand("dnf", "DNF validity via the safety reduction");
    dnf->add_option("formula", opts.formula, "e.g. \"(p & ~q) | q | ~p\"")->required();
    dnf->add_flag("--json", opts.as_json, "JSON output");
    dnf->add_flag("--show-problem", opts.show_problem, "print the reduction problem");
    auto* oracle = app.add_subcommand("oracle", "brute-force fixpoint and saturation analysis");
    add_common(oracle, true);
    auto* corpus = app.add_subcommand("corpus", "built-in example problems (list | export)");
    corpus->allow_extras();

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(opts, in, out);
        if (induce->parsed()) return cmd_induce(opts, in, out);
        if (safe->parsed()) return cmd_safe(opts, in, out);
        if (check->parsed()) return cmd_check_order(opts, in, out);
        if (dnf->parsed()) return cmd_dnf(opts, out);
        if (oracle->parsed()) return cmd_oracle(opts, in, out);
        if (corpus->parsed()) return cmd_corpus(corpus->remaining(), out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no command\n";
    return 1;
}

} // namespace defkernel
