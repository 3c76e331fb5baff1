#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "defkernel/cli.hpp"
#include "defkernel/corpus.hpp"

using namespace defkernel;
using nlohmann::json;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "/tmp/defkernel_test_" + name;
    std::ofstream f(path);
    f << text;
    return path;
}

} // namespace

TEST_CASE("analyze: exit codes encode well-definedness") {
    SUBCASE("transitive closure is well-defined (exit 0)") {
        const auto r = run({"analyze", "-", "--json"}, corpus_export("tc"));
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.out);
        CHECK(j["report"]["saturated"] == true);
        CHECK(j["report"]["true"].size() == 5);
        CHECK(j["report"]["undecided"].empty());
        CHECK(j["expectations"]["defined"] == "match");
        CHECK(j["expectations"]["saturated"] == "match");
    }
    SUBCASE("the paradox is borderline (exit 3)") {
        const auto r = run({"analyze", "-", "--json"}, corpus_export("foo"));
        CHECK(r.exit_code == 3);
        const json j = json::parse(r.out);
        CHECK(j["report"]["saturated"] == false);
        CHECK(j["report"]["undecided"].size() == 2);
        CHECK(j["report"]["true"].empty());
    }
    SUBCASE("unparseable input is an operational error (exit 1)") {
        const auto r = run({"analyze", "-"}, "domain a ;\nnonsense\n");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("error") != std::string::npos);
    }
}

TEST_CASE("induce: strategies") {
    const std::string even = corpus_export("even", {{"n", "6"}});
    SUBCASE("eager on tc gives the two-stage trace") {
        const auto r = run({"induce", "-", "--json"}, corpus_export("tc"));
        const json j = json::parse(r.out);
        CHECK(r.exit_code == 0);
        CHECK(j["terminal"] == true);
        CHECK(j["stages"].size() == 3); // ∅ plus two derivation stages
        CHECK(j["stages"][0].empty());
    }
    SUBCASE("respect-order constructs the evens in increasing order") {
        const auto r = run({"induce", "-", "--strategy", "respect-order", "--seed", "4",
                            "--json"},
                           even);
        const json j = json::parse(r.out);
        CHECK(r.exit_code == 0);
        CHECK(j["terminal"] == true);
        const auto& last = j["stages"].back();
        std::set<std::string> limit(last.begin(), last.end());
        CHECK(limit == std::set<std::string>{"Ev(0)", "Ev(2)", "Ev(4)", "Ev(6)"});
    }
    SUBCASE("random runs may be warned as unsafe") {
        bool warned = false;
        for (int seed = 1; seed <= 30 && !warned; ++seed) {
            const auto r = run({"induce", "-", "--strategy", "random", "--seed",
                                std::to_string(seed), "--json"},
                               even);
            const json j = json::parse(r.out);
            if (j.contains("warning")) warned = true;
        }
        CHECK(warned);
    }
    SUBCASE("respect-order without an order block fails") {
        const auto r = run({"induce", "-", "--strategy", "respect-order"}, corpus_export("tc"));
        CHECK(r.exit_code == 1);
    }
    SUBCASE("JSON output is deterministic for a fixed seed") {
        const auto a = run({"induce", "-", "--strategy", "random", "--seed", "9", "--json"}, even);
        const auto b = run({"induce", "-", "--strategy", "random", "--seed", "9", "--json"}, even);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("induce: interactive stepper and scripts") {
    const std::string tc = corpus_export("tc");
    const std::string file = write_temp("tc.def", tc);
    SUBCASE("stdin-driven session") {
        const auto r = run({"induce", file, "--interactive"}, "all\nall\n");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("saturated; induction is terminal") != std::string::npos);
        CHECK(r.out.find("[safe]") != std::string::npos);
    }
    SUBCASE("script replay reproduces the same trace") {
        const std::string script = write_temp("script.txt", "1 2\nall\nall\n");
        const auto a = run({"induce", file, "--script", script, "--json"});
        const auto b = run({"induce", file, "--script", script, "--json"});
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
    }
    SUBCASE("invalid selections re-prompt") {
        const auto r = run({"induce", file, "--interactive"}, "99\nall\nall\n");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("invalid selection") != std::string::npos);
        CHECK(r.out.find("saturated") != std::string::npos);
    }
    SUBCASE("unsafe choices are annotated") {
        const std::string even_file = write_temp("even.def", corpus_export("even", {{"n", "4"}}));
        const auto r = run({"induce", even_file, "--interactive"}, "quit\n");
        CHECK(r.out.find("[unsafe]") != std::string::npos); // the odd candidates
        CHECK(r.out.find("[safe]") != std::string::npos);   // Ev(0)
    }
}

TEST_CASE("safe: atom status queries") {
    const std::string even = corpus_export("even", {{"n", "4"}});
    SUBCASE("Ev(0) is safe") {
        const auto r = run({"safe", "-", "Ev(0)", "--json"}, even);
        CHECK(json::parse(r.out)["status"] == "safe");
    }
    SUBCASE("Ev(1) is derivable but unsafe, and false at the limit") {
        const auto r = run({"safe", "-", "Ev(1)", "--json"}, even);
        const json j = json::parse(r.out);
        CHECK(j["status"] == "derivable-unsafe");
        CHECK(j["status_at_limit"] == "strictly-underivable");
    }
    SUBCASE("the truth-teller is strictly underivable") {
        const auto r = run({"safe", "-", "T", "--json"}, corpus_export("teller"));
        CHECK(json::parse(r.out)["status"] == "strictly-underivable");
    }
    SUBCASE("P in the chain example is underivable right now") {
        const auto r = run({"safe", "-", "P", "--json"}, corpus_export("pq"));
        const json j = json::parse(r.out);
        CHECK(j["status"] == "underivable-now");
        CHECK(j["status_at_limit"] == "safe");
    }
    SUBCASE("unknown atoms error") {
        const auto r = run({"safe", "-", "Nope(0)"}, even);
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("check-order") {
    SUBCASE("the standard even order strictly orders the definition") {
        const auto r = run({"check-order", "-", "--json"}, corpus_export("even", {{"n", "4"}}));
        const json j = json::parse(r.out);
        CHECK(j["strictly_orders"] == true);
        CHECK(j["is_dependency"]["holds"] == true);
    }
    SUBCASE("the swapped order fails with a witness") {
        const auto r = run({"check-order", "-", "--json"},
                           corpus_export("even", {{"n", "4"}, {"order", "swapped"}}));
        const json j = json::parse(r.out);
        CHECK(j["is_dependency"]["holds"] == false);
        CHECK(j["is_dependency"]["witness"]["atom"] == "Ev(1)");
        CHECK(j["is_dependency"]["witness"]["derives_in"].empty());
        CHECK(j["is_dependency"]["witness"]["fails_in"] == json::array({"Ev(0)"}));
    }
    SUBCASE("grue demonstrates the parity check") {
        const auto r = run({"check-order", "-", "--json"}, corpus_export("grue"));
        const json j = json::parse(r.out);
        CHECK(j["is_dependency"]["holds"] == false);
    }
    SUBCASE("missing order block") {
        const auto r = run({"check-order", "-"}, corpus_export("tc"));
        CHECK(r.exit_code == 1);
    }
}

TEST_CASE("dnf") {
    SUBCASE("a tautology") {
        const auto r = run({"dnf", "p | ~p", "--json"});
        const json j = json::parse(r.out);
        CHECK(r.exit_code == 0);
        CHECK(j["valid_via_safety"] == true);
        CHECK(j["agreement"] == true);
    }
    SUBCASE("a satisfiable non-tautology") {
        const auto r = run({"dnf", "p", "--json"});
        CHECK(json::parse(r.out)["valid_via_safety"] == false);
    }
    SUBCASE("the proof's second case") {
        const auto r = run({"dnf", "(p & q) | ~p", "--json", "--show-problem"});
        const json j = json::parse(r.out);
        CHECK(j["valid_via_safety"] == false);
        CHECK(j["agreement"] == true);
        CHECK(j["problem"].get<std::string>().find("Val <-") != std::string::npos);
    }
    SUBCASE("parse errors exit 1") {
        CHECK(run({"dnf", "p |"}).exit_code == 1);
    }
}

TEST_CASE("oracle") {
    SUBCASE("the non-minimal example lists {P} and {P,Q}") {
        const auto r = run({"oracle", "-", "--json"}, corpus_export("nonminimal"));
        const json j = json::parse(r.out);
        REQUIRE(j["fixpoints"].size() == 2);
        CHECK(j["fixpoints"][0]["atoms"] == json::array({"P"}));
        CHECK(j["fixpoints"][0]["minimal"] == true);
        CHECK(j["fixpoints"][1]["atoms"] == json::array({"P", "Q"}));
        CHECK(j["fixpoints"][1]["minimal"] == false);
    }
    SUBCASE("tc flags its closure as minimal") {
        const auto r = run({"oracle", "-", "--json"}, corpus_export("tc"));
        const json j = json::parse(r.out);
        bool closure_minimal = false;
        for (const auto& f : j["fixpoints"])
            if (f["atoms"].size() == 5 && f["minimal"] == true) closure_minimal = true;
        CHECK(closure_minimal);
        CHECK(j["minimal_saturated"].size() == 1);
        CHECK(j["minimal_saturated"][0].size() == 5);
    }
    SUBCASE("the paradox has no fixpoint over a singleton domain") {
        const auto r = run({"oracle", "-", "--json"}, corpus_export("foo", {{"n", "1"}}));
        CHECK(json::parse(r.out)["fixpoints"].empty());
    }
}

TEST_CASE("corpus subcommand") {
    const auto list = run({"corpus", "list"});
    CHECK(list.exit_code == 0);
    for (const auto& name : corpus_names())
        CHECK(list.out.find(name) != std::string::npos);

    const auto exp = run({"corpus", "export", "even", "n=4", "order=swapped"});
    CHECK(exp.exit_code == 0);
    CHECK(exp.out.find("Ev(1) < Ev(0).") != std::string::npos);

    CHECK(run({"corpus", "export", "bogus"}).exit_code == 1);
    CHECK(run({"corpus"}).exit_code == 1);
}

TEST_CASE("golden JSON outputs") {
    // Frozen schema: a change here is a contract change for downstream
    // consumers and needs a deliberate decision.
    SUBCASE("eager induction trace") {
        const auto r = run({"induce", "-", "--json"}, corpus_export("tc"));
        const char* expected = R"json({
  "stages": [
    [],
    [
      "R(a,a)",
      "R(b,c)",
      "R(c,b)"
    ],
    [
      "R(a,a)",
      "R(b,b)",
      "R(b,c)",
      "R(c,b)",
      "R(c,c)"
    ]
  ],
  "strategy": "eager",
  "terminal": true
}
)json";
        CHECK(r.out == expected);
    }
    SUBCASE("safety report keys") {
        const auto r = run({"analyze", "-", "--json"}, corpus_export("pq"));
        const json j = json::parse(r.out);
        const json& report = j["report"];
        for (const char* key :
             {"true", "false", "undecided", "saturated", "fixpoint", "minimal", "unique"})
            CHECK(report.contains(key));
        CHECK(report.dump() ==
              R"({"false":[],"fixpoint":true,"minimal":true,"saturated":true,)"
              R"("true":["P","Q"],"undecided":[],"unique":true})");
    }
}

TEST_CASE("budget flags flow through") {
    // With a tiny state cap and no usable declared order, analyze must fail
    // loudly rather than silently approximate.
    const auto r = run({"analyze", "-", "--max-states", "8"},
                       corpus_export("even", {{"n", "10"}, {"order", "swapped"}}));
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("budget") != std::string::npos);

    // The environment override behaves like the flag; with a verified
    // declared order the engine falls back to the certified construction.
    setenv("DEFKERNEL_BUDGET_STATES", "8", 1);
    const auto swapped = run({"analyze", "-"},
                             corpus_export("even", {{"n", "10"}, {"order", "swapped"}}));
    CHECK(swapped.exit_code == 1);
    const auto standard = run({"analyze", "-"}, corpus_export("even", {{"n", "10"}}));
    CHECK(standard.exit_code == 0);
    CHECK(standard.out.find("order-certified") != std::string::npos);
    unsetenv("DEFKERNEL_BUDGET_STATES");
}
