#include "defkernel/dnf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "defkernel/safety.hpp"

namespace defkernel {

namespace {

struct DnfLexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    }
    std::string ident() {
        skip();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        if (start == pos)
            throw ParseError("expected a propositional variable", 1, static_cast<int>(pos) + 1);
        return text.substr(start, pos - start);
    }
};

} // namespace

DnfFormula parse_dnf(const std::string& text) {
    DnfLexer lex{text};
    DnfFormula dnf;
    std::vector<std::string>& vars = dnf.variables;
    auto remember = [&](const std::string& v) {
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    };

    for (;;) {
        DnfFormula::Disjunct disjunct;
        const bool parenthesized = lex.eat('(');
        for (;;) {
            const bool neg = lex.eat('~');
            const std::string v = lex.ident();
            remember(v);
            (neg ? disjunct.negative : disjunct.positive).push_back(v);
            if (!lex.eat('&')) break;
        }
        if (parenthesized && !lex.eat(')'))
            throw ParseError("expected ')'", 1, static_cast<int>(lex.pos) + 1);
        // Duplicate literals within a disjunct carry no weight.
        auto dedup = [](std::vector<std::string>& xs) {
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        };
        dedup(disjunct.positive);
        dedup(disjunct.negative);
        dnf.disjuncts.push_back(std::move(disjunct));
        if (!lex.eat('|')) break;
    }
    lex.skip();
    if (lex.pos != text.size())
        throw ParseError("trailing input after DNF", 1, static_cast<int>(lex.pos) + 1);
    std::sort(dnf.variables.begin(), dnf.variables.end());
    return dnf;
}

Problem dnf_to_problem(const DnfFormula& dnf) {
    if (dnf.variables.empty()) throw InputError("DNF has no variables");
    if (dnf.disjuncts.empty()) throw InputError("DNF has no disjuncts");

    std::vector<std::string> domain = dnf.variables;
    std::vector<std::string> disjunct_ids;
    for (std::size_t i = 0; i < dnf.disjuncts.size(); ++i) {
        std::string id = "d" + std::to_string(i + 1);
        while (std::find(domain.begin(), domain.end(), id) != domain.end()) id += "_";
        disjunct_ids.push_back(id);
        domain.push_back(id);
    }

    FiniteStructure context(domain);
    std::set<std::vector<std::size_t>> prop, dis, pos, neg;
    for (const auto& v : dnf.variables) prop.insert({context.require_element(v)});
    for (std::size_t i = 0; i < dnf.disjuncts.size(); ++i) {
        const std::size_t d = context.require_element(disjunct_ids[i]);
        dis.insert({d});
        for (const auto& v : dnf.disjuncts[i].positive)
            pos.insert({d, context.require_element(v)});
        for (const auto& v : dnf.disjuncts[i].negative)
            neg.insert({d, context.require_element(v)});
    }
    context.set_predicate("Prop", 1, std::move(prop));
    context.set_predicate("Dis", 1, std::move(dis));
    context.set_predicate("Pos", 2, std::move(pos));
    context.set_predicate("Neg", 2, std::move(neg));

    const Symbol val = predicate_symbol("Val", 0);
    const Symbol truth = predicate_symbol("T", 1);
    const Symbol sym_prop = predicate_symbol("Prop", 1);
    const Symbol sym_dis = predicate_symbol("Dis", 1);
    const Symbol sym_pos = predicate_symbol("Pos", 2);
    const Symbol sym_neg = predicate_symbol("Neg", 2);

    FormulaPtr val_body = f_exists(
        "d",
        f_and(f_atom(sym_dis, {t_var("d")}),
              f_and(f_forall("p", desugar(f_implies(f_atom(sym_pos, {t_var("d"), t_var("p")}),
                                                    f_atom(truth, {t_var("p")})))),
                    f_forall("p", desugar(f_implies(f_atom(sym_neg, {t_var("d"), t_var("p")}),
                                                    f_not(f_atom(truth, {t_var("p")}))))))));
    FormulaPtr t_body = f_and(f_atom(val, {}), f_atom(sym_prop, {t_var("p")}));

    std::vector<Rule> rules;
    rules.push_back(Rule{val, {}, val_body});
    rules.push_back(Rule{truth, {"p"}, t_body});
    return Problem(Definition::from_rules(std::move(rules)), std::move(context));
}

bool dnf_validity_via_safety(const DnfFormula& dnf) {
    Problem problem = dnf_to_problem(dnf);
    SafetyEngine engine(problem);
    const SafeConstruction c = engine.safely_defined_structure();
    const std::size_t val = problem.universe().require_index("Val", {});
    return c.limit.test(val);
}

bool dnf_validity_oracle(const DnfFormula& dnf) {
    if (dnf.variables.size() > 20) throw BudgetError("truth-table oracle capped at 20 variables");
    const std::uint64_t total = UINT64_C(1) << dnf.variables.size();
    auto var_bit = [&](const std::string& v) {
        const auto it = std::find(dnf.variables.begin(), dnf.variables.end(), v);
        return static_cast<std::size_t>(it - dnf.variables.begin());
    };
    for (std::uint64_t valuation = 0; valuation < total; ++valuation) {
        bool some_disjunct = false;
        for (const auto& d : dnf.disjuncts) {
            bool holds = true;
            for (const auto& v : d.positive)
                if (((valuation >> var_bit(v)) & 1) == 0) holds = false;
            for (const auto& v : d.negative)
                if (((valuation >> var_bit(v)) & 1) == 1) holds = false;
            if (holds) {
                some_disjunct = true;
                break;
            }
        }
        if (!some_disjunct) return false;
    }
    return true;
}

std::string render(const DnfFormula& dnf) {
    std::ostringstream out;
    for (std::size_t i = 0; i < dnf.disjuncts.size(); ++i) {
        if (i > 0) out << " | ";
        const auto& d = dnf.disjuncts[i];
        const bool parens = d.positive.size() + d.negative.size() > 1;
        if (parens) out << "(";
        bool first = true;
        for (const auto& v : d.positive) {
            if (!first) out << " & ";
            first = false;
            out << v;
        }
        for (const auto& v : d.negative) {
            if (!first) out << " & ";
            first = false;
            out << "~" << v;
        }
        if (parens) out << ")";
    }
    return out.str();
}

} // namespace defkernel
