#include "defkernel/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace defkernel {

namespace {

enum class Tok {
    Ident, LParen, RParen, LBrace, RBrace, Comma, Semi, Dot, Slash, MapsTo, RuleArrow,
    ImpliesOp, Equals, Amp, Pipe, Tilde, Less, Colon, End
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at line " + std::to_string(current_.line) + ", column " +
                             std::to_string(current_.column),
                         current_.line, current_.column);
    }

private:
    void advance() {
        skip_space();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_ = {Tok::End, "", line_, column_};
            return;
        }
        const char c = text_[pos_];
        if (ident_char(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_])) step();
            current_ = {Tok::Ident, text_.substr(start, pos_ - start), current_.line,
                        current_.column};
            return;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
        };
        if (two('<', '-')) return emit(Tok::RuleArrow, "<-", 2);
        if (two('-', '>')) return emit(Tok::MapsTo, "->", 2);
        if (two('=', '>')) return emit(Tok::ImpliesOp, "=>", 2);
        switch (c) {
        case '(': return emit(Tok::LParen, "(", 1);
        case ')': return emit(Tok::RParen, ")", 1);
        case '{': return emit(Tok::LBrace, "{", 1);
        case '}': return emit(Tok::RBrace, "}", 1);
        case ',': return emit(Tok::Comma, ",", 1);
        case ';': return emit(Tok::Semi, ";", 1);
        case '.': return emit(Tok::Dot, ".", 1);
        case '/': return emit(Tok::Slash, "/", 1);
        case '=': return emit(Tok::Equals, "=", 1);
        case '&': return emit(Tok::Amp, "&", 1);
        case '|': return emit(Tok::Pipe, "|", 1);
        case '~': return emit(Tok::Tilde, "~", 1);
        case '<': return emit(Tok::Less, "<", 1);
        case ':': return emit(Tok::Colon, ":", 1);
        default:
            throw ParseError("unexpected character '" + std::string(1, c) + "' at line " +
                                 std::to_string(line_) + ", column " + std::to_string(column_),
                             line_, column_);
        }
    }

    void emit(Tok kind, const char* text, int len) {
        current_ = {kind, text, current_.line, current_.column};
        for (int i = 0; i < len; ++i) step();
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') step();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                step();
            } else {
                break;
            }
        }
    }

    void step() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_{Tok::End, "", 1, 1};
};

struct Scope {
    std::vector<std::string> vars;
    bool bound(const std::string& name) const {
        return std::find(vars.begin(), vars.end(), name) != vars.end();
    }
};

class FormulaParser {
public:
    FormulaParser(Lexer& lex, const std::map<std::string, Symbol>& vocabulary,
                  bool allow_implicit_objects = true)
        : lex_(lex), vocab_(vocabulary), allow_implicit_(allow_implicit_objects) {}

    std::vector<std::string> implicit_objects; // undeclared bare identifiers

    // When set, undeclared identifiers in term position bind as fresh rule
    // variables (head-term parsing).
    Scope* collect_vars = nullptr;

    FormulaPtr formula(Scope& scope) { return implication(scope); }

    Term term(Scope& scope) {
        if (lex_.peek().kind != Tok::Ident) lex_.fail("expected a term");
        const Token name = lex_.take();
        if (lex_.peek().kind == Tok::LParen) {
            const Symbol* sym = find(name.text);
            if (sym == nullptr || sym->kind != SymbolKind::Function)
                lex_.fail("unknown function symbol '" + name.text + "'");
            lex_.take();
            std::vector<Term> args;
            if (lex_.peek().kind != Tok::RParen) {
                args.push_back(term(scope));
                while (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    args.push_back(term(scope));
                }
            }
            expect(Tok::RParen, ")");
            if (args.size() != sym->arity)
                lex_.fail("arity mismatch for function '" + name.text + "'");
            return t_app(*sym, std::move(args));
        }
        if (scope.bound(name.text)) return t_var(name.text);
        const Symbol* sym = find(name.text);
        if (sym != nullptr) {
            if (sym->kind == SymbolKind::Object) return t_app(*sym);
            lex_.fail("'" + name.text + "' is not usable as a term here");
        }
        if (collect_vars != nullptr) {
            collect_vars->vars.push_back(name.text);
            return t_var(name.text);
        }
        if (!allow_implicit_)
            lex_.fail("unknown symbol '" + name.text +
                      "' (not a head variable, quantified variable, or declared symbol)");
        implicit_objects.push_back(name.text);
        return t_obj(name.text);
    }

private:
    const Symbol* find(const std::string& name) const {
        auto it = vocab_.find(name);
        return it == vocab_.end() ? nullptr : &it->second;
    }

    void expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind) lex_.fail(std::string("expected '") + what + "'");
        lex_.take();
    }

    FormulaPtr implication(Scope& scope) {
        FormulaPtr left = disjunction(scope);
        if (lex_.peek().kind == Tok::ImpliesOp) {
            lex_.take();
            return f_implies(left, implication(scope));
        }
        return left;
    }

    FormulaPtr disjunction(Scope& scope) {
        FormulaPtr left = conjunction(scope);
        while (lex_.peek().kind == Tok::Pipe) {
            lex_.take();
            left = f_or(left, conjunction(scope));
        }
        return left;
    }

    FormulaPtr conjunction(Scope& scope) {
        FormulaPtr left = negation(scope);
        while (lex_.peek().kind == Tok::Amp) {
            lex_.take();
            left = f_and(left, negation(scope));
        }
        return left;
    }

    FormulaPtr negation(Scope& scope) {
        if (lex_.peek().kind == Tok::Tilde) {
            lex_.take();
            return f_not(negation(scope));
        }
        return primary(scope);
    }

    FormulaPtr primary(Scope& scope) {
        const Token& t = lex_.peek();
        if (t.kind == Tok::LParen) {
            lex_.take();
            FormulaPtr inner = formula(scope);
            expect(Tok::RParen, ")");
            return inner;
        }
        if (t.kind != Tok::Ident) lex_.fail("expected a formula");
        if (t.text == "true") {
            lex_.take();
            return f_true();
        }
        if (t.text == "false") {
            lex_.take();
            return f_false();
        }
        if (t.text == "exists" || t.text == "forall") {
            const bool exists = t.text == "exists";
            lex_.take();
            if (lex_.peek().kind != Tok::Ident) lex_.fail("expected a quantified variable");
            const std::string var = lex_.take().text;
            expect(Tok::Colon, ":");
            if (lex_.peek().kind != Tok::LParen)
                lex_.fail("quantifier body must be parenthesized");
            lex_.take();
            scope.vars.push_back(var);
            FormulaPtr body = formula(scope);
            scope.vars.pop_back();
            expect(Tok::RParen, ")");
            return exists ? f_exists(var, body) : f_forall(var, body);
        }
        // Predicate atom or the left-hand side of an equality.
        const Symbol* sym = find(t.text);
        if (sym != nullptr && sym->kind == SymbolKind::Predicate) {
            const Token name = lex_.take();
            std::vector<Term> args;
            if (lex_.peek().kind == Tok::LParen) {
                lex_.take();
                if (lex_.peek().kind != Tok::RParen) {
                    args.push_back(term(scope));
                    while (lex_.peek().kind == Tok::Comma) {
                        lex_.take();
                        args.push_back(term(scope));
                    }
                }
                expect(Tok::RParen, ")");
            }
            if (args.size() != sym->arity)
                lex_.fail("arity mismatch for predicate '" + name.text + "'");
            return f_atom(*sym, std::move(args));
        }
        Term lhs = term(scope);
        if (lex_.peek().kind != Tok::Equals) {
            if (sym == nullptr && !lhs.is_var())
                lex_.fail("unknown predicate '" + t.text + "'");
            lex_.fail("expected '=' after a term");
        }
        lex_.take();
        Term rhs = term(scope);
        return f_eq(std::move(lhs), std::move(rhs));
    }

    Lexer& lex_;
    const std::map<std::string, Symbol>& vocab_;
    bool allow_implicit_ = true;
};

struct GroundAtomText {
    std::string predicate;
    std::vector<std::string> elements;
};

GroundAtomText parse_ground_atom_tokens(Lexer& lex) {
    if (lex.peek().kind != Tok::Ident) lex.fail("expected a ground atom");
    GroundAtomText atom;
    atom.predicate = lex.take().text;
    if (lex.peek().kind == Tok::LParen) {
        lex.take();
        if (lex.peek().kind != Tok::RParen) {
            for (;;) {
                if (lex.peek().kind != Tok::Ident) lex.fail("expected a domain element");
                atom.elements.push_back(lex.take().text);
                if (lex.peek().kind != Tok::Comma) break;
                lex.take();
            }
        }
        if (lex.peek().kind != Tok::RParen) lex.fail("expected ')'");
        lex.take();
    }
    return atom;
}

class ProblemParser {
public:
    explicit ProblemParser(const std::string& text) : lex_(text) {}

    Problem parse() {
        while (lex_.peek().kind != Tok::End) statement();
        if (!domain_seen_) lex_.fail("missing 'domain' declaration");
        if (raw_rules_.empty()) lex_.fail("missing 'define' block");

        // A predicate is defined iff it heads a rule.
        std::set<std::string> defined_names;
        for (const auto& r : raw_rules_) defined_names.insert(r.head.name);
        for (const auto& [name, has_extension] : pred_has_extension_) {
            if (defined_names.count(name) != 0 && has_extension)
                lex_.fail("defined predicate '" + name + "' has a declared extension");
            if (defined_names.count(name) == 0 && !has_extension)
                lex_.fail("predicate '" + name + "' has no extension and heads no rule");
        }
        for (const auto& name : defined_names)
            if (pred_has_extension_.count(name) == 0)
                lex_.fail("rule head '" + name + "' was never declared");

        std::vector<Rule> rules;
        for (const auto& r : raw_rules_) rules.push_back(normalize_rule(r));
        Definition def = Definition::from_rules(std::move(rules));

        // Drop defined predicates from the context structure.
        FiniteStructure context(structure_.domain());
        for (const auto& [name, sym] : structure_.symbols()) {
            if (defined_names.count(name) != 0) continue;
            switch (sym.kind) {
            case SymbolKind::Object:
                context.set_object(name, structure_.object_value(name));
                break;
            case SymbolKind::Function: {
                std::vector<std::size_t> table;
                const auto n = checked_power(structure_.domain_size(), sym.arity, UINT64_C(1) << 22);
                table.reserve(static_cast<std::size_t>(n));
                std::vector<std::size_t> args(sym.arity, 0);
                for (std::uint64_t k = 0; k < n; ++k) {
                    table.push_back(structure_.apply_function(name, args));
                    for (std::size_t i = sym.arity; i-- > 0;) {
                        if (++args[i] < structure_.domain_size()) break;
                        args[i] = 0;
                    }
                }
                context.set_function(name, sym.arity, std::move(table));
                break;
            }
            case SymbolKind::Predicate:
                context.set_predicate(name, sym.arity, structure_.predicate_tuples(name));
                break;
            }
        }

        Problem problem(std::move(def), std::move(context));

        if (!order_pairs_.empty() || order_seen_) {
            AtomRelation rel(problem.universe().size());
            for (const auto& [a, b] : order_pairs_) {
                const std::size_t ia = resolve_atom(problem, a);
                const std::size_t ib = resolve_atom(problem, b);
                rel.add(ia, ib);
            }
            problem.declared_relation = rel.transitive_closure();
        }
        for (const auto& [name, atoms] : expect_sets_) {
            AtomSet s = problem.empty_set();
            for (const auto& a : atoms) s.set(resolve_atom(problem, a));
            problem.expected_sets[name] = std::move(s);
        }
        problem.expected_flags = expect_flags_;
        return problem;
    }

private:
    std::size_t resolve_atom(const Problem& problem, const GroundAtomText& atom) {
        std::vector<std::size_t> args;
        for (const auto& e : atom.elements)
            args.push_back(problem.context().require_element(e));
        auto idx = problem.universe().index_of(atom.predicate, args);
        if (!idx) lex_.fail("'" + atom.predicate + "' is not a defined domain atom");
        return *idx;
    }

    void expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind) lex_.fail(std::string("expected '") + what + "'");
        lex_.take();
    }

    std::string expect_ident() {
        if (lex_.peek().kind != Tok::Ident) lex_.fail("expected an identifier");
        return lex_.take().text;
    }

    std::size_t expect_arity() {
        const std::string text = expect_ident();
        for (char c : text)
            if (!std::isdigit(static_cast<unsigned char>(c))) lex_.fail("expected an arity");
        return static_cast<std::size_t>(std::stoul(text));
    }

    void statement() {
        const std::string kw = expect_ident();
        if (kw == "domain") return domain_decl();
        if (kw == "pred") return pred_decl();
        if (kw == "fun") return fun_decl();
        if (kw == "obj") return obj_decl();
        if (kw == "define") return define_block();
        if (kw == "order") return order_block();
        if (kw == "expect") return expect_stmt();
        lex_.fail("unknown declaration '" + kw + "'");
    }

    void domain_decl() {
        if (domain_seen_) lex_.fail("duplicate 'domain' declaration");
        std::vector<std::string> elements;
        while (lex_.peek().kind == Tok::Ident) elements.push_back(lex_.take().text);
        expect(Tok::Semi, ";");
        structure_ = FiniteStructure(std::move(elements));
        domain_seen_ = true;
    }

    void require_domain() {
        if (!domain_seen_) lex_.fail("'domain' must be declared first");
    }

    std::vector<std::size_t> tuple(std::size_t arity) {
        expect(Tok::LParen, "(");
        std::vector<std::size_t> out;
        if (lex_.peek().kind != Tok::RParen) {
            for (;;) {
                out.push_back(structure_.require_element(expect_ident()));
                if (lex_.peek().kind != Tok::Comma) break;
                lex_.take();
            }
        }
        expect(Tok::RParen, ")");
        if (out.size() != arity) lex_.fail("tuple arity mismatch");
        return out;
    }

    void pred_decl() {
        require_domain();
        const std::string name = expect_ident();
        expect(Tok::Slash, "/");
        const std::size_t arity = expect_arity();
        if (structure_.interprets(name) || pred_has_extension_.count(name))
            lex_.fail("duplicate declaration of '" + name + "'");
        if (lex_.peek().kind == Tok::Equals) {
            lex_.take();
            expect(Tok::LBrace, "{");
            std::set<std::vector<std::size_t>> tuples;
            if (lex_.peek().kind != Tok::RBrace) {
                for (;;) {
                    tuples.insert(tuple(arity));
                    if (lex_.peek().kind != Tok::Comma) break;
                    lex_.take();
                }
            }
            expect(Tok::RBrace, "}");
            expect(Tok::Semi, ";");
            structure_.set_predicate(name, arity, std::move(tuples));
            pred_has_extension_[name] = true;
        } else {
            expect(Tok::Semi, ";");
            structure_.set_predicate(name, arity, {});
            pred_has_extension_[name] = false;
        }
    }

    void fun_decl() {
        require_domain();
        const std::string name = expect_ident();
        expect(Tok::Slash, "/");
        const std::size_t arity = expect_arity();
        if (arity == 0) lex_.fail("use 'obj' for zero-ary symbols");
        expect(Tok::Equals, "=");
        expect(Tok::LBrace, "{");
        const auto total = checked_power(structure_.domain_size(), arity, UINT64_C(1) << 22);
        std::vector<std::size_t> table(static_cast<std::size_t>(total), SIZE_MAX);
        if (lex_.peek().kind != Tok::RBrace) {
            for (;;) {
                const std::vector<std::size_t> args = tuple(arity);
                expect(Tok::MapsTo, "->");
                const std::size_t value = structure_.require_element(expect_ident());
                std::size_t key = 0;
                for (std::size_t a : args) key = key * structure_.domain_size() + a;
                table[key] = value;
                if (lex_.peek().kind != Tok::Comma) break;
                lex_.take();
            }
        }
        expect(Tok::RBrace, "}");
        expect(Tok::Semi, ";");
        for (std::size_t v : table)
            if (v == SIZE_MAX)
                lex_.fail("function table for '" + name + "' is not total on D^" +
                          std::to_string(arity));
        structure_.set_function(name, arity, std::move(table));
    }

    void obj_decl() {
        require_domain();
        const std::string name = expect_ident();
        expect(Tok::Equals, "=");
        const std::size_t value = structure_.require_element(expect_ident());
        expect(Tok::Semi, ";");
        if (structure_.interprets(name)) lex_.fail("duplicate declaration of '" + name + "'");
        structure_.set_object(name, value);
    }

    void define_block() {
        require_domain();
        expect(Tok::LBrace, "{");
        while (lex_.peek().kind != Tok::RBrace) rule();
        expect(Tok::RBrace, "}");
    }

    void rule() {
        const std::string head_name = expect_ident();
        const Symbol* head = [&]() -> const Symbol* {
            auto it = structure_.symbols().find(head_name);
            return it == structure_.symbols().end() ? nullptr : &it->second;
        }();
        if (head == nullptr || head->kind != SymbolKind::Predicate)
            lex_.fail("rule head '" + head_name + "' is not a declared predicate");

        Scope scope; // head variables: undeclared identifiers in head terms
        FormulaParser fp(lex_, structure_.symbols(), /*allow_implicit_objects=*/false);
        std::vector<Term> head_terms;
        if (lex_.peek().kind == Tok::LParen) {
            lex_.take();
            if (lex_.peek().kind != Tok::RParen) {
                for (;;) {
                    head_terms.push_back(head_term(fp, scope));
                    if (lex_.peek().kind != Tok::Comma) break;
                    lex_.take();
                }
            }
            expect(Tok::RParen, ")");
        }
        if (head_terms.size() != head->arity)
            lex_.fail("rule head arity mismatch for '" + head_name + "'");
        expect(Tok::RuleArrow, "<-");
        FormulaPtr body = fp.formula(scope);
        expect(Tok::Dot, ".");
        raw_rules_.push_back(RawRule{*head, std::move(head_terms), desugar(body)});
    }

    // Head terms resolve undeclared identifiers, at any nesting depth, to
    // rule variables.
    Term head_term(FormulaParser& fp, Scope& scope) {
        fp.collect_vars = &scope;
        Term t = fp.term(scope);
        fp.collect_vars = nullptr;
        return t;
    }

    void order_block() {
        require_domain();
        order_seen_ = true;
        expect(Tok::LBrace, "{");
        while (lex_.peek().kind != Tok::RBrace) {
            GroundAtomText a = parse_ground_atom_tokens(lex_);
            expect(Tok::Less, "<");
            GroundAtomText b = parse_ground_atom_tokens(lex_);
            expect(Tok::Dot, ".");
            order_pairs_.emplace_back(std::move(a), std::move(b));
        }
        expect(Tok::RBrace, "}");
    }

    void expect_stmt() {
        require_domain();
        const std::string name = expect_ident();
        if (lex_.peek().kind == Tok::Equals) {
            lex_.take();
            const std::string value = expect_ident();
            if (value != "true" && value != "false") lex_.fail("expected 'true' or 'false'");
            expect(Tok::Semi, ";");
            expect_flags_[name] = value == "true";
            return;
        }
        expect(Tok::LBrace, "{");
        std::vector<GroundAtomText> atoms;
        while (lex_.peek().kind != Tok::RBrace) atoms.push_back(parse_ground_atom_tokens(lex_));
        expect(Tok::RBrace, "}");
        expect(Tok::Semi, ";");
        expect_sets_[name] = std::move(atoms);
    }

    Lexer lex_;
    FiniteStructure structure_{std::vector<std::string>{"?"}};
    bool domain_seen_ = false;
    bool order_seen_ = false;
    std::map<std::string, bool> pred_has_extension_;
    std::vector<RawRule> raw_rules_;
    std::vector<std::pair<GroundAtomText, GroundAtomText>> order_pairs_;
    std::map<std::string, std::vector<GroundAtomText>> expect_sets_;
    std::map<std::string, bool> expect_flags_;
};

} // namespace

Problem parse_problem(const std::string& text) { return ProblemParser(text).parse(); }

FormulaPtr parse_formula(const std::string& text, const std::map<std::string, Symbol>& vocabulary,
                         const std::vector<std::string>& free_variables) {
    Lexer lex(text);
    FormulaParser fp(lex, vocabulary);
    Scope scope;
    scope.vars = free_variables;
    FormulaPtr f = fp.formula(scope);
    if (lex.peek().kind != Tok::End) lex.fail("trailing input after formula");
    return desugar(f);
}

std::size_t parse_ground_atom(const std::string& text, const Problem& problem) {
    Lexer lex(text);
    GroundAtomText atom = parse_ground_atom_tokens(lex);
    if (lex.peek().kind != Tok::End) lex.fail("trailing input after atom");
    std::vector<std::size_t> args;
    for (const auto& e : atom.elements) args.push_back(problem.context().require_element(e));
    auto idx = problem.universe().index_of(atom.predicate, args);
    if (!idx) throw InputError("'" + text + "' is not a defined domain atom of this problem");
    return *idx;
}

// --------------------------------------------------------------------------
// Rendering. parse(render(p)) is structurally equal to p.

namespace {

void render_term(std::ostringstream& out, const Term& t) {
    if (t.is_var()) {
        out << t.var().name;
        return;
    }
    out << t.app().symbol.name;
    if (!t.app().args.empty()) {
        out << "(";
        for (std::size_t i = 0; i < t.app().args.size(); ++i) {
            if (i > 0) out << ",";
            render_term(out, t.app().args[i]);
        }
        out << ")";
    }
}

// Precedence: Or(1) < And(2) < Not(3); atoms and quantifiers bind tightest.
int precedence(const Formula& f) {
    switch (f.kind) {
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
        return 1;
    case Formula::Kind::And:
        return 2;
    case Formula::Kind::Not:
        return 3;
    default:
        return 4;
    }
}

void render_formula(std::ostringstream& out, const Formula& f, int parent) {
    const int mine = precedence(f);
    const bool parens = mine < parent;
    if (parens) out << "(";
    switch (f.kind) {
    case Formula::Kind::True:
        out << "true";
        break;
    case Formula::Kind::False:
        out << "false";
        break;
    case Formula::Kind::Atom:
        out << f.pred.name;
        if (!f.terms.empty()) {
            out << "(";
            for (std::size_t i = 0; i < f.terms.size(); ++i) {
                if (i > 0) out << ",";
                render_term(out, f.terms[i]);
            }
            out << ")";
        }
        break;
    case Formula::Kind::Eq:
        render_term(out, f.lhs);
        out << " = ";
        render_term(out, f.rhs);
        break;
    case Formula::Kind::Not:
        out << "~";
        if (f.a->kind == Formula::Kind::Eq) {
            out << "(";
            render_formula(out, *f.a, 0);
            out << ")";
        } else {
            render_formula(out, *f.a, 3);
        }
        break;
    case Formula::Kind::And:
        render_formula(out, *f.a, 2);
        out << " & ";
        render_formula(out, *f.b, 3);
        break;
    case Formula::Kind::Or:
        render_formula(out, *f.a, 1);
        out << " | ";
        render_formula(out, *f.b, 2);
        break;
    case Formula::Kind::Implies:
        render_formula(out, *f.a, 2);
        out << " => ";
        render_formula(out, *f.b, 1);
        break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
        out << (f.kind == Formula::Kind::Exists ? "exists " : "forall ") << f.var << ": (";
        render_formula(out, *f.a, 0);
        out << ")";
        break;
    }
    if (parens) out << ")";
}

} // namespace

std::string render(const Term& term) {
    std::ostringstream out;
    render_term(out, term);
    return out.str();
}

std::string render(const FormulaPtr& formula) {
    std::ostringstream out;
    render_formula(out, *formula, 0);
    return out.str();
}

std::string render(const Rule& rule) {
    std::ostringstream out;
    out << rule.head.name;
    if (!rule.head_vars.empty()) {
        out << "(";
        for (std::size_t i = 0; i < rule.head_vars.size(); ++i) {
            if (i > 0) out << ",";
            out << rule.head_vars[i];
        }
        out << ")";
    }
    out << " <- ";
    render_formula(out, *rule.body, 0);
    out << ".";
    return out.str();
}

std::string render(const Problem& problem) {
    std::ostringstream out;
    const FiniteStructure& ctx = problem.context();
    out << "domain";
    for (const auto& e : ctx.domain()) out << " " << e;
    out << " ;\n";

    for (const auto& [name, sym] : ctx.symbols()) {
        if (sym.kind != SymbolKind::Object) continue;
        out << "obj " << name << " = " << ctx.element_name(ctx.object_value(name)) << " ;\n";
    }
    for (const auto& [name, sym] : ctx.symbols()) {
        if (sym.kind != SymbolKind::Function) continue;
        out << "fun " << name << "/" << sym.arity << " = { ";
        const auto n = checked_power(ctx.domain_size(), sym.arity, UINT64_C(1) << 22);
        std::vector<std::size_t> args(sym.arity, 0);
        for (std::uint64_t k = 0; k < n; ++k) {
            if (k > 0) out << ", ";
            out << "(";
            for (std::size_t i = 0; i < sym.arity; ++i) {
                if (i > 0) out << ",";
                out << ctx.element_name(args[i]);
            }
            out << ")->" << ctx.element_name(ctx.apply_function(name, args));
            for (std::size_t i = sym.arity; i-- > 0;) {
                if (++args[i] < ctx.domain_size()) break;
                args[i] = 0;
            }
        }
        out << " } ;\n";
    }
    for (const auto& [name, sym] : ctx.symbols()) {
        if (sym.kind != SymbolKind::Predicate) continue;
        out << "pred " << name << "/" << sym.arity << " = { ";
        bool first = true;
        for (const auto& t : ctx.predicate_tuples(name)) {
            if (!first) out << ", ";
            first = false;
            out << "(";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i > 0) out << ",";
                out << ctx.element_name(t[i]);
            }
            out << ")";
        }
        out << " } ;\n";
    }
    for (const auto& d : problem.definition().defined)
        out << "pred " << d.name << "/" << d.arity << " ;\n";

    out << "define {\n";
    for (const auto& r : problem.definition().rules) out << "  " << render(r) << "\n";
    out << "}\n";

    if (problem.declared_relation) {
        out << "order {\n";
        for (const auto& [a, b] : problem.declared_relation->pairs())
            out << "  " << problem.label(a) << " < " << problem.label(b) << ".\n";
        out << "}\n";
    }
    for (const auto& [name, set] : problem.expected_sets) {
        out << "expect " << name << " {";
        set.for_each([&](std::size_t i) { out << " " << problem.label(i); });
        out << " } ;\n";
    }
    for (const auto& [name, value] : problem.expected_flags)
        out << "expect " << name << " = " << (value ? "true" : "false") << " ;\n";
    return out.str();
}

} // namespace defkernel
