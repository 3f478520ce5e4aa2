#include <omq/parse.hh>
#include <omq/datalog.hh>

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    ParseError::ParseError(int line, int column, const string & message) :
        std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        _line(line),
        _column(column)
    {
    }

    namespace
    {
        enum class TokenKind
        {
            identifier,
            number,
            punct,
            end
        };

        struct Token
        {
            TokenKind kind;
            string text;
            int line, column;
        };

        const set<string> reserved = {"top", "bot", "not", "and", "or", "some", "all", "inv", "sub", "func",
            "exists", "true"};

        auto tokenize_line(const string & text, int line) -> vector<Token>
        {
            vector<Token> out;
            std::size_t i = 0;
            while (i < text.size()) {
                char ch = text[i];
                int column = static_cast<int>(i) + 1;
                if (ch == '#')
                    break;
                if (std::isspace(static_cast<unsigned char>(ch))) {
                    ++i;
                    continue;
                }
                if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                    std::size_t j = i;
                    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                        ++j;
                    out.push_back({TokenKind::identifier, text.substr(i, j - i), line, column});
                    i = j;
                    continue;
                }
                if (std::isdigit(static_cast<unsigned char>(ch))) {
                    std::size_t j = i;
                    while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j])))
                        ++j;
                    auto word = text.substr(i, j - i);
                    if (! std::all_of(word.begin(), word.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); }))
                        throw ParseError(line, column, "identifiers may not start with a digit");
                    out.push_back({TokenKind::number, word, line, column});
                    i = j;
                    continue;
                }
                auto two = text.substr(i, 2);
                if (two == ":-" || two == "->" || two == "!=") {
                    out.push_back({TokenKind::punct, two, line, column});
                    i += 2;
                    continue;
                }
                if (string("().,=:/").find(ch) != string::npos) {
                    out.push_back({TokenKind::punct, string(1, ch), line, column});
                    ++i;
                    continue;
                }
                throw ParseError(line, column, string("unexpected character '") + ch + "'");
            }
            out.push_back({TokenKind::end, "", line, static_cast<int>(text.size()) + 1});
            return out;
        }

        class Cursor
        {
            private:
                vector<Token> _tokens;
                std::size_t _pos = 0;

            public:
                explicit Cursor(vector<Token> t) : _tokens(std::move(t)) {}

                auto peek(std::size_t ahead = 0) const -> const Token &
                {
                    return _tokens[std::min(_pos + ahead, _tokens.size() - 1)];
                }

                auto next() -> const Token &
                {
                    auto & t = peek();
                    if (_pos < _tokens.size() - 1)
                        ++_pos;
                    return t;
                }

                auto at_end() const -> bool { return peek().kind == TokenKind::end; }

                auto is(const string & text) const -> bool
                {
                    return peek().kind != TokenKind::end && peek().text == text;
                }

                auto accept(const string & text) -> bool
                {
                    if (is(text)) {
                        next();
                        return true;
                    }
                    return false;
                }

                [[noreturn]] void fail(const string & message) const
                {
                    auto & t = peek();
                    throw ParseError(t.line, t.column, message);
                }

                void expect(const string & text)
                {
                    if (! accept(text))
                        fail("expected '" + text + "'" + (at_end() ? " before end of line" : ", found '" + peek().text + "'"));
                }

                auto identifier(const string & what) -> string
                {
                    auto & t = peek();
                    if (t.kind != TokenKind::identifier)
                        fail("expected " + what + (at_end() ? " before end of line" : ", found '" + t.text + "'"));
                    if (reserved.contains(t.text))
                        fail("keyword '" + t.text + "' cannot be used as " + what);
                    return next().text;
                }

                void expect_end()
                {
                    if (! at_end())
                        fail("unexpected '" + peek().text + "'");
                }
        };

        auto parse_role(Cursor & c) -> Role
        {
            if (c.accept("inv")) {
                c.expect("(");
                auto name = c.identifier("role name");
                c.expect(")");
                return Role{name, true};
            }
            return Role{c.identifier("role name"), false};
        }

        auto parse_concept_expr(Cursor & c) -> Concept;

        auto parse_unary(Cursor & c) -> Concept
        {
            if (c.accept("not"))
                return Concept::negation(parse_unary(c));
            if (c.is("some") || c.is("all")) {
                bool some = c.next().text == "some";
                auto r = parse_role(c);
                c.expect(".");
                auto filler = parse_unary(c);
                return some ? Concept::exists(r, filler) : Concept::forall(r, filler);
            }
            if (c.accept("top"))
                return Concept::top();
            if (c.accept("bot"))
                return Concept::bottom();
            if (c.accept("(")) {
                auto inner = parse_concept_expr(c);
                c.expect(")");
                return inner;
            }
            if (c.peek().kind == TokenKind::identifier && ! reserved.contains(c.peek().text))
                return Concept::name(c.next().text);
            if (c.peek().kind == TokenKind::identifier)
                c.fail("unexpected keyword '" + c.peek().text + "'");
            c.fail(c.at_end() ? "expected a concept before end of line" : "expected a concept, found '" + c.peek().text + "'");
        }

        auto parse_conj(Cursor & c) -> Concept
        {
            auto result = parse_unary(c);
            while (c.accept("and"))
                result = Concept::conjunction(result, parse_unary(c));
            return result;
        }

        auto parse_disj(Cursor & c) -> Concept
        {
            auto result = parse_conj(c);
            while (c.accept("or"))
                result = Concept::disjunction(result, parse_conj(c));
            return result;
        }

        auto parse_concept_expr(Cursor & c) -> Concept
        {
            auto lhs = parse_disj(c);
            if (c.accept("->"))
                return Concept::implication(lhs, parse_concept_expr(c));
            return lhs;
        }

        template <typename F>
        void for_each_line(const string & text, F && f)
        {
            std::istringstream in(text);
            string line;
            int number = 0;
            while (std::getline(in, line)) {
                ++number;
                Cursor c(tokenize_line(line, number));
                if (c.at_end())
                    continue;
                f(c, number);
            }
        }
    }

    auto parse_concept(const string & text) -> Concept
    {
        Cursor c(tokenize_line(text, 1));
        auto result = parse_concept_expr(c);
        c.expect_end();
        return result;
    }

    auto parse_tbox(const string & text) -> TBox
    {
        TBox t;
        bool any = false;
        for_each_line(text, [&] (Cursor & c, int) {
            any = true;
            if (c.is("func") && c.peek(1).text == "(") {
                c.next();
                c.expect("(");
                t.functional.insert(parse_role(c));
                c.expect(")");
                c.expect_end();
                return;
            }
            auto lhs = parse_concept_expr(c);
            c.expect("sub");
            auto rhs = parse_concept_expr(c);
            c.expect_end();
            t.inclusions.push_back({lhs, rhs});
        });
        if (! any)
            throw ParseError(1, 1, "no inclusions");
        return t;
    }

    namespace
    {
        // Reads A(a) or r(a,b); returns false on a header line it did not consume.
        void parse_assertion(Cursor & c, ABox & a)
        {
            auto pred = c.identifier("concept or role name");
            c.expect("(");
            auto first = c.identifier("individual name");
            if (c.accept(",")) {
                auto second = c.identifier("individual name");
                c.expect(")");
                a.add_role(pred, first, second);
            }
            else {
                c.expect(")");
                a.add_concept(pred, first);
            }
            c.expect_end();
        }

        auto parse_name_list(Cursor & c) -> vector<string>
        {
            vector<string> out;
            if (c.at_end())
                return out;
            out.push_back(c.identifier("individual name"));
            while (c.accept(","))
                out.push_back(c.identifier("individual name"));
            c.expect_end();
            return out;
        }

        auto is_header(Cursor & c, const string & key) -> bool
        {
            return c.peek().text == key && c.peek(1).text == ":";
        }
    }

    auto parse_abox(const string & text) -> ABox
    {
        ABox a;
        for_each_line(text, [&] (Cursor & c, int) {
            if (is_header(c, "individuals")) {
                c.next();
                c.next();
                for (auto & n : parse_name_list(c))
                    a.add_individual(n);
                return;
            }
            parse_assertion(c, a);
        });
        if (a.empty())
            throw ParseError(1, 1, "no assertions");
        // declared individuals that also occur in assertions are not isolated
        auto used = ABox{a.concept_assertions, a.role_assertions, {}}.individuals();
        for (auto & n : used)
            a.isolated.erase(n);
        return a;
    }

    auto parse_interpretation(const string & text) -> Interpretation
    {
        ABox a;
        vector<string> named, domain;
        bool named_given = false;
        for_each_line(text, [&] (Cursor & c, int) {
            if (is_header(c, "named")) {
                c.next();
                c.next();
                named_given = true;
                for (auto & n : parse_name_list(c))
                    named.push_back(n);
                return;
            }
            if (is_header(c, "domain")) {
                c.next();
                c.next();
                for (auto & n : parse_name_list(c))
                    domain.push_back(n);
                return;
            }
            parse_assertion(c, a);
        });
        Interpretation i;
        set<string> named_set(named.begin(), named.end());
        for (auto & n : named)
            i.add_element(n, true);
        for (auto & n : domain)
            i.add_element(n, ! named_given || named_set.contains(n));
        for (auto & n : a.individuals())
            i.add_element(n, ! named_given || named_set.contains(n));
        for (auto & ca : a.concept_assertions)
            i.add_concept(ca.concept_name, *i.find(ca.individual));
        for (auto & ra : a.role_assertions)
            i.add_edge(ra.role, *i.find(ra.from), *i.find(ra.to));
        return i;
    }

    namespace
    {
        struct BodyParser
        {
            Cursor & c;
            bool complex = false;

            auto atom() -> Formula
            {
                Atom a;
                a.predicate = c.identifier("predicate");
                c.expect("(");
                a.args.push_back(c.identifier("variable"));
                if (c.accept(","))
                    a.args.push_back(c.identifier("variable"));
                c.expect(")");
                return Formula::make_atom(std::move(a));
            }

            auto prim() -> Formula
            {
                if (c.accept("exists")) {
                    complex = true;
                    vector<string> vars{c.identifier("variable")};
                    while (c.accept(","))
                        vars.push_back(c.identifier("variable"));
                    c.expect(".");
                    return Formula::make_exists(std::move(vars), prim());
                }
                if (c.accept("(")) {
                    complex = true;
                    auto f = formula();
                    c.expect(")");
                    return f;
                }
                if (c.accept("true"))
                    return Formula::make_and({});
                return atom();
            }

            auto conj() -> Formula
            {
                vector<Formula> parts{prim()};
                while (true) {
                    if (c.accept("and"))
                        complex = true;
                    else if (! c.accept(","))
                        break;
                    parts.push_back(prim());
                }
                if (parts.size() == 1)
                    return std::move(parts.front());
                return Formula::make_and(std::move(parts));
            }

            auto formula() -> Formula
            {
                vector<Formula> parts{conj()};
                while (c.accept("or")) {
                    complex = true;
                    parts.push_back(conj());
                }
                if (parts.size() == 1)
                    return std::move(parts.front());
                return Formula::make_or(std::move(parts));
            }
        };

        auto flatten_atoms(const Formula & f) -> vector<Atom>
        {
            if (f.kind == FormulaKind::atom)
                return {f.atom};
            vector<Atom> out;
            for (auto & ch : f.children) {
                auto sub = flatten_atoms(ch);
                out.insert(out.end(), sub.begin(), sub.end());
            }
            return out;
        }

        auto cq_as_formula(const CQ & q) -> Formula
        {
            if (q.atoms.size() == 1)
                return Formula::make_atom(q.atoms.front());
            vector<Formula> parts;
            for (auto & a : q.atoms)
                parts.push_back(Formula::make_atom(a));
            return Formula::make_and(std::move(parts));
        }
    }

    auto parse_query(const string & text) -> Query
    {
        optional<vector<string>> head_vars;
        optional<TreeQuery> tree;
        vector<CQ> cqs;
        vector<Formula> peqs;
        bool any_peq = false;
        int lines = 0;

        for_each_line(text, [&] (Cursor & c, int line) {
            ++lines;
            c.identifier("query name");
            c.expect("(");
            vector<string> vars;
            if (! c.is(")")) {
                vars.push_back(c.identifier("variable"));
                while (c.accept(","))
                    vars.push_back(c.identifier("variable"));
            }
            c.expect(")");
            if (head_vars && *head_vars != vars)
                throw ParseError(line, 1, "all query lines must have the same answer variables");
            head_vars = vars;

            if (c.accept("=")) {
                if (vars.size() > 1)
                    c.fail("a concept query has at most one answer variable");
                auto expr = parse_concept_expr(c);
                c.expect_end();
                if (! is_eli(expr))
                    throw ParseError(line, 1, "query concept is not an ELI concept");
                tree = TreeQuery{expr, vars.empty(), vars.empty() ? "x" : vars.front()};
                return;
            }
            c.expect(":-");
            BodyParser p{c};
            auto f = p.formula();
            c.expect_end();
            if (p.complex) {
                any_peq = true;
                peqs.push_back(std::move(f));
            }
            else {
                CQ q;
                q.answer_vars = vars;
                q.atoms = flatten_atoms(f);
                cqs.push_back(q);
                peqs.push_back(cq_as_formula(q));
            }
        });

        if (lines == 0)
            throw ParseError(1, 1, "no query");
        if (tree) {
            if (lines > 1)
                throw ParseError(1, 1, "a concept query must be the only line");
            return Query{*tree};
        }
        if (any_peq) {
            if (peqs.size() == 1)
                return Query{PEQ{*head_vars, std::move(peqs.front())}};
            return Query{PEQ{*head_vars, Formula::make_or(std::move(peqs))}};
        }
        if (cqs.size() == 1)
            return Query{cqs.front()};
        return Query{UCQ{*head_vars, cqs}};
    }

    auto to_string(const TBox & t) -> string
    {
        string out;
        for (auto & r : t.functional)
            out += "func(" + r.to_string() + ")\n";
        for (auto & ci : t.inclusions)
            out += ci.lhs.to_string() + " sub " + ci.rhs.to_string() + "\n";
        return out;
    }

    auto to_string(const ABox & a) -> string
    {
        string out;
        if (! a.isolated.empty()) {
            out += "individuals: ";
            bool first = true;
            for (auto & n : a.isolated) {
                if (! first)
                    out += ", ";
                first = false;
                out += n;
            }
            out += "\n";
        }
        for (auto & ca : a.concept_assertions)
            out += ca.concept_name + "(" + ca.individual + ")\n";
        for (auto & ra : a.role_assertions)
            out += ra.role + "(" + ra.from + "," + ra.to + ")\n";
        return out;
    }

    auto to_string(const Interpretation & i) -> string
    {
        string out = "named:";
        bool first = true;
        for (int e : i.named_elements()) {
            out += first ? " " : ", ";
            first = false;
            out += i.name(e);
        }
        out += "\ndomain:";
        first = true;
        for (std::size_t e = 0 ; e < i.size() ; ++e) {
            out += first ? " " : ", ";
            first = false;
            out += i.name(static_cast<int>(e));
        }
        out += "\n";
        for (auto & c : i.concept_names())
            for (int e : i.members(c))
                out += c + "(" + i.name(e) + ")\n";
        for (auto & r : i.role_names())
            for (auto & [d, e] : i.edges(r))
                out += r + "(" + i.name(d) + "," + i.name(e) + ")\n";
        return out;
    }

    namespace
    {
        auto parse_datalog_atom(Cursor & c) -> Atom
        {
            Atom a;
            a.predicate = c.identifier("relation name");
            c.expect("(");
            if (! c.is(")")) {
                a.args.push_back(c.identifier("variable"));
                while (c.accept(","))
                    a.args.push_back(c.identifier("variable"));
            }
            c.expect(")");
            return a;
        }
    }

    auto parse_program(const string & text) -> Program
    {
        Program p;
        bool declared = false;
        for_each_line(text, [&] (Cursor & c, int) {
            if (c.accept(".")) {
                if (c.identifier("directive") != "goal")
                    c.fail("unknown directive");
                p.goal = c.identifier("goal relation");
                c.expect("/");
                if (c.peek().kind != TokenKind::number)
                    c.fail("expected the goal arity");
                p.goal_arity = std::stoul(c.next().text);
                c.expect_end();
                declared = true;
                return;
            }
            Rule r;
            r.head = parse_datalog_atom(c);
            if (c.accept(":-")) {
                do {
                    if (c.peek(1).text == "!=") {
                        auto left = c.identifier("variable");
                        c.expect("!=");
                        r.inequalities.push_back({left, c.identifier("variable")});
                    }
                    else
                        r.body.push_back(parse_datalog_atom(c));
                } while (c.accept(","));
            }
            c.accept(".");
            c.expect_end();
            p.rules.push_back(std::move(r));
        });
        if (! declared)
            for (auto & r : p.rules)
                if (r.head.predicate == p.goal) {
                    p.goal_arity = r.head.args.size();
                    break;
                }
        try {
            p.validate();
        }
        catch (const std::invalid_argument & e) {
            throw ParseError(1, 1, e.what());
        }
        return p;
    }
}
