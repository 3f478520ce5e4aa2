#include <omq/query.hh>

#include <map>
#include <set>

using std::map;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    auto Atom::to_string() const -> string
    {
        string out = predicate + "(";
        for (std::size_t i = 0 ; i < args.size() ; ++i) {
            if (i)
                out += ",";
            out += args[i];
        }
        return out + ")";
    }

    auto CQ::variables() const -> vector<string>
    {
        vector<string> out;
        set<string> seen;
        for (auto & v : answer_vars)
            if (seen.insert(v).second)
                out.push_back(v);
        for (auto & a : atoms)
            for (auto & v : a.args)
                if (seen.insert(v).second)
                    out.push_back(v);
        return out;
    }

    auto Formula::make_atom(Atom a) -> Formula
    {
        Formula f;
        f.kind = FormulaKind::atom;
        f.atom = std::move(a);
        return f;
    }

    auto Formula::make_and(vector<Formula> cs) -> Formula
    {
        Formula f;
        f.kind = FormulaKind::conjunction;
        f.children = std::move(cs);
        return f;
    }

    auto Formula::make_or(vector<Formula> cs) -> Formula
    {
        Formula f;
        f.kind = FormulaKind::disjunction;
        f.children = std::move(cs);
        return f;
    }

    auto Formula::make_exists(vector<string> vs, Formula body) -> Formula
    {
        Formula f;
        f.kind = FormulaKind::exists;
        f.bound = std::move(vs);
        f.children.push_back(std::move(body));
        return f;
    }

    auto Formula::node_count() const -> std::size_t
    {
        std::size_t n = 1;
        for (auto & c : children)
            n += c.node_count();
        return n;
    }

    auto to_string(QueryKind k) -> string
    {
        switch (k) {
            case QueryKind::elq: return "ELQ";
            case QueryKind::eliq: return "ELIQ";
            case QueryKind::cq: return "CQ";
            case QueryKind::ucq: return "UCQ";
            case QueryKind::peq: return "PEQ";
        }
        return "?";
    }

    auto Query::kind() const -> QueryKind
    {
        switch (body.index()) {
            case 0: return uses_inverse(std::get<TreeQuery>(body).expr) ? QueryKind::eliq : QueryKind::elq;
            case 1: return QueryKind::cq;
            case 2: return QueryKind::ucq;
            default: return QueryKind::peq;
        }
    }

    auto Query::answer_vars() const -> vector<string>
    {
        switch (body.index()) {
            case 0: {
                auto & t = std::get<TreeQuery>(body);
                return t.boolean ? vector<string>{} : vector<string>{t.var};
            }
            case 1: return std::get<CQ>(body).answer_vars;
            case 2: return std::get<UCQ>(body).answer_vars;
            default: return std::get<PEQ>(body).answer_vars;
        }
    }

    auto Query::arity() const -> std::size_t
    {
        return answer_vars().size();
    }

    namespace
    {
        void atom_signature(const Atom & a, Signature & sig)
        {
            if (a.args.size() == 1)
                sig.concepts.insert(a.predicate);
            else
                sig.roles.insert(a.predicate);
        }

        void formula_signature(const Formula & f, Signature & sig)
        {
            if (f.kind == FormulaKind::atom)
                atom_signature(f.atom, sig);
            for (auto & c : f.children)
                formula_signature(c, sig);
        }
    }

    auto Query::signature() const -> Signature
    {
        Signature sig;
        switch (body.index()) {
            case 0: {
                auto & c = std::get<TreeQuery>(body).expr;
                sig.concepts = concept_names(c);
                sig.roles = role_names(c);
                break;
            }
            case 1:
                for (auto & a : std::get<CQ>(body).atoms)
                    atom_signature(a, sig);
                break;
            case 2:
                for (auto & d : std::get<UCQ>(body).disjuncts)
                    for (auto & a : d.atoms)
                        atom_signature(a, sig);
                break;
            default:
                formula_signature(std::get<PEQ>(body).body, sig);
        }
        return sig;
    }

    auto Query::eliq(Concept c, string var) -> Query
    {
        return Query{TreeQuery{std::move(c), false, std::move(var)}};
    }

    auto Query::boolean_eliq(Concept c) -> Query
    {
        return Query{TreeQuery{std::move(c), true, "x"}};
    }

    namespace
    {
        void free_vars(const Formula & f, set<string> bound, set<string> & out)
        {
            if (f.kind == FormulaKind::atom)
                for (auto & v : f.atom.args)
                    if (! bound.contains(v))
                        out.insert(v);
            bound.insert(f.bound.begin(), f.bound.end());
            for (auto & c : f.children)
                free_vars(c, bound, out);
        }

        // Gives every quantified variable a name that is unique in the query.
        auto rename_apart(const Formula & f, map<string, string> scope, set<string> & used) -> Formula
        {
            switch (f.kind) {
                case FormulaKind::atom: {
                    Atom a = f.atom;
                    for (auto & v : a.args)
                        if (auto it = scope.find(v) ; it != scope.end())
                            v = it->second;
                    return Formula::make_atom(std::move(a));
                }
                case FormulaKind::exists: {
                    vector<string> bound;
                    for (auto & v : f.bound) {
                        string name = used.contains(v) ? fresh_name(v + "_", used) : v;
                        used.insert(name);
                        scope[v] = name;
                        bound.push_back(name);
                    }
                    return Formula::make_exists(std::move(bound), rename_apart(f.children.front(), scope, used));
                }
                default: {
                    vector<Formula> cs;
                    for (auto & c : f.children)
                        cs.push_back(rename_apart(c, scope, used));
                    Formula g = f;
                    g.children = std::move(cs);
                    return g;
                }
            }
        }

        using Dnf = vector<vector<Atom>>;

        auto dnf(const Formula & f, std::size_t cap) -> Dnf
        {
            switch (f.kind) {
                case FormulaKind::atom:
                    return Dnf{{f.atom}};
                case FormulaKind::exists:
                    return dnf(f.children.front(), cap);
                case FormulaKind::disjunction: {
                    Dnf out;
                    for (auto & c : f.children) {
                        auto d = dnf(c, cap);
                        out.insert(out.end(), d.begin(), d.end());
                        if (out.size() > cap)
                            throw SizeGuardExceeded("disjunct cap exceeded while distributing disjunctions");
                    }
                    return out;
                }
                case FormulaKind::conjunction: {
                    Dnf out{{}};
                    for (auto & c : f.children) {
                        auto d = dnf(c, cap);
                        if (out.size() * d.size() > cap)
                            throw SizeGuardExceeded("disjunct cap exceeded while distributing disjunctions");
                        Dnf next;
                        for (auto & x : out)
                            for (auto & y : d) {
                                auto z = x;
                                z.insert(z.end(), y.begin(), y.end());
                                next.push_back(std::move(z));
                            }
                        out = std::move(next);
                    }
                    return out;
                }
            }
            return {};
        }
    }

    auto peq_to_ucq(const PEQ & q, std::size_t max_disjuncts) -> UCQ
    {
        set<string> used(q.answer_vars.begin(), q.answer_vars.end());
        free_vars(q.body, {}, used);
        Formula renamed = rename_apart(q.body, {}, used);
        UCQ out;
        out.answer_vars = q.answer_vars;
        for (auto & atoms : dnf(renamed, max_disjuncts)) {
            CQ cq;
            cq.answer_vars = q.answer_vars;
            set<Atom> seen;
            for (auto & a : atoms)
                if (seen.insert(a).second)
                    cq.atoms.push_back(a);
            out.disjuncts.push_back(std::move(cq));
        }
        return out;
    }

    auto eliq_to_cq(const TreeQuery & q) -> CQ
    {
        CQ out;
        if (! q.boolean)
            out.answer_vars.push_back(q.var);
        unsigned counter = 0;
        auto visit = [&] (auto && self, const Concept & c, const string & v) -> void {
            switch (c.kind()) {
                case ConceptKind::top:
                    break;
                case ConceptKind::name:
                    out.atoms.push_back(Atom{c.symbol(), {v}});
                    break;
                case ConceptKind::conjunction:
                    self(self, c.left(), v);
                    self(self, c.right(), v);
                    break;
                case ConceptKind::exists: {
                    string y = "y" + std::to_string(++counter);
                    if (c.role().inverted)
                        out.atoms.push_back(Atom{c.role().name, {y, v}});
                    else
                        out.atoms.push_back(Atom{c.role().name, {v, y}});
                    self(self, c.operand(), y);
                    break;
                }
                default:
                    throw std::invalid_argument("not an ELI concept: " + c.to_string());
            }
        };
        visit(visit, q.expr, q.var);
        return out;
    }

    auto to_ucq(const Query & q, std::size_t max_disjuncts) -> UCQ
    {
        switch (q.body.index()) {
            case 0: {
                auto cq = eliq_to_cq(q.tree());
                return UCQ{cq.answer_vars, {cq}};
            }
            case 1: {
                auto & cq = std::get<CQ>(q.body);
                return UCQ{cq.answer_vars, {cq}};
            }
            case 2:
                return std::get<UCQ>(q.body);
            default:
                return peq_to_ucq(std::get<PEQ>(q.body), max_disjuncts);
        }
    }

    namespace
    {
        auto head(const vector<string> & vars) -> string
        {
            string out = "q(";
            for (std::size_t i = 0 ; i < vars.size() ; ++i) {
                if (i)
                    out += ",";
                out += vars[i];
            }
            return out + ")";
        }

        auto cq_body(const CQ & q) -> string
        {
            if (q.atoms.empty())
                return "true";
            string out;
            for (std::size_t i = 0 ; i < q.atoms.size() ; ++i) {
                if (i)
                    out += ", ";
                out += q.atoms[i].to_string();
            }
            return out;
        }

        // 1: or, 2: and, 3: exists, atoms
        auto level(const Formula & f) -> int
        {
            switch (f.kind) {
                case FormulaKind::disjunction: return 1;
                case FormulaKind::conjunction: return 2;
                default: return 3;
            }
        }

        void print_formula(const Formula & f, string & out);

        void print_child(const Formula & f, int parent_level, string & out)
        {
            bool parens = level(f) <= parent_level || (f.kind == FormulaKind::conjunction && f.children.size() < 2)
                || (f.kind == FormulaKind::disjunction && f.children.size() < 2);
            if (parens)
                out += '(';
            print_formula(f, out);
            if (parens)
                out += ')';
        }

        void print_formula(const Formula & f, string & out)
        {
            switch (f.kind) {
                case FormulaKind::atom:
                    out += f.atom.to_string();
                    break;
                case FormulaKind::conjunction:
                    if (f.children.empty())
                        out += "true";
                    for (std::size_t i = 0 ; i < f.children.size() ; ++i) {
                        if (i)
                            out += " and ";
                        print_child(f.children[i], 2, out);
                    }
                    break;
                case FormulaKind::disjunction:
                    for (std::size_t i = 0 ; i < f.children.size() ; ++i) {
                        if (i)
                            out += " or ";
                        print_child(f.children[i], 1, out);
                    }
                    break;
                case FormulaKind::exists:
                    out += "exists ";
                    for (std::size_t i = 0 ; i < f.bound.size() ; ++i) {
                        if (i)
                            out += ",";
                        out += f.bound[i];
                    }
                    out += ". ";
                    if (f.children.front().kind == FormulaKind::atom || f.children.front().kind == FormulaKind::exists)
                        print_formula(f.children.front(), out);
                    else
                        print_child(f.children.front(), 3, out);
                    break;
            }
        }
    }

    auto to_string(const Formula & f) -> string
    {
        string out;
        print_formula(f, out);
        return out;
    }

    auto to_string(const CQ & q) -> string
    {
        return head(q.answer_vars) + " :- " + cq_body(q);
    }

    auto to_string(const Query & q) -> string
    {
        switch (q.body.index()) {
            case 0: {
                auto & t = q.tree();
                return head(t.boolean ? vector<string>{} : vector<string>{t.var}) + " = " + t.expr.to_string() + "\n";
            }
            case 1:
                return to_string(std::get<CQ>(q.body)) + "\n";
            case 2: {
                string out;
                for (auto & d : std::get<UCQ>(q.body).disjuncts)
                    out += head(std::get<UCQ>(q.body).answer_vars) + " :- " + cq_body(d) + "\n";
                return out;
            }
            default: {
                auto & p = std::get<PEQ>(q.body);
                string body;
                // a lone atom or flat conjunction would read back as a CQ
                print_child(p.body, p.body.kind == FormulaKind::exists ? 0 : 3, body);
                return head(p.answer_vars) + " :- " + body + "\n";
            }
        }
    }
}
