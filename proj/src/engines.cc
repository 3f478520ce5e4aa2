#include <omq/engines.hh>
#include <omq/csp.hh>
#include <omq/interpretation.hh>
#include <omq/semantics.hh>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

using std::map;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    auto to_string(Engine e) -> string
    {
        switch (e) {
            case Engine::automatic: return "auto";
            case Engine::chase: return "chase";
            case Engine::csp: return "csp";
            case Engine::tableau: return "tableau";
            case Engine::bruteforce: return "bruteforce";
        }
        return "?";
    }

    auto parse_engine(const string & s) -> optional<Engine>
    {
        for (auto e : {Engine::automatic, Engine::chase, Engine::csp, Engine::tableau, Engine::bruteforce})
            if (to_string(e) == s)
                return e;
        return std::nullopt;
    }

    namespace
    {
        auto has_exists(const Concept & c) -> bool
        {
            for (auto & d : subconcepts(c))
                if (d.kind() == ConceptKind::exists)
                    return true;
            return false;
        }
    }

    auto is_universal(const TBox & t) -> bool
    {
        for (auto & ci : t.inclusions)
            if (has_exists(nnf(Concept::disjunction(Concept::negation(ci.lhs), ci.rhs))))
                return false;
        return true;
    }

    auto select_engine(const TBox & t, const Query & q) -> Engine
    {
        if (is_horn_alcfi(t))
            return Engine::chase;
        if (! has_functional(dialect(t)) && q.is_tree())
            return Engine::csp;
        return Engine::tableau;
    }

    namespace
    {
        // A conjunct of a CQ after the answer variables are bound.
        struct Piece
        {
            bool boolean;
            Concept expr;
            string individual;
        };

        class Decomposer
        {
            private:
                const ABox & _abox;
                map<string, string> _binding;
                vector<Atom> _atoms;

                auto constant(const string & v) const -> bool { return _binding.contains(v); }

                auto roll(const string & v, int from, const vector<vector<int>> & incident) const -> Concept
                {
                    vector<Concept> parts;
                    for (int i : incident.at(index(v))) {
                        auto & a = _atoms[i];
                        if (a.args.size() == 1)
                            parts.push_back(Concept::name(a.predicate));
                        else if (i != from) {
                            bool forward = a.args[0] == v;
                            auto other = forward ? a.args[1] : a.args[0];
                            parts.push_back(Concept::exists(Role{a.predicate, ! forward}, roll(other, i, incident)));
                        }
                    }
                    return Concept::conjoin(parts);
                }

                vector<string> _vars;

                auto index(const string & v) const -> std::size_t
                {
                    return static_cast<std::size_t>(std::find(_vars.begin(), _vars.end(), v) - _vars.begin());
                }

            public:
                Decomposer(const ABox & a, const CQ & q, const Tuple & tuple) :
                    _abox(a),
                    _atoms(q.atoms)
                {
                    for (std::size_t i = 0 ; i < q.answer_vars.size() ; ++i)
                        _binding[q.answer_vars[i]] = tuple.at(i);
                }

                // Nothing when some conjunct is false in every model of a
                // consistent KB; an empty list when all conjuncts hold.
                auto pieces() -> optional<vector<Piece>>
                {
                    vector<Piece> out;
                    vector<Atom> open;
                    for (auto & a : _atoms) {
                        bool ground = std::all_of(a.args.begin(), a.args.end(), [&](auto & v) { return constant(v); });
                        if (! ground) {
                            open.push_back(a);
                            continue;
                        }
                        if (a.args.size() == 1) {
                            if (! _abox.has_concept(a.predicate, _binding[a.args[0]]))
                                out.push_back({false, Concept::name(a.predicate), _binding[a.args[0]]});
                        }
                        else if (! _abox.has_role(a.predicate, _binding[a.args[0]], _binding[a.args[1]]))
                            return std::nullopt;
                    }
                    _atoms = open;
                    for (auto & a : _atoms)
                        for (auto & v : a.args)
                            if (! constant(v) && std::find(_vars.begin(), _vars.end(), v) == _vars.end())
                                _vars.push_back(v);

                    vector<std::size_t> parent(_vars.size());
                    std::iota(parent.begin(), parent.end(), 0);
                    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
                        return parent[x] == x ? x : parent[x] = root(parent[x]);
                    };
                    for (auto & a : _atoms)
                        if (a.args.size() == 2 && ! constant(a.args[0]) && ! constant(a.args[1]))
                            parent[root(index(a.args[0]))] = root(index(a.args[1]));

                    map<std::size_t, vector<int>> components;
                    for (std::size_t i = 0 ; i < _atoms.size() ; ++i)
                        for (auto & v : _atoms[i].args)
                            if (! constant(v)) {
                                components[root(index(v))].push_back(static_cast<int>(i));
                                break;
                            }

                    vector<vector<int>> incident(_vars.size());
                    for (std::size_t i = 0 ; i < _atoms.size() ; ++i) {
                        auto & a = _atoms[i];
                        if (a.args.size() == 2 && a.args[0] == a.args[1])
                            throw Unsupported("the query has a loop atom");
                        for (auto & v : a.args)
                            if (! constant(v))
                                incident[index(v)].push_back(static_cast<int>(i));
                    }

                    for (auto & [r, atoms] : components) {
                        set<string> vars;
                        std::size_t edges = 0;
                        vector<int> anchors;
                        for (int i : atoms) {
                            auto & a = _atoms[i];
                            for (auto & v : a.args)
                                if (! constant(v))
                                    vars.insert(v);
                            if (a.args.size() == 2) {
                                ++edges;
                                if (constant(a.args[0]) || constant(a.args[1]))
                                    anchors.push_back(i);
                            }
                        }
                        if (anchors.size() > 1 || edges != vars.size() - 1 + anchors.size())
                            throw Unsupported("the query is not tree-shaped around the answer variables");
                        if (anchors.empty()) {
                            out.push_back({true, roll(*vars.begin(), -1, incident), ""});
                            continue;
                        }
                        auto & a = _atoms[anchors[0]];
                        bool forward = constant(a.args[0]);
                        auto at = _binding[forward ? a.args[0] : a.args[1]];
                        auto other = forward ? a.args[1] : a.args[0];
                        out.push_back({false, Concept::exists(Role{a.predicate, ! forward}, roll(other, anchors[0], incident)), at});
                    }
                    return out;
                }
        };
    }

    auto tableau_entails(const TBox & t, const ABox & a, const Query & q, const Tuple & tuple, const EngineOptions & opts)
        -> bool
    {
        if (q.is_tree()) {
            auto & tq = q.tree();
            if (tq.boolean)
                return entails_boolean(t, a, tq.expr, opts.tableau);
            return entails_instance(t, a, tq.expr, tuple.at(0), opts.tableau);
        }
        auto ucq = to_ucq(q);
        vector<vector<Piece>> disjuncts;
        for (auto & cq : ucq.disjuncts) {
            auto ps = Decomposer(a, cq, tuple).pieces();
            if (! ps)
                continue;
            if (ps->empty())
                return true;
            disjuncts.push_back(*ps);
        }
        std::size_t clauses = 1;
        for (auto & d : disjuncts) {
            clauses *= d.size();
            if (clauses > opts.max_clauses)
                throw SizeGuardExceeded("the query needs more than " + std::to_string(opts.max_clauses) + " clauses");
        }
        vector<std::size_t> pick(disjuncts.size(), 0);
        while (true) {
            auto tbox = t;
            vector<Assertion> facts;
            for (std::size_t i = 0 ; i < disjuncts.size() ; ++i) {
                auto & p = disjuncts[i][pick[i]];
                if (p.boolean)
                    tbox.inclusions.push_back({p.expr, Concept::bottom()});
                else
                    facts.push_back({p.expr, p.individual});
            }
            if (! entails_disjunction(tbox, a, facts, opts.tableau))
                return false;
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == disjuncts[i].size())
                pick[i++] = 0;
            if (i == pick.size())
                return true;
        }
    }

    auto bounded_countermodel(const TBox & t, const ABox & a, const Query & q, const Tuple & tuple,
            const EngineOptions & opts) -> optional<Interpretation>
    {
        auto sigma = signature(t);
        sigma.merge(a.signature());
        sigma.merge(q.signature());
        vector<string> cs(sigma.concepts.begin(), sigma.concepts.end());
        vector<string> rs(sigma.roles.begin(), sigma.roles.end());
        auto inds = a.individuals();
        vector<string> elements(inds.begin(), inds.end());
        std::size_t named = elements.size();
        auto extra = is_universal(t) ? 0 : opts.extra_elements;
        set<string> taken(inds.begin(), inds.end());
        for (std::size_t k = 0 ; k < extra ; ++k) {
            auto e = fresh_name("_e", taken);
            taken.insert(e);
            elements.push_back(e);
        }
        auto n = elements.size();

        struct Bit
        {
            int kind;   // 0 concept, 1 role
            std::size_t symbol, from, to;
        };
        vector<Bit> free;
        for (std::size_t e = 0 ; e < n ; ++e)
            for (std::size_t c = 0 ; c < cs.size() ; ++c)
                if (e >= named || ! a.has_concept(cs[c], elements[e]))
                    free.push_back({0, c, e, e});
        for (std::size_t r = 0 ; r < rs.size() ; ++r)
            for (std::size_t e = 0 ; e < n ; ++e)
                for (std::size_t f = 0 ; f < n ; ++f)
                    if (e >= named || f >= named || ! a.has_role(rs[r], elements[e], elements[f]))
                        free.push_back({1, r, e, f});
        if (free.size() > opts.max_model_bits)
            throw BudgetExceeded("bounded model search needs " + std::to_string(free.size()) + " free bits");

        vector<int> target;
        for (auto & ind : tuple)
            target.push_back(static_cast<int>(std::find(elements.begin(), elements.end(), ind) - elements.begin()));
        for (std::uint64_t mask = 0 ; mask < (std::uint64_t{1} << free.size()) ; ++mask) {
            Interpretation i;
            for (std::size_t e = 0 ; e < n ; ++e)
                i.add_element(elements[e], e < named);
            for (auto & ca : a.concept_assertions)
                i.add_concept(ca.concept_name, *i.find(ca.individual));
            for (auto & ra : a.role_assertions)
                i.add_edge(ra.role, *i.find(ra.from), *i.find(ra.to));
            for (std::size_t b = 0 ; b < free.size() ; ++b)
                if (mask >> b & 1) {
                    auto & bit = free[b];
                    if (bit.kind == 0)
                        i.add_concept(cs[bit.symbol], static_cast<int>(bit.from));
                    else
                        i.add_edge(rs[bit.symbol], static_cast<int>(bit.from), static_cast<int>(bit.to));
                }
            if (! is_model(i, t))
                continue;
            if (! match_query(i, q, target))
                return i;
        }
        return std::nullopt;
    }

    namespace
    {
        auto candidates(const ABox & a, std::size_t arity) -> vector<Tuple>
        {
            auto inds = a.individuals();
            vector<Tuple> out{{}};
            for (std::size_t k = 0 ; k < arity ; ++k) {
                vector<Tuple> next;
                for (auto & t : out)
                    for (auto & i : inds) {
                        next.push_back(t);
                        next.back().push_back(i);
                    }
                out = std::move(next);
            }
            return out;
        }

        void by_chase(const TBox & t, const ABox & a, const Query & q, const EngineOptions & opts, AnswerReport & r)
        {
            if (! is_horn_alcfi(t))
                throw Unsupported("the chase needs a Horn TBox");
            auto c = complete(t, a, opts.chase);
            for (auto & tuple : candidates(a, q.arity())) {
                auto v = horn_certain_answer(c, q, tuple);
                if (v == Verdict::yes)
                    r.answers.insert(tuple);
                else if (v == Verdict::inconclusive)
                    r.undecided.insert(tuple);
            }
        }

        void by_csp(const TBox & t, const ABox & a, const Query & q, AnswerReport & r)
        {
            if (has_functional(dialect(t)) || ! q.is_tree())
                throw Unsupported("the template route needs an ALC or ALCI TBox and a tree-shaped query");
            auto & tq = q.tree();
            if (tq.boolean) {
                auto templ = template_from_omq(t, tq.expr);
                if (! csp_hom(restrict_abox(a, template_signature(t, tq.expr)), templ))
                    r.answers.insert({});
                return;
            }
            set<string> used = t.concept_names();
            auto qn = concept_names(tq.expr);
            used.insert(qn.begin(), qn.end());
            auto an = a.signature().concepts;
            used.insert(an.begin(), an.end());
            auto marker = fresh_name("P", used);
            auto query = Concept::conjunction(Concept::name(marker), tq.expr);
            auto templ = template_from_omq(t, query);
            auto sigma = template_signature(t, query);
            for (auto & ind : a.individuals()) {
                auto marked = a;
                marked.add_concept(marker, ind);
                marked.isolated.erase(ind);
                if (! csp_hom(restrict_abox(marked, sigma), templ))
                    r.answers.insert({ind});
            }
        }
    }

    auto certain_answers(const TBox & t, const ABox & a, const Query & q, Engine engine, const EngineOptions & opts)
        -> AnswerReport
    {
        AnswerReport r;
        r.engine = engine == Engine::automatic ? select_engine(t, q) : engine;
        switch (r.engine) {
            case Engine::chase:
                by_chase(t, a, q, opts, r);
                break;
            case Engine::csp:
                by_csp(t, a, q, r);
                break;
            case Engine::tableau:
                for (auto & tuple : candidates(a, q.arity()))
                    try {
                        if (tableau_entails(t, a, q, tuple, opts))
                            r.answers.insert(tuple);
                    }
                    catch (const BudgetExceeded &) {
                        r.undecided.insert(tuple);
                    }
                break;
            case Engine::bruteforce:
                r.exact = is_universal(t);
                if (! r.exact)
                    r.note = "incomplete-engine: tuples without a bounded countermodel are reported";
                for (auto & tuple : candidates(a, q.arity()))
                    try {
                        if (! bounded_countermodel(t, a, q, tuple, opts))
                            r.answers.insert(tuple);
                    }
                    catch (const BudgetExceeded &) {
                        r.undecided.insert(tuple);
                    }
                break;
            case Engine::automatic:
                break;
        }
        return r;
    }
}
