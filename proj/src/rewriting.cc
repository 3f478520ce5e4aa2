#include <omq/rewriting.hh>
#include <omq/chase.hh>
#include <omq/csp.hh>

#include <algorithm>
#include <deque>
#include <map>

using std::map;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    namespace
    {
        auto set_name(const vector<int> & s) -> string
        {
            if (s.empty())
                return "P_none";
            string out = "P";
            for (int t : s)
                out += "_" + std::to_string(t);
            return out;
        }

        auto intersect(const vector<int> & a, const vector<int> & b) -> vector<int>
        {
            vector<int> out;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
            return out;
        }

        auto role_atom(const Role & r, const string & x, const string & y) -> Atom
        {
            return r.inverted ? Atom{r.name, {y, x}} : Atom{r.name, {x, y}};
        }

        class Builder
        {
            private:
                const TypeTable & _types;
                const RewritingOptions & _opts;
                map<vector<int>, int> _index;
                vector<vector<int>> _sets;

            public:
                Builder(const TypeTable & types, const RewritingOptions & opts) :
                    _types(types),
                    _opts(opts)
                {}

                auto pre(const Role & r, const vector<int> & s) const -> vector<int>
                {
                    vector<int> out;
                    for (std::size_t t = 0 ; t < _types.size() ; ++t)
                        for (int u : s)
                            if (_types.related(static_cast<int>(t), r, u)) {
                                out.push_back(static_cast<int>(t));
                                break;
                            }
                    return out;
                }

                auto all() const -> vector<int>
                {
                    vector<int> out(_types.size());
                    for (std::size_t t = 0 ; t < out.size() ; ++t)
                        out[t] = static_cast<int>(t);
                    return out;
                }

                auto with_name(const string & a) const -> vector<int>
                {
                    vector<int> out;
                    for (std::size_t t = 0 ; t < _types.size() ; ++t)
                        if (_types.contains(static_cast<int>(t), Concept::name(a)))
                            out.push_back(static_cast<int>(t));
                    return out;
                }

                auto add(const vector<int> & s) -> bool
                {
                    if (_index.contains(s))
                        return false;
                    if (_sets.size() >= _opts.max_idbs)
                        throw SizeGuardExceeded("rewriting needs more than " + std::to_string(_opts.max_idbs) + " IDBs");
                    _index.emplace(s, static_cast<int>(_sets.size()));
                    _sets.push_back(s);
                    return true;
                }

                auto concept_names() const -> vector<string>
                {
                    vector<string> out;
                    for (auto & c : _types.base)
                        if (c.kind() == ConceptKind::name)
                            out.push_back(c.symbol());
                    return out;
                }

                void reachable()
                {
                    add(all());
                    for (auto & a : concept_names())
                        add(with_name(a));
                    std::size_t done = 0;
                    while (done < _sets.size()) {
                        auto s = _sets[done];
                        for (auto & r : _types.roles)
                            add(pre(r, s));
                        for (std::size_t k = 0 ; k <= done ; ++k)
                            add(intersect(s, _sets[k]));
                        ++done;
                    }
                }

                void every_subset()
                {
                    auto n = _types.size();
                    if (n >= 63 || (std::size_t{1} << n) > _opts.max_idbs)
                        throw SizeGuardExceeded("the full rewriting schema needs 2^" + std::to_string(n) + " IDBs");
                    for (std::size_t mask = 0 ; mask < (std::size_t{1} << n) ; ++mask) {
                        vector<int> s;
                        for (std::size_t t = 0 ; t < n ; ++t)
                            if (mask >> t & 1)
                                s.push_back(static_cast<int>(t));
                        add(s);
                    }
                }

                auto sets() const -> const vector<vector<int>> & { return _sets; }

                auto atom(const vector<int> & s, const string & v) const -> Atom
                {
                    return Atom{set_name(s), {v}};
                }

                auto rules(bool boolean) const -> vector<Rule>
                {
                    vector<Rule> out;
                    out.push_back(Rule{atom(all(), "x"), {Atom{individual_relation, {"x"}}}, {}});
                    for (auto & a : concept_names())
                        out.push_back(Rule{atom(with_name(a), "x"), {Atom{a, {"x"}}}, {}});
                    if (_opts.full_schema) {
                        for (auto & t0 : _sets)
                            for (auto & t1 : _sets)
                                for (auto & r : _types.roles)
                                    out.push_back(Rule{atom(intersect(t0, pre(r, t1)), "x"),
                                        {atom(t0, "x"), role_atom(r, "x", "y"), atom(t1, "y")}, {}});
                    }
                    else
                        for (auto & s : _sets)
                            for (auto & r : _types.roles)
                                out.push_back(Rule{atom(pre(r, s), "x"), {role_atom(r, "x", "y"), atom(s, "y")}, {}});
                    for (std::size_t i = 0 ; i < _sets.size() ; ++i)
                        for (std::size_t j = i + 1 ; j < _sets.size() ; ++j) {
                            auto both = intersect(_sets[i], _sets[j]);
                            if (! _opts.full_schema && (both == _sets[i] || both == _sets[j]))
                                continue;
                            out.push_back(Rule{atom(both, "x"), {atom(_sets[i], "x"), atom(_sets[j], "x")}, {}});
                        }

                    Atom goal{"goal", boolean ? vector<string>{} : vector<string>{"x"}};
                    auto ind_x = Atom{individual_relation, {"x"}};
                    if (! boolean)
                        for (auto & s : _sets) {
                            bool all_contain = std::all_of(s.begin(), s.end(),
                                    [&](int t) { return _types.contains(t, _types.query); });
                            if (all_contain)
                                out.push_back(Rule{goal, {atom(s, "x")}, {}});
                        }
                    auto empty_body = vector<Atom>{atom({}, "y")};
                    if (! boolean)
                        empty_body.insert(empty_body.begin(), ind_x);
                    if (_index.contains({}))
                        out.push_back(Rule{goal, empty_body, {}});
                    for (auto & r : _types.tbox.functional) {
                        vector<Atom> body{role_atom(r, "y", "z1"), role_atom(r, "y", "z2")};
                        if (! boolean)
                            body.insert(body.begin(), ind_x);
                        out.push_back(Rule{goal, body, {{"z1", "z2"}}});
                    }
                    return out;
                }
        };
    }

    auto Rewriting::idb_name(std::size_t k) const -> string
    {
        return set_name(idbs.at(k));
    }

    auto construct_rewriting(const TBox & t, const TreeQuery & q, const RewritingOptions & opts) -> Rewriting
    {
        Rewriting out;
        out.types = q.boolean ? types_omitting(t, q.expr, opts.types) : compute_types(t, q.expr, opts.types);
        Builder b(out.types, opts);
        if (opts.full_schema)
            b.every_subset();
        else
            b.reachable();
        out.idbs = b.sets();
        out.program.goal = "goal";
        out.program.goal_arity = q.boolean ? 0 : 1;
        out.program.rules = b.rules(q.boolean);
        out.program.validate();
        return out;
    }

    auto build_rewriting(const TBox & t, const TreeQuery & q, const RewritingOptions & opts) -> Program
    {
        return construct_rewriting(t, q, opts).program;
    }

    auto soundness_status(const TBox & t, const TreeQuery & q, const Program & p, const vector<ABox> & corpus)
        -> SoundnessReport
    {
        bool horn = is_horn_alcfi(t);
        auto d = dialect(t);
        bool via_template = ! horn && q.boolean && ! has_functional(d);
        if (! horn && ! via_template)
            throw NoOracle("no exact oracle for this TBox and query");

        SoundnessReport report;
        ABox templ;
        Signature sigma;
        if (via_template) {
            templ = template_from_omq(t, q.expr);
            sigma = signature(t);
            sigma.merge(Query{q}.signature());
        }
        Query query{q};
        for (auto & a : corpus) {
            auto derived = evaluate(p, a);
            auto check = [&](const vector<string> & tuple, const string & individual) {
                Verdict v;
                if (horn)
                    v = horn_certain_answer(t, a, query, tuple);
                else
                    v = csp_hom(restrict_abox(a, sigma), templ) ? Verdict::no : Verdict::yes;
                if (v == Verdict::inconclusive) {
                    ++report.skipped;
                    return;
                }
                ++report.checked;
                bool got = derived.contains(tuple);
                if (got && v == Verdict::no)
                    report.unsound.push_back({a, individual, true});
                if (! got && v == Verdict::yes)
                    report.incomplete.push_back({a, individual, false});
            };
            if (q.boolean)
                check({}, "");
            else
                for (auto & ind : a.individuals())
                    check({ind}, ind);
        }
        return report;
    }
}
