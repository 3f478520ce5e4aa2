#include <omq/datalog.hh>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

using std::map;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    const string individual_relation = "ind";

    auto Rule::to_string() const -> string
    {
        string out = head.to_string();
        if (body.empty() && inequalities.empty())
            return out + ".";
        out += " :- ";
        bool first = true;
        for (auto & a : body) {
            out += (first ? "" : ", ") + a.to_string();
            first = false;
        }
        for (auto & q : inequalities) {
            out += (first ? "" : ", ") + q.left + " != " + q.right;
            first = false;
        }
        return out + ".";
    }

    auto Program::idb() const -> set<string>
    {
        set<string> out;
        for (auto & r : rules)
            out.insert(r.head.predicate);
        out.insert(goal);
        return out;
    }

    auto Program::is_monadic() const -> bool
    {
        for (auto & r : rules)
            if (r.head.predicate != goal && r.head.args.size() != 1)
                return false;
        return true;
    }

    void Program::validate() const
    {
        map<string, std::size_t> arity;
        arity[goal] = goal_arity;
        auto check = [&](const Atom & a) {
            auto [it, fresh] = arity.emplace(a.predicate, a.args.size());
            if (! fresh && it->second != a.args.size())
                throw std::invalid_argument("relation " + a.predicate + " is used with different arities");
        };
        for (auto & r : rules) {
            check(r.head);
            set<string> bound;
            for (auto & a : r.body) {
                if (a.predicate == goal)
                    throw std::invalid_argument("the goal relation occurs in a rule body: " + r.to_string());
                check(a);
                bound.insert(a.args.begin(), a.args.end());
            }
            for (auto & v : r.head.args)
                if (! bound.contains(v))
                    throw std::invalid_argument("unsafe head variable " + v + " in " + r.to_string());
            for (auto & q : r.inequalities)
                if (! bound.contains(q.left) || ! bound.contains(q.right))
                    throw std::invalid_argument("unsafe inequality in " + r.to_string());
        }
    }

    auto edb_facts(const ABox & a) -> Facts
    {
        Facts f;
        for (auto & ca : a.concept_assertions)
            f[ca.concept_name].insert({ca.individual});
        for (auto & ra : a.role_assertions)
            f[ra.role].insert({ra.from, ra.to});
        for (auto & n : a.individuals())
            f[individual_relation].insert({n});
        return f;
    }

    namespace
    {
        struct Table
        {
            set<vector<int>> present;
            vector<vector<int>> rows;
            // index[position][value] lists the rows with that value there
            vector<std::unordered_map<int, vector<int>>> index;

            auto insert(const vector<int> & t) -> bool
            {
                if (! present.insert(t).second)
                    return false;
                int row = static_cast<int>(rows.size());
                rows.push_back(t);
                if (index.size() < t.size())
                    index.resize(t.size());
                for (std::size_t k = 0 ; k < t.size() ; ++k)
                    index[k][t[k]].push_back(row);
                return true;
            }
        };

        struct CompiledAtom
        {
            int relation;
            vector<int> vars;
        };

        struct CompiledRule
        {
            CompiledAtom head;
            vector<CompiledAtom> body;
            vector<std::pair<int, int>> inequalities;
            int variables = 0;
        };

        class Evaluator
        {
            private:
                vector<string> _individuals;
                std::unordered_map<string, int> _individual_index;
                vector<string> _relations;
                std::unordered_map<string, int> _relation_index;
                vector<Table> _tables;
                vector<CompiledRule> _rules;
                vector<bool> _is_idb;

                auto relation(const string & name) -> int
                {
                    auto [it, fresh] = _relation_index.emplace(name, static_cast<int>(_relations.size()));
                    if (fresh) {
                        _relations.push_back(name);
                        _tables.emplace_back();
                        _is_idb.push_back(false);
                    }
                    return it->second;
                }

                auto individual(const string & name) -> int
                {
                    auto [it, fresh] = _individual_index.emplace(name, static_cast<int>(_individuals.size()));
                    if (fresh)
                        _individuals.push_back(name);
                    return it->second;
                }

                // limits[k]: rows of body atom k usable in this join are
                // [from[k], to[k]).
                struct Join
                {
                    const CompiledRule & rule;
                    vector<int> from, to;
                    vector<int> binding;
                    vector<bool> done;
                    vector<vector<int>> out;
                };

                auto consistent(const Join & j) const -> bool
                {
                    for (auto & [a, b] : j.rule.inequalities)
                        if (j.binding[a] >= 0 && j.binding[b] >= 0 && j.binding[a] == j.binding[b])
                            return false;
                    return true;
                }

                void search(Join & j, std::size_t remaining) const
                {
                    if (remaining == 0) {
                        vector<int> t;
                        for (int v : j.rule.head.vars)
                            t.push_back(j.binding[v]);
                        j.out.push_back(std::move(t));
                        return;
                    }
                    // most bound atom first
                    int best = -1, best_bound = -1;
                    for (std::size_t k = 0 ; k < j.rule.body.size() ; ++k) {
                        if (j.done[k])
                            continue;
                        int n = 0;
                        for (int v : j.rule.body[k].vars)
                            n += j.binding[v] >= 0;
                        if (n > best_bound) {
                            best = static_cast<int>(k);
                            best_bound = n;
                        }
                    }
                    auto & atom = j.rule.body[best];
                    auto & table = _tables[atom.relation];
                    const vector<int> * candidates = nullptr;
                    for (std::size_t p = 0 ; p < atom.vars.size() ; ++p)
                        if (j.binding[atom.vars[p]] >= 0) {
                            if (p >= table.index.size())
                                return;
                            auto it = table.index[p].find(j.binding[atom.vars[p]]);
                            if (it == table.index[p].end())
                                return;
                            candidates = &it->second;
                            break;
                        }
                    j.done[best] = true;
                    auto visit = [&](int row) {
                        auto & t = table.rows[row];
                        vector<int> assigned;
                        bool ok = true;
                        for (std::size_t p = 0 ; p < atom.vars.size() && ok ; ++p) {
                            int v = atom.vars[p];
                            if (j.binding[v] < 0) {
                                j.binding[v] = t[p];
                                assigned.push_back(v);
                            }
                            else if (j.binding[v] != t[p])
                                ok = false;
                        }
                        if (ok && consistent(j))
                            search(j, remaining - 1);
                        for (int v : assigned)
                            j.binding[v] = -1;
                    };
                    if (candidates) {
                        for (int row : *candidates)
                            if (row >= j.from[best] && row < j.to[best])
                                visit(row);
                    }
                    else
                        for (int row = j.from[best] ; row < j.to[best] ; ++row)
                            visit(row);
                    j.done[best] = false;
                }

                auto fire(const CompiledRule & r, vector<int> from, vector<int> to) const -> vector<vector<int>>
                {
                    Join j{r, std::move(from), std::move(to), vector<int>(r.variables, -1),
                        vector<bool>(r.body.size(), false), {}};
                    if (r.body.empty()) {
                        if (r.head.vars.empty())
                            j.out.push_back({});
                        return j.out;
                    }
                    search(j, r.body.size());
                    return j.out;
                }

            public:
                Evaluator(const Program & p, const ABox & a)
                {
                    for (auto & n : a.individuals())
                        individual(n);
                    for (auto & [rel, tuples] : edb_facts(a)) {
                        int k = relation(rel);
                        for (auto & t : tuples) {
                            vector<int> row;
                            for (auto & n : t)
                                row.push_back(individual(n));
                            _tables[k].insert(row);
                        }
                    }
                    relation(p.goal);
                    for (auto & r : p.rules) {
                        CompiledRule c;
                        map<string, int> vars;
                        auto var = [&](const string & v) {
                            auto [it, fresh] = vars.emplace(v, static_cast<int>(vars.size()));
                            return it->second;
                        };
                        auto compile = [&](const Atom & atom) {
                            CompiledAtom ca{relation(atom.predicate), {}};
                            for (auto & v : atom.args)
                                ca.vars.push_back(var(v));
                            return ca;
                        };
                        for (auto & b : r.body)
                            c.body.push_back(compile(b));
                        c.head = compile(r.head);
                        for (auto & q : r.inequalities)
                            c.inequalities.emplace_back(var(q.left), var(q.right));
                        c.variables = static_cast<int>(vars.size());
                        _is_idb[c.head.relation] = true;
                        _rules.push_back(std::move(c));
                    }
                }

                void semi_naive()
                {
                    auto sizes = [&] {
                        vector<int> s;
                        for (auto & t : _tables)
                            s.push_back(static_cast<int>(t.rows.size()));
                        return s;
                    };
                    // first round: every rule over the EDB and initial facts
                    vector<int> old(_tables.size(), 0);
                    vector<int> now = sizes();
                    for (auto & r : _rules) {
                        vector<int> from(r.body.size(), 0), to;
                        for (auto & b : r.body)
                            to.push_back(now[b.relation]);
                        for (auto & t : fire(r, from, to))
                            _tables[r.head.relation].insert(t);
                    }
                    old = now;
                    now = sizes();
                    while (old != now) {
                        for (auto & r : _rules)
                            for (std::size_t k = 0 ; k < r.body.size() ; ++k) {
                                int rel = r.body[k].relation;
                                if (! _is_idb[rel] || old[rel] == now[rel])
                                    continue;
                                vector<int> from(r.body.size(), 0), to;
                                for (auto & b : r.body)
                                    to.push_back(now[b.relation]);
                                from[k] = old[rel];
                                for (auto & t : fire(r, from, to))
                                    _tables[r.head.relation].insert(t);
                            }
                        old = now;
                        now = sizes();
                    }
                }

                void naive()
                {
                    bool changed = true;
                    while (changed) {
                        changed = false;
                        vector<vector<vector<int>>> derived;
                        for (auto & r : _rules) {
                            vector<int> from(r.body.size(), 0), to;
                            for (auto & b : r.body)
                                to.push_back(static_cast<int>(_tables[b.relation].rows.size()));
                            derived.push_back(fire(r, from, to));
                        }
                        for (std::size_t k = 0 ; k < _rules.size() ; ++k)
                            for (auto & t : derived[k])
                                changed |= _tables[_rules[k].head.relation].insert(t);
                    }
                }

                auto facts() const -> Facts
                {
                    Facts out;
                    for (std::size_t k = 0 ; k < _tables.size() ; ++k) {
                        auto & f = out[_relations[k]];
                        for (auto & row : _tables[k].rows) {
                            Tuple t;
                            for (int e : row)
                                t.push_back(_individuals[e]);
                            f.insert(std::move(t));
                        }
                    }
                    return out;
                }
        };
    }

    auto evaluate_all(const Program & p, const ABox & a) -> Facts
    {
        Evaluator e(p, a);
        e.semi_naive();
        return e.facts();
    }

    auto evaluate_naive(const Program & p, const ABox & a) -> Facts
    {
        Evaluator e(p, a);
        e.naive();
        return e.facts();
    }

    auto evaluate(const Program & p, const ABox & a) -> set<Tuple>
    {
        auto f = evaluate_all(p, a);
        return f[p.goal];
    }

    auto to_string(const Program & p) -> string
    {
        string out = ".goal " + p.goal + "/" + std::to_string(p.goal_arity) + "\n";
        for (auto & r : p.rules)
            out += r.to_string() + "\n";
        return out;
    }

    namespace
    {
        auto renamed(const Program & p, const string & prefix, const string & goal) -> vector<Rule>
        {
            auto idb = p.idb();
            auto rename = [&](Atom a) {
                if (a.predicate == p.goal)
                    a.predicate = goal;
                else if (idb.contains(a.predicate))
                    a.predicate = prefix + a.predicate;
                return a;
            };
            vector<Rule> out;
            for (auto r : p.rules) {
                r.head = rename(r.head);
                for (auto & b : r.body)
                    b = rename(b);
                out.push_back(std::move(r));
            }
            return out;
        }
    }

    auto union_programs(const vector<Program> & ps) -> Program
    {
        Program out;
        if (ps.empty())
            return out;
        out.goal = ps.front().goal;
        out.goal_arity = ps.front().goal_arity;
        for (std::size_t k = 0 ; k < ps.size() ; ++k) {
            if (ps[k].goal_arity != out.goal_arity)
                throw std::invalid_argument("union of programs with different goal arities");
            auto rules = renamed(ps[k], "u" + std::to_string(k) + "_", out.goal);
            out.rules.insert(out.rules.end(), rules.begin(), rules.end());
        }
        return out;
    }

    auto glue_programs(const vector<Program> & ps, const Glue & g) -> Program
    {
        Program out;
        out.goal_arity = g.body.answer_vars.size();
        for (std::size_t k = 0 ; k < ps.size() ; ++k) {
            auto prefix = "u" + std::to_string(k) + "_";
            auto rules = renamed(ps[k], prefix, prefix + ps[k].goal);
            out.rules.insert(out.rules.end(), rules.begin(), rules.end());
        }
        Rule glue;
        glue.head = Atom{out.goal, g.body.answer_vars};
        glue.body = g.body.atoms;
        for (auto & [k, v] : g.calls) {
            if (k >= ps.size())
                throw std::invalid_argument("glue refers to a missing program");
            auto prefix = "u" + std::to_string(k) + "_";
            glue.body.push_back(Atom{prefix + ps[k].goal, v.empty() ? vector<string>{} : vector<string>{v}});
        }
        // answer variables that occur nowhere range over all individuals
        set<string> bound;
        for (auto & b : glue.body)
            bound.insert(b.args.begin(), b.args.end());
        for (auto & v : g.body.answer_vars)
            if (! bound.contains(v)) {
                glue.body.push_back(Atom{individual_relation, {v}});
                bound.insert(v);
            }
        out.rules.push_back(std::move(glue));
        out.validate();
        return out;
    }
}
