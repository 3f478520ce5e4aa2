#include "oracles.hh"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

using std::map;
using std::set;
using std::string;
using std::vector;

namespace omq::test
{
    namespace
    {
        auto pick(Rng & rng, std::size_t n) -> std::size_t
        {
            return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        }

        template <typename T_>
        auto pick_from(Rng & rng, const T_ & items) -> const typename T_::value_type &
        {
            auto it = items.begin();
            std::advance(it, static_cast<long>(pick(rng, items.size())));
            return *it;
        }

        auto chance(Rng & rng, double p) -> bool
        {
            return std::bernoulli_distribution(p)(rng);
        }

        auto ind(std::size_t i) -> string
        {
            return "a" + std::to_string(i);
        }

        auto random_role(Rng & rng, const Signature & s, bool inverse) -> Role
        {
            return Role{pick_from(rng, s.roles), inverse && chance(rng, 0.3)};
        }

        auto random_name(Rng & rng, const Signature & s) -> Concept
        {
            return Concept::name(pick_from(rng, s.concepts));
        }
    }

    auto random_abox(Rng & rng, const Signature & s, std::size_t max_individuals, double density) -> ABox
    {
        while (true) {
            auto n = 1 + pick(rng, max_individuals);
            ABox a;
            for (std::size_t i = 0 ; i < n ; ++i) {
                for (auto & c : s.concepts)
                    if (chance(rng, density))
                        a.add_concept(c, ind(i));
                for (auto & r : s.roles)
                    for (std::size_t j = 0 ; j < n ; ++j)
                        if (chance(rng, density / static_cast<double>(n)))
                            a.add_role(r, ind(i), ind(j));
            }
            if (a.size() > 0)
                return a;
        }
    }

    auto random_graph_abox(Rng & rng, std::size_t max_individuals, double density) -> ABox
    {
        while (true) {
            auto n = 1 + pick(rng, max_individuals);
            ABox a;
            for (std::size_t i = 0 ; i < n ; ++i)
                for (std::size_t j = i ; j < n ; ++j)
                    if (chance(rng, i == j ? density / 4 : density)) {
                        a.add_role("r", ind(i), ind(j));
                        a.add_role("r", ind(j), ind(i));
                    }
            if (a.size() > 0)
                return a;
        }
    }

    auto random_interpretation(Rng & rng, const Signature & s, std::size_t elements, double density) -> Interpretation
    {
        Interpretation i;
        for (std::size_t e = 0 ; e < elements ; ++e)
            i.add_element("d" + std::to_string(e), true);
        for (std::size_t e = 0 ; e < elements ; ++e) {
            for (auto & c : s.concepts)
                if (chance(rng, density))
                    i.add_concept(c, static_cast<int>(e));
            for (auto & r : s.roles)
                for (std::size_t f = 0 ; f < elements ; ++f)
                    if (chance(rng, density))
                        i.add_edge(r, static_cast<int>(e), static_cast<int>(f));
        }
        return i;
    }

    auto random_eli(Rng & rng, const Signature & s, int depth, bool inverse) -> Concept
    {
        auto k = pick(rng, depth > 0 ? 4 : 2);
        switch (k) {
            case 0:
            case 1:
                return chance(rng, 0.1) ? Concept::top() : random_name(rng, s);
            case 2:
                return Concept::conjunction(random_eli(rng, s, depth, inverse), random_eli(rng, s, depth - 1, inverse));
            default:
                return Concept::exists(random_role(rng, s, inverse), random_eli(rng, s, depth - 1, inverse));
        }
    }

    namespace
    {
        auto horn_left(Rng & rng, const Signature & s, int depth, bool inverse) -> Concept
        {
            switch (pick(rng, depth > 0 ? 5 : 3)) {
                case 0:
                case 1:
                    return random_name(rng, s);
                case 2:
                    return Concept::conjunction(random_name(rng, s), random_name(rng, s));
                case 3:
                    return Concept::exists(random_role(rng, s, inverse), horn_left(rng, s, depth - 1, inverse));
                default:
                    return Concept::disjunction(horn_left(rng, s, depth - 1, inverse), random_name(rng, s));
            }
        }

        auto horn_right(Rng & rng, const Signature & s, int depth, bool inverse) -> Concept
        {
            switch (pick(rng, depth > 0 ? 7 : 4)) {
                case 0:
                case 1:
                    return random_name(rng, s);
                case 2:
                    return chance(rng, 0.3) ? Concept::bottom() : Concept::negation(random_name(rng, s));
                case 3:
                    return Concept::conjunction(random_name(rng, s), random_name(rng, s));
                case 4:
                case 5:
                    return Concept::exists(random_role(rng, s, inverse), horn_right(rng, s, depth - 1, inverse));
                default:
                    return Concept::forall(random_role(rng, s, inverse), horn_right(rng, s, depth - 1, inverse));
            }
        }
    }

    auto random_horn_tbox(Rng & rng, const Signature & s, int depth, std::size_t max_inclusions, bool inverse) -> TBox
    {
        TBox t;
        auto n = 1 + pick(rng, max_inclusions);
        for (std::size_t k = 0 ; k < n ; ++k)
            t.inclusions.push_back({horn_left(rng, s, depth, inverse), horn_right(rng, s, depth, inverse)});
        return t;
    }

    auto random_concept(Rng & rng, const Signature & s, int depth) -> Concept
    {
        switch (pick(rng, depth > 0 ? 9 : 4)) {
            case 0:
            case 1:
                return random_name(rng, s);
            case 2:
                return chance(rng, 0.5) ? Concept::top() : Concept::bottom();
            case 3:
                return Concept::negation(random_name(rng, s));
            case 4:
                return Concept::conjunction(random_concept(rng, s, depth - 1), random_concept(rng, s, depth - 1));
            case 5:
                return Concept::disjunction(random_concept(rng, s, depth - 1), random_concept(rng, s, depth - 1));
            case 6:
                return Concept::negation(random_concept(rng, s, depth - 1));
            case 7:
                return Concept::exists(random_role(rng, s, true), random_concept(rng, s, depth - 1));
            default:
                return Concept::forall(random_role(rng, s, true), random_concept(rng, s, depth - 1));
        }
    }

    auto random_tree_formula(Rng & rng, const Signature & s, const string & var, int depth, int & fresh) -> Formula
    {
        auto unary = [&] { return Formula::make_atom(Atom{pick_from(rng, s.concepts), {var}}); };
        switch (pick(rng, depth > 0 ? 5 : 1)) {
            case 0:
                return unary();
            case 1:
            case 2: {
                auto y = "y" + std::to_string(fresh++);
                auto r = pick_from(rng, s.roles);
                auto edge = chance(rng, 0.7) ? Atom{r, {var, y}} : Atom{r, {y, var}};
                vector<Formula> parts{Formula::make_atom(edge)};
                if (chance(rng, 0.7))
                    parts.push_back(random_tree_formula(rng, s, y, depth - 1, fresh));
                return Formula::make_exists({y}, Formula::make_and(std::move(parts)));
            }
            case 3:
                return Formula::make_and({random_tree_formula(rng, s, var, depth - 1, fresh),
                        random_tree_formula(rng, s, var, depth - 1, fresh)});
            default:
                return Formula::make_or({random_tree_formula(rng, s, var, depth - 1, fresh),
                        random_tree_formula(rng, s, var, depth - 1, fresh)});
        }
    }

    auto random_peq(Rng & rng, const Signature & s, std::size_t max_nodes, std::size_t max_vars) -> PEQ
    {
        vector<string> vars;
        for (std::size_t v = 0 ; v < max_vars ; ++v)
            vars.push_back("v" + std::to_string(v));
        std::function<Formula(std::size_t)> grow = [&](std::size_t budget) -> Formula {
            if (budget <= 1 || chance(rng, 0.3)) {
                if (chance(rng, 0.5))
                    return Formula::make_atom(Atom{pick_from(rng, s.concepts), {pick_from(rng, vars)}});
                return Formula::make_atom(Atom{pick_from(rng, s.roles), {pick_from(rng, vars), pick_from(rng, vars)}});
            }
            auto left = (budget - 1) / 2;
            auto kids = vector<Formula>{grow(left), grow(budget - 1 - left)};
            return chance(rng, 0.5) ? Formula::make_and(std::move(kids)) : Formula::make_or(std::move(kids));
        };
        PEQ q;
        q.answer_vars = {"v0"};
        auto body = grow(max_nodes);
        vector<string> bound(vars.begin() + 1, vars.end());
        q.body = Formula::make_and({Formula::make_atom(Atom{pick_from(rng, s.concepts), {"v0"}}),
                Formula::make_exists(bound, body)});
        return q;
    }

    auto random_program(Rng & rng, std::size_t rules) -> Program
    {
        vector<string> unary_edb{"A", "B"}, binary_edb{"r", "s"}, idb{"P", "Q", "goal"};
        vector<string> vars{"x", "y", "z"};
        while (true) {
            Program p;
            p.goal = "goal";
            p.goal_arity = 1;
            for (std::size_t k = 0 ; k < rules ; ++k) {
                Rule rule;
                auto n = 1 + pick(rng, 3);
                for (std::size_t i = 0 ; i < n ; ++i) {
                    auto kind = pick(rng, 3);
                    if (kind == 0)
                        rule.body.push_back(Atom{pick_from(rng, unary_edb), {pick_from(rng, vars)}});
                    else if (kind == 1)
                        rule.body.push_back(Atom{pick_from(rng, binary_edb), {pick_from(rng, vars), pick_from(rng, vars)}});
                    else
                        rule.body.push_back(Atom{pick_from(rng, idb), {pick_from(rng, vars)}});
                }
                set<string> in_body;
                for (auto & a : rule.body)
                    in_body.insert(a.args.begin(), a.args.end());
                auto head_var = pick_from(rng, in_body);
                rule.head = Atom{pick_from(rng, idb), {head_var}};
                if (in_body.size() >= 2 && chance(rng, 0.2)) {
                    vector<string> v(in_body.begin(), in_body.end());
                    rule.inequalities.push_back({v[0], v[1]});
                }
                p.rules.push_back(rule);
            }
            try {
                p.validate();
                return p;
            }
            catch (const std::exception &) {
            }
        }
    }

    auto colorable(const ABox & graph, std::size_t k) -> bool
    {
        auto inds = graph.individuals();
        vector<string> v(inds.begin(), inds.end());
        map<string, std::size_t> index;
        for (std::size_t i = 0 ; i < v.size() ; ++i)
            index[v[i]] = i;
        vector<std::size_t> color(v.size(), 0);
        std::size_t total = 1;
        for (std::size_t i = 0 ; i < v.size() ; ++i)
            total *= k;
        for (std::size_t code = 0 ; code < total ; ++code) {
            auto c = code;
            for (std::size_t i = 0 ; i < v.size() ; ++i) {
                color[i] = c % k;
                c /= k;
            }
            bool proper = true;
            for (auto & r : graph.role_assertions)
                if (color[index[r.from]] == color[index[r.to]]) {
                    proper = false;
                    break;
                }
            if (proper)
                return true;
        }
        return false;
    }

    auto brute_hom_exists(const Interpretation & s, const Interpretation & t) -> bool
    {
        auto n = s.size(), m = t.size();
        if (n == 0)
            return true;
        if (m == 0)
            return false;
        vector<int> h(n, 0);
        while (true) {
            bool ok = true;
            for (std::size_t d = 0 ; d < n && ok ; ++d)
                for (auto & c : s.labels(static_cast<int>(d)))
                    if (! t.has_concept(c, h[d])) {
                        ok = false;
                        break;
                    }
            for (auto & r : s.role_names()) {
                if (! ok)
                    break;
                for (auto & [a, b] : s.edges(r))
                    if (! t.has_edge(r, h[a], h[b])) {
                        ok = false;
                        break;
                    }
            }
            if (ok)
                return true;
            std::size_t i = 0;
            while (i < n && ++h[i] == static_cast<int>(m))
                h[i++] = 0;
            if (i == n)
                return false;
        }
    }

    namespace
    {
        auto holds(const Interpretation & i, const Atom & a, const map<string, int> & g) -> bool
        {
            if (a.args.size() == 1)
                return i.has_concept(a.predicate, g.at(a.args[0]));
            return i.has_edge(a.predicate, g.at(a.args[0]), g.at(a.args[1]));
        }

        auto eval(const Interpretation & i, const Formula & f, map<string, int> & g) -> bool
        {
            switch (f.kind) {
                case FormulaKind::atom:
                    return holds(i, f.atom, g);
                case FormulaKind::conjunction:
                    return std::all_of(f.children.begin(), f.children.end(), [&](auto & c) { return eval(i, c, g); });
                case FormulaKind::disjunction:
                    return std::any_of(f.children.begin(), f.children.end(), [&](auto & c) { return eval(i, c, g); });
                case FormulaKind::exists: {
                    auto saved = g;
                    std::function<bool(std::size_t)> bind = [&](std::size_t k) -> bool {
                        if (k == f.bound.size())
                            return eval(i, f.children.front(), g);
                        for (std::size_t e = 0 ; e < i.size() ; ++e) {
                            g[f.bound[k]] = static_cast<int>(e);
                            if (bind(k + 1))
                                return true;
                        }
                        return false;
                    };
                    bool out = bind(0);
                    g = saved;
                    return out;
                }
            }
            return false;
        }
    }

    auto brute_peq(const Interpretation & i, const PEQ & q, const vector<int> & tuple) -> bool
    {
        map<string, int> g;
        for (std::size_t k = 0 ; k < q.answer_vars.size() ; ++k)
            g[q.answer_vars[k]] = tuple[k];
        return eval(i, q.body, g);
    }

    auto brute_cq(const Interpretation & i, const CQ & q, const vector<int> & tuple) -> bool
    {
        PEQ p;
        p.answer_vars = q.answer_vars;
        vector<string> bound;
        for (auto & v : q.variables())
            if (std::find(q.answer_vars.begin(), q.answer_vars.end(), v) == q.answer_vars.end())
                bound.push_back(v);
        vector<Formula> atoms;
        for (auto & a : q.atoms)
            atoms.push_back(Formula::make_atom(a));
        p.body = Formula::make_exists(bound, Formula::make_and(atoms));
        return brute_peq(i, p, tuple);
    }

    auto brute_simulation(const Interpretation & s, const Interpretation & t, bool inverse) -> vector<vector<bool>>
    {
        vector<vector<bool>> rel(s.size(), vector<bool>(t.size(), false));
        for (std::size_t d = 0 ; d < s.size() ; ++d)
            for (std::size_t e = 0 ; e < t.size() ; ++e)
                rel[d][e] = std::all_of(s.labels(static_cast<int>(d)).begin(), s.labels(static_cast<int>(d)).end(),
                        [&](auto & c) { return t.has_concept(c, static_cast<int>(e)); });
        auto roles = s.role_names();
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t d = 0 ; d < s.size() ; ++d)
                for (std::size_t e = 0 ; e < t.size() ; ++e) {
                    if (! rel[d][e])
                        continue;
                    bool ok = true;
                    for (auto & r : roles)
                        for (bool inv : {false, true}) {
                            if (inv && ! inverse)
                                continue;
                            Role role{r, inv};
                            for (std::size_t d2 = 0 ; d2 < s.size() && ok ; ++d2) {
                                if (! s.has_edge(role, static_cast<int>(d), static_cast<int>(d2)))
                                    continue;
                                bool found = false;
                                for (std::size_t e2 = 0 ; e2 < t.size() && ! found ; ++e2)
                                    found = rel[d2][e2] && t.has_edge(role, static_cast<int>(e), static_cast<int>(e2));
                                ok = found;
                            }
                        }
                    if (! ok) {
                        rel[d][e] = false;
                        changed = true;
                    }
                }
        }
        return rel;
    }

    auto one_step_answers(const ABox & a) -> set<string>
    {
        set<string> out;
        for (auto & c : a.concept_assertions)
            if (c.concept_name == "A")
                out.insert(c.individual);
        for (auto & r : a.role_assertions)
            if (r.role == "r" && a.has_concept("A", r.to))
                out.insert(r.from);
        return out;
    }

    auto reachability_answers(const ABox & a) -> set<string>
    {
        set<string> out;
        std::deque<string> todo;
        for (auto & c : a.concept_assertions)
            if (c.concept_name == "A" && out.insert(c.individual).second)
                todo.push_back(c.individual);
        while (! todo.empty()) {
            auto b = todo.front();
            todo.pop_front();
            for (auto & r : a.role_assertions)
                if (r.role == "r" && r.to == b && out.insert(r.from).second)
                    todo.push_back(r.from);
        }
        return out;
    }

    auto reachability_program() -> Program
    {
        Program p;
        p.goal = "goal";
        p.goal_arity = 1;
        p.rules.push_back(Rule{Atom{"P", {"x"}}, {Atom{"A", {"x"}}}, {}});
        p.rules.push_back(Rule{Atom{"P", {"x"}}, {Atom{"r", {"x", "y"}}, Atom{"P", {"y"}}}, {}});
        p.rules.push_back(Rule{Atom{"goal", {"x"}}, {Atom{"P", {"x"}}}, {}});
        return p;
    }

    auto brute_datalog(const Program & p, const ABox & a) -> set<vector<string>>
    {
        map<string, set<vector<string>>> facts;
        auto inds = a.individuals();
        vector<string> dom(inds.begin(), inds.end());
        for (auto & c : a.concept_assertions)
            facts[c.concept_name].insert({c.individual});
        for (auto & r : a.role_assertions)
            facts[r.role].insert({r.from, r.to});
        for (auto & i : dom)
            facts[individual_relation].insert({i});

        bool changed = true;
        while (changed) {
            changed = false;
            for (auto & rule : p.rules) {
                set<string> vs(rule.head.args.begin(), rule.head.args.end());
                for (auto & b : rule.body)
                    vs.insert(b.args.begin(), b.args.end());
                vector<string> vars(vs.begin(), vs.end());
                map<string, string> g;
                std::function<void(std::size_t)> bind = [&](std::size_t k) {
                    if (k == vars.size()) {
                        for (auto & b : rule.body) {
                            vector<string> t;
                            for (auto & v : b.args)
                                t.push_back(g[v]);
                            if (! facts[b.predicate].contains(t))
                                return;
                        }
                        for (auto & ne : rule.inequalities)
                            if (g[ne.left] == g[ne.right])
                                return;
                        vector<string> h;
                        for (auto & v : rule.head.args)
                            h.push_back(g[v]);
                        if (facts[rule.head.predicate].insert(h).second)
                            changed = true;
                        return;
                    }
                    for (auto & d : dom) {
                        g[vars[k]] = d;
                        bind(k + 1);
                    }
                };
                if (! dom.empty() || vars.empty())
                    bind(0);
            }
        }
        return facts[p.goal];
    }
}
