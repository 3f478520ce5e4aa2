#include <omq/semantics.hh>

#include <algorithm>
#include <functional>
#include <set>

using std::map;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    auto eval_concept(const Interpretation & i, const Concept & c) -> ElementSet
    {
        auto n = i.size();
        switch (c.kind()) {
            case ConceptKind::top:
                return ElementSet(n, true);
            case ConceptKind::bottom:
                return ElementSet(n, false);
            case ConceptKind::name: {
                ElementSet out(n, false);
                for (int e : i.members(c.symbol()))
                    out[e] = true;
                return out;
            }
            case ConceptKind::negation: {
                auto out = eval_concept(i, c.operand());
                out.flip();
                return out;
            }
            case ConceptKind::conjunction:
            case ConceptKind::disjunction:
            case ConceptKind::implication: {
                auto l = eval_concept(i, c.left());
                auto r = eval_concept(i, c.right());
                for (std::size_t e = 0 ; e < n ; ++e) {
                    if (c.kind() == ConceptKind::conjunction)
                        l[e] = l[e] && r[e];
                    else if (c.kind() == ConceptKind::disjunction)
                        l[e] = l[e] || r[e];
                    else
                        l[e] = ! l[e] || r[e];
                }
                return l;
            }
            case ConceptKind::exists:
            case ConceptKind::forall: {
                auto filler = eval_concept(i, c.operand());
                bool ex = c.kind() == ConceptKind::exists;
                ElementSet out(n, ! ex);
                for (std::size_t e = 0 ; e < n ; ++e)
                    for (int d : i.neighbours(c.role(), static_cast<int>(e)))
                        if (filler[d] == ex) {
                            out[e] = ex;
                            break;
                        }
                return out;
            }
        }
        return ElementSet(n, false);
    }

    auto is_model(const Interpretation & i, const TBox & t) -> bool
    {
        for (auto & ci : t.inclusions) {
            auto l = eval_concept(i, ci.lhs);
            auto r = eval_concept(i, ci.rhs);
            for (std::size_t e = 0 ; e < i.size() ; ++e)
                if (l[e] && ! r[e])
                    return false;
        }
        for (auto & role : t.functional)
            for (std::size_t e = 0 ; e < i.size() ; ++e)
                if (i.neighbours(role, static_cast<int>(e)).size() > 1)
                    return false;
        return true;
    }

    auto is_model(const Interpretation & i, const TBox & t, const ABox & a) -> bool
    {
        for (auto & ca : a.concept_assertions) {
            auto e = i.find(ca.individual);
            if (! e || ! i.is_named(*e) || ! i.has_concept(ca.concept_name, *e))
                return false;
        }
        for (auto & ra : a.role_assertions) {
            auto d = i.find(ra.from), e = i.find(ra.to);
            if (! d || ! e || ! i.is_named(*d) || ! i.is_named(*e) || ! i.has_edge(ra.role, *d, *e))
                return false;
        }
        for (auto & n : a.isolated) {
            auto e = i.find(n);
            if (! e || ! i.is_named(*e))
                return false;
        }
        return is_model(i, t);
    }

    namespace
    {
        struct CqMatcher
        {
            const Interpretation & interp;
            const vector<Atom> & atoms;
            Assignment assignment;
            vector<bool> done;

            auto bound(const string & v) const -> optional<int>
            {
                if (auto it = assignment.find(v) ; it != assignment.end())
                    return it->second;
                return std::nullopt;
            }

            // Picks the unsolved atom with the most bound arguments.
            auto pick() const -> int
            {
                int best = -1, best_score = -1;
                for (std::size_t k = 0 ; k < atoms.size() ; ++k) {
                    if (done[k])
                        continue;
                    int score = 0;
                    for (auto & v : atoms[k].args)
                        if (bound(v))
                            score += 2;
                    if (atoms[k].args.size() == 1)
                        score += 1;
                    if (score > best_score) {
                        best = static_cast<int>(k);
                        best_score = score;
                    }
                }
                return best;
            }

            auto try_bind(const string & v, int e, const std::function<bool()> & k) -> bool
            {
                if (auto b = bound(v))
                    return *b == e && k();
                assignment[v] = e;
                bool ok = k();
                if (! ok)
                    assignment.erase(v);
                return ok;
            }

            auto solve() -> bool
            {
                int k = pick();
                if (k < 0)
                    return true;
                auto & a = atoms[k];
                done[k] = true;
                bool ok = false;
                if (a.args.size() == 1) {
                    auto & v = a.args[0];
                    if (auto b = bound(v))
                        ok = interp.has_concept(a.predicate, *b) && solve();
                    else
                        for (int e : interp.members(a.predicate))
                            if ((ok = try_bind(v, e, [&] { return solve(); })))
                                break;
                }
                else {
                    auto & x = a.args[0];
                    auto & y = a.args[1];
                    auto bx = bound(x), by = bound(y);
                    if (bx && by)
                        ok = interp.has_edge(a.predicate, *bx, *by) && solve();
                    else if (bx) {
                        for (int e : interp.neighbours(Role{a.predicate, false}, *bx))
                            if ((ok = try_bind(y, e, [&] { return solve(); })))
                                break;
                    }
                    else if (by) {
                        for (int e : interp.neighbours(Role{a.predicate, true}, *by))
                            if ((ok = try_bind(x, e, [&] { return solve(); })))
                                break;
                    }
                    else {
                        for (auto & [d, e] : interp.edges(a.predicate)) {
                            if (x == y && d != e)
                                continue;
                            ok = try_bind(x, d, [&] { return try_bind(y, e, [&] { return solve(); }); });
                            if (ok)
                                break;
                        }
                    }
                }
                if (! ok)
                    done[k] = false;
                return ok;
            }
        };
    }

    auto find_match(const Interpretation & i, const CQ & q, const vector<int> & tuple) -> optional<Assignment>
    {
        if (tuple.size() != q.answer_vars.size())
            throw std::invalid_argument("tuple length does not match query arity");
        CqMatcher m{i, q.atoms, {}, vector<bool>(q.atoms.size(), false)};
        for (std::size_t k = 0 ; k < tuple.size() ; ++k) {
            auto it = m.assignment.find(q.answer_vars[k]);
            if (it != m.assignment.end() && it->second != tuple[k])
                return std::nullopt;
            m.assignment[q.answer_vars[k]] = tuple[k];
        }
        if (m.solve())
            return m.assignment;
        return std::nullopt;
    }

    auto match_query(const Interpretation & i, const Query & q, const vector<int> & tuple) -> bool
    {
        if (tuple.size() != q.arity())
            throw std::invalid_argument("tuple length does not match query arity");
        if (q.is_tree()) {
            auto ext = eval_concept(i, q.tree().expr);
            if (q.tree().boolean)
                return std::find(ext.begin(), ext.end(), true) != ext.end();
            return ext[tuple.front()];
        }
        for (auto & cq : to_ucq(q).disjuncts)
            if (find_match(i, cq, tuple))
                return true;
        return false;
    }

    auto answers(const Interpretation & i, const Query & q) -> vector<vector<int>>
    {
        vector<vector<int>> out;
        auto named = i.named_elements();
        auto n = q.arity();
        if (q.is_tree() && ! q.tree().boolean) {
            auto ext = eval_concept(i, q.tree().expr);
            for (int e : named)
                if (ext[e])
                    out.push_back({e});
            return out;
        }
        auto ucq = to_ucq(q);
        vector<int> tuple(n, 0);
        vector<std::size_t> idx(n, 0);
        if (n > 0 && named.empty())
            return out;
        while (true) {
            for (std::size_t k = 0 ; k < n ; ++k)
                tuple[k] = named[idx[k]];
            bool hit = false;
            if (q.is_tree())
                hit = match_query(i, q, tuple);
            else
                for (auto & cq : ucq.disjuncts)
                    if (find_match(i, cq, tuple)) {
                        hit = true;
                        break;
                    }
            if (hit)
                out.push_back(tuple);
            std::size_t k = n;
            while (k > 0 && ++idx[k - 1] == named.size())
                idx[--k] = 0;
            if (k == 0)
                break;
        }
        return out;
    }

    auto path_name(const string & parent, const Role & role, const string & last) -> string
    {
        return parent + "__" + role.name + (role.inverted ? "_inv" : "") + "__" + last;
    }

    namespace
    {
        auto roles_of(const Interpretation & i, bool with_inverse) -> vector<Role>
        {
            vector<Role> out;
            for (auto & r : i.role_names()) {
                out.push_back(Role{r, false});
                if (with_inverse)
                    out.push_back(Role{r, true});
            }
            return out;
        }
    }

    auto unfold(const Interpretation & i, int depth, Variant variant) -> Interpretation
    {
        struct Word
        {
            int tail;
            int parent;
            Role role;
            int out;
        };

        Interpretation result;
        vector<Word> words;
        for (int e : i.named_elements()) {
            int out = result.add_element(i.name(e), true);
            words.push_back({e, -1, {}, out});
        }
        for (std::size_t a = 0 ; a < words.size() ; ++a)
            for (std::size_t b = 0 ; b < words.size() ; ++b)
                for (auto & r : i.role_names())
                    if (i.has_edge(r, words[a].tail, words[b].tail))
                        result.add_edge(r, words[a].out, words[b].out);

        auto roles = roles_of(i, variant == Variant::inverse);
        std::size_t frontier_begin = 0;
        for (int level = 0 ; level < depth ; ++level) {
            std::size_t frontier_end = words.size();
            for (std::size_t w = frontier_begin ; w < frontier_end ; ++w) {
                Word cur = words[w];
                for (auto & r : roles)
                    for (int d : i.neighbours(r, cur.tail)) {
                        if (i.is_named(d))
                            continue;
                        if (variant == Variant::inverse && cur.parent >= 0 && r == cur.role.inverse()
                                && words[cur.parent].tail == d)
                            continue;
                        auto name = path_name(result.name(cur.out), r, i.name(d));
                        int out = result.add_element(name, false);
                        words.push_back({d, static_cast<int>(w), r, out});
                        result.add_edge(r, cur.out, out);
                    }
            }
            frontier_begin = frontier_end;
        }
        for (auto & w : words)
            for (auto & c : i.labels(w.tail))
                result.add_concept(c, w.out);
        return result;
    }

    auto unravel_abox(const ABox & a, int depth) -> UnravelingSlice
    {
        UnravelingSlice s;
        s.base = a;
        s.depth = depth;
        auto base = Interpretation::from_abox(a);
        for (auto & name : a.individuals())
            s.nodes.push_back({name, -1, {}, name, 0});

        vector<Role> roles;
        for (auto & r : base.role_names()) {
            roles.push_back(Role{r, false});
            roles.push_back(Role{r, true});
        }

        std::size_t frontier_begin = 0;
        for (int level = 0 ; level < depth ; ++level) {
            std::size_t frontier_end = s.nodes.size();
            for (std::size_t k = frontier_begin ; k < frontier_end ; ++k) {
                UnravelingNode cur = s.nodes[k];
                int tail = *base.find(cur.tail);
                for (auto & r : roles)
                    for (int d : base.neighbours(r, tail)) {
                        auto & next = base.name(d);
                        if (cur.parent >= 0 && r == cur.role.inverse() && next == s.nodes[cur.parent].tail)
                            continue;
                        s.nodes.push_back({path_name(cur.name, r, next), static_cast<int>(k), r, next, cur.length + 1});
                    }
            }
            frontier_begin = frontier_end;
        }

        for (auto & n : s.nodes) {
            s.abox.add_individual(n.name);
            for (auto & c : base.labels(*base.find(n.tail)))
                s.abox.add_concept(c, n.name);
            if (n.parent >= 0) {
                auto & p = s.nodes[n.parent].name;
                if (n.role.inverted)
                    s.abox.add_role(n.role.name, n.name, p);
                else
                    s.abox.add_role(n.role.name, p, n.name);
            }
        }
        auto used = ABox{s.abox.concept_assertions, s.abox.role_assertions, {}}.individuals();
        for (auto & n : used)
            s.abox.isolated.erase(n);
        return s;
    }
}
