#include <omq/homomorphism.hh>

#include <algorithm>
#include <deque>
#include <numeric>

using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    namespace
    {
        struct Arc
        {
            Role role;
            int other;
        };

        auto labels_fit(const Interpretation & s, int d, const Interpretation & g, int e) -> bool
        {
            for (auto & c : s.labels(d))
                if (! g.has_concept(c, e))
                    return false;
            return true;
        }

        class HomSearch
        {
            private:
                const Interpretation & _s;
                const Interpretation & _g;
                vector<vector<Arc>> _arcs;
                vector<int> _order_degree;

                using Domains = vector<vector<char>>;

                // Drops values of d without support along the arc to a.other.
                auto revise(Domains & dom, int d, const Arc & a) const -> bool
                {
                    bool changed = false;
                    for (std::size_t x = 0 ; x < dom[d].size() ; ++x) {
                        if (! dom[d][x])
                            continue;
                        bool supported = false;
                        for (int y : _g.neighbours(a.role, static_cast<int>(x)))
                            if (dom[a.other][y]) {
                                supported = true;
                                break;
                            }
                        if (! supported) {
                            dom[d][x] = 0;
                            changed = true;
                        }
                    }
                    return changed;
                }

                auto empty(const vector<char> & v) const -> bool
                {
                    return std::find(v.begin(), v.end(), 1) == v.end();
                }

                auto propagate(Domains & dom, std::deque<int> queue) const -> bool
                {
                    vector<char> queued(dom.size(), 0);
                    for (int d : queue)
                        queued[d] = 1;
                    while (! queue.empty()) {
                        int e = queue.front();
                        queue.pop_front();
                        queued[e] = 0;
                        // every d with an arc to e may lose support
                        for (auto & back : _arcs[e]) {
                            int d = back.other;
                            if (revise(dom, d, Arc{back.role.inverse(), e})) {
                                if (empty(dom[d]))
                                    return false;
                                if (! queued[d]) {
                                    queued[d] = 1;
                                    queue.push_back(d);
                                }
                            }
                        }
                    }
                    return true;
                }

                auto search(Domains & dom, vector<int> & assigned) const -> bool
                {
                    int best = -1;
                    std::size_t best_size = 0;
                    for (std::size_t d = 0 ; d < dom.size() ; ++d) {
                        if (assigned[d] >= 0)
                            continue;
                        auto n = static_cast<std::size_t>(std::count(dom[d].begin(), dom[d].end(), 1));
                        if (best < 0 || n < best_size || (n == best_size && _order_degree[d] > _order_degree[best])) {
                            best = static_cast<int>(d);
                            best_size = n;
                        }
                    }
                    if (best < 0)
                        return true;
                    for (std::size_t x = 0 ; x < dom[best].size() ; ++x) {
                        if (! dom[best][x])
                            continue;
                        Domains copy = dom;
                        std::fill(copy[best].begin(), copy[best].end(), 0);
                        copy[best][x] = 1;
                        assigned[best] = static_cast<int>(x);
                        if (propagate(copy, {best}) && search(copy, assigned)) {
                            dom = std::move(copy);
                            return true;
                        }
                        assigned[best] = -1;
                    }
                    return false;
                }

            public:
                HomSearch(const Interpretation & s, const Interpretation & g) :
                    _s(s),
                    _g(g),
                    _arcs(s.size()),
                    _order_degree(s.size(), 0)
                {
                    for (auto & r : s.role_names())
                        for (auto & [d, e] : s.edges(r)) {
                            _arcs[d].push_back(Arc{Role{r, false}, e});
                            _arcs[e].push_back(Arc{Role{r, true}, d});
                            ++_order_degree[d];
                            ++_order_degree[e];
                        }
                }

                auto run(const set<string> & preserve) const -> optional<ElementMap>
                {
                    Domains dom(_s.size(), vector<char>(_g.size(), 0));
                    for (std::size_t d = 0 ; d < _s.size() ; ++d) {
                        int di = static_cast<int>(d);
                        if (_s.is_named(di) && preserve.contains(_s.name(di))) {
                            auto e = _g.find(_s.name(di));
                            if (! e || ! _g.is_named(*e) || ! labels_fit(_s, di, _g, *e))
                                return std::nullopt;
                            dom[d][*e] = 1;
                        }
                        else
                            for (std::size_t e = 0 ; e < _g.size() ; ++e)
                                dom[d][e] = labels_fit(_s, di, _g, static_cast<int>(e));
                        if (empty(dom[d]))
                            return std::nullopt;
                    }
                    std::deque<int> all(_s.size());
                    std::iota(all.begin(), all.end(), 0);
                    if (! propagate(dom, all))
                        return std::nullopt;
                    vector<int> assigned(_s.size(), -1);
                    if (! search(dom, assigned))
                        return std::nullopt;
                    return assigned;
                }
        };
    }

    auto find_homomorphism(const Interpretation & source, const Interpretation & target,
            const set<string> & preserve) -> optional<ElementMap>
    {
        return HomSearch(source, target).run(preserve);
    }

    auto is_homomorphism(const Interpretation & source, const Interpretation & target,
            const ElementMap & h, const set<string> & preserve) -> bool
    {
        if (h.size() != source.size())
            return false;
        for (std::size_t d = 0 ; d < source.size() ; ++d) {
            int di = static_cast<int>(d);
            if (h[d] < 0 || static_cast<std::size_t>(h[d]) >= target.size())
                return false;
            if (! labels_fit(source, di, target, h[d]))
                return false;
            if (source.is_named(di) && preserve.contains(source.name(di))
                    && (! target.is_named(h[d]) || target.name(h[d]) != source.name(di)))
                return false;
        }
        for (auto & r : source.role_names())
            for (auto & [d, e] : source.edges(r))
                if (! target.has_edge(r, h[d], h[e]))
                    return false;
        return true;
    }

    namespace
    {
        auto simulation_roles(const Interpretation & source, Variant v) -> vector<Role>
        {
            vector<Role> out;
            for (auto & r : source.role_names()) {
                out.push_back(Role{r, false});
                if (v == Variant::inverse)
                    out.push_back(Role{r, true});
            }
            return out;
        }

        auto step_ok(const Interpretation & s, const Interpretation & g, const Relation & rel,
                const vector<Role> & roles, int d, int e) -> bool
        {
            for (auto & r : roles)
                for (int d2 : s.neighbours(r, d)) {
                    bool found = false;
                    for (int e2 : g.neighbours(r, e))
                        if (rel[d2][e2]) {
                            found = true;
                            break;
                        }
                    if (! found)
                        return false;
                }
            return true;
        }
    }

    auto find_simulation(const Interpretation & source, const Interpretation & target, Variant v)
        -> optional<Relation>
    {
        auto n = source.size(), m = target.size();
        Relation rel(n, vector<bool>(m, false));
        for (std::size_t d = 0 ; d < n ; ++d)
            for (std::size_t e = 0 ; e < m ; ++e)
                rel[d][e] = labels_fit(source, static_cast<int>(d), target, static_cast<int>(e));

        auto roles = simulation_roles(source, v);
        // Worklist refinement: a pair is re-examined whenever a pair it
        // depends on is dropped.
        std::deque<std::pair<int, int>> work;
        for (std::size_t d = 0 ; d < n ; ++d)
            for (std::size_t e = 0 ; e < m ; ++e)
                if (rel[d][e])
                    work.emplace_back(static_cast<int>(d), static_cast<int>(e));
        while (! work.empty()) {
            auto [d, e] = work.front();
            work.pop_front();
            if (! rel[d][e] || step_ok(source, target, rel, roles, d, e))
                continue;
            rel[d][e] = false;
            for (auto & r : roles)
                for (int dp : source.neighbours(r.inverse(), d))
                    for (int ep : target.neighbours(r.inverse(), e))
                        if (rel[dp][ep])
                            work.emplace_back(dp, ep);
        }

        for (int a : source.named_elements()) {
            auto b = target.find(source.name(a));
            if (! b || ! target.is_named(*b) || ! rel[a][*b])
                return std::nullopt;
        }
        return rel;
    }

    auto is_simulation(const Interpretation & source, const Interpretation & target,
            const Relation & rel, Variant v) -> bool
    {
        auto roles = simulation_roles(source, v);
        for (std::size_t d = 0 ; d < source.size() ; ++d)
            for (std::size_t e = 0 ; e < target.size() ; ++e) {
                if (! rel[d][e])
                    continue;
                if (! labels_fit(source, static_cast<int>(d), target, static_cast<int>(e)))
                    return false;
                if (! step_ok(source, target, rel, roles, static_cast<int>(d), static_cast<int>(e)))
                    return false;
            }
        for (int a : source.named_elements()) {
            auto b = target.find(source.name(a));
            if (! b || ! target.is_named(*b) || ! rel[a][*b])
                return false;
        }
        return true;
    }
}
