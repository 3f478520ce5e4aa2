#include <omq/tableau.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>

using std::map;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    auto blocking_for(Dialect d) -> Blocking
    {
        switch (d) {
            case Dialect::alc:
                return Blocking::subset;
            case Dialect::alci:
                return Blocking::equality;
            default:
                return Blocking::pairwise;
        }
    }

    namespace
    {
        enum class PKind
        {
            top,
            bottom,
            name,
            not_name,
            conj,
            disj,
            exists,
            forall
        };

        struct PEntry
        {
            PKind kind;
            string name;
            Role role;
            vector<int> kids;
            int neg = -1;
        };

        // Interned concepts in negation normal form with n-ary and/or.
        class Pool
        {
            private:
                vector<PEntry> _entries;
                map<string, int> _index;

                auto key(PKind k, const string & name, const Role & role, const vector<int> & kids) const -> string
                {
                    string out = std::to_string(static_cast<int>(k)) + "|" + name + "|" + role.name
                        + (role.inverted ? "-" : "") + "|";
                    for (int c : kids)
                        out += std::to_string(c) + ",";
                    return out;
                }

            public:
                int top_id, bottom_id;

                Pool()
                {
                    top_id = make(PKind::top, "", {}, {});
                    bottom_id = make(PKind::bottom, "", {}, {});
                    _entries[top_id].neg = bottom_id;
                    _entries[bottom_id].neg = top_id;
                }

                auto operator[](int id) const -> const PEntry & { return _entries[id]; }

                auto make(PKind k, const string & name, const Role & role, vector<int> kids) -> int
                {
                    if (k == PKind::conj || k == PKind::disj) {
                        int unit = k == PKind::conj ? top_id : bottom_id;
                        int zero = k == PKind::conj ? bottom_id : top_id;
                        vector<int> flat;
                        for (int c : kids) {
                            if (c == unit)
                                continue;
                            if (c == zero)
                                return zero;
                            if (_entries[c].kind == k)
                                flat.insert(flat.end(), _entries[c].kids.begin(), _entries[c].kids.end());
                            else
                                flat.push_back(c);
                        }
                        std::sort(flat.begin(), flat.end());
                        flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
                        if (flat.empty())
                            return unit;
                        if (flat.size() == 1)
                            return flat.front();
                        kids = std::move(flat);
                    }
                    auto kk = key(k, name, role, kids);
                    if (auto it = _index.find(kk) ; it != _index.end())
                        return it->second;
                    int id = static_cast<int>(_entries.size());
                    _entries.push_back(PEntry{k, name, role, std::move(kids), -1});
                    _index.emplace(std::move(kk), id);
                    // negations are created eagerly so the pool never grows
                    // while a tableau holds references into it
                    negate(id);
                    return id;
                }

                auto intern(const Concept & c) -> int
                {
                    switch (c.kind()) {
                        case ConceptKind::top:
                            return top_id;
                        case ConceptKind::bottom:
                            return bottom_id;
                        case ConceptKind::name:
                            return make(PKind::name, c.symbol(), {}, {});
                        case ConceptKind::negation:
                            if (c.operand().kind() == ConceptKind::name)
                                return make(PKind::not_name, c.operand().symbol(), {}, {});
                            return negate(intern(c.operand()));
                        case ConceptKind::conjunction:
                            return make(PKind::conj, "", {}, {intern(c.left()), intern(c.right())});
                        case ConceptKind::disjunction:
                            return make(PKind::disj, "", {}, {intern(c.left()), intern(c.right())});
                        case ConceptKind::implication:
                            return make(PKind::disj, "", {}, {negate(intern(c.left())), intern(c.right())});
                        case ConceptKind::exists:
                            return make(PKind::exists, "", c.role(), {intern(c.operand())});
                        case ConceptKind::forall:
                            return make(PKind::forall, "", c.role(), {intern(c.operand())});
                    }
                    return top_id;
                }

                auto negate(int id) -> int
                {
                    if (_entries[id].neg >= 0)
                        return _entries[id].neg;
                    auto e = _entries[id];
                    int out = -1;
                    switch (e.kind) {
                        case PKind::top:
                        case PKind::bottom:
                            return id;
                        case PKind::name:
                            out = make(PKind::not_name, e.name, {}, {});
                            break;
                        case PKind::not_name:
                            out = make(PKind::name, e.name, {}, {});
                            break;
                        case PKind::conj:
                        case PKind::disj: {
                            vector<int> kids;
                            for (int c : e.kids)
                                kids.push_back(negate(c));
                            out = make(e.kind == PKind::conj ? PKind::disj : PKind::conj, "", {}, kids);
                            break;
                        }
                        case PKind::exists:
                            out = make(PKind::forall, "", e.role, {negate(e.kids[0])});
                            break;
                        case PKind::forall:
                            out = make(PKind::exists, "", e.role, {negate(e.kids[0])});
                            break;
                    }
                    _entries[id].neg = out;
                    _entries[out].neg = id;
                    return out;
                }
        };

        using DepSet = vector<int>;

        auto unite(const DepSet & a, const DepSet & b) -> DepSet
        {
            if (a.empty())
                return b;
            if (b.empty())
                return a;
            DepSet out;
            out.reserve(a.size() + b.size());
            std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
            return out;
        }

        struct TNode
        {
            map<int, DepSet> label;
            int parent = -1;
            Role in_role;
            bool named = false;
            bool alive = true;
            vector<int> edges;
        };

        struct TEdge
        {
            int from, to;
            string role;
            DepSet dep;
            bool alive = true;
        };

        struct Neighbour
        {
            int node;
            int edge;
        };

        enum class Undo
        {
            label,
            node,
            edge,
            node_alive,
            edge_alive
        };

        struct TrailEntry
        {
            Undo kind;
            int a, b;
        };

        // An open disjunction and the disjuncts not yet tried.
        struct Choice
        {
            int x;
            int id;
            DepSet dep;
            int branch;
            std::size_t next = 0;
            DepSet collected;
            std::size_t mark;
        };

        class Tableau
        {
            private:
                Pool _pool;
                vector<int> _global;
                map<string, vector<int>> _absorbed;
                set<Role> _functional;
                Blocking _blocking;
                std::size_t _budget;
                std::size_t _created = 0;
                int _branches = 0;

                vector<TNode> _nodes;
                vector<TEdge> _edges;
                optional<DepSet> _clash;
                vector<TrailEntry> _trail;
                std::deque<std::pair<int, int>> _queue;

                void absorb(const Concept & lhs, int rhs)
                {
                    switch (lhs.kind()) {
                        case ConceptKind::bottom:
                            return;
                        case ConceptKind::top:
                            _global.push_back(rhs);
                            return;
                        case ConceptKind::name:
                            _absorbed[lhs.symbol()].push_back(rhs);
                            return;
                        case ConceptKind::disjunction:
                            absorb(lhs.left(), rhs);
                            absorb(lhs.right(), rhs);
                            return;
                        case ConceptKind::conjunction: {
                            vector<Concept> parts;
                            vector<Concept> stack{lhs};
                            while (! stack.empty()) {
                                auto c = stack.back();
                                stack.pop_back();
                                if (c.kind() == ConceptKind::conjunction) {
                                    stack.push_back(c.right());
                                    stack.push_back(c.left());
                                }
                                else
                                    parts.push_back(c);
                            }
                            for (std::size_t k = 0 ; k < parts.size() ; ++k)
                                if (parts[k].kind() == ConceptKind::name) {
                                    vector<int> alts{rhs};
                                    for (std::size_t j = 0 ; j < parts.size() ; ++j)
                                        if (j != k)
                                            alts.push_back(_pool.negate(_pool.intern(parts[j])));
                                    _absorbed[parts[k].symbol()].push_back(_pool.make(PKind::disj, "", {}, alts));
                                    return;
                                }
                            break;
                        }
                        default:
                            break;
                    }
                    _global.push_back(_pool.make(PKind::disj, "", {}, {_pool.negate(_pool.intern(lhs)), rhs}));
                }

                auto neighbours(int x, const Role & r) const -> vector<Neighbour>
                {
                    vector<Neighbour> out;
                    for (int e : _nodes[x].edges) {
                        auto & ed = _edges[e];
                        if (! ed.alive || ed.role != r.name)
                            continue;
                        if (! r.inverted && ed.from == x)
                            out.push_back({ed.to, e});
                        else if (r.inverted && ed.to == x)
                            out.push_back({ed.from, e});
                    }
                    return out;
                }

                // Returns true when the concept is new at x.
                auto add(int x, int id, const DepSet & dep) -> bool
                {
                    auto & label = _nodes[x].label;
                    if (label.contains(id))
                        return false;
                    if (id == _pool.bottom_id) {
                        _clash = dep;
                        return true;
                    }
                    int neg = _pool.negate(id);
                    if (auto it = label.find(neg) ; it != label.end()) {
                        _clash = unite(dep, it->second);
                        return true;
                    }
                    label.emplace(id, dep);
                    _trail.push_back({Undo::label, x, id});
                    _queue.emplace_back(x, id);
                    return true;
                }

                void requeue_foralls(int x)
                {
                    for (auto & [id, dep] : _nodes[x].label)
                        if (_pool[id].kind == PKind::forall)
                            _queue.emplace_back(x, id);
                }

                auto add_edge(int from, int to, const string & role, const DepSet & dep) -> int
                {
                    int e = static_cast<int>(_edges.size());
                    _edges.push_back(TEdge{from, to, role, dep, true});
                    _nodes[from].edges.push_back(e);
                    if (to != from)
                        _nodes[to].edges.push_back(e);
                    _trail.push_back({Undo::edge, e, 0});
                    requeue_foralls(from);
                    if (to != from)
                        requeue_foralls(to);
                    return e;
                }

                auto new_node(int parent, const Role & r, const DepSet & dep) -> int
                {
                    if (++_created > _budget)
                        throw BudgetExceeded("tableau node budget exceeded");
                    int x = static_cast<int>(_nodes.size());
                    _nodes.emplace_back();
                    _trail.push_back({Undo::node, x, 0});
                    _nodes[x].parent = parent;
                    _nodes[x].in_role = r;
                    if (parent >= 0) {
                        if (r.inverted)
                            add_edge(x, parent, r.name, dep);
                        else
                            add_edge(parent, x, r.name, dep);
                    }
                    for (int g : _global)
                        add(x, g, {});
                    return x;
                }

                void undo(std::size_t mark)
                {
                    while (_trail.size() > mark) {
                        auto t = _trail.back();
                        _trail.pop_back();
                        switch (t.kind) {
                            case Undo::label:
                                _nodes[t.a].label.erase(t.b);
                                break;
                            case Undo::node:
                                _nodes.pop_back();
                                break;
                            case Undo::edge: {
                                auto & ed = _edges[t.a];
                                _nodes[ed.from].edges.pop_back();
                                if (ed.to != ed.from)
                                    _nodes[ed.to].edges.pop_back();
                                _edges.pop_back();
                                break;
                            }
                            case Undo::node_alive:
                                _nodes[t.a].alive = true;
                                break;
                            case Undo::edge_alive:
                                _edges[t.a].alive = true;
                                break;
                        }
                    }
                    _clash.reset();
                    _queue.clear();
                }

                void kill_subtree(int root)
                {
                    vector<int> dead{root};
                    _nodes[root].alive = false;
                    _trail.push_back({Undo::node_alive, root, 0});
                    for (std::size_t x = root + 1 ; x < _nodes.size() ; ++x) {
                        int p = _nodes[x].parent;
                        if (_nodes[x].alive && p >= 0 && ! _nodes[p].alive) {
                            _nodes[x].alive = false;
                            _trail.push_back({Undo::node_alive, static_cast<int>(x), 0});
                            dead.push_back(static_cast<int>(x));
                        }
                    }
                    for (int x : dead)
                        for (int e : _nodes[x].edges)
                            if (_edges[e].alive) {
                                _edges[e].alive = false;
                                _trail.push_back({Undo::edge_alive, e, 0});
                            }
                }

                // Merges two r-neighbours of x; sets the clash on failure.
                void merge(int x, const Neighbour & a, const Neighbour & b)
                {
                    auto dep = unite(_edges[a.edge].dep, _edges[b.edge].dep);
                    auto & na = _nodes[a.node];
                    auto & nb = _nodes[b.node];
                    if (na.named && nb.named) {
                        _clash = dep;
                        return;
                    }
                    int into, from;
                    if (na.named || a.node == _nodes[x].parent)
                        into = a.node, from = b.node;
                    else if (nb.named || b.node == _nodes[x].parent)
                        into = b.node, from = a.node;
                    else if (a.node < b.node)
                        into = a.node, from = b.node;
                    else
                        into = b.node, from = a.node;
                    auto items = _nodes[from].label;
                    kill_subtree(from);
                    for (auto & [id, d] : items) {
                        add(into, id, unite(d, dep));
                        if (_clash)
                            return;
                    }
                }

                auto same_keys(const TNode & a, const TNode & b) const -> bool
                {
                    if (a.label.size() != b.label.size())
                        return false;
                    for (auto ia = a.label.begin(), ib = b.label.begin() ; ia != a.label.end() ; ++ia, ++ib)
                        if (ia->first != ib->first)
                            return false;
                    return true;
                }

                auto subset_keys(const TNode & a, const TNode & b) const -> bool
                {
                    if (a.label.size() > b.label.size())
                        return false;
                    for (auto & [id, d] : a.label)
                        if (! b.label.contains(id))
                            return false;
                    return true;
                }

                auto blocks(int y, int x) const -> bool
                {
                    auto & nx = _nodes[x];
                    auto & ny = _nodes[y];
                    switch (_blocking) {
                        case Blocking::subset:
                            return subset_keys(nx, ny);
                        case Blocking::equality:
                            return same_keys(nx, ny);
                        case Blocking::pairwise:
                            return ny.parent >= 0 && nx.in_role == ny.in_role && same_keys(nx, ny)
                                && same_keys(_nodes[nx.parent], _nodes[ny.parent]);
                    }
                    return false;
                }

                /**
                 * Blocking status per node: 0 open, 1 directly blocked, 2
                 * below a blocked node. Subset blocking looks for any older
                 * open anonymous node; the other modes only look at
                 * ancestors.
                 */
                auto blocking_status() const -> vector<char>
                {
                    vector<char> status(_nodes.size(), 0);
                    for (std::size_t x = 0 ; x < _nodes.size() ; ++x) {
                        auto & nx = _nodes[x];
                        if (! nx.alive || nx.named || nx.parent < 0)
                            continue;
                        if (status[nx.parent]) {
                            status[x] = 2;
                            continue;
                        }
                        int xi = static_cast<int>(x);
                        if (_blocking == Blocking::subset) {
                            for (std::size_t y = 0 ; y < x && ! status[x] ; ++y)
                                if (_nodes[y].alive && ! _nodes[y].named && _nodes[y].parent >= 0 && ! status[y]
                                        && blocks(static_cast<int>(y), xi))
                                    status[x] = 1;
                        }
                        else
                            for (int y = nx.parent ; y >= 0 && ! _nodes[y].named && ! status[x] ; y = _nodes[y].parent)
                                if (blocks(y, xi))
                                    status[x] = 1;
                    }
                    return status;
                }

                // Applies and, absorption, forall and merges until nothing changes.
                auto saturate() -> bool
                {
                    while (true) {
                        while (! _queue.empty() && ! _clash) {
                            auto [x, id] = _queue.front();
                            _queue.pop_front();
                            if (! _nodes[x].alive)
                                continue;
                            auto it = _nodes[x].label.find(id);
                            if (it == _nodes[x].label.end())
                                continue;
                            auto dep = it->second;
                            auto & e = _pool[id];
                            if (e.kind == PKind::conj) {
                                for (int k : e.kids)
                                    if (add(x, k, dep) && _clash)
                                        break;
                            }
                            else if (e.kind == PKind::name) {
                                if (auto ab = _absorbed.find(e.name) ; ab != _absorbed.end())
                                    for (int k : ab->second)
                                        if (add(x, k, dep) && _clash)
                                            break;
                            }
                            else if (e.kind == PKind::forall) {
                                int filler = e.kids[0];
                                for (auto & n : neighbours(x, e.role))
                                    if (add(n.node, filler, unite(dep, _edges[n.edge].dep)) && _clash)
                                        break;
                            }
                        }
                        if (_clash)
                            return false;
                        bool merged = false;
                        for (std::size_t x = 0 ; x < _nodes.size() && ! merged && ! _functional.empty() ; ++x) {
                            if (! _nodes[x].alive)
                                continue;
                            for (auto & r : _functional) {
                                auto ns = neighbours(static_cast<int>(x), r);
                                if (ns.size() < 2)
                                    continue;
                                merge(static_cast<int>(x), ns[0], ns[1]);
                                if (_clash)
                                    return false;
                                merged = true;
                                break;
                            }
                        }
                        if (! merged)
                            return true;
                    }
                }

                auto open_disjunction() const -> optional<Choice>
                {
                    for (std::size_t x = 0 ; x < _nodes.size() ; ++x) {
                        if (! _nodes[x].alive)
                            continue;
                        auto & label = _nodes[x].label;
                        for (auto & [id, dep] : label) {
                            auto & e = _pool[id];
                            if (e.kind != PKind::disj)
                                continue;
                            bool done = std::any_of(e.kids.begin(), e.kids.end(),
                                    [&](int k) { return label.contains(k); });
                            if (! done)
                                return Choice{static_cast<int>(x), id, dep, 0, 0, dep, 0};
                        }
                    }
                    return std::nullopt;
                }

                // Expands the existentials of the first unblocked node that
                // needs it, breadth first. False when nothing is left.
                auto expand() -> bool
                {
                    auto status = blocking_status();
                    for (std::size_t x = 0 ; x < _nodes.size() ; ++x) {
                        if (! _nodes[x].alive || status[x])
                            continue;
                        bool expanded = false;
                        vector<std::pair<int, DepSet>> items(_nodes[x].label.begin(), _nodes[x].label.end());
                        for (auto & [id, dep] : items) {
                            auto & e = _pool[id];
                            if (e.kind != PKind::exists)
                                continue;
                            int filler = e.kids[0];
                            auto ns = neighbours(static_cast<int>(x), e.role);
                            bool witnessed = std::any_of(ns.begin(), ns.end(),
                                    [&](const Neighbour & n) { return _nodes[n.node].label.contains(filler); });
                            if (witnessed)
                                continue;
                            expanded = true;
                            if (_functional.contains(e.role) && ! ns.empty())
                                add(ns[0].node, filler, unite(dep, _edges[ns[0].edge].dep));
                            else {
                                int y = new_node(static_cast<int>(x), e.role, dep);
                                add(y, filler, dep);
                            }
                            if (_clash)
                                return true;
                        }
                        if (expanded)
                            return true;
                    }
                    return false;
                }

                // Tries the next disjunct of c; false when none is left.
                auto try_next(Choice & c) -> bool
                {
                    auto & kids = _pool[c.id].kids;
                    while (c.next < kids.size()) {
                        int k = kids[c.next++];
                        undo(c.mark);
                        int neg = _pool.negate(k);
                        auto & label = _nodes[c.x].label;
                        if (auto it = label.find(neg) ; it != label.end()) {
                            c.collected = unite(c.collected, it->second);
                            continue;
                        }
                        add(c.x, k, unite(c.dep, DepSet{c.branch}));
                        return true;
                    }
                    return false;
                }

                auto solve() -> bool
                {
                    vector<Choice> stack;
                    while (true) {
                        bool consistent = ! _clash && saturate();
                        if (consistent) {
                            if (auto c = open_disjunction()) {
                                c->branch = ++_branches;
                                c->mark = _trail.size();
                                stack.push_back(*c);
                                if (try_next(stack.back()))
                                    continue;
                                auto collected = stack.back().collected;
                                undo(stack.back().mark);
                                stack.pop_back();
                                _clash = collected;
                            }
                            else if (expand())
                                continue;
                            else
                                return true;
                        }

                        // dependency-directed backtracking
                        DepSet conflict = *_clash;
                        bool resumed = false;
                        while (! stack.empty()) {
                            auto & c = stack.back();
                            if (! std::binary_search(conflict.begin(), conflict.end(), c.branch)) {
                                undo(c.mark);
                                stack.pop_back();
                                continue;
                            }
                            DepSet rest;
                            for (int d : conflict)
                                if (d != c.branch)
                                    rest.push_back(d);
                            c.collected = unite(c.collected, rest);
                            if (try_next(c)) {
                                resumed = true;
                                break;
                            }
                            conflict = c.collected;
                            undo(c.mark);
                            stack.pop_back();
                        }
                        if (! resumed)
                            return false;
                    }
                }

            public:
                Tableau(const TBox & t, Blocking blocking, std::size_t budget) :
                    _functional(t.functional.begin(), t.functional.end()),
                    _blocking(blocking),
                    _budget(budget)
                {
                    for (auto & ci : t.inclusions)
                        absorb(ci.lhs, _pool.intern(ci.rhs));
                }

                auto run(const ABox & a, const vector<Assertion> & extra, const vector<Concept> & roots) -> bool
                {
                    map<string, int> ind;
                    auto named = [&](const string & name) {
                        if (auto it = ind.find(name) ; it != ind.end())
                            return it->second;
                        int x = new_node(-1, {}, {});
                        _nodes[x].named = true;
                        ind.emplace(name, x);
                        return x;
                    };
                    for (auto & n : a.individuals())
                        named(n);
                    for (auto & e : extra)
                        named(e.individual);
                    for (auto & ra : a.role_assertions)
                        add_edge(named(ra.from), named(ra.to), ra.role, {});
                    for (auto & ca : a.concept_assertions)
                        add(named(ca.individual), _pool.make(PKind::name, ca.concept_name, {}, {}), {});
                    for (auto & e : extra)
                        add(named(e.individual), _pool.intern(e.expr), {});
                    for (auto & c : roots) {
                        int x = new_node(-1, {}, {});
                        add(x, _pool.intern(c), {});
                    }
                    if (_clash)
                        return false;
                    return solve();
                }
        };

        auto blocking_of(const TBox & t, const ABox &, const vector<Assertion> & extra) -> Blocking
        {
            bool inverse = dialect(t) == Dialect::alci || dialect(t) == Dialect::alcfi;
            for (auto & e : extra)
                inverse = inverse || uses_inverse(e.expr);
            if (! t.functional.empty())
                return Blocking::pairwise;
            return inverse ? Blocking::equality : Blocking::subset;
        }
    }

    auto is_satisfiable(const Concept & c, const TBox & t, const TableauOptions & opts) -> bool
    {
        auto b = blocking_of(t, {}, {{c, ""}});
        return Tableau(t, b, opts.node_budget).run({}, {}, {c});
    }

    auto kb_consistent(const TBox & t, const ABox & a, const TableauOptions & opts) -> bool
    {
        return kb_consistent(t, a, {}, opts);
    }

    auto kb_consistent(const TBox & t, const ABox & a, const vector<Assertion> & extra,
            const TableauOptions & opts) -> bool
    {
        return Tableau(t, blocking_of(t, a, extra), opts.node_budget).run(a, extra, {});
    }

    auto entails_disjunction(const TBox & t, const ABox & a, const vector<Assertion> & disjuncts,
            const TableauOptions & opts) -> bool
    {
        vector<Assertion> negated;
        for (auto & d : disjuncts)
            negated.push_back({Concept::negation(d.expr), d.individual});
        return ! kb_consistent(t, a, negated, opts);
    }

    auto entails_instance(const TBox & t, const ABox & a, const Concept & c, const string & individual,
            const TableauOptions & opts) -> bool
    {
        return entails_disjunction(t, a, {{c, individual}}, opts);
    }

    auto entails_boolean(const TBox & t, const ABox & a, const Concept & c, const TableauOptions & opts) -> bool
    {
        TBox extended = t;
        extended.inclusions.push_back({c, Concept::bottom()});
        return ! kb_consistent(extended, a, opts);
    }
}
