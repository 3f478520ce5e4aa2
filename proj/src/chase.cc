#include <omq/chase.hh>
#include <omq/semantics.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>

using std::map;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    namespace
    {
        class Normalizer
        {
            private:
                HornTBox & _out;
                set<string> _used;
                std::map<Concept, string> _aux_of;
                int _counter = 0;

                auto fresh() -> string
                {
                    string name;
                    do
                        name = "__L" + std::to_string(++_counter);
                    while (_used.contains(name));
                    _used.insert(name);
                    _out.aux.insert(name);
                    return name;
                }

                void emit(const vector<string> & names, const Concept & rhs)
                {
                    vector<Concept> parts;
                    for (auto & n : names)
                        parts.push_back(Concept::name(n));
                    if (parts.empty())
                        _out.conjuncts.push_back(rhs);
                    else
                        _out.conjuncts.push_back(Concept::implication(Concept::conjoin(parts), rhs));
                }

            public:
                Normalizer(HornTBox & out, const TBox & t) :
                    _out(out),
                    _used(t.concept_names())
                {}

                // The names whose conjunction is equivalent to L, or nothing
                // when L is unsatisfiable.
                auto left(const Concept & l) -> optional<vector<string>>
                {
                    switch (l.kind()) {
                        case ConceptKind::top:
                            return vector<string>{};
                        case ConceptKind::bottom:
                            return std::nullopt;
                        case ConceptKind::name:
                            return vector<string>{l.symbol()};
                        case ConceptKind::conjunction: {
                            auto a = left(l.left());
                            auto b = left(l.right());
                            if (! a || ! b)
                                return std::nullopt;
                            a->insert(a->end(), b->begin(), b->end());
                            std::sort(a->begin(), a->end());
                            a->erase(std::unique(a->begin(), a->end()), a->end());
                            return a;
                        }
                        case ConceptKind::disjunction:
                        case ConceptKind::exists: {
                            if (auto it = _aux_of.find(l) ; it != _aux_of.end())
                                return vector<string>{it->second};
                            auto x = fresh();
                            _aux_of.emplace(l, x);
                            if (l.kind() == ConceptKind::disjunction) {
                                for (auto & side : {l.left(), l.right()})
                                    if (auto names = left(side))
                                        emit(*names, Concept::name(x));
                            }
                            else if (auto names = left(l.operand()))
                                emit(*names, Concept::forall(l.role().inverse(), Concept::name(x)));
                            return vector<string>{x};
                        }
                        default:
                            throw std::invalid_argument("not a Horn left-hand side: " + l.to_string());
                    }
                }

                auto right(const Concept & r) -> Concept
                {
                    switch (r.kind()) {
                        case ConceptKind::top:
                        case ConceptKind::bottom:
                        case ConceptKind::name:
                        case ConceptKind::negation:
                            return r;
                        case ConceptKind::conjunction:
                            return Concept::conjunction(right(r.left()), right(r.right()));
                        case ConceptKind::implication: {
                            auto names = left(r.left());
                            if (! names)
                                return Concept::top();
                            auto rhs = right(r.right());
                            if (names->empty())
                                return rhs;
                            vector<Concept> parts;
                            for (auto & n : *names)
                                parts.push_back(Concept::name(n));
                            return Concept::implication(Concept::conjoin(parts), rhs);
                        }
                        case ConceptKind::exists:
                            return Concept::exists(r.role(), right(r.operand()));
                        case ConceptKind::forall:
                            return Concept::forall(r.role(), right(r.operand()));
                        default:
                            throw std::invalid_argument("not a Horn right-hand side: " + r.to_string());
                    }
                }
        };
    }

    auto normalize_horn(const TBox & t) -> HornTBox
    {
        if (! is_horn_alcfi(t))
            throw std::invalid_argument("TBox is not Horn-ALCFI");
        HornTBox out;
        out.functional = t.functional;
        Normalizer n(out, t);
        for (auto & ci : t.inclusions) {
            auto rhs = n.right(ci.rhs);
            if (rhs.kind() == ConceptKind::top)
                continue;
            auto names = n.left(ci.lhs);
            if (! names)
                continue;
            vector<Concept> parts;
            for (auto & x : *names)
                parts.push_back(Concept::name(x));
            out.conjuncts.push_back(parts.empty() ? rhs : Concept::implication(Concept::conjoin(parts), rhs));
        }
        return out;
    }

    auto Completion::find(const string & name) const -> int
    {
        for (std::size_t k = 0 ; k < nodes.size() ; ++k)
            if (nodes[k].name == name)
                return static_cast<int>(k);
        return -1;
    }

    auto Completion::has_concept(int node, const Concept & c) const -> bool
    {
        for (int id : nodes[node].label)
            if (concepts[id] == c)
                return true;
        return false;
    }

    auto Completion::max_depth() const -> int
    {
        int d = 0;
        for (auto & n : nodes)
            d = std::max(d, n.depth);
        return d;
    }

    auto Completion::to_abox() const -> ABox
    {
        ABox a;
        auto visible = [&](int k) { return ! nodes[k].indirectly_blocked; };
        for (std::size_t k = 0 ; k < nodes.size() ; ++k) {
            if (! visible(static_cast<int>(k)))
                continue;
            a.add_individual(nodes[k].name);
            for (int id : nodes[k].label)
                if (concepts[id].kind() == ConceptKind::name && ! aux.contains(concepts[id].symbol()))
                    a.add_concept(concepts[id].symbol(), nodes[k].name);
        }
        for (auto & e : edges)
            if (visible(e.from) && visible(e.to))
                a.add_role(e.role, nodes[e.from].name, nodes[e.to].name);
        auto used = ABox{a.concept_assertions, a.role_assertions, {}}.individuals();
        for (auto & n : used)
            a.isolated.erase(n);
        return a;
    }

    auto Completion::legend() const -> vector<std::pair<string, Concept>>
    {
        set<int> fillers;
        for (auto & n : nodes)
            if (n.filler >= 0)
                fillers.insert(n.filler);
        vector<std::pair<string, Concept>> out;
        for (int f : fillers)
            out.emplace_back("c" + std::to_string(f), concepts[f]);
        return out;
    }

    namespace
    {
        struct BudgetHit
        {};

        class Chase
        {
            private:
                HornTBox _tbox;
                ChaseBudget _budget;
                Completion _c;
                std::unordered_map<Concept, int, ConceptHash> _ids;
                vector<int> _initial;
                std::deque<std::pair<int, int>> _agenda;
                // generating items (node, exists concept) not yet applied
                vector<std::pair<int, int>> _pending;
                vector<vector<int>> _waiting;      // implications per node
                vector<vector<int>> _adjacent;     // edge ids per node
                map<std::pair<int, int>, int> _children;   // (node, exists id) -> child
                std::size_t _assertions = 0;

                auto id(const Concept & c) -> int
                {
                    if (auto it = _ids.find(c) ; it != _ids.end())
                        return it->second;
                    int k = static_cast<int>(_c.concepts.size());
                    _c.concepts.push_back(c);
                    _ids.emplace(c, k);
                    return k;
                }

                auto concept_of(int k) const -> const Concept & { return _c.concepts[k]; }

                void log(const string & rule, int node, int k, const string & conclusion)
                {
                    if (_budget.trace)
                        _c.trace.push_back(rule + " " + concept_of(k).to_string() + "(" + _c.nodes[node].name + ") => "
                                + conclusion);
                }

                auto name_id(const string & n) -> optional<int>
                {
                    if (auto it = _ids.find(Concept::name(n)) ; it != _ids.end())
                        return it->second;
                    return std::nullopt;
                }

                auto has(int node, const Concept & c) const -> bool
                {
                    auto it = _ids.find(c);
                    return it != _ids.end() && _c.nodes[node].label.contains(it->second);
                }

                void add(int node, int k)
                {
                    if (! _c.nodes[node].label.insert(k).second)
                        return;
                    if (++_assertions > _budget.max_assertions)
                        throw BudgetHit{};
                    _agenda.emplace_back(node, k);
                }

                auto neighbours(int node, const Role & r) const -> vector<int>
                {
                    vector<int> out;
                    for (int e : _adjacent[node]) {
                        auto & ed = _c.edges[e];
                        if (ed.role != r.name)
                            continue;
                        if (! r.inverted && ed.from == node)
                            out.push_back(ed.to);
                        else if (r.inverted && ed.to == node)
                            out.push_back(ed.from);
                    }
                    return out;
                }

                void add_edge(const string & role, int from, int to)
                {
                    int e = static_cast<int>(_c.edges.size());
                    _c.edges.push_back({role, from, to});
                    _adjacent[from].push_back(e);
                    if (to != from)
                        _adjacent[to].push_back(e);
                }

                auto new_node(const string & name, bool named) -> int
                {
                    int k = static_cast<int>(_c.nodes.size());
                    ChaseNode n;
                    n.name = name;
                    n.named = named;
                    _c.nodes.push_back(std::move(n));
                    _waiting.emplace_back();
                    _adjacent.emplace_back();
                    for (int c : _initial)
                        add(k, c);
                    return k;
                }

                auto lhs_holds(int node, const Concept & lhs) const -> bool
                {
                    switch (lhs.kind()) {
                        case ConceptKind::top:
                            return true;
                        case ConceptKind::name:
                            return has(node, lhs);
                        case ConceptKind::conjunction:
                            return lhs_holds(node, lhs.left()) && lhs_holds(node, lhs.right());
                        default:
                            return false;
                    }
                }

                // Re-applies the edge-sensitive rules of a node after it gains
                // a neighbour.
                void touch(int node)
                {
                    for (int k : _c.nodes[node].label) {
                        auto kind = concept_of(k).kind();
                        if (kind == ConceptKind::forall || kind == ConceptKind::exists)
                            _agenda.emplace_back(node, k);
                    }
                }

                void process(int node, int k)
                {
                    auto c = concept_of(k);
                    switch (c.kind()) {
                        case ConceptKind::bottom:
                            _c.bottom = true;
                            return;
                        case ConceptKind::name: {
                            if (has(node, Concept::negation(c))) {
                                log("neg", node, k, "bot");
                                _c.bottom = true;
                                return;
                            }
                            auto waiting = std::move(_waiting[node]);
                            _waiting[node].clear();
                            for (int w : waiting)
                                process(node, w);
                            return;
                        }
                        case ConceptKind::negation:
                            if (has(node, c.operand())) {
                                log("neg", node, k, "bot");
                                _c.bottom = true;
                            }
                            return;
                        case ConceptKind::conjunction:
                            log("R2", node, k, c.left().to_string() + ", " + c.right().to_string());
                            add(node, id(c.left()));
                            add(node, id(c.right()));
                            return;
                        case ConceptKind::implication:
                            if (lhs_holds(node, c.left())) {
                                log("R3", node, k, c.right().to_string());
                                add(node, id(c.right()));
                            }
                            else
                                _waiting[node].push_back(k);
                            return;
                        case ConceptKind::exists: {
                            if (_tbox.functional.contains(c.role())) {
                                auto ns = neighbours(node, c.role());
                                if (! ns.empty()) {
                                    for (int b : ns) {
                                        log("R5", node, k, c.operand().to_string() + "(" + _c.nodes[b].name + ")");
                                        add(b, id(c.operand()));
                                    }
                                    return;
                                }
                            }
                            if (! _children.contains({node, k}))
                                _pending.emplace_back(node, k);
                            return;
                        }
                        case ConceptKind::forall:
                            for (int b : neighbours(node, c.role())) {
                                if (! _c.nodes[b].label.contains(id(c.operand())))
                                    log("R7", node, k, c.operand().to_string() + "(" + _c.nodes[b].name + ")");
                                add(b, id(c.operand()));
                            }
                            return;
                        default:
                            return;
                    }
                }

                void drain()
                {
                    while (! _agenda.empty() && ! _c.bottom) {
                        auto [node, k] = _agenda.front();
                        _agenda.pop_front();
                        process(node, k);
                    }
                }

                auto same_label(int a, int b) const -> bool
                {
                    return _c.nodes[a].label == _c.nodes[b].label;
                }

                // Pairwise anywhere blocking: an earlier unblocked anonymous
                // node reached by the same role with the same label and the
                // same parent label. Earlier nodes are never descendants.
                auto blocker_of(int x) const -> int
                {
                    auto & nx = _c.nodes[x];
                    if (nx.named || nx.parent < 0)
                        return -1;
                    for (int y = 0 ; y < x ; ++y) {
                        auto & ny = _c.nodes[y];
                        if (ny.named || ny.parent < 0 || ny.blocker >= 0 || ny.indirectly_blocked)
                            continue;
                        if (ny.role == nx.role && same_label(x, y) && same_label(nx.parent, ny.parent))
                            return y;
                    }
                    return -1;
                }

                void update_blocking()
                {
                    for (std::size_t x = 0 ; x < _c.nodes.size() ; ++x) {
                        auto & n = _c.nodes[x];
                        n.indirectly_blocked = n.parent >= 0
                            && (_c.nodes[n.parent].blocker >= 0 || _c.nodes[n.parent].indirectly_blocked);
                        n.blocker = n.indirectly_blocked ? -1 : blocker_of(static_cast<int>(x));
                    }
                }

                auto is_blocked(int x) const -> bool
                {
                    return _c.nodes[x].blocker >= 0 || _c.nodes[x].indirectly_blocked;
                }

                // Applies R4/R6 to unblocked nodes; false when nothing was
                // applicable.
                auto generate() -> bool
                {
                    update_blocking();
                    bool any = false;
                    auto items = std::move(_pending);
                    _pending.clear();
                    for (auto & [node, k] : items) {
                        if (_children.contains({node, k}))
                            continue;
                        if (is_blocked(node)) {
                            _pending.emplace_back(node, k);
                            continue;
                        }
                        auto c = concept_of(k);
                        if (_tbox.functional.contains(c.role()) && ! neighbours(node, c.role()).empty()) {
                            _agenda.emplace_back(node, k);
                            any = true;
                            continue;
                        }
                        if (_c.nodes[node].depth >= _budget.max_depth)
                            throw BudgetHit{};
                        int filler = id(c.operand());
                        auto name = _c.nodes[node].name + "__" + c.role().name + (c.role().inverted ? "_inv" : "")
                            + "__c" + std::to_string(filler);
                        log(_tbox.functional.contains(c.role()) ? "R6" : "R4", node, k, name);
                        int child = new_node(name, false);
                        auto & n = _c.nodes[child];
                        n.parent = node;
                        n.role = c.role();
                        n.filler = filler;
                        n.depth = _c.nodes[node].depth + 1;
                        _children[{node, k}] = child;
                        if (c.role().inverted)
                            add_edge(c.role().name, child, node);
                        else
                            add_edge(c.role().name, node, child);
                        add(child, filler);
                        touch(node);
                        any = true;
                    }
                    return any;
                }

                void functional_clashes()
                {
                    for (auto & r : _tbox.functional)
                        for (std::size_t x = 0 ; x < _c.nodes.size() ; ++x)
                            if (neighbours(static_cast<int>(x), r).size() > 1) {
                                _c.bottom = true;
                                if (_budget.trace)
                                    _c.trace.push_back("func " + r.to_string() + " violated at " + _c.nodes[x].name
                                            + " => bot");
                                return;
                            }
                }

            public:
                Chase(const TBox & t, const ChaseBudget & budget) :
                    _tbox(normalize_horn(t)),
                    _budget(budget)
                {
                    _c.aux = _tbox.aux;
                    for (auto & c : _tbox.conjuncts)
                        _initial.push_back(id(c));
                }

                auto run(const ABox & a) -> Completion
                {
                    try {
                        for (auto & n : a.individuals())
                            new_node(n, true);
                        auto node_of = [&](const string & n) { return _c.find(n); };
                        for (auto & ra : a.role_assertions)
                            add_edge(ra.role, node_of(ra.from), node_of(ra.to));
                        for (auto & ca : a.concept_assertions)
                            add(node_of(ca.individual), id(Concept::name(ca.concept_name)));
                        functional_clashes();
                        while (! _c.bottom) {
                            drain();
                            if (_c.bottom || ! generate())
                                break;
                        }
                        update_blocking();
                    }
                    catch (const BudgetHit &) {
                        _c.status = ChaseStatus::budget_exhausted;
                        update_blocking();
                    }
                    return std::move(_c);
                }
        };
    }

    auto complete(const TBox & t, const ABox & a, const ChaseBudget & budget) -> Completion
    {
        return Chase(t, budget).run(a);
    }

    namespace
    {
        auto match_at(const Completion & c, const Concept & q, int node) -> bool
        {
            switch (q.kind()) {
                case ConceptKind::top:
                    return true;
                case ConceptKind::bottom:
                    return c.bottom;
                case ConceptKind::name:
                    return c.has_concept(node, q);
                case ConceptKind::conjunction:
                    return match_at(c, q.left(), node) && match_at(c, q.right(), node);
                case ConceptKind::disjunction:
                    return match_at(c, q.left(), node) || match_at(c, q.right(), node);
                case ConceptKind::exists:
                    for (auto & e : c.edges) {
                        if (e.role != q.role().name)
                            continue;
                        int from = q.role().inverted ? e.to : e.from;
                        int to = q.role().inverted ? e.from : e.to;
                        if (from == node && match_at(c, q.operand(), to))
                            return true;
                    }
                    return false;
                default:
                    throw std::invalid_argument("not an ELIU-bot concept: " + q.to_string());
            }
        }
    }

    auto syntactic_match(const Completion & c, const Concept & q, const string & individual) -> bool
    {
        if (c.bottom)
            return true;
        int node = c.find(individual);
        if (node < 0)
            throw std::invalid_argument("unknown individual " + individual);
        return match_at(c, q, node);
    }

    namespace
    {
        void copy_labels(const Completion & c, int node, Interpretation & out, int e)
        {
            for (int id : c.nodes[node].label) {
                auto & k = c.concepts[id];
                if (k.kind() == ConceptKind::name && ! c.aux.contains(k.symbol()))
                    out.add_concept(k.symbol(), e);
            }
        }

        auto children_of(const Completion & c) -> vector<vector<int>>
        {
            vector<vector<int>> out(c.nodes.size());
            for (std::size_t k = 0 ; k < c.nodes.size() ; ++k)
                if (c.nodes[k].parent >= 0)
                    out[c.nodes[k].parent].push_back(static_cast<int>(k));
            return out;
        }

        auto path_child(const string & parent, const ChaseNode & child) -> string
        {
            return parent + "__" + child.role.name + (child.role.inverted ? "_inv" : "") + "__c"
                + std::to_string(child.filler);
        }
    }

    auto canonical_interpretation(const Completion & c, CanonicalShape shape, int extra_depth) -> Interpretation
    {
        if (c.bottom)
            throw std::invalid_argument("the completion is inconsistent and has no canonical interpretation");
        Interpretation out;
        auto children = children_of(c);
        if (shape == CanonicalShape::slice || shape == CanonicalShape::folded) {
            bool folded = shape == CanonicalShape::folded;
            auto keep = [&](int k) {
                return ! c.nodes[k].indirectly_blocked && ! (folded && c.nodes[k].blocker >= 0);
            };
            auto image = [&](int k) { return folded && c.nodes[k].blocker >= 0 ? c.nodes[k].blocker : k; };
            vector<int> element(c.nodes.size(), -1);
            for (std::size_t k = 0 ; k < c.nodes.size() ; ++k)
                if (keep(static_cast<int>(k))) {
                    element[k] = out.add_element(c.nodes[k].name, c.nodes[k].named);
                    copy_labels(c, static_cast<int>(k), out, element[k]);
                }
            for (auto & e : c.edges) {
                int from = image(e.from), to = image(e.to);
                if (c.nodes[e.from].indirectly_blocked || c.nodes[e.to].indirectly_blocked)
                    continue;
                if (element[from] >= 0 && element[to] >= 0)
                    out.add_edge(e.role, element[from], element[to]);
            }
            return out;
        }

        // unrolled: tree parts below named nodes, copying blocker subtrees
        int bound = 0;
        for (auto & n : c.nodes)
            if (! n.indirectly_blocked)
                bound = std::max(bound, n.depth);
        bound += extra_depth;
        for (std::size_t k = 0 ; k < c.nodes.size() ; ++k)
            if (c.nodes[k].named) {
                int e = out.add_element(c.nodes[k].name, true);
                copy_labels(c, static_cast<int>(k), out, e);
            }
        for (auto & e : c.edges)
            if (c.nodes[e.from].named && c.nodes[e.to].named)
                out.add_edge(e.role, *out.find(c.nodes[e.from].name), *out.find(c.nodes[e.to].name));

        struct Item
        {
            int origin;
            int element;
            int depth;
        };
        std::deque<Item> queue;
        for (std::size_t k = 0 ; k < c.nodes.size() ; ++k)
            if (c.nodes[k].named)
                queue.push_back({static_cast<int>(k), *out.find(c.nodes[k].name), 0});
        while (! queue.empty()) {
            auto item = queue.front();
            queue.pop_front();
            if (item.depth >= bound)
                continue;
            int source = c.nodes[item.origin].blocker >= 0 ? c.nodes[item.origin].blocker : item.origin;
            for (int child : children[source]) {
                if (c.nodes[child].indirectly_blocked)
                    continue;
                auto & cn = c.nodes[child];
                int e = out.add_element(path_child(out.name(item.element), cn), false);
                copy_labels(c, child, out, e);
                out.add_edge(cn.role, item.element, e);
                queue.push_back({child, e, item.depth + 1});
            }
        }
        return out;
    }

    auto to_string(Verdict v) -> string
    {
        switch (v) {
            case Verdict::no:
                return "no";
            case Verdict::yes:
                return "yes";
            case Verdict::inconclusive:
                return "inconclusive";
        }
        return "";
    }

    namespace
    {
        auto query_depth(const Query & q) -> int
        {
            if (q.is_tree())
                return q.tree().expr.depth() + 1;
            int n = 0;
            for (auto & cq : to_ucq(q).disjuncts)
                n = std::max(n, static_cast<int>(cq.variables().size()));
            return n + 1;
        }
    }

    auto horn_certain_answer(const Completion & c, const Query & q, const vector<string> & tuple) -> Verdict
    {
        if (c.bottom)
            return Verdict::yes;
        auto i = canonical_interpretation(c, CanonicalShape::unrolled, query_depth(q));
        vector<int> elements;
        for (auto & a : tuple) {
            auto e = i.find(a);
            if (! e || ! i.is_named(*e))
                throw std::invalid_argument("unknown individual " + a);
            elements.push_back(*e);
        }
        if (match_query(i, q, elements))
            return Verdict::yes;
        return c.status == ChaseStatus::complete ? Verdict::no : Verdict::inconclusive;
    }

    auto horn_certain_answer(const TBox & t, const ABox & a, const Query & q, const vector<string> & tuple,
            const ChaseBudget & budget) -> Verdict
    {
        return horn_certain_answer(complete(t, a, budget), q, tuple);
    }

    auto horn_entails_eliq(const TBox & t, const ABox & a, const Concept & c, const string & individual,
            const ChaseBudget & budget) -> Verdict
    {
        return horn_certain_answer(t, a, Query::eliq(c), {individual}, budget);
    }

    auto horn_answers(const TBox & t, const ABox & a, const Query & q, const ChaseBudget & budget) -> HornAnswers
    {
        HornAnswers out;
        auto c = complete(t, a, budget);
        vector<string> inds(a.individuals().begin(), a.individuals().end());
        auto n = q.arity();
        if (c.bottom) {
            vector<std::size_t> idx(n, 0);
            if (n > 0 && inds.empty())
                return out;
            while (true) {
                vector<string> tuple;
                for (auto k : idx)
                    tuple.push_back(inds[k]);
                out.tuples.push_back(tuple);
                std::size_t k = n;
                while (k > 0 && ++idx[k - 1] == inds.size())
                    idx[--k] = 0;
                if (k == 0)
                    break;
            }
            return out;
        }
        auto i = canonical_interpretation(c, CanonicalShape::unrolled, query_depth(q));
        for (auto & tuple : answers(i, q)) {
            vector<string> names;
            for (int e : tuple)
                names.push_back(i.name(e));
            out.tuples.push_back(names);
        }
        out.inconclusive = c.status != ChaseStatus::complete;
        return out;
    }
}
