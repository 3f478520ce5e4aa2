#include <omq/types.hh>

#include <algorithm>

using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    auto closure(const TBox & t, const Concept & c0) -> vector<Concept>
    {
        vector<Concept> sub;
        set<Concept> seen;
        for (auto & ci : t.inclusions) {
            collect_subconcepts(ci.lhs, sub, seen);
            collect_subconcepts(ci.rhs, sub, seen);
        }
        collect_subconcepts(c0, sub, seen);
        vector<Concept> out;
        set<Concept> done;
        for (auto & c : sub) {
            auto positive = c.kind() == ConceptKind::negation ? c.operand() : c;
            if (done.insert(positive).second) {
                out.push_back(positive);
                out.push_back(Concept::negation(positive));
            }
        }
        return out;
    }

    TypeTable::TypeTable(const TBox & t, const Concept & q) :
        tbox(t),
        query(q),
        effective(t)
    {
        for (auto & c : closure(t, q))
            if (c.kind() != ConceptKind::negation) {
                _index.emplace(c, static_cast<int>(base.size()));
                base.push_back(c);
            }
        set<string> rs;
        for (auto & c : base)
            if (c.kind() == ConceptKind::exists || c.kind() == ConceptKind::forall)
                rs.insert(c.role().name);
        for (auto & r : rs) {
            roles.push_back(Role{r, false});
            roles.push_back(Role{r, true});
        }
    }

    auto TypeTable::index_of(const Concept & c) const -> optional<int>
    {
        if (auto it = _index.find(c) ; it != _index.end())
            return it->second;
        return std::nullopt;
    }

    auto TypeTable::contains(int t, const Concept & c) const -> bool
    {
        if (c.kind() == ConceptKind::negation)
            if (auto k = index_of(c.operand()))
                return ! types[t][*k];
        auto k = index_of(c);
        if (! k)
            throw std::invalid_argument("concept not in the closure: " + c.to_string());
        return types[t][*k];
    }

    auto TypeTable::members(int t) const -> vector<Concept>
    {
        vector<Concept> out;
        for (std::size_t k = 0 ; k < base.size() ; ++k)
            out.push_back(types[t][k] ? base[k] : Concept::negation(base[k]));
        return out;
    }

    auto TypeTable::conjunction(int t) const -> Concept
    {
        return Concept::conjoin(members(t));
    }

    auto TypeTable::names(int t) const -> set<string>
    {
        set<string> out;
        for (std::size_t k = 0 ; k < base.size() ; ++k)
            if (types[t][k] && base[k].kind() == ConceptKind::name)
                out.insert(base[k].symbol());
        return out;
    }

    auto TypeTable::related(int t, const Role & r, int t2) const -> bool
    {
        auto it = succ.find(r);
        return it != succ.end() && it->second[t][t2];
    }

    auto TypeTable::find(const vector<bool> & bits) const -> optional<int>
    {
        for (std::size_t t = 0 ; t < types.size() ; ++t)
            if (types[t] == bits)
                return static_cast<int>(t);
        return std::nullopt;
    }

    namespace
    {
        enum class Truth
        {
            no,
            yes,
            unknown
        };

        auto is_atom(const Concept & c) -> bool
        {
            return c.kind() == ConceptKind::name || c.kind() == ConceptKind::exists || c.kind() == ConceptKind::forall;
        }

        class Candidates
        {
            private:
                const TypeTable & _table;
                const TBox & _tbox;
                vector<int> _atoms;
                vector<Truth> _value;

                auto eval(const Concept & c) const -> Truth
                {
                    switch (c.kind()) {
                        case ConceptKind::top:
                            return Truth::yes;
                        case ConceptKind::bottom:
                            return Truth::no;
                        case ConceptKind::name:
                        case ConceptKind::exists:
                        case ConceptKind::forall:
                            return _value[*_table.index_of(c)];
                        case ConceptKind::negation: {
                            auto v = eval(c.operand());
                            return v == Truth::unknown ? v : (v == Truth::yes ? Truth::no : Truth::yes);
                        }
                        case ConceptKind::conjunction: {
                            auto l = eval(c.left()), r = eval(c.right());
                            if (l == Truth::no || r == Truth::no)
                                return Truth::no;
                            return l == Truth::yes && r == Truth::yes ? Truth::yes : Truth::unknown;
                        }
                        case ConceptKind::disjunction: {
                            auto l = eval(c.left()), r = eval(c.right());
                            if (l == Truth::yes || r == Truth::yes)
                                return Truth::yes;
                            return l == Truth::no && r == Truth::no ? Truth::no : Truth::unknown;
                        }
                        case ConceptKind::implication: {
                            auto l = eval(c.left()), r = eval(c.right());
                            if (l == Truth::no || r == Truth::yes)
                                return Truth::yes;
                            return l == Truth::yes && r == Truth::no ? Truth::no : Truth::unknown;
                        }
                    }
                    return Truth::unknown;
                }

                auto violated() const -> bool
                {
                    for (auto & ci : _tbox.inclusions)
                        if (eval(ci.lhs) == Truth::yes && eval(ci.rhs) == Truth::no)
                            return true;
                    return false;
                }

                void search(std::size_t k, vector<vector<bool>> & out)
                {
                    if (violated())
                        return;
                    if (k == _atoms.size()) {
                        vector<bool> bits(_table.base.size());
                        for (std::size_t i = 0 ; i < bits.size() ; ++i)
                            bits[i] = eval(_table.base[i]) == Truth::yes;
                        out.push_back(std::move(bits));
                        return;
                    }
                    for (auto v : {Truth::yes, Truth::no}) {
                        _value[_atoms[k]] = v;
                        search(k + 1, out);
                    }
                    _value[_atoms[k]] = Truth::unknown;
                }

            public:
                Candidates(const TypeTable & table, const TBox & tbox) :
                    _table(table),
                    _tbox(tbox),
                    _value(table.base.size(), Truth::unknown)
                {
                    for (std::size_t i = 0 ; i < table.base.size() ; ++i)
                        if (is_atom(table.base[i]))
                            _atoms.push_back(static_cast<int>(i));
                }

                auto all() -> vector<vector<bool>>
                {
                    vector<vector<bool>> out;
                    search(0, out);
                    return out;
                }
        };

        // Local constraints between a type and an r-neighbour.
        struct RoleConstraint
        {
            int atom;
            bool atom_value;    // atom holds (forall) or fails (exists)
            Concept filler;
            bool filler_value;
        };

        auto constraints_for(const TypeTable & table, const Role & r) -> vector<RoleConstraint>
        {
            vector<RoleConstraint> out;
            for (std::size_t i = 0 ; i < table.base.size() ; ++i) {
                auto & c = table.base[i];
                if (c.kind() == ConceptKind::forall && c.role() == r)
                    out.push_back({static_cast<int>(i), true, c.operand(), true});
                if (c.kind() == ConceptKind::exists && c.role() == r)
                    out.push_back({static_cast<int>(i), false, c.operand(), false});
            }
            return out;
        }

        auto value_in(const TypeTable & table, const vector<bool> & bits, const Concept & c) -> bool
        {
            if (c.kind() == ConceptKind::negation)
                return ! value_in(table, bits, c.operand());
            return bits[*table.index_of(c)];
        }

        auto compat(const TypeTable & table, const vector<bool> & t, const vector<bool> & u,
                const vector<RoleConstraint> & forward, const vector<RoleConstraint> & backward) -> bool
        {
            for (auto & k : forward)
                if (t[k.atom] == k.atom_value && value_in(table, u, k.filler) != k.filler_value)
                    return false;
            for (auto & k : backward)
                if (u[k.atom] == k.atom_value && value_in(table, t, k.filler) != k.filler_value)
                    return false;
            return true;
        }

        struct Demand
        {
            Role role;
            Concept filler;
            bool value;
        };

        auto demands_of(const TypeTable & table, const vector<bool> & t) -> vector<Demand>
        {
            vector<Demand> out;
            for (std::size_t i = 0 ; i < table.base.size() ; ++i) {
                auto & c = table.base[i];
                if (c.kind() == ConceptKind::exists && t[i])
                    out.push_back({c.role(), c.operand(), true});
                if (c.kind() == ConceptKind::forall && ! t[i])
                    out.push_back({c.role(), c.operand(), false});
            }
            return out;
        }

        auto uses_elimination(const TypeTable & table, const TypeOptions & opts) -> bool
        {
            if (opts.engine == TypeEngine::automatic)
                return table.effective.functional.empty();
            if (opts.engine == TypeEngine::elimination && ! table.effective.functional.empty())
                throw std::invalid_argument("type elimination does not support functional roles");
            return opts.engine == TypeEngine::elimination;
        }

        // Compatibility matrices for every role of the closure, inverses
        // included. All roles of the closure are needed, not just one
        // direction, because constraints come from both endpoints.
        auto compat_matrices(const TypeTable & table, const vector<vector<bool>> & cands)
            -> std::map<Role, vector<vector<bool>>>
        {
            std::map<Role, vector<vector<bool>>> out;
            auto n = cands.size();
            for (auto & r : table.roles) {
                if (r.inverted)
                    continue;
                auto fwd = constraints_for(table, r);
                auto bwd = constraints_for(table, r.inverse());
                vector<vector<bool>> m(n, vector<bool>(n, false));
                for (std::size_t a = 0 ; a < n ; ++a)
                    for (std::size_t b = 0 ; b < n ; ++b)
                        m[a][b] = compat(table, cands[a], cands[b], fwd, bwd);
                vector<vector<bool>> inv(n, vector<bool>(n, false));
                for (std::size_t a = 0 ; a < n ; ++a)
                    for (std::size_t b = 0 ; b < n ; ++b)
                        inv[b][a] = m[a][b];
                out[r] = std::move(m);
                out[r.inverse()] = std::move(inv);
            }
            return out;
        }

        void eliminate(TypeTable & table, vector<vector<bool>> cands, const TypeOptions & opts)
        {
            auto n = cands.size();
            auto m = compat_matrices(table, cands);
            vector<bool> alive(n, true);
            vector<vector<Demand>> demands(n);
            for (std::size_t a = 0 ; a < n ; ++a)
                demands[a] = demands_of(table, cands[a]);
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t a = 0 ; a < n ; ++a) {
                    if (! alive[a])
                        continue;
                    for (auto & d : demands[a]) {
                        bool ok = false;
                        auto & row = m.at(d.role)[a];
                        for (std::size_t b = 0 ; b < n && ! ok ; ++b)
                            ok = alive[b] && row[b] && value_in(table, cands[b], d.filler) == d.value;
                        if (! ok) {
                            alive[a] = false;
                            changed = true;
                            break;
                        }
                    }
                }
            }
            vector<int> keep;
            for (std::size_t a = 0 ; a < n ; ++a)
                if (alive[a]) {
                    keep.push_back(static_cast<int>(a));
                    table.types.push_back(cands[a]);
                }
            if (! opts.successors)
                return;
            for (auto & [r, mat] : m) {
                vector<vector<bool>> s(keep.size(), vector<bool>(keep.size(), false));
                for (std::size_t a = 0 ; a < keep.size() ; ++a)
                    for (std::size_t b = 0 ; b < keep.size() ; ++b)
                        s[a][b] = mat[keep[a]][keep[b]];
                table.succ[r] = std::move(s);
            }
        }

        auto build(TypeTable table, const TypeOptions & opts) -> TypeTable
        {
            auto cands = Candidates(table, table.effective).all();
            if (uses_elimination(table, opts)) {
                eliminate(table, std::move(cands), opts);
                return table;
            }
            for (auto & c : cands) {
                table.types.push_back(c);
                if (! is_satisfiable(table.conjunction(static_cast<int>(table.types.size()) - 1),
                            table.effective, opts.tableau))
                    table.types.pop_back();
            }
            if (opts.successors)
                compute_succ(table, opts);
            return table;
        }
    }

    void compute_succ(TypeTable & table, const TypeOptions & opts)
    {
        auto n = table.size();
        if (uses_elimination(table, opts)) {
            auto m = compat_matrices(table, table.types);
            table.succ = std::move(m);
            return;
        }
        table.succ.clear();
        for (auto & r : table.roles) {
            if (r.inverted)
                continue;
            auto fwd = constraints_for(table, r);
            auto bwd = constraints_for(table, r.inverse());
            vector<vector<bool>> m(n, vector<bool>(n, false));
            for (std::size_t a = 0 ; a < n ; ++a)
                for (std::size_t b = 0 ; b < n ; ++b) {
                    // local compatibility is necessary, so it filters the
                    // tableau calls
                    if (! compat(table, table.types[a], table.types[b], fwd, bwd))
                        continue;
                    auto c = Concept::conjunction(table.conjunction(static_cast<int>(a)),
                            Concept::exists(r, table.conjunction(static_cast<int>(b))));
                    m[a][b] = is_satisfiable(c, table.effective, opts.tableau);
                }
            vector<vector<bool>> inv(n, vector<bool>(n, false));
            for (std::size_t a = 0 ; a < n ; ++a)
                for (std::size_t b = 0 ; b < n ; ++b)
                    inv[b][a] = m[a][b];
            table.succ[r] = std::move(m);
            table.succ[r.inverse()] = std::move(inv);
        }
    }

    auto compute_types(const TBox & t, const Concept & c0, const TypeOptions & opts) -> TypeTable
    {
        return build(TypeTable(t, c0), opts);
    }

    auto types_omitting(const TBox & t, const Concept & c, const TypeOptions & opts) -> TypeTable
    {
        TypeTable table(t, c);
        table.effective.inclusions.push_back({c, Concept::bottom()});
        return build(std::move(table), opts);
    }
}
