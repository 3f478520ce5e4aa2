#include <omq/interpretation.hh>

using std::optional;
using std::pair;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    namespace
    {
        const vector<int> no_elements;
        const set<int> no_members;
        const set<pair<int, int>> no_pairs;
    }

    auto Interpretation::add_element(const string & name, bool named) -> int
    {
        if (auto it = _index.find(name) ; it != _index.end()) {
            if (named)
                _named[it->second] = true;
            return it->second;
        }
        int e = static_cast<int>(_names.size());
        _names.push_back(name);
        _named.push_back(named);
        _labels.emplace_back();
        _index.emplace(name, e);
        return e;
    }

    void Interpretation::add_concept(const string & name, int e)
    {
        _concepts[name].insert(e);
        _labels[e].insert(name);
    }

    void Interpretation::add_edge(const string & role, int from, int to)
    {
        auto & ext = _roles[role];
        if (! ext.pairs.insert({from, to}).second)
            return;
        std::size_t n = std::max<std::size_t>(from, to) + 1;
        if (ext.succ.size() < n) {
            ext.succ.resize(n);
            ext.pred.resize(n);
        }
        ext.succ[from].push_back(to);
        ext.pred[to].push_back(from);
    }

    void Interpretation::add_edge(const Role & role, int from, int to)
    {
        if (role.inverted)
            add_edge(role.name, to, from);
        else
            add_edge(role.name, from, to);
    }

    auto Interpretation::find(const string & name) const -> optional<int>
    {
        if (auto it = _index.find(name) ; it != _index.end())
            return it->second;
        return std::nullopt;
    }

    auto Interpretation::named_elements() const -> vector<int>
    {
        vector<int> out;
        for (std::size_t e = 0 ; e < _names.size() ; ++e)
            if (_named[e])
                out.push_back(static_cast<int>(e));
        return out;
    }

    auto Interpretation::has_concept(const string & name, int e) const -> bool
    {
        return _labels[e].contains(name);
    }

    auto Interpretation::has_edge(const string & role, int from, int to) const -> bool
    {
        auto it = _roles.find(role);
        return it != _roles.end() && it->second.pairs.contains({from, to});
    }

    auto Interpretation::has_edge(const Role & role, int from, int to) const -> bool
    {
        return role.inverted ? has_edge(role.name, to, from) : has_edge(role.name, from, to);
    }

    auto Interpretation::neighbours(const Role & role, int e) const -> const vector<int> &
    {
        auto it = _roles.find(role.name);
        if (it == _roles.end())
            return no_elements;
        auto & lists = role.inverted ? it->second.pred : it->second.succ;
        if (static_cast<std::size_t>(e) >= lists.size())
            return no_elements;
        return lists[e];
    }

    auto Interpretation::concept_names() const -> set<string>
    {
        set<string> out;
        for (auto & [c, m] : _concepts)
            if (! m.empty())
                out.insert(c);
        return out;
    }

    auto Interpretation::role_names() const -> set<string>
    {
        set<string> out;
        for (auto & [r, ext] : _roles)
            if (! ext.pairs.empty())
                out.insert(r);
        return out;
    }

    auto Interpretation::members(const string & name) const -> const set<int> &
    {
        auto it = _concepts.find(name);
        return it == _concepts.end() ? no_members : it->second;
    }

    auto Interpretation::edges(const string & role) const -> const set<pair<int, int>> &
    {
        auto it = _roles.find(role);
        return it == _roles.end() ? no_pairs : it->second.pairs;
    }

    auto Interpretation::edge_count() const -> std::size_t
    {
        std::size_t n = 0;
        for (auto & [r, ext] : _roles)
            n += ext.pairs.size();
        return n;
    }

    auto Interpretation::from_abox(const ABox & a) -> Interpretation
    {
        Interpretation i;
        for (auto & name : a.individuals())
            i.add_element(name, true);
        for (auto & ca : a.concept_assertions)
            i.add_concept(ca.concept_name, *i.find(ca.individual));
        for (auto & ra : a.role_assertions)
            i.add_edge(ra.role, *i.find(ra.from), *i.find(ra.to));
        return i;
    }

    auto Interpretation::to_abox() const -> ABox
    {
        ABox a;
        for (std::size_t e = 0 ; e < _names.size() ; ++e)
            a.add_individual(_names[e]);
        for (auto & [c, m] : _concepts)
            for (int e : m)
                a.add_concept(c, _names[e]);
        for (auto & [r, ext] : _roles)
            for (auto & [d, e] : ext.pairs)
                a.add_role(r, _names[d], _names[e]);
        // isolated keeps only elements without assertions
        auto with_assertions = ABox{a.concept_assertions, a.role_assertions, {}}.individuals();
        for (auto & n : with_assertions)
            a.isolated.erase(n);
        return a;
    }

    auto Interpretation::operator==(const Interpretation & other) const -> bool
    {
        if (size() != other.size())
            return false;
        for (std::size_t e = 0 ; e < size() ; ++e) {
            auto f = other.find(_names[e]);
            if (! f || other.is_named(*f) != is_named(e) || other.labels(*f) != labels(e))
                return false;
        }
        if (edge_count() != other.edge_count())
            return false;
        for (auto & [r, ext] : _roles)
            for (auto & [d, e] : ext.pairs)
                if (! other.has_edge(r, *other.find(_names[d]), *other.find(_names[e])))
                    return false;
        return true;
    }
}
