#include <omq/csp.hh>
#include <omq/homomorphism.hh>
#include <omq/interpretation.hh>
#include <omq/semantics.hh>

#include <algorithm>
#include <stdexcept>
#include <tuple>

using std::map;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    auto restrict_abox(const ABox & a, const Signature & sigma) -> ABox
    {
        ABox out;
        for (auto & ca : a.concept_assertions)
            if (sigma.contains_concept(ca.concept_name))
                out.concept_assertions.insert(ca);
        for (auto & ra : a.role_assertions)
            if (sigma.contains_role(ra.role))
                out.role_assertions.insert(ra);
        auto kept = out.individuals();
        for (auto & n : a.individuals())
            if (! kept.contains(n))
                out.add_individual(n);
        return out;
    }

    auto csp_hom(const ABox & a, const ABox & templ) -> optional<map<string, string>>
    {
        auto source = Interpretation::from_abox(a);
        auto target = Interpretation::from_abox(templ);
        auto h = find_homomorphism(source, target, {});
        if (! h)
            return std::nullopt;
        map<string, string> out;
        for (std::size_t d = 0 ; d < source.size() ; ++d)
            out[source.name(static_cast<int>(d))] = target.name((*h)[d]);
        return out;
    }

    auto template_signature(const TBox & t, const Concept & q) -> Signature
    {
        auto sigma = signature(t);
        auto names = concept_names(q);
        auto roles = role_names(q);
        sigma.concepts.insert(names.begin(), names.end());
        sigma.roles.insert(roles.begin(), roles.end());
        return sigma;
    }

    auto template_from_omq(const TBox & t, const Concept & q, const TypeOptions & opts) -> ABox
    {
        if (has_functional(dialect(t)))
            throw std::invalid_argument("templates are only built for ALC and ALCI TBoxes");
        auto opts2 = opts;
        opts2.successors = true;
        auto table = types_omitting(t, q, opts2);
        ABox out;
        auto name = [](std::size_t k) { return "t" + std::to_string(k); };
        for (std::size_t k = 0 ; k < table.size() ; ++k) {
            out.add_individual(name(k));
            for (auto & a : table.names(static_cast<int>(k)))
                out.add_concept(a, name(k));
        }
        for (auto & r : table.roles) {
            if (r.inverted)
                continue;
            for (std::size_t i = 0 ; i < table.size() ; ++i)
                for (std::size_t j = 0 ; j < table.size() ; ++j)
                    if (table.related(static_cast<int>(i), r, static_cast<int>(j)))
                        out.add_role(r.name, name(i), name(j));
        }
        auto used = ABox{out.concept_assertions, out.role_assertions, {}}.individuals();
        for (auto & n : used)
            out.isolated.erase(n);
        return out;
    }

    auto booleanize_eliq(const TBox & t, const ABox & a, const Concept & c, const string & individual) -> Booleanized
    {
        if (! a.individuals().contains(individual))
            throw std::invalid_argument("individual " + individual + " does not occur in the ABox");
        auto used = t.concept_names();
        for (auto & n : a.signature().concepts)
            used.insert(n);
        for (auto & n : concept_names(c))
            used.insert(n);
        Booleanized out;
        out.marker = fresh_name("P", used);
        out.tbox = t;
        out.abox = a;
        out.abox.add_concept(out.marker, individual);
        out.abox.isolated.erase(individual);
        out.query = Concept::conjunction(Concept::name(out.marker), c);
        return out;
    }

    namespace
    {
        struct State
        {
            int tail;
            int parent = -1;
            Role via;
        };

        auto label_fit(const Interpretation & s, int d, const Interpretation & g, int e) -> bool
        {
            for (auto & c : s.labels(d))
                if (! g.has_concept(c, e))
                    return false;
            return true;
        }

        auto refine(const ABox & a, const ABox & templ, bool unravel) -> bool
        {
            auto source = Interpretation::from_abox(a);
            auto target = Interpretation::from_abox(templ);
            if (source.size() == 0)
                return true;
            if (target.size() == 0)
                return false;

            vector<Role> roles;
            for (auto & r : source.role_names()) {
                roles.push_back(Role{r, false});
                roles.push_back(Role{r, true});
            }
            vector<State> states;
            map<std::tuple<int, Role, int>, int> edge_state;
            for (std::size_t d = 0 ; d < source.size() ; ++d)
                states.push_back({static_cast<int>(d)});
            if (unravel)
                for (auto & r : roles)
                    for (std::size_t d = 0 ; d < source.size() ; ++d)
                        for (int e : source.neighbours(r, static_cast<int>(d))) {
                            edge_state[{static_cast<int>(d), r, e}] = static_cast<int>(states.size());
                            states.push_back({e, static_cast<int>(d), r});
                        }

            struct Child
            {
                Role role;
                int state;
            };
            vector<vector<Child>> children(states.size());
            for (std::size_t s = 0 ; s < states.size() ; ++s) {
                auto & st = states[s];
                for (auto & r : roles)
                    for (int c : source.neighbours(r, st.tail)) {
                        if (! unravel) {
                            children[s].push_back({r, c});
                            continue;
                        }
                        if (st.parent >= 0 && r == st.via.inverse() && c == st.parent)
                            continue;
                        children[s].push_back({r, edge_state.at({st.tail, r, c})});
                    }
            }

            auto m = target.size();
            vector<vector<char>> dom(states.size(), vector<char>(m, 0));
            for (std::size_t s = 0 ; s < states.size() ; ++s)
                for (std::size_t x = 0 ; x < m ; ++x)
                    dom[s][x] = label_fit(source, states[s].tail, target, static_cast<int>(x));

            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t s = 0 ; s < states.size() ; ++s)
                    for (std::size_t x = 0 ; x < m ; ++x) {
                        if (! dom[s][x])
                            continue;
                        for (auto & ch : children[s]) {
                            bool supported = false;
                            for (int y : target.neighbours(ch.role, static_cast<int>(x)))
                                if (dom[ch.state][y]) {
                                    supported = true;
                                    break;
                                }
                            if (! supported) {
                                dom[s][x] = 0;
                                changed = true;
                                break;
                            }
                        }
                    }
            }
            for (std::size_t d = 0 ; d < source.size() ; ++d)
                if (std::find(dom[d].begin(), dom[d].end(), 1) == dom[d].end())
                    return false;
            return true;
        }
    }

    auto unraveling_hom(const ABox & a, const ABox & templ) -> bool
    {
        return refine(a, templ, true);
    }

    auto arc_consistent(const ABox & a, const ABox & templ) -> bool
    {
        return refine(a, templ, false);
    }

    auto unraveling_entails(const TBox & t, const Concept & q, const ABox & a, const TypeOptions & opts) -> bool
    {
        auto templ = template_from_omq(t, q, opts);
        return ! unraveling_hom(restrict_abox(a, template_signature(t, q)), templ);
    }

    auto abstraction_concept(const HiddenSymbols & h) -> Concept
    {
        return Concept::forall(Role{h.r, false},
                Concept::exists(Role{h.s, false}, Concept::negation(Concept::name(h.z))));
    }

    auto Abstraction::combined() const -> TBox
    {
        TBox out = abstracted;
        out.inclusions.insert(out.inclusions.end(), existential.inclusions.begin(), existential.inclusions.end());
        return out;
    }

    namespace
    {
        auto substitute(const Concept & c, const map<string, Concept> & by) -> Concept
        {
            switch (c.kind()) {
                case ConceptKind::top:
                case ConceptKind::bottom:
                    return c;
                case ConceptKind::name:
                    if (auto it = by.find(c.symbol()) ; it != by.end())
                        return it->second;
                    return c;
                case ConceptKind::negation:
                    return Concept::negation(substitute(c.operand(), by));
                case ConceptKind::conjunction:
                    return Concept::conjunction(substitute(c.left(), by), substitute(c.right(), by));
                case ConceptKind::disjunction:
                    return Concept::disjunction(substitute(c.left(), by), substitute(c.right(), by));
                case ConceptKind::implication:
                    return Concept::implication(substitute(c.left(), by), substitute(c.right(), by));
                case ConceptKind::exists:
                    return Concept::exists(c.role(), substitute(c.operand(), by));
                case ConceptKind::forall:
                    return Concept::forall(c.role(), substitute(c.operand(), by));
            }
            return c;
        }
    }

    auto enriched_abstraction(const TBox & t, const Signature & sigma) -> Abstraction
    {
        for (auto & r : t.role_names())
            if (! sigma.contains_role(r))
                throw std::invalid_argument("the signature must contain every role name of the TBox; missing " + r);
        set<string> used = t.concept_names();
        auto roles = t.role_names();
        used.insert(roles.begin(), roles.end());
        used.insert(sigma.concepts.begin(), sigma.concepts.end());
        used.insert(sigma.roles.begin(), sigma.roles.end());

        Abstraction out;
        map<string, Concept> by;
        for (auto & b : t.concept_names()) {
            if (sigma.contains_concept(b))
                continue;
            HiddenSymbols h;
            h.z = fresh_name("Z_" + b, used);
            used.insert(h.z);
            h.r = fresh_name("r_" + b, used);
            used.insert(h.r);
            h.s = fresh_name("s_" + b, used);
            used.insert(h.s);
            by.emplace(b, abstraction_concept(h));
            out.hidden.emplace(b, h);
            out.existential.inclusions.push_back(
                    {Concept::top(), Concept::exists(Role{h.r, false}, Concept::top())});
            out.existential.inclusions.push_back(
                    {Concept::top(), Concept::exists(Role{h.s, false}, Concept::name(h.z))});
        }
        out.abstracted.functional = t.functional;
        for (auto & ci : t.inclusions)
            out.abstracted.inclusions.push_back({substitute(ci.lhs, by), substitute(ci.rhs, by)});
        return out;
    }

    auto tbox_from_template(const ABox & templ) -> EncodedTemplate
    {
        return tbox_from_template(templ, templ.signature());
    }

    auto tbox_from_template(const ABox & templ, const Signature & sigma) -> EncodedTemplate
    {
        EncodedTemplate out;
        out.sigma = sigma;
        set<string> used = sigma.concepts;
        used.insert(sigma.roles.begin(), sigma.roles.end());
        used.insert(out.marker);

        auto elements = templ.individuals();
        vector<Concept> names;
        for (auto & d : elements) {
            auto a = fresh_name("_Ad_" + d, used);
            used.insert(a);
            out.element_names[d] = a;
            names.push_back(Concept::name(a));
        }
        auto cover = Concept::disjoin(names);
        auto & h = out.raw.inclusions;
        for (auto & r : sigma.roles)
            h.push_back({Concept::exists(Role{r, false}, Concept::top()), cover});
        for (auto & a : sigma.concepts)
            h.push_back({Concept::name(a), cover});
        for (auto & r : sigma.roles)
            h.push_back({Concept::top(), Concept::forall(Role{r, false}, cover)});
        for (auto d = elements.begin() ; d != elements.end() ; ++d)
            for (auto e = std::next(d) ; e != elements.end() ; ++e)
                h.push_back({Concept::conjunction(Concept::name(out.element_names[*d]),
                            Concept::name(out.element_names[*e])), Concept::bottom()});
        for (auto & d : elements)
            for (auto & e : elements)
                for (auto & r : sigma.roles)
                    if (! templ.has_role(r, d, e))
                        h.push_back({Concept::conjunction(Concept::name(out.element_names[d]),
                                    Concept::exists(Role{r, false}, Concept::name(out.element_names[e]))),
                                Concept::bottom()});
        for (auto & d : elements)
            for (auto & a : sigma.concepts)
                if (! templ.has_concept(a, d))
                    h.push_back({Concept::conjunction(Concept::name(out.element_names[d]), Concept::name(a)),
                            Concept::bottom()});
        out.abstraction = enriched_abstraction(out.raw, sigma);
        out.tbox = out.abstraction.combined();
        return out;
    }

    auto admits_trivial_models(const TBox & t) -> bool
    {
        Interpretation i;
        i.add_element("d", false);
        return is_model(i, t);
    }
}
