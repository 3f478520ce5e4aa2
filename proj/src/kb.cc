#include <omq/kb.hh>

using std::set;
using std::string;

namespace omq
{
    auto TBox::concept_names() const -> set<string>
    {
        set<string> out;
        for (auto & ci : inclusions) {
            out.merge(omq::concept_names(ci.lhs));
            out.merge(omq::concept_names(ci.rhs));
        }
        return out;
    }

    auto TBox::role_names() const -> set<string>
    {
        set<string> out;
        for (auto & ci : inclusions) {
            out.merge(omq::role_names(ci.lhs));
            out.merge(omq::role_names(ci.rhs));
        }
        for (auto & r : functional)
            out.insert(r.name);
        return out;
    }

    auto TBox::size() const -> std::size_t
    {
        std::size_t n = functional.size();
        for (auto & ci : inclusions)
            n += ci.lhs.size() + ci.rhs.size();
        return n;
    }

    auto TBox::depth() const -> int
    {
        int d = 0;
        for (auto & ci : inclusions)
            d = std::max({d, ci.lhs.depth(), ci.rhs.depth()});
        return d;
    }

    void Signature::merge(const Signature & other)
    {
        concepts.insert(other.concepts.begin(), other.concepts.end());
        roles.insert(other.roles.begin(), other.roles.end());
    }

    auto ABox::individuals() const -> set<string>
    {
        set<string> out = isolated;
        for (auto & a : concept_assertions)
            out.insert(a.individual);
        for (auto & a : role_assertions) {
            out.insert(a.from);
            out.insert(a.to);
        }
        return out;
    }

    auto ABox::signature() const -> Signature
    {
        Signature sig;
        for (auto & a : concept_assertions)
            sig.concepts.insert(a.concept_name);
        for (auto & a : role_assertions)
            sig.roles.insert(a.role);
        return sig;
    }

    auto ABox::has_concept(const string & c, const string & a) const -> bool
    {
        return concept_assertions.contains({c, a});
    }

    auto ABox::has_role(const string & r, const string & a, const string & b) const -> bool
    {
        return role_assertions.contains({r, a, b});
    }

    void ABox::merge(const ABox & other)
    {
        concept_assertions.insert(other.concept_assertions.begin(), other.concept_assertions.end());
        role_assertions.insert(other.role_assertions.begin(), other.role_assertions.end());
        isolated.insert(other.isolated.begin(), other.isolated.end());
    }

    auto to_string(Dialect d) -> string
    {
        switch (d) {
            case Dialect::alc: return "ALC";
            case Dialect::alci: return "ALCI";
            case Dialect::alcf: return "ALCF";
            case Dialect::alcfi: return "ALCFI";
        }
        return "?";
    }

    auto dialect(const TBox & t) -> Dialect
    {
        bool inv = false;
        for (auto & ci : t.inclusions)
            inv = inv || uses_inverse(ci.lhs) || uses_inverse(ci.rhs);
        for (auto & r : t.functional)
            inv = inv || r.inverted;
        bool func = ! t.functional.empty();
        if (inv)
            return func ? Dialect::alcfi : Dialect::alci;
        return func ? Dialect::alcf : Dialect::alc;
    }

    auto has_inverse(Dialect d) -> bool
    {
        return d == Dialect::alci || d == Dialect::alcfi;
    }

    auto has_functional(Dialect d) -> bool
    {
        return d == Dialect::alcf || d == Dialect::alcfi;
    }

    namespace
    {
        auto quantifier_free(const Concept & c) -> bool
        {
            return c.depth() == 0;
        }

        auto depth_one(const Concept & c) -> bool
        {
            switch (c.kind()) {
                case ConceptKind::exists:
                case ConceptKind::forall:
                    return quantifier_free(c.operand());
                case ConceptKind::negation:
                    return depth_one(c.operand());
                case ConceptKind::conjunction:
                case ConceptKind::disjunction:
                case ConceptKind::implication:
                    return depth_one(c.left()) && depth_one(c.right());
                default:
                    return true;
            }
        }
    }

    auto is_depth_one(const TBox & t) -> bool
    {
        for (auto & ci : t.inclusions)
            if (! depth_one(ci.lhs) || ! depth_one(ci.rhs))
                return false;
        return true;
    }

    auto is_horn_l(const Concept & c) -> bool
    {
        switch (c.kind()) {
            case ConceptKind::top:
            case ConceptKind::bottom:
            case ConceptKind::name:
                return true;
            case ConceptKind::conjunction:
            case ConceptKind::disjunction:
                return is_horn_l(c.left()) && is_horn_l(c.right());
            case ConceptKind::exists:
                return is_horn_l(c.operand());
            default:
                return false;
        }
    }

    auto is_horn_r(const Concept & c) -> bool
    {
        switch (c.kind()) {
            case ConceptKind::top:
            case ConceptKind::bottom:
            case ConceptKind::name:
                return true;
            case ConceptKind::negation:
                return c.operand().kind() == ConceptKind::name;
            case ConceptKind::conjunction:
                return is_horn_r(c.left()) && is_horn_r(c.right());
            case ConceptKind::implication:
                return is_horn_l(c.left()) && is_horn_r(c.right());
            case ConceptKind::exists:
            case ConceptKind::forall:
                return is_horn_r(c.operand());
            default:
                return false;
        }
    }

    auto is_horn_alcfi(const TBox & t) -> bool
    {
        for (auto & ci : t.inclusions)
            if (! is_horn_l(ci.lhs) || ! is_horn_r(ci.rhs))
                return false;
        return true;
    }

    auto signature(const TBox & t) -> Signature
    {
        return Signature{t.concept_names(), t.role_names()};
    }

    auto fresh_name(const string & base, const set<string> & used) -> string
    {
        if (! used.contains(base))
            return base;
        for (unsigned i = 1 ; ; ++i) {
            auto candidate = base + std::to_string(i);
            if (! used.contains(candidate))
                return candidate;
        }
    }
}
