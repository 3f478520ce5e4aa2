#include <omq/concept.hh>

#include <functional>
#include <stdexcept>

using std::set;
using std::string;
using std::vector;

namespace omq
{
    struct Concept::Node
    {
        ConceptKind kind;
        string symbol;
        Role role;
        Concept a, b;
        std::size_t size = 1;
        int depth = 0;
        std::size_t hash = 0;

        Node(ConceptKind k) : kind(k), a(nullptr), b(nullptr) {}
    };

    namespace
    {
        auto mix(std::size_t seed, std::size_t v) -> std::size_t
        {
            return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
        }

    }

    Concept::Concept(std::shared_ptr<const Node> n) : _node(std::move(n))
    {
    }

    Concept::Concept() : Concept(top())
    {
    }

    namespace
    {
        auto shared_top() -> const std::shared_ptr<const Concept::Node> &
        {
            static const std::shared_ptr<const Concept::Node> t = [] {
                auto n = std::make_shared<Concept::Node>(ConceptKind::top);
                n->hash = mix(0, static_cast<std::size_t>(ConceptKind::top));
                return n;
            }();
            return t;
        }
    }

    auto Concept::top() -> Concept
    {
        return Concept{shared_top()};
    }

    auto Concept::bottom() -> Concept
    {
        static const std::shared_ptr<const Node> t = [] {
            auto n = std::make_shared<Node>(ConceptKind::bottom);
            n->hash = mix(0, static_cast<std::size_t>(ConceptKind::bottom));
            return n;
        }();
        return Concept{t};
    }

    auto Concept::name(string s) -> Concept
    {
        auto n = std::make_shared<Node>(ConceptKind::name);
        n->hash = mix(static_cast<std::size_t>(ConceptKind::name), std::hash<string>{}(s));
        n->symbol = std::move(s);
        return Concept{n};
    }

    namespace
    {
        auto role_hash(const Role & r) -> std::size_t
        {
            return mix(std::hash<string>{}(r.name), r.inverted ? 1 : 2);
        }
    }

    auto Concept::negation(Concept c) -> Concept
    {
        auto n = std::make_shared<Node>(ConceptKind::negation);
        n->size = c.size() + 1;
        n->depth = c.depth();
        n->hash = mix(static_cast<std::size_t>(ConceptKind::negation), c.hash());
        n->a = std::move(c);
        return Concept{n};
    }

    namespace
    {
        auto binary(ConceptKind k, Concept l, Concept r) -> std::shared_ptr<Concept::Node>
        {
            auto n = std::make_shared<Concept::Node>(k);
            n->size = l.size() + r.size() + 1;
            n->depth = std::max(l.depth(), r.depth());
            n->hash = mix(mix(static_cast<std::size_t>(k), l.hash()), r.hash());
            n->a = std::move(l);
            n->b = std::move(r);
            return n;
        }

        auto quantified(ConceptKind k, Role r, Concept c) -> std::shared_ptr<Concept::Node>
        {
            auto n = std::make_shared<Concept::Node>(k);
            n->size = c.size() + 1;
            n->depth = c.depth() + 1;
            n->hash = mix(mix(static_cast<std::size_t>(k), role_hash(r)), c.hash());
            n->role = std::move(r);
            n->a = std::move(c);
            return n;
        }
    }

    auto Concept::conjunction(Concept l, Concept r) -> Concept
    {
        return Concept{binary(ConceptKind::conjunction, std::move(l), std::move(r))};
    }

    auto Concept::disjunction(Concept l, Concept r) -> Concept
    {
        return Concept{binary(ConceptKind::disjunction, std::move(l), std::move(r))};
    }

    auto Concept::implication(Concept l, Concept r) -> Concept
    {
        return Concept{binary(ConceptKind::implication, std::move(l), std::move(r))};
    }

    auto Concept::exists(Role r, Concept c) -> Concept
    {
        return Concept{quantified(ConceptKind::exists, std::move(r), std::move(c))};
    }

    auto Concept::forall(Role r, Concept c) -> Concept
    {
        return Concept{quantified(ConceptKind::forall, std::move(r), std::move(c))};
    }

    auto Concept::conjoin(const vector<Concept> & cs) -> Concept
    {
        if (cs.empty())
            return top();
        Concept result = cs.front();
        for (std::size_t i = 1 ; i < cs.size() ; ++i)
            result = conjunction(result, cs[i]);
        return result;
    }

    auto Concept::disjoin(const vector<Concept> & cs) -> Concept
    {
        if (cs.empty())
            return bottom();
        Concept result = cs.front();
        for (std::size_t i = 1 ; i < cs.size() ; ++i)
            result = disjunction(result, cs[i]);
        return result;
    }

    auto Concept::kind() const -> ConceptKind
    {
        return _node->kind;
    }

    auto Concept::symbol() const -> const string &
    {
        return _node->symbol;
    }

    auto Concept::role() const -> const Role &
    {
        return _node->role;
    }

    auto Concept::operand() const -> const Concept &
    {
        return _node->a;
    }

    auto Concept::left() const -> const Concept &
    {
        return _node->a;
    }

    auto Concept::right() const -> const Concept &
    {
        return _node->b;
    }

    auto Concept::size() const -> std::size_t
    {
        return _node->size;
    }

    auto Concept::depth() const -> int
    {
        return _node->depth;
    }

    auto Concept::hash() const -> std::size_t
    {
        return _node->hash;
    }

    auto compare(const Concept & x, const Concept & y) -> std::strong_ordering
    {
        if (x._node == y._node)
            return std::strong_ordering::equal;
        if (auto c = x.kind() <=> y.kind() ; c != 0)
            return c;
        if (auto c = x.hash() <=> y.hash() ; c != 0)
            return c;
        switch (x.kind()) {
            case ConceptKind::top:
            case ConceptKind::bottom:
                return std::strong_ordering::equal;
            case ConceptKind::name:
                return x.symbol() <=> y.symbol();
            case ConceptKind::negation:
                return compare(x.operand(), y.operand());
            case ConceptKind::conjunction:
            case ConceptKind::disjunction:
            case ConceptKind::implication:
                if (auto c = compare(x.left(), y.left()) ; c != 0)
                    return c;
                return compare(x.right(), y.right());
            case ConceptKind::exists:
            case ConceptKind::forall:
                if (auto c = x.role() <=> y.role() ; c != 0)
                    return c;
                return compare(x.operand(), y.operand());
        }
        return std::strong_ordering::equal;
    }

    auto Role::to_string() const -> string
    {
        return inverted ? "inv(" + name + ")" : name;
    }

    namespace
    {
        // 1: implication, 2: or, 3: and, 4: unary and atoms
        auto precedence(const Concept & c) -> int
        {
            switch (c.kind()) {
                case ConceptKind::implication: return 1;
                case ConceptKind::disjunction: return 2;
                case ConceptKind::conjunction: return 3;
                default: return 4;
            }
        }

        void print(const Concept & c, string & out);

        void print_at(const Concept & c, int min_prec, string & out)
        {
            if (precedence(c) < min_prec) {
                out += '(';
                print(c, out);
                out += ')';
            }
            else
                print(c, out);
        }

        void print(const Concept & c, string & out)
        {
            switch (c.kind()) {
                case ConceptKind::top: out += "top"; break;
                case ConceptKind::bottom: out += "bot"; break;
                case ConceptKind::name: out += c.symbol(); break;
                case ConceptKind::negation:
                    out += "not ";
                    print_at(c.operand(), 4, out);
                    break;
                case ConceptKind::conjunction:
                    print_at(c.left(), 3, out);
                    out += " and ";
                    print_at(c.right(), 4, out);
                    break;
                case ConceptKind::disjunction:
                    print_at(c.left(), 2, out);
                    out += " or ";
                    print_at(c.right(), 3, out);
                    break;
                case ConceptKind::implication:
                    print_at(c.left(), 2, out);
                    out += " -> ";
                    print_at(c.right(), 1, out);
                    break;
                case ConceptKind::exists:
                case ConceptKind::forall:
                    out += c.kind() == ConceptKind::exists ? "some " : "all ";
                    out += c.role().to_string();
                    out += '.';
                    print_at(c.operand(), 4, out);
                    break;
            }
        }
    }

    auto Concept::to_string() const -> string
    {
        string out;
        print(*this, out);
        return out;
    }

    namespace
    {
        auto nnf_impl(const Concept & c, bool negate) -> Concept
        {
            switch (c.kind()) {
                case ConceptKind::top: return negate ? Concept::bottom() : c;
                case ConceptKind::bottom: return negate ? Concept::top() : c;
                case ConceptKind::name: return negate ? Concept::negation(c) : c;
                case ConceptKind::negation: return nnf_impl(c.operand(), ! negate);
                case ConceptKind::conjunction:
                    if (negate)
                        return Concept::disjunction(nnf_impl(c.left(), true), nnf_impl(c.right(), true));
                    return Concept::conjunction(nnf_impl(c.left(), false), nnf_impl(c.right(), false));
                case ConceptKind::disjunction:
                    if (negate)
                        return Concept::conjunction(nnf_impl(c.left(), true), nnf_impl(c.right(), true));
                    return Concept::disjunction(nnf_impl(c.left(), false), nnf_impl(c.right(), false));
                case ConceptKind::implication:
                    if (negate)
                        return Concept::conjunction(nnf_impl(c.left(), false), nnf_impl(c.right(), true));
                    return Concept::disjunction(nnf_impl(c.left(), true), nnf_impl(c.right(), false));
                case ConceptKind::exists:
                    if (negate)
                        return Concept::forall(c.role(), nnf_impl(c.operand(), true));
                    return Concept::exists(c.role(), nnf_impl(c.operand(), false));
                case ConceptKind::forall:
                    if (negate)
                        return Concept::exists(c.role(), nnf_impl(c.operand(), true));
                    return Concept::forall(c.role(), nnf_impl(c.operand(), false));
            }
            throw std::logic_error("unreachable concept kind");
        }
    }

    auto nnf(const Concept & c) -> Concept
    {
        return nnf_impl(c, false);
    }

    auto negated_nnf(const Concept & c) -> Concept
    {
        return nnf_impl(c, true);
    }

    void collect_subconcepts(const Concept & c, vector<Concept> & out, set<Concept> & seen)
    {
        if (seen.contains(c))
            return;
        switch (c.kind()) {
            case ConceptKind::negation:
            case ConceptKind::exists:
            case ConceptKind::forall:
                collect_subconcepts(c.operand(), out, seen);
                break;
            case ConceptKind::conjunction:
            case ConceptKind::disjunction:
            case ConceptKind::implication:
                collect_subconcepts(c.left(), out, seen);
                collect_subconcepts(c.right(), out, seen);
                break;
            default:
                break;
        }
        if (seen.insert(c).second)
            out.push_back(c);
    }

    auto subconcepts(const Concept & c) -> vector<Concept>
    {
        vector<Concept> out;
        set<Concept> seen;
        collect_subconcepts(c, out, seen);
        return out;
    }

    namespace
    {
        template <typename F>
        void walk(const Concept & c, F && f)
        {
            f(c);
            switch (c.kind()) {
                case ConceptKind::negation:
                case ConceptKind::exists:
                case ConceptKind::forall:
                    walk(c.operand(), f);
                    break;
                case ConceptKind::conjunction:
                case ConceptKind::disjunction:
                case ConceptKind::implication:
                    walk(c.left(), f);
                    walk(c.right(), f);
                    break;
                default:
                    break;
            }
        }
    }

    auto concept_names(const Concept & c) -> set<string>
    {
        set<string> out;
        walk(c, [&] (const Concept & d) {
            if (d.kind() == ConceptKind::name)
                out.insert(d.symbol());
        });
        return out;
    }

    auto role_names(const Concept & c) -> set<string>
    {
        set<string> out;
        walk(c, [&] (const Concept & d) {
            if (d.kind() == ConceptKind::exists || d.kind() == ConceptKind::forall)
                out.insert(d.role().name);
        });
        return out;
    }

    auto uses_inverse(const Concept & c) -> bool
    {
        bool found = false;
        walk(c, [&] (const Concept & d) {
            if ((d.kind() == ConceptKind::exists || d.kind() == ConceptKind::forall) && d.role().inverted)
                found = true;
        });
        return found;
    }

    auto is_eli(const Concept & c) -> bool
    {
        switch (c.kind()) {
            case ConceptKind::top:
            case ConceptKind::name:
                return true;
            case ConceptKind::conjunction:
                return is_eli(c.left()) && is_eli(c.right());
            case ConceptKind::exists:
                return is_eli(c.operand());
            default:
                return false;
        }
    }

    auto is_el(const Concept & c) -> bool
    {
        return is_eli(c) && ! uses_inverse(c);
    }

    auto is_identifier(const string & s) -> bool
    {
        if (s.empty())
            return false;
        auto first = s.front();
        if (! (std::isalpha(static_cast<unsigned char>(first)) || first == '_'))
            return false;
        for (char ch : s)
            if (! (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
                return false;
        return true;
    }
}
