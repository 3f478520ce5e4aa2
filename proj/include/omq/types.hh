#ifndef OMQ_TYPES_HH
#define OMQ_TYPES_HH 1

#include <omq/concept.hh>
#include <omq/kb.hh>
#include <omq/tableau.hh>

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace omq
{
    // Subconcepts of T and C0 closed under single negation, in a fixed order.
    auto closure(const TBox &, const Concept & c0) -> std::vector<Concept>;

    enum class TypeEngine
    {
        automatic,      // elimination unless the TBox has functional roles
        elimination,
        tableau
    };

    struct TypeOptions
    {
        TypeEngine engine = TypeEngine::automatic;
        TableauOptions tableau;
        bool successors = true;
    };

    /**
     * A type is stored as one bit per base concept: base[i] is in the type
     * when the bit is set and its negation is in the type otherwise. Base
     * concepts are the closure members that are not negations.
     */
    class TypeTable
    {
        private:
            std::unordered_map<Concept, int, ConceptHash> _index;

        public:
            TBox tbox;
            Concept query;
            // The TBox the types are satisfiable against; tbox plus the
            // omission constraint for types_omitting.
            TBox effective;
            std::vector<Concept> base;
            std::vector<std::vector<bool>> types;
            std::vector<Role> roles;
            // succ[r][t][t'] iff t ~>_r t'
            std::map<Role, std::vector<std::vector<bool>>> succ;

            TypeTable() = default;
            TypeTable(const TBox &, const Concept & query);

            auto size() const -> std::size_t { return types.size(); }
            auto index_of(const Concept &) const -> std::optional<int>;

            // Membership of a closure concept (possibly a negation).
            auto contains(int t, const Concept &) const -> bool;
            auto members(int t) const -> std::vector<Concept>;
            auto conjunction(int t) const -> Concept;
            auto names(int t) const -> std::set<std::string>;
            auto related(int t, const Role &, int t2) const -> bool;

            auto find(const std::vector<bool> &) const -> std::optional<int>;
    };

    auto compute_types(const TBox &, const Concept & c0, const TypeOptions & = {}) -> TypeTable;

    // Fills succ for every role of the closure and its inverse.
    void compute_succ(TypeTable &, const TypeOptions & = {});

    // Types satisfiable in a model of T where C is empty.
    auto types_omitting(const TBox &, const Concept & c, const TypeOptions & = {}) -> TypeTable;
}

#endif
