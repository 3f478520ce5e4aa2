#ifndef OMQ_CONCEPT_HH
#define OMQ_CONCEPT_HH 1

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace omq
{
    struct Role
    {
        std::string name;
        bool inverted = false;

        auto inverse() const -> Role { return Role{name, ! inverted}; }
        auto to_string() const -> std::string;

        auto operator<=>(const Role &) const = default;
        auto operator==(const Role &) const -> bool = default;
    };

    enum class ConceptKind
    {
        top,
        bottom,
        name,
        negation,
        conjunction,
        disjunction,
        implication,
        exists,
        forall
    };

    /**
     * An immutable concept term. Copies share structure; comparison is
     * structural.
     *
     * Implication L -> R is kept as its own connective so that Horn
     * recognition can stay syntactic. nnf() expands it to not L or R.
     */
    class Concept
    {
        public:
            struct Node;

        private:
            std::shared_ptr<const Node> _node;

            explicit Concept(std::shared_ptr<const Node>);

        public:
            Concept();

            static auto top() -> Concept;
            static auto bottom() -> Concept;
            static auto name(std::string) -> Concept;
            static auto negation(Concept) -> Concept;
            static auto conjunction(Concept, Concept) -> Concept;
            static auto disjunction(Concept, Concept) -> Concept;
            static auto implication(Concept, Concept) -> Concept;
            static auto exists(Role, Concept) -> Concept;
            static auto forall(Role, Concept) -> Concept;

            // Folds left; empty input gives top (resp. bottom).
            static auto conjoin(const std::vector<Concept> &) -> Concept;
            static auto disjoin(const std::vector<Concept> &) -> Concept;

            auto kind() const -> ConceptKind;
            auto symbol() const -> const std::string &;
            auto role() const -> const Role &;
            auto operand() const -> const Concept &;
            auto left() const -> const Concept &;
            auto right() const -> const Concept &;

            auto size() const -> std::size_t;
            auto depth() const -> int;
            auto hash() const -> std::size_t;

            auto to_string() const -> std::string;

            friend auto compare(const Concept &, const Concept &) -> std::strong_ordering;
            auto operator<=>(const Concept & other) const -> std::strong_ordering { return compare(*this, other); }
            auto operator==(const Concept & other) const -> bool { return compare(*this, other) == 0; }
    };

    auto compare(const Concept &, const Concept &) -> std::strong_ordering;

    struct ConceptHash
    {
        auto operator()(const Concept & c) const -> std::size_t { return c.hash(); }
    };

    // Negation normal form over top, bottom, names, negated names, and, or,
    // exists, forall.
    auto nnf(const Concept &) -> Concept;
    auto negated_nnf(const Concept &) -> Concept;

    // Subconcepts in post-order, without duplicates.
    auto subconcepts(const Concept &) -> std::vector<Concept>;
    void collect_subconcepts(const Concept &, std::vector<Concept> & out, std::set<Concept> & seen);

    auto concept_names(const Concept &) -> std::set<std::string>;
    auto role_names(const Concept &) -> std::set<std::string>;
    auto uses_inverse(const Concept &) -> bool;

    // EL / ELI concepts: top, names, and, exists.
    auto is_eli(const Concept &) -> bool;
    auto is_el(const Concept &) -> bool;

    auto is_identifier(const std::string &) -> bool;
}

#endif
