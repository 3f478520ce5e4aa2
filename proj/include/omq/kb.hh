#ifndef OMQ_KB_HH
#define OMQ_KB_HH 1

#include <omq/concept.hh>

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace omq
{
    struct Inclusion
    {
        Concept lhs, rhs;

        auto operator<=>(const Inclusion &) const = default;
        auto operator==(const Inclusion &) const -> bool = default;
    };

    struct TBox
    {
        std::vector<Inclusion> inclusions;
        std::set<Role> functional;

        auto operator==(const TBox &) const -> bool = default;

        auto concept_names() const -> std::set<std::string>;
        auto role_names() const -> std::set<std::string>;
        auto size() const -> std::size_t;
        auto depth() const -> int;
    };

    struct Signature
    {
        std::set<std::string> concepts;
        std::set<std::string> roles;

        auto operator==(const Signature &) const -> bool = default;

        auto contains_concept(const std::string & s) const -> bool { return concepts.contains(s); }
        auto contains_role(const std::string & s) const -> bool { return roles.contains(s); }
        void merge(const Signature &);
    };

    struct ConceptAssertion
    {
        std::string concept_name;
        std::string individual;

        auto operator<=>(const ConceptAssertion &) const = default;
        auto operator==(const ConceptAssertion &) const -> bool = default;
    };

    struct RoleAssertion
    {
        std::string role;
        std::string from, to;

        auto operator<=>(const RoleAssertion &) const = default;
        auto operator==(const RoleAssertion &) const -> bool = default;
    };

    /**
     * Assertions are kept sorted. Individuals that occur in no assertion can
     * be declared explicitly; this only arises for templates and for
     * signature restrictions, which may drop every assertion of an
     * individual.
     */
    struct ABox
    {
        std::set<ConceptAssertion> concept_assertions;
        std::set<RoleAssertion> role_assertions;
        std::set<std::string> isolated;

        auto operator==(const ABox &) const -> bool = default;

        void add_concept(const std::string & c, const std::string & a) { concept_assertions.insert({c, a}); }
        void add_role(const std::string & r, const std::string & a, const std::string & b) { role_assertions.insert({r, a, b}); }
        void add_individual(const std::string & a) { isolated.insert(a); }

        auto individuals() const -> std::set<std::string>;
        auto signature() const -> Signature;
        auto size() const -> std::size_t { return concept_assertions.size() + role_assertions.size(); }
        auto empty() const -> bool { return concept_assertions.empty() && role_assertions.empty() && isolated.empty(); }
        auto has_concept(const std::string & c, const std::string & a) const -> bool;
        auto has_role(const std::string & r, const std::string & a, const std::string & b) const -> bool;

        void merge(const ABox &);
    };

    enum class Dialect
    {
        alc,
        alci,
        alcf,
        alcfi
    };

    auto to_string(Dialect) -> std::string;

    auto dialect(const TBox &) -> Dialect;
    auto has_inverse(Dialect) -> bool;
    auto has_functional(Dialect) -> bool;

    auto is_depth_one(const TBox &) -> bool;

    auto is_horn_alcfi(const TBox &) -> bool;
    auto is_horn_l(const Concept &) -> bool;
    auto is_horn_r(const Concept &) -> bool;

    auto signature(const TBox &) -> Signature;

    // A name of the form base, base1, base2, ... that is not in used.
    auto fresh_name(const std::string & base, const std::set<std::string> & used) -> std::string;
}

#endif
