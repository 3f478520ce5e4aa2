#ifndef OMQ_QUERY_HH
#define OMQ_QUERY_HH 1

#include <omq/concept.hh>
#include <omq/kb.hh>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace omq
{
    struct Atom
    {
        std::string predicate;
        std::vector<std::string> args;

        auto operator<=>(const Atom &) const = default;
        auto operator==(const Atom &) const -> bool = default;
        auto to_string() const -> std::string;
    };

    /**
     * A conjunctive query. An answer variable may occur in no atom; it then
     * ranges over every individual (this is how top(x) is translated).
     */
    struct CQ
    {
        std::vector<std::string> answer_vars;
        std::vector<Atom> atoms;

        auto operator==(const CQ &) const -> bool = default;
        auto variables() const -> std::vector<std::string>;
    };

    struct UCQ
    {
        std::vector<std::string> answer_vars;
        std::vector<CQ> disjuncts;

        auto operator==(const UCQ &) const -> bool = default;
    };

    enum class FormulaKind
    {
        atom,
        conjunction,
        disjunction,
        exists
    };

    struct Formula
    {
        FormulaKind kind = FormulaKind::conjunction;
        Atom atom;
        std::vector<std::string> bound;
        std::vector<Formula> children;

        auto operator==(const Formula &) const -> bool = default;

        static auto make_atom(Atom) -> Formula;
        static auto make_and(std::vector<Formula>) -> Formula;
        static auto make_or(std::vector<Formula>) -> Formula;
        static auto make_exists(std::vector<std::string>, Formula) -> Formula;

        auto node_count() const -> std::size_t;
    };

    struct PEQ
    {
        std::vector<std::string> answer_vars;
        Formula body;

        auto operator==(const PEQ &) const -> bool = default;
    };

    // C(x) for an answer variable x, or the Boolean form exists x. C(x).
    struct TreeQuery
    {
        Concept expr;
        bool boolean = false;
        std::string var = "x";

        auto operator==(const TreeQuery &) const -> bool = default;
    };

    enum class QueryKind
    {
        elq,
        eliq,
        cq,
        ucq,
        peq
    };

    auto to_string(QueryKind) -> std::string;

    struct Query
    {
        std::variant<TreeQuery, CQ, UCQ, PEQ> body;

        auto operator==(const Query &) const -> bool = default;

        auto kind() const -> QueryKind;
        auto arity() const -> std::size_t;
        auto answer_vars() const -> std::vector<std::string>;
        auto signature() const -> Signature;

        auto is_tree() const -> bool { return std::holds_alternative<TreeQuery>(body); }
        auto tree() const -> const TreeQuery & { return std::get<TreeQuery>(body); }

        static auto eliq(Concept c, std::string var = "x") -> Query;
        static auto boolean_eliq(Concept c) -> Query;
    };

    struct SizeGuardExceeded : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    auto peq_to_ucq(const PEQ &, std::size_t max_disjuncts = 4096) -> UCQ;
    auto to_ucq(const Query &, std::size_t max_disjuncts = 4096) -> UCQ;
    auto eliq_to_cq(const TreeQuery &) -> CQ;

    auto to_string(const Query &) -> std::string;
    auto to_string(const Formula &) -> std::string;
    auto to_string(const CQ &) -> std::string;
}

#endif
