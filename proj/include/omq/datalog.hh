#ifndef OMQ_DATALOG_HH
#define OMQ_DATALOG_HH 1

#include <omq/kb.hh>
#include <omq/query.hh>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace omq
{
    struct Inequality
    {
        std::string left, right;
        auto operator==(const Inequality &) const -> bool = default;
    };

    /**
     * head :- body, x != y. Arguments are variables. Unary body atoms over
     * ABox concept names and binary ones over role names are EDB atoms; the
     * relation ind holds every individual of the ABox.
     */
    struct Rule
    {
        Atom head;
        std::vector<Atom> body;
        std::vector<Inequality> inequalities;

        auto operator==(const Rule &) const -> bool = default;
        auto to_string() const -> std::string;
    };

    struct Program
    {
        std::vector<Rule> rules;
        std::string goal = "goal";
        std::size_t goal_arity = 1;

        auto idb() const -> std::set<std::string>;
        // All IDBs except goal are unary.
        auto is_monadic() const -> bool;
        // Throws std::invalid_argument on unsafe rules, arity clashes or goal
        // in a body.
        void validate() const;
    };

    extern const std::string individual_relation;   // "ind"

    using Tuple = std::vector<std::string>;
    using Facts = std::map<std::string, std::set<Tuple>>;

    auto edb_facts(const ABox &) -> Facts;

    // Least fixpoint of all relations. Inequality is distinctness of names.
    auto evaluate_all(const Program &, const ABox &) -> Facts;
    auto evaluate_naive(const Program &, const ABox &) -> Facts;
    // The extension of the goal relation.
    auto evaluate(const Program &, const ABox &) -> std::set<Tuple>;

    auto to_string(const Program &) -> std::string;
    // Throws ParseError.
    auto parse_program(const std::string &) -> Program;

    // Union of programs with the same goal arity; IDBs are renamed apart.
    auto union_programs(const std::vector<Program> &) -> Program;

    /**
     * goal(answer vars) :- body, goal_k(v) for each call (k, v), where
     * goal_k is the goal of program k (unary, or nullary when v is empty).
     */
    struct Glue
    {
        CQ body;
        std::vector<std::pair<std::size_t, std::string>> calls;
    };

    auto glue_programs(const std::vector<Program> &, const Glue &) -> Program;
}

#endif
