#ifndef OMQ_CHASE_HH
#define OMQ_CHASE_HH 1

#include <omq/concept.hh>
#include <omq/interpretation.hh>
#include <omq/kb.hh>
#include <omq/query.hh>

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace omq
{
    /**
     * A Horn TBox as a list of conjuncts of the single inclusion
     * top sub C_T. Left-hand sides of implications are conjunctions of
     * concept names: nested existentials and disjunctions on the left are
     * replaced by auxiliary names, defined by extra conjuncts that push the
     * auxiliary name back along the inverse role.
     */
    struct HornTBox
    {
        std::vector<Concept> conjuncts;
        std::set<Role> functional;
        std::set<std::string> aux;
    };

    // Throws std::invalid_argument unless is_horn_alcfi holds.
    auto normalize_horn(const TBox &) -> HornTBox;

    struct ChaseBudget
    {
        int max_depth = 64;
        std::size_t max_assertions = 500'000;
        bool trace = false;
    };

    enum class ChaseStatus
    {
        complete,
        budget_exhausted
    };

    struct ChaseNode
    {
        std::string name;
        int parent = -1;
        Role role;              // from the parent to this node
        int filler = -1;        // concept id of C for a compound a r C
        int depth = 0;
        bool named = false;
        std::set<int> label;    // concept ids
        int blocker = -1;       // set for directly blocked nodes
        bool indirectly_blocked = false;
    };

    struct ChaseEdge
    {
        std::string role;
        int from, to;
    };

    /**
     * The finite part of a completion. Compound individuals are named
     * parent__r__cK (r_inv for inverse roles), where cK is concept K of the
     * legend. Nodes whose generating rules were withheld by blocking carry
     * their blocker.
     */
    struct Completion
    {
        ChaseStatus status = ChaseStatus::complete;
        bool bottom = false;
        std::vector<Concept> concepts;
        std::vector<ChaseNode> nodes;
        std::vector<ChaseEdge> edges;
        std::set<std::string> aux;
        std::vector<std::string> trace;

        auto find(const std::string & name) const -> int;
        auto has_concept(int node, const Concept &) const -> bool;
        auto max_depth() const -> int;

        // Concept name and role assertions over unblocked nodes, without
        // auxiliary names.
        auto to_abox() const -> ABox;
        auto legend() const -> std::vector<std::pair<std::string, Concept>>;
    };

    auto complete(const TBox &, const ABox &, const ChaseBudget & = {}) -> Completion;

    /**
     * Syntactic match of an ELIU-bot concept at a node. The bottom clause is
     * global: bot matches everywhere once some node carries it.
     */
    auto syntactic_match(const Completion &, const Concept &, const std::string & individual) -> bool;

    enum class CanonicalShape
    {
        slice,      // the finite completion as is
        folded,     // blocked nodes replaced by their blockers
        unrolled    // blocked nodes expanded by copying blocker subtrees
    };

    // Throws std::invalid_argument when the completion derives bottom.
    auto canonical_interpretation(const Completion &, CanonicalShape = CanonicalShape::folded,
            int extra_depth = 0) -> Interpretation;

    enum class Verdict
    {
        no,
        yes,
        inconclusive
    };

    auto to_string(Verdict) -> std::string;

    auto horn_entails_eliq(const TBox &, const ABox &, const Concept &, const std::string & individual,
            const ChaseBudget & = {}) -> Verdict;

    // Certain answer check for any query; individuals name the tuple.
    auto horn_certain_answer(const TBox &, const ABox &, const Query &, const std::vector<std::string> & tuple,
            const ChaseBudget & = {}) -> Verdict;
    auto horn_certain_answer(const Completion &, const Query &, const std::vector<std::string> & tuple) -> Verdict;

    // All certain answers over Ind(A); incomplete is set on budget exhaustion.
    struct HornAnswers
    {
        std::vector<std::vector<std::string>> tuples;
        bool inconclusive = false;
    };

    auto horn_answers(const TBox &, const ABox &, const Query &, const ChaseBudget & = {}) -> HornAnswers;
}

#endif
