#ifndef OMQ_TABLEAU_HH
#define OMQ_TABLEAU_HH 1

#include <omq/concept.hh>
#include <omq/kb.hh>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace omq
{
    // Raised when a reasoner runs out of its node budget. Never means
    // satisfiable or unsatisfiable.
    struct BudgetExceeded : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    enum class Blocking
    {
        subset,
        equality,
        pairwise
    };

    // subset for ALC, equality for ALCI, pairwise whenever func is present.
    auto blocking_for(Dialect) -> Blocking;

    struct TableauOptions
    {
        std::size_t node_budget = 1'000'000;
    };

    // A concept assertion with an arbitrary concept.
    struct Assertion
    {
        Concept expr;
        std::string individual;
    };

    auto is_satisfiable(const Concept &, const TBox &, const TableauOptions & = {}) -> bool;

    // Distinct individuals denote distinct elements.
    auto kb_consistent(const TBox &, const ABox &, const TableauOptions & = {}) -> bool;
    auto kb_consistent(const TBox &, const ABox &, const std::vector<Assertion> & extra,
            const TableauOptions & = {}) -> bool;

    // T, A |= C1(a1) or ... or Cn(an). An empty disjunction is entailed iff
    // the KB is inconsistent.
    auto entails_disjunction(const TBox &, const ABox &, const std::vector<Assertion> & disjuncts,
            const TableauOptions & = {}) -> bool;

    auto entails_instance(const TBox &, const ABox &, const Concept &, const std::string & individual,
            const TableauOptions & = {}) -> bool;

    // T, A |= exists x. C(x).
    auto entails_boolean(const TBox &, const ABox &, const Concept &, const TableauOptions & = {}) -> bool;
}

#endif
