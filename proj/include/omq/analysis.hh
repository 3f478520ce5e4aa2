#ifndef OMQ_ANALYSIS_HH
#define OMQ_ANALYSIS_HH 1

#include <omq/concept.hh>
#include <omq/kb.hh>
#include <omq/tableau.hh>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace omq
{
    struct AnalysisBudget
    {
        std::size_t max_individuals = 3;
        int max_depth = 1;
        std::size_t max_disjuncts = 2;
        TableauOptions tableau;
    };

    struct Fact
    {
        Concept expr;
        std::string individual;

        auto operator==(const Fact &) const -> bool = default;
    };

    // T, A |= C1(a1) or ... or Cn(an) while no Ci(ai) is entailed; minimal.
    struct DisjunctionViolation
    {
        ABox abox;
        std::vector<Fact> disjuncts;
    };

    // T, A |= C(a) while T, A^u does not.
    struct UnravelingViolation
    {
        ABox abox;
        Fact fact;
    };

    using Witness = std::variant<DisjunctionViolation, UnravelingViolation>;

    auto to_string(const Witness &) -> std::string;

    enum class Outcome
    {
        none_found,     // evidence for the property within the budget
        refuted,
        unknown,        // some candidates exceeded the oracle budget
        unsupported
    };

    auto to_string(Outcome) -> std::string;

    struct RefutationResult
    {
        Outcome outcome = Outcome::none_found;
        std::optional<Witness> witness;
        std::size_t aboxes = 0;
        std::size_t skipped = 0;
        std::string note;
    };

    /**
     * ELIQ shapes over the TBox signature up to the given depth: concept
     * names first, then exists r.X for X a shape of smaller depth or top.
     * Inverse roles are used only when the TBox has them.
     */
    auto eliq_shapes(const TBox &, int max_depth) -> std::vector<Concept>;

    // ABoxes range over sig(T) plus one unused probe name.
    auto probe_signature(const TBox &) -> Signature;

    auto refute_disjunction_property(const TBox &, const AnalysisBudget & = {}) -> RefutationResult;
    auto refute_unraveling_tolerance(const TBox &, const AnalysisBudget & = {}) -> RefutationResult;

    // Rechecks a witness from scratch.
    auto verify_witness(const TBox &, const Witness &, const TableauOptions & = {}) -> bool;

    struct ClassificationReport
    {
        Dialect dialect = Dialect::alc;
        bool horn = false;
        bool depth_one = false;
        RefutationResult materializable;
        RefutationResult unraveling_tolerant;
        std::string verdict;
        bool evidence_only = true;
        AnalysisBudget budget;
    };

    auto classify(const TBox &, const AnalysisBudget & = {}) -> ClassificationReport;

    // Drops disjuncts while the rest is still entailed.
    auto prune_disjuncts(const TBox &, const DisjunctionViolation &, const TableauOptions & = {}) -> DisjunctionViolation;
}

#endif
