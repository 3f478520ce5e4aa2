#ifndef OMQ_ENGINES_HH
#define OMQ_ENGINES_HH 1

#include <omq/chase.hh>
#include <omq/kb.hh>
#include <omq/query.hh>
#include <omq/tableau.hh>

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace omq
{
    enum class Engine
    {
        automatic,
        chase,
        csp,
        tableau,
        bruteforce
    };

    auto to_string(Engine) -> std::string;
    auto parse_engine(const std::string &) -> std::optional<Engine>;

    // The engine cannot decide this (TBox, query) pair exactly.
    struct Unsupported : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct EngineOptions
    {
        ChaseBudget chase;
        TableauOptions tableau;
        // Anonymous elements the bounded model search may add.
        std::size_t extra_elements = 1;
        // Free bits of the bounded model search.
        std::size_t max_model_bits = 22;
        std::size_t max_clauses = 4096;
    };

    using Tuple = std::vector<std::string>;

    struct AnswerReport
    {
        Engine engine = Engine::automatic;
        // When false the answers are an upper bound: every tuple left out
        // has a countermodel, the others were not refuted.
        bool exact = true;
        std::set<Tuple> answers;
        std::set<Tuple> undecided;  // budget ran out
        std::string note;
    };

    // Chase for Horn, then the template for ALC/ALCI tree queries, then the
    // tableau, then bounded models.
    auto select_engine(const TBox &, const Query &) -> Engine;

    auto certain_answers(const TBox &, const ABox &, const Query &, Engine = Engine::automatic,
            const EngineOptions & = {}) -> AnswerReport;

    // Tableau check for a query whose disjuncts split into tree-shaped parts.
    auto tableau_entails(const TBox &, const ABox &, const Query &, const Tuple &,
            const EngineOptions & = {}) -> bool;

    /**
     * Searches models over Ind(A) plus a few anonymous elements for one that
     * refutes the tuple. Some model is found exactly when the answer is no,
     * provided the TBox is universal (no existential after NNF); otherwise a
     * missing countermodel is not a proof.
     */
    auto bounded_countermodel(const TBox &, const ABox &, const Query &, const Tuple &,
            const EngineOptions & = {}) -> std::optional<Interpretation>;

    auto is_universal(const TBox &) -> bool;
}

#endif
