#ifndef OMQ_TESTS_ORACLES_HH
#define OMQ_TESTS_ORACLES_HH 1

#include <omq/datalog.hh>
#include <omq/interpretation.hh>
#include <omq/kb.hh>
#include <omq/query.hh>

#include <random>
#include <set>
#include <string>
#include <vector>

namespace omq::test
{
    using Rng = std::mt19937_64;

    // Random generators; individuals are a0, a1, ...
    auto random_abox(Rng &, const Signature &, std::size_t max_individuals, double density = 0.3) -> ABox;
    auto random_graph_abox(Rng &, std::size_t max_individuals, double density = 0.4) -> ABox;
    auto random_interpretation(Rng &, const Signature &, std::size_t elements, double density = 0.3) -> Interpretation;
    auto random_eli(Rng &, const Signature &, int depth, bool inverse) -> Concept;
    auto random_horn_tbox(Rng &, const Signature &, int depth, std::size_t max_inclusions, bool inverse) -> TBox;
    auto random_concept(Rng &, const Signature &, int depth) -> Concept;
    // A tree-shaped positive formula with one free variable.
    auto random_tree_formula(Rng &, const Signature &, const std::string & var, int depth, int & fresh) -> Formula;
    auto random_peq(Rng &, const Signature &, std::size_t max_nodes, std::size_t max_vars) -> PEQ;
    auto random_program(Rng &, std::size_t rules) -> Program;

    // Brute force references.
    auto colorable(const ABox & graph, std::size_t k) -> bool;
    auto brute_hom_exists(const Interpretation & source, const Interpretation & target) -> bool;
    auto brute_peq(const Interpretation &, const PEQ &, const std::vector<int> & tuple) -> bool;
    auto brute_cq(const Interpretation &, const CQ &, const std::vector<int> & tuple) -> bool;
    // Greatest fixpoint by repeated pruning of all pairs.
    auto brute_simulation(const Interpretation &, const Interpretation &, bool inverse) -> std::vector<std::vector<bool>>;
    // {a | A(a) or r(a,b), A(b)}
    auto one_step_answers(const ABox &) -> std::set<std::string>;
    // Individuals with an r-path to some A.
    auto reachability_answers(const ABox &) -> std::set<std::string>;
    auto reachability_program() -> Program;
    // Naive fixpoint over ground instantiations.
    auto brute_datalog(const Program &, const ABox &) -> std::set<std::vector<std::string>>;
}

#endif
