#ifndef OMQ_GENERATORS_HH
#define OMQ_GENERATORS_HH 1

#include <omq/analysis.hh>
#include <omq/kb.hh>

#include <string>
#include <vector>

namespace omq
{
    // A_i and A_j -> M, A_i and exists r.A_i -> M, top -> A_1 or ... or A_k.
    auto gen_kcolor_tbox(std::size_t k) -> TBox;

    // Individuals a0 ... a(n-1) on an r-cycle.
    auto gen_cycle_abox(std::size_t n, bool symmetric) -> ABox;

    /**
     * The tree ABox of an ELI concept (names, top, conjunction, exists)
     * rooted at the given individual; inner individuals get the prefix.
     */
    auto concept_abox(const Concept &, const std::string & root, const std::string & prefix) -> ABox;

    // Literals are variable names or the constants "0" and "1".
    struct Clause22
    {
        std::string p1, p2, n1, n2;
    };

    using Formula22 = std::vector<Clause22>;

    auto variables(const Formula22 &) -> std::vector<std::string>;
    auto satisfiable(const Formula22 &) -> bool;

    struct Reduction
    {
        ABox abox;
        Concept query;
        std::string individual = "f";
    };

    /**
     * phi is unsatisfiable iff T, A_phi |= q(f). The witness should be
     * minimal; disjunct 0 encodes truth and the others falsity.
     */
    auto gen_2p2sat_reduction(const TBox &, const DisjunctionViolation &, const Formula22 &) -> Reduction;
}

#endif
