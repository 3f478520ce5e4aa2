#ifndef OMQ_REWRITING_HH
#define OMQ_REWRITING_HH 1

#include <omq/datalog.hh>
#include <omq/query.hh>
#include <omq/types.hh>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace omq
{
    struct RewritingOptions
    {
        TypeOptions types;
        // Only IDBs reachable from the seeds under pre_r and intersection
        // are built, unless full_schema is set.
        bool full_schema = false;
        std::size_t max_idbs = 4096;
    };

    /**
     * The monadic program for (T, C0(x)). IDB P_T stands for a set of type
     * indices; every individual starts in P_tp through ind, and the
     * role rule is kept in the compact form P_pre(x) :- r(x,y), P_T(y),
     * which together with the intersection rules derives the same facts as
     * the two-sided form.
     *
     * For a Boolean query the types omit C0 and goal() is derived from P_{}
     * or a functionality violation.
     */
    struct Rewriting
    {
        Program program;
        TypeTable types;
        std::vector<std::vector<int>> idbs;

        auto idb_name(std::size_t k) const -> std::string;
    };

    auto construct_rewriting(const TBox &, const TreeQuery &, const RewritingOptions & = {}) -> Rewriting;
    auto build_rewriting(const TBox &, const TreeQuery &, const RewritingOptions & = {}) -> Program;

    struct NoOracle : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct SoundnessCounterexample
    {
        ABox abox;
        std::string individual;     // empty for Boolean queries
        bool derived;               // goal derived; the oracle disagrees
    };

    struct SoundnessReport
    {
        std::size_t checked = 0;
        std::size_t skipped = 0;    // oracle inconclusive
        std::vector<SoundnessCounterexample> unsound, incomplete;

        auto sound() const -> bool { return unsound.empty(); }
        auto complete() const -> bool { return incomplete.empty(); }
    };

    /**
     * Checks the program against an exact oracle on every corpus ABox: the
     * chase for Horn TBoxes, the template for Boolean queries over ALCI.
     * Throws NoOracle when neither applies.
     */
    auto soundness_status(const TBox &, const TreeQuery &, const Program &, const std::vector<ABox> & corpus)
        -> SoundnessReport;
}

#endif
