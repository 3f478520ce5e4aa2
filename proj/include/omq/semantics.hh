#ifndef OMQ_SEMANTICS_HH
#define OMQ_SEMANTICS_HH 1

#include <omq/interpretation.hh>
#include <omq/kb.hh>
#include <omq/query.hh>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace omq
{
    using ElementSet = std::vector<bool>;
    using Assignment = std::map<std::string, int>;

    auto eval_concept(const Interpretation &, const Concept &) -> ElementSet;

    auto is_model(const Interpretation &, const TBox &) -> bool;
    auto is_model(const Interpretation &, const TBox &, const ABox &) -> bool;

    // Tuple entries are element indices of the interpretation.
    auto match_query(const Interpretation &, const Query &, const std::vector<int> & tuple) -> bool;
    auto find_match(const Interpretation &, const CQ &, const std::vector<int> & tuple) -> std::optional<Assignment>;

    // All tuples of named elements that are answers, in lexicographic order.
    auto answers(const Interpretation &, const Query &) -> std::vector<std::vector<int>>;

    enum class Variant
    {
        plain,
        inverse
    };

    /**
     * The depth-bounded (i-)unfolding. Elements are words d0 r1 d1 ... rn dn,
     * named with path_name. Only d0 is named.
     */
    auto unfold(const Interpretation &, int depth, Variant) -> Interpretation;

    struct UnravelingNode
    {
        std::string name;
        int parent = -1;
        Role role;          // from the parent's tail to this node's tail
        std::string tail;
        int length = 0;
    };

    struct UnravelingSlice
    {
        ABox base;
        int depth = 0;
        std::vector<UnravelingNode> nodes;
        ABox abox;
    };

    auto unravel_abox(const ABox &, int depth) -> UnravelingSlice;

    // Joins a path extension into an identifier: parent__r__b, with r_inv for
    // inverse roles.
    auto path_name(const std::string & parent, const Role & role, const std::string & last) -> std::string;
}

#endif
