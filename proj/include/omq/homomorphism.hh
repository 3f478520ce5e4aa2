#ifndef OMQ_HOMOMORPHISM_HH
#define OMQ_HOMOMORPHISM_HH 1

#include <omq/interpretation.hh>
#include <omq/semantics.hh>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace omq
{
    // h[d] is the image of element d of the source.
    using ElementMap = std::vector<int>;

    /**
     * A map from source to target preserving concept names and role edges
     * that sends every name in preserve to the equally named target element.
     * Unnamed and unpreserved elements are free.
     */
    auto find_homomorphism(const Interpretation & source, const Interpretation & target,
            const std::set<std::string> & preserve) -> std::optional<ElementMap>;

    auto is_homomorphism(const Interpretation & source, const Interpretation & target,
            const ElementMap &, const std::set<std::string> & preserve) -> bool;

    // rel[d][e] for d in the source and e in the target.
    using Relation = std::vector<std::vector<bool>>;

    // The greatest (i-)simulation, or nothing when it misses some (a, a).
    auto find_simulation(const Interpretation & source, const Interpretation & target, Variant)
        -> std::optional<Relation>;

    auto is_simulation(const Interpretation & source, const Interpretation & target,
            const Relation &, Variant) -> bool;
}

#endif
