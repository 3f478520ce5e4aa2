#ifndef OMQ_ENUMERATE_HH
#define OMQ_ENUMERATE_HH 1

#include <omq/kb.hh>

#include <cstddef>
#include <functional>
#include <string>

namespace omq
{
    // Individual names a, b, c, ... then i26, i27, ...
    auto individual_name(std::size_t k) -> std::string;

    struct EnumerationOptions
    {
        std::size_t max_individuals = 3;
        // Sizes whose encoding needs more bits than this are skipped.
        std::size_t max_bits = 24;
    };

    struct EnumerationStats
    {
        std::size_t visited = 0;
        std::size_t skipped_sizes = 0;
    };

    /**
     * Visits one ABox per isomorphism class over the signature, with
     * 1..max_individuals individuals each occurring in some assertion.
     * ABoxes come in order of individual count, then assertion count, so
     * the first hit of a search is a smallest one. The visitor returns
     * false to stop.
     */
    auto enumerate_aboxes(const Signature &, const EnumerationOptions &,
            const std::function<bool(const ABox &)> & visit) -> EnumerationStats;

    auto count_aboxes(const Signature &, const EnumerationOptions &) -> std::size_t;

    // Isomorphism of ABoxes as structures over their individuals.
    auto isomorphic(const ABox &, const ABox &) -> bool;
}

#endif
