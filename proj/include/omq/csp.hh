#ifndef OMQ_CSP_HH
#define OMQ_CSP_HH 1

#include <omq/kb.hh>
#include <omq/types.hh>

#include <map>
#include <optional>
#include <string>

namespace omq
{
    /**
     * Templates are ABoxes whose individual names carry no meaning. The
     * restriction of an ABox to a signature keeps every individual, so an
     * ABox whose restriction has no assertions still has to map somewhere:
     * it maps into any template with at least one element.
     */
    auto restrict_abox(const ABox &, const Signature &) -> ABox;

    // A homomorphism from the ABox into the template, or nothing.
    auto csp_hom(const ABox &, const ABox & templ) -> std::optional<std::map<std::string, std::string>>;

    // Individuals t0, t1, ... are the types omitting q; edges follow ~>_r.
    auto template_from_omq(const TBox &, const Concept & q, const TypeOptions & = {}) -> ABox;
    auto template_signature(const TBox &, const Concept & q) -> Signature;

    struct Booleanized
    {
        TBox tbox;
        ABox abox;
        Concept query;      // P and C
        std::string marker; // P
    };

    // T, A |= C(a) iff T, A + P(a) |= exists x. (P and C)(x).
    auto booleanize_eliq(const TBox &, const ABox &, const Concept &, const std::string & individual) -> Booleanized;

    /**
     * Whether the unraveling of the ABox maps into the template. Candidate
     * sets live on (individual, incoming edge) states so that a child never
     * has to agree with the edge it came through.
     */
    auto unraveling_hom(const ABox &, const ABox & templ) -> bool;
    // Plain arc consistency over the individuals.
    auto arc_consistent(const ABox &, const ABox & templ) -> bool;

    // T, A^u |= exists x. q(x).
    auto unraveling_entails(const TBox &, const Concept & q, const ABox &, const TypeOptions & = {}) -> bool;

    struct HiddenSymbols
    {
        std::string z, r, s;
    };

    // forall r_B. exists s_B. not Z_B
    auto abstraction_concept(const HiddenSymbols &) -> Concept;

    struct Abstraction
    {
        TBox abstracted;    // T'
        TBox existential;   // T^exists
        std::map<std::string, HiddenSymbols> hidden;

        auto combined() const -> TBox;
    };

    auto enriched_abstraction(const TBox &, const Signature &) -> Abstraction;

    struct EncodedTemplate
    {
        TBox raw;           // H_B over the names _Ad_<d>
        Abstraction abstraction;
        TBox tbox;          // T_B
        std::string marker = "__M";
        Signature sigma;
        std::map<std::string, std::string> element_names;  // d -> A_d
    };

    // The signature defaults to the symbols used in the template.
    auto tbox_from_template(const ABox & templ) -> EncodedTemplate;
    auto tbox_from_template(const ABox & templ, const Signature &) -> EncodedTemplate;

    auto admits_trivial_models(const TBox &) -> bool;
}

#endif
