#include "oracles.hh"

#include <omq/chase.hh>
#include <omq/csp.hh>
#include <omq/enumerate.hh>
#include <omq/generators.hh>
#include <omq/parse.hh>
#include <omq/tableau.hh>

#include <doctest.h>

using namespace omq;

namespace
{
    auto c2() -> ABox
    {
        return parse_abox("r(u,v)\nr(v,u)\n");
    }

    auto brute_csp(const ABox & a, const ABox & b) -> bool
    {
        return test::brute_hom_exists(Interpretation::from_abox(a), Interpretation::from_abox(b));
    }
}

TEST_CASE("restrict_abox")
{
    auto a = parse_abox("A(a)\nB(a)\nr(a,b)\n");
    CHECK(restrict_abox(a, a.signature()) == a);
    auto none = restrict_abox(a, Signature{});
    CHECK(none.size() == 0);
    CHECK(none.individuals() == a.individuals());
    auto some = restrict_abox(a, Signature{{"A"}, {"r"}});
    CHECK(some == parse_abox("A(a)\nr(a,b)\n"));
}

TEST_CASE("csp_hom")
{
    for (std::size_t n = 3 ; n <= 7 ; ++n) {
        auto cyc = gen_cycle_abox(n, true);
        CHECK(csp_hom(cyc, c2()).has_value() == (n % 2 == 0));
    }
    auto point = parse_abox("A(p)\nB(p)\nr(p,p)\ns(p,p)\n");
    test::Rng rng(47);
    Signature s{{"A", "B"}, {"r", "s"}};
    for (int k = 0 ; k < 50 ; ++k)
        CHECK(csp_hom(test::random_abox(rng, s, 4), point));
    CHECK(! csp_hom(parse_abox("C(a)\n"), point));

    for (int k = 0 ; k < 300 ; ++k) {
        auto a = test::random_abox(rng, s, 4, 0.3);
        auto b = test::random_abox(rng, s, 3, 0.5);
        auto h = csp_hom(a, b);
        CHECK(h.has_value() == brute_csp(a, b));
    }
}

TEST_CASE("template_from_omq")
{
    auto t = template_from_omq(parse_tbox("A sub all r.B"), parse_concept("B"));
    CHECK(isomorphic(t, parse_abox("r(a,a)\nr(a,b)\nA(b)\nr(a,c)\n")));

    auto single = template_from_omq(TBox{}, parse_concept("A"));
    CHECK(single.individuals().size() == 1);
    CHECK(single.concept_assertions.empty());

    CHECK_THROWS_AS(template_from_omq(parse_tbox("func(r)"), parse_concept("A")), std::invalid_argument);
}

TEST_CASE("templates agree with the chase on horn TBoxes")
{
    test::Rng rng(53);
    Signature s{{"A", "B"}, {"r"}};
    for (int k = 0 ; k < 60 ; ++k) {
        auto t = test::random_horn_tbox(rng, s, 2, 3, true);
        auto q = test::random_eli(rng, s, 2, true);
        auto templ = template_from_omq(t, q);
        auto sigma = template_signature(t, q);
        for (int j = 0 ; j < 5 ; ++j) {
            auto a = test::random_abox(rng, s, 4);
            auto v = horn_certain_answer(t, a, Query::boolean_eliq(q), {});
            REQUIRE(v != Verdict::inconclusive);
            CHECK((v == Verdict::yes) == ! csp_hom(restrict_abox(a, sigma), templ));
        }
    }
}

TEST_CASE("booleanize_eliq")
{
    auto a = parse_abox("A(a)\n");
    CHECK_THROWS_AS(booleanize_eliq(TBox{}, a, parse_concept("A"), "z"), std::invalid_argument);
    auto b = booleanize_eliq(TBox{}, a, parse_concept("A"), "a");
    CHECK(b.abox.has_concept(b.marker, "a"));
    CHECK(entails_boolean(b.tbox, b.abox, b.query));

    test::Rng rng(59);
    Signature s{{"A", "B"}, {"r"}};
    for (int k = 0 ; k < 60 ; ++k) {
        auto t = test::random_horn_tbox(rng, s, 2, 3, true);
        auto c = test::random_eli(rng, s, 2, true);
        auto abox = test::random_abox(rng, s, 3);
        for (auto & ind : abox.individuals()) {
            auto bz = booleanize_eliq(t, abox, c, ind);
            auto v = horn_entails_eliq(t, abox, c, ind);
            auto w = horn_certain_answer(bz.tbox, bz.abox, Query::boolean_eliq(bz.query), {});
            CHECK(v == w);
        }
    }
}

TEST_CASE("unraveling_entails")
{
    auto t2 = parse_tbox("A and some r.A sub B\nnot A and some r.not A sub B");
    auto b = booleanize_eliq(t2, parse_abox("r(a,a)\n"), parse_concept("B"), "a");
    CHECK(! unraveling_entails(b.tbox, b.query, b.abox));
    CHECK(entails_boolean(b.tbox, b.abox, b.query));

    auto flat = parse_abox("A(a)\nB(b)\n");
    auto tq = parse_tbox("A sub C or D\nC sub E\nD sub E");
    CHECK(unraveling_entails(tq, parse_concept("E"), flat));
    CHECK(! unraveling_entails(tq, parse_concept("C"), flat));

    test::Rng rng(61);
    Signature s{{"A", "B"}, {"r"}};
    for (int k = 0 ; k < 60 ; ++k) {
        auto h = test::random_horn_tbox(rng, s, 2, 3, true);
        auto c = test::random_eli(rng, s, 2, true);
        auto a = test::random_abox(rng, s, 4);
        CHECK(unraveling_entails(h, c, a) == entails_boolean(h, a, c));
    }
    for (int k = 0 ; k < 40 ; ++k) {
        auto a = test::random_abox(rng, s, 3);
        if (unraveling_entails(t2, parse_concept("B"), a))
            CHECK(entails_boolean(t2, a, parse_concept("B")));
    }
}

TEST_CASE("tbox_from_template")
{
    auto enc = tbox_from_template(c2());
    auto m = Concept::name(enc.marker);
    for (std::size_t n = 3 ; n <= 6 ; ++n) {
        auto cyc = gen_cycle_abox(n, true);
        CHECK(entails_boolean(enc.tbox, cyc, m) == (n % 2 == 1));
        CHECK(kb_consistent(enc.tbox, cyc) == (n % 2 == 0));
    }
    CHECK(enc.tbox.depth() == 3);
    CHECK(enc.raw.depth() == 1);
    CHECK(admits_trivial_models(enc.raw));
    CHECK(! is_depth_one(enc.tbox));
    CHECK(enc.tbox.size() <= 40 * 2 * 2 * 1);

    auto point = parse_abox("A(p)\nr(p,p)\n");
    auto penc = tbox_from_template(point);
    test::Rng rng(67);
    Signature s{{"A"}, {"r"}};
    for (int k = 0 ; k < 20 ; ++k)
        CHECK(! entails_boolean(penc.tbox, test::random_abox(rng, s, 3), Concept::name(penc.marker)));
}

TEST_CASE("enriched_abstraction")
{
    auto t = parse_tbox("A sub A1 or A2");
    auto same = enriched_abstraction(t, Signature{{"A", "A1", "A2"}, {}});
    CHECK(same.abstracted == t);
    CHECK(same.existential.inclusions.empty());

    auto ex = enriched_abstraction(parse_tbox("A sub not B1 or not B2"), Signature{{"A"}, {}});
    REQUIRE(ex.hidden.size() == 2);
    auto h1 = abstraction_concept(ex.hidden.at("B1"));
    auto h2 = abstraction_concept(ex.hidden.at("B2"));
    CHECK(ex.abstracted.inclusions.at(0).rhs
            == Concept::disjunction(Concept::negation(h1), Concept::negation(h2)));
    CHECK(ex.existential.inclusions.size() == 4);

    CHECK_THROWS_AS(enriched_abstraction(parse_tbox("A sub some r.B"), Signature{{"A"}, {}}),
            std::invalid_argument);
}

TEST_CASE("admits_trivial_models")
{
    CHECK(! admits_trivial_models(parse_tbox("top sub A")));
    CHECK(admits_trivial_models(TBox{}));
    CHECK(admits_trivial_models(parse_tbox("A sub some r.B")));
}
