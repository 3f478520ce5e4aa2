#include "oracles.hh"

#include <omq/chase.hh>
#include <omq/parse.hh>
#include <omq/semantics.hh>
#include <omq/tableau.hh>

#include <doctest.h>

#include <algorithm>

using namespace omq;

TEST_CASE("syntactic_match")
{
    auto c = complete(TBox{}, parse_abox("r(a,b)\nA(b)\n"));
    CHECK(syntactic_match(c, Concept::top(), "a"));
    CHECK(syntactic_match(c, parse_concept("some r.A"), "a"));
    CHECK(! syntactic_match(c, parse_concept("some r.A"), "b"));

    auto bad = complete(parse_tbox("C sub bot"), parse_abox("C(c)\nD(d)\n"));
    CHECK(bad.bottom);
    CHECK(syntactic_match(bad, Concept::bottom(), "d"));
}

TEST_CASE("completion")
{
    auto loop = complete(parse_tbox("top sub (A -> some r.A)"), parse_abox("A(a)\n"));
    CHECK(loop.status == ChaseStatus::complete);
    CHECK(loop.nodes.size() >= 2);
    CHECK(std::any_of(loop.nodes.begin(), loop.nodes.end(), [](auto & n) { return n.blocker >= 0; }));
    int child = -1;
    for (std::size_t k = 0 ; k < loop.nodes.size() ; ++k)
        if (loop.nodes[k].parent == loop.find("a"))
            child = static_cast<int>(k);
    REQUIRE(child >= 0);
    CHECK(loop.has_concept(child, parse_concept("A")));

    auto up = complete(parse_tbox("some r.A sub A"), parse_abox("r(a,b)\nA(b)\n"));
    CHECK(up.has_concept(up.find("a"), parse_concept("A")));

    auto f = complete(parse_tbox("func(r)\nA sub some r.C"), parse_abox("A(a)\nr(a,b)\n"));
    CHECK(f.has_concept(f.find("b"), parse_concept("C")));
    CHECK(f.nodes.size() == 2);
}

TEST_CASE("horn_entails_eliq")
{
    auto tl = parse_tbox("some r.A sub A");
    auto path = parse_abox("r(a,b)\nr(b,c)\nA(c)\n");
    CHECK(horn_entails_eliq(tl, path, parse_concept("A"), "a") == Verdict::yes);
    CHECK(horn_entails_eliq(tl, path, Concept::top(), "b") == Verdict::yes);

    auto tr = parse_tbox("A sub some r.A");
    auto ab = parse_abox("B1(a)\nB2(b)\nA(a)\nA(b)\n");
    CHECK(horn_entails_eliq(tr, ab, parse_concept("B1 and some r.some inv(r).B2"), "a") == Verdict::no);
    CHECK(horn_entails_eliq(tr, ab, parse_concept("B1 and some r.some inv(r).B1"), "a") == Verdict::yes);
}

TEST_CASE("horn_certain_answer")
{
    auto tl = parse_tbox("some r.A sub A");
    CHECK(horn_certain_answer(tl, parse_abox("r(a,b)\nA(b)\n"), parse_query("q() :- A(x)"), {}) == Verdict::yes);
    auto f = parse_tbox("func(r)");
    CHECK(horn_certain_answer(f, parse_abox("r(a,b1)\nr(a,b2)\n"), parse_query("q(x) :- Nothing(x)"), {"b1"})
            == Verdict::yes);
    auto tr = parse_tbox("A sub some r.A");
    auto ab = parse_abox("B1(a)\nB2(b)\nA(a)\nA(b)\n");
    CHECK(horn_certain_answer(tr, ab, parse_query("q(x) :- B1(x), r(x,y), r(z,y), B2(z)"), {"a"}) == Verdict::no);
    CHECK(horn_certain_answer(tr, ab, parse_query("q(x) :- r(x,y), r(y,z), r(z,w), A(w)"), {"a"}) == Verdict::yes);
    CHECK(horn_certain_answer(tr, ab, parse_query("q(x) :- r(x,y), r(y,y)"), {"a"}) == Verdict::no);
}

TEST_CASE("canonical interpretation")
{
    auto a = parse_abox("A(a)\nr(a,b)\nB(b)\n");
    auto plain = canonical_interpretation(complete(TBox{}, a));
    CHECK(plain == Interpretation::from_abox(a));

    auto tl = parse_tbox("some r.A sub A");
    auto i = canonical_interpretation(complete(tl, parse_abox("r(a,b)\nr(b,c)\nA(c)\nr(d,a)\n")));
    for (auto n : {"a", "b", "c", "d"})
        CHECK(i.has_concept("A", *i.find(n)));

    auto bad = complete(parse_tbox("func(r)"), parse_abox("r(a,b1)\nr(a,b2)\n"));
    CHECK(bad.bottom);
    CHECK_THROWS_AS(canonical_interpretation(bad), std::invalid_argument);
}

TEST_CASE("random horn KBs")
{
    test::Rng rng(17);
    Signature s{{"A", "B", "C"}, {"r", "s"}};
    int consistent = 0;
    for (int k = 0 ; k < 150 ; ++k) {
        auto t = test::random_horn_tbox(rng, s, 2, 3, k % 2 == 0);
        if (k % 7 == 0)
            t.functional.insert(Role{"r", false});
        auto a = test::random_abox(rng, s, 3);
        auto c = complete(t, a);
        REQUIRE(c.status == ChaseStatus::complete);
        CHECK(kb_consistent(t, a) == ! c.bottom);
        if (c.bottom)
            continue;
        ++consistent;
        auto i = canonical_interpretation(c);
        CHECK(is_model(i, t, a));
        // every derived name on an individual is entailed
        for (auto & ind : a.individuals())
            for (auto & n : s.concepts) {
                bool derived = c.has_concept(c.find(ind), Concept::name(n));
                CHECK(derived == entails_instance(t, a, Concept::name(n), ind));
            }
    }
    CHECK(consistent > 30);
}

TEST_CASE("chase agrees with the tableau on ELIQs")
{
    test::Rng rng(23);
    Signature s{{"A", "B"}, {"r"}};
    for (int k = 0 ; k < 150 ; ++k) {
        auto t = test::random_horn_tbox(rng, s, 2, 3, true);
        auto a = test::random_abox(rng, s, 3);
        auto q = test::random_eli(rng, s, 2, true);
        for (auto & ind : a.individuals()) {
            auto v = horn_entails_eliq(t, a, q, ind);
            REQUIRE(v != Verdict::inconclusive);
            CHECK((v == Verdict::yes) == entails_instance(t, a, q, ind));
        }
    }
}
