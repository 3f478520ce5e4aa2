#include "oracles.hh"

#include <omq/engines.hh>
#include <omq/parse.hh>

#include <doctest.h>

using namespace omq;

namespace
{
    auto singles(std::initializer_list<const char *> names) -> std::set<Tuple>
    {
        std::set<Tuple> out;
        for (auto n : names)
            out.insert({n});
        return out;
    }

    const char * t2_text = "A and some r.A sub B\nnot A and some r.not A sub B";
}

TEST_CASE("engine names")
{
    for (auto e : {Engine::automatic, Engine::chase, Engine::csp, Engine::tableau, Engine::bruteforce})
        CHECK(parse_engine(to_string(e)) == e);
    CHECK(! parse_engine("magic"));
}

TEST_CASE("select_engine")
{
    auto q = parse_query("q(x) = A");
    CHECK(select_engine(parse_tbox("A sub some r.A"), q) == Engine::chase);
    CHECK(select_engine(parse_tbox(t2_text), parse_query("q(x) = B")) == Engine::csp);
    CHECK(select_engine(parse_tbox("func(r)\nA sub B or C"), q) == Engine::tableau);
    CHECK(select_engine(parse_tbox("A sub B or C"), parse_query("q(x) :- r(x,y), r(y,x)")) == Engine::tableau);
}

TEST_CASE("certain answers")
{
    auto tr = parse_tbox("A sub some r.A");
    auto r = certain_answers(tr, parse_abox("A(a)\n"), parse_query("q(x) = some r.A"));
    CHECK(r.engine == Engine::chase);
    CHECK(r.exact);
    CHECK(r.answers == singles({"a"}));

    auto a = parse_abox("r(a,b)\nr(b,c)\nA(c)\nr(c,a)\n");
    auto cq = parse_query("q(x) :- r(x,y), r(y,z), A(z)");
    for (auto e : {Engine::chase, Engine::tableau, Engine::bruteforce})
        CHECK(certain_answers(TBox{}, a, cq, e).answers == singles({"a"}));

    auto t2 = parse_tbox(t2_text);
    auto loop = parse_abox("r(a,a)\n");
    auto b = parse_query("q(x) = B");
    for (auto e : {Engine::automatic, Engine::csp, Engine::tableau, Engine::bruteforce}) {
        auto rep = certain_answers(t2, loop, b, e);
        CHECK(rep.answers == singles({"a"}));
        CHECK(rep.exact);
    }
    CHECK_THROWS_AS(certain_answers(t2, loop, b, Engine::chase), Unsupported);
}

TEST_CASE("bruteforce is an upper bound for non-universal TBoxes")
{
    auto t = parse_tbox("A sub some r.B\nB sub C or D");
    auto rep = certain_answers(t, parse_abox("A(a)\n"), parse_query("q(x) :- r(x,y), C(y)"), Engine::bruteforce);
    CHECK(! rep.exact);
    CHECK(rep.answers.empty());
}

TEST_CASE("boolean and union queries on the tableau")
{
    auto t = parse_tbox("A sub B1 or B2");
    auto a = parse_abox("A(a)\n");
    auto u = parse_query("q() :- B1(x)\nq() :- B2(x)");
    CHECK(tableau_entails(t, a, u, {}));
    CHECK(! tableau_entails(t, a, parse_query("q() :- B1(x)"), {}));
    auto peq = parse_query("q(x) :- B1(x) or B2(x)");
    CHECK(certain_answers(t, a, peq, Engine::tableau).answers == singles({"a"}));
    CHECK(certain_answers(t, a, peq, Engine::bruteforce).answers == singles({"a"}));
}

TEST_CASE("engines agree on horn ALCI instances")
{
    test::Rng rng(73);
    Signature s{{"A", "B"}, {"r"}};
    for (int k = 0 ; k < 60 ; ++k) {
        auto t = test::random_horn_tbox(rng, s, 2, 3, true);
        auto q = Query::eliq(test::random_eli(rng, s, 2, true));
        auto a = test::random_abox(rng, s, 4);
        auto chase = certain_answers(t, a, q, Engine::chase);
        auto csp = certain_answers(t, a, q, Engine::csp);
        auto tab = certain_answers(t, a, q, Engine::tableau);
        CHECK(chase.answers == csp.answers);
        CHECK(chase.answers == tab.answers);
    }
}

TEST_CASE("bounded countermodels")
{
    auto t = parse_tbox("A sub B");
    CHECK(is_universal(t));
    CHECK(! is_universal(parse_tbox("A sub some r.B")));
    CHECK(bounded_countermodel(t, parse_abox("A(a)\n"), parse_query("q(x) = C"), {"a"}));
    CHECK(! bounded_countermodel(t, parse_abox("A(a)\n"), parse_query("q(x) = B"), {"a"}));
}
