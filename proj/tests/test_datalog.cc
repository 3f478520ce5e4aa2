#include "oracles.hh"

#include <omq/chase.hh>
#include <omq/datalog.hh>
#include <omq/parse.hh>
#include <omq/rewriting.hh>

#include <doctest.h>

using namespace omq;

namespace
{
    auto names(const std::set<Tuple> & ts) -> std::set<std::string>
    {
        std::set<std::string> out;
        for (auto & t : ts)
            out.insert(t.at(0));
        return out;
    }

    const char * functionality = ".goal goal/0\ngoal() :- r(x,y1), r(x,y2), y1 != y2.\n";
}

TEST_CASE("evaluate")
{
    auto reach = test::reachability_program();
    CHECK(names(evaluate(reach, parse_abox("r(a,b)\nA(b)\n"))) == std::set<std::string>{"a", "b"});

    auto none = parse_program(".goal goal/1\nP(x) :- A(x).\n");
    CHECK(evaluate(none, parse_abox("A(a)\n")).empty());

    auto f = parse_program(functionality);
    CHECK(evaluate(f, parse_abox("r(a,b1)\nr(a,b2)\n")).size() == 1);
    CHECK(evaluate(f, parse_abox("r(a,b)\n")).empty());
}

TEST_CASE("program validation")
{
    CHECK_THROWS_AS(parse_program(".goal goal/1\ngoal(x) :- A(y).\n"), std::exception);
    CHECK_THROWS_AS(parse_program(".goal goal/1\nP(x) :- goal(x).\n"), std::exception);
    CHECK_THROWS_AS(parse_program(".goal goal/0\ngoal() :- A(x), x != z.\n"), std::exception);
    auto p = parse_program(functionality);
    CHECK(parse_program(to_string(p)).rules == p.rules);
    CHECK(test::reachability_program().is_monadic());
}

TEST_CASE("union and glue")
{
    auto a = parse_program(".goal goal/1\ngoal(x) :- A(x).\n");
    auto b = parse_program(".goal goal/1\nP(x) :- B(x).\ngoal(x) :- r(x,y), P(y).\n");
    auto u = union_programs({a, b});
    auto abox = parse_abox("A(a)\nr(c,d)\nB(d)\n");
    CHECK(names(evaluate(u, abox)) == std::set<std::string>{"a", "c"});

    Glue g;
    g.body.answer_vars = {"x"};
    g.body.atoms = {Atom{"s", {"x", "y"}}};
    g.calls = {{0, "x"}, {1, "y"}};
    auto glued = glue_programs({a, b}, g);
    auto abox2 = parse_abox("A(a)\ns(a,c)\nr(c,d)\nB(d)\ns(b,c)\n");
    CHECK(names(evaluate(glued, abox2)) == std::set<std::string>{"a"});
}

TEST_CASE("semi-naive evaluation matches naive and brute force")
{
    test::Rng rng(31);
    Signature s{{"A", "B"}, {"r", "s"}};
    for (int k = 0 ; k < 200 ; ++k) {
        auto p = test::random_program(rng, 2 + k % 4);
        auto a = test::random_abox(rng, s, 4);
        auto semi = evaluate_all(p, a);
        CHECK(semi == evaluate_naive(p, a));
        CHECK(evaluate(p, a) == test::brute_datalog(p, a));
    }
}

TEST_CASE("evaluation is monotone")
{
    test::Rng rng(37);
    Signature s{{"A", "B"}, {"r", "s"}};
    for (int k = 0 ; k < 100 ; ++k) {
        auto p = test::random_program(rng, 3);
        auto a = test::random_abox(rng, s, 3);
        auto more = a;
        more.merge(test::random_abox(rng, s, 3));
        auto small = evaluate(p, a);
        auto big = evaluate(p, more);
        for (auto & t : small)
            CHECK(big.contains(t));
    }
}

TEST_CASE("rewriting")
{
    auto tl = parse_tbox("some r.A sub A");
    auto p = build_rewriting(tl, Query::eliq(Concept::name("A")).tree());
    CHECK(p.is_monadic());
    test::Rng rng(41);
    Signature s{{"A"}, {"r"}};
    for (int k = 0 ; k < 200 ; ++k) {
        auto a = test::random_abox(rng, s, 5);
        CHECK(names(evaluate(p, a)) == test::reachability_answers(a));
    }

    auto empty = build_rewriting(TBox{}, Query::eliq(Concept::name("A")).tree());
    CHECK(names(evaluate(empty, parse_abox("A(a)\nr(a,b)\nB(c)\n"))) == std::set<std::string>{"a"});

    auto t2 = parse_tbox("A and some r.A sub B\nnot A and some r.not A sub B");
    auto p2 = build_rewriting(t2, Query::eliq(Concept::name("B")).tree());
    CHECK(evaluate(p2, parse_abox("r(a,a)\n")).empty());
    CHECK(names(evaluate(p2, parse_abox("r(a,a)\nA(a)\n"))) == std::set<std::string>{"a"});
}

TEST_CASE("full schema derives the same goal facts")
{
    auto t = parse_tbox("A sub all r.B");
    auto q = Query::eliq(Concept::name("B")).tree();
    RewritingOptions full;
    full.full_schema = true;
    auto compact = build_rewriting(t, q);
    auto every = build_rewriting(t, q, full);
    test::Rng rng(43);
    Signature s{{"A", "B"}, {"r"}};
    for (int k = 0 ; k < 100 ; ++k) {
        auto a = test::random_abox(rng, s, 3);
        CHECK(evaluate(compact, a) == evaluate(every, a));
    }
}

TEST_CASE("functionality rewriting")
{
    auto t = parse_tbox("func(r)");
    auto p = build_rewriting(t, Query::boolean_eliq(Concept::name("M")).tree());
    CHECK(evaluate(p, parse_abox("r(a,b1)\nr(a,b2)\n")).size() == 1);
    CHECK(evaluate(p, parse_abox("M(a)\n")).size() == 1);
    CHECK(evaluate(p, parse_abox("r(a,b)\n")).empty());
}

TEST_CASE("soundness_status")
{
    auto t2 = parse_tbox("A and some r.A sub B\nnot A and some r.not A sub B");
    auto q = Query::boolean_eliq(Concept::name("B")).tree();
    auto p = build_rewriting(t2, q);
    auto report = soundness_status(t2, q, p, {parse_abox("r(a,a)\n"), parse_abox("A(a)\n")});
    CHECK(report.sound());
    CHECK(report.incomplete.size() == 1);
    CHECK(report.checked == 2);

    auto e = soundness_status(t2, q, p, {});
    CHECK(e.checked == 0);
    CHECK(e.sound());
    CHECK(e.complete());

    auto unary = Query::eliq(Concept::name("B")).tree();
    CHECK_THROWS_AS(soundness_status(t2, unary, build_rewriting(t2, unary), {}), NoOracle);

    auto tl = parse_tbox("some r.A sub A");
    auto a = Query::eliq(Concept::name("A")).tree();
    auto horn = soundness_status(tl, a, build_rewriting(tl, a), {parse_abox("r(a,b)\nr(b,c)\nA(c)\n")});
    CHECK(horn.sound());
    CHECK(horn.complete());
    CHECK(horn.checked == 3);
}
