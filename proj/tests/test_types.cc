#include "oracles.hh"

#include <omq/parse.hh>
#include <omq/semantics.hh>
#include <omq/tableau.hh>
#include <omq/types.hh>

#include <doctest.h>

#include <algorithm>

using namespace omq;

namespace
{
    auto has(const std::vector<Concept> & cs, const std::string & text) -> bool
    {
        return std::find(cs.begin(), cs.end(), parse_concept(text)) != cs.end();
    }

    auto type_of(const TypeTable & table, const Interpretation & i, int d) -> std::vector<bool>
    {
        std::vector<bool> bits;
        for (auto & c : table.base)
            bits.push_back(eval_concept(i, c)[d]);
        return bits;
    }
}

TEST_CASE("closure")
{
    auto c = closure(parse_tbox("A sub some r.A"), parse_concept("A"));
    CHECK(has(c, "A"));
    CHECK(has(c, "some r.A"));
    CHECK(has(c, "not A"));
    CHECK(has(c, "not some r.A"));

    auto t = closure(TBox{}, Concept::top());
    CHECK(t.size() == 2);
    CHECK(has(t, "top"));
    CHECK(has(t, "not top"));

    auto tb = parse_tbox("A and B sub all r.(B or C)\nsome inv(s).A sub C");
    auto once = closure(tb, parse_concept("some r.C"));
    for (auto & x : once)
        for (auto & y : closure(tb, x))
            CHECK(std::find(once.begin(), once.end(), y) != once.end());
    for (auto & x : once)
        if (x.kind() == ConceptKind::negation)
            CHECK(std::find(once.begin(), once.end(), x.operand()) != once.end());
}

TEST_CASE("is_satisfiable")
{
    auto t = parse_tbox("A sub some r.A");
    CHECK(! is_satisfiable(Concept::bottom(), t));
    CHECK(is_satisfiable(parse_concept("A"), t));
    CHECK(! is_satisfiable(parse_concept("A and B"), parse_tbox("A and B sub bot")));
    CHECK(! is_satisfiable(parse_concept("some r.A and some r.B"), parse_tbox("func(r)\nA and B sub bot")));
    CHECK(is_satisfiable(parse_concept("some r.A and some r.B"), parse_tbox("func(r)\nA sub C")));
    CHECK(! is_satisfiable(parse_concept("A and some r.top"), parse_tbox("A sub all r.B\nsome inv(r).A sub not B")));
}

TEST_CASE("compute_types")
{
    auto two = compute_types(TBox{}, parse_concept("A"));
    CHECK(two.size() == 2);

    auto forced = compute_types(parse_tbox("top sub A"), parse_concept("A"));
    for (std::size_t t = 0 ; t < forced.size() ; ++t)
        CHECK(forced.contains(static_cast<int>(t), parse_concept("A")));

    auto table = compute_types(parse_tbox("A sub B or C\nB and C sub some r.A"), parse_concept("A and some r.B"));
    for (std::size_t t = 0 ; t < table.size() ; ++t)
        for (auto & c : table.base) {
            int k = static_cast<int>(t);
            if (c.kind() == ConceptKind::conjunction)
                CHECK(table.contains(k, c) == (table.contains(k, c.left()) && table.contains(k, c.right())));
            if (c.kind() == ConceptKind::disjunction)
                CHECK(table.contains(k, c) == (table.contains(k, c.left()) || table.contains(k, c.right())));
            CHECK(table.contains(k, Concept::negation(c)) == ! table.contains(k, c));
        }
}

TEST_CASE("successor relation")
{
    auto free = compute_types(TBox{}, parse_concept("some r.A"));
    for (std::size_t t = 0 ; t < free.size() ; ++t)
        for (std::size_t u = 0 ; u < free.size() ; ++u) {
            bool has_succ = free.contains(static_cast<int>(t), parse_concept("some r.A"));
            bool is_a = free.contains(static_cast<int>(u), parse_concept("A"));
            // only the existential in the closure constrains successors
            if (has_succ || ! is_a)
                CHECK(free.related(static_cast<int>(t), Role{"r", false}, static_cast<int>(u)));
        }

    auto table = compute_types(parse_tbox("A sub all r.B"), parse_concept("B"));
    for (std::size_t t = 0 ; t < table.size() ; ++t)
        for (std::size_t u = 0 ; u < table.size() ; ++u) {
            int a = static_cast<int>(t), b = static_cast<int>(u);
            if (table.contains(a, parse_concept("A")) && ! table.contains(b, parse_concept("B")))
                CHECK(! table.related(a, Role{"r", false}, b));
            CHECK(table.related(a, Role{"r", false}, b) == table.related(b, Role{"r", true}, a));
        }
}

TEST_CASE("types of finite models appear in the table")
{
    test::Rng rng(21);
    Signature s{{"A", "B"}, {"r"}};
    auto t = parse_tbox("A sub some r.B\nB sub all inv(r).A");
    auto table = compute_types(t, parse_concept("some r.some r.A"));
    int models = 0;
    for (int k = 0 ; k < 3000 && models < 60 ; ++k) {
        auto i = test::random_interpretation(rng, s, 1 + k % 4, 0.5);
        if (! is_model(i, t))
            continue;
        ++models;
        for (std::size_t d = 0 ; d < i.size() ; ++d) {
            auto mine = table.find(type_of(table, i, static_cast<int>(d)));
            REQUIRE(mine);
            for (int e : i.neighbours(Role{"r", false}, static_cast<int>(d))) {
                auto theirs = table.find(type_of(table, i, e));
                REQUIRE(theirs);
                CHECK(table.related(*mine, Role{"r", false}, *theirs));
            }
        }
    }
    CHECK(models >= 20);
}

TEST_CASE("types_omitting")
{
    auto all = types_omitting(TBox{}, Concept::bottom());
    CHECK(all.size() == compute_types(TBox{}, Concept::bottom()).size());
    CHECK(types_omitting(parse_tbox("top sub A"), parse_concept("A")).size() == 0);

    auto t = types_omitting(parse_tbox("A sub all r.B"), parse_concept("B"));
    for (std::size_t k = 0 ; k < t.size() ; ++k)
        CHECK(! t.contains(static_cast<int>(k), parse_concept("B")));
    CHECK(t.size() == 3);
}

TEST_CASE("kb_consistent")
{
    CHECK(kb_consistent(TBox{}, parse_abox("A(a)\nr(a,b)\nnot_used(c)\n")));
    CHECK(! kb_consistent(parse_tbox("A and B sub bot"), parse_abox("A(a)\nB(a)\n")));
    CHECK(! kb_consistent(parse_tbox("func(r)"), parse_abox("r(a,b1)\nr(a,b2)\n")));
    CHECK(kb_consistent(parse_tbox("func(r)"), parse_abox("r(a,b)\nr(c,b)\n")));
    CHECK(! kb_consistent(parse_tbox("func(inv(r))"), parse_abox("r(a,b)\nr(c,b)\n")));
}

TEST_CASE("satisfiability agrees with small model search")
{
    test::Rng rng(13);
    Signature s{{"A", "B"}, {"r"}};
    int found = 0;
    for (int k = 0 ; k < 200 ; ++k) {
        TBox t;
        t.inclusions.push_back({test::random_concept(rng, s, 2), test::random_concept(rng, s, 2)});
        auto c = test::random_concept(rng, s, 2);
        bool small = false;
        for (int m = 0 ; m < 60 && ! small ; ++m) {
            auto i = test::random_interpretation(rng, s, 1 + m % 3, 0.5);
            if (! is_model(i, t))
                continue;
            auto ext = eval_concept(i, c);
            small = std::find(ext.begin(), ext.end(), true) != ext.end();
        }
        if (small) {
            ++found;
            CHECK(is_satisfiable(c, t));
        }
    }
    CHECK(found > 20);
}
