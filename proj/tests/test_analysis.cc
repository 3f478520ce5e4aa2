#include "oracles.hh"

#include <omq/analysis.hh>
#include <omq/enumerate.hh>
#include <omq/generators.hh>
#include <omq/parse.hh>
#include <omq/tableau.hh>

#include <doctest.h>

using namespace omq;

namespace
{
    auto disjunction(const RefutationResult & r) -> const DisjunctionViolation &
    {
        return std::get<DisjunctionViolation>(*r.witness);
    }

    auto all_formulas() -> std::vector<Formula22>
    {
        std::vector<std::string> lits{"0", "1", "x", "y"};
        std::vector<Clause22> clauses;
        for (auto & a : lits)
            for (auto & b : lits)
                for (auto & c : lits)
                    for (auto & d : lits)
                        clauses.push_back({a, b, c, d});
        std::vector<Formula22> out;
        for (auto & c : clauses)
            out.push_back({c});
        // pairs are sampled: all of them would be 65536 instances
        for (std::size_t i = 0 ; i < clauses.size() ; i += 37)
            for (std::size_t j = 0 ; j < clauses.size() ; j += 41)
                out.push_back({clauses[i], clauses[j]});
        return out;
    }
}

TEST_CASE("enumeration up to isomorphism")
{
    EnumerationOptions opts;
    opts.max_individuals = 3;
    CHECK(count_aboxes(Signature{{}, {"r"}}, opts) == 1 + 8 + 94);
    CHECK(count_aboxes(Signature{{"A"}, {}}, opts) == 3);
    std::vector<ABox> seen;
    enumerate_aboxes(Signature{{"A"}, {"r"}}, {2, 24}, [&](const ABox & a) {
        for (auto & b : seen)
            CHECK(! isomorphic(a, b));
        seen.push_back(a);
        return true;
    });
    CHECK(seen.size() == 35);
    CHECK(individual_name(0) == "a");
    CHECK(individual_name(2) == "c");
}

TEST_CASE("refute_disjunction_property")
{
    auto r = refute_disjunction_property(parse_tbox("A sub A1 or A2"));
    REQUIRE(r.outcome == Outcome::refuted);
    auto & w = disjunction(r);
    CHECK(w.abox == parse_abox("A(a)\n"));
    REQUIRE(w.disjuncts.size() == 2);
    CHECK(w.disjuncts[0] == Fact{parse_concept("A1"), "a"});
    CHECK(w.disjuncts[1] == Fact{parse_concept("A2"), "a"});
    CHECK(verify_witness(parse_tbox("A sub A1 or A2"), *r.witness));

    auto k2 = refute_disjunction_property(gen_kcolor_tbox(2));
    REQUIRE(k2.outcome == Outcome::refuted);
    auto & w2 = disjunction(k2);
    CHECK(w2.abox.size() == 1);
    CHECK(w2.disjuncts.size() == 2);

    CHECK(refute_disjunction_property(TBox{}).outcome == Outcome::none_found);
    CHECK(refute_disjunction_property(parse_tbox("A sub some r.A")).outcome == Outcome::none_found);
}

TEST_CASE("refute_unraveling_tolerance")
{
    auto t2 = parse_tbox("A and some r.A sub B\nnot A and some r.not A sub B");
    AnalysisBudget b;
    b.max_individuals = 2;
    auto r = refute_unraveling_tolerance(t2, b);
    REQUIRE(r.outcome == Outcome::refuted);
    auto & w = std::get<UnravelingViolation>(*r.witness);
    CHECK(w.abox == parse_abox("r(a,a)\n"));
    CHECK(w.fact == Fact{parse_concept("B"), "a"});
    CHECK(verify_witness(t2, *r.witness));

    CHECK(refute_unraveling_tolerance(parse_tbox("A sub all r.B"), b).outcome == Outcome::none_found);
    CHECK(refute_unraveling_tolerance(parse_tbox("some r.A sub A"), b).outcome == Outcome::none_found);
    CHECK(refute_unraveling_tolerance(parse_tbox("func(r)\nA sub B or C"), b).outcome == Outcome::unsupported);
}

TEST_CASE("classify")
{
    auto horn = classify(parse_tbox("A sub some r.A"));
    CHECK(horn.horn);
    CHECK(horn.verdict.find("PTime") != std::string::npos);
    CHECK(! horn.evidence_only);

    auto dis = classify(parse_tbox("A sub A1 or A2"));
    CHECK(dis.depth_one);
    CHECK(dis.verdict == "coNP-hard");

    auto t1 = classify(parse_tbox("A sub all r.B"));
    CHECK(t1.verdict.find("coNP") == std::string::npos);

    test::Rng rng(71);
    Signature s{{"A", "B"}, {"r"}};
    for (int k = 0 ; k < 10 ; ++k) {
        auto t = test::random_horn_tbox(rng, s, 1, 2, false);
        CHECK(classify(t).verdict.find("coNP") == std::string::npos);
    }
}

TEST_CASE("budgets only add witnesses")
{
    auto t = parse_tbox("some r.A sub B1 or B2");
    AnalysisBudget small, big;
    small.max_individuals = 1;
    big.max_individuals = 2;
    auto a = refute_disjunction_property(t, small);
    auto b = refute_disjunction_property(t, big);
    if (a.outcome == Outcome::refuted)
        CHECK(b.outcome == Outcome::refuted);
    CHECK(b.outcome == Outcome::refuted);
}

TEST_CASE("k-coloring TBoxes")
{
    auto m = Concept::name("M");
    auto tri = gen_cycle_abox(3, true);
    CHECK(entails_boolean(gen_kcolor_tbox(2), tri, m));
    CHECK(! entails_boolean(gen_kcolor_tbox(3), tri, m));
    CHECK(! entails_boolean(gen_kcolor_tbox(2), parse_abox("r(a,b)\nr(b,a)\n"), m));
    CHECK_THROWS(gen_kcolor_tbox(1));
}

TEST_CASE("gen_cycle_abox")
{
    CHECK(gen_cycle_abox(1, true) == parse_abox("r(a0,a0)\n"));
    CHECK(gen_cycle_abox(3, false).role_assertions.size() == 3);
    CHECK(gen_cycle_abox(3, true).role_assertions.size() == 6);
}

TEST_CASE("2+2-SAT reduction")
{
    auto t = parse_tbox("A sub A1 or A2");
    auto r = refute_disjunction_property(t);
    REQUIRE(r.outcome == Outcome::refuted);
    auto w = prune_disjuncts(t, disjunction(r));

    auto unsat = gen_2p2sat_reduction(t, w, {{"0", "0", "1", "1"}});
    CHECK(entails_instance(t, unsat.abox, unsat.query, unsat.individual));
    auto sat = gen_2p2sat_reduction(t, w, {{"1", "1", "0", "0"}});
    CHECK(! entails_instance(t, sat.abox, sat.query, sat.individual));

    std::size_t checked = 0;
    for (auto & phi : all_formulas()) {
        auto red = gen_2p2sat_reduction(t, w, phi);
        CHECK(red.abox.size() <= 40 * (phi.size() + variables(phi).size() + 2));
        bool entailed = entails_instance(t, red.abox, red.query, red.individual);
        CHECK(entailed == ! satisfiable(phi));
        ++checked;
    }
    CHECK(checked > 300);
}
