#include <omq/generators.hh>

#include <stdexcept>

using std::set;
using std::string;
using std::vector;

namespace omq
{
    auto gen_kcolor_tbox(std::size_t k) -> TBox
    {
        if (k < 2)
            throw std::invalid_argument("k must be at least 2");
        TBox t;
        auto a = [](std::size_t i) { return Concept::name("A" + std::to_string(i)); };
        auto m = Concept::name("M");
        Role r{"r", false};
        for (std::size_t i = 1 ; i <= k ; ++i)
            for (std::size_t j = i + 1 ; j <= k ; ++j)
                t.inclusions.push_back({Concept::conjunction(a(i), a(j)), m});
        for (std::size_t i = 1 ; i <= k ; ++i)
            t.inclusions.push_back({Concept::conjunction(a(i), Concept::exists(r, a(i))), m});
        vector<Concept> cover;
        for (std::size_t i = 1 ; i <= k ; ++i)
            cover.push_back(a(i));
        t.inclusions.push_back({Concept::top(), Concept::disjoin(cover)});
        return t;
    }

    auto gen_cycle_abox(std::size_t n, bool symmetric) -> ABox
    {
        if (n == 0)
            throw std::invalid_argument("a cycle needs at least one individual");
        ABox out;
        auto name = [](std::size_t i) { return "a" + std::to_string(i); };
        for (std::size_t i = 0 ; i < n ; ++i) {
            out.add_role("r", name(i), name((i + 1) % n));
            if (symmetric)
                out.add_role("r", name((i + 1) % n), name(i));
        }
        return out;
    }

    namespace
    {
        void grow(const Concept & c, const string & at, const string & prefix, std::size_t & next, ABox & out)
        {
            switch (c.kind()) {
                case ConceptKind::top:
                    return;
                case ConceptKind::name:
                    out.add_concept(c.symbol(), at);
                    return;
                case ConceptKind::conjunction:
                    grow(c.left(), at, prefix, next, out);
                    grow(c.right(), at, prefix, next, out);
                    return;
                case ConceptKind::exists: {
                    auto child = prefix + std::to_string(next++);
                    if (c.role().inverted)
                        out.add_role(c.role().name, child, at);
                    else
                        out.add_role(c.role().name, at, child);
                    grow(c.operand(), child, prefix, next, out);
                    return;
                }
                default:
                    throw std::invalid_argument("not an ELI concept: " + c.to_string());
            }
        }
    }

    auto concept_abox(const Concept & c, const string & root, const string & prefix) -> ABox
    {
        ABox out;
        std::size_t next = 0;
        grow(c, root, prefix, next, out);
        if (! out.individuals().contains(root))
            out.add_individual(root);
        return out;
    }

    auto variables(const Formula22 & phi) -> vector<string>
    {
        set<string> seen;
        vector<string> out;
        for (auto & c : phi)
            for (auto * l : {&c.p1, &c.p2, &c.n1, &c.n2})
                if (*l != "0" && *l != "1" && seen.insert(*l).second)
                    out.push_back(*l);
        return out;
    }

    auto satisfiable(const Formula22 & phi) -> bool
    {
        auto vars = variables(phi);
        if (vars.size() > 20)
            throw std::invalid_argument("too many variables for exhaustive search");
        for (std::size_t v = 0 ; v < (std::size_t{1} << vars.size()) ; ++v) {
            auto value = [&](const string & l) {
                if (l == "0" || l == "1")
                    return l == "1";
                for (std::size_t i = 0 ; i < vars.size() ; ++i)
                    if (vars[i] == l)
                        return (v >> i & 1) == 1;
                return false;
            };
            bool all = true;
            for (auto & c : phi)
                if (! (value(c.p1) || value(c.p2) || ! value(c.n1) || ! value(c.n2))) {
                    all = false;
                    break;
                }
            if (all)
                return true;
        }
        return false;
    }

    auto gen_2p2sat_reduction(const TBox & t, const DisjunctionViolation & w, const Formula22 & phi) -> Reduction
    {
        auto k = w.disjuncts.size();
        if (k < 2)
            throw std::invalid_argument("a disjunction violation needs at least two disjuncts");

        set<string> used = t.concept_names();
        auto troles = t.role_names();
        used.insert(troles.begin(), troles.end());
        auto wsig = w.abox.signature();
        used.insert(wsig.roles.begin(), wsig.roles.end());
        for (auto & f : w.disjuncts) {
            auto rs = role_names(f.expr);
            used.insert(rs.begin(), rs.end());
        }
        auto fresh = [&](const string & base) {
            auto n = fresh_name(base, used);
            used.insert(n);
            return n;
        };
        auto c = fresh("c"), p1 = fresh("p1"), p2 = fresh("p2"), n1 = fresh("n1"), n2 = fresh("n2"), h = fresh("h");
        vector<string> r;
        for (std::size_t j = 0 ; j < k ; ++j)
            r.push_back(fresh("r" + std::to_string(j)));

        Reduction out;
        auto & a = out.abox;
        for (std::size_t j = 1 ; j < k ; ++j)
            a.merge(concept_abox(w.disjuncts[j].expr, "d" + std::to_string(j), "d" + std::to_string(j) + "_"));

        // 1 makes tt true; 0 has one h-successor satisfying every exists r_j.C_j.
        a.merge(concept_abox(w.disjuncts[0].expr, "one_c", "one_c_"));
        a.add_role(r[0], "one", "one_c");
        a.add_role(h, "zero", "zero_h");
        for (std::size_t j = 1 ; j < k ; ++j)
            a.add_role(r[j], "zero_h", "d" + std::to_string(j));

        auto vars = variables(phi);
        auto literal = [&](const string & l) -> string {
            if (l == "0")
                return "zero";
            if (l == "1")
                return "one";
            for (std::size_t i = 0 ; i < vars.size() ; ++i)
                if (vars[i] == l)
                    return "z" + std::to_string(i);
            return l;
        };
        for (std::size_t i = 0 ; i < vars.size() ; ++i) {
            auto z = "z" + std::to_string(i);
            auto copy = [&](const string & ind) { return "v" + std::to_string(i) + "_" + ind; };
            for (auto & ca : w.abox.concept_assertions)
                a.add_concept(ca.concept_name, copy(ca.individual));
            for (auto & ra : w.abox.role_assertions)
                a.add_role(ra.role, copy(ra.from), copy(ra.to));
            for (auto & ind : w.abox.isolated)
                a.add_individual(copy(ind));
            a.add_role(r[0], z, copy(w.disjuncts[0].individual));
            for (std::size_t j = 1 ; j < k ; ++j) {
                auto b = "b" + std::to_string(i) + "_" + std::to_string(j);
                a.add_role(h, z, b);
                a.add_role(r[j], b, copy(w.disjuncts[j].individual));
                for (std::size_t l = 1 ; l < k ; ++l)
                    if (l != j)
                        a.add_role(r[l], b, "d" + std::to_string(l));
            }
        }
        for (std::size_t i = 0 ; i < phi.size() ; ++i) {
            auto ci = "c" + std::to_string(i);
            a.add_role(c, "f", ci);
            a.add_role(p1, ci, literal(phi[i].p1));
            a.add_role(p2, ci, literal(phi[i].p2));
            a.add_role(n1, ci, literal(phi[i].n1));
            a.add_role(n2, ci, literal(phi[i].n2));
        }
        if (phi.empty())
            a.add_individual("f");

        auto ex = [](const string & role, const Concept & d) { return Concept::exists(Role{role, false}, d); };
        auto tt = ex(r[0], w.disjuncts[0].expr);
        vector<Concept> parts;
        for (std::size_t j = 1 ; j < k ; ++j)
            parts.push_back(ex(r[j], w.disjuncts[j].expr));
        auto ff = ex(h, Concept::conjoin(parts));
        out.query = ex(c, Concept::conjoin({ex(p1, ff), ex(p2, ff), ex(n1, tt), ex(n2, tt)}));
        return out;
    }
}
