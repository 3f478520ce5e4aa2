#include <omq/analysis.hh>
#include <omq/csp.hh>
#include <omq/enumerate.hh>

#include <functional>
#include <map>
#include <sstream>

using std::map;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace omq
{
    auto to_string(Outcome o) -> string
    {
        switch (o) {
            case Outcome::none_found: return "none-found";
            case Outcome::refuted: return "refuted";
            case Outcome::unknown: return "unknown";
            case Outcome::unsupported: return "unsupported-dialect";
        }
        return "?";
    }

    namespace
    {
        auto abox_text(const ABox & a) -> string
        {
            string out = "{";
            bool first = true;
            auto sep = [&] { if (! first) out += ", "; first = false; };
            for (auto & c : a.concept_assertions) {
                sep();
                out += c.concept_name + "(" + c.individual + ")";
            }
            for (auto & r : a.role_assertions) {
                sep();
                out += r.role + "(" + r.from + "," + r.to + ")";
            }
            return out + "}";
        }

        auto fact_text(const Fact & f) -> string
        {
            auto c = f.expr.to_string();
            if (f.expr.kind() != ConceptKind::name)
                c = "(" + c + ")";
            return c + "(" + f.individual + ")";
        }
    }

    auto to_string(const Witness & w) -> string
    {
        if (auto d = std::get_if<DisjunctionViolation>(&w)) {
            string out = "disjunction " + abox_text(d->abox) + " |= ";
            for (std::size_t k = 0 ; k < d->disjuncts.size() ; ++k)
                out += (k ? " or " : "") + fact_text(d->disjuncts[k]);
            return out;
        }
        auto & u = std::get<UnravelingViolation>(w);
        return "unraveling " + abox_text(u.abox) + " |= " + fact_text(u.fact);
    }

    auto eliq_shapes(const TBox & t, int max_depth) -> vector<Concept>
    {
        vector<Concept> out;
        for (auto & a : t.concept_names())
            out.push_back(Concept::name(a));
        vector<Role> roles;
        for (auto & r : t.role_names()) {
            roles.push_back(Role{r, false});
            if (has_inverse(dialect(t)))
                roles.push_back(Role{r, true});
        }
        std::size_t level_start = 0;
        for (int d = 1 ; d <= max_depth ; ++d) {
            vector<Concept> fillers;
            if (d == 1)
                fillers.push_back(Concept::top());
            fillers.insert(fillers.end(), out.begin() + static_cast<long>(level_start), out.end());
            level_start = out.size();
            for (auto & r : roles)
                for (auto & f : fillers)
                    out.push_back(Concept::exists(r, f));
        }
        return out;
    }

    auto probe_signature(const TBox & t) -> Signature
    {
        auto sigma = signature(t);
        set<string> used = sigma.concepts;
        used.insert(sigma.roles.begin(), sigma.roles.end());
        for (char c = 'B' ; c <= 'Z' ; ++c)
            if (! used.contains(string(1, c))) {
                sigma.concepts.insert(string(1, c));
                return sigma;
            }
        sigma.concepts.insert(fresh_name("Probe", used));
        return sigma;
    }

    namespace
    {
        auto as_assertions(const vector<Fact> & fs) -> vector<Assertion>
        {
            vector<Assertion> out;
            for (auto & f : fs)
                out.push_back({f.expr, f.individual});
            return out;
        }

        auto entailed(const TBox & t, const ABox & a, const vector<Fact> & fs, const TableauOptions & opts) -> bool
        {
            return entails_disjunction(t, a, as_assertions(fs), opts);
        }

        auto enumeration(const AnalysisBudget & b) -> EnumerationOptions
        {
            EnumerationOptions e;
            e.max_individuals = b.max_individuals;
            return e;
        }

        // Visits subsets of {0..n-1} of size k in lexicographic order.
        auto subsets(std::size_t n, std::size_t k, const std::function<bool(const vector<std::size_t> &)> & visit) -> bool
        {
            if (k > n)
                return true;
            vector<std::size_t> pick(k);
            for (std::size_t i = 0 ; i < k ; ++i)
                pick[i] = i;
            while (true) {
                if (! visit(pick))
                    return false;
                std::size_t i = k;
                while (i > 0 && pick[i - 1] == n - k + i - 1)
                    --i;
                if (i == 0)
                    return true;
                ++pick[i - 1];
                for (std::size_t j = i ; j < k ; ++j)
                    pick[j] = pick[j - 1] + 1;
            }
        }

        void settle(RefutationResult & r)
        {
            if (r.witness)
                r.outcome = Outcome::refuted;
            else if (r.skipped > 0)
                r.outcome = Outcome::unknown;
            else
                r.outcome = Outcome::none_found;
        }
    }

    auto refute_disjunction_property(const TBox & t, const AnalysisBudget & budget) -> RefutationResult
    {
        RefutationResult result;
        if (is_horn_alcfi(t)) {
            result.note = "Horn TBoxes are materializable";
            return result;
        }
        auto shapes = eliq_shapes(t, budget.max_depth);
        enumerate_aboxes(probe_signature(t), enumeration(budget), [&](const ABox & a) {
            ++result.aboxes;
            try {
                if (! kb_consistent(t, a, budget.tableau))
                    return true;
                vector<Fact> open;
                for (auto & c : shapes)
                    for (auto & ind : a.individuals())
                        if (! entails_instance(t, a, c, ind, budget.tableau))
                            open.push_back({c, ind});
                if (open.size() < 2 || ! entailed(t, a, open, budget.tableau))
                    return true;
                for (std::size_t k = 2 ; k <= budget.max_disjuncts && ! result.witness ; ++k)
                    subsets(open.size(), k, [&](const vector<std::size_t> & pick) {
                        vector<Fact> fs;
                        for (auto i : pick)
                            fs.push_back(open[i]);
                        if (! entailed(t, a, fs, budget.tableau))
                            return true;
                        result.witness = DisjunctionViolation{a, fs};
                        return false;
                    });
            }
            catch (const BudgetExceeded &) {
                ++result.skipped;
            }
            return ! result.witness;
        });
        settle(result);
        return result;
    }

    auto refute_unraveling_tolerance(const TBox & t, const AnalysisBudget & budget) -> RefutationResult
    {
        RefutationResult result;
        if (has_functional(dialect(t))) {
            result.outcome = Outcome::unsupported;
            result.note = "unraveling entailment is only decided for ALC and ALCI";
            return result;
        }
        if (is_horn_alcfi(t)) {
            result.note = "Horn TBoxes are unraveling tolerant";
            return result;
        }
        auto shapes = eliq_shapes(t, budget.max_depth);
        auto sigma = probe_signature(t);
        set<string> used = sigma.concepts;
        used.insert(sigma.roles.begin(), sigma.roles.end());
        auto marker = fresh_name("P", used);
        map<Concept, ABox> templates;
        auto template_for = [&](const Concept & q) -> const ABox & {
            auto it = templates.find(q);
            if (it == templates.end())
                it = templates.emplace(q, template_from_omq(t, q)).first;
            return it->second;
        };

        enumerate_aboxes(sigma, enumeration(budget), [&](const ABox & a) {
            ++result.aboxes;
            try {
                for (auto & ind : a.individuals())
                    for (auto & c : shapes) {
                        if (! entails_instance(t, a, c, ind, budget.tableau))
                            continue;
                        auto q = Concept::conjunction(Concept::name(marker), c);
                        auto marked = a;
                        marked.add_concept(marker, ind);
                        auto & templ = template_for(q);
                        if (! unraveling_hom(restrict_abox(marked, template_signature(t, q)), templ))
                            continue;
                        result.witness = UnravelingViolation{a, {c, ind}};
                        return false;
                    }
            }
            catch (const BudgetExceeded &) {
                ++result.skipped;
            }
            return true;
        });
        settle(result);
        return result;
    }

    auto verify_witness(const TBox & t, const Witness & w, const TableauOptions & opts) -> bool
    {
        if (auto d = std::get_if<DisjunctionViolation>(&w)) {
            if (! entailed(t, d->abox, d->disjuncts, opts))
                return false;
            for (auto & f : d->disjuncts)
                if (entails_instance(t, d->abox, f.expr, f.individual, opts))
                    return false;
            return true;
        }
        auto & u = std::get<UnravelingViolation>(w);
        if (! entails_instance(t, u.abox, u.fact.expr, u.fact.individual, opts))
            return false;
        auto b = booleanize_eliq(t, u.abox, u.fact.expr, u.fact.individual);
        return ! unraveling_entails(b.tbox, b.query, b.abox);
    }

    auto prune_disjuncts(const TBox & t, const DisjunctionViolation & w, const TableauOptions & opts)
        -> DisjunctionViolation
    {
        auto out = w;
        for (std::size_t i = 0 ; i < out.disjuncts.size() && out.disjuncts.size() > 2 ; ) {
            auto rest = out.disjuncts;
            rest.erase(rest.begin() + static_cast<long>(i));
            if (entailed(t, out.abox, rest, opts))
                out.disjuncts = rest;
            else
                ++i;
        }
        return out;
    }

    auto classify(const TBox & t, const AnalysisBudget & budget) -> ClassificationReport
    {
        ClassificationReport r;
        r.budget = budget;
        r.dialect = dialect(t);
        r.horn = is_horn_alcfi(t);
        r.depth_one = is_depth_one(t);
        r.materializable = refute_disjunction_property(t, budget);
        r.unraveling_tolerant = refute_unraveling_tolerance(t, budget);
        for (auto * p : {&r.materializable, &r.unraveling_tolerant})
            if (p->witness && ! verify_witness(t, *p->witness, budget.tableau)) {
                p->witness.reset();
                p->outcome = Outcome::unknown;
                p->note = "witness failed to re-verify";
            }

        if (r.horn) {
            r.verdict = "PTime, monadic Datalog rewritable";
            r.evidence_only = false;
        }
        else if (r.materializable.outcome == Outcome::refuted) {
            r.verdict = "coNP-hard";
            r.evidence_only = false;
        }
        else if (r.depth_one && r.materializable.outcome == Outcome::none_found)
            r.verdict = "PTime candidate (evidence only, not proof)";
        else
            r.verdict = "unknown";
        return r;
    }
}
