#include "report.hh"

#include <omq/parse.hh>

#include <sstream>

using nlohmann::json;
using std::set;
using std::string;
using std::vector;

namespace omq::cli
{
    const char * const version = "0.1.0";

    auto render(const Report & r, Format f) -> string
    {
        if (f == Format::text)
            return r.text;
        json out;
        out["schema"] = 1;
        out["tool"] = "omq";
        out["version"] = version;
        out["command"] = r.command;
        out["result"] = r.result;
        out["budget"] = r.budget;
        out["timing_ms"] = r.millis;
        return out.dump(2) + "\n";
    }

    auto abox_json(const ABox & a) -> json
    {
        auto out = json::array();
        for (auto & c : a.concept_assertions)
            out.push_back(c.concept_name + "(" + c.individual + ")");
        for (auto & r : a.role_assertions)
            out.push_back(r.role + "(" + r.from + "," + r.to + ")");
        return out;
    }

    auto tbox_json(const TBox & t) -> json
    {
        auto out = json::array();
        std::istringstream lines(to_string(t));
        for (string line ; std::getline(lines, line) ; )
            out.push_back(line);
        return out;
    }

    auto tuples_json(const set<vector<string>> & ts) -> json
    {
        auto out = json::array();
        for (auto & t : ts)
            out.push_back(t);
        return out;
    }

    auto tuples_text(const set<vector<string>> & ts) -> string
    {
        string out;
        for (auto & t : ts) {
            out += "(";
            for (std::size_t i = 0 ; i < t.size() ; ++i)
                out += (i ? "," : "") + t[i];
            out += ")\n";
        }
        return out;
    }

    auto witness_json(const Witness & w) -> json
    {
        json out;
        if (auto d = std::get_if<DisjunctionViolation>(&w)) {
            out["kind"] = "disjunction";
            out["abox"] = abox_json(d->abox);
            out["disjuncts"] = json::array();
            for (auto & f : d->disjuncts)
                out["disjuncts"].push_back({{"concept", f.expr.to_string()}, {"individual", f.individual}});
            return out;
        }
        auto & u = std::get<UnravelingViolation>(w);
        out["kind"] = "unraveling";
        out["abox"] = abox_json(u.abox);
        out["concept"] = u.fact.expr.to_string();
        out["individual"] = u.fact.individual;
        return out;
    }

    auto refutation_json(const RefutationResult & r) -> json
    {
        json out;
        out["outcome"] = to_string(r.outcome);
        out["aboxes"] = r.aboxes;
        out["skipped"] = r.skipped;
        if (r.witness)
            out["witness"] = witness_json(*r.witness);
        if (! r.note.empty())
            out["note"] = r.note;
        return out;
    }

    auto classification_json(const ClassificationReport & c) -> json
    {
        json out;
        out["dialect"] = to_string(c.dialect);
        out["horn"] = c.horn;
        out["depth_one"] = c.depth_one;
        out["materializable"] = refutation_json(c.materializable);
        out["unraveling_tolerant"] = refutation_json(c.unraveling_tolerant);
        out["verdict"] = c.verdict;
        out["evidence_only"] = c.evidence_only;
        return out;
    }

    namespace
    {
        auto refutation_text(const string & name, const RefutationResult & r) -> string
        {
            string out = name + ": " + to_string(r.outcome) + " (" + std::to_string(r.aboxes) + " aboxes, "
                + std::to_string(r.skipped) + " skipped)";
            if (r.witness)
                out += "\n  witness: " + to_string(*r.witness);
            if (! r.note.empty())
                out += "\n  note: " + r.note;
            return out + "\n";
        }
    }

    auto classification_text(const ClassificationReport & c) -> string
    {
        string out = "dialect: " + to_string(c.dialect) + "\n";
        out += string("horn: ") + (c.horn ? "yes" : "no") + "\n";
        out += string("depth one: ") + (c.depth_one ? "yes" : "no") + "\n";
        out += refutation_text("materializability", c.materializable);
        out += refutation_text("unraveling tolerance", c.unraveling_tolerant);
        out += "verdict: " + c.verdict + "\n";
        out += "budget: " + std::to_string(c.budget.max_individuals) + " individuals, depth "
            + std::to_string(c.budget.max_depth) + ", " + std::to_string(c.budget.max_disjuncts) + " disjuncts\n";
        return out;
    }
}
