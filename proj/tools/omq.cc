#include "report.hh"

#include <omq/analysis.hh>
#include <omq/chase.hh>
#include <omq/csp.hh>
#include <omq/datalog.hh>
#include <omq/engines.hh>
#include <omq/parse.hh>
#include <omq/rewriting.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using nlohmann::json;
using std::string;
using std::vector;

namespace omq::cli
{
    namespace
    {
        struct Failure : std::runtime_error
        {
            int code;

            Failure(int c, const string & message) :
                std::runtime_error(message),
                code(c)
            {}
        };

        struct Config
        {
            string tbox, abox, query, program, templ, manifest, output, engine = "auto", format = "text";
            string sigma_concepts, sigma_roles;
            std::uint64_t seed = 1;
            bool trace = false, full_schema = false;
            int chase_depth = 64;
            std::size_t chase_assertions = 500'000;
            std::size_t tableau_nodes = 1'000'000;
            std::size_t model_bits = 22;
            std::size_t extra_elements = 1;
            std::size_t max_individuals = 3;
            int max_depth = 1;
            std::size_t max_disjuncts = 2;
        };

        auto read_file(const string & path) -> string
        {
            std::ifstream in(path);
            if (! in)
                throw Failure(exit_code::usage, "cannot read " + path);
            std::stringstream s;
            s << in.rdbuf();
            return s.str();
        }

        void write_file(const string & path, const string & text)
        {
            std::ofstream out(path);
            if (! out)
                throw Failure(exit_code::usage, "cannot write " + path);
            out << text;
        }

        auto require(const string & value, const string & flag) -> const string &
        {
            if (value.empty())
                throw Failure(exit_code::usage, flag + " is required");
            return value;
        }

        template <typename T_>
        auto parse_file(const string & path, T_ (*parse)(const string &)) -> T_
        {
            auto text = read_file(path);
            try {
                return parse(text);
            }
            catch (const ParseError & e) {
                throw Failure(exit_code::parse, path + ":" + e.what());
            }
        }

        auto load_tbox(const Config & c) -> TBox
        {
            return c.tbox.empty() ? TBox{} : parse_file(c.tbox, &parse_tbox);
        }

        auto check_reserved(const ABox & a, const string & path) -> void
        {
            auto sigma = a.signature();
            for (auto * names : {&sigma.concepts, &sigma.roles})
                for (auto & n : *names)
                    if (n.starts_with("__"))
                        throw Failure(exit_code::usage, path + ": names starting with __ are reserved, found " + n);
        }

        auto load_abox(const string & path) -> ABox
        {
            auto a = parse_file(path, &parse_abox);
            check_reserved(a, path);
            return a;
        }

        auto chase_budget(const Config & c) -> ChaseBudget
        {
            ChaseBudget b;
            b.max_depth = c.chase_depth;
            b.max_assertions = c.chase_assertions;
            b.trace = c.trace;
            return b;
        }

        auto engine_options(const Config & c) -> EngineOptions
        {
            EngineOptions o;
            o.chase = chase_budget(c);
            o.chase.trace = false;
            o.tableau.node_budget = c.tableau_nodes;
            o.max_model_bits = c.model_bits;
            o.extra_elements = c.extra_elements;
            return o;
        }

        auto budget_json(const Config & c) -> json
        {
            return {
                {"chase_depth", c.chase_depth},
                {"chase_assertions", c.chase_assertions},
                {"tableau_nodes", c.tableau_nodes},
                {"model_bits", c.model_bits},
                {"extra_elements", c.extra_elements}
            };
        }

        auto split_list(const string & s) -> std::set<string>
        {
            std::set<string> out;
            std::stringstream in(s);
            for (string item ; std::getline(in, item, ',') ; )
                if (! item.empty())
                    out.insert(item);
            return out;
        }

        auto cmd_answer(const Config & c) -> Report
        {
            Report r;
            auto t = load_tbox(c);
            auto a = load_abox(require(c.abox, "--abox"));
            auto q = parse_file(require(c.query, "--query"), &parse_query);
            auto engine = parse_engine(c.engine);
            if (! engine)
                throw Failure(exit_code::usage, "unknown engine " + c.engine);
            r.result["dialect"] = to_string(dialect(t));
            try {
                auto answers = certain_answers(t, a, q, *engine, engine_options(c));
                r.result["engine"] = to_string(answers.engine);
                r.result["exact"] = answers.exact;
                r.result["status"] = answers.exact ? "exact" : "incomplete-engine";
                r.result["answers"] = tuples_json(answers.answers);
                r.result["undecided"] = tuples_json(answers.undecided);
                if (! answers.note.empty())
                    r.result["note"] = answers.note;
                r.text = "engine: " + to_string(answers.engine) + (answers.exact ? "" : " (incomplete-engine)") + "\n"
                    + tuples_text(answers.answers);
                if (! answers.undecided.empty()) {
                    r.text += "undecided:\n" + tuples_text(answers.undecided);
                    r.status = exit_code::budget;
                }
            }
            catch (const Unsupported & e) {
                r.result["engine"] = c.engine;
                r.result["status"] = "incomplete-engine";
                r.result["note"] = e.what();
                r.text = "incomplete-engine: " + string(e.what()) + "\n";
            }
            return r;
        }

        auto cmd_rewrite(const Config & c) -> Report
        {
            Report r;
            auto t = load_tbox(c);
            auto q = parse_file(require(c.query, "--query"), &parse_query);
            if (! q.is_tree())
                throw Failure(exit_code::usage, "rewriting needs an ELIQ or a Boolean ELIQ");
            RewritingOptions opts;
            opts.full_schema = c.full_schema;
            auto rw = construct_rewriting(t, q.tree(), opts);
            auto text = to_string(rw.program);
            if (! c.output.empty())
                write_file(c.output, text);
            r.result["program"] = text;
            r.result["types"] = rw.types.size();
            r.result["idbs"] = rw.idbs.size();
            r.text = text;
            if (! c.abox.empty()) {
                auto derived = evaluate(rw.program, load_abox(c.abox));
                std::set<vector<string>> ts(derived.begin(), derived.end());
                r.result["derived"] = tuples_json(ts);
                r.text += "# derived\n" + tuples_text(ts);
            }
            return r;
        }

        auto cmd_chase(const Config & c) -> Report
        {
            Report r;
            auto t = load_tbox(c);
            if (! is_horn_alcfi(t))
                throw Failure(exit_code::usage, "the chase needs a Horn TBox");
            auto completion = complete(t, load_abox(require(c.abox, "--abox")), chase_budget(c));
            bool done = completion.status == ChaseStatus::complete;
            r.result["status"] = done ? "complete" : "budget-exhausted";
            r.result["bottom"] = completion.bottom;
            r.result["abox"] = abox_json(completion.to_abox());
            auto legend = json::array();
            for (auto & [k, concept_] : completion.legend())
                legend.push_back({k, concept_.to_string()});
            r.result["legend"] = legend;
            r.text = completion.bottom ? "# inconsistent\n" : "";
            r.text += to_string(completion.to_abox());
            if (c.trace) {
                r.result["trace"] = completion.trace;
                for (auto & line : completion.trace)
                    r.text += "# " + line + "\n";
            }
            if (! done)
                r.status = exit_code::budget;
            return r;
        }

        auto cmd_template(const Config & c) -> Report
        {
            Report r;
            auto t = load_tbox(c);
            auto q = parse_file(require(c.query, "--query"), &parse_query);
            if (! q.is_tree())
                throw Failure(exit_code::usage, "templates need a tree-shaped query");
            if (has_functional(dialect(t)))
                throw Failure(exit_code::usage, "templates are only built for ALC and ALCI TBoxes");
            auto templ = template_from_omq(t, q.tree().expr);
            r.result["template"] = abox_json(templ);
            r.result["elements"] = templ.individuals().size();
            r.text = to_string(templ);
            if (! c.output.empty())
                write_file(c.output, r.text);
            return r;
        }

        auto cmd_encode(const Config & c) -> Report
        {
            Report r;
            auto templ = parse_file(require(c.templ, "--template"), &parse_abox);
            check_reserved(templ, c.templ);
            auto sigma = templ.signature();
            if (! c.sigma_concepts.empty() || ! c.sigma_roles.empty()) {
                auto cs = split_list(c.sigma_concepts), rs = split_list(c.sigma_roles);
                sigma.concepts.insert(cs.begin(), cs.end());
                sigma.roles.insert(rs.begin(), rs.end());
            }
            auto enc = tbox_from_template(templ, sigma);
            json manifest;
            manifest["marker"] = enc.marker;
            manifest["signature"] = {{"concepts", enc.sigma.concepts}, {"roles", enc.sigma.roles}};
            manifest["elements"] = enc.element_names;
            json hidden = json::object();
            for (auto & [b, h] : enc.abstraction.hidden)
                hidden[b] = {{"z", h.z}, {"r", h.r}, {"s", h.s}};
            manifest["hidden"] = hidden;
            auto text = to_string(enc.tbox);
            if (! c.output.empty())
                write_file(c.output, text);
            if (! c.manifest.empty())
                write_file(c.manifest, manifest.dump(2) + "\n");
            r.result["tbox"] = tbox_json(enc.tbox);
            r.result["manifest"] = manifest;
            r.text = text;
            return r;
        }

        auto cmd_abstract(const Config & c) -> Report
        {
            Report r;
            auto t = load_tbox(c);
            Signature sigma;
            sigma.concepts = split_list(c.sigma_concepts);
            sigma.roles = c.sigma_roles.empty() ? t.role_names() : split_list(c.sigma_roles);
            Abstraction abs;
            try {
                abs = enriched_abstraction(t, sigma);
            }
            catch (const std::invalid_argument & e) {
                throw Failure(exit_code::usage, e.what());
            }
            r.result["abstracted"] = tbox_json(abs.abstracted);
            r.result["existential"] = tbox_json(abs.existential);
            json hidden = json::object();
            for (auto & [b, h] : abs.hidden)
                hidden[b] = {{"z", h.z}, {"r", h.r}, {"s", h.s}};
            r.result["hidden"] = hidden;
            r.text = "# abstracted\n" + to_string(abs.abstracted) + "# existential\n" + to_string(abs.existential);
            return r;
        }

        auto cmd_classify(const Config & c) -> Report
        {
            Report r;
            auto t = load_tbox(c);
            AnalysisBudget b;
            b.max_individuals = c.max_individuals;
            b.max_depth = c.max_depth;
            b.max_disjuncts = c.max_disjuncts;
            b.tableau.node_budget = c.tableau_nodes;
            auto report = classify(t, b);
            r.result = classification_json(report);
            r.text = classification_text(report);
            r.budget["max_individuals"] = b.max_individuals;
            r.budget["max_depth"] = b.max_depth;
            r.budget["max_disjuncts"] = b.max_disjuncts;
            auto exhausted = [](const RefutationResult & x) { return x.outcome == Outcome::unknown && x.aboxes > 0 && x.skipped == x.aboxes; };
            if (exhausted(report.materializable) && exhausted(report.unraveling_tolerant))
                r.status = exit_code::budget;
            return r;
        }

        auto random_abox(const Signature & sigma, std::size_t individuals, std::mt19937_64 & rng) -> ABox
        {
            std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(1, individuals));
            std::bernoulli_distribution coin(0.3);
            auto n = count(rng);
            ABox a;
            auto name = [](std::size_t i) { return "a" + std::to_string(i); };
            for (std::size_t i = 0 ; i < n ; ++i) {
                a.add_individual(name(i));
                for (auto & cn : sigma.concepts)
                    if (coin(rng))
                        a.add_concept(cn, name(i));
                for (auto & rn : sigma.roles)
                    for (std::size_t j = 0 ; j < n ; ++j)
                        if (coin(rng))
                            a.add_role(rn, name(i), name(j));
            }
            for (auto & ind : ABox{a.concept_assertions, a.role_assertions, {}}.individuals())
                a.isolated.erase(ind);
            return a;
        }

        auto cmd_bench(const Config & c) -> Report
        {
            Report r;
            auto path = require(c.manifest, "--manifest");
            json manifest;
            try {
                manifest = json::parse(read_file(path));
            }
            catch (const json::parse_error & e) {
                throw Failure(exit_code::parse, path + ": " + e.what());
            }
            auto rows = manifest.is_array() ? manifest : manifest.value("rows", json::array());
            auto base = std::filesystem::path(path).parent_path();
            auto resolve = [&](const string & p) { return (base / p).string(); };

            auto table = json::array();
            r.text = "row\taboxes\tengine\tanswers\tms\tstatus\n";
            for (std::size_t k = 0 ; k < rows.size() ; ++k) {
                auto & row = rows[k];
                auto name = row.value("name", "row" + std::to_string(k));
                Config rc = c;
                rc.tbox = row.contains("tbox") ? resolve(row["tbox"].get<string>()) : "";
                auto t = load_tbox(rc);
                auto q = parse_file(resolve(row.at("query").get<string>()), &parse_query);
                vector<ABox> corpus;
                for (auto & p : row.value("aboxes", json::array()))
                    corpus.push_back(load_abox(resolve(p.get<string>())));
                if (row.contains("random")) {
                    auto & random_row = row["random"];
                    std::mt19937_64 rng(c.seed + k);
                    auto sigma = signature(t);
                    sigma.merge(q.signature());
                    for (std::size_t i = 0 ; i < random_row.value("count", std::size_t{10}) ; ++i)
                        corpus.push_back(random_abox(sigma, random_row.value("individuals", std::size_t{4}), rng));
                }
                vector<string> engines = row.value("engines", vector<string>{"auto"});
                vector<vector<std::set<Tuple>>> results;
                bool comparable = true;
                for (auto & en : engines) {
                    auto e = parse_engine(en);
                    if (! e)
                        throw Failure(exit_code::usage, "unknown engine " + en);
                    auto start = std::chrono::steady_clock::now();
                    vector<std::set<Tuple>> per;
                    std::size_t answers = 0;
                    string status = "exact";
                    try {
                        for (auto & a : corpus) {
                            auto rep = certain_answers(t, a, q, *e, engine_options(c));
                            if (! rep.exact || ! rep.undecided.empty()) {
                                status = "incomplete";
                                comparable = false;
                            }
                            answers += rep.answers.size();
                            per.push_back(rep.answers);
                        }
                    }
                    catch (const Unsupported &) {
                        status = "unsupported";
                        comparable = false;
                    }
                    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                    results.push_back(per);
                    table.push_back({{"row", name}, {"aboxes", corpus.size()}, {"engine", en}, {"answers", answers},
                            {"status", status}, {"ms", ms}});
                    std::ostringstream line;
                    line << name << "\t" << corpus.size() << "\t" << en << "\t" << answers << "\t" << ms << "\t";
                    r.text += line.str() + status + "\n";
                }
                string agreement = "n/a";
                if (comparable && results.size() > 1)
                    agreement = std::all_of(results.begin(), results.end(), [&](auto & x) { return x == results[0]; })
                        ? "agree" : "disagree";
                for (std::size_t i = table.size() - engines.size() ; i < table.size() ; ++i)
                    table[i]["agreement"] = agreement;
                r.text += name + "\tagreement: " + agreement + "\n";
            }
            r.result["table"] = table;
            return r;
        }

        auto cmd_validate(const Config & c) -> Report
        {
            Report r;
            if (c.tbox.empty() && c.abox.empty() && c.query.empty() && c.program.empty())
                throw Failure(exit_code::usage, "nothing to validate");
            if (! c.tbox.empty()) {
                auto t = parse_file(c.tbox, &parse_tbox);
                r.result["tbox"] = {{"dialect", to_string(dialect(t))}, {"horn", is_horn_alcfi(t)},
                    {"depth_one", is_depth_one(t)}, {"inclusions", t.inclusions.size()}, {"size", t.size()}};
                r.text += "tbox: " + to_string(dialect(t)) + (is_horn_alcfi(t) ? ", horn" : "")
                    + (is_depth_one(t) ? ", depth one" : "") + ", " + std::to_string(t.inclusions.size()) + " inclusions\n";
            }
            if (! c.abox.empty()) {
                auto a = load_abox(c.abox);
                r.result["abox"] = {{"assertions", a.size()}, {"individuals", a.individuals().size()}};
                r.text += "abox: " + std::to_string(a.size()) + " assertions, "
                    + std::to_string(a.individuals().size()) + " individuals\n";
            }
            if (! c.query.empty()) {
                auto q = parse_file(c.query, &parse_query);
                r.result["query"] = {{"kind", to_string(q.kind())}, {"arity", q.arity()}};
                r.text += "query: " + to_string(q.kind()) + ", arity " + std::to_string(q.arity()) + "\n";
            }
            if (! c.program.empty()) {
                auto p = parse_file(c.program, &parse_program);
                r.result["program"] = {{"rules", p.rules.size()}, {"monadic", p.is_monadic()}, {"goal", p.goal}};
                r.text += "program: " + std::to_string(p.rules.size()) + " rules"
                    + (p.is_monadic() ? ", monadic" : "") + "\n";
            }
            return r;
        }

        void tbox_flags(CLI::App * s, Config & c)
        {
            s->add_option("--tbox", c.tbox, "TBox file; empty TBox when absent");
        }

        void budget_flags(CLI::App * s, Config & c)
        {
            s->add_option("--budget-chase-depth", c.chase_depth, "maximum depth of anonymous chase elements");
            s->add_option("--budget-chase-assertions", c.chase_assertions, "maximum number of chase assertions");
            s->add_option("--budget-tableau-nodes", c.tableau_nodes, "node budget of the tableau");
            s->add_option("--budget-model-bits", c.model_bits, "free bits of the bounded model search");
            s->add_option("--budget-extra-elements", c.extra_elements, "anonymous elements of the bounded model search");
        }
    }

    auto run(int argc, char ** argv) -> int
    {
        CLI::App app{"ontology-mediated query answering over ALC, ALCI, ALCF and ALCFI"};
        app.require_subcommand(1);
        Config c;
        app.add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        app.add_option("--seed", c.seed, "seed for generated corpora");

        auto answer = app.add_subcommand("answer", "certain answers");
        tbox_flags(answer, c);
        answer->add_option("--abox", c.abox)->required();
        answer->add_option("--query", c.query)->required();
        answer->add_option("--engine", c.engine, "auto, chase, csp, tableau or bruteforce");
        budget_flags(answer, c);

        auto rewrite = app.add_subcommand("rewrite", "monadic Datalog rewriting");
        tbox_flags(rewrite, c);
        rewrite->add_option("--query", c.query)->required();
        rewrite->add_option("--output,-o", c.output, "write the program here");
        rewrite->add_option("--abox", c.abox, "also evaluate on this ABox");
        rewrite->add_flag("--full-schema", c.full_schema, "one IDB per set of types");

        auto chase = app.add_subcommand("chase", "Horn completion");
        tbox_flags(chase, c);
        chase->add_option("--abox", c.abox)->required();
        chase->add_flag("--trace", c.trace, "one line per rule application");
        budget_flags(chase, c);

        auto templ = app.add_subcommand("template", "CSP template of an ALCI OMQ");
        tbox_flags(templ, c);
        templ->add_option("--query", c.query)->required();
        templ->add_option("--output,-o", c.output);

        auto encode = app.add_subcommand("encode-csp", "TBox for the CSP of a template");
        encode->add_option("--template", c.templ)->required();
        encode->add_option("--concepts", c.sigma_concepts, "extra signature concept names, comma separated");
        encode->add_option("--roles", c.sigma_roles, "extra signature role names, comma separated");
        encode->add_option("--output,-o", c.output);
        encode->add_option("--manifest", c.manifest, "write marker, signature and hidden symbols here");

        auto abstract = app.add_subcommand("abstract", "enriched signature abstraction");
        tbox_flags(abstract, c);
        abstract->add_option("--concepts", c.sigma_concepts, "visible concept names, comma separated");
        abstract->add_option("--roles", c.sigma_roles, "visible role names; all roles of the TBox by default");

        auto cls = app.add_subcommand("classify", "materializability and unraveling tolerance");
        tbox_flags(cls, c);
        cls->add_option("--max-individuals", c.max_individuals);
        cls->add_option("--max-depth", c.max_depth);
        cls->add_option("--max-disjuncts", c.max_disjuncts);
        budget_flags(cls, c);

        auto bench = app.add_subcommand("bench", "replay a manifest of (tbox, corpus, query) rows");
        bench->add_option("--manifest", c.manifest)->required();
        budget_flags(bench, c);

        auto validate = app.add_subcommand("validate", "parse and summarize input files");
        tbox_flags(validate, c);
        validate->add_option("--abox", c.abox);
        validate->add_option("--query", c.query);
        validate->add_option("--program", c.program);

        for (auto * s : {answer, rewrite, chase, templ, encode, abstract, cls, bench, validate}) {
            s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
            s->add_option("--seed", c.seed, "seed for generated corpora");
        }

        try {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError & e) {
            auto code = app.exit(e);
            return code == 0 ? exit_code::success : exit_code::usage;
        }

        auto format = c.format == "json" ? Format::json : Format::text;
        auto command = app.get_subcommands().front()->get_name();
        try {
            auto start = std::chrono::steady_clock::now();
            Report r;
            if (command == "answer")
                r = cmd_answer(c);
            else if (command == "rewrite")
                r = cmd_rewrite(c);
            else if (command == "chase")
                r = cmd_chase(c);
            else if (command == "template")
                r = cmd_template(c);
            else if (command == "encode-csp")
                r = cmd_encode(c);
            else if (command == "abstract")
                r = cmd_abstract(c);
            else if (command == "classify")
                r = cmd_classify(c);
            else if (command == "bench")
                r = cmd_bench(c);
            else
                r = cmd_validate(c);
            r.command = command;
            r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            if (r.budget.empty() && command != "validate" && command != "bench")
                r.budget = budget_json(c);
            std::cout << render(r, format);
            return r.status;
        }
        catch (const Failure & e) {
            std::cerr << "omq: " << e.what() << "\n";
            return e.code;
        }
        catch (const ParseError & e) {
            std::cerr << "omq: " << e.what() << "\n";
            return exit_code::parse;
        }
        catch (const BudgetExceeded & e) {
            std::cerr << "omq: budget exhausted: " << e.what() << "\n";
            return exit_code::budget;
        }
        catch (const SizeGuardExceeded & e) {
            std::cerr << "omq: budget exhausted: " << e.what() << "\n";
            return exit_code::budget;
        }
        catch (const std::exception & e) {
            std::cerr << "omq: " << e.what() << "\n";
            return exit_code::usage;
        }
    }
}

auto main(int argc, char ** argv) -> int
{
    return omq::cli::run(argc, argv);
}
