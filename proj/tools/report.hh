#ifndef OMQ_TOOLS_REPORT_HH
#define OMQ_TOOLS_REPORT_HH 1

#include <omq/analysis.hh>
#include <omq/kb.hh>

#include <json.hpp>

#include <string>
#include <vector>

namespace omq::cli
{
    extern const char * const version;

    enum class Format
    {
        text,
        json
    };

    namespace exit_code
    {
        constexpr int success = 0, usage = 1, budget = 2, parse = 3;
    }

    struct Report
    {
        std::string command;
        nlohmann::json result = nlohmann::json::object();
        nlohmann::json budget = nlohmann::json::object();
        std::string text;
        double millis = 0;
        int status = exit_code::success;
    };

    auto render(const Report &, Format) -> std::string;

    auto abox_json(const ABox &) -> nlohmann::json;
    auto tbox_json(const TBox &) -> nlohmann::json;
    auto tuples_json(const std::set<std::vector<std::string>> &) -> nlohmann::json;
    auto witness_json(const Witness &) -> nlohmann::json;
    auto refutation_json(const RefutationResult &) -> nlohmann::json;
    auto classification_json(const ClassificationReport &) -> nlohmann::json;
    auto classification_text(const ClassificationReport &) -> std::string;
    auto tuples_text(const std::set<std::vector<std::string>> &) -> std::string;
}

#endif
