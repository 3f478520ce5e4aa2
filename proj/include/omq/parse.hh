#ifndef OMQ_PARSE_HH
#define OMQ_PARSE_HH 1

#include <omq/concept.hh>
#include <omq/interpretation.hh>
#include <omq/kb.hh>
#include <omq/query.hh>

#include <stdexcept>
#include <string>

namespace omq
{
    class ParseError : public std::runtime_error
    {
        private:
            int _line, _column;

        public:
            ParseError(int line, int column, const std::string & message);

            auto line() const -> int { return _line; }
            auto column() const -> int { return _column; }
    };

    auto parse_concept(const std::string &) -> Concept;
    auto parse_tbox(const std::string &) -> TBox;
    auto parse_abox(const std::string &) -> ABox;
    auto parse_query(const std::string &) -> Query;
    auto parse_interpretation(const std::string &) -> Interpretation;

    auto to_string(const TBox &) -> std::string;
    auto to_string(const ABox &) -> std::string;
    auto to_string(const Interpretation &) -> std::string;
}

#endif
