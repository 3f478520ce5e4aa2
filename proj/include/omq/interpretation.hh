#ifndef OMQ_INTERPRETATION_HH
#define OMQ_INTERPRETATION_HH 1

#include <omq/concept.hh>
#include <omq/kb.hh>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace omq
{
    /**
     * A finite interpretation. Elements are dense integers with string names;
     * the named ones stand for individual names under the standard name
     * assumption. An ABox read as an interpretation has every element named.
     */
    class Interpretation
    {
        private:
            struct RoleExtension
            {
                std::set<std::pair<int, int>> pairs;
                std::vector<std::vector<int>> succ, pred;
            };

            std::vector<std::string> _names;
            std::vector<bool> _named;
            std::vector<std::set<std::string>> _labels;
            std::unordered_map<std::string, int> _index;
            std::map<std::string, std::set<int>> _concepts;
            std::map<std::string, RoleExtension> _roles;

        public:
            auto add_element(const std::string & name, bool named) -> int;
            void add_concept(const std::string & name, int e);
            void add_edge(const std::string & role, int from, int to);
            void add_edge(const Role & role, int from, int to);

            auto size() const -> std::size_t { return _names.size(); }
            auto name(int e) const -> const std::string & { return _names[e]; }
            auto find(const std::string & name) const -> std::optional<int>;
            auto is_named(int e) const -> bool { return _named[e]; }
            auto named_elements() const -> std::vector<int>;

            auto labels(int e) const -> const std::set<std::string> & { return _labels[e]; }
            auto has_concept(const std::string & name, int e) const -> bool;
            auto has_edge(const std::string & role, int from, int to) const -> bool;
            auto has_edge(const Role & role, int from, int to) const -> bool;

            // r-successors of e, or r-predecessors when the role is inverted.
            auto neighbours(const Role & role, int e) const -> const std::vector<int> &;

            auto concept_names() const -> std::set<std::string>;
            auto role_names() const -> std::set<std::string>;
            auto members(const std::string & name) const -> const std::set<int> &;
            auto edges(const std::string & role) const -> const std::set<std::pair<int, int>> &;
            auto edge_count() const -> std::size_t;

            static auto from_abox(const ABox &) -> Interpretation;
            auto to_abox() const -> ABox;

            auto operator==(const Interpretation &) const -> bool;
    };
}

#endif
