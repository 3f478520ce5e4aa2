#include <omq/enumerate.hh>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

using std::map;
using std::set;
using std::size_t;
using std::string;
using std::vector;

namespace omq
{
    auto individual_name(size_t k) -> string
    {
        if (k < 26)
            return string(1, static_cast<char>('a' + k));
        return "i" + std::to_string(k);
    }

    namespace
    {
        struct Layout
        {
            size_t n, concepts, roles;

            auto concept_bit(size_t c, size_t i) const -> size_t { return i * concepts + c; }
            auto role_bit(size_t r, size_t i, size_t j) const -> size_t { return n * concepts + r * n * n + i * n + j; }
            auto bits() const -> size_t { return n * concepts + n * n * roles; }
        };

        auto permutation_tables(const Layout & l) -> vector<vector<uint8_t>>
        {
            vector<size_t> p(l.n);
            std::iota(p.begin(), p.end(), 0);
            vector<vector<uint8_t>> out;
            do {
                vector<uint8_t> t(l.bits());
                for (size_t i = 0 ; i < l.n ; ++i) {
                    for (size_t c = 0 ; c < l.concepts ; ++c)
                        t[l.concept_bit(c, i)] = static_cast<uint8_t>(l.concept_bit(c, p[i]));
                    for (size_t j = 0 ; j < l.n ; ++j)
                        for (size_t r = 0 ; r < l.roles ; ++r)
                            t[l.role_bit(r, i, j)] = static_cast<uint8_t>(l.role_bit(r, p[i], p[j]));
                }
                out.push_back(std::move(t));
            } while (std::next_permutation(p.begin(), p.end()));
            // the identity cannot refute minimality
            out.erase(out.begin());
            return out;
        }

        auto is_minimal(uint64_t mask, const vector<vector<uint8_t>> & perms) -> bool
        {
            for (auto & t : perms) {
                uint64_t image = 0;
                for (uint64_t m = mask ; m ; m &= m - 1)
                    image |= uint64_t{1} << t[std::countr_zero(m)];
                if (image < mask)
                    return false;
            }
            return true;
        }

        auto decode(uint64_t mask, const Layout & l, const vector<string> & cs, const vector<string> & rs) -> ABox
        {
            ABox out;
            for (size_t i = 0 ; i < l.n ; ++i) {
                for (size_t c = 0 ; c < l.concepts ; ++c)
                    if (mask >> l.concept_bit(c, i) & 1)
                        out.add_concept(cs[c], individual_name(i));
                for (size_t j = 0 ; j < l.n ; ++j)
                    for (size_t r = 0 ; r < l.roles ; ++r)
                        if (mask >> l.role_bit(r, i, j) & 1)
                            out.add_role(rs[r], individual_name(i), individual_name(j));
            }
            return out;
        }
    }

    auto enumerate_aboxes(const Signature & sigma, const EnumerationOptions & opts,
            const std::function<bool(const ABox &)> & visit) -> EnumerationStats
    {
        EnumerationStats stats;
        vector<string> cs(sigma.concepts.begin(), sigma.concepts.end());
        vector<string> rs(sigma.roles.begin(), sigma.roles.end());
        for (size_t n = 1 ; n <= opts.max_individuals ; ++n) {
            Layout l{n, cs.size(), rs.size()};
            auto bits = l.bits();
            if (bits == 0)
                continue;
            if (bits > opts.max_bits || bits > 63) {
                ++stats.skipped_sizes;
                continue;
            }
            vector<uint64_t> touches(n, 0);
            for (size_t i = 0 ; i < n ; ++i) {
                for (size_t c = 0 ; c < l.concepts ; ++c)
                    touches[i] |= uint64_t{1} << l.concept_bit(c, i);
                for (size_t j = 0 ; j < n ; ++j)
                    for (size_t r = 0 ; r < l.roles ; ++r) {
                        touches[i] |= uint64_t{1} << l.role_bit(r, i, j);
                        touches[j] |= uint64_t{1} << l.role_bit(r, i, j);
                    }
            }
            auto perms = permutation_tables(l);
            uint64_t limit = uint64_t{1} << bits;
            for (size_t k = 1 ; k <= bits ; ++k) {
                for (uint64_t mask = (uint64_t{1} << k) - 1 ; mask < limit ; ) {
                    bool used = std::all_of(touches.begin(), touches.end(), [&](uint64_t t) { return (mask & t) != 0; });
                    if (used && is_minimal(mask, perms)) {
                        ++stats.visited;
                        if (! visit(decode(mask, l, cs, rs)))
                            return stats;
                    }
                    uint64_t c = mask & -mask;
                    uint64_t r = mask + c;
                    mask = (((r ^ mask) >> 2) / c) | r;
                }
            }
        }
        return stats;
    }

    auto count_aboxes(const Signature & sigma, const EnumerationOptions & opts) -> size_t
    {
        return enumerate_aboxes(sigma, opts, [](const ABox &) { return true; }).visited;
    }

    namespace
    {
        struct Shape
        {
            vector<string> names;
            map<string, size_t> index;
            vector<set<string>> labels;
            set<std::tuple<string, size_t, size_t>> edges;
            vector<size_t> degree;

            explicit Shape(const ABox & a)
            {
                for (auto & n : a.individuals()) {
                    index[n] = names.size();
                    names.push_back(n);
                }
                labels.resize(names.size());
                degree.resize(names.size());
                for (auto & c : a.concept_assertions)
                    labels[index[c.individual]].insert(c.concept_name);
                for (auto & r : a.role_assertions) {
                    edges.insert({r.role, index[r.from], index[r.to]});
                    ++degree[index[r.from]];
                    ++degree[index[r.to]];
                }
            }
        };

        auto extend(const Shape & x, const Shape & y, vector<size_t> & image, vector<bool> & taken, size_t i) -> bool
        {
            if (i == x.names.size()) {
                for (auto & [r, a, b] : x.edges)
                    if (! y.edges.contains({r, image[a], image[b]}))
                        return false;
                return true;
            }
            for (size_t j = 0 ; j < y.names.size() ; ++j) {
                if (taken[j] || x.labels[i] != y.labels[j] || x.degree[i] != y.degree[j])
                    continue;
                image[i] = j;
                bool fits = true;
                for (auto & [r, a, b] : x.edges)
                    if (a <= i && b <= i && (a == i || b == i) && ! y.edges.contains({r, image[a], image[b]})) {
                        fits = false;
                        break;
                    }
                if (! fits)
                    continue;
                taken[j] = true;
                if (extend(x, y, image, taken, i + 1))
                    return true;
                taken[j] = false;
            }
            return false;
        }
    }

    auto isomorphic(const ABox & a, const ABox & b) -> bool
    {
        Shape x(a), y(b);
        if (x.names.size() != y.names.size() || x.edges.size() != y.edges.size()
                || a.concept_assertions.size() != b.concept_assertions.size())
            return false;
        vector<size_t> image(x.names.size());
        vector<bool> taken(y.names.size(), false);
        return extend(x, y, image, taken, 0);
    }
}
