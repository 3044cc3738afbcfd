#include "orbifunctor/fincat/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "orbifunctor/error.hpp"

namespace orbifunctor {
namespace {

bool subgroup_less(const Subgroup& a, const Subgroup& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

std::string cycle_notation(const std::vector<std::size_t>& p)
{
    std::vector<bool> seen(p.size(), false);
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i)
            continue;
        os << '(';
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first)
                os << ' ';
            os << j + 1;
            first = false;
            j = p[j];
        }
        os << ')';
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

} // namespace

FinGroup::FinGroup(std::vector<std::vector<Element>> table, std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names))
{
    const std::size_t n = table_.size();
    if (n == 0)
        throw InputError("FinGroup: empty multiplication table");
    for (const auto& row : table_) {
        if (row.size() != n)
            throw InputError("FinGroup: multiplication table is not square");
        for (Element x : row)
            if (x >= n)
                throw InputError("FinGroup: table entry out of range");
    }
    bool found = false;
    for (Element e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (Element a = 0; a < n && ok; ++a)
            ok = table_[e][a] == a && table_[a][e] == a;
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found)
        throw InputError("FinGroup: no identity element");
    inverse_.assign(n, n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (table_[a][b] == identity_ && table_[b][a] == identity_)
                inverse_[a] = b;
    for (Element a = 0; a < n; ++a)
        if (inverse_[a] == n)
            throw InputError("FinGroup: element " + std::to_string(a) + " has no inverse");
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw InputError("FinGroup: associativity fails at (" + std::to_string(a) + ", " +
                                     std::to_string(b) + ", " + std::to_string(c) + ")");
    if (names_.empty())
        for (Element a = 0; a < n; ++a)
            names_.push_back(std::to_string(a));
    if (names_.size() != n)
        throw InputError("FinGroup: wrong number of element names");
}

FinGroup FinGroup::from_permutations(const std::vector<std::vector<std::size_t>>& generators)
{
    std::size_t degree = 0;
    for (const auto& p : generators)
        degree = std::max(degree, p.size());
    for (const auto& p : generators) {
        if (p.size() != degree)
            throw InputError("FinGroup: permutations of different degrees");
        std::vector<bool> hit(degree, false);
        for (std::size_t x : p) {
            if (x >= degree || hit[x])
                throw InputError("FinGroup: generator is not a permutation");
            hit[x] = true;
        }
    }
    std::vector<std::size_t> id(degree);
    for (std::size_t i = 0; i < degree; ++i)
        id[i] = i;
    std::vector<std::vector<std::size_t>> elems{id};
    std::map<std::vector<std::size_t>, Element> index{{id, 0}};
    for (std::size_t k = 0; k < elems.size(); ++k) {
        for (const auto& g : generators) {
            std::vector<std::size_t> prod(degree);
            for (std::size_t x = 0; x < degree; ++x)
                prod[x] = g[elems[k][x]];
            if (index.emplace(prod, elems.size()).second) {
                elems.push_back(std::move(prod));
                if (elems.size() > kGroupOrderBound * 64)
                    throw InputError("FinGroup: generated group is too large");
            }
        }
    }
    const std::size_t n = elems.size();
    std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(cycle_notation(elems[a]));
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<std::size_t> prod(degree);
            for (std::size_t x = 0; x < degree; ++x)
                prod[x] = elems[a][elems[b][x]];
            table[a][b] = index.at(prod);
        }
    }
    FinGroup g(std::move(table), std::move(names));
    g.perms_ = std::move(elems);
    return g;
}

FinGroup FinGroup::trivial()
{
    return FinGroup(std::vector<std::vector<Element>>{{0}}, {"e"});
}

FinGroup FinGroup::cyclic(std::size_t n)
{
    if (n == 0)
        throw InputError("FinGroup::cyclic: order must be positive");
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a)));
        for (std::size_t b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    }
    return FinGroup(std::move(t), std::move(names));
}

FinGroup FinGroup::symmetric(std::size_t n)
{
    if (n <= 1)
        return trivial();
    std::vector<std::size_t> swap(n), cycle(n);
    for (std::size_t i = 0; i < n; ++i) {
        swap[i] = i;
        cycle[i] = (i + 1) % n;
    }
    std::swap(swap[0], swap[1]);
    return from_permutations({swap, cycle});
}

FinGroup FinGroup::dihedral(std::size_t n)
{
    if (n == 0)
        throw InputError("FinGroup::dihedral: n must be positive");
    // r^a s^e at index a + n e; (r^a s^e)(r^b s^f) = r^{a + (-1)^e b} s^{e+f}.
    const std::size_t m = 2 * n;
    std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
    std::vector<std::string> names;
    for (std::size_t x = 0; x < m; ++x) {
        const std::size_t a = x % n, e = x / n;
        std::string nm = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
        if (e)
            nm += "s";
        names.push_back(nm.empty() ? "e" : nm);
        for (std::size_t y = 0; y < m; ++y) {
            const std::size_t b = y % n, f = y / n;
            const std::size_t c = e ? (a + n - b) % n : (a + b) % n;
            t[x][y] = c + n * ((e + f) % 2);
        }
    }
    return FinGroup(std::move(t), std::move(names));
}

Subgroup generated_subgroup(const FinGroup& g, const std::vector<Element>& generators)
{
    std::vector<bool> in(g.order(), false);
    std::vector<Element> elems{g.identity()};
    in[g.identity()] = true;
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (Element s : generators) {
            Element p = g.mul(elems[k], s);
            if (!in[p]) {
                in[p] = true;
                elems.push_back(p);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

Subgroup conjugate_subgroup(const FinGroup& g, const Subgroup& h, Element x)
{
    Subgroup out;
    out.reserve(h.size());
    for (Element y : h)
        out.push_back(g.conjugate(x, y));
    std::sort(out.begin(), out.end());
    return out;
}

bool is_subset(const Subgroup& a, const Subgroup& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool is_subgroup(const FinGroup& g, const Subgroup& h)
{
    if (h.empty() || !std::is_sorted(h.begin(), h.end()) ||
        std::adjacent_find(h.begin(), h.end()) != h.end() || h.back() >= g.order())
        return false;
    std::vector<bool> in(g.order(), false);
    for (Element x : h)
        in[x] = true;
    if (!in[g.identity()])
        return false;
    for (Element x : h)
        for (Element y : h)
            if (!in[g.mul(x, g.inv(y))])
                return false;
    return true;
}

Subgroup centralizer(const FinGroup& g, const Subgroup& h)
{
    Subgroup z;
    for (Element x = 0; x < g.order(); ++x)
        if (std::all_of(h.begin(), h.end(), [&](Element y) { return g.mul(x, y) == g.mul(y, x); }))
            z.push_back(x);
    return z;
}

Subgroup normalizer(const FinGroup& g, const Subgroup& h)
{
    Subgroup n;
    for (Element x = 0; x < g.order(); ++x)
        if (conjugate_subgroup(g, h, x) == h)
            n.push_back(x);
    return n;
}

std::size_t GroupAnalysis::index_of(const Subgroup& h) const
{
    auto it = std::lower_bound(subgroups.begin(), subgroups.end(), h, subgroup_less);
    if (it == subgroups.end() || *it != h)
        throw InputError("group_analysis: not a subgroup");
    return static_cast<std::size_t>(it - subgroups.begin());
}

GroupAnalysis group_analysis(const FinGroup& g)
{
    if (g.order() > kGroupOrderBound)
        throw InputError("group_analysis: |G| = " + std::to_string(g.order()) + " exceeds the bound " +
                         std::to_string(kGroupOrderBound));
    // Every subgroup is reached from a cyclic one by adjoining one element at a time.
    std::set<Subgroup> found;
    std::vector<Subgroup> queue;
    for (Element x = 0; x < g.order(); ++x) {
        Subgroup c = generated_subgroup(g, {x});
        if (found.insert(c).second)
            queue.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < queue.size(); ++k) {
        for (Element x = 0; x < g.order(); ++x) {
            if (std::binary_search(queue[k].begin(), queue[k].end(), x))
                continue;
            std::vector<Element> gens = queue[k];
            gens.push_back(x);
            Subgroup j = generated_subgroup(g, gens);
            if (found.insert(j).second)
                queue.push_back(std::move(j));
        }
    }
    GroupAnalysis a;
    a.subgroups.assign(found.begin(), found.end());
    std::sort(a.subgroups.begin(), a.subgroups.end(), subgroup_less);
    const std::size_t m = a.subgroups.size();
    a.conjugacy_class.assign(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        if (a.conjugacy_class[i] != m)
            continue;
        const std::size_t cls = a.classes.size();
        a.classes.emplace_back();
        std::set<std::size_t> members;
        for (Element x = 0; x < g.order(); ++x)
            members.insert(a.index_of(conjugate_subgroup(g, a.subgroups[i], x)));
        for (std::size_t j : members) {
            a.conjugacy_class[j] = cls;
            a.classes[cls].push_back(j);
        }
    }
    for (const auto& h : a.subgroups) {
        a.centralizers.push_back(centralizer(g, h));
        a.normalizers.push_back(normalizer(g, h));
    }
    return a;
}

bool SubgroupFamily::contains(const Subgroup& h) const
{
    return std::binary_search(members.begin(), members.end(), h, subgroup_less);
}

std::size_t SubgroupFamily::index_of(const Subgroup& h) const
{
    auto it = std::lower_bound(members.begin(), members.end(), h, subgroup_less);
    if (it == members.end() || *it != h)
        throw InputError("SubgroupFamily: subgroup not in family");
    return static_cast<std::size_t>(it - members.begin());
}

SubgroupFamily family_closure(const FinGroup& g, const std::vector<Subgroup>& seeds)
{
    for (const auto& s : seeds)
        if (!is_subgroup(g, s))
            throw InputError("family_closure: seed is not a subgroup");
    GroupAnalysis a = group_analysis(g);
    SubgroupFamily f;
    for (const auto& h : a.subgroups) {
        bool keep = false;
        for (const auto& s : seeds) {
            for (Element x = 0; x < g.order() && !keep; ++x)
                keep = is_subset(h, conjugate_subgroup(g, s, x));
            if (keep)
                break;
        }
        if (keep)
            f.members.push_back(h);
    }
    return f;
}

SubgroupFamily all_subgroups(const FinGroup& g)
{
    return SubgroupFamily{group_analysis(g).subgroups};
}

bool is_family(const FinGroup& g, const SubgroupFamily& f, std::string* why)
{
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (f.members.empty())
        return fail("family is empty");
    if (!std::is_sorted(f.members.begin(), f.members.end(), subgroup_less))
        return fail("family members are not in canonical order");
    GroupAnalysis a = group_analysis(g);
    for (const auto& h : f.members) {
        if (!is_subgroup(g, h))
            return fail("member " + subgroup_name(g, h) + " is not a subgroup");
        for (Element x = 0; x < g.order(); ++x)
            if (!f.contains(conjugate_subgroup(g, h, x)))
                return fail("not closed under conjugation at " + subgroup_name(g, h));
        for (const auto& k : a.subgroups)
            if (is_subset(k, h) && !f.contains(k))
                return fail("not closed under subgroups: " + subgroup_name(g, k) + " ⊆ " + subgroup_name(g, h));
    }
    return true;
}

std::vector<Subgroup> left_cosets(const FinGroup& g, const Subgroup& h)
{
    std::vector<bool> seen(g.order(), false);
    std::vector<Subgroup> out;
    for (Element x = 0; x < g.order(); ++x) {
        if (seen[x])
            continue;
        Subgroup c;
        for (Element y : h)
            c.push_back(g.mul(x, y));
        std::sort(c.begin(), c.end());
        for (Element y : c)
            seen[y] = true;
        out.push_back(std::move(c));
    }
    return out;
}

std::string subgroup_name(const FinGroup& g, const Subgroup& h)
{
    if (h.size() == 1)
        return "1";
    if (h.size() == g.order())
        return "G";
    std::vector<Element> gens;
    Subgroup cur{g.identity()};
    for (Element x : h) {
        if (std::binary_search(cur.begin(), cur.end(), x))
            continue;
        gens.push_back(x);
        cur = generated_subgroup(g, gens);
    }
    std::string s = "<";
    for (std::size_t i = 0; i < gens.size(); ++i)
        s += (i ? "," : "") + g.name(gens[i]);
    return s + ">";
}

} // namespace orbifunctor
