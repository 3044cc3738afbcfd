#include "orbifunctor/fincat/orbit.hpp"

#include <algorithm>
#include <set>

#include "orbifunctor/error.hpp"

namespace orbifunctor {

bool validate_gset(const FinGroup& g, const GSet& s, std::string* why)
{
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (s.action.size() != g.order())
        return fail("action table needs one row per group element");
    for (const auto& row : s.action) {
        if (row.size() != s.size)
            return fail("action row has the wrong length");
        for (std::size_t x : row)
            if (x >= s.size)
                return fail("action value out of range");
    }
    for (std::size_t x = 0; x < s.size; ++x)
        if (s.action[g.identity()][x] != x)
            return fail("identity does not act trivially on point " + std::to_string(x));
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b)
            for (std::size_t x = 0; x < s.size; ++x)
                if (s.action[g.mul(a, b)][x] != s.action[a][s.action[b][x]])
                    return fail("(ab)x ≠ a(bx) for a=" + g.name(a) + ", b=" + g.name(b) + ", x=" + std::to_string(x));
    return true;
}

GSet coset_space(const FinGroup& g, const Subgroup& h)
{
    std::vector<Subgroup> cosets = left_cosets(g, h);
    std::vector<std::size_t> which(g.order());
    for (std::size_t i = 0; i < cosets.size(); ++i)
        for (Element x : cosets[i])
            which[x] = i;
    GSet s;
    s.size = cosets.size();
    s.action.assign(g.order(), std::vector<std::size_t>(s.size));
    for (Element a = 0; a < g.order(); ++a)
        for (std::size_t i = 0; i < s.size; ++i)
            s.action[a][i] = which[g.mul(a, cosets[i].front())];
    for (const auto& c : cosets)
        s.names.push_back(g.name(c.front()) + "H");
    return s;
}

MorphismId OrbitCategory::morphism(ObjectId from, ObjectId to, Element g) const
{
    const std::size_t n = family.size();
    const MorphismId m = lookup.at((from * n + to) * group.order() + g);
    if (m == kNone)
        throw InputError("orbit category: coset does not define a G-map " + category->object_name(from) + " → " +
                         category->object_name(to));
    return m;
}

std::vector<std::size_t> OrbitCategory::coset_map(MorphismId m) const
{
    const Subgroup& h = subgroup(category->dom(m));
    const Subgroup& k = subgroup(category->cod(m));
    std::vector<Subgroup> src = left_cosets(group, h);
    std::vector<Subgroup> tgt = left_cosets(group, k);
    std::vector<std::size_t> which(group.order());
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (Element x : tgt[i])
            which[x] = i;
    std::vector<std::size_t> out;
    for (const auto& c : src)
        out.push_back(which[group.mul(c.front(), representative[m])]);
    return out;
}

OrbitCategory orbit_category(const FinGroup& g, const SubgroupFamily& f)
{
    if (f.members.empty())
        throw InputError("orbit_category: family is empty");
    OrbitCategory oc{g, f, nullptr, {}, {}};
    const std::size_t n = f.size(), order = g.order();
    std::vector<std::string> objects;
    for (const auto& h : f.members)
        objects.push_back("G/" + subgroup_name(g, h));
    std::vector<Morphism> mors;
    std::vector<MorphismId> ids(n, kNone);
    oc.lookup.assign(n * n * order, kNone);
    for (ObjectId a = 0; a < n; ++a) {
        for (ObjectId b = 0; b < n; ++b) {
            const Subgroup& h = f.members[a];
            const Subgroup& k = f.members[b];
            for (const auto& coset : left_cosets(g, k)) {
                const Element r = coset.front();
                if (!is_subset(conjugate_subgroup(g, h, g.inv(r)), k))
                    continue;
                const MorphismId id = mors.size();
                mors.push_back({a, b, objects[a] + "→" + objects[b] + ":" + g.name(r) + "K"});
                oc.representative.push_back(r);
                for (Element x : coset)
                    oc.lookup[(a * n + b) * order + x] = id;
                if (a == b && std::binary_search(k.begin(), k.end(), r))
                    ids[a] = id;
            }
        }
    }
    auto rule = [&](MorphismId second, MorphismId first) {
        const Element r = g.mul(oc.representative[first], oc.representative[second]);
        return oc.lookup[(mors[first].dom * n + mors[second].cod) * order + r];
    };
    oc.category = std::make_shared<FinCategory>(FinCategory::from_rule(objects, mors, ids, rule));
    return oc;
}

MorphismId SubCategory::morphism(ObjectId from, ObjectId to, Element g) const
{
    const std::size_t n = family.size();
    const MorphismId m = lookup.at((from * n + to) * group.order() + g);
    if (m == kNone)
        throw InputError("subgroup category: conjugation does not land in the target");
    return m;
}

SubAndProjection sub_category_and_projection(const FinGroup& g, const SubgroupFamily& f)
{
    OrbitCategory oc = orbit_category(g, f);
    SubCategory sc{g, f, nullptr, {}, {}, {}};
    const std::size_t n = f.size(), order = g.order();
    std::vector<std::string> objects;
    for (const auto& h : f.members)
        objects.push_back(subgroup_name(g, h));
    std::vector<Morphism> mors;
    std::vector<MorphismId> ids(n, kNone);
    sc.lookup.assign(n * n * order, kNone);
    for (ObjectId a = 0; a < n; ++a) {
        const Subgroup& h = f.members[a];
        const Subgroup z = centralizer(g, h);
        for (ObjectId b = 0; b < n; ++b) {
            const Subgroup& k = f.members[b];
            for (Element x = 0; x < order; ++x) {
                if (sc.lookup[(a * n + b) * order + x] != kNone)
                    continue;
                if (!is_subset(conjugate_subgroup(g, h, x), k))
                    continue;
                std::set<Element> dc;
                for (Element u : k)
                    for (Element v : z)
                        dc.insert(g.mul(g.mul(u, x), v));
                const MorphismId id = mors.size();
                Subgroup cls(dc.begin(), dc.end());
                mors.push_back({a, b, objects[a] + "→" + objects[b] + ":c(" + g.name(cls.front()) + ")"});
                sc.representative.push_back(cls.front());
                for (Element y : cls)
                    sc.lookup[(a * n + b) * order + y] = id;
                if (a == b && dc.count(g.identity()))
                    ids[a] = id;
                sc.double_coset.push_back(std::move(cls));
            }
        }
    }
    auto rule = [&](MorphismId second, MorphismId first) {
        const Element r = g.mul(sc.representative[second], sc.representative[first]);
        return sc.lookup[(mors[first].dom * n + mors[second].cod) * order + r];
    };
    sc.category = std::make_shared<FinCategory>(FinCategory::from_rule(objects, mors, ids, rule));

    CatFunctor pr{oc.category, sc.category, {}, {}};
    for (ObjectId c = 0; c < n; ++c)
        pr.object_map.push_back(c);
    for (MorphismId m = 0; m < oc.category->num_morphisms(); ++m)
        pr.morphism_map.push_back(
            sc.morphism(oc.category->dom(m), oc.category->cod(m), g.inv(oc.representative[m])));
    return {std::move(oc), std::move(sc), std::move(pr)};
}

FinCategory transport_groupoid(const FinGroup& g, const GSet& s)
{
    std::string why;
    if (!validate_gset(g, s, &why))
        throw InputError("transport_groupoid: invalid action: " + why);
    std::vector<std::string> objects;
    for (std::size_t x = 0; x < s.size; ++x)
        objects.push_back(s.names.size() == s.size ? s.names[x] : std::to_string(x));
    std::vector<Morphism> mors;
    for (Element a = 0; a < g.order(); ++a)
        for (std::size_t x = 0; x < s.size; ++x)
            mors.push_back({x, s.action[a][x], g.name(a) + ":" + objects[x]});
    std::vector<MorphismId> ids;
    for (std::size_t x = 0; x < s.size; ++x)
        ids.push_back(g.identity() * s.size + x);
    auto rule = [&](MorphismId second, MorphismId first) {
        return g.mul(second / s.size, first / s.size) * s.size + first % s.size;
    };
    return FinCategory::from_rule(std::move(objects), std::move(mors), std::move(ids), rule);
}

} // namespace orbifunctor
