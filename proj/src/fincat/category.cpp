#include "orbifunctor/fincat/category.hpp"

#include "orbifunctor/error.hpp"
#include "orbifunctor/fincat/group.hpp"

namespace orbifunctor {

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                         std::vector<MorphismId> identities, std::vector<MorphismId> composition)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      composition_(std::move(composition))
{
    const std::size_t n = objects_.size(), m = morphisms_.size();
    if (identities_.size() != n)
        throw InputError("FinCategory: one identity per object required");
    if (composition_.size() != m * m)
        throw InputError("FinCategory: composition table has the wrong size");
    for (const auto& f : morphisms_)
        if (f.dom >= n || f.cod >= n)
            throw InputError("FinCategory: morphism '" + f.name + "' has an unknown endpoint");
    for (ObjectId c = 0; c < n; ++c)
        if (identities_[c] >= m)
            throw InputError("FinCategory: identity of '" + objects_[c] + "' out of range");
    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f) {
            const MorphismId e = composition_[g * m + f];
            const bool composable = morphisms_[f].cod == morphisms_[g].dom;
            if (composable && e >= m)
                throw InputError("FinCategory: missing composite " + morphisms_[g].name + "∘" + morphisms_[f].name);
            if (!composable && e != kNone)
                throw InputError("FinCategory: composite given for a non-composable pair");
        }
    hom_.assign(n * n, {});
    for (MorphismId f = 0; f < m; ++f)
        hom_[morphisms_[f].dom * n + morphisms_[f].cod].push_back(f);
}

FinCategory FinCategory::from_rule(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                   std::vector<MorphismId> identities,
                                   const std::function<MorphismId(MorphismId, MorphismId)>& rule)
{
    const std::size_t m = morphisms.size();
    std::vector<MorphismId> table(m * m, kNone);
    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f)
            if (morphisms[f].cod == morphisms[g].dom)
                table[g * m + f] = rule(g, f);
    return FinCategory(std::move(objects), std::move(morphisms), std::move(identities), std::move(table));
}

std::optional<ObjectId> FinCategory::find_object(const std::string& name) const
{
    for (ObjectId c = 0; c < objects_.size(); ++c)
        if (objects_[c] == name)
            return c;
    return std::nullopt;
}

MorphismId FinCategory::compose(MorphismId g, MorphismId f) const
{
    if (g >= num_morphisms() || f >= num_morphisms() || morphisms_[f].cod != morphisms_[g].dom)
        throw InputError("FinCategory::compose: morphisms are not composable");
    return composition_[g * num_morphisms() + f];
}

ValidationReport validate_category(const FinCategory& c)
{
    ValidationReport r;
    auto fail = [&](std::string msg, std::vector<std::size_t> w) {
        r.ok = false;
        r.message = std::move(msg);
        r.witness = std::move(w);
        return r;
    };
    const std::size_t m = c.num_morphisms();
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        const MorphismId id = c.identity(x);
        if (c.dom(id) != x || c.cod(id) != x)
            return fail("identity of " + c.object_name(x) + " is not an endomorphism", {x});
    }
    for (MorphismId g = 0; g < m; ++g)
        for (MorphismId f = 0; f < m; ++f) {
            const MorphismId e = c.composition_entry(g, f);
            if (e == kNone)
                continue;
            if (c.dom(e) != c.dom(f) || c.cod(e) != c.cod(g))
                return fail("composite " + c.morphism(g).name + "∘" + c.morphism(f).name + " has wrong endpoints",
                            {g, f});
        }
    for (MorphismId f = 0; f < m; ++f) {
        if (c.compose(c.identity(c.cod(f)), f) != f || c.compose(f, c.identity(c.dom(f))) != f)
            return fail("identity is not neutral for " + c.morphism(f).name, {f});
    }
    for (MorphismId f = 0; f < m; ++f) {
        for (ObjectId y = 0; y < c.num_objects(); ++y) {
            for (MorphismId g : c.hom(c.cod(f), y)) {
                const MorphismId gf = c.compose(g, f);
                for (ObjectId z = 0; z < c.num_objects(); ++z)
                    for (MorphismId h : c.hom(y, z))
                        if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
                            return fail("associativity fails for (" + c.morphism(h).name + ", " + c.morphism(g).name +
                                            ", " + c.morphism(f).name + ")",
                                        {h, g, f});
            }
        }
    }
    return r;
}

ValidationReport validate_functor(const CatFunctor& f)
{
    ValidationReport r;
    auto fail = [&](std::string msg, std::vector<std::size_t> w) {
        r.ok = false;
        r.message = std::move(msg);
        r.witness = std::move(w);
        return r;
    };
    const FinCategory& s = *f.source;
    const FinCategory& t = *f.target;
    if (f.object_map.size() != s.num_objects() || f.morphism_map.size() != s.num_morphisms())
        return fail("functor tables have the wrong size", {});
    for (ObjectId x = 0; x < s.num_objects(); ++x)
        if (f.object_map[x] >= t.num_objects() || f.morphism_map[s.identity(x)] != t.identity(f.object_map[x]))
            return fail("identity of " + s.object_name(x) + " is not preserved", {x});
    for (MorphismId m = 0; m < s.num_morphisms(); ++m) {
        const MorphismId fm = f.morphism_map[m];
        if (fm >= t.num_morphisms() || t.dom(fm) != f.object_map[s.dom(m)] || t.cod(fm) != f.object_map[s.cod(m)])
            return fail("endpoints of " + s.morphism(m).name + " are not preserved", {m});
    }
    for (MorphismId g = 0; g < s.num_morphisms(); ++g)
        for (MorphismId h = 0; h < s.num_morphisms(); ++h) {
            const MorphismId e = s.composition_entry(g, h);
            if (e == kNone)
                continue;
            if (f.morphism_map[e] != t.compose(f.morphism_map[g], f.morphism_map[h]))
                return fail("composition " + s.morphism(g).name + "∘" + s.morphism(h).name + " is not preserved", {g, h});
        }
    return r;
}

FinCategory group_category(const FinGroup& g)
{
    std::vector<Morphism> mors;
    for (Element x = 0; x < g.order(); ++x)
        mors.push_back({0, 0, g.name(x)});
    return FinCategory::from_rule({"*"}, std::move(mors), {g.identity()},
                                  [&](MorphismId a, MorphismId b) { return g.mul(a, b); });
}

} // namespace orbifunctor
