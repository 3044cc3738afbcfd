#pragma once

#include <string>
#include <vector>

#include "orbifunctor/fincat/category.hpp"
#include "orbifunctor/fincat/group.hpp"

namespace orbifunctor {

/// Finite left G-set: action[g][s] = g·s.
struct GSet {
    std::size_t size = 0;
    std::vector<std::vector<std::size_t>> action;
    std::vector<std::string> names;
};

bool validate_gset(const FinGroup& g, const GSet& s, std::string* why = nullptr);

/// G/H with points the left cosets in left_cosets() order.
GSet coset_space(const FinGroup& g, const Subgroup& h);

/// Or(G, F): one object G/H per member H of F (object id = family index).
/// Morphism m: G/H → G/K is the G-map xH ↦ x·r K with r = representative[m],
/// the least element of its coset rK; composing r then r' gives r·r'.
struct OrbitCategory {
    FinGroup group;
    SubgroupFamily family;
    CategoryPtr category;
    std::vector<Element> representative;

    const Subgroup& subgroup(ObjectId c) const { return family.members[c]; }
    ObjectId object_of(const Subgroup& h) const { return family.index_of(h); }
    /// The morphism G/H → G/K given by the coset gK; throws InputError if g⁻¹Hg ⊄ K.
    MorphismId morphism(ObjectId from, ObjectId to, Element g) const;
    /// Action of morphism m on coset indices of coset_space(dom) → coset_space(cod).
    std::vector<std::size_t> coset_map(MorphismId m) const;

    std::vector<MorphismId> lookup;  ///< (from·n + to)·|G| + g → morphism or kNone
};

OrbitCategory orbit_category(const FinGroup& g, const SubgroupFamily& f);

/// Sub(G, F): morphisms H → K are conjugations c_g (h ↦ g h g⁻¹, gHg⁻¹ ⊆ K)
/// modulo Inn(K), i.e. double cosets K g Z_G(H); [g']∘[g] = [g'g].
struct SubCategory {
    FinGroup group;
    SubgroupFamily family;
    CategoryPtr category;
    std::vector<Element> representative;  ///< least element of the double coset
    std::vector<Subgroup> double_coset;

    MorphismId morphism(ObjectId from, ObjectId to, Element g) const;

    std::vector<MorphismId> lookup;
};

/// pr: Or(G, F) → Sub(G, F) sends xH ↦ xrK to [c(r⁻¹)].
struct SubAndProjection {
    OrbitCategory orbit;
    SubCategory sub;
    CatFunctor pr;
};

SubAndProjection sub_category_and_projection(const FinGroup& g, const SubgroupFamily& f);

/// Transport groupoid: objects the points of S, morphism id g·|S| + s is s → g·s.
FinCategory transport_groupoid(const FinGroup& g, const GSet& s);
/// The group element carried by a transport-groupoid morphism.
inline Element transport_element(const GSet& s, MorphismId m) { return m / s.size; }

} // namespace orbifunctor
