#pragma once

#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "orbifunctor/catmod/module.hpp"
#include "orbifunctor/fincat/group.hpp"
#include "orbifunctor/fincat/orbit.hpp"
#include "orbifunctor/fincat/standard.hpp"

namespace orbifunctor::testing {

inline CategoryPtr share(FinCategory c)
{
    return std::make_shared<const FinCategory>(std::move(c));
}

inline CategoryPtr orbit_of(const FinGroup& g)
{
    return orbit_category(g, all_subgroups(g)).category;
}

inline std::vector<std::pair<std::string, CategoryPtr>> category_zoo()
{
    std::vector<std::pair<std::string, CategoryPtr>> out;
    out.emplace_back("point", share(group_category(FinGroup::trivial())));
    out.emplace_back("N2", standard_category(IndexKind::N, 2).category);
    out.emplace_back("RF2", standard_category(IndexKind::RF, 2).category);
    out.emplace_back("Or(C2)", orbit_of(FinGroup::cyclic(2)));
    out.emplace_back("Or(C3)", orbit_of(FinGroup::cyclic(3)));
    out.emplace_back("Or(C4)", orbit_of(FinGroup::cyclic(4)));
    out.emplace_back("BC3", share(group_category(FinGroup::cyclic(3))));
    const FinGroup c2 = FinGroup::cyclic(2);
    out.emplace_back("C2 transport", share(transport_groupoid(c2, coset_space(c2, Subgroup{0}))));
    return out;
}

inline IntVector random_vector(std::mt19937& rng, std::size_t n, int spread)
{
    std::uniform_int_distribution<int> d(-spread, spread);
    IntVector v(n);
    for (auto& x : v)
        x = d(rng);
    return v;
}

// M = coker(F1 → F0), with the presentation kept as an oracle.
struct Presented {
    FreeModule f0;
    FreeModule f1;
    std::vector<IntVector> images;  // generator j of F1 ↦ images[j] ∈ F0(c'_j)
    CatModule module;
};

inline Presented random_presented(std::mt19937& rng, const CategoryPtr& base, Variance v)
{
    std::uniform_int_distribution<std::size_t> obj(0, base->num_objects() - 1);
    std::uniform_int_distribution<int> count(0, 2);
    std::vector<ObjectId> g0(1 + count(rng) % 2), g1(count(rng));
    for (auto& g : g0)
        g = obj(rng);
    for (auto& g : g1)
        g = obj(rng);
    Presented p{free_module(base, g0, v), free_module(base, g1, v), {}, {}};
    for (ObjectId c : g1)
        p.images.push_back(random_vector(rng, p.f0.module.values[c].size(), 3));
    p.module = map_kernel_cokernel(free_map(p.f1, p.f0.module, p.images)).cokernel;
    return p;
}

inline CatModule random_module(std::mt19937& rng, const CategoryPtr& base, Variance v)
{
    return random_presented(rng, base, v).module;
}

} // namespace orbifunctor::testing
