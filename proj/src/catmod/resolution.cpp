#include <algorithm>
#include <numeric>

#include "orbifunctor/catmod/module.hpp"
#include "orbifunctor/chain/plain.hpp"
#include "orbifunctor/error.hpp"

namespace orbifunctor {

std::vector<std::pair<ObjectId, IntVector>> generating_set(const CatModule& m)
{
    const FinCategory& c = *m.base;
    // Objects whose elements reach many objects through the action come first.
    std::vector<std::size_t> reach(c.num_objects(), 0);
    for (ObjectId g = 0; g < c.num_objects(); ++g)
        for (ObjectId x = 0; x < c.num_objects(); ++x)
            reach[g] += !(m.variance == Variance::Contravariant ? c.hom(x, g) : c.hom(g, x)).empty();
    std::vector<ObjectId> order(c.num_objects());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](ObjectId a, ObjectId b) { return reach[a] > reach[b]; });

    std::vector<std::pair<ObjectId, IntVector>> gens;
    for (ObjectId x : order) {
        const CyclicSum& v = m.values[x];
        std::vector<IntVector> images;
        auto add_orbit = [&](ObjectId g, const IntVector& vec) {
            const auto& hs = m.variance == Variance::Contravariant ? c.hom(x, g) : c.hom(g, x);
            for (MorphismId a : hs)
                images.push_back(m.action[a].apply(vec));
        };
        for (const auto& [g, vec] : gens)
            add_orbit(g, vec);
        // One new generator at a time, since its endomorphism orbit may cover the rest.
        while (true) {
            FpAbGroup q =
                cokernel_presentation(IntMatrix::hstack(IntMatrix::from_columns(v.size(), images), v.relations()));
            if (q.is_trivial())
                break;
            IntVector fresh = v.reduce(q.representative(q.num_generators() - 1));
            gens.emplace_back(x, fresh);
            add_orbit(x, fresh);
        }
    }
    return gens;
}

FiniteGeneration is_finitely_generated(const CatModule& m)
{
    FiniteGeneration out;
    out.generators = generating_set(m);
    std::vector<ObjectId> objs;
    std::vector<IntVector> vecs;
    for (const auto& [x, v] : out.generators) {
        objs.push_back(x);
        vecs.push_back(v);
    }
    out.free = free_module(m.base, objs, m.variance);
    out.surjection = free_map(out.free, m, vecs);
    return out;
}

namespace {

bool augmented_exact(const FreeResolution& r, const CatModule& m)
{
    const FinCategory& c = *m.base;
    const std::size_t len = r.modules.size();
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        std::vector<CyclicSum> groups{m.values[x]};
        std::vector<IntMatrix> diffs{r.augmentation.components[x]};
        for (std::size_t i = 0; i < len; ++i) {
            groups.push_back(r.modules[i].module.values[x]);
            if (i > 0)
                diffs.push_back(r.differentials[i - 1].components[x]);
        }
        PlainChainComplex cx(-1, std::move(groups), std::move(diffs));
        for (int p = -1; p < static_cast<int>(len) - 1; ++p)
            if (!homology(cx, p).is_trivial())
                return false;
    }
    return true;
}

} // namespace

FreeResolution free_resolution(const CatModule& m, std::size_t length)
{
    FreeResolution r;
    FiniteGeneration fg = is_finitely_generated(m);
    r.modules.push_back(fg.free);
    r.augmentation = fg.surjection;
    ModuleMap previous = fg.surjection;
    for (std::size_t i = 1; i <= length; ++i) {
        KernelCokernelModules kc = map_kernel_cokernel(previous);
        std::vector<ObjectId> objs;
        std::vector<IntVector> images;
        for (const auto& [x, v] : generating_set(kc.kernel)) {
            objs.push_back(x);
            images.push_back(kc.kernel_inclusion.components[x].apply(v));
        }
        FreeModule next = free_module(m.base, objs, m.variance);
        ModuleMap d = free_map(next, r.modules.back().module, images);
        r.modules.push_back(next);
        r.differentials.push_back(d);
        previous = d;
    }
    r.exact = augmented_exact(r, m);
    if (!r.exact)
        throw InvariantError("free_resolution: assembled resolution is not exact");
    return r;
}

namespace {

// Degreewise tensor of a free resolution with a fixed module, in canonical coordinates.
PlainChainComplex tensored_resolution(const FreeResolution& r, const CatModule& other, bool resolution_is_contra)
{
    std::vector<TensorPresentation> tps;
    for (const auto& f : r.modules)
        tps.push_back(resolution_is_contra ? tensor_presentation(f.module, other) : tensor_presentation(other, f.module));
    std::vector<CyclicSum> groups;
    for (const auto& t : tps)
        groups.push_back(t.group.as_cyclic_sum());
    std::vector<IntMatrix> diffs;
    const FinCategory& c = *other.base;
    for (std::size_t i = 1; i < r.modules.size(); ++i) {
        const TensorPresentation& src = tps[i];
        const TensorPresentation& tgt = tps[i - 1];
        const CatModule& fs = r.modules[i].module;
        const CatModule& ft = r.modules[i - 1].module;
        IntMatrix amb(tgt.group.witness().ambient_dimension, src.group.witness().ambient_dimension);
        for (ObjectId x = 0; x < c.num_objects(); ++x) {
            const IntMatrix& d = r.differentials[i - 1].components[x];
            for (std::size_t a = 0; a < fs.values[x].size(); ++a)
                for (std::size_t b = 0; b < ft.values[x].size(); ++b) {
                    if (sgn(d(b, a)) == 0)
                        continue;
                    for (std::size_t y = 0; y < other.values[x].size(); ++y) {
                        if (resolution_is_contra)
                            amb(tgt.index(other, x, b, y), src.index(other, x, a, y)) += d(b, a);
                        else
                            amb(tgt.index(ft, x, y, b), src.index(fs, x, y, a)) += d(b, a);
                    }
                }
        }
        diffs.push_back(induced_hom(src.group, tgt.group, amb).matrix);
    }
    return PlainChainComplex(0, std::move(groups), std::move(diffs));
}

} // namespace

FpAbGroup tor(const CatModule& contra, const CatModule& co, std::size_t p, TorSide side)
{
    if (contra.variance != Variance::Contravariant || co.variance != Variance::Covariant)
        throw InputError("tor: expects a contravariant and a covariant module");
    if (contra.base.get() != co.base.get())
        throw InputError("tor: modules live on different categories");
    if (side == TorSide::ResolveContravariant) {
        FreeResolution r = free_resolution(contra, p + 1);
        return homology(tensored_resolution(r, co, true), static_cast<int>(p));
    }
    FreeResolution r = free_resolution(co, p + 1);
    return homology(tensored_resolution(r, contra, false), static_cast<int>(p));
}

InterchangeResult finite_product_interchange(const FreeModule& f, const std::vector<CatModule>& family)
{
    const FinCategory& c = *f.module.base;
    if (f.marker.basis.size() != c.num_objects())
        throw InputError("finite_product_interchange: free module carries no marker");
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        if (f.marker.basis[x].size() != f.module.values[x].size())
            throw InputError("finite_product_interchange: marker does not match the module");
    if (family.empty())
        throw InputError("finite_product_interchange: empty family");

    CatModule product = direct_sum(family);
    TensorPresentation src = tensor_presentation(f.module, product);
    std::vector<TensorPresentation> parts;
    std::vector<FpAbGroup> part_groups;
    for (const auto& m : family) {
        parts.push_back(tensor_presentation(f.module, m));
        part_groups.push_back(parts.back().group);
    }
    FpAbGroup tgt = direct_sum(part_groups);

    // (c, x, (i, y)) lands in summand i at (c, x, y).
    IntMatrix matrix(tgt.num_generators(), src.group.num_generators());
    for (std::size_t k = 0; k < src.group.num_generators(); ++k) {
        const IntVector rep = src.group.representative(k);
        IntVector concat;
        for (std::size_t i = 0; i < family.size(); ++i) {
            IntVector amb(parts[i].group.witness().ambient_dimension);
            for (ObjectId x = 0; x < c.num_objects(); ++x) {
                std::size_t shift = 0;
                for (std::size_t j = 0; j < i; ++j)
                    shift += family[j].values[x].size();
                for (std::size_t a = 0; a < f.module.values[x].size(); ++a)
                    for (std::size_t y = 0; y < family[i].values[x].size(); ++y)
                        amb[parts[i].index(family[i], x, a, y)] = rep[src.index(product, x, a, shift + y)];
            }
            IntVector coords = parts[i].group.coordinates_of(amb);
            concat.insert(concat.end(), coords.begin(), coords.end());
        }
        matrix.set_column(k, tgt.coordinates_of(concat));
    }
    InterchangeResult out{{src.group, tgt, std::move(matrix)}, false};
    out.verdict = out.map.is_well_defined() && is_isomorphism(out.map);
    return out;
}

} // namespace orbifunctor
