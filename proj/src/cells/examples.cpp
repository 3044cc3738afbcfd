#include "orbifunctor/cells/examples.hpp"

#include "orbifunctor/error.hpp"

namespace orbifunctor {
namespace {

Subgroup whole(const FinGroup& g)
{
    Subgroup all(g.order());
    for (Element x = 0; x < g.order(); ++x)
        all[x] = x;
    return all;
}

Subgroup trivial_subgroup(const FinGroup& g)
{
    return {g.identity()};
}

Element non_identity(const FinGroup& g)
{
    return g.identity() == 0 ? 1 : 0;
}

/// orbit[s] of the points of a G-set.
std::vector<std::size_t> orbits(const GSet& s, std::size_t& count)
{
    std::vector<std::size_t> out(s.size, kNone);
    count = 0;
    for (std::size_t x = 0; x < s.size; ++x) {
        if (out[x] != kNone)
            continue;
        for (const auto& row : s.action)
            out[row[x]] = count;
        ++count;
    }
    return out;
}

BiFunctorComplex shell(CategoryPtr index, const OrbitCategory& oc, std::size_t degrees)
{
    BiFunctorComplex e;
    e.index = std::move(index);
    e.coefficient = oc.category;
    e.values.resize(degrees);
    e.index_action.resize(degrees);
    e.coefficient_action.resize(degrees);
    e.differentials.resize(degrees == 0 ? 0 : degrees - 1);
    return e;
}

/// Fills values from per-orbit groups, constant along the index leg.
void spread(BiFunctorComplex& e, std::size_t k, const std::vector<CyclicSum>& at, const std::vector<IntMatrix>& act)
{
    const FinCategory& I = *e.index;
    e.values[k].assign(I.num_objects(), at);
    for (MorphismId phi = 0; phi < I.num_morphisms(); ++phi) {
        e.index_action[k].emplace_back();
        for (const auto& a : at)
            e.index_action[k][phi].push_back(IntMatrix::identity(a.size()));
    }
    e.coefficient_action[k].assign(I.num_objects(), act);
}

} // namespace

GCWComplex gcw_point(const FinGroup& g)
{
    return {g, {{whole(g)}}, {{}}};
}

GCWComplex gcw_free_orbit(const FinGroup& g)
{
    return {g, {{trivial_subgroup(g)}}, {{}}};
}

GCWComplex z2_reflection_sphere(std::size_t n)
{
    if (n < 1)
        throw InputError("z2_reflection_sphere: dimension must be at least 1");
    const FinGroup g = FinGroup::cyclic(2);
    const Element e = g.identity();
    GCWComplex x{g, {}, {}};
    for (std::size_t k = 0; k < n; ++k) {
        x.cells.push_back({whole(g), whole(g)});
        if (k == 0)
            x.boundary.emplace_back();
        else
            x.boundary.push_back({{{1, 0, e}, {-1, 1, e}}, {{1, 0, e}, {-1, 1, e}}});
    }
    x.cells.push_back({trivial_subgroup(g)});
    x.boundary.push_back({{{1, 0, e}, {-1, 1, e}}});
    return x;
}

GCWComplex z2_antipodal_sphere(std::size_t n)
{
    const FinGroup g = FinGroup::cyclic(2);
    const Element e = g.identity(), s = non_identity(g);
    GCWComplex x{g, {{trivial_subgroup(g)}}, {{}}};
    for (std::size_t k = 1; k <= n; ++k) {
        x.cells.push_back({trivial_subgroup(g)});
        x.boundary.push_back({{{1, 0, e}, {k % 2 == 0 ? 1 : -1, 0, s}}});
    }
    return x;
}

GCWComplex s3_triangle()
{
    const FinGroup g = FinGroup::symmetric(3);
    const auto& perm = g.permutations();
    Subgroup stab0;
    Element to2 = kNone;
    for (Element x = 0; x < g.order(); ++x) {
        if (perm[x][0] == 0)
            stab0.push_back(x);
        if (perm[x][0] == 2 && to2 == kNone)
            to2 = x;
    }
    // 0-cells: vertex 0 and the midpoint of edge {1, 2}; the 1-cell runs from
    // vertex 0 to the midpoint of edge {0, 1}, i.e. (x: 0 ↦ 2)·midpoint.
    return {g,
            {{stab0, stab0}, {trivial_subgroup(g)}},
            {{}, {{{1, 1, to2}, {-1, 0, g.identity()}}}}};
}

GCWComplex trivial_group_complex(const PlainChainComplex& c)
{
    if (c.lo() != 0)
        throw InputError("trivial_group_complex: complex must start in degree 0");
    const FinGroup g = FinGroup::trivial();
    GCWComplex x{g, {}, {}};
    for (int n = 0; n <= c.hi(); ++n) {
        const CyclicSum grp = c.group(n);
        for (const auto& o : grp.orders())
            if (sgn(o) != 0)
                throw InputError("trivial_group_complex: chain groups must be free");
        x.cells.emplace_back(grp.size(), trivial_subgroup(g));
        x.boundary.emplace_back();
        if (n == 0)
            continue;
        const IntMatrix d = c.differential(n);
        for (std::size_t k = 0; k < grp.size(); ++k) {
            x.boundary.back().emplace_back();
            for (std::size_t f = 0; f < d.rows(); ++f)
                if (sgn(d(f, k)) != 0)
                    x.boundary.back()[k].push_back({d(f, k), f, g.identity()});
        }
    }
    return x;
}

BiFunctorComplex transport_components_bifunctor(CategoryPtr index, const OrbitCategory& oc)
{
    const FinCategory& J = *oc.category;
    BiFunctorComplex e = shell(std::move(index), oc, 1);
    std::vector<std::vector<std::size_t>> orbit(J.num_objects());
    std::vector<CyclicSum> at;
    for (ObjectId j = 0; j < J.num_objects(); ++j) {
        std::size_t count = 0;
        orbit[j] = orbits(coset_space(oc.group, oc.subgroup(j)), count);
        at.push_back(CyclicSum::free(count));
    }
    std::vector<IntMatrix> act;
    for (MorphismId psi = 0; psi < J.num_morphisms(); ++psi) {
        const ObjectId s = J.dom(psi), t = J.cod(psi);
        IntMatrix m(at[t].size(), at[s].size());
        const auto f = oc.coset_map(psi);
        for (std::size_t x = 0; x < f.size(); ++x)
            m(orbit[t][f[x]], orbit[s][x]) = 1;
        act.push_back(std::move(m));
    }
    spread(e, 0, at, act);
    return e;
}

BiFunctorComplex transport_nerve_bifunctor(CategoryPtr index, const OrbitCategory& oc, std::size_t length)
{
    const FinCategory& J = *oc.category;
    const FinGroup& g = oc.group;
    const std::size_t order = g.order();
    BiFunctorComplex e = shell(std::move(index), oc, length + 1);
    std::vector<GSet> sets;
    for (ObjectId j = 0; j < J.num_objects(); ++j)
        sets.push_back(coset_space(g, oc.subgroup(j)));
    std::vector<std::size_t> power{1};
    for (std::size_t n = 1; n <= length + 1; ++n)
        power.push_back(power.back() * order);
    // simplex (s, g_1, ..., g_n) ↦ s + |S|·Σ g_k |G|^{n−k}
    auto encode = [&](std::size_t size, std::size_t s, const std::vector<Element>& gs) {
        std::size_t idx = 0;
        for (Element a : gs)
            idx = idx * order + a;
        return s + size * idx;
    };
    auto decode = [&](std::size_t size, std::size_t n, std::size_t code, std::size_t& s) {
        s = code % size;
        std::size_t rest = code / size;
        std::vector<Element> gs(n);
        for (std::size_t k = n; k-- > 0;) {
            gs[k] = rest % order;
            rest /= order;
        }
        return gs;
    };
    for (std::size_t n = 0; n <= length; ++n) {
        std::vector<CyclicSum> at;
        for (ObjectId j = 0; j < J.num_objects(); ++j)
            at.push_back(CyclicSum::free(sets[j].size * power[n]));
        std::vector<IntMatrix> act;
        for (MorphismId psi = 0; psi < J.num_morphisms(); ++psi) {
            const ObjectId s0 = J.dom(psi), t0 = J.cod(psi);
            const auto f = oc.coset_map(psi);
            IntMatrix m(at[t0].size(), at[s0].size());
            for (std::size_t code = 0; code < at[s0].size(); ++code) {
                std::size_t s = 0;
                const auto gs = decode(sets[s0].size, n, code, s);
                m(encode(sets[t0].size, f[s], gs), code) = 1;
            }
            act.push_back(std::move(m));
        }
        spread(e, n, at, act);
        if (n == 0)
            continue;
        std::vector<IntMatrix> ds;
        for (ObjectId j = 0; j < J.num_objects(); ++j) {
            const std::size_t size = sets[j].size;
            IntMatrix d(size * power[n - 1], size * power[n]);
            for (std::size_t code = 0; code < size * power[n]; ++code) {
                std::size_t s = 0;
                const auto gs = decode(size, n, code, s);
                for (std::size_t i = 0; i <= n; ++i) {
                    std::vector<Element> face;
                    std::size_t fs = s;
                    if (i == 0) {
                        fs = sets[j].action[gs[0]][s];
                        face.assign(gs.begin() + 1, gs.end());
                    } else if (i == n) {
                        face.assign(gs.begin(), gs.end() - 1);
                    } else {
                        face = gs;
                        face[i - 1] = g.mul(gs[i], gs[i - 1]);
                        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                    }
                    d(encode(size, fs, face), code) += i % 2 == 0 ? 1 : -1;
                }
            }
            ds.push_back(std::move(d));
        }
        e.differentials[n - 1].assign(e.index->num_objects(), ds);
    }
    return e;
}

BiFunctorComplex z2_sign_twist_bifunctor(CategoryPtr index, const OrbitCategory& oc)
{
    if (oc.group.order() != 2)
        throw InputError("z2_sign_twist_bifunctor: needs a group of order 2");
    const FinCategory& J = *oc.category;
    BiFunctorComplex e = shell(std::move(index), oc, 1);
    std::vector<CyclicSum> at(J.num_objects(), CyclicSum::free(1));
    std::vector<IntMatrix> act;
    for (MorphismId psi = 0; psi < J.num_morphisms(); ++psi) {
        IntMatrix m(1, 1);
        const bool free_src = oc.subgroup(J.dom(psi)).size() == 1;
        const bool free_tgt = oc.subgroup(J.cod(psi)).size() == 1;
        if (free_src && free_tgt)
            m(0, 0) = oc.representative[psi] == oc.group.identity() ? 1 : -1;
        else if (!free_src)
            m(0, 0) = 1;
        act.push_back(std::move(m));
    }
    spread(e, 0, at, act);
    return e;
}

} // namespace orbifunctor
