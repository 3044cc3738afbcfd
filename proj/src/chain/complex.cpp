#include "orbifunctor/chain/complex.hpp"

#include "orbifunctor/error.hpp"

namespace orbifunctor {

CatModule CatChainComplex::module(int p) const
{
    if (!in_range(p))
        return CatModule::zero(base, variance);
    return modules[static_cast<std::size_t>(p - lo)];
}

ModuleMap CatChainComplex::differential(int p) const
{
    if (in_range(p) && in_range(p - 1))
        return differentials[static_cast<std::size_t>(p - lo - 1)];
    ModuleMap z{module(p), module(p - 1), {}};
    for (ObjectId c = 0; c < base->num_objects(); ++c)
        z.components.emplace_back(z.target.values[c].size(), z.source.values[c].size());
    return z;
}

const FreeMarker& CatChainComplex::marker(int p) const
{
    if (!has_markers() || !in_range(p))
        throw InputError("CatChainComplex: no free marker in degree " + std::to_string(p));
    return markers[static_cast<std::size_t>(p - lo)];
}

PlainChainComplex CatChainComplex::evaluate(ObjectId c) const
{
    std::vector<CyclicSum> groups;
    std::vector<IntMatrix> diffs;
    for (const auto& m : modules)
        groups.push_back(m.values[c]);
    for (const auto& d : differentials)
        diffs.push_back(d.components[c]);
    return PlainChainComplex(lo, std::move(groups), std::move(diffs));
}

CatChainComplex CatChainComplex::concentrated(const CatModule& m, int degree)
{
    return CatChainComplex{m.base, m.variance, degree, {m}, {}, {}};
}

CatChainComplex CatChainComplex::concentrated(const FreeModule& f, int degree)
{
    return CatChainComplex{f.module.base, f.module.variance, degree, {f.module}, {}, {f.marker}};
}

CatChainComplex resolution_complex(const FreeResolution& r)
{
    if (r.modules.empty())
        throw InputError("resolution_complex: empty resolution");
    CatChainComplex out{r.modules[0].module.base, r.modules[0].module.variance, 0, {}, r.differentials, {}};
    for (const auto& f : r.modules) {
        out.modules.push_back(f.module);
        out.markers.push_back(f.marker);
    }
    return out;
}

ValidationReport validate_complex(const CatChainComplex& c)
{
    ValidationReport r;
    auto fail = [&](std::string msg, std::vector<std::size_t> w = {}) {
        r.ok = false;
        r.message = std::move(msg);
        r.witness = std::move(w);
        return r;
    };
    if (!c.modules.empty() && c.differentials.size() != c.modules.size() - 1)
        return fail("need one differential between consecutive degrees");
    if (!c.markers.empty() && c.markers.size() != c.modules.size())
        return fail("markers must cover every degree");
    for (int p = c.lo; p <= c.hi(); ++p) {
        const CatModule& m = c.modules[static_cast<std::size_t>(p - c.lo)];
        if (m.base.get() != c.base.get() || m.variance != c.variance)
            return fail("degree " + std::to_string(p) + ": module on a different base or variance");
        ValidationReport mr = validate_module(m);
        if (!mr.ok)
            return fail("degree " + std::to_string(p) + ": " + mr.message, mr.witness);
        if (c.has_markers()) {
            const FreeMarker& fm = c.markers[static_cast<std::size_t>(p - c.lo)];
            for (ObjectId x = 0; x < c.base->num_objects(); ++x)
                if (fm.basis.size() != c.base->num_objects() || fm.basis[x].size() != m.values[x].size())
                    return fail("degree " + std::to_string(p) + ": marker does not match the module");
        }
    }
    for (int p = c.lo + 1; p <= c.hi(); ++p) {
        ValidationReport dr = validate_module_map(c.differential(p));
        if (!dr.ok)
            return fail("d_" + std::to_string(p) + ": " + dr.message, dr.witness);
    }
    for (ObjectId x = 0; x < c.base->num_objects(); ++x) {
        std::string why;
        if (!c.evaluate(x).is_valid(&why))
            return fail("at object " + c.base->object_name(x) + ": " + why, {x});
    }
    return r;
}

CatChainComplex BiFunctorComplex::index_slice(ObjectId j) const
{
    CatChainComplex out{index, Variance::Contravariant, lo, {}, {}, {}};
    for (std::size_t k = 0; k < values.size(); ++k) {
        CatModule m;
        m.base = index;
        m.variance = Variance::Contravariant;
        for (ObjectId i = 0; i < index->num_objects(); ++i)
            m.values.push_back(values[k][i][j]);
        for (MorphismId phi = 0; phi < index->num_morphisms(); ++phi)
            m.action.push_back(index_action[k][phi][j]);
        out.modules.push_back(std::move(m));
    }
    for (std::size_t k = 0; k < differentials.size(); ++k) {
        ModuleMap d{out.modules[k + 1], out.modules[k], {}};
        for (ObjectId i = 0; i < index->num_objects(); ++i)
            d.components.push_back(differentials[k][i][j]);
        out.differentials.push_back(std::move(d));
    }
    return out;
}

CatChainComplex BiFunctorComplex::coefficient_slice(ObjectId i) const
{
    CatChainComplex out{coefficient, Variance::Covariant, lo, {}, {}, {}};
    for (std::size_t k = 0; k < values.size(); ++k) {
        CatModule m;
        m.base = coefficient;
        m.variance = Variance::Covariant;
        m.values = values[k][i];
        m.action = coefficient_action[k][i];
        out.modules.push_back(std::move(m));
    }
    for (std::size_t k = 0; k < differentials.size(); ++k)
        out.differentials.push_back({out.modules[k + 1], out.modules[k], differentials[k][i]});
    return out;
}

PlainChainComplex BiFunctorComplex::at(ObjectId i, ObjectId j) const
{
    std::vector<CyclicSum> groups;
    std::vector<IntMatrix> diffs;
    for (const auto& v : values)
        groups.push_back(v[i][j]);
    for (const auto& d : differentials)
        diffs.push_back(d[i][j]);
    return PlainChainComplex(lo, std::move(groups), std::move(diffs));
}

ValidationReport validate_bifunctor(const BiFunctorComplex& e)
{
    ValidationReport r;
    auto fail = [&](std::string msg, std::vector<std::size_t> w = {}) {
        r.ok = false;
        r.message = std::move(msg);
        r.witness = std::move(w);
        return r;
    };
    const FinCategory& I = *e.index;
    const FinCategory& J = *e.coefficient;
    const std::size_t nk = e.values.size();
    if (e.index_action.size() != nk || e.coefficient_action.size() != nk ||
        (nk > 0 && e.differentials.size() != nk - 1))
        return fail("degree ranges of the components disagree");
    for (std::size_t k = 0; k < nk; ++k) {
        if (e.values[k].size() != I.num_objects() || e.index_action[k].size() != I.num_morphisms() ||
            e.coefficient_action[k].size() != I.num_objects())
            return fail("degree " + std::to_string(e.lo + static_cast<int>(k)) + ": wrong number of entries");
        for (ObjectId i = 0; i < I.num_objects(); ++i)
            if (e.values[k][i].size() != J.num_objects() || e.coefficient_action[k][i].size() != J.num_morphisms())
                return fail("degree " + std::to_string(e.lo + static_cast<int>(k)) + ": wrong number of entries");
        for (MorphismId phi = 0; phi < I.num_morphisms(); ++phi)
            if (e.index_action[k][phi].size() != J.num_objects())
                return fail("degree " + std::to_string(e.lo + static_cast<int>(k)) + ": wrong number of entries");
    }
    // Each slice is a valid complex in its own leg.
    for (ObjectId j = 0; j < J.num_objects(); ++j) {
        ValidationReport s = validate_complex(e.index_slice(j));
        if (!s.ok)
            return fail("index leg at " + J.object_name(j) + ": " + s.message, s.witness);
    }
    for (ObjectId i = 0; i < I.num_objects(); ++i) {
        ValidationReport s = validate_complex(e.coefficient_slice(i));
        if (!s.ok)
            return fail("coefficient leg at " + I.object_name(i) + ": " + s.message, s.witness);
    }
    // E(φ, cod ψ)∘E(cod φ, ψ) = E(dom φ, ψ)∘E(φ, dom ψ)
    for (std::size_t k = 0; k < nk; ++k)
        for (MorphismId phi = 0; phi < I.num_morphisms(); ++phi)
            for (MorphismId psi = 0; psi < J.num_morphisms(); ++psi) {
                const ObjectId a = I.dom(phi), b = I.cod(phi), s = J.dom(psi), t = J.cod(psi);
                IntMatrix lhs = e.index_action[k][phi][t] * e.coefficient_action[k][b][psi];
                IntMatrix rhs = e.coefficient_action[k][a][psi] * e.index_action[k][phi][s];
                if (!e.values[k][a][t].reduce_rows(lhs - rhs).is_zero())
                    return fail("legs do not commute in degree " + std::to_string(e.lo + static_cast<int>(k)),
                                {phi, psi});
            }
    return r;
}

BiFunctorComplex constant_bifunctor(CategoryPtr index, CategoryPtr coefficient, const PlainChainComplex& c)
{
    BiFunctorComplex e;
    e.index = index;
    e.coefficient = coefficient;
    e.lo = c.lo();
    const std::size_t ni = index->num_objects(), nj = coefficient->num_objects();
    for (int p = c.lo(); p <= c.hi(); ++p) {
        const CyclicSum g = c.group(p);
        const IntMatrix id = IntMatrix::identity(g.size());
        e.values.emplace_back(ni, std::vector<CyclicSum>(nj, g));
        e.index_action.emplace_back(index->num_morphisms(), std::vector<IntMatrix>(nj, id));
        e.coefficient_action.emplace_back(ni, std::vector<IntMatrix>(coefficient->num_morphisms(), id));
        if (p > c.lo())
            e.differentials.emplace_back(ni, std::vector<IntMatrix>(nj, c.differential(p)));
    }
    return e;
}

} // namespace orbifunctor
