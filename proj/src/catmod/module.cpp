#include "orbifunctor/catmod/module.hpp"

#include <algorithm>
#include <functional>

#include "orbifunctor/error.hpp"
#include "orbifunctor/exact/lattice.hpp"

namespace orbifunctor {
namespace {

void require_same_base(const CatModule& a, const CatModule& b, const char* who)
{
    if (a.base.get() != b.base.get())
        throw InputError(std::string(who) + ": modules live on different categories");
}

// Matrix of a canonical module value's action, transported through witnesses.
IntMatrix transport(const FpAbGroup& src, const FpAbGroup& tgt, const IntMatrix& ambient_map)
{
    return induced_hom(src, tgt, ambient_map).matrix;
}

CatModule canonical_module(CategoryPtr base, Variance v, const std::vector<FpAbGroup>& groups,
                           const std::function<IntMatrix(MorphismId)>& ambient_action)
{
    CatModule out;
    out.base = base;
    out.variance = v;
    for (const auto& g : groups)
        out.values.push_back(g.as_cyclic_sum());
    for (MorphismId m = 0; m < base->num_morphisms(); ++m) {
        const ObjectId s = v == Variance::Covariant ? base->dom(m) : base->cod(m);
        const ObjectId t = v == Variance::Covariant ? base->cod(m) : base->dom(m);
        out.action.push_back(transport(groups[s], groups[t], ambient_action(m)));
    }
    return out;
}

} // namespace

const char* to_string(Variance v)
{
    return v == Variance::Covariant ? "covariant" : "contravariant";
}

Variance opposite(Variance v)
{
    return v == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
}

ObjectId CatModule::action_source(MorphismId m) const
{
    return variance == Variance::Covariant ? base->dom(m) : base->cod(m);
}

ObjectId CatModule::action_target(MorphismId m) const
{
    return variance == Variance::Covariant ? base->cod(m) : base->dom(m);
}

std::size_t CatModule::total_generators() const
{
    std::size_t n = 0;
    for (const auto& v : values)
        n += v.size();
    return n;
}

CatModule CatModule::zero(CategoryPtr base, Variance v)
{
    CatModule m;
    m.variance = v;
    m.values.assign(base->num_objects(), CyclicSum{});
    m.action.assign(base->num_morphisms(), IntMatrix{});
    m.base = std::move(base);
    return m;
}

CatModule CatModule::constant(CategoryPtr base, Variance v, const CyclicSum& a)
{
    CatModule m;
    m.variance = v;
    m.values.assign(base->num_objects(), a);
    m.action.assign(base->num_morphisms(), IntMatrix::identity(a.size()));
    m.base = std::move(base);
    return m;
}

ModuleMap ModuleMap::identity(const CatModule& m)
{
    ModuleMap f{m, m, {}};
    for (const auto& v : m.values)
        f.components.push_back(IntMatrix::identity(v.size()));
    return f;
}

ModuleMap ModuleMap::scalar(const CatModule& m, const Integer& k)
{
    ModuleMap f{m, m, {}};
    for (const auto& v : m.values)
        f.components.push_back(v.reduce_rows(IntMatrix::identity(v.size()).scaled(k)));
    return f;
}

ValidationReport validate_module(const CatModule& m)
{
    ValidationReport r;
    auto fail = [&](std::string msg, std::vector<std::size_t> w) {
        r.ok = false;
        r.message = std::move(msg);
        r.witness = std::move(w);
        return r;
    };
    if (!m.base)
        return fail("module has no base category", {});
    const FinCategory& c = *m.base;
    if (m.values.size() != c.num_objects() || m.action.size() != c.num_morphisms())
        return fail("module tables do not match the base category", {});
    for (MorphismId f = 0; f < c.num_morphisms(); ++f) {
        const CyclicSum& src = m.values[m.action_source(f)];
        const CyclicSum& tgt = m.values[m.action_target(f)];
        if (m.action[f].rows() != tgt.size() || m.action[f].cols() != src.size())
            return fail("action of " + c.morphism(f).name + " has the wrong shape", {f});
        if (!tgt.admits(m.action[f], src))
            return fail("action of " + c.morphism(f).name + " does not respect relations", {f});
    }
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        const MorphismId id = c.identity(x);
        const CyclicSum& v = m.values[x];
        if (v.reduce_rows(m.action[id]) != v.reduce_rows(IntMatrix::identity(v.size())))
            return fail("identity of " + c.object_name(x) + " does not act as the identity", {id});
    }
    for (MorphismId g = 0; g < c.num_morphisms(); ++g)
        for (MorphismId f = 0; f < c.num_morphisms(); ++f) {
            const MorphismId gf = c.composition_entry(g, f);
            if (gf == kNone)
                continue;
            const IntMatrix expect = m.variance == Variance::Covariant ? m.action[g] * m.action[f]
                                                                         : m.action[f] * m.action[g];
            const CyclicSum& tgt = m.values[m.action_target(gf)];
            if (tgt.reduce_rows(expect - m.action[gf]) != IntMatrix(expect.rows(), expect.cols()))
                return fail("composition " + c.morphism(g).name + "∘" + c.morphism(f).name + " is not respected",
                            {g, f});
        }
    return r;
}

ValidationReport validate_module_map(const ModuleMap& f)
{
    ValidationReport r;
    auto fail = [&](std::string msg, std::vector<std::size_t> w) {
        r.ok = false;
        r.message = std::move(msg);
        r.witness = std::move(w);
        return r;
    };
    if (f.source.base.get() != f.target.base.get() || f.source.variance != f.target.variance)
        return fail("source and target differ in base or variance", {});
    const FinCategory& c = *f.source.base;
    if (f.components.size() != c.num_objects())
        return fail("one component per object required", {});
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        if (!f.target.values[x].admits(f.components[x], f.source.values[x]))
            return fail("component at " + c.object_name(x) + " is not a homomorphism", {x});
    for (MorphismId m = 0; m < c.num_morphisms(); ++m) {
        const ObjectId s = f.source.action_source(m), t = f.source.action_target(m);
        const IntMatrix lhs = f.target.action[m] * f.components[s];
        const IntMatrix rhs = f.components[t] * f.source.action[m];
        if (!f.target.values[t].reduce_rows(lhs - rhs).is_zero())
            return fail("naturality fails at " + c.morphism(m).name, {m});
    }
    return r;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f)
{
    ModuleMap out{f.source, g.target, {}};
    for (std::size_t x = 0; x < f.components.size(); ++x)
        out.components.push_back(g.target.values[x].reduce_rows(g.components[x] * f.components[x]));
    return out;
}

// ---------------------------------------------------------------- free modules

std::size_t FreeMarker::index_of(ObjectId d, std::size_t generator, MorphismId alpha) const
{
    const auto& b = basis[d];
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k].first == generator && b[k].second == alpha)
            return k;
    return kNone;
}

std::size_t FreeMarker::generator_index(const FinCategory& c, std::size_t i) const
{
    const ObjectId ci = generators[i];
    return index_of(ci, i, c.identity(ci));
}

FreeModule free_module(CategoryPtr base, const std::vector<ObjectId>& generators, Variance v)
{
    const FinCategory& c = *base;
    for (ObjectId g : generators)
        if (g >= c.num_objects())
            throw InputError("free_module: unknown object " + std::to_string(g));
    FreeModule f;
    f.marker.variance = v;
    f.marker.generators = generators;
    f.marker.basis.resize(c.num_objects());
    for (ObjectId d = 0; d < c.num_objects(); ++d)
        for (std::size_t i = 0; i < generators.size(); ++i) {
            const auto& hs = v == Variance::Contravariant ? c.hom(d, generators[i]) : c.hom(generators[i], d);
            for (MorphismId a : hs)
                f.marker.basis[d].emplace_back(i, a);
        }
    f.module.base = base;
    f.module.variance = v;
    for (ObjectId d = 0; d < c.num_objects(); ++d)
        f.module.values.push_back(CyclicSum::free(f.marker.basis[d].size()));
    for (MorphismId phi = 0; phi < c.num_morphisms(); ++phi) {
        const ObjectId s = f.module.action_source(phi), t = f.module.action_target(phi);
        IntMatrix a(f.marker.basis[t].size(), f.marker.basis[s].size());
        for (std::size_t k = 0; k < f.marker.basis[s].size(); ++k) {
            const auto [i, alpha] = f.marker.basis[s][k];
            const MorphismId moved = v == Variance::Contravariant ? c.compose(alpha, phi) : c.compose(phi, alpha);
            a(f.marker.index_of(t, i, moved), k) = 1;
        }
        f.module.action.push_back(std::move(a));
    }
    return f;
}

ModuleMap free_map(const FreeModule& f, const CatModule& target, const std::vector<IntVector>& images)
{
    require_same_base(f.module, target, "free_map");
    if (f.module.variance != target.variance)
        throw InputError("free_map: variance mismatch");
    if (images.size() != f.marker.generators.size())
        throw InputError("free_map: one image per generator required");
    const FinCategory& c = *f.module.base;
    ModuleMap out{f.module, target, {}};
    for (ObjectId d = 0; d < c.num_objects(); ++d) {
        IntMatrix comp(target.values[d].size(), f.marker.basis[d].size());
        for (std::size_t k = 0; k < f.marker.basis[d].size(); ++k) {
            const auto [i, alpha] = f.marker.basis[d][k];
            if (images[i].size() != target.values[f.marker.generators[i]].size())
                throw InputError("free_map: image of generator " + std::to_string(i) + " has the wrong length");
            comp.set_column(k, target.values[d].reduce(target.action[alpha].apply(images[i])));
        }
        out.components.push_back(std::move(comp));
    }
    return out;
}

CatModule direct_sum(const std::vector<CatModule>& parts)
{
    if (parts.empty())
        throw InputError("direct_sum: empty family");
    for (const auto& p : parts) {
        require_same_base(parts.front(), p, "direct_sum");
        if (p.variance != parts.front().variance)
            throw InputError("direct_sum: variance mismatch");
    }
    CatModule out;
    out.base = parts.front().base;
    out.variance = parts.front().variance;
    const FinCategory& c = *out.base;
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        CyclicSum v;
        for (const auto& p : parts)
            v = v + p.values[x];
        out.values.push_back(std::move(v));
    }
    for (MorphismId m = 0; m < c.num_morphisms(); ++m) {
        std::vector<IntMatrix> blocks;
        for (const auto& p : parts)
            blocks.push_back(p.action[m]);
        out.action.push_back(IntMatrix::block_diagonal(blocks));
    }
    return out;
}

// ---------------------------------------------------------------- tensor and hom

TensorPresentation tensor_presentation(const CatModule& contra, const CatModule& co)
{
    require_same_base(contra, co, "tensor_over_cat");
    if (contra.variance != Variance::Contravariant || co.variance != Variance::Covariant)
        throw InputError("tensor_over_cat: expects a contravariant and a covariant module");
    const FinCategory& c = *contra.base;
    TensorPresentation tp;
    std::size_t dim = 0;
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        tp.offset.push_back(dim);
        dim += contra.values[x].size() * co.values[x].size();
    }
    std::vector<IntVector> rels;
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        const CyclicSum& mx = contra.values[x];
        const CyclicSum& nx = co.values[x];
        for (std::size_t a = 0; a < mx.size(); ++a)
            for (std::size_t b = 0; b < nx.size(); ++b) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), mx.order(a).get_mpz_t(), nx.order(b).get_mpz_t());
                if (sgn(g) == 0)
                    continue;
                IntVector r(dim);
                r[tp.index(co, x, a, b)] = g;
                rels.push_back(std::move(r));
            }
    }
    // (x·φ) ⊗ y − x ⊗ (φ·y) for φ: c → d, x ∈ M(d), y ∈ N(c).
    for (MorphismId phi = 0; phi < c.num_morphisms(); ++phi) {
        if (c.is_identity(phi))
            continue;
        const ObjectId s = c.dom(phi), t = c.cod(phi);
        const IntMatrix& mphi = contra.action[phi];  // M(t) → M(s)
        const IntMatrix& nphi = co.action[phi];      // N(s) → N(t)
        for (std::size_t x = 0; x < contra.values[t].size(); ++x)
            for (std::size_t y = 0; y < co.values[s].size(); ++y) {
                IntVector r(dim);
                for (std::size_t a = 0; a < contra.values[s].size(); ++a)
                    r[tp.index(co, s, a, y)] += mphi(a, x);
                for (std::size_t b = 0; b < co.values[t].size(); ++b)
                    r[tp.index(co, t, x, b)] -= nphi(b, y);
                if (!is_zero_vector(r))
                    rels.push_back(std::move(r));
            }
    }
    tp.group = cokernel_presentation(IntMatrix::from_columns(dim, rels));
    return tp;
}

FpAbGroup tensor_over_cat(const CatModule& contra, const CatModule& co)
{
    return tensor_presentation(contra, co).group;
}

std::vector<IntMatrix> HomPresentation::components(const CatModule& m, const CatModule& n,
                                                   std::span<const Integer> ambient) const
{
    std::vector<IntMatrix> out;
    for (ObjectId x = 0; x < m.values.size(); ++x) {
        IntMatrix f(n.values[x].size(), m.values[x].size());
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < f.cols(); ++j)
                f(i, j) = ambient[offset[x] + i * f.cols() + j];
        out.push_back(std::move(f));
    }
    return out;
}

HomPresentation hom_presentation(const CatModule& m, const CatModule& n)
{
    require_same_base(m, n, "hom_over_cat");
    if (m.variance != n.variance)
        throw InputError("hom_over_cat: variance mismatch");
    const FinCategory& c = *m.base;
    HomPresentation hp;
    std::size_t dim = 0;
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        hp.offset.push_back(dim);
        dim += n.values[x].size() * m.values[x].size();
    }
    auto at = [&](ObjectId x, std::size_t i, std::size_t j) { return hp.offset[x] + i * m.values[x].size() + j; };

    // Constraint rows A·X with a modulus per row; X is natural iff each row
    // value is divisible by its modulus (0 meaning it must vanish).
    std::vector<IntVector> rows;
    std::vector<Integer> moduli;
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        for (std::size_t i = 0; i < n.values[x].size(); ++i)
            for (std::size_t j = 0; j < m.values[x].size(); ++j) {
                const Integer& a = m.values[x].order(j);
                if (sgn(a) == 0)
                    continue;
                IntVector r(dim);
                r[at(x, i, j)] = a;
                rows.push_back(std::move(r));
                moduli.push_back(n.values[x].order(i));
            }
    for (MorphismId phi = 0; phi < c.num_morphisms(); ++phi) {
        if (c.is_identity(phi))
            continue;
        const ObjectId s = m.action_source(phi), t = m.action_target(phi);
        const IntMatrix& mphi = m.action[phi];
        const IntMatrix& nphi = n.action[phi];
        // N(φ)·f_s − f_t·M(φ), an ng(N(t)) × ng(M(s)) matrix.
        for (std::size_t i = 0; i < n.values[t].size(); ++i)
            for (std::size_t j = 0; j < m.values[s].size(); ++j) {
                IntVector r(dim);
                for (std::size_t k = 0; k < n.values[s].size(); ++k)
                    r[at(s, k, j)] += nphi(i, k);
                for (std::size_t k = 0; k < m.values[t].size(); ++k)
                    r[at(t, i, k)] -= mphi(k, j);
                if (is_zero_vector(r))
                    continue;
                rows.push_back(std::move(r));
                moduli.push_back(n.values[t].order(i));
            }
    }
    IntMatrix a(rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < dim; ++k)
            a(r, k) = rows[r][k];
    IntMatrix naturals = preimage_basis(a, CyclicSum(moduli).relations());

    std::vector<IntVector> rels;
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        for (std::size_t i = 0; i < n.values[x].size(); ++i) {
            const Integer& t = n.values[x].order(i);
            if (sgn(t) == 0)
                continue;
            for (std::size_t j = 0; j < m.values[x].size(); ++j) {
                IntVector r(dim);
                r[at(x, i, j)] = t;
                rels.push_back(std::move(r));
            }
        }
    hp.group = subquotient(naturals, IntMatrix::from_columns(dim, rels));
    return hp;
}

FpAbGroup hom_over_cat(const CatModule& m, const CatModule& n)
{
    return hom_presentation(m, n).group;
}

CatModule hom_into(const CatModule& n, const CyclicSum& a)
{
    const FinCategory& c = *n.base;
    std::vector<FpAbGroup> groups;
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        groups.push_back(hom_group(n.values[x], a));
    // Entry (i, j) of an ng(A) × ng(N(x)) matrix sits at i·ng(N(x)) + j.
    auto ambient = [&](MorphismId phi) {
        const ObjectId s = n.action_source(phi), t = n.action_target(phi);
        const std::size_t ns = n.values[s].size(), nt = n.values[t].size();
        // f ∈ Hom(N(t), A) ↦ f·N(φ) ∈ Hom(N(s), A).
        IntMatrix map(a.size() * ns, a.size() * nt);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < ns; ++j)
                for (std::size_t k = 0; k < nt; ++k)
                    map(i * ns + j, i * nt + k) = n.action[phi](k, j);
        return map;
    };
    return canonical_module(n.base, opposite(n.variance), groups, ambient);
}

// ---------------------------------------------------------------- kernels and cokernels

KernelCokernelModules map_kernel_cokernel(const ModuleMap& f)
{
    const FinCategory& c = *f.source.base;
    std::vector<FpAbGroup> ker, coker, img;
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        ker.push_back(kernel_group(f.components[x], f.source.values[x], f.target.values[x]));
        coker.push_back(cokernel_group(f.components[x], f.source.values[x], f.target.values[x]));
        img.push_back(image_group(f.components[x], f.source.values[x], f.target.values[x]));
    }
    const Variance v = f.source.variance;
    KernelCokernelModules out{
        canonical_module(f.source.base, v, ker, [&](MorphismId m) { return f.source.action[m]; }),
        canonical_module(f.source.base, v, coker, [&](MorphismId m) { return f.target.action[m]; }),
        canonical_module(f.source.base, v, img, [&](MorphismId m) { return f.target.action[m]; }),
        {},
        {}};
    out.kernel_inclusion = {out.kernel, f.source, {}};
    out.cokernel_projection = {f.target, out.cokernel, {}};
    for (ObjectId x = 0; x < c.num_objects(); ++x) {
        out.kernel_inclusion.components.push_back(f.source.values[x].reduce_rows(ker[x].witness().generators));
        IntMatrix proj(coker[x].num_generators(), f.target.values[x].size());
        for (std::size_t j = 0; j < f.target.values[x].size(); ++j) {
            IntVector e(f.target.values[x].size());
            e[j] = 1;
            proj.set_column(j, coker[x].coordinates_of(e));
        }
        out.cokernel_projection.components.push_back(std::move(proj));
    }
    return out;
}

// ---------------------------------------------------------------- restriction and induction

CatModule restrict_along(const CatFunctor& f, const CatModule& m)
{
    if (m.base.get() != f.target.get())
        throw InputError("restrict_along: module does not live on the functor's target");
    CatModule out;
    out.base = f.source;
    out.variance = m.variance;
    for (ObjectId x = 0; x < f.source->num_objects(); ++x)
        out.values.push_back(m.values[f.object_map[x]]);
    for (MorphismId phi = 0; phi < f.source->num_morphisms(); ++phi)
        out.action.push_back(m.action[f.morphism_map[phi]]);
    return out;
}

CatModule induce_along(const CatFunctor& f, const CatModule& m)
{
    if (m.base.get() != f.source.get())
        throw InputError("induce_along: module does not live on the functor's source");
    const FinCategory& src = *f.source;
    const FinCategory& tgt = *f.target;
    const Variance v = m.variance;

    // Contravariant M: F_*M(d) = M ⊗ Z[mor_J(d, F?)]. Covariant M: Z[mor_J(F?, d)] ⊗ M.
    struct Piece {
        CatModule rep;  // the mor-module over the source
        std::vector<std::vector<MorphismId>> basis;
        TensorPresentation tp;
    };
    std::vector<Piece> pieces;
    for (ObjectId d = 0; d < tgt.num_objects(); ++d) {
        Piece p;
        p.rep.base = f.source;
        p.rep.variance = opposite(v);
        for (ObjectId c = 0; c < src.num_objects(); ++c) {
            p.basis.push_back(v == Variance::Contravariant ? tgt.hom(d, f.object_map[c]) : tgt.hom(f.object_map[c], d));
            p.rep.values.push_back(CyclicSum::free(p.basis.back().size()));
        }
        for (MorphismId phi = 0; phi < src.num_morphisms(); ++phi) {
            const ObjectId s = p.rep.action_source(phi), t = p.rep.action_target(phi);
            const MorphismId fphi = f.morphism_map[phi];
            IntMatrix a(p.basis[t].size(), p.basis[s].size());
            for (std::size_t k = 0; k < p.basis[s].size(); ++k) {
                const MorphismId moved = v == Variance::Contravariant ? tgt.compose(fphi, p.basis[s][k])
                                                                      : tgt.compose(p.basis[s][k], fphi);
                const auto& bt = p.basis[t];
                a(static_cast<std::size_t>(std::find(bt.begin(), bt.end(), moved) - bt.begin()), k) = 1;
            }
            p.rep.action.push_back(std::move(a));
        }
        p.tp = v == Variance::Contravariant ? tensor_presentation(m, p.rep) : tensor_presentation(p.rep, m);
        pieces.push_back(std::move(p));
    }
    std::vector<FpAbGroup> groups;
    for (const auto& p : pieces)
        groups.push_back(p.tp.group);
    // ψ: d → d' acts on basis morphisms by pre- (contravariant) or postcomposition.
    auto ambient = [&](MorphismId psi) {
        const ObjectId from = v == Variance::Covariant ? tgt.dom(psi) : tgt.cod(psi);
        const ObjectId to = v == Variance::Covariant ? tgt.cod(psi) : tgt.dom(psi);
        const Piece& ps = pieces[from];
        const Piece& pt = pieces[to];
        IntMatrix map(pt.tp.group.witness().ambient_dimension, ps.tp.group.witness().ambient_dimension);
        for (ObjectId c = 0; c < src.num_objects(); ++c) {
            for (std::size_t k = 0; k < ps.basis[c].size(); ++k) {
                const MorphismId moved = v == Variance::Contravariant ? tgt.compose(ps.basis[c][k], psi)
                                                                      : tgt.compose(psi, ps.basis[c][k]);
                const auto& bt = pt.basis[c];
                const std::size_t k2 = static_cast<std::size_t>(std::find(bt.begin(), bt.end(), moved) - bt.begin());
                for (std::size_t x = 0; x < m.values[c].size(); ++x) {
                    if (v == Variance::Contravariant)
                        map(pt.tp.index(pt.rep, c, x, k2), ps.tp.index(ps.rep, c, x, k)) = 1;
                    else
                        map(pt.tp.index(m, c, k2, x), ps.tp.index(m, c, k, x)) = 1;
                }
            }
        }
        return map;
    };
    return canonical_module(f.target, v, groups, ambient);
}

} // namespace orbifunctor
