#include "orbifunctor/chain/total.hpp"

#include <map>

#include "orbifunctor/error.hpp"

namespace orbifunctor {
namespace {

void require_base(const CatChainComplex& a, const CatChainComplex& b, const char* who)
{
    if (a.base.get() != b.base.get())
        throw InputError(std::string(who) + ": complexes live on different categories");
    if (a.modules.empty() || b.modules.empty())
        throw InputError(std::string(who) + ": empty complex");
}

void place(IntMatrix& into, std::size_t row, std::size_t col, const IntMatrix& block)
{
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c)
            into(row + r, col + c) += block(r, c);
}

CyclicSum concat(const std::vector<CyclicSum>& parts)
{
    CyclicSum out;
    for (const auto& p : parts)
        out = out + p;
    return out;
}

} // namespace

const TensorTotal::Block* TensorTotal::find(int n, int p) const
{
    if (n < lo || n >= lo + static_cast<int>(blocks.size()))
        return nullptr;
    for (const auto& b : blocks[static_cast<std::size_t>(n - lo)])
        if (b.p == p)
            return &b;
    return nullptr;
}

TensorTotal tensor_total(const CatChainComplex& c, const CatChainComplex& e)
{
    require_base(c, e, "tensor_complex_over_cat");
    if (c.variance != Variance::Contravariant || e.variance != Variance::Covariant)
        throw InputError("tensor_complex_over_cat: expects a contravariant and a covariant complex");
    const FinCategory& base = *c.base;
    TensorTotal out;
    const int lo = c.lo + e.lo, hi = c.hi() + e.hi();
    out.lo = lo;
    std::vector<CyclicSum> groups;
    for (int n = lo; n <= hi; ++n) {
        std::vector<TensorTotal::Block> bs;
        std::vector<CyclicSum> parts;
        std::size_t offset = 0;
        for (int p = c.lo; p <= c.hi(); ++p) {
            const int q = n - p;
            if (!e.in_range(q))
                continue;
            TensorTotal::Block b{p, q, tensor_presentation(c.module(p), e.module(q)), offset};
            offset += b.tp.group.num_generators();
            parts.push_back(b.tp.group.as_cyclic_sum());
            bs.push_back(std::move(b));
        }
        groups.push_back(concat(parts));
        out.blocks.push_back(std::move(bs));
    }
    std::vector<IntMatrix> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        const auto k = static_cast<std::size_t>(n - lo);
        IntMatrix d(groups[k - 1].size(), groups[k].size());
        for (const auto& src : out.blocks[k]) {
            const std::size_t src_amb = src.tp.group.witness().ambient_dimension;
            const CatModule eq = e.module(src.q);
            for (const auto& tgt : out.blocks[k - 1]) {
                const std::size_t tgt_amb = tgt.tp.group.witness().ambient_dimension;
                IntMatrix amb(tgt_amb, src_amb);
                if (tgt.p == src.p - 1) {
                    const ModuleMap dc = c.differential(src.p);
                    for (ObjectId x = 0; x < base.num_objects(); ++x) {
                        const IntMatrix& m = dc.components[x];
                        for (std::size_t a = 0; a < m.cols(); ++a)
                            for (std::size_t b = 0; b < m.rows(); ++b) {
                                if (sgn(m(b, a)) == 0)
                                    continue;
                                for (std::size_t y = 0; y < eq.values[x].size(); ++y)
                                    amb(tgt.tp.index(eq, x, b, y), src.tp.index(eq, x, a, y)) += m(b, a);
                            }
                    }
                } else if (tgt.p == src.p) {
                    const ModuleMap de = e.differential(src.q);
                    const CatModule eq1 = e.module(src.q - 1);
                    const int sign = src.p % 2 == 0 ? 1 : -1;
                    const CatModule cp = c.module(src.p);
                    for (ObjectId x = 0; x < base.num_objects(); ++x) {
                        const IntMatrix& m = de.components[x];
                        for (std::size_t a = 0; a < cp.values[x].size(); ++a)
                            for (std::size_t y = 0; y < m.cols(); ++y)
                                for (std::size_t y1 = 0; y1 < m.rows(); ++y1)
                                    if (sgn(m(y1, y)) != 0)
                                        amb(tgt.tp.index(eq1, x, a, y1), src.tp.index(eq, x, a, y)) += sign * m(y1, y);
                    }
                } else {
                    continue;
                }
                place(d, tgt.offset, src.offset, induced_hom(src.tp.group, tgt.tp.group, amb).matrix);
            }
        }
        diffs.push_back(groups[k - 1].reduce_rows(d));
    }
    out.complex = PlainChainComplex(lo, std::move(groups), std::move(diffs));
    return out;
}

PlainChainComplex tensor_complex_over_cat(const CatChainComplex& c, const CatChainComplex& e)
{
    return tensor_total(c, e).complex;
}

const HomTotal::Block* HomTotal::find(int n, int p, std::size_t generator) const
{
    if (n < lo || n >= lo + static_cast<int>(blocks.size()))
        return nullptr;
    for (const auto& b : blocks[static_cast<std::size_t>(n - lo)])
        if (b.p == p && b.generator == generator)
            return &b;
    return nullptr;
}

HomTotal hom_total(const CatChainComplex& d, const CatChainComplex& e)
{
    require_base(d, e, "hom_complex_over_cat");
    if (d.variance != e.variance)
        throw InputError("hom_complex_over_cat: variance mismatch");
    if (!d.has_markers())
        throw InputError("hom_complex_over_cat: the source complex must be degreewise free with markers");
    const FinCategory& base = *d.base;
    HomTotal out;
    const int lo = e.lo - d.hi(), hi = e.hi() - d.lo;
    out.lo = lo;
    std::vector<CyclicSum> groups;
    for (int n = lo; n <= hi; ++n) {
        std::vector<HomTotal::Block> bs;
        std::vector<CyclicSum> parts;
        std::size_t offset = 0;
        for (int p = d.lo; p <= d.hi(); ++p) {
            if (!e.in_range(p + n))
                continue;
            const FreeMarker& fm = d.marker(p);
            const CatModule ev = e.module(p + n);
            for (std::size_t j = 0; j < fm.generators.size(); ++j) {
                const ObjectId cj = fm.generators[j];
                bs.push_back({p, j, cj, offset, ev.values[cj].size()});
                offset += ev.values[cj].size();
                parts.push_back(ev.values[cj]);
            }
        }
        groups.push_back(concat(parts));
        out.blocks.push_back(std::move(bs));
    }
    std::vector<IntMatrix> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        const auto k = static_cast<std::size_t>(n - lo);
        IntMatrix m(groups[k - 1].size(), groups[k].size());
        const int sign = n % 2 == 0 ? -1 : 1;  // −(−1)^n
        for (const auto& tgt : out.blocks[k - 1]) {
            // d_E∘φ_p
            if (const HomTotal::Block* src = out.find(n, tgt.p, tgt.generator))
                place(m, tgt.offset, src->offset, e.differential(tgt.p + n).components[tgt.object]);
            // φ_{p−1}∘d_D
            if (!d.in_range(tgt.p - 1) || !e.in_range(tgt.p - 1 + n))
                continue;
            const FreeMarker& fm = d.marker(tgt.p);
            const FreeMarker& fm1 = d.marker(tgt.p - 1);
            const IntMatrix dd = d.differential(tgt.p).components[tgt.object];
            const std::size_t col = fm.generator_index(base, tgt.generator);
            const CatModule ev = e.module(tgt.p - 1 + n);
            for (std::size_t r = 0; r < dd.rows(); ++r) {
                if (sgn(dd(r, col)) == 0)
                    continue;
                const auto [j1, alpha] = fm1.basis[tgt.object][r];
                const HomTotal::Block* src = out.find(n, tgt.p - 1, j1);
                place(m, tgt.offset, src->offset, ev.action[alpha].scaled(dd(r, col) * sign));
            }
        }
        diffs.push_back(groups[k - 1].reduce_rows(m));
    }
    out.complex = PlainChainComplex(lo, std::move(groups), std::move(diffs));
    return out;
}

PlainChainComplex hom_complex_over_cat(const CatChainComplex& d, const CatChainComplex& e)
{
    return hom_total(d, e).complex;
}

Comparison comparison_map_t(const CatChainComplex& c, const CatChainComplex& d, const BiFunctorComplex& e)
{
    if (c.base.get() != e.coefficient.get() || c.variance != Variance::Contravariant)
        throw InputError("comparison_map_t: C must be contravariant over the coefficient leg of E");
    if (d.base.get() != e.index.get() || d.variance != Variance::Contravariant)
        throw InputError("comparison_map_t: D must be contravariant over the index leg of E");
    if (!d.has_markers())
        throw InputError("comparison_map_t: D must carry free markers");
    if (e.values.empty() || c.modules.empty() || d.modules.empty())
        throw InputError("comparison_map_t: empty complex");
    const FinCategory& I = *e.index;
    const FinCategory& J = *e.coefficient;

    Comparison out;

    // hom_I(D, E(?, j)) for every j, assembled into a covariant complex over J.
    std::vector<HomTotal> hs;
    for (ObjectId j = 0; j < J.num_objects(); ++j)
        hs.push_back(hom_total(d, e.index_slice(j)));
    const int hlo = hs[0].complex.lo(), hhi = hs[0].complex.hi();
    out.hom_side = {e.coefficient, Variance::Covariant, hlo, {}, {}, {}};
    for (int n = hlo; n <= hhi; ++n) {
        const auto k = static_cast<std::size_t>(n - hlo);
        CatModule m;
        m.base = e.coefficient;
        m.variance = Variance::Covariant;
        for (ObjectId j = 0; j < J.num_objects(); ++j)
            m.values.push_back(hs[j].complex.group(n));
        for (MorphismId psi = 0; psi < J.num_morphisms(); ++psi) {
            const ObjectId s = J.dom(psi), t = J.cod(psi);
            IntMatrix a(m.values[t].size(), m.values[s].size());
            for (std::size_t b = 0; b < hs[s].blocks[k].size(); ++b) {
                const auto& bs = hs[s].blocks[k][b];
                const auto& bt = hs[t].blocks[k][b];
                place(a, bt.offset, bs.offset,
                      e.coefficient_action[static_cast<std::size_t>(bs.p + n - e.lo)][bs.object][psi]);
            }
            m.action.push_back(std::move(a));
        }
        out.hom_side.modules.push_back(std::move(m));
    }
    for (int n = hlo + 1; n <= hhi; ++n) {
        const auto k = static_cast<std::size_t>(n - hlo);
        ModuleMap dm{out.hom_side.modules[k], out.hom_side.modules[k - 1], {}};
        for (ObjectId j = 0; j < J.num_objects(); ++j)
            dm.components.push_back(hs[j].complex.differential(n));
        out.hom_side.differentials.push_back(std::move(dm));
    }
    out.source = tensor_total(c, out.hom_side);

    // C ⊗_J E(i, ?) for every i, assembled into a contravariant complex over I.
    std::vector<TensorTotal> ts;
    std::vector<CatChainComplex> slices;
    for (ObjectId i = 0; i < I.num_objects(); ++i) {
        slices.push_back(e.coefficient_slice(i));
        ts.push_back(tensor_total(c, slices.back()));
    }
    const int tlo = ts[0].complex.lo(), thi = ts[0].complex.hi();
    out.tensor_side = {e.index, Variance::Contravariant, tlo, {}, {}, {}};
    for (int n = tlo; n <= thi; ++n) {
        const auto k = static_cast<std::size_t>(n - tlo);
        CatModule m;
        m.base = e.index;
        m.variance = Variance::Contravariant;
        for (ObjectId i = 0; i < I.num_objects(); ++i)
            m.values.push_back(ts[i].complex.group(n));
        for (MorphismId phi = 0; phi < I.num_morphisms(); ++phi) {
            const ObjectId a = I.dom(phi), b = I.cod(phi);  // E(b, ·) → E(a, ·)
            IntMatrix act(m.values[a].size(), m.values[b].size());
            for (std::size_t x = 0; x < ts[b].blocks[k].size(); ++x) {
                const auto& src = ts[b].blocks[k][x];
                const auto& tgt = ts[a].blocks[k][x];
                const CatModule eb = slices[b].module(src.q);
                const CatModule ea = slices[a].module(src.q);
                const CatModule cp = c.module(src.p);
                IntMatrix amb(tgt.tp.group.witness().ambient_dimension, src.tp.group.witness().ambient_dimension);
                for (ObjectId obj = 0; obj < J.num_objects(); ++obj) {
                    const IntMatrix& em = e.index_action[static_cast<std::size_t>(src.q - e.lo)][phi][obj];
                    for (std::size_t xb = 0; xb < cp.values[obj].size(); ++xb)
                        for (std::size_t y = 0; y < em.cols(); ++y)
                            for (std::size_t y1 = 0; y1 < em.rows(); ++y1)
                                if (sgn(em(y1, y)) != 0)
                                    amb(tgt.tp.index(ea, obj, xb, y1), src.tp.index(eb, obj, xb, y)) += em(y1, y);
                }
                place(act, tgt.offset, src.offset, induced_hom(src.tp.group, tgt.tp.group, amb).matrix);
            }
            m.action.push_back(m.values[a].reduce_rows(act));
        }
        out.tensor_side.modules.push_back(std::move(m));
    }
    for (int n = tlo + 1; n <= thi; ++n) {
        const auto k = static_cast<std::size_t>(n - tlo);
        ModuleMap dm{out.tensor_side.modules[k], out.tensor_side.modules[k - 1], {}};
        for (ObjectId i = 0; i < I.num_objects(); ++i)
            dm.components.push_back(ts[i].complex.differential(n));
        out.tensor_side.differentials.push_back(std::move(dm));
    }
    out.target = hom_total(d, out.tensor_side);

    // x⊗φ ↦ (gen j ↦ x⊗φ(gen j)), traced through the ambient coordinates of both sides.
    const PlainChainComplex& S = out.source.complex;
    const PlainChainComplex& T = out.target.complex;
    if (S.lo() != T.lo() || S.hi() != T.hi())
        throw InvariantError("comparison_map_t: source and target degree ranges differ");
    std::vector<IntMatrix> components;
    for (int n = S.lo(); n <= S.hi(); ++n) {
        IntMatrix t(T.group(n).size(), S.group(n).size());
        for (const auto& sb : out.source.blocks[static_cast<std::size_t>(n - S.lo())]) {
            const int a = sb.p, b = sb.q;
            const CatModule mb = out.hom_side.module(b);
            const CatModule ca = c.module(a);
            for (std::size_t g = 0; g < sb.tp.group.num_generators(); ++g) {
                const IntVector rep = sb.tp.group.representative(g);
                // (target hom block, tensor block) ↦ ambient vector of that tensor block
                std::map<std::pair<const HomTotal::Block*, const TensorTotal::Block*>, IntVector> parts;
                for (ObjectId k = 0; k < J.num_objects(); ++k) {
                    const auto& hblocks = hs[k].blocks[static_cast<std::size_t>(b - hlo)];
                    for (std::size_t x = 0; x < ca.values[k].size(); ++x)
                        for (std::size_t y = 0; y < mb.values[k].size(); ++y) {
                            const Integer& coef = rep[sb.tp.index(mb, k, x, y)];
                            if (sgn(coef) == 0)
                                continue;
                            const HomTotal::Block* hb = nullptr;
                            for (const auto& cand : hblocks)
                                if (y >= cand.offset && y < cand.offset + cand.size)
                                    hb = &cand;
                            const std::size_t ey = y - hb->offset;
                            const ObjectId cj = hb->object;
                            const int q = hb->p + b;
                            const HomTotal::Block* tb = out.target.find(n, hb->p, hb->generator);
                            const TensorTotal::Block* xb = ts[cj].find(hb->p + n, a);
                            if (tb == nullptr || xb == nullptr)
                                throw InvariantError("comparison_map_t: missing block in the target");
                            IntVector& amb = parts[{tb, xb}];
                            if (amb.empty())
                                amb.assign(xb->tp.group.witness().ambient_dimension, Integer(0));
                            amb[xb->tp.index(slices[cj].module(q), k, x, ey)] += coef;
                        }
                }
                for (const auto& [key, amb] : parts) {
                    const IntVector coords = key.second->tp.group.coordinates_of(amb);
                    for (std::size_t r = 0; r < coords.size(); ++r)
                        t(key.first->offset + key.second->offset + r, sb.offset + g) += coords[r];
                }
            }
        }
        components.push_back(T.group(n).reduce_rows(t));
    }
    out.map = ChainMap{S, T, S.lo(), std::move(components)};
    return out;
}

} // namespace orbifunctor
