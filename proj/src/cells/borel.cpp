#include "orbifunctor/cells/borel.hpp"

#include "orbifunctor/error.hpp"

namespace orbifunctor {
namespace {

std::size_t tuple_index(const std::vector<Element>& t, std::size_t order)
{
    std::size_t idx = 0;
    for (std::size_t k = 1; k < t.size(); ++k)
        idx = idx * order + t[k];
    return idx;
}

} // namespace

BarResolution bar_resolution_truncated(const FinGroup& g, std::size_t k, CategoryPtr base)
{
    if (!base)
        base = std::make_shared<const FinCategory>(group_category(g));
    if (base->num_objects() != 1 || base->num_morphisms() != g.order())
        throw InputError("bar_resolution_truncated: base is not the group category");
    const std::size_t order = g.order();
    const Element e = g.identity();
    BarResolution out;
    out.base = base;
    out.truncation = k;
    out.complex = {base, Variance::Contravariant, 0, {}, {}, {}};
    std::vector<FreeModule> fs;
    std::size_t rank = 1;
    for (std::size_t n = 0; n <= k; ++n) {
        std::vector<std::vector<Element>> ts;
        for (std::size_t i = 0; i < rank; ++i) {
            std::vector<Element> t(n + 1, e);
            std::size_t rest = i;
            for (std::size_t pos = n; pos >= 1; --pos) {
                t[pos] = rest % order;
                rest /= order;
            }
            ts.push_back(std::move(t));
        }
        out.tuples.push_back(std::move(ts));
        fs.push_back(free_module(base, std::vector<ObjectId>(rank, 0), Variance::Contravariant));
        rank *= order;
    }
    for (std::size_t n = 1; n <= k; ++n) {
        std::vector<IntVector> images;
        for (const auto& t : out.tuples[n]) {
            IntVector v(fs[n - 1].module.values[0].size());
            for (std::size_t drop = 0; drop <= n; ++drop) {
                std::vector<Element> face;
                for (std::size_t pos = 0; pos <= n; ++pos)
                    if (pos != drop)
                        face.push_back(t[pos]);
                // face = (e, a'…)·h with h = face[0]
                const Element h = face[0];
                const Element hinv = g.inv(h);
                for (auto& a : face)
                    a = g.mul(a, hinv);
                const std::size_t idx = fs[n - 1].marker.index_of(0, tuple_index(face, order), h);
                v[idx] += drop % 2 == 0 ? 1 : -1;
            }
            images.push_back(std::move(v));
        }
        out.complex.differentials.push_back(free_map(fs[n], fs[n - 1].module, images));
    }
    for (auto& f : fs) {
        out.complex.modules.push_back(std::move(f.module));
        out.complex.markers.push_back(std::move(f.marker));
    }
    return out;
}

PlainChainComplex bar_coinvariants(const BarResolution& bar)
{
    const CatModule z = CatModule::constant(bar.base, Variance::Covariant, CyclicSum::free(1));
    return tensor_complex_over_cat(bar.complex, CatChainComplex::concentrated(z, 0));
}

BorelQuotient borel_and_quotient(const GCWComplex& x, std::size_t k)
{
    const FinGroup& g = x.group;
    const int dim = std::max(x.dimension(), 0);
    if (static_cast<int>(k) < dim + 1)
        throw TruncationError("borel_and_quotient: truncation " + std::to_string(k) +
                              " leaves no faithful degree for a complex of dimension " + std::to_string(dim));
    const BarResolution bar = bar_resolution_truncated(g, k);
    const CatChainComplex cx = underlying_chains(x, bar.base);
    const TensorTotal borel = tensor_total(bar.complex, cx);
    const CatModule z = CatModule::constant(bar.base, Variance::Contravariant, CyclicSum::free(1));
    const TensorTotal quotient = tensor_total(CatChainComplex::concentrated(z, 0), cx);

    BorelQuotient out;
    out.borel = borel.complex;
    out.quotient = quotient.complex;
    out.valid_through = static_cast<int>(k) - 1 - dim;
    out.projection = {borel.complex, quotient.complex, 0, {}};
    const CatModule f0 = bar.complex.module(0);
    for (int n = 0; n <= quotient.complex.hi(); ++n) {
        IntMatrix m(quotient.complex.group(n).size(), borel.complex.group(n).size());
        const TensorTotal::Block* src = borel.find(n, 0);
        const TensorTotal::Block* tgt = quotient.find(n, 0);
        if (src && tgt) {
            const CatModule cq = cx.module(n);
            IntMatrix amb(tgt->tp.group.witness().ambient_dimension, src->tp.group.witness().ambient_dimension);
            for (std::size_t a = 0; a < f0.values[0].size(); ++a)
                for (std::size_t y = 0; y < cq.values[0].size(); ++y)
                    amb(tgt->tp.index(cq, 0, 0, y), src->tp.index(cq, 0, a, y)) = 1;
            const IntMatrix block = induced_hom(src->tp.group, tgt->tp.group, amb).matrix;
            for (std::size_t r = 0; r < block.rows(); ++r)
                for (std::size_t c = 0; c < block.cols(); ++c)
                    m(tgt->offset + r, src->offset + c) = block(r, c);
        }
        out.projection.components.push_back(quotient.complex.group(n).reduce_rows(m));
    }
    return out;
}

AbHom borel_projection_on_homology(const BorelQuotient& bq, int p)
{
    if (p > bq.valid_through)
        throw TruncationError("borel projection: degree " + std::to_string(p) + " exceeds the faithful range ≤ " +
                              std::to_string(bq.valid_through));
    return induced_map_on_homology(bq.projection, p);
}

} // namespace orbifunctor
