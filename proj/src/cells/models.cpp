#include "orbifunctor/cells/models.hpp"

#include "orbifunctor/error.hpp"

namespace orbifunctor {

std::size_t ClassifyingModel::q1h(std::size_t n) const
{
    return n;
}

std::size_t ClassifyingModel::q1v(std::size_t n) const
{
    return index.truncation + n;
}

ClassifyingModel classifying_model(IndexKind kind, std::size_t k)
{
    if (k < 1)
        throw InputError("classifying_model: truncation must be at least 1");
    ClassifyingModel out{standard_category(kind, k), {}};
    const IndexCategory& ic = out.index;
    const FinCategory& c = *ic.category;
    CatCWComplex& x = out.cw;
    x.base = ic.category;
    auto id = [&](std::size_t n) { return c.identity(n); };
    x.cells.emplace_back();
    for (std::size_t n = 0; n <= k; ++n)
        x.cells[0].push_back(n);
    x.boundary.emplace_back();
    x.cells.emplace_back();
    x.boundary.emplace_back();
    if (kind == IndexKind::N) {
        for (std::size_t n = 0; n + 1 <= k; ++n) {
            x.cells[1].push_back(n);
            x.boundary[1].push_back({{1, out.q0(n + 1), ic.morphism(n, n + 1)}, {-1, out.q0(n), id(n)}});
        }
        x.valid_through = static_cast<int>(k) - 1;
        return out;
    }
    // (1, 0) is the horizontal step, (0, 1) the vertical one.
    for (std::size_t n = 0; n + 1 <= k; ++n) {
        x.cells[1].push_back(n);
        x.boundary[1].push_back({{1, out.q0(n + 1), ic.morphism(n, n + 1, 1)}, {-1, out.q0(n), id(n)}});
    }
    for (std::size_t n = 0; n + 1 <= k; ++n) {
        x.cells[1].push_back(n);
        x.boundary[1].push_back({{1, out.q0(n + 1), ic.morphism(n, n + 1, 0)}, {-1, out.q0(n), id(n)}});
    }
    x.cells.emplace_back();
    x.boundary.emplace_back();
    for (std::size_t n = 0; n + 2 <= k; ++n) {
        x.cells[2].push_back(n);
        x.boundary[2].push_back({{1, out.q1h(n), id(n)},
                                 {1, out.q1v(n + 1), ic.morphism(n, n + 1, 1)},
                                 {-1, out.q1h(n + 1), ic.morphism(n, n + 1, 0)},
                                 {-1, out.q1v(n), id(n)}});
    }
    if (x.cells[2].empty()) {
        x.cells.pop_back();
        x.boundary.pop_back();
    }
    x.valid_through = std::max(static_cast<int>(k) - 2, 0);
    return out;
}

ContractibilityReport contractibility_check(const CatCWComplex& x, int r)
{
    if (r < 0)
        throw InputError("contractibility_check: negative degree bound");
    if (x.valid_through && r > *x.valid_through)
        throw TruncationError("contractibility_check: degree bound " + std::to_string(r) +
                              " exceeds the truncation-faithful range ≤ " + std::to_string(*x.valid_through));
    const CatChainComplex chains = cellular_chain_complex(x);
    ContractibilityReport out;
    out.degree_bound = r;
    for (ObjectId c = 0; c < x.base->num_objects(); ++c) {
        const PlainChainComplex ev = chains.evaluate(c);
        out.homology.emplace_back();
        for (int p = 0; p <= r; ++p) {
            FpAbGroup h = homology(ev, p);
            const bool ok = p == 0 ? h == FpAbGroup::free(1) : h.is_trivial();
            if (!ok && out.pass) {
                out.pass = false;
                out.witness = std::make_pair(c, p);
            }
            out.homology.back().push_back(std::move(h));
        }
    }
    return out;
}

} // namespace orbifunctor
