#include "orbifunctor/cells/cw.hpp"

#include <numeric>
#include <set>

#include "orbifunctor/chain/total.hpp"
#include "orbifunctor/error.hpp"

namespace orbifunctor {
namespace {

ValidationReport failure(std::string msg, std::vector<std::size_t> witness = {})
{
    ValidationReport r;
    r.ok = false;
    r.message = std::move(msg);
    r.witness = std::move(witness);
    return r;
}

/// coset[y] = index of yH among left_cosets(g, h).
std::vector<std::size_t> coset_lookup(const FinGroup& g, const Subgroup& h)
{
    std::vector<std::size_t> out(g.order());
    const auto cosets = left_cosets(g, h);
    for (std::size_t c = 0; c < cosets.size(); ++c)
        for (Element y : cosets[c])
            out[y] = c;
    return out;
}

std::string cell_name(int n, std::size_t k)
{
    return "cell " + std::to_string(k) + " in dimension " + std::to_string(n);
}

} // namespace

std::size_t CatCWComplex::num_cells(int n) const
{
    return n < 0 || n > dimension() ? 0 : cells[static_cast<std::size_t>(n)].size();
}

std::size_t GCWComplex::num_cells(int n) const
{
    return n < 0 || n > dimension() ? 0 : cells[static_cast<std::size_t>(n)].size();
}

ValidationReport validate_cw(const CatCWComplex& x)
{
    if (!x.base)
        return failure("no base category");
    if (x.boundary.size() != x.cells.size())
        return failure("boundary data must cover every dimension");
    const FinCategory& c = *x.base;
    for (std::size_t n = 0; n < x.cells.size(); ++n) {
        const int dim = static_cast<int>(n);
        if (n == 0 && !x.boundary[0].empty())
            return failure("0-cells have no boundary");
        if (n > 0 && x.boundary[n].size() != x.cells[n].size())
            return failure("dimension " + std::to_string(n) + ": one boundary per cell required");
        for (std::size_t k = 0; k < x.cells[n].size(); ++k) {
            if (x.cells[n][k] >= c.num_objects())
                return failure(cell_name(dim, k) + ": unknown object", {n, k});
            if (n == 0)
                continue;
            for (const auto& t : x.boundary[n][k]) {
                if (t.face >= x.cells[n - 1].size())
                    return failure(cell_name(dim, k) + ": face out of range", {n, k});
                if (t.morphism >= c.num_morphisms() || c.dom(t.morphism) != x.cells[n][k] ||
                    c.cod(t.morphism) != x.cells[n - 1][t.face])
                    return failure(cell_name(dim, k) + ": morphism does not run from the cell to its face", {n, k});
            }
        }
    }
    try {
        cellular_chain_complex(x);
    } catch (const InvariantError& e) {
        return failure(e.what());
    }
    return {};
}

CatChainComplex cellular_chain_complex(const CatCWComplex& x)
{
    if (!x.base)
        throw InputError("cellular_chain_complex: no base category");
    if (x.boundary.size() != x.cells.size())
        throw InputError("cellular_chain_complex: boundary data must cover every dimension");
    CatChainComplex out{x.base, Variance::Contravariant, 0, {}, {}, {}};
    std::vector<FreeModule> fs;
    for (const auto& cs : x.cells)
        fs.push_back(free_module(x.base, cs, Variance::Contravariant));
    if (fs.empty())
        fs.push_back(free_module(x.base, {}, Variance::Contravariant));
    for (std::size_t n = 1; n < x.cells.size(); ++n) {
        std::vector<IntVector> images;
        for (std::size_t k = 0; k < x.cells[n].size(); ++k) {
            const ObjectId c = x.cells[n][k];
            IntVector v(fs[n - 1].module.values[c].size());
            if (x.boundary[n].size() != x.cells[n].size())
                throw InputError("cellular_chain_complex: one boundary per cell required");
            for (const auto& t : x.boundary[n][k]) {
                const std::size_t idx =
                    t.face < x.cells[n - 1].size() ? fs[n - 1].marker.index_of(c, t.face, t.morphism) : kNone;
                if (idx == kNone)
                    throw InputError("cellular_chain_complex: bad face term on " +
                                     cell_name(static_cast<int>(n), k));
                v[idx] += t.coefficient;
            }
            images.push_back(std::move(v));
        }
        out.differentials.push_back(free_map(fs[n], fs[n - 1].module, images));
    }
    for (auto& f : fs) {
        out.modules.push_back(std::move(f.module));
        out.markers.push_back(std::move(f.marker));
    }
    const ValidationReport r = validate_complex(out);
    if (!r.ok)
        throw InvariantError("cellular_chain_complex: " + r.message);
    return out;
}

ValidationReport validate_gcw(const GCWComplex& x)
{
    const FinGroup& g = x.group;
    if (x.boundary.size() != x.cells.size())
        return failure("boundary data must cover every dimension");
    for (std::size_t n = 0; n < x.cells.size(); ++n) {
        const int dim = static_cast<int>(n);
        if (n == 0 && !x.boundary[0].empty())
            return failure("0-cells have no boundary");
        if (n > 0 && x.boundary[n].size() != x.cells[n].size())
            return failure("dimension " + std::to_string(n) + ": one boundary per cell required");
        for (std::size_t k = 0; k < x.cells[n].size(); ++k) {
            const Subgroup& h = x.cells[n][k];
            if (!is_subgroup(g, h))
                return failure(cell_name(dim, k) + ": isotropy is not a subgroup", {n, k});
            if (n == 0)
                continue;
            for (const auto& t : x.boundary[n][k]) {
                if (t.face >= x.cells[n - 1].size() || t.representative >= g.order())
                    return failure(cell_name(dim, k) + ": face term out of range", {n, k});
                // r⁻¹ H r ⊆ K
                if (!is_subset(conjugate_subgroup(g, h, g.inv(t.representative)), x.cells[n - 1][t.face]))
                    return failure(cell_name(dim, k) + ": face term is not a G-map", {n, k});
            }
        }
    }
    std::string why;
    if (!underlying_plain_chains(x).is_valid(&why))
        return failure("d∘d ≠ 0: " + why);
    return {};
}

SubgroupFamily isotropy_family(const GCWComplex& x)
{
    std::vector<Subgroup> seeds;
    for (const auto& cs : x.cells)
        seeds.insert(seeds.end(), cs.begin(), cs.end());
    return family_closure(x.group, seeds);
}

std::size_t orbit_type_count(const GCWComplex& x)
{
    const GroupAnalysis a = group_analysis(x.group);
    std::set<std::size_t> classes;
    for (const auto& cs : x.cells)
        for (const auto& h : cs)
            classes.insert(a.conjugacy_class[a.index_of(h)]);
    return classes.size();
}

UnderlyingCells underlying_cells(const GCWComplex& x)
{
    UnderlyingCells out;
    for (const auto& cs : x.cells) {
        out.cells.emplace_back();
        out.offset.emplace_back();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            out.offset.back().push_back(out.cells.back().size());
            const std::size_t count = x.group.order() / cs[i].size();
            for (std::size_t c = 0; c < count; ++c)
                out.cells.back().emplace_back(i, c);
        }
    }
    return out;
}

namespace {

/// Underlying differential d_n as a matrix on underlying cells.
IntMatrix underlying_differential(const GCWComplex& x, const UnderlyingCells& u, std::size_t n)
{
    const FinGroup& g = x.group;
    IntMatrix d(u.cells[n - 1].size(), u.cells[n].size());
    std::vector<std::vector<std::size_t>> face_lookup;
    for (const auto& h : x.cells[n - 1])
        face_lookup.push_back(coset_lookup(g, h));
    for (std::size_t i = 0; i < x.cells[n].size(); ++i) {
        const auto cosets = left_cosets(g, x.cells[n][i]);
        for (std::size_t c = 0; c < cosets.size(); ++c) {
            const Element rep = cosets[c][0];
            for (const auto& t : x.boundary[n][i]) {
                const std::size_t fc = face_lookup[t.face][g.mul(rep, t.representative)];
                d(u.offset[n - 1][t.face] + fc, u.offset[n][i] + c) += t.coefficient;
            }
        }
    }
    return d;
}

} // namespace

PlainChainComplex underlying_plain_chains(const GCWComplex& x)
{
    const UnderlyingCells u = underlying_cells(x);
    std::vector<CyclicSum> groups;
    std::vector<IntMatrix> diffs;
    for (std::size_t n = 0; n < u.cells.size(); ++n) {
        groups.push_back(CyclicSum::free(u.cells[n].size()));
        if (n > 0)
            diffs.push_back(underlying_differential(x, u, n));
    }
    if (groups.empty())
        groups.push_back(CyclicSum::free(0));
    return PlainChainComplex(0, std::move(groups), std::move(diffs));
}

CatChainComplex underlying_chains(const GCWComplex& x, CategoryPtr base)
{
    const FinGroup& g = x.group;
    if (base->num_objects() != 1 || base->num_morphisms() != g.order())
        throw InputError("underlying_chains: base is not the group category of X's group");
    const UnderlyingCells u = underlying_cells(x);
    CatChainComplex out{base, Variance::Covariant, 0, {}, {}, {}};
    for (std::size_t n = 0; n < std::max<std::size_t>(u.cells.size(), 1); ++n) {
        CatModule m;
        m.base = base;
        m.variance = Variance::Covariant;
        const std::size_t size = n < u.cells.size() ? u.cells[n].size() : 0;
        m.values.push_back(CyclicSum::free(size));
        std::vector<GSet> spaces;
        if (n < u.cells.size())
            for (const auto& h : x.cells[n])
                spaces.push_back(coset_space(g, h));
        for (Element a = 0; a < g.order(); ++a) {
            IntMatrix p(size, size);
            for (std::size_t k = 0; k < size; ++k) {
                const auto [i, c] = u.cells[n][k];
                p(u.offset[n][i] + spaces[i].action[a][c], k) = 1;
            }
            m.action.push_back(std::move(p));
        }
        out.modules.push_back(std::move(m));
    }
    for (std::size_t n = 1; n < u.cells.size(); ++n)
        out.differentials.push_back({out.modules[n], out.modules[n - 1], {underlying_differential(x, u, n)}});
    return out;
}

CatCWComplex as_orbit_cw(const GCWComplex& x, const OrbitCategory& oc)
{
    CatCWComplex out;
    out.base = oc.category;
    for (std::size_t n = 0; n < x.cells.size(); ++n) {
        out.cells.emplace_back();
        for (std::size_t k = 0; k < x.cells[n].size(); ++k) {
            if (!oc.family.contains(x.cells[n][k]))
                throw InputError("fixed_point_chains: isotropy " + subgroup_name(x.group, x.cells[n][k]) +
                                 " of " + cell_name(static_cast<int>(n), k) + " lies outside the family");
            out.cells[n].push_back(oc.object_of(x.cells[n][k]));
        }
    }
    out.boundary.resize(x.cells.size());
    for (std::size_t n = 1; n < x.cells.size(); ++n)
        for (std::size_t k = 0; k < x.cells[n].size(); ++k) {
            out.boundary[n].emplace_back();
            for (const auto& t : x.boundary[n][k])
                out.boundary[n][k].push_back(
                    {t.coefficient, t.face, oc.morphism(out.cells[n][k], out.cells[n - 1][t.face], t.representative)});
        }
    return out;
}

CatChainComplex fixed_point_chains(const GCWComplex& x, const OrbitCategory& oc)
{
    if (oc.group.table() != x.group.table())
        throw InputError("fixed_point_chains: orbit category of a different group");
    return cellular_chain_complex(as_orbit_cw(x, oc));
}

PlainChainComplex bredon_complex(const GCWComplex& x, const OrbitCategory& oc, const CatModule& m)
{
    if (m.base.get() != oc.category.get() || m.variance != Variance::Covariant)
        throw InputError("bredon_homology: coefficients must be covariant over the given orbit category");
    return tensor_complex_over_cat(fixed_point_chains(x, oc), CatChainComplex::concentrated(m, 0));
}

FpAbGroup bredon_homology(const GCWComplex& x, const OrbitCategory& oc, const CatModule& m, int p)
{
    return homology(bredon_complex(x, oc, m), p);
}

PlainChainComplex centralizer_quotient_chains(const GCWComplex& x, const Subgroup& h)
{
    const FinGroup& g = x.group;
    if (!isotropy_family(x).contains(h))
        throw InputError("centralizer_quotient_chains: " + subgroup_name(g, h) + " is outside the isotropy family");
    const Subgroup z = centralizer(g, h);
    const UnderlyingCells u = underlying_cells(x);
    const std::size_t dims = u.cells.size();
    // orbit[n][k] = orbit index of underlying cell k if H-fixed, kNone otherwise
    std::vector<std::vector<std::size_t>> orbit(dims);
    std::vector<std::size_t> count(dims, 0);
    for (std::size_t n = 0; n < dims; ++n) {
        std::vector<GSet> spaces;
        for (const auto& s : x.cells[n])
            spaces.push_back(coset_space(g, s));
        orbit[n].assign(u.cells[n].size(), kNone);
        for (std::size_t k = 0; k < u.cells[n].size(); ++k) {
            const auto [i, c] = u.cells[n][k];
            bool fixed = true;
            for (Element a : h)
                fixed = fixed && spaces[i].action[a][c] == c;
            if (!fixed || orbit[n][k] != kNone)
                continue;
            for (Element a : z)
                orbit[n][u.offset[n][i] + spaces[i].action[a][c]] = count[n];
            ++count[n];
        }
    }
    std::vector<CyclicSum> groups;
    std::vector<IntMatrix> diffs;
    for (std::size_t n = 0; n < dims; ++n) {
        groups.push_back(CyclicSum::free(count[n]));
        if (n == 0)
            continue;
        const IntMatrix d = underlying_differential(x, u, n);
        IntMatrix q(count[n - 1], count[n]);
        std::vector<bool> seen(count[n], false);
        for (std::size_t k = 0; k < u.cells[n].size(); ++k) {
            if (orbit[n][k] == kNone || seen[orbit[n][k]])
                continue;
            seen[orbit[n][k]] = true;
            for (std::size_t f = 0; f < d.rows(); ++f) {
                if (sgn(d(f, k)) == 0)
                    continue;
                if (orbit[n - 1][f] == kNone)
                    throw InvariantError("centralizer_quotient_chains: a fixed cell has a non-fixed face");
                q(orbit[n - 1][f], orbit[n][k]) += d(f, k);
            }
        }
        diffs.push_back(std::move(q));
    }
    if (groups.empty())
        groups.push_back(CyclicSum::free(0));
    return PlainChainComplex(0, std::move(groups), std::move(diffs));
}

} // namespace orbifunctor
