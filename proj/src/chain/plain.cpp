#include "orbifunctor/chain/plain.hpp"

#include "orbifunctor/error.hpp"
#include "orbifunctor/exact/lattice.hpp"

namespace orbifunctor {

PlainChainComplex::PlainChainComplex(int lo, std::vector<CyclicSum> groups, std::vector<IntMatrix> differentials)
    : lo_(lo), groups_(std::move(groups)), differentials_(std::move(differentials))
{
    const std::size_t want = groups_.empty() ? 0 : groups_.size() - 1;
    if (differentials_.size() != want)
        throw InputError("PlainChainComplex: need one differential between consecutive degrees");
    for (std::size_t k = 0; k < differentials_.size(); ++k)
        if (differentials_[k].rows() != groups_[k].size() || differentials_[k].cols() != groups_[k + 1].size())
            throw InputError("PlainChainComplex: differential d_" + std::to_string(lo_ + static_cast<int>(k) + 1) +
                             " has the wrong shape");
}

CyclicSum PlainChainComplex::group(int p) const
{
    if (p < lo() || p > hi())
        return {};
    return groups_[static_cast<std::size_t>(p - lo_)];
}

IntMatrix PlainChainComplex::differential(int p) const
{
    if (p <= lo() || p > hi())
        return IntMatrix(group(p - 1).size(), group(p).size());
    return differentials_[static_cast<std::size_t>(p - lo_ - 1)];
}

bool PlainChainComplex::is_valid(std::string* why) const
{
    for (int p = lo() + 1; p <= hi(); ++p) {
        if (!group(p - 1).admits(differential(p), group(p))) {
            if (why)
                *why = "d_" + std::to_string(p) + " does not respect relations";
            return false;
        }
    }
    for (int p = lo() + 2; p <= hi(); ++p) {
        if (!group(p - 2).reduce_rows(differential(p - 1) * differential(p)).is_zero()) {
            if (why)
                *why = "d_" + std::to_string(p - 1) + "∘d_" + std::to_string(p) + " ≠ 0";
            return false;
        }
    }
    return true;
}

FpAbGroup homology(const PlainChainComplex& c, int p)
{
    const CyclicSum cp = c.group(p);
    const IntMatrix dp = c.differential(p);
    const IntMatrix dp1 = c.differential(p + 1);
    if (!c.group(p - 1).reduce_rows(dp * dp1).is_zero())
        throw InputError("homology: d_" + std::to_string(p) + "∘d_" + std::to_string(p + 1) + " ≠ 0");
    IntMatrix cycles = preimage_basis(dp, c.group(p - 1).relations());
    IntMatrix boundaries = IntMatrix::hstack(dp1, cp.relations());
    return subquotient(cycles, boundaries);
}

IntMatrix ChainMap::component(int p) const
{
    const int k = p - lo;
    if (k < 0 || k >= static_cast<int>(components.size()))
        return IntMatrix(target.group(p).size(), source.group(p).size());
    return components[static_cast<std::size_t>(k)];
}

bool is_chain_map(const ChainMap& f, std::string* why)
{
    const int lo = std::min(f.source.lo(), f.target.lo());
    const int hi = std::max(f.source.hi(), f.target.hi());
    for (int p = lo; p <= hi; ++p) {
        const IntMatrix fp = f.component(p);
        if (fp.rows() != f.target.group(p).size() || fp.cols() != f.source.group(p).size()) {
            if (why)
                *why = "component in degree " + std::to_string(p) + " has the wrong shape";
            return false;
        }
        if (!f.target.group(p).admits(fp, f.source.group(p))) {
            if (why)
                *why = "component in degree " + std::to_string(p) + " does not respect relations";
            return false;
        }
        IntMatrix lhs = f.target.differential(p) * fp;
        IntMatrix rhs = f.component(p - 1) * f.source.differential(p);
        if (!f.target.group(p - 1).reduce_rows(lhs - rhs).is_zero()) {
            if (why)
                *why = "d∘f ≠ f∘d in degree " + std::to_string(p);
            return false;
        }
    }
    return true;
}

AbHom induced_map_on_homology(const ChainMap& f, int p)
{
    std::string why;
    if (!is_chain_map(f, &why))
        throw InputError("induced_map_on_homology: not a chain map: " + why);
    return induced_hom(homology(f.source, p), homology(f.target, p), f.component(p));
}

int euler_characteristic_ranks(const PlainChainComplex& c)
{
    int chi = 0;
    for (int p = c.lo(); p <= c.hi(); ++p) {
        int r = 0;
        const CyclicSum g = c.group(p);
        for (const auto& o : g.orders())
            r += sgn(o) == 0;
        chi += (p % 2 == 0 ? 1 : -1) * r;
    }
    return chi;
}

int euler_characteristic_homology(const PlainChainComplex& c)
{
    int chi = 0;
    for (int p = c.lo(); p <= c.hi(); ++p)
        chi += (p % 2 == 0 ? 1 : -1) * static_cast<int>(homology(c, p).rank());
    return chi;
}

} // namespace orbifunctor
