#include "orbifunctor/exact/lattice.hpp"

#include <numeric>

#include "orbifunctor/error.hpp"
#include "orbifunctor/exact/smith.hpp"

namespace orbifunctor {

Lattice::Lattice(const IntMatrix& generators)
{
    ColumnEchelon ce = column_echelon(generators, false);
    std::vector<std::size_t> cols(ce.rank());
    std::iota(cols.begin(), cols.end(), 0);
    basis_ = ce.form.select_cols(cols);
    pivot_rows_ = std::move(ce.pivot_rows);
}

Lattice Lattice::full(std::size_t n)
{
    Lattice l;
    l.basis_ = IntMatrix::identity(n);
    l.pivot_rows_.resize(n);
    std::iota(l.pivot_rows_.begin(), l.pivot_rows_.end(), 0);
    return l;
}

std::optional<IntVector> Lattice::coordinates(std::span<const Integer> x) const
{
    if (x.size() != basis_.rows())
        throw InputError("Lattice::coordinates: ambient dimension mismatch");
    IntVector residual(x.begin(), x.end());
    IntVector coeffs(rank());
    for (std::size_t k = 0; k < rank(); ++k) {
        const std::size_t p = pivot_rows_[k];
        if (sgn(residual[p]) == 0)
            continue;
        if (!mpz_divisible_p(residual[p].get_mpz_t(), basis_(p, k).get_mpz_t()))
            return std::nullopt;
        Integer c = residual[p] / basis_(p, k);
        for (std::size_t r = p; r < basis_.rows(); ++r)
            if (sgn(basis_(r, k)) != 0)
                residual[r] -= c * basis_(r, k);
        coeffs[k] = std::move(c);
    }
    if (!is_zero_vector(residual))
        return std::nullopt;
    return coeffs;
}

IntMatrix preimage_basis(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows())
        throw InputError("preimage_basis: row mismatch");
    // Reduce B to an independent basis so the projection of ker[A | B] is injective.
    Lattice target(b);
    IntMatrix joint = IntMatrix::hstack(a, target.basis());
    IntMatrix ker = kernel_basis(joint);
    return ker.block(0, 0, a.cols(), ker.cols());
}

} // namespace orbifunctor
