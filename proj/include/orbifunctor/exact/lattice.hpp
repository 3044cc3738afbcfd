#pragma once

#include <optional>
#include <span>
#include <vector>

#include "orbifunctor/exact/integer_matrix.hpp"

namespace orbifunctor {

/// A sublattice of Z^n held by its column Hermite basis, so membership and
/// coordinates are a forward substitution.
class Lattice {
public:
    Lattice() = default;
    /// Lattice spanned by the columns of `generators` (need not be independent).
    explicit Lattice(const IntMatrix& generators);

    static Lattice full(std::size_t n);

    std::size_t ambient_dimension() const { return basis_.rows(); }
    std::size_t rank() const { return basis_.cols(); }
    const IntMatrix& basis() const { return basis_; }

    /// Coefficients c with basis·c = x, or nullopt when x is not in the lattice.
    std::optional<IntVector> coordinates(std::span<const Integer> x) const;
    bool contains(std::span<const Integer> x) const { return coordinates(x).has_value(); }

private:
    IntMatrix basis_;
    std::vector<std::size_t> pivot_rows_;
};

/// Basis of {x ∈ Z^n : A x ∈ span(B)}; the columns of the result are independent.
IntMatrix preimage_basis(const IntMatrix& a, const IntMatrix& b);

} // namespace orbifunctor
