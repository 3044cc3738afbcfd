#pragma once

#include <vector>

#include "orbifunctor/exact/integer_matrix.hpp"

namespace orbifunctor {

/// U·A·V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... | d_k.
struct SmithDecomposition {
    IntMatrix left;          ///< U (rows × rows); empty when not requested
    IntMatrix left_inverse;  ///< U⁻¹; empty when not requested
    IntMatrix diagonal;      ///< S
    IntMatrix right;         ///< V (cols × cols); empty when not requested
    std::vector<Integer> divisors;

    std::size_t rank() const { return divisors.size(); }
};

struct SmithOptions {
    bool left = true;
    bool left_inverse = false;
    bool right = true;
    /// Run the row/column sweeps with OpenMP. Results are identical either way.
    bool parallel = true;
};

/// Smith normal form with minimal-absolute-value pivoting.
///
/// The elimination sweeps below and to the right of each pivot are
/// data-parallel over rows (resp. columns) and run under OpenMP when
/// `options.parallel` is set and the matrix is large enough to benefit.
SmithDecomposition smith_normal_form(const IntMatrix& a, SmithOptions options = {});

/// Straightforward serial Smith normal form kept as a cross-check for the
/// kernel above: first-nonzero pivoting, Euclidean steps, always tracks U and V.
SmithDecomposition smith_normal_form_reference(const IntMatrix& a);

/// Column-style Hermite normal form of A: A·V = H with V unimodular, H in
/// column echelon form (pivot rows strictly increasing, positive pivots,
/// entries left of each pivot reduced into [0, pivot)).
struct ColumnEchelon {
    IntMatrix form;                      ///< H
    IntMatrix transform;                 ///< V; empty when not requested
    std::vector<std::size_t> pivot_rows; ///< pivot row of column k, k < rank

    std::size_t rank() const { return pivot_rows.size(); }
};

ColumnEchelon column_echelon(const IntMatrix& a, bool track_transform);

/// Columns form a Z-basis of {x : A x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

} // namespace orbifunctor
