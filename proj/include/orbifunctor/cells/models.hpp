#pragma once

#include <optional>
#include <vector>

#include "orbifunctor/cells/cw.hpp"
#include "orbifunctor/fincat/standard.hpp"

namespace orbifunctor {

/// Cell families of the truncated models; position in CatCWComplex::cells[n]
/// is given by the accessors below.
struct ClassifyingModel {
    IndexCategory index;
    CatCWComplex cw;

    /// N: 0-cell at n, 1-cell joining n and n+1.
    /// RF: Q_0(n); Q_1^h(n), Q_1^v(n) joining n and n+1; Q_2(n) reaching n+2.
    std::size_t q0(std::size_t n) const { return n; }
    std::size_t q1h(std::size_t n) const;
    std::size_t q1v(std::size_t n) const;
    std::size_t q2(std::size_t n) const { return n; }
};

/// Truncated models on objects 0..K. A cell at object n is kept iff every
/// object it reaches lies in the window. N has faithful evaluations through
/// degree K − 1, RF through K − 2.
ClassifyingModel classifying_model(IndexKind kind, std::size_t k);

struct ContractibilityReport {
    bool pass = true;
    int degree_bound = 0;
    /// homology[c][p] for p = 0..degree_bound
    std::vector<std::vector<FpAbGroup>> homology;
    /// First failing (object, degree).
    std::optional<std::pair<ObjectId, int>> witness;
};

/// H_0(X(c)) = Z and H_p(X(c)) = 0 for 1 ≤ p ≤ r at every object. Throws
/// TruncationError when r exceeds x.valid_through.
ContractibilityReport contractibility_check(const CatCWComplex& x, int r);

} // namespace orbifunctor
