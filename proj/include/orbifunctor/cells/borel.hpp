#pragma once

#include "orbifunctor/cells/cw.hpp"
#include "orbifunctor/chain/total.hpp"

namespace orbifunctor {

/// Homogeneous bar complex of G in degrees 0..K as right Z[G]-modules
/// (contravariant over group_category(G)). The n-simplices (g_0, ..., g_n)
/// are free on the tuples with g_0 = e.
struct BarResolution {
    CategoryPtr base;
    CatChainComplex complex;
    /// tuples[n][i] = (e, a_1, ..., a_n) for generator i in degree n
    std::vector<std::vector<std::vector<Element>>> tuples;
    std::size_t truncation = 0;
};

BarResolution bar_resolution_truncated(const FinGroup& g, std::size_t k, CategoryPtr base = nullptr);

/// H_*(BG) via bar ⊗_{Z[G]} Z; faithful in degrees ≤ K − 1.
PlainChainComplex bar_coinvariants(const BarResolution& bar);

struct BorelQuotient {
    PlainChainComplex borel;     ///< bar ⊗_{Z[G]} C_*(X)
    PlainChainComplex quotient;  ///< Z ⊗_{Z[G]} C_*(X)
    ChainMap projection;         ///< augmentation ⊗ id
    /// Highest degree in which borel computes H_*(EG ×_G X): K − 1 − dim X.
    int valid_through = 0;
};

BorelQuotient borel_and_quotient(const GCWComplex& x, std::size_t k);

/// H_p(pr_X); throws TruncationError beyond valid_through.
AbHom borel_projection_on_homology(const BorelQuotient& bq, int p);

} // namespace orbifunctor
