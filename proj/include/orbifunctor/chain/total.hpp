#pragma once

#include <vector>

#include "orbifunctor/chain/complex.hpp"

namespace orbifunctor {

// Sign conventions:
//   tensor  d(x⊗y) = dx⊗y + (−1)^p x⊗dy          for x of degree p
//   hom     (dφ)_p = d_E∘φ_p − (−1)^n φ_{p−1}∘d_D  for φ of degree n

/// Total complex of C ⊗_I E. Degree n is ⊕_{p+q=n} C_p ⊗_I E_q; each
/// summand keeps its coequalizer presentation so elements can be traced.
struct TensorTotal {
    struct Block {
        int p = 0;
        int q = 0;
        TensorPresentation tp;
        std::size_t offset = 0;  ///< first canonical generator inside the degree group
    };
    PlainChainComplex complex;
    int lo = 0;
    /// blocks[n − lo]
    std::vector<std::vector<Block>> blocks;

    const Block* find(int n, int p) const;
};

/// C contravariant and E covariant over one base.
TensorTotal tensor_total(const CatChainComplex& c, const CatChainComplex& e);
PlainChainComplex tensor_complex_over_cat(const CatChainComplex& c, const CatChainComplex& e);

/// Total hom complex hom_I(D, E) for degreewise free D, evaluated by Yoneda:
/// a natural φ_p: D_p → E_{p+n} is the tuple of images of D_p's generators,
/// φ_p(gen j) ∈ E_{p+n}(c_j).
struct HomTotal {
    struct Block {
        int p = 0;
        std::size_t generator = 0;  ///< index into D_p's marker
        ObjectId object = 0;        ///< c_j
        std::size_t offset = 0;
        std::size_t size = 0;
    };
    PlainChainComplex complex;
    int lo = 0;
    std::vector<std::vector<Block>> blocks;  ///< blocks[n − lo]

    const Block* find(int n, int p, std::size_t generator) const;
};

/// D and E of equal variance over one base; D must carry free markers.
HomTotal hom_total(const CatChainComplex& d, const CatChainComplex& e);
PlainChainComplex hom_complex_over_cat(const CatChainComplex& d, const CatChainComplex& e);

/// t_*: C ⊗_J hom_I(D, E) → hom_I(D, C ⊗_J E), x⊗φ ↦ (y ↦ x⊗φ(y)).
struct Comparison {
    CatChainComplex hom_side;      ///< hom_I(D, E), covariant over J
    TensorTotal source;            ///< C ⊗_J hom_I(D, E)
    CatChainComplex tensor_side;   ///< C ⊗_J E, contravariant over I
    HomTotal target;               ///< hom_I(D, C ⊗_J E)
    ChainMap map;
};

Comparison comparison_map_t(const CatChainComplex& c, const CatChainComplex& d, const BiFunctorComplex& e);

} // namespace orbifunctor
