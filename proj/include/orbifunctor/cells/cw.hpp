#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbifunctor/chain/complex.hpp"
#include "orbifunctor/fincat/orbit.hpp"

namespace orbifunctor {

/// One term coef · α^*(face) of a cell boundary; α runs from the cell's
/// object to the face's object.
struct CellFace {
    Integer coefficient;
    std::size_t face = 0;
    MorphismId morphism = 0;
};

/// Contravariant I-CW complex given by chain-level cell data. cells[n][k] is
/// the object c of the free n-cell mor(?, c) × D^n.
struct CatCWComplex {
    CategoryPtr base;
    std::vector<std::vector<ObjectId>> cells;
    /// boundary[n][k] for n ≥ 1; boundary[0] is empty.
    std::vector<std::vector<std::vector<CellFace>>> boundary;
    /// Highest degree in which evaluations are faithful; unset when untruncated.
    std::optional<int> valid_through;

    int dimension() const { return static_cast<int>(cells.size()) - 1; }
    std::size_t num_cells(int n) const;
};

ValidationReport validate_cw(const CatCWComplex& x);

/// Degree-n module is free on the n-cells, with markers. Throws InputError
/// on malformed boundaries and InvariantError when d∘d ≠ 0.
CatChainComplex cellular_chain_complex(const CatCWComplex& x);

/// Face of an orbit cell: coef · (face orbit cell at the coset r·H_face).
/// The G-map G/H_cell → G/H_face, xH ↦ x r H_face, needs r⁻¹ H_cell r ⊆ H_face.
struct OrbitFace {
    Integer coefficient;
    std::size_t face = 0;
    Element representative = 0;
};

/// G-CW complex as orbit cells G/H with equivariant incidence data.
struct GCWComplex {
    FinGroup group;
    std::vector<std::vector<Subgroup>> cells;
    std::vector<std::vector<std::vector<OrbitFace>>> boundary;

    int dimension() const { return static_cast<int>(cells.size()) - 1; }
    std::size_t num_cells(int n) const;
};

ValidationReport validate_gcw(const GCWComplex& x);

/// Smallest family containing every isotropy group.
SubgroupFamily isotropy_family(const GCWComplex& x);
/// Number of conjugacy classes among isotropy groups.
std::size_t orbit_type_count(const GCWComplex& x);

/// Non-equivariant cells of X in dimension n: (orbit cell, coset index).
struct UnderlyingCells {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> cells;
    /// index[n][orbit cell] = position of its first coset
    std::vector<std::vector<std::size_t>> offset;
};

UnderlyingCells underlying_cells(const GCWComplex& x);

/// Cellular chains of X as a covariant module complex over the one-object
/// category of G (left Z[G]-modules); `base` must be group_category(X.group).
CatChainComplex underlying_chains(const GCWComplex& x, CategoryPtr base);

/// The same complex with the group action forgotten.
PlainChainComplex underlying_plain_chains(const GCWComplex& x);

/// X as an Or(G, F)-CW complex: the orbit cell G/H becomes the free cell mor(?, G/H).
CatCWComplex as_orbit_cw(const GCWComplex& x, const OrbitCategory& oc);

/// Cellular Z Or(G, F)-chain complex; at G/K it computes C_*(X^K).
/// Throws InputError when an isotropy group lies outside F.
CatChainComplex fixed_point_chains(const GCWComplex& x, const OrbitCategory& oc);

/// H_p(C_*(X) ⊗_{Or(G,F)} M) for M covariant over oc.
FpAbGroup bredon_homology(const GCWComplex& x, const OrbitCategory& oc, const CatModule& m, int p);
PlainChainComplex bredon_complex(const GCWComplex& x, const OrbitCategory& oc, const CatModule& m);

/// Cellular chains of Z_G H \ X^H, by orbit counting on the fixed cells.
/// Throws InputError when H is outside the isotropy family.
PlainChainComplex centralizer_quotient_chains(const GCWComplex& x, const Subgroup& h);

} // namespace orbifunctor
