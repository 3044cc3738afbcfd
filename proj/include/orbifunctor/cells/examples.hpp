#pragma once

#include "orbifunctor/cells/cw.hpp"
#include "orbifunctor/chain/complex.hpp"

namespace orbifunctor {

/// A single fixed point G/G.
GCWComplex gcw_point(const FinGroup& g);
/// A single free orbit G/1 in dimension 0.
GCWComplex gcw_free_orbit(const FinGroup& g);

/// S^n with Z/2 acting by reflection: the fixed equator S^{n−1} carries two
/// cells per dimension and the two hemispheres form one free n-cell.
/// n = 1 is the reflection circle.
GCWComplex z2_reflection_sphere(std::size_t n);
/// S^n with the antipodal Z/2 action: one free orbit cell per dimension.
GCWComplex z2_antipodal_sphere(std::size_t n);

/// Boundary of a triangle under S_3: vertices and edge midpoints are orbits
/// S_3/C_2, the six half-edges one free orbit.
GCWComplex s3_triangle();

/// Any GCWComplex for the trivial group from a plain cellular complex with
/// free abelian chain groups.
GCWComplex trivial_group_complex(const PlainChainComplex& c);

/// E_0(i, G/H) = Z[π_0 𝒢^G(G/H)], constant along the index leg.
BiFunctorComplex transport_components_bifunctor(CategoryPtr index, const OrbitCategory& oc);

/// E_n(i, G/H) = Z[N_n 𝒢^G(G/H)] for n ≤ length, constant along the index leg.
BiFunctorComplex transport_nerve_bifunctor(CategoryPtr index, const OrbitCategory& oc, std::size_t length);

/// For G of order 2: Z at both orbits, the swap of G/1 acting by −1 and
/// G/1 → G/G by 0. Functorial, but not factoring over Sub(G) on H_0.
BiFunctorComplex z2_sign_twist_bifunctor(CategoryPtr index, const OrbitCategory& oc);

} // namespace orbifunctor
