#pragma once

#include <string>
#include <vector>

#include "orbifunctor/catmod/module.hpp"
#include "orbifunctor/chain/plain.hpp"

namespace orbifunctor {

/// Bounded chain complex of modules over one finite category, degrees [lo, hi].
/// differentials[k] is d_{lo+k+1}: modules[k+1] → modules[k].
struct CatChainComplex {
    CategoryPtr base;
    Variance variance = Variance::Contravariant;
    int lo = 0;
    std::vector<CatModule> modules;
    std::vector<ModuleMap> differentials;
    /// Either empty or one marker per degree; present iff degreewise free.
    std::vector<FreeMarker> markers;

    int hi() const { return lo + static_cast<int>(modules.size()) - 1; }
    bool in_range(int p) const { return p >= lo && p <= hi(); }
    bool has_markers() const { return !modules.empty() && markers.size() == modules.size(); }
    /// Zero module outside [lo, hi].
    CatModule module(int p) const;
    /// d_p: C_p → C_{p-1}; zero map when either side is out of range.
    ModuleMap differential(int p) const;
    const FreeMarker& marker(int p) const;

    /// The plain complex C_*(c).
    PlainChainComplex evaluate(ObjectId c) const;

    static CatChainComplex concentrated(const CatModule& m, int degree);
    static CatChainComplex concentrated(const FreeModule& f, int degree);
};

/// F_L → ... → F_0 in degrees [0, L], with markers; the augmentation is dropped.
CatChainComplex resolution_complex(const FreeResolution& r);

/// Each module and differential valid, d∘d = 0, markers consistent with modules.
ValidationReport validate_complex(const CatChainComplex& c);

/// Functor I^op × J → bounded chain complexes; contravariant in the index
/// leg I and covariant in the coefficient leg J. Storage is per degree
/// k = p − lo.
struct BiFunctorComplex {
    CategoryPtr index;
    CategoryPtr coefficient;
    int lo = 0;
    /// values[k][i][j] = E_{lo+k}(i, j)
    std::vector<std::vector<std::vector<CyclicSum>>> values;
    /// index_action[k][φ][j]: E(cod φ, j) → E(dom φ, j)
    std::vector<std::vector<std::vector<IntMatrix>>> index_action;
    /// coefficient_action[k][i][ψ]: E(i, dom ψ) → E(i, cod ψ)
    std::vector<std::vector<std::vector<IntMatrix>>> coefficient_action;
    /// differentials[k][i][j] = d_{lo+k+1}(i, j); one fewer degree than values.
    std::vector<std::vector<std::vector<IntMatrix>>> differentials;

    int hi() const { return lo + static_cast<int>(values.size()) - 1; }
    /// E(?, j) over I.
    CatChainComplex index_slice(ObjectId j) const;
    /// E(i, ?) over J.
    CatChainComplex coefficient_slice(ObjectId i) const;
    PlainChainComplex at(ObjectId i, ObjectId j) const;
};

/// Both legs functorial, differentials natural in both legs, legs commute.
ValidationReport validate_bifunctor(const BiFunctorComplex& e);

/// E(i, j) = c for all i, j with identity structure maps.
BiFunctorComplex constant_bifunctor(CategoryPtr index, CategoryPtr coefficient, const PlainChainComplex& c);

} // namespace orbifunctor
