#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "orbifunctor/exact/abelian_group.hpp"
#include "orbifunctor/fincat/category.hpp"

namespace orbifunctor {

enum class Variance { Covariant, Contravariant };

const char* to_string(Variance v);
Variance opposite(Variance v);

/// Functor from a finite category to finitely presented abelian groups.
///
/// values[c] lists cyclic generators of M(c). action[φ] is the matrix of
/// M(φ) on those generators: for φ: c → d it is ng(d) × ng(c) when
/// covariant and ng(c) × ng(d) when contravariant.
struct CatModule {
    CategoryPtr base;
    Variance variance = Variance::Covariant;
    std::vector<CyclicSum> values;
    std::vector<IntMatrix> action;

    const CyclicSum& value(ObjectId c) const { return values[c]; }
    /// Object whose value M(φ) reads from.
    ObjectId action_source(MorphismId m) const;
    /// Object whose value M(φ) writes to.
    ObjectId action_target(MorphismId m) const;
    /// Canonical form of M(c).
    FpAbGroup canonical_value(ObjectId c) const { return values[c].canonical(); }
    std::size_t total_generators() const;

    static CatModule zero(CategoryPtr base, Variance v);
    /// Constant module with value A and identity actions.
    static CatModule constant(CategoryPtr base, Variance v, const CyclicSum& a);
};

/// Natural transformation; components[c] is ng(N(c)) × ng(M(c)).
struct ModuleMap {
    CatModule source;
    CatModule target;
    std::vector<IntMatrix> components;

    static ModuleMap identity(const CatModule& m);
    static ModuleMap scalar(const CatModule& m, const Integer& k);
};

ValidationReport validate_module(const CatModule& m);
ValidationReport validate_module_map(const ModuleMap& f);

/// Components g∘f, reduced in the target of g.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);

/// Distinguished basis of a free module ⊕_i Z[mor(?, c_i)] (contravariant)
/// or ⊕_i Z[mor(c_i, ?)] (covariant). Basis element k of the value at d is
/// (generator i, morphism α) with α: d → c_i, resp. α: c_i → d.
struct FreeMarker {
    Variance variance = Variance::Contravariant;
    std::vector<ObjectId> generators;
    std::vector<std::vector<std::pair<std::size_t, MorphismId>>> basis;

    /// Index of (generator, morphism) in the value at d; kNone if absent.
    std::size_t index_of(ObjectId d, std::size_t generator, MorphismId alpha) const;
    /// Basis index of generator i's Yoneda element (i, id) in the value at c_i.
    std::size_t generator_index(const FinCategory& c, std::size_t i) const;
};

struct FreeModule {
    CatModule module;
    FreeMarker marker;
};

FreeModule free_module(CategoryPtr base, const std::vector<ObjectId>& generators, Variance v);

/// The map F → N sending generator i to images[i] ∈ N(c_i) (Yoneda).
ModuleMap free_map(const FreeModule& f, const CatModule& target, const std::vector<IntVector>& images);

/// Objectwise direct sum (= finite product) of modules on one base.
CatModule direct_sum(const std::vector<CatModule>& parts);

/// Coequalizer presentation of M ⊗_I N; the witness ambient coordinate of
/// (c, x, y) is offset[c] + x·ng(N(c)) + y.
struct TensorPresentation {
    FpAbGroup group;
    std::vector<std::size_t> offset;
    std::size_t index(const CatModule& n, ObjectId c, std::size_t x, std::size_t y) const
    {
        return offset[c] + x * n.values[c].size() + y;
    }
};

TensorPresentation tensor_presentation(const CatModule& contra, const CatModule& co);
FpAbGroup tensor_over_cat(const CatModule& contra, const CatModule& co);

/// Equalizer presentation of hom_I(M, N); the witness ambient coordinate of
/// entry (i, j) of the component at c is offset[c] + i·ng(M(c)) + j.
struct HomPresentation {
    FpAbGroup group;
    std::vector<std::size_t> offset;
    /// Components of the natural transformation represented by ambient entries.
    std::vector<IntMatrix> components(const CatModule& m, const CatModule& n, std::span<const Integer> ambient) const;
};

HomPresentation hom_presentation(const CatModule& m, const CatModule& n);
FpAbGroup hom_over_cat(const CatModule& m, const CatModule& n);

/// c ↦ Hom(N(c), A), of the opposite variance, with canonical values.
CatModule hom_into(const CatModule& n, const CyclicSum& a);

struct KernelCokernelModules {
    CatModule kernel;
    CatModule cokernel;
    CatModule image;
    ModuleMap kernel_inclusion;    ///< kernel → source
    ModuleMap cokernel_projection; ///< target → cokernel
};

KernelCokernelModules map_kernel_cokernel(const ModuleMap& f);

/// F*M = M∘F for M over F.target.
CatModule restrict_along(const CatFunctor& f, const CatModule& m);
/// Left Kan extension F_*M for M over F.source, objectwise a coend.
CatModule induce_along(const CatFunctor& f, const CatModule& m);

/// Per-object elements generating M; greedy, so later objects only add what
/// earlier generators miss.
std::vector<std::pair<ObjectId, IntVector>> generating_set(const CatModule& m);

struct FiniteGeneration {
    bool verdict = true;
    std::vector<std::pair<ObjectId, IntVector>> generators;
    FreeModule free;
    ModuleMap surjection;
};

FiniteGeneration is_finitely_generated(const CatModule& m);

/// F_L → ... → F_0 → M → 0 with free F_i; differentials[i] is F_{i+1} → F_i.
struct FreeResolution {
    std::vector<FreeModule> modules;
    std::vector<ModuleMap> differentials;
    ModuleMap augmentation;
    bool exact = false;
};

FreeResolution free_resolution(const CatModule& m, std::size_t length);

enum class TorSide { ResolveContravariant, ResolveCovariant };

/// Tor_p over the category; resolves the contravariant argument unless told otherwise.
FpAbGroup tor(const CatModule& contra, const CatModule& co, std::size_t p,
              TorSide side = TorSide::ResolveContravariant);

struct InterchangeResult {
    AbHom map;  ///< F ⊗ ∏M_i → ∏(F ⊗ M_i)
    bool verdict = false;
};

InterchangeResult finite_product_interchange(const FreeModule& f, const std::vector<CatModule>& family);

} // namespace orbifunctor
