#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbifunctor/cells/cw.hpp"
#include "orbifunctor/chain/complex.hpp"
#include "orbifunctor/error.hpp"
#include "orbifunctor/fincat/standard.hpp"
#include "orbifunctor/verify/probes.hpp"
#include "orbifunctor/verify/theorem.hpp"

namespace orbifunctor {

/// Parse or validation failure, located by line (syntax) or field path.
class ManifestError : public InputError {
public:
    ManifestError(const std::string& where, const std::string& what)
        : InputError("manifest: " + where + ": " + what), where_(where)
    {
    }
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// Recipe sections keep their kind and parameters so they serialize back
/// as recipes; kind "explicit" serializes the resolved tables.
struct GroupSection {
    std::string kind = "explicit";  ///< trivial, cyclic, symmetric, dihedral, permutations, explicit
    std::size_t parameter = 0;
    std::vector<std::vector<std::size_t>> generators;  ///< for permutations
    FinGroup group;
};

struct FamilySection {
    std::string kind = "explicit";  ///< all, isotropy, explicit
    SubgroupFamily family;
};

struct CategorySection {
    std::string kind = "explicit";  ///< N, RF, point, explicit
    std::size_t truncation = 0;
    CategoryPtr category;
};

/// Modules live over the index category, the orbit category or the group.
struct ModuleEntry {
    std::string name;
    std::string over = "index";
    std::string kind = "explicit";  ///< constant, free, explicit
    std::vector<ObjectId> generators;  ///< for free
    CatModule module;
};

struct IcwSection {
    std::string kind = "explicit";  ///< classifying-model, explicit
    IndexKind index = IndexKind::RF;
    std::size_t truncation = 0;
    CatCWComplex cw;
};

struct GcwSection {
    /// point, free-orbit, reflection-sphere, antipodal-sphere, s3-triangle, explicit
    std::string kind = "explicit";
    std::size_t dimension = 0;
    GCWComplex complex;
};

struct BifunctorSection {
    std::string kind = "explicit";  ///< transport-components, transport-nerve, sign-twist, explicit
    std::size_t length = 0;
    BiFunctorComplex complex;
};

struct InstanceSection {
    int d = 0;
    int n = 0;
    int big_n = 0;
    FgMode assumption = FgMode::Strict;
    FgMode conclusion = FgMode::Strict;
    std::optional<int> e_valid_through;
};

struct TorProbeParams {
    long prime = 2;
    long m = 2;
    long n = 2;
};

struct SequencesSection {
    std::optional<GradedSeqSpec> interchange;
    std::optional<TorProbeParams> tor_probe;
    /// d(p) for p = 0, 1, ...; the last entry repeats.
    std::vector<Integer> annihilator;
};

struct Manifest {
    std::string version = "1";
    std::optional<GroupSection> group;
    std::optional<FamilySection> family;
    std::optional<CategorySection> category;
    std::vector<ModuleEntry> modules;
    std::optional<PlainChainComplex> complex;
    std::optional<IcwSection> icw;
    std::optional<GcwSection> gcw;
    std::optional<BifunctorSection> bifunctor;
    std::optional<InstanceSection> instance;
    std::optional<SequencesSection> sequences;

    /// Or(G, F) from group and family; present whenever a group is.
    std::optional<OrbitCategory> orbit;
    /// group_category(G); present whenever a group is.
    CategoryPtr group_category;
    /// The category section's category, or the classifying model's.
    CategoryPtr index_category;
    /// G from the group section or from a G-CW recipe.
    std::optional<FinGroup> effective_group;

    const ModuleEntry* find_module(const std::string& name) const;
    /// The theorem data; throws ManifestError when a needed section is missing.
    TheoremInstance theorem_instance() const;
};

inline constexpr const char* kManifestVersion = "1";

Manifest parse_manifest(const std::string& text);
/// Canonical text: fixed key order, two-space indent, trailing newline.
std::string serialize_manifest(const Manifest& m);

/// Structural equality of the resolved objects.
bool manifest_equal(const Manifest& a, const Manifest& b);

/// Runs each section's validator; every entry is (section, report).
std::vector<std::pair<std::string, ValidationReport>> validate_manifest(const Manifest& m);

} // namespace orbifunctor
