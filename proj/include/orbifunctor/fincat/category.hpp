#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace orbifunctor {

using ObjectId = std::size_t;
using MorphismId = std::size_t;

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Morphism {
    ObjectId dom = 0;
    ObjectId cod = 0;
    std::string name;
};

/// Finite category with explicit object, morphism and composition tables.
///
/// compose(g, f) is g∘f and is defined when cod f = dom g. The constructor
/// only checks table shapes; validate_category checks the axioms.
class FinCategory {
public:
    FinCategory() = default;
    FinCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                std::vector<MorphismId> identities, std::vector<MorphismId> composition);

    /// Fills the composition table by calling rule(g, f) on composable pairs.
    static FinCategory from_rule(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                                 std::vector<MorphismId> identities,
                                 const std::function<MorphismId(MorphismId, MorphismId)>& rule);

    std::size_t num_objects() const { return objects_.size(); }
    std::size_t num_morphisms() const { return morphisms_.size(); }
    const std::string& object_name(ObjectId c) const { return objects_[c]; }
    const std::vector<std::string>& object_names() const { return objects_; }
    std::optional<ObjectId> find_object(const std::string& name) const;
    const Morphism& morphism(MorphismId m) const { return morphisms_[m]; }
    const std::vector<Morphism>& morphisms() const { return morphisms_; }
    ObjectId dom(MorphismId m) const { return morphisms_[m].dom; }
    ObjectId cod(MorphismId m) const { return morphisms_[m].cod; }
    MorphismId identity(ObjectId c) const { return identities_[c]; }
    bool is_identity(MorphismId m) const { return identities_[dom(m)] == m; }
    /// g∘f; throws InputError when not composable.
    MorphismId compose(MorphismId g, MorphismId f) const;
    /// Raw table entry, kNone when undefined.
    MorphismId composition_entry(MorphismId g, MorphismId f) const { return composition_[g * num_morphisms() + f]; }
    /// Morphisms a → b in increasing id order.
    const std::vector<MorphismId>& hom(ObjectId a, ObjectId b) const { return hom_[a * num_objects() + b]; }

private:
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<MorphismId> identities_;
    std::vector<MorphismId> composition_;
    std::vector<std::vector<MorphismId>> hom_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

struct ValidationReport {
    bool ok = true;
    std::string message;
    /// Offending ids (morphisms or objects) for the first violation.
    std::vector<std::size_t> witness;
};

/// Checks dom/cod of composites, identities and associativity on all
/// composable triples; reports the first violation.
ValidationReport validate_category(const FinCategory& c);

struct CatFunctor {
    CategoryPtr source;
    CategoryPtr target;
    std::vector<ObjectId> object_map;
    std::vector<MorphismId> morphism_map;
};

ValidationReport validate_functor(const CatFunctor& f);

/// One object, one morphism per group element; g∘f is the product g·f.
class FinGroup;
FinCategory group_category(const FinGroup& g);

} // namespace orbifunctor
