#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace orbifunctor {

using Element = std::size_t;

/// Largest group order accepted by the exhaustive subgroup analysis.
inline constexpr std::size_t kGroupOrderBound = 64;

/// Finite group on elements 0..n-1 given by its multiplication table.
/// Element 0 need not be the identity; identity() finds it.
class FinGroup {
public:
    FinGroup() : FinGroup(trivial()) {}
    /// Validates the group axioms; throws InputError on failure.
    explicit FinGroup(std::vector<std::vector<Element>> table, std::vector<std::string> names = {});

    /// Closure of the given permutations (of 0..degree-1) under composition.
    /// Product g·h means "apply h, then g".
    static FinGroup from_permutations(const std::vector<std::vector<std::size_t>>& generators);
    static FinGroup trivial();
    static FinGroup cyclic(std::size_t n);
    static FinGroup symmetric(std::size_t n);
    static FinGroup dihedral(std::size_t n);  ///< order 2n

    std::size_t order() const { return table_.size(); }
    Element mul(Element a, Element b) const { return table_[a][b]; }
    Element inv(Element a) const { return inverse_[a]; }
    Element identity() const { return identity_; }
    Element conjugate(Element g, Element h) const { return mul(mul(g, h), inv(g)); }  ///< g h g⁻¹
    const std::string& name(Element a) const { return names_[a]; }
    const std::vector<std::vector<Element>>& table() const { return table_; }
    /// Permutation degree when built from permutations, 0 otherwise.
    const std::vector<std::vector<std::size_t>>& permutations() const { return perms_; }

private:
    std::vector<std::vector<Element>> table_;
    std::vector<Element> inverse_;
    Element identity_ = 0;
    std::vector<std::string> names_;
    std::vector<std::vector<std::size_t>> perms_;
};

/// Sorted list of elements.
using Subgroup = std::vector<Element>;

Subgroup generated_subgroup(const FinGroup& g, const std::vector<Element>& generators);
Subgroup conjugate_subgroup(const FinGroup& g, const Subgroup& h, Element x);  ///< x H x⁻¹
bool is_subset(const Subgroup& a, const Subgroup& b);
bool is_subgroup(const FinGroup& g, const Subgroup& h);
Subgroup centralizer(const FinGroup& g, const Subgroup& h);
Subgroup normalizer(const FinGroup& g, const Subgroup& h);

struct GroupAnalysis {
    std::vector<Subgroup> subgroups;                ///< sorted by (order, elements)
    std::vector<std::size_t> conjugacy_class;       ///< class index per subgroup
    std::vector<std::vector<std::size_t>> classes;  ///< subgroup indices per class
    std::vector<Subgroup> centralizers;
    std::vector<Subgroup> normalizers;

    /// Index of a subgroup in `subgroups`; throws InputError if absent.
    std::size_t index_of(const Subgroup& h) const;
};

/// Exhaustive analysis; throws InputError when |G| > kGroupOrderBound.
GroupAnalysis group_analysis(const FinGroup& g);

/// Set of subgroups closed under conjugation and passing to subgroups.
struct SubgroupFamily {
    std::vector<Subgroup> members;  ///< sorted by (order, elements)

    bool contains(const Subgroup& h) const;
    std::size_t index_of(const Subgroup& h) const;
    std::size_t size() const { return members.size(); }
};

/// Smallest family containing the seeds.
SubgroupFamily family_closure(const FinGroup& g, const std::vector<Subgroup>& seeds);
SubgroupFamily all_subgroups(const FinGroup& g);
/// Fails with a witness message when the members are not a family.
bool is_family(const FinGroup& g, const SubgroupFamily& f, std::string* why = nullptr);

/// Left cosets xH as sorted element lists, ordered by their least element.
std::vector<Subgroup> left_cosets(const FinGroup& g, const Subgroup& h);

std::string subgroup_name(const FinGroup& g, const Subgroup& h);

} // namespace orbifunctor
