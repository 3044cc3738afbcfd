#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbifunctor/exact/integer_matrix.hpp"
#include "orbifunctor/exact/lattice.hpp"

namespace orbifunctor {

class FpAbGroup;

/// Z/o_1 ⊕ ... ⊕ Z/o_k with o_i = 0 meaning Z, in no particular order.
///
/// This is the working representation for module values and chain groups:
/// direct sums are concatenation, and a homomorphism is an integer matrix on
/// the listed generators. Order 1 generators are legal and trivial.
class CyclicSum {
public:
    CyclicSum() = default;
    explicit CyclicSum(std::vector<Integer> orders);

    static CyclicSum free(std::size_t rank);
    static CyclicSum cyclic(const Integer& order);

    std::size_t size() const { return orders_.size(); }
    const Integer& order(std::size_t i) const { return orders_[i]; }
    const std::vector<Integer>& orders() const { return orders_; }

    /// size() × (#generators with order ≠ 0) matrix with the orders on the diagonal.
    IntMatrix relations() const;

    /// Reduce coordinates into [0, o_i) on the finite generators.
    IntVector reduce(std::span<const Integer> x) const;
    /// Row-wise reduction of a matrix whose rows index our generators.
    IntMatrix reduce_rows(const IntMatrix& m) const;

    /// True when m·(relations of source) ≡ 0 in this group, i.e. m is a
    /// well-defined homomorphism source → *this.
    bool admits(const IntMatrix& m, const CyclicSum& source) const;

    CyclicSum operator+(const CyclicSum& other) const;  // direct sum
    bool operator==(const CyclicSum& other) const { return orders_ == other.orders_; }

    /// Canonical form with a witness whose ambient coordinates are our generators.
    FpAbGroup canonical() const;

private:
    std::vector<Integer> orders_;
};

/// Transport data between canonical generators and the presentation a group
/// was computed from ("ambient" coordinates).
struct BasisWitness {
    std::size_t ambient_dimension = 0;
    /// Subgroup of Z^ambient the quotient was taken in; nullopt means all of it.
    std::optional<Lattice> subgroup;
    /// Maps lattice coordinates (or ambient ones when subgroup is empty) to
    /// unreduced canonical coordinates.
    IntMatrix to_canonical;
    /// Column i is an ambient representative of canonical generator i.
    IntMatrix generators;
};

/// Finitely presented abelian group in canonical form Z/t_1 ⊕ ... ⊕ Z/t_k ⊕ Z^r,
/// t_i ≥ 2, t_i | t_{i+1}. Canonical generators list the torsion factors
/// first, then the free ones. Equality compares only rank and torsion.
class FpAbGroup {
public:
    FpAbGroup() = default;
    FpAbGroup(std::size_t rank, std::vector<Integer> torsion);

    static FpAbGroup free(std::size_t rank) { return FpAbGroup(rank, {}); }
    static FpAbGroup cyclic(const Integer& order);

    std::size_t rank() const { return rank_; }
    const std::vector<Integer>& torsion() const { return torsion_; }
    std::size_t num_generators() const { return torsion_.size() + rank_; }
    /// 0 for a free generator.
    Integer generator_order(std::size_t i) const;

    bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }
    bool is_finite() const { return rank_ == 0; }
    /// Group order; throws when infinite.
    Integer order() const;
    /// lcm of the torsion invariants, 1 when there are none.
    Integer exponent() const;

    IntVector reduce(std::span<const Integer> coords) const;
    /// Additive order of an element (0 for infinite order).
    Integer element_order(std::span<const Integer> coords) const;

    CyclicSum as_cyclic_sum() const;
    /// Diagonal relation matrix on the canonical generators.
    IntMatrix relations() const { return as_cyclic_sum().relations(); }

    bool has_witness() const { return witness_ != nullptr; }
    const BasisWitness& witness() const;
    void set_witness(std::shared_ptr<const BasisWitness> w) { witness_ = std::move(w); }
    /// Canonical coordinates of an ambient element; nullopt when it does not lie in the subgroup.
    std::optional<IntVector> try_coordinates_of(std::span<const Integer> ambient) const;
    IntVector coordinates_of(std::span<const Integer> ambient) const;
    IntVector representative(std::size_t generator) const;

    /// "0", "Z", "Z^2 ⊕ Z/2 ⊕ Z/4".
    std::string to_string() const;

    bool operator==(const FpAbGroup& other) const
    {
        return rank_ == other.rank_ && torsion_ == other.torsion_;
    }

private:
    std::size_t rank_ = 0;
    std::vector<Integer> torsion_;
    std::shared_ptr<const BasisWitness> witness_;
};

/// Homomorphism between canonical groups; `matrix` acts on canonical coordinates.
struct AbHom {
    FpAbGroup source;
    FpAbGroup target;
    IntMatrix matrix;

    static AbHom identity(const FpAbGroup& g);
    static AbHom scalar(const FpAbGroup& g, const Integer& k);
    static AbHom zero(const FpAbGroup& source, const FpAbGroup& target);

    /// Checks the matrix shape and that relations map to relations.
    bool is_well_defined() const;
    IntVector apply(std::span<const Integer> x) const;
};

/// this ∘ f
AbHom compose(const AbHom& g, const AbHom& f);
bool operator==(const AbHom& a, const AbHom& b);

/// The homomorphism src → tgt induced by a linear map between their ambient
/// coordinate spaces (tgt.ambient × src.ambient). Throws InvariantError when a
/// generator lands outside tgt's subgroup.
AbHom induced_hom(const FpAbGroup& src, const FpAbGroup& tgt, const IntMatrix& ambient_map);

/// Z^rows / (column span of A), with a witness in Z^rows.
FpAbGroup cokernel_presentation(const IntMatrix& relations);

/// span(generators) / span(relations) inside Z^n; relations must lie in span(generators).
FpAbGroup subquotient(const IntMatrix& generators, const IntMatrix& relations);

/// Canonical direct sum; witness ambient is the concatenated canonical coordinates.
FpAbGroup direct_sum(const std::vector<FpAbGroup>& parts);

FpAbGroup hom_group(const FpAbGroup& a, const FpAbGroup& b);
FpAbGroup tensor_group(const FpAbGroup& a, const FpAbGroup& b);

/// Hom(A, B) for cyclic sums, witnessed in the coordinates of the
/// ng(B) × ng(A) matrix entries, row-major.
FpAbGroup hom_group(const CyclicSum& a, const CyclicSum& b);
/// A ⊗ B for cyclic sums, witnessed in the coordinates e_i ⊗ f_j at i·ng(B) + j.
FpAbGroup tensor_group(const CyclicSum& a, const CyclicSum& b);

struct GroupInvariants {
    std::size_t rank = 0;
    Integer exponent = 1;
    bool almost_trivial = true;
};

GroupInvariants group_invariants(const FpAbGroup& a);

/// Kernel, image and cokernel of a matrix map between cyclic sums.
/// Kernel witness lives in source coordinates, image and cokernel in target ones.
FpAbGroup kernel_group(const IntMatrix& f, const CyclicSum& source, const CyclicSum& target);
FpAbGroup image_group(const IntMatrix& f, const CyclicSum& source, const CyclicSum& target);
FpAbGroup cokernel_group(const IntMatrix& f, const CyclicSum& source, const CyclicSum& target);

struct KernelCokernel {
    FpAbGroup kernel;
    FpAbGroup cokernel;
    FpAbGroup image;
};

KernelCokernel hom_kernel_cokernel(const AbHom& f);

struct AlmostIsoVerdict {
    bool verdict = false;
    std::optional<Integer> kernel_exponent;
    std::optional<Integer> cokernel_exponent;
};

/// Kernel and cokernel both finite. Exponents are reported only on a positive verdict.
AlmostIsoVerdict is_almost_isomorphism(const AbHom& f);
bool is_isomorphism(const AbHom& f);

struct Membership {
    bool member = false;
    IntVector preimage;  ///< source coordinates when member
    IntVector residue;   ///< canonical cokernel coordinates of y when not
};

Membership solve_image_membership(const AbHom& f, std::span<const Integer> y);

} // namespace orbifunctor
