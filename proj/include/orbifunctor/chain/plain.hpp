#pragma once

#include <string>
#include <vector>

#include "orbifunctor/exact/abelian_group.hpp"

namespace orbifunctor {

/// Bounded chain complex of finitely presented abelian groups in degrees
/// [lo, hi]. differential(p): C_p → C_{p-1}. Outside the range every group
/// is zero.
class PlainChainComplex {
public:
    PlainChainComplex() = default;
    /// groups[k] sits in degree lo + k; differentials[k] is d_{lo+k+1}.
    PlainChainComplex(int lo, std::vector<CyclicSum> groups, std::vector<IntMatrix> differentials);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(groups_.size()) - 1; }
    bool empty() const { return groups_.empty(); }
    CyclicSum group(int p) const;
    IntMatrix differential(int p) const;

    /// d∘d ≡ 0 and every d respects relations; message names the first bad degree.
    bool is_valid(std::string* why = nullptr) const;

private:
    int lo_ = 0;
    std::vector<CyclicSum> groups_;
    std::vector<IntMatrix> differentials_;
};

/// H_p = ker d_p / im d_{p+1}, witnessed in the coordinates of C_p.
/// Throws InputError when d_p∘d_{p+1} ≠ 0.
FpAbGroup homology(const PlainChainComplex& c, int p);

struct ChainMap {
    PlainChainComplex source;
    PlainChainComplex target;
    int lo = 0;
    /// components[k] acts in degree lo + k; absent degrees are zero.
    std::vector<IntMatrix> components;

    IntMatrix component(int p) const;
};

/// d∘f ≡ f∘d in every degree, modulo the target's relations.
bool is_chain_map(const ChainMap& f, std::string* why = nullptr);

/// Throws InputError when f is not a chain map.
AbHom induced_map_on_homology(const ChainMap& f, int p);

int euler_characteristic_ranks(const PlainChainComplex& c);
int euler_characteristic_homology(const PlainChainComplex& c);

} // namespace orbifunctor
