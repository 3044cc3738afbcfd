#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbifunctor/cells/borel.hpp"

namespace orbifunctor {

/// Nondecreasing integer sequence: an explicit prefix, then a tail.
/// BoundedBy(D): constant D after the prefix. Unbounded: continues the
/// prefix in steps of +1.
struct IntSequence {
    enum class Tail { BoundedBy, Unbounded };
    std::vector<long> prefix;
    Tail tail = Tail::BoundedBy;
    long bound = 0;

    long at(std::size_t i) const;
};

struct GradedSeqSpec {
    IntSequence m;
    IntSequence n;
    /// Nonzero values of π; every other degree is 0.
    std::map<long, FpAbGroup> profile;
    /// π_q = 0 for q < lower_bound.
    long lower_bound = 0;
    long p = 0;
};

/// Throws InputError on decreasing prefixes, tails below the prefix, or a
/// profile entry below its stated lower bound.
void validate_spec(const GradedSeqSpec& spec);

struct InterchangeReport {
    /// ∃ i_0 ∀ i ≥ i_0 ∀ j: π_{n_j − m_i + p} = 0
    bool surjective = false;
    /// Least valid i_0 when surjective.
    std::optional<std::size_t> i0;
    /// When not surjective: for i past the prefix, a j with a nonzero entry.
    std::function<std::size_t(std::size_t)> witness_column;
    std::string reason;

    struct Window {
        std::size_t rows = 0;
        std::size_t cols = 0;
        FpAbGroup source;
        FpAbGroup target;
        bool injective = false;
        bool isomorphism = false;
        /// 1 + largest row i with a nonzero entry, 0 if none.
        std::size_t rows_needed = 0;
        /// The finite window agrees with the symbolic verdict.
        bool consistent = false;
    };
    std::vector<Window> windows;
};

/// Symbolic verdict, then every window I, J ≤ max_window materialized.
InterchangeReport interchange_criterion(const GradedSeqSpec& spec, std::size_t max_window = 6);

/// Divergent m, bounded n, π bounded below: surjective.
GradedSeqSpec interchange_divergent_bounded();
/// Constant m with one nonzero degree hit infinitely often: not surjective.
GradedSeqSpec interchange_constant_m();
/// Divergent m and divergent n: not surjective.
GradedSeqSpec interchange_divergent_unbounded();

inline constexpr long kTorProbeBound = 12;

struct TorProbeReport {
    long prime = 0;
    long m_bound = 0;
    long n_bound = 0;
    FpAbGroup source;  ///< ⊕_{m ≤ M} ∏_{n ≤ N} Z/p^{min(m, n)}
    FpAbGroup target;  ///< ∏_{n ≤ N} ⊕_{m ≤ M} Z/p^{min(m, n)}
    bool finite_isomorphism = false;
    Integer delta_order;        ///< order of δ_N
    bool delta_in_image = false;  ///< δ_N lies in the image of the m ≤ M block
    Integer max_reachable_order;  ///< largest order of an n = N component from the m ≤ M block
};

/// Throws InputError unless p is prime and 2 ≤ M, N ≤ kTorProbeBound.
TorProbeReport tor_interchange_probe(long p, long m, long n);

struct BorelCheckReport {
    std::size_t truncation = 0;
    int valid_through = 0;
    struct Degree {
        int p = 0;
        FpAbGroup borel;
        FpAbGroup quotient;
        FpAbGroup kernel;
        FpAbGroup cokernel;
        Integer annihilator;
        bool annihilated = false;
    };
    std::vector<Degree> degrees;

    bool pass() const;
};

/// Degrees 0..valid_through. Default annihilator d(p) = |G|^(p+1).
BorelCheckReport borel_vs_quotient_check(const GCWComplex& x, std::size_t k,
                                         std::function<Integer(int)> annihilator = {});

} // namespace orbifunctor
