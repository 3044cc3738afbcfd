#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbifunctor/cells/cw.hpp"
#include "orbifunctor/chain/total.hpp"
#include "orbifunctor/fincat/orbit.hpp"

namespace orbifunctor {

enum class FgMode { Strict, Almost };

std::string to_string(FgMode m);
FgMode fg_mode_from_string(const std::string& s);

/// Data of the linear comparison theorem. D lives over `index`, C and the
/// coefficient leg of E over `orbit.category`; the pointers must agree.
struct TheoremInstance {
    CategoryPtr index;
    CatChainComplex d_complex;
    int d = 0;
    OrbitCategory orbit;
    /// When present, C is its fixed-point chain complex.
    std::optional<GCWComplex> space;
    CatChainComplex c_complex;
    BiFunctorComplex e;
    int n = 0;
    int big_n = 0;
    FgMode assumption = FgMode::Strict;
    FgMode conclusion = FgMode::Strict;
    /// Highest degree in which E is faithful; unset when E is exact as given.
    std::optional<int> e_valid_through;
};

/// Fills c_complex from space and checks that all bases line up.
void finalize_instance(TheoremInstance& inst);

struct HypothesisReport {
    FgMode mode = FgMode::Strict;
    std::vector<std::string> warnings;

    bool a_pass = true;
    /// (degree k, object c) with D_k(c) ≠ 0 and k outside [0, d]
    std::optional<std::pair<int, ObjectId>> a_witness;

    bool b_pass = true;
    /// (index object, orbit object, degree q) with H_q(E(c, G/H)) ≠ 0, q < N
    struct BWitness {
        ObjectId index_object = 0;
        ObjectId orbit_object = 0;
        int degree = 0;
        FpAbGroup homology;
    };
    std::optional<BWitness> b_witness;

    bool c_pass = true;
    std::size_t orbit_types = 0;

    /// Unset when no G-CW complex is given; then (D) is not checked.
    std::optional<bool> d_pass;
    /// d_homology[h][p] = H_p(Z_G H \ X^H) for family member h, 0 ≤ p ≤ n + d − N
    std::vector<std::vector<FpAbGroup>> d_homology;
    /// lcm of all torsion exponents in d_homology; reported in almost mode
    Integer annihilator = 1;

    bool pass() const { return a_pass && b_pass && c_pass && d_pass.value_or(true); }
};

HypothesisReport check_hypotheses(const TheoremInstance& inst);

enum class MapVerdict { Isomorphism, AlmostIsomorphism, Neither };

std::string to_string(MapVerdict v);

struct MapClassification {
    MapVerdict verdict = MapVerdict::Neither;
    FpAbGroup kernel;
    FpAbGroup cokernel;
    /// Set unless the verdict is Neither.
    std::optional<Integer> kernel_exponent;
    std::optional<Integer> cokernel_exponent;
};

MapClassification classify_map(const AbHom& f);

struct ComparisonReport {
    bool chain_map = false;
    struct Degree {
        int p = 0;
        FpAbGroup source;
        FpAbGroup target;
        MapClassification map;
    };
    std::vector<Degree> degrees;
    std::vector<std::string> notes;

    /// Every degree passes under `conclusion` (iso, or almost iso in almost mode).
    bool pass(FgMode conclusion) const;
};

/// H_p(t_*) for 0 ≤ p ≤ n. Throws TruncationError when E's faithful window
/// stops below n + d + 1.
ComparisonReport verify_comparison(const TheoremInstance& inst);

/// Pairs of Or(G, F) morphisms with the same image in Sub(G, F) must induce
/// the same map on H_q(E(i, ?)).
struct FactorizationReport {
    struct Violation {
        ObjectId index_object = 0;
        int degree = 0;
        MorphismId first = 0;
        MorphismId second = 0;
    };
    std::vector<Violation> violations;
    std::size_t pairs_checked = 0;

    bool pass() const { return violations.empty(); }
};

/// E's coefficient leg must be sp.orbit.category. Degrees above
/// valid_through are skipped: the top homology of a truncation is not
/// homotopy invariant.
FactorizationReport sub_factorization_check(const SubAndProjection& sp, const BiFunctorComplex& e,
                                            std::optional<int> valid_through = std::nullopt);

/// I = RF truncated at K = 3 with its two-dimensional model, G = Z/2 with all
/// subgroups, X the reflection circle, E = Z[π_0 of transport groupoids],
/// N = 0, n = 2.
TheoremInstance desk_instance();
/// Same index data with G = S_3, all subgroups and X = the S_3 triangle.
TheoremInstance s3_instance();

} // namespace orbifunctor
