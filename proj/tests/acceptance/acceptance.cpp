// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every check is exact; the only tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/support.hpp"
#include "orbifunctor/cells/borel.hpp"
#include "orbifunctor/cells/examples.hpp"
#include "orbifunctor/cells/models.hpp"
#include "orbifunctor/exact/smith.hpp"
#include "orbifunctor/verify/probes.hpp"
#include "orbifunctor/verify/theorem.hpp"

using namespace orbifunctor;
using namespace orbifunctor::testing;

namespace {

constexpr double kSnfSeconds = 5.0;
constexpr double kYonedaSeconds = 30.0;
constexpr double kTheoremSeconds = 60.0;
constexpr double kModelSeconds = 10.0;
/// Criteria without a pinned limit still get a generous ceiling.
constexpr double kDefaultSeconds = 120.0;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    /// Records the first failing check; later ones are counted only.
    void expect(bool ok, const std::string& what)
    {
        if (ok)
            return;
        if (pass)
            detail << "first failure: " << what << "; ";
        pass = false;
        ++failures;
    }
    int failures = 0;
};

struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<void(Outcome&)> body;
};

Subgroup whole(const FinGroup& g)
{
    Subgroup h(g.order());
    std::iota(h.begin(), h.end(), Element{0});
    return h;
}

// ------------------------------------------------------------------ 1

void snf_suite(Outcome& o)
{
    std::mt19937_64 rng(20241);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    std::uniform_int_distribution<long> entry(-20, 20);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        IntMatrix a(dim(rng), dim(rng));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                a(i, j) = entry(rng);
        const SmithDecomposition s = smith_normal_form(a);
        const std::string tag = "matrix " + std::to_string(t);
        o.expect(s.left * a * s.right == s.diagonal, tag + ": U·A·V ≠ S");
        o.expect(abs(s.left.determinant()) == 1, tag + ": |det U| ≠ 1");
        o.expect(abs(s.right.determinant()) == 1, tag + ": |det V| ≠ 1");
        bool chain = true;
        for (std::size_t i = 0; i < s.diagonal.rows(); ++i)
            for (std::size_t j = 0; j < s.diagonal.cols(); ++j) {
                const Integer expect = (i == j && i < s.rank()) ? s.divisors[i] : Integer(0);
                chain = chain && s.diagonal(i, j) == expect;
            }
        for (std::size_t i = 0; i < s.rank(); ++i) {
            chain = chain && s.divisors[i] >= 1;
            if (i > 0)
                chain = chain && mpz_divisible_p(s.divisors[i].get_mpz_t(), s.divisors[i - 1].get_mpz_t());
        }
        o.expect(chain, tag + ": not a divisor chain");
        // Independent check on square matrices: |det A| is the product of the divisors.
        if (a.rows() == a.cols()) {
            Integer prod = s.rank() == a.rows() ? 1 : 0;
            for (const auto& d : s.divisors)
                prod *= d;
            o.expect(abs(a.determinant()) == prod, tag + ": |det A| ≠ ∏ d_i");
        }
        ++checked;
    }
    o.detail << checked << " matrices";
}

// ------------------------------------------------------------------ 2

void structure_identities(Outcome& o)
{
    int pairs = 0;
    for (long a = 2; a <= 12; ++a)
        for (long b = 2; b <= 12; ++b) {
            const long g = std::gcd(a, b);
            // Oracle: count homomorphisms 1 ↦ x with a·x ≡ 0 mod b.
            long homs = 0;
            for (long x = 0; x < b; ++x)
                homs += (a * x) % b == 0;
            o.expect(homs == g, "enumeration oracle");
            const std::string tag = "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
            o.expect(hom_group(FpAbGroup::cyclic(a), FpAbGroup::cyclic(b)) == FpAbGroup::cyclic(g), "Hom " + tag);
            o.expect(tensor_group(FpAbGroup::cyclic(a), FpAbGroup::cyclic(b)) == FpAbGroup::cyclic(g), "⊗ " + tag);
            // The same identities through the module machinery over the point.
            const CategoryPtr pt = share(group_category(FinGroup::trivial()));
            const CatModule ma = CatModule::constant(pt, Variance::Contravariant, CyclicSum::cyclic(a));
            const CatModule mb = CatModule::constant(pt, Variance::Covariant, CyclicSum::cyclic(b));
            const CatModule mb_contra = CatModule::constant(pt, Variance::Contravariant, CyclicSum::cyclic(b));
            o.expect(tensor_over_cat(ma, mb) == FpAbGroup::cyclic(g), "⊗ over the point " + tag);
            o.expect(hom_over_cat(ma, mb_contra) == FpAbGroup::cyclic(g), "hom over the point " + tag);
            ++pairs;
        }
    o.detail << pairs << " pairs";
}

// ------------------------------------------------------------------ 3

void yoneda_adjunction(Outcome& o)
{
    std::mt19937 rng(3101);
    const std::vector<CyclicSum> coefficients{CyclicSum({0}), CyclicSum({2}), CyclicSum({6})};
    int instances = 0;
    int round = 0;
    while (instances < 240) {
        for (const auto& [name, base] : category_zoo()) {
            if (base->num_objects() > 4)
                continue;
            const CatModule mc = random_module(rng, base, Variance::Contravariant);
            const CatModule mv = random_module(rng, base, Variance::Covariant);
            for (ObjectId c = 0; c < base->num_objects(); ++c) {
                const FreeModule fc = free_module(base, {c}, Variance::Contravariant);
                const FreeModule fv = free_module(base, {c}, Variance::Covariant);
                const std::string tag = name + " round " + std::to_string(round) + " object " + std::to_string(c);
                o.expect(hom_over_cat(fc.module, mc) == mc.canonical_value(c), "Yoneda contravariant " + tag);
                o.expect(hom_over_cat(fv.module, mv) == mv.canonical_value(c), "Yoneda covariant " + tag);
                o.expect(tensor_over_cat(fc.module, mv) == mv.canonical_value(c), "co-Yoneda left " + tag);
                o.expect(tensor_over_cat(mc, fv.module) == mc.canonical_value(c), "co-Yoneda right " + tag);
            }
            const CyclicSum& a = coefficients[static_cast<std::size_t>(instances) % coefficients.size()];
            o.expect(hom_group(tensor_over_cat(mc, mv), a.canonical()) == hom_over_cat(mc, hom_into(mv, a)),
                     "adjunction over " + name);
            ++instances;
        }
        ++round;
    }
    o.detail << instances << " instances";
}

// ------------------------------------------------------------------ 4

void product_interchange(Outcome& o)
{
    std::mt19937 rng(4101);
    const FinGroup s3 = FinGroup::symmetric(3);
    const SubAndProjection sp = sub_category_and_projection(s3, all_subgroups(s3));
    const CategoryPtr sub = sp.sub.category;
    std::uniform_int_distribution<std::size_t> obj(0, sub->num_objects() - 1), count(1, 3), family(1, 4);
    for (int t = 0; t < 100; ++t) {
        std::vector<ObjectId> gens(count(rng));
        for (auto& g : gens)
            g = obj(rng);
        const FreeModule f = free_module(sub, gens, Variance::Contravariant);
        std::vector<CatModule> fam;
        for (std::size_t k = family(rng); k > 0; --k)
            fam.push_back(random_module(rng, sub, Variance::Covariant));
        const InterchangeResult r = finite_product_interchange(f, fam);
        o.expect(r.verdict, "instance " + std::to_string(t));
        // Oracle: F ⊗ ∏N_k and ∏(F ⊗ N_k) have the same canonical form.
        std::vector<FpAbGroup> parts;
        for (const auto& n : fam)
            parts.push_back(tensor_over_cat(f.module, n));
        o.expect(tensor_over_cat(f.module, direct_sum(fam)) == direct_sum(parts),
                 "canonical forms, instance " + std::to_string(t));
    }
    o.detail << "100 free modules over Sub(S3)";
}

// ------------------------------------------------------------------ 5

void theorem_instances(Outcome& o)
{
    const std::vector<std::pair<std::string, TheoremInstance>> instances{{"Z/2 reflection circle", desk_instance()},
                                                                          {"S3 triangle", s3_instance()}};
    for (const auto& [name, inst] : instances) {
        const HypothesisReport h = check_hypotheses(inst);
        o.expect(h.pass(), name + ": hypotheses");
        o.expect(inst.d == 2, name + ": d");
        o.expect(inst.n == 2, name + ": n");
        const ComparisonReport c = verify_comparison(inst);
        o.expect(c.chain_map, name + ": chain map");
        o.expect(c.degrees.size() == 3, name + ": degrees 0..n");
        for (const auto& d : c.degrees)
            o.expect(d.map.verdict == MapVerdict::Isomorphism, name + ": H_" + std::to_string(d.p) + "(t_*)");
        // Oracle: both sides compute Bredon homology with constant Z coefficients.
        const CatModule z = CatModule::constant(inst.orbit.category, Variance::Covariant, CyclicSum::free(1));
        for (const auto& d : c.degrees)
            o.expect(d.source == bredon_homology(*inst.space, inst.orbit, z, d.p),
                     name + ": Bredon oracle in degree " + std::to_string(d.p));
        const SubAndProjection sp = sub_category_and_projection(inst.orbit.group, inst.orbit.family);
        BiFunctorComplex e = inst.e;
        e.coefficient = sp.orbit.category;
        o.expect(sub_factorization_check(sp, e).pass(), name + ": factorization over Sub(G)");
    }
    o.detail << "Z/2 and S3, H_0..H_2 iso";
}

// ------------------------------------------------------------------ 6

void defects(Outcome& o)
{
    {
        ClassifyingModel model = classifying_model(IndexKind::RF, 3);
        model.cw.cells.push_back({2});
        model.cw.boundary.push_back({{}});
        TheoremInstance inst = desk_instance();
        inst.d_complex = cellular_chain_complex(model.cw);
        inst.index = inst.d_complex.base;
        const HypothesisReport h = check_hypotheses(inst);
        o.expect(!h.a_pass && h.a_witness && h.a_witness->first == inst.d + 1, "degree d+1 cell in D");
    }
    {
        TheoremInstance inst = desk_instance();
        inst.big_n = 1;
        const HypothesisReport h = check_hypotheses(inst);
        o.expect(!h.b_pass && h.b_witness && h.b_witness->degree == inst.big_n - 1 &&
                     !h.b_witness->homology.is_trivial(),
                 "nonzero H_{N-1} in E");
    }
    {
        const FinGroup g = FinGroup::cyclic(2);
        const SubAndProjection sp = sub_category_and_projection(g, all_subgroups(g));
        const CategoryPtr index = share(group_category(FinGroup::trivial()));
        const FactorizationReport r = sub_factorization_check(sp, z2_sign_twist_bifunctor(index, sp.orbit));
        bool witnessed = !r.pass();
        if (witnessed) {
            const auto& v = r.violations.front();
            witnessed = v.first != v.second && sp.pr.morphism_map[v.first] == sp.pr.morphism_map[v.second];
        }
        o.expect(witnessed, "pr-factorization twist");
    }
    o.detail << "3 defects detected with witnesses";
}

// ------------------------------------------------------------------ 7

void interchange(Outcome& o)
{
    const struct {
        const char* name;
        GradedSeqSpec spec;
        bool surjective;
    } specs[] = {{"divergent m, bounded n", interchange_divergent_bounded(), true},
                 {"constant m", interchange_constant_m(), false},
                 {"divergent m, unbounded n", interchange_divergent_unbounded(), false}};
    std::size_t windows = 0;
    for (const auto& s : specs) {
        const InterchangeReport r = interchange_criterion(s.spec, 6);
        o.expect(r.surjective == s.surjective, std::string(s.name) + ": verdict");
        for (const auto& w : r.windows) {
            o.expect(w.injective, std::string(s.name) + ": window not injective");
            o.expect(w.consistent, std::string(s.name) + ": window inconsistent");
        }
        windows += r.windows.size();
        o.expect(r.windows.size() == 36, std::string(s.name) + ": windows I, J ≤ 6");
    }
    o.detail << windows << " windows";
}

// ------------------------------------------------------------------ 8

void tor_probe(Outcome& o)
{
    // The probe needs M, N ≥ 2; N = 1 has no m < N block to separate.
    int cases = 0;
    for (long n = 2; n <= 8; ++n)
        for (long m = 2; m <= 8; ++m) {
            const TorProbeReport r = tor_interchange_probe(2, m, n);
            const std::string tag = "M = " + std::to_string(m) + ", N = " + std::to_string(n);
            o.expect(r.delta_order == Integer(1) << static_cast<mp_bitcnt_t>(n), tag + ": order(δ_N)");
            o.expect(r.delta_in_image == (m >= n), tag + ": membership");
            o.expect(r.finite_isomorphism, tag + ": finite interchange");
            ++cases;
        }
    o.detail << cases << " (M, N) pairs, p = 2";
}

// ------------------------------------------------------------------ 9

void borel(Outcome& o)
{
    const BorelCheckReport r = borel_vs_quotient_check(gcw_point(FinGroup::cyclic(2)), 6, [](int) { return Integer(2); });
    o.expect(r.valid_through >= 4, "valid range reaches degree 4");
    for (const auto& d : r.degrees) {
        if (d.p > 4)
            continue;
        const std::string tag = "point, p = " + std::to_string(d.p);
        o.expect(d.kernel == (d.p % 2 == 1 ? FpAbGroup::cyclic(2) : FpAbGroup()), tag + ": kernel");
        o.expect(d.cokernel.is_trivial(), tag + ": cokernel");
        o.expect(d.annihilated, tag + ": annihilated by 2");
    }
    // Oracle: H_p(BZ/2) from the bar coinvariants.
    const PlainChainComplex bz2 = bar_coinvariants(bar_resolution_truncated(FinGroup::cyclic(2), 6));
    for (int p = 1; p <= 4; ++p)
        o.expect(homology(bz2, p) == r.degrees[static_cast<std::size_t>(p)].kernel, "bar oracle");

    const BorelCheckReport f = borel_vs_quotient_check(gcw_free_orbit(FinGroup::cyclic(2)), 6);
    for (const auto& d : f.degrees) {
        o.expect(d.kernel.is_trivial(), "free action kernel, p = " + std::to_string(d.p));
        o.expect(d.cokernel.is_trivial(), "free action cokernel, p = " + std::to_string(d.p));
    }
    o.detail << "point K = 6 through degree 4, free orbit";
}

// ------------------------------------------------------------------ 10

void models(Outcome& o)
{
    const ClassifyingModel en = classifying_model(IndexKind::N, 6);
    for (int r = 0; r <= *en.cw.valid_through; ++r)
        o.expect(contractibility_check(en.cw, r).pass, "EN through degree " + std::to_string(r));
    const ClassifyingModel rf = classifying_model(IndexKind::RF, 4);
    for (int r = 0; r <= *rf.cw.valid_through; ++r)
        o.expect(contractibility_check(rf.cw, r).pass, "ERF through degree " + std::to_string(r));
    o.expect(rf.cw.dimension() == 2, "ERF dimension");
    o.expect(rf.cw.num_cells(2) > 0, "ERF has 2-cells");
    o.detail << "EN valid through " << *en.cw.valid_through << ", ERF through " << *rf.cw.valid_through
             << ", dim ERF = " << rf.cw.dimension();
}

// ------------------------------------------------------------------ 11

void bredon(Outcome& o)
{
    std::mt19937 rng(1101);
    for (const FinGroup& g : {FinGroup::cyclic(2), FinGroup::cyclic(4), FinGroup::symmetric(3)}) {
        const OrbitCategory oc = orbit_category(g, all_subgroups(g));
        for (int t = 0; t < 4; ++t) {
            const CatModule m = random_module(rng, oc.category, Variance::Covariant);
            o.expect(bredon_homology(gcw_point(g), oc, m, 0) == m.canonical_value(oc.object_of(whole(g))),
                     "point: H_0 = M(G/G)");
        }
    }
    // Trivial group: RP^2 cell structure Z ←0− Z ←2− Z.
    const PlainChainComplex rp2(0, {CyclicSum::free(1), CyclicSum::free(1), CyclicSum::free(1)},
                                {IntMatrix{{0}}, IntMatrix{{2}}});
    const GCWComplex x = trivial_group_complex(rp2);
    const OrbitCategory triv = orbit_category(x.group, all_subgroups(x.group));
    const CatModule z = CatModule::constant(triv.category, Variance::Covariant, CyclicSum::free(1));
    for (int p = 0; p <= 2; ++p)
        o.expect(bredon_homology(x, triv, z, p) == homology(rp2, p), "trivial group reduction");

    const GCWComplex circle = z2_reflection_sphere(1);
    const OrbitCategory oc = orbit_category(circle.group, all_subgroups(circle.group));
    const CatModule cz = CatModule::constant(oc.category, Variance::Covariant, CyclicSum::free(1));
    o.expect(bredon_homology(circle, oc, cz, 0) == FpAbGroup::free(1), "reflection circle H_0 = Z");
    o.expect(bredon_homology(circle, oc, cz, 1).is_trivial(), "reflection circle H_1 = 0");
    o.detail << "point, trivial group, reflection circle";
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "SNF suite", kSnfSeconds, snf_suite},
        {2, "Hom and tensor of cyclic groups", kDefaultSeconds, structure_identities},
        {3, "Yoneda, co-Yoneda and adjunction", kYonedaSeconds, yoneda_adjunction},
        {4, "finite product interchange over Sub(S3)", kDefaultSeconds, product_interchange},
        {5, "comparison theorem desk instances", kTheoremSeconds, theorem_instances},
        {6, "hypothesis-violation sensitivity", kDefaultSeconds, defects},
        {7, "interchange criterion", kDefaultSeconds, interchange},
        {8, "Tor interchange probe", kDefaultSeconds, tor_probe},
        {9, "Borel versus quotient", kDefaultSeconds, borel},
        {10, "classifying models", kModelSeconds, models},
        {11, "Bredon homology oracles", kDefaultSeconds, bredon},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.limit;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s [%2d] %s: %s (%.2f s, limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.str().c_str(), seconds, c.limit, in_time ? "" : " over time");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
