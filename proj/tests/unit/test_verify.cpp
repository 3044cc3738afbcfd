#include <catch_amalgamated.hpp>

#include <random>

#include "orbifunctor/cells/examples.hpp"
#include "orbifunctor/cells/models.hpp"
#include "orbifunctor/error.hpp"
#include "orbifunctor/verify/probes.hpp"
#include "orbifunctor/verify/theorem.hpp"
#include "support.hpp"

using namespace orbifunctor;
using namespace orbifunctor::testing;

namespace {

/// Chains of X/G: one generator per orbit cell, faces summed without the group.
PlainChainComplex orbit_space_chains(const GCWComplex& x)
{
    std::vector<CyclicSum> groups;
    std::vector<IntMatrix> ds;
    for (std::size_t n = 0; n < x.cells.size(); ++n) {
        groups.push_back(CyclicSum::free(x.cells[n].size()));
        if (n == 0)
            continue;
        IntMatrix d(x.cells[n - 1].size(), x.cells[n].size());
        for (std::size_t k = 0; k < x.cells[n].size(); ++k)
            for (const auto& f : x.boundary[n][k])
                d(f.face, k) += f.coefficient;
        ds.push_back(std::move(d));
    }
    return PlainChainComplex(0, std::move(groups), std::move(ds));
}

TheoremInstance point_instance()
{
    TheoremInstance inst;
    inst.index = share(group_category(FinGroup::trivial()));
    inst.d_complex = CatChainComplex::concentrated(free_module(inst.index, {0}, Variance::Contravariant), 0);
    inst.d = 0;
    const FinGroup g = FinGroup::trivial();
    inst.orbit = orbit_category(g, all_subgroups(g));
    inst.space = gcw_point(g);
    inst.e = constant_bifunctor(inst.index, inst.orbit.category, PlainChainComplex(0, {CyclicSum::free(1)}, {}));
    inst.n = 3;
    finalize_instance(inst);
    return inst;
}

/// I = N truncated at 1, G = Z/2 acting on the reflection circle, E the
/// transport nerve of the given length.
TheoremInstance nerve_instance(std::size_t length)
{
    const ClassifyingModel model = classifying_model(IndexKind::N, 1);
    TheoremInstance inst;
    inst.index = model.index.category;
    inst.d_complex = cellular_chain_complex(model.cw);
    inst.d = 1;
    const FinGroup g = FinGroup::cyclic(2);
    inst.orbit = orbit_category(g, all_subgroups(g));
    inst.space = z2_reflection_sphere(1);
    inst.e = transport_nerve_bifunctor(inst.index, inst.orbit, length);
    inst.e_valid_through = static_cast<int>(length) - 1;
    inst.n = 1;
    finalize_instance(inst);
    return inst;
}

/// ∃ i0 ≤ 60 ∀ i ∈ [i0, 200] ∀ j ≤ 400: π_{n_j − m_i + p} = 0, by enumeration.
bool surjective_by_enumeration(const GradedSeqSpec& s)
{
    auto nonzero = [&](std::size_t i, std::size_t j) {
        auto it = s.profile.find(s.n.at(j) - s.m.at(i) + s.p);
        return it != s.profile.end() && !it->second.is_trivial();
    };
    for (std::size_t i0 = 0; i0 <= 60; ++i0) {
        bool ok = true;
        for (std::size_t i = i0; i <= 200 && ok; ++i)
            for (std::size_t j = 0; j <= 400 && ok; ++j)
                ok = !nonzero(i, j);
        if (ok)
            return true;
    }
    return false;
}

IntSequence random_sequence(std::mt19937& rng)
{
    std::uniform_int_distribution<int> len(0, 3), step(0, 2), coin(0, 1);
    IntSequence s;
    long v = step(rng);
    for (int k = len(rng); k > 0; --k) {
        s.prefix.push_back(v);
        v += step(rng);
    }
    s.tail = coin(rng) ? IntSequence::Tail::Unbounded : IntSequence::Tail::BoundedBy;
    s.bound = v;
    return s;
}

} // namespace

TEST_CASE("maps are classified by kernel and cokernel", "[verify]")
{
    const FpAbGroup z = FpAbGroup::free(1);
    CHECK(classify_map(AbHom::identity(z)).verdict == MapVerdict::Isomorphism);
    const MapClassification twice = classify_map(AbHom::scalar(z, 2));
    CHECK(twice.verdict == MapVerdict::AlmostIsomorphism);
    CHECK(twice.cokernel == FpAbGroup::cyclic(2));
    CHECK(*twice.cokernel_exponent == 2);
    const MapClassification zero = classify_map(AbHom::zero(z, z));
    CHECK(zero.verdict == MapVerdict::Neither);
    CHECK(zero.kernel == z);
    CHECK_FALSE(zero.kernel_exponent);
    const FpAbGroup z6 = FpAbGroup::cyclic(6);
    CHECK(classify_map(AbHom::zero(z6, z6)).verdict == MapVerdict::AlmostIsomorphism);

    ComparisonReport r;
    r.chain_map = true;
    r.degrees.push_back({0, z, z, twice});
    CHECK_FALSE(r.pass(FgMode::Strict));
    CHECK(r.pass(FgMode::Almost));
    r.degrees.push_back({1, z, z, zero});
    CHECK_FALSE(r.pass(FgMode::Almost));
}

TEST_CASE("trivial index and group give an isomorphism in every degree", "[verify]")
{
    const TheoremInstance inst = point_instance();
    const HypothesisReport h = check_hypotheses(inst);
    CHECK(h.pass());
    CHECK(h.orbit_types == 1);
    const ComparisonReport r = verify_comparison(inst);
    CHECK(r.chain_map);
    REQUIRE(r.degrees.size() == 4);
    for (const auto& deg : r.degrees) {
        CHECK(deg.map.verdict == MapVerdict::Isomorphism);
        CHECK(deg.source == (deg.p == 0 ? FpAbGroup::free(1) : FpAbGroup()));
    }
}

TEST_CASE("desk instances satisfy the hypotheses and the conclusion", "[verify]")
{
    for (const TheoremInstance& inst : {desk_instance(), s3_instance()}) {
        const HypothesisReport h = check_hypotheses(inst);
        CHECK(h.a_pass);
        CHECK(h.b_pass);
        CHECK(h.c_pass);
        CHECK(h.d_pass.value_or(false));
        CHECK(h.pass());
        CHECK(h.d_homology.size() == inst.orbit.family.size());
        for (const auto& row : h.d_homology)
            CHECK(static_cast<int>(row.size()) == inst.n + inst.d - inst.big_n + 1);

        const ComparisonReport r = verify_comparison(inst);
        CHECK(r.chain_map);
        CHECK(r.pass(FgMode::Strict));
        REQUIRE(r.degrees.size() == 3);
        // Both sides compute Bredon homology with coefficients π_0 = Z, i.e. H_*(X/G).
        const PlainChainComplex quotient = orbit_space_chains(*inst.space);
        for (const auto& deg : r.degrees) {
            CHECK(deg.map.verdict == MapVerdict::Isomorphism);
            CHECK(deg.source == homology(quotient, deg.p));
            CHECK(deg.target == homology(quotient, deg.p));
        }
    }
}

TEST_CASE("the desk centralizer quotients", "[verify]")
{
    const TheoremInstance inst = desk_instance();
    const HypothesisReport h = check_hypotheses(inst);
    const std::size_t triv = inst.orbit.object_of({inst.orbit.group.identity()}), all = 1 - triv;
    // X/G is an interval; X^G is two points with trivial centralizer action.
    CHECK(h.d_homology[triv][0] == FpAbGroup::free(1));
    CHECK(h.d_homology[triv][1].is_trivial());
    CHECK(h.d_homology[all][0] == FpAbGroup::free(2));
    CHECK(h.d_homology[all][1].is_trivial());
    CHECK(h.annihilator == 1);
    CHECK(h.orbit_types == 2);
}

TEST_CASE("a padded D violates the degree bound with a witness", "[verify]")
{
    ClassifyingModel model = classifying_model(IndexKind::RF, 3);
    model.cw.cells.push_back({2});
    model.cw.boundary.push_back({{}});
    TheoremInstance inst = desk_instance();
    inst.d_complex = cellular_chain_complex(model.cw);
    inst.index = inst.d_complex.base;
    const HypothesisReport h = check_hypotheses(inst);
    CHECK_FALSE(h.a_pass);
    REQUIRE(h.a_witness);
    CHECK(h.a_witness->first == 3);
    CHECK(h.a_witness->second == 0);
    CHECK(h.b_pass);
}

TEST_CASE("nonvanishing homology below N is caught with a witness", "[verify]")
{
    TheoremInstance inst = desk_instance();
    inst.big_n = 1;
    const HypothesisReport h = check_hypotheses(inst);
    CHECK_FALSE(h.b_pass);
    REQUIRE(h.b_witness);
    CHECK(h.b_witness->index_object == 0);
    CHECK(h.b_witness->orbit_object == 0);
    CHECK(h.b_witness->degree == 0);
    CHECK(h.b_witness->homology == FpAbGroup::free(1));
    CHECK(h.d_homology.front().size() == 4);
}

TEST_CASE("mixed modes warn but still run", "[verify]")
{
    TheoremInstance inst = desk_instance();
    inst.conclusion = FgMode::Almost;
    const HypothesisReport h = check_hypotheses(inst);
    CHECK(h.pass());
    CHECK(h.mode == FgMode::Almost);
    CHECK(h.warnings.size() == 2);
    CHECK(h.warnings.front().find("mixed") != std::string::npos);
    CHECK(verify_comparison(inst).pass(FgMode::Almost));
    CHECK(fg_mode_from_string("almost") == FgMode::Almost);
    CHECK_THROWS_AS(fg_mode_from_string("loose"), InputError);
}

TEST_CASE("verdicts are stable as E's window grows", "[verify]")
{
    CHECK_THROWS_AS(verify_comparison(nerve_instance(2)), TruncationError);
    const ComparisonReport small = verify_comparison(nerve_instance(4));
    const ComparisonReport large = verify_comparison(nerve_instance(5));
    REQUIRE(small.degrees.size() == large.degrees.size());
    for (std::size_t k = 0; k < small.degrees.size(); ++k) {
        CHECK(small.degrees[k].map.verdict == large.degrees[k].map.verdict);
        CHECK(small.degrees[k].source == large.degrees[k].source);
        CHECK(small.degrees[k].map.verdict == MapVerdict::Isomorphism);
    }
    // The nerve has H_0 = Z everywhere, so N = 1 fails and N = 0 holds.
    TheoremInstance inst = nerve_instance(4);
    CHECK(check_hypotheses(inst).pass());
    inst.big_n = 1;
    CHECK_FALSE(check_hypotheses(inst).b_pass);
}

TEST_CASE("instances with mismatched bases are rejected", "[verify]")
{
    TheoremInstance inst = desk_instance();
    inst.index = standard_category(IndexKind::RF, 3).category;
    CHECK_THROWS_AS(finalize_instance(inst), InputError);
    inst = desk_instance();
    inst.d_complex.markers.clear();
    CHECK_THROWS_AS(finalize_instance(inst), InputError);
}

TEST_CASE("transport groupoid coefficients factor over Sub(G)", "[verify]")
{
    for (const FinGroup& g : {FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::symmetric(3)}) {
        const SubAndProjection sp = sub_category_and_projection(g, all_subgroups(g));
        const CategoryPtr index = standard_category(IndexKind::N, 1).category;
        const FactorizationReport comp = sub_factorization_check(sp, transport_components_bifunctor(index, sp.orbit));
        CHECK(comp.pass());
        CHECK(comp.pairs_checked > 0);
        const int length = g.order() > 3 ? 2 : 3;
        const BiFunctorComplex e = transport_nerve_bifunctor(index, sp.orbit, length);
        CHECK(sub_factorization_check(sp, e, length - 1).pass());
    }
}

TEST_CASE("a morphism-dependent twist breaks the factorization", "[verify]")
{
    const FinGroup g = FinGroup::cyclic(2);
    const SubAndProjection sp = sub_category_and_projection(g, all_subgroups(g));
    const CategoryPtr index = share(group_category(FinGroup::trivial()));
    const FactorizationReport r = sub_factorization_check(sp, z2_sign_twist_bifunctor(index, sp.orbit));
    REQUIRE_FALSE(r.pass());
    const FinCategory& J = *sp.orbit.category;
    const auto& v = r.violations.front();
    CHECK(v.degree == 0);
    CHECK(J.dom(v.first) == J.dom(v.second));
    CHECK(J.cod(v.first) == J.cod(v.second));
    CHECK(sp.orbit.subgroup(J.dom(v.first)).size() == 1);
    CHECK(sp.pr.morphism_map[v.first] == sp.pr.morphism_map[v.second]);
}

TEST_CASE("the trivial group factors vacuously", "[verify]")
{
    const FinGroup g = FinGroup::trivial();
    const SubAndProjection sp = sub_category_and_projection(g, all_subgroups(g));
    const FactorizationReport r =
        sub_factorization_check(sp, transport_nerve_bifunctor(standard_category(IndexKind::RF, 2).category, sp.orbit, 2));
    CHECK(r.pass());
    CHECK(r.pairs_checked == 0);
}

TEST_CASE("canonical interchange specs", "[verify]")
{
    const InterchangeReport a = interchange_criterion(interchange_divergent_bounded());
    CHECK(a.surjective);
    CHECK(*a.i0 == 3);
    const InterchangeReport b = interchange_criterion(interchange_constant_m());
    CHECK_FALSE(b.surjective);
    CHECK(b.witness_column(100) == 0);
    const InterchangeReport c = interchange_criterion(interchange_divergent_unbounded());
    CHECK_FALSE(c.surjective);
    CHECK(c.witness_column(7) == 7);
    for (const auto* r : {&a, &b, &c}) {
        CHECK(r->windows.size() == 36);
        for (const auto& w : r->windows) {
            CHECK(w.injective);
            CHECK(w.isomorphism);
            CHECK(w.consistent);
        }
    }
    CHECK(b.windows.back().rows_needed == 6);
    CHECK(a.windows.back().rows_needed == 3);
    CHECK(surjective_by_enumeration(interchange_divergent_bounded()));
    CHECK_FALSE(surjective_by_enumeration(interchange_constant_m()));
    CHECK_FALSE(surjective_by_enumeration(interchange_divergent_unbounded()));
}

TEST_CASE("the symbolic interchange verdict matches enumeration", "[verify]")
{
    std::mt19937 rng(81);
    std::uniform_int_distribution<int> deg(0, 5), order(0, 3), shift(-2, 2);
    for (int t = 0; t < 150; ++t) {
        GradedSeqSpec s;
        s.m = random_sequence(rng);
        s.n = random_sequence(rng);
        s.p = shift(rng);
        for (int k = order(rng); k > 0; --k) {
            const int o = order(rng);
            s.profile[deg(rng)] = o == 0 ? FpAbGroup::free(1) : FpAbGroup::cyclic(o + 1);
        }
        const InterchangeReport r = interchange_criterion(s, 4);
        INFO("trial " << t << ": " << r.reason);
        CHECK(r.surjective == surjective_by_enumeration(s));
        for (const auto& w : r.windows) {
            CHECK(w.injective);
            CHECK(w.consistent);
        }
    }
}

TEST_CASE("inconsistent interchange specs are rejected", "[verify]")
{
    GradedSeqSpec s = interchange_divergent_bounded();
    s.lower_bound = 1;
    CHECK_THROWS_AS(interchange_criterion(s), InputError);
    s = interchange_constant_m();
    s.n.prefix = {3};
    CHECK_THROWS_AS(interchange_criterion(s), InputError);
    s = interchange_constant_m();
    s.m.prefix = {2, 1};
    s.m.tail = IntSequence::Tail::Unbounded;
    CHECK_THROWS_AS(interchange_criterion(s), InputError);
}

TEST_CASE("the Tor probe at small bounds", "[verify]")
{
    const TorProbeReport a = tor_interchange_probe(2, 3, 3);
    CHECK(a.finite_isomorphism);
    CHECK(a.delta_order == 8);
    CHECK(a.delta_in_image);
    CHECK(a.source == a.target);
    CHECK(a.source == FpAbGroup(0, {4, 4, 4, 8}));

    const TorProbeReport b = tor_interchange_probe(2, 2, 5);
    CHECK(b.finite_isomorphism);
    CHECK(b.delta_order == 32);
    CHECK_FALSE(b.delta_in_image);
    CHECK(b.max_reachable_order == 4);

    const TorProbeReport c = tor_interchange_probe(3, 2, 2);
    CHECK(c.source == FpAbGroup::cyclic(9));
    CHECK(c.delta_order == 9);
    CHECK(c.delta_in_image);

    CHECK_THROWS_AS(tor_interchange_probe(4, 3, 3), InputError);
    CHECK_THROWS_AS(tor_interchange_probe(2, 1, 3), InputError);
    CHECK_THROWS_AS(tor_interchange_probe(2, 3, kTorProbeBound + 1), InputError);
}

TEST_CASE("the Tor probe membership boundary sits at M = N", "[verify]")
{
    for (long p : {2L, 3L})
        for (long m = 2; m <= 6; ++m)
            for (long n = 2; n <= 6; ++n) {
                const TorProbeReport r = tor_interchange_probe(p, m, n);
                Integer pn, pmin;
                mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
                mpz_ui_pow_ui(pmin.get_mpz_t(), p, std::min(m, n));
                CHECK(r.finite_isomorphism);
                CHECK(r.delta_order == pn);
                CHECK(r.delta_in_image == (m >= n));
                CHECK(r.max_reachable_order == pmin);
            }
}

TEST_CASE("Borel versus quotient for a point", "[verify]")
{
    const BorelCheckReport r = borel_vs_quotient_check(gcw_point(FinGroup::cyclic(2)), 6, [](int) { return Integer(2); });
    CHECK(r.valid_through == 5);
    REQUIRE(r.degrees.size() == 6);
    for (const auto& d : r.degrees) {
        CHECK(d.kernel == (d.p % 2 == 1 ? FpAbGroup::cyclic(2) : FpAbGroup()));
        CHECK(d.cokernel.is_trivial());
        CHECK(d.annihilated);
    }
    CHECK(r.pass());
    // Z/3 is not killed by 2.
    const BorelCheckReport c3 = borel_vs_quotient_check(gcw_point(FinGroup::cyclic(3)), 4, [](int) { return Integer(2); });
    CHECK_FALSE(c3.pass());
    CHECK(borel_vs_quotient_check(gcw_point(FinGroup::cyclic(3)), 4).pass());
    CHECK_THROWS_AS(borel_vs_quotient_check(z2_reflection_sphere(2), 2), TruncationError);
}

TEST_CASE("Borel versus quotient for free actions and the trivial group", "[verify]")
{
    for (const GCWComplex& x : {gcw_free_orbit(FinGroup::cyclic(2)), z2_antipodal_sphere(2)}) {
        const BorelCheckReport r = borel_vs_quotient_check(x, 5);
        for (const auto& d : r.degrees) {
            CHECK(d.kernel.is_trivial());
            CHECK(d.cokernel.is_trivial());
        }
    }
    const PlainChainComplex plain(0, {CyclicSum::free(2), CyclicSum::free(1)}, {IntMatrix{{1}, {-1}}});
    const BorelCheckReport t = borel_vs_quotient_check(trivial_group_complex(plain), 3);
    for (const auto& d : t.degrees) {
        CHECK(d.borel == d.quotient);
        CHECK(d.kernel.is_trivial());
        CHECK(d.cokernel.is_trivial());
    }
}

TEST_CASE("Borel verdicts are stable as K grows", "[verify]")
{
    for (const GCWComplex& x : {gcw_point(FinGroup::cyclic(2)), z2_reflection_sphere(1)}) {
        const BorelCheckReport a = borel_vs_quotient_check(x, 4), b = borel_vs_quotient_check(x, 5);
        REQUIRE(a.degrees.size() + 1 == b.degrees.size());
        for (std::size_t p = 0; p < a.degrees.size(); ++p) {
            CHECK(a.degrees[p].kernel == b.degrees[p].kernel);
            CHECK(a.degrees[p].cokernel == b.degrees[p].cokernel);
            CHECK(a.degrees[p].annihilated == b.degrees[p].annihilated);
        }
    }
}
