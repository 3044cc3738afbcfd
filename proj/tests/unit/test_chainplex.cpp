#include <catch_amalgamated.hpp>

#include "orbifunctor/chain/total.hpp"
#include "orbifunctor/error.hpp"
#include "support.hpp"

using namespace orbifunctor;
using namespace orbifunctor::testing;

namespace {

IntMatrix kron(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

CyclicSum tensor_orders(const CyclicSum& a, const CyclicSum& b)
{
    std::vector<Integer> o;
    for (const auto& x : a.orders())
        for (const auto& y : b.orders())
            o.push_back(gcd(x, y));
    return CyclicSum(o);
}

// E(i, j) = A(i) ⊗ B(j) in degree 0.
BiFunctorComplex product_bifunctor(const CatModule& a, const CatModule& b)
{
    BiFunctorComplex e;
    e.index = a.base;
    e.coefficient = b.base;
    const FinCategory& I = *a.base;
    const FinCategory& J = *b.base;
    e.values.resize(1);
    e.index_action.resize(1);
    e.coefficient_action.resize(1);
    for (ObjectId i = 0; i < I.num_objects(); ++i) {
        e.values[0].emplace_back();
        for (ObjectId j = 0; j < J.num_objects(); ++j)
            e.values[0][i].push_back(tensor_orders(a.values[i], b.values[j]));
    }
    for (MorphismId phi = 0; phi < I.num_morphisms(); ++phi) {
        e.index_action[0].emplace_back();
        for (ObjectId j = 0; j < J.num_objects(); ++j)
            e.index_action[0][phi].push_back(e.values[0][I.dom(phi)][j].reduce_rows(
                kron(a.action[phi], IntMatrix::identity(b.values[j].size()))));
    }
    for (ObjectId i = 0; i < I.num_objects(); ++i) {
        e.coefficient_action[0].emplace_back();
        for (MorphismId psi = 0; psi < J.num_morphisms(); ++psi)
            e.coefficient_action[0][i].push_back(e.values[0][i][J.cod(psi)].reduce_rows(
                kron(IntMatrix::identity(a.values[i].size()), b.action[psi])));
    }
    return e;
}

PlainChainComplex two_term(long d)
{
    IntMatrix m(1, 1);
    m(0, 0) = d;
    return PlainChainComplex(0, {CyclicSum::free(1), CyclicSum::free(1)}, {m});
}

bool degreewise_iso(const ChainMap& f)
{
    for (int n = f.source.lo(); n <= f.source.hi(); ++n) {
        const CyclicSum s = f.source.group(n), t = f.target.group(n);
        if (!kernel_group(f.component(n), s, t).is_trivial() || !cokernel_group(f.component(n), s, t).is_trivial())
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("tensor total of a resolution computes Tor", "[chainplex]")
{
    std::mt19937 rng(31);
    for (const auto& [name, base] : category_zoo()) {
        INFO(name);
        for (int t = 0; t < 3; ++t) {
            CatModule m = random_module(rng, base, Variance::Contravariant);
            CatModule n = random_module(rng, base, Variance::Covariant);
            CatChainComplex res = resolution_complex(free_resolution(m, 3));
            REQUIRE(validate_complex(res).ok);
            TensorTotal tt = tensor_total(res, CatChainComplex::concentrated(n, 0));
            REQUIRE(tt.complex.is_valid());
            CHECK(euler_characteristic_ranks(tt.complex) == euler_characteristic_homology(tt.complex));
            for (int p = 0; p <= 3; ++p)
                CHECK(tt.complex.group(p).canonical() == tensor_over_cat(res.module(p), n));
            for (int p = 0; p <= 2; ++p)
                CHECK(homology(tt.complex, p) == tor(m, n, static_cast<std::size_t>(p), TorSide::ResolveCovariant));
        }
    }
}

TEST_CASE("tensor total over the point satisfies Kunneth", "[chainplex]")
{
    CategoryPtr pt = share(group_category(FinGroup::trivial()));
    auto contra = [&](long d) { return constant_bifunctor(pt, pt, two_term(d)).index_slice(0); };
    auto co = [&](long d) { return constant_bifunctor(pt, pt, two_term(d)).coefficient_slice(0); };
    PlainChainComplex c = tensor_complex_over_cat(contra(2), co(4));
    REQUIRE(c.is_valid());
    CHECK(homology(c, 0) == FpAbGroup::cyclic(2));
    CHECK(homology(c, 1) == FpAbGroup::cyclic(2));
    CHECK(homology(c, 2).is_trivial());
    PlainChainComplex c2 = tensor_complex_over_cat(contra(2), co(3));
    for (int p = 0; p <= 2; ++p)
        CHECK(homology(c2, p).is_trivial());
}

TEST_CASE("hom total against a representable is evaluation", "[chainplex]")
{
    std::mt19937 rng(32);
    for (const auto& [name, base] : category_zoo()) {
        INFO(name);
        CatModule m = random_module(rng, base, Variance::Contravariant);
        CatChainComplex e = resolution_complex(free_resolution(m, 2));
        for (ObjectId c = 0; c < base->num_objects(); ++c) {
            PlainChainComplex h =
                hom_complex_over_cat(CatChainComplex::concentrated(free_module(base, {c}, Variance::Contravariant), 0), e);
            PlainChainComplex ev = e.evaluate(c);
            REQUIRE(h.is_valid());
            for (int p = -1; p <= 3; ++p)
                CHECK(homology(h, p) == homology(ev, p));
        }
    }
}

TEST_CASE("hom total of a resolution computes hom in degree 0", "[chainplex]")
{
    std::mt19937 rng(33);
    for (const auto& [name, base] : category_zoo()) {
        INFO(name);
        for (int t = 0; t < 3; ++t) {
            CatModule m = random_module(rng, base, Variance::Contravariant);
            CatModule n = random_module(rng, base, Variance::Contravariant);
            PlainChainComplex h =
                hom_complex_over_cat(resolution_complex(free_resolution(m, 2)), CatChainComplex::concentrated(n, 0));
            REQUIRE(h.is_valid());
            CHECK(homology(h, 0) == hom_over_cat(m, n));
            CHECK(euler_characteristic_ranks(h) == euler_characteristic_homology(h));
        }
    }
}

TEST_CASE("hom total requires markers and matching bases", "[chainplex]")
{
    CategoryPtr base = standard_category(IndexKind::N, 2).category;
    CatModule z = CatModule::constant(base, Variance::Contravariant, CyclicSum({0}));
    CHECK_THROWS_AS(hom_complex_over_cat(CatChainComplex::concentrated(z, 0), CatChainComplex::concentrated(z, 0)),
                    InputError);
    CategoryPtr other = standard_category(IndexKind::N, 2).category;
    CatModule z2 = CatModule::constant(other, Variance::Contravariant, CyclicSum({0}));
    CHECK_THROWS_AS(
        hom_complex_over_cat(CatChainComplex::concentrated(free_module(base, {0}, Variance::Contravariant), 0),
                             CatChainComplex::concentrated(z2, 0)),
        InputError);
}

TEST_CASE("product bifunctors validate and broken ones do not", "[chainplex]")
{
    std::mt19937 rng(34);
    CategoryPtr I = standard_category(IndexKind::RF, 2).category;
    CategoryPtr J = orbit_of(FinGroup::cyclic(2));
    BiFunctorComplex e =
        product_bifunctor(random_module(rng, I, Variance::Contravariant), random_module(rng, J, Variance::Covariant));
    CHECK(validate_bifunctor(e).ok);
    CHECK(validate_bifunctor(constant_bifunctor(I, J, two_term(3))).ok);
    BiFunctorComplex bad = constant_bifunctor(I, J, two_term(3));
    bad.coefficient_action[0][0][1] = bad.coefficient_action[0][0][1].scaled(2);
    CHECK_FALSE(validate_bifunctor(bad).ok);
}

TEST_CASE("comparison map is a degreewise isomorphism of complexes", "[chainplex]")
{
    std::mt19937 rng(35);
    const std::vector<std::pair<std::string, CategoryPtr>> indices{
        {"point", share(group_category(FinGroup::trivial()))},
        {"N2", standard_category(IndexKind::N, 2).category},
        {"RF2", standard_category(IndexKind::RF, 2).category}};
    const std::vector<std::pair<std::string, CategoryPtr>> coefficients{
        {"point", share(group_category(FinGroup::trivial()))},
        {"Or(C2)", orbit_of(FinGroup::cyclic(2))},
        {"Or(C3)", orbit_of(FinGroup::cyclic(3))}};
    for (const auto& [iname, I] : indices)
        for (const auto& [jname, J] : coefficients) {
            INFO(iname << " x " << jname);
            for (int t = 0; t < 2; ++t) {
                CatChainComplex d = resolution_complex(free_resolution(random_module(rng, I, Variance::Contravariant), 2));
                CatChainComplex c = resolution_complex(free_resolution(random_module(rng, J, Variance::Contravariant), 1));
                for (const BiFunctorComplex& e :
                     {product_bifunctor(random_module(rng, I, Variance::Contravariant),
                                        random_module(rng, J, Variance::Covariant)),
                      constant_bifunctor(I, J, two_term(2))}) {
                    REQUIRE(validate_bifunctor(e).ok);
                    Comparison cmp = comparison_map_t(c, d, e);
                    REQUIRE(cmp.source.complex.is_valid());
                    REQUIRE(cmp.target.complex.is_valid());
                    REQUIRE(validate_complex(cmp.hom_side).ok);
                    REQUIRE(validate_complex(cmp.tensor_side).ok);
                    std::string why;
                    CHECK(is_chain_map(cmp.map, &why));
                    INFO(why);
                    CHECK(degreewise_iso(cmp.map));
                    for (int p = cmp.map.source.lo(); p <= cmp.map.source.hi(); ++p)
                        CHECK(is_isomorphism(induced_map_on_homology(cmp.map, p)));
                }
            }
        }
}

TEST_CASE("comparison map over trivial categories is the identity", "[chainplex]")
{
    CategoryPtr pt = share(group_category(FinGroup::trivial()));
    CatChainComplex d = CatChainComplex::concentrated(free_module(pt, {0}, Variance::Contravariant), 0);
    CatChainComplex c = CatChainComplex::concentrated(free_module(pt, {0}, Variance::Contravariant), 0);
    Comparison cmp = comparison_map_t(c, d, constant_bifunctor(pt, pt, two_term(6)));
    REQUIRE(is_chain_map(cmp.map));
    for (int p = cmp.map.source.lo(); p <= cmp.map.source.hi(); ++p)
        CHECK(cmp.map.component(p) == IntMatrix::identity(cmp.map.source.group(p).size()));
    CHECK(homology(cmp.map.target, 0) == FpAbGroup::cyclic(6));
}
