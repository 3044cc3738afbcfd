#include <catch_amalgamated.hpp>

#include <random>

#include "orbifunctor/chain/plain.hpp"
#include "orbifunctor/error.hpp"
#include "orbifunctor/exact/smith.hpp"

using namespace orbifunctor;

namespace {

IntMatrix mat(std::size_t r, std::size_t c, std::initializer_list<long> xs)
{
    IntMatrix m(r, c);
    auto it = xs.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = *it++;
    return m;
}

// Cellular chains of RP^n: Z ← Z ← Z ..., d_k = 1 + (−1)^k.
PlainChainComplex projective_space(int n)
{
    std::vector<CyclicSum> groups(static_cast<std::size_t>(n + 1), CyclicSum::free(1));
    std::vector<IntMatrix> d;
    for (int k = 1; k <= n; ++k)
        d.push_back(mat(1, 1, {k % 2 == 0 ? 2 : 0}));
    return PlainChainComplex(0, groups, d);
}

} // namespace

TEST_CASE("homology of real projective spaces", "[chain]")
{
    PlainChainComplex c = projective_space(4);
    CHECK(c.is_valid());
    CHECK(homology(c, 0) == FpAbGroup::free(1));
    CHECK(homology(c, 1) == FpAbGroup::cyclic(2));
    CHECK(homology(c, 2).is_trivial());
    CHECK(homology(c, 3) == FpAbGroup::cyclic(2));
    CHECK(homology(c, 4).is_trivial());
    CHECK(homology(c, 5).is_trivial());
    CHECK(homology(c, -1).is_trivial());
    CHECK(euler_characteristic_ranks(c) == euler_characteristic_homology(c));
    CHECK(homology(projective_space(3), 3) == FpAbGroup::free(1));
}

TEST_CASE("homology with torsion chain groups", "[chain]")
{
    // Z/4 --×2--> Z/4 in degrees 1 → 0.
    PlainChainComplex c(0, {CyclicSum({4}), CyclicSum({4})}, {mat(1, 1, {2})});
    CHECK(homology(c, 0) == FpAbGroup::cyclic(2));
    CHECK(homology(c, 1) == FpAbGroup::cyclic(2));
    // ×1: Z/2 → Z/4 does not respect relations.
    PlainChainComplex bad(0, {CyclicSum({4}), CyclicSum({2})}, {mat(1, 1, {1})});
    CHECK_FALSE(bad.is_valid());
}

TEST_CASE("d∘d ≠ 0 is reported", "[chain]")
{
    PlainChainComplex c(0, {CyclicSum::free(1), CyclicSum::free(1), CyclicSum::free(1)},
                        {mat(1, 1, {1}), mat(1, 1, {1})});
    std::string why;
    CHECK_FALSE(c.is_valid(&why));
    CHECK(why.find("d_1") != std::string::npos);
    CHECK_THROWS_AS(homology(c, 1), InputError);
    CHECK_THROWS_AS(PlainChainComplex(0, {CyclicSum::free(1), CyclicSum::free(2)}, {mat(1, 1, {1})}), InputError);
}

TEST_CASE("random complexes: rank-nullity and Euler characteristic", "[chain]")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dim(0, 4), entry(-3, 3);
    for (int t = 0; t < 200; ++t) {
        // Columns of d2 lie in ker d1.
        const std::size_t n0 = dim(rng), n1 = dim(rng) + 1, n2 = dim(rng);
        IntMatrix d1(n0, n1);
        for (std::size_t i = 0; i < n0; ++i)
            for (std::size_t j = 0; j < n1; ++j)
                d1(i, j) = entry(rng);
        IntMatrix k = kernel_basis(d1);
        IntMatrix coeff(k.cols(), n2);
        for (std::size_t i = 0; i < k.cols(); ++i)
            for (std::size_t j = 0; j < n2; ++j)
                coeff(i, j) = entry(rng);
        IntMatrix d2 = k * coeff;
        PlainChainComplex c(0, {CyclicSum::free(n0), CyclicSum::free(n1), CyclicSum::free(n2)}, {d1, d2});
        REQUIRE(c.is_valid());
        CHECK(euler_characteristic_ranks(c) == euler_characteristic_homology(c));
    }
}

TEST_CASE("chain maps induce maps on homology", "[chain]")
{
    PlainChainComplex c = projective_space(3);
    ChainMap twice{c, c, 0, {mat(1, 1, {2}), mat(1, 1, {2}), mat(1, 1, {2}), mat(1, 1, {2})}};
    CHECK(is_chain_map(twice));
    AbHom h1 = induced_map_on_homology(twice, 1);
    CHECK(hom_kernel_cokernel(h1).kernel == FpAbGroup::cyclic(2));
    AbHom h3 = induced_map_on_homology(twice, 3);
    CHECK(hom_kernel_cokernel(h3).cokernel == FpAbGroup::cyclic(2));

    ChainMap broken{c, c, 0, {mat(1, 1, {1}), mat(1, 1, {0}), mat(1, 1, {1}), mat(1, 1, {1})}};
    std::string why;
    CHECK_FALSE(is_chain_map(broken, &why));
    CHECK_THROWS_AS(induced_map_on_homology(broken, 1), InputError);
}
