#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "orbifunctor/error.hpp"
#include "orbifunctor/fincat/orbit.hpp"
#include "orbifunctor/fincat/standard.hpp"

using namespace orbifunctor;

namespace {

// ±1, ±i, ±j, ±k at index 4·(sign bit) + unit, units ordered 1, i, j, k.
FinGroup quaternion_group()
{
    // unit products: mult[a][b] = (sign, unit)
    const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<Element>> t(8, std::vector<Element>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            const int s = (x / 4 + y / 4 + sign[x % 4][y % 4]) % 2;
            t[x][y] = static_cast<Element>(4 * s + unit[x % 4][y % 4]);
        }
    return FinGroup(t);
}

std::vector<std::pair<std::string, FinGroup>> small_groups()
{
    std::vector<std::pair<std::string, FinGroup>> out;
    out.emplace_back("1", FinGroup::trivial());
    for (std::size_t n = 2; n <= 12; ++n)
        out.emplace_back("C" + std::to_string(n), FinGroup::cyclic(n));
    out.emplace_back("S3", FinGroup::symmetric(3));
    out.emplace_back("V4", FinGroup::dihedral(2));
    out.emplace_back("D4", FinGroup::dihedral(4));
    out.emplace_back("D5", FinGroup::dihedral(5));
    out.emplace_back("D6", FinGroup::dihedral(6));
    out.emplace_back("A4", FinGroup::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}));
    out.emplace_back("Q8", quaternion_group());
    return out;
}

// Every family of g, as closures of sets of conjugacy-class representatives.
std::vector<SubgroupFamily> all_families(const FinGroup& g)
{
    GroupAnalysis a = group_analysis(g);
    std::set<std::vector<Subgroup>> seen;
    std::vector<SubgroupFamily> out;
    const std::size_t c = a.classes.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << c); ++mask) {
        std::vector<Subgroup> seeds;
        for (std::size_t i = 0; i < c; ++i)
            if (mask & (std::size_t{1} << i))
                seeds.push_back(a.subgroups[a.classes[i].front()]);
        SubgroupFamily f = family_closure(g, seeds);
        if (seen.insert(f.members).second)
            out.push_back(std::move(f));
    }
    return out;
}

// G-maps G/H → G/K counted directly: the image y K of eH must be H-fixed.
std::size_t count_gmaps(const FinGroup& g, const Subgroup& h, const Subgroup& k)
{
    GSet target = coset_space(g, k);
    std::size_t count = 0;
    for (std::size_t y = 0; y < target.size; ++y) {
        bool fixed = true;
        for (Element x : h)
            fixed = fixed && target.action[x][y] == y;
        count += fixed;
    }
    return count;
}

Subgroup named_subgroup(const FinGroup& g, const std::vector<std::string>& gens)
{
    std::vector<Element> els;
    for (const auto& nm : gens)
        for (Element x = 0; x < g.order(); ++x)
            if (g.name(x) == nm)
                els.push_back(x);
    REQUIRE(els.size() == gens.size());
    return generated_subgroup(g, els);
}

} // namespace

TEST_CASE("group constructions satisfy the axioms")
{
    for (const auto& [name, g] : small_groups()) {
        INFO(name);
        CHECK_NOTHROW(FinGroup(g.table()));
    }
    CHECK(FinGroup::symmetric(3).order() == 6);
    CHECK(FinGroup::symmetric(4).order() == 24);
    CHECK(FinGroup::dihedral(4).order() == 8);
    CHECK_THROWS_AS(FinGroup({{0, 1}, {0, 1}}), InputError);
    CHECK_THROWS_AS(FinGroup({{0, 1}, {1, 1}}), InputError);
}

TEST_CASE("group analysis on small groups")
{
    FinGroup z2 = FinGroup::cyclic(2);
    auto a2 = group_analysis(z2);
    CHECK(a2.subgroups.size() == 2);
    CHECK(a2.centralizers[0].size() == 2);

    FinGroup s3 = FinGroup::symmetric(3);
    auto a = group_analysis(s3);
    CHECK(a.subgroups.size() == 6);
    CHECK(a.classes.size() == 4);
    Subgroup t = named_subgroup(s3, {"(1 2)"});
    CHECK(a.centralizers[a.index_of(t)] == t);
    CHECK(a.normalizers[a.index_of(t)] == t);

    FinGroup z4 = FinGroup::cyclic(4);
    auto a4 = group_analysis(z4);
    CHECK(a4.subgroups.size() == 3);
    for (const auto& z : a4.centralizers)
        CHECK(z.size() == 4);

    // Subgroup counts from the literature on small groups.
    CHECK(group_analysis(FinGroup::dihedral(4)).subgroups.size() == 10);
    CHECK(group_analysis(small_groups().back().second).subgroups.size() == 6);  // Q8
    CHECK(group_analysis(FinGroup::symmetric(4)).subgroups.size() == 30);

    CHECK_THROWS_AS(group_analysis(FinGroup::symmetric(5)), InputError);
}

TEST_CASE("family closure")
{
    FinGroup s3 = FinGroup::symmetric(3);
    Subgroup triv{s3.identity()};
    CHECK(family_closure(s3, {triv}).members.size() == 1);
    auto f = family_closure(s3, {named_subgroup(s3, {"(1 2)"})});
    CHECK(f.size() == 4);
    for (const auto& h : f.members)
        CHECK(h.size() <= 2);
    CHECK(family_closure(s3, {generated_subgroup(s3, {0, 1, 2, 3, 4, 5})}).size() == 6);
    CHECK(is_family(s3, f));
    SubgroupFamily bad{{triv, named_subgroup(s3, {"(1 2)"})}};
    std::string why;
    CHECK_FALSE(is_family(s3, bad, &why));
    CHECK(why.find("conjugation") != std::string::npos);
}

TEST_CASE("validate_category reports broken associativity")
{
    FinCategory one({"*"}, {{0, 0, "id"}}, {0}, {0});
    CHECK(validate_category(one).ok);

    // Identity laws hold; (a∘a)∘b = b∘b = a but a∘(a∘b) = a∘a = b.
    std::vector<Morphism> m{{0, 0, "id"}, {0, 0, "a"}, {0, 0, "b"}};
    //        f: id a  b
    // g = id:    id a  b
    // g = a :    a  b  a
    // g = b :    b  a  a
    FinCategory broken({"*"}, m, {0}, {0, 1, 2, 1, 2, 1, 2, 1, 1});
    auto r = validate_category(broken);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.witness.size() == 3);
    const auto h = r.witness[0], g = r.witness[1], f = r.witness[2];
    CHECK(broken.compose(h, broken.compose(g, f)) != broken.compose(broken.compose(h, g), f));
}

TEST_CASE("orbit categories of small groups")
{
    FinGroup z2 = FinGroup::cyclic(2);
    auto oc = orbit_category(z2, all_subgroups(z2));
    const auto& c = *oc.category;
    const ObjectId g1 = 0, gg = 1;
    CHECK(c.hom(g1, g1).size() == 2);
    CHECK(c.hom(g1, gg).size() == 1);
    CHECK(c.hom(gg, g1).empty());
    CHECK(c.hom(gg, gg).size() == 1);

    auto trivial = orbit_category(FinGroup::trivial(), all_subgroups(FinGroup::trivial()));
    CHECK(trivial.category->num_objects() == 1);
    CHECK(trivial.category->num_morphisms() == 1);

    auto free_only = orbit_category(z2, family_closure(z2, {{z2.identity()}}));
    CHECK(free_only.category->num_objects() == 1);
    CHECK(free_only.category->num_morphisms() == 2);

    for (const auto& [name, g] : small_groups()) {
        INFO(name);
        for (const auto& fam : all_families(g)) {
            auto o = orbit_category(g, fam);
            REQUIRE(validate_category(*o.category).ok);
            const ObjectId one = 0;  // the trivial subgroup is always the first member
            for (ObjectId b = 0; b < fam.size(); ++b) {
                CHECK(o.category->hom(one, b).size() == g.order() / fam.members[b].size());
                if (b != one)
                    CHECK(o.category->hom(b, one).empty());
                for (ObjectId a = 0; a < fam.size(); ++a)
                    CHECK(o.category->hom(a, b).size() == count_gmaps(g, fam.members[a], fam.members[b]));
            }
            // Morphisms act on cosets as G-maps, and composition matches function composition.
            for (MorphismId m = 0; m < o.category->num_morphisms(); ++m) {
                auto map = o.coset_map(m);
                GSet src = coset_space(g, o.subgroup(o.category->dom(m)));
                GSet tgt = coset_space(g, o.subgroup(o.category->cod(m)));
                for (Element x = 0; x < g.order(); ++x)
                    for (std::size_t p = 0; p < src.size; ++p)
                        REQUIRE(map[src.action[x][p]] == tgt.action[x][map[p]]);
            }
        }
    }
}

TEST_CASE("composition in Or(G) is composition of G-maps")
{
    FinGroup s3 = FinGroup::symmetric(3);
    auto o = orbit_category(s3, all_subgroups(s3));
    const auto& c = *o.category;
    for (MorphismId f = 0; f < c.num_morphisms(); ++f)
        for (ObjectId z = 0; z < c.num_objects(); ++z)
            for (MorphismId g : c.hom(c.cod(f), z)) {
                auto mf = o.coset_map(f), mg = o.coset_map(g), mgf = o.coset_map(c.compose(g, f));
                for (std::size_t p = 0; p < mf.size(); ++p)
                    REQUIRE(mgf[p] == mg[mf[p]]);
            }
}

TEST_CASE("subgroup category and the projection")
{
    FinGroup z2 = FinGroup::cyclic(2);
    auto sp = sub_category_and_projection(z2, all_subgroups(z2));
    CHECK(sp.sub.category->hom(0, 0).size() == 1);
    CHECK(sp.pr.morphism_map[sp.orbit.category->hom(0, 0)[0]] == sp.pr.morphism_map[sp.orbit.category->hom(0, 0)[1]]);

    for (const auto& [name, g] : small_groups()) {
        INFO(name);
        auto s = sub_category_and_projection(g, all_subgroups(g));
        const auto& oc = *s.orbit.category;
        const auto& sc = *s.sub.category;
        REQUIRE(validate_category(sc).ok);
        REQUIRE(validate_functor(s.pr).ok);
        GroupAnalysis a = group_analysis(g);
        for (ObjectId h = 0; h < oc.num_objects(); ++h) {
            CHECK(s.pr.morphism_map[oc.identity(h)] == sc.identity(h));
            const Subgroup& hh = s.orbit.subgroup(h);
            const Subgroup z = centralizer(g, hh);
            for (ObjectId k = 0; k < oc.num_objects(); ++k) {
                // pr is full.
                std::set<MorphismId> image;
                for (MorphismId m : oc.hom(h, k))
                    image.insert(s.pr.morphism_map[m]);
                CHECK(image.size() == sc.hom(h, k).size());
                // Fibers are the orbits of Z_G H acting by rK ↦ z r K.
                for (MorphismId m1 : oc.hom(h, k))
                    for (MorphismId m2 : oc.hom(h, k)) {
                        bool same_orbit = false;
                        for (Element x : z)
                            same_orbit = same_orbit ||
                                         s.orbit.morphism(h, k, g.mul(x, s.orbit.representative[m1])) == m2;
                        CHECK(same_orbit == (s.pr.morphism_map[m1] == s.pr.morphism_map[m2]));
                    }
            }
            // aut_Sub(H) ≅ N_G H / (H·Z_G H) via n ↦ [c(n)].
            const Subgroup& n = a.normalizers[a.index_of(hh)];
            std::set<Element> hz;
            for (Element x : hh)
                for (Element y : z)
                    hz.insert(g.mul(x, y));
            const auto& aut = sc.hom(h, h);
            REQUIRE(aut.size() * hz.size() == n.size());
            std::set<MorphismId> hit;
            for (Element x : n) {
                const MorphismId mx = s.sub.morphism(h, h, x);
                hit.insert(mx);
                CHECK((mx == sc.identity(h)) == (hz.count(x) == 1));
                for (Element y : n)
                    CHECK(s.sub.morphism(h, h, g.mul(x, y)) == sc.compose(mx, s.sub.morphism(h, h, y)));
            }
            CHECK(hit.size() == aut.size());
        }
    }

    FinGroup s3 = FinGroup::symmetric(3);
    auto s = sub_category_and_projection(s3, all_subgroups(s3));
    Subgroup t = named_subgroup(s3, {"(1 2)"});
    const ObjectId ht = s.sub.family.index_of(t);
    CHECK(s.sub.category->hom(ht, ht).size() == 1);
}

TEST_CASE("transport groupoids")
{
    FinGroup z2 = FinGroup::cyclic(2);
    GSet free = coset_space(z2, {z2.identity()});
    FinCategory t = transport_groupoid(z2, free);
    CHECK(t.num_objects() == 2);
    CHECK(t.num_morphisms() == 4);
    CHECK(validate_category(t).ok);
    CHECK(t.hom(0, 1).size() == 1);  // connected

    for (const auto& [name, g] : small_groups()) {
        INFO(name);
        for (const auto& h : group_analysis(g).subgroups) {
            GSet s = coset_space(g, h);
            FinCategory tg = transport_groupoid(g, s);
            REQUIRE(validate_category(tg).ok);
            for (MorphismId m = 0; m < tg.num_morphisms(); ++m) {
                bool inverse = false;
                for (MorphismId n : tg.hom(tg.cod(m), tg.dom(m)))
                    inverse = inverse || (tg.compose(n, m) == tg.identity(tg.dom(m)) &&
                                          tg.compose(m, n) == tg.identity(tg.cod(m)));
                CHECK(inverse);
            }
            for (ObjectId x = 0; x < tg.num_objects(); ++x) {
                CHECK(!tg.hom(0, x).empty());
                CHECK(tg.hom(x, x).size() == h.size());
            }
        }
    }
    GSet point = coset_space(z2, {0, 1});
    FinCategory tp = transport_groupoid(z2, point);
    CHECK(tp.num_objects() == 1);
    CHECK(tp.num_morphisms() == 2);

    GSet bad = free;
    bad.action[1] = {0, 0};
    CHECK_THROWS_AS(transport_groupoid(z2, bad), InputError);
}

TEST_CASE("standard index categories")
{
    auto n2 = standard_category(IndexKind::N, 2);
    CHECK(n2.category->num_objects() == 3);
    CHECK(n2.category->num_morphisms() == 6);
    auto n3 = standard_category(IndexKind::N, 3);
    CHECK(validate_category(*n3.category).ok);
    CHECK(n3.category->num_objects() == 4);

    auto rf = standard_category(IndexKind::RF, 3);
    const auto& c = *rf.category;
    CHECK(validate_category(c).ok);
    CHECK(c.hom(0, 2).size() == 3);
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t n = 0; n <= 3; ++n)
            CHECK(c.hom(m, n).size() == (n >= m ? n - m + 1 : 0));
    const MorphismId h01 = rf.morphism(0, 1, 1), v12 = rf.morphism(1, 2, 0);
    const MorphismId v01 = rf.morphism(0, 1, 0), h12 = rf.morphism(1, 2, 1);
    CHECK(rf.steps(h01) == std::pair<std::size_t, std::size_t>{1, 0});
    CHECK(c.compose(v12, h01) == rf.morphism(0, 2, 1));
    CHECK(c.compose(h12, v01) == rf.morphism(0, 2, 1));
    CHECK(rf.steps(c.compose(v12, h01)) == std::pair<std::size_t, std::size_t>{1, 1});
}

TEST_CASE("group category")
{
    FinGroup s3 = FinGroup::symmetric(3);
    FinCategory c = group_category(s3);
    CHECK(c.num_objects() == 1);
    CHECK(c.num_morphisms() == 6);
    CHECK(validate_category(c).ok);
}
