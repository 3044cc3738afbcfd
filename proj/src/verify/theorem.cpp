#include "orbifunctor/verify/theorem.hpp"

#include <map>

#include "orbifunctor/cells/examples.hpp"
#include "orbifunctor/cells/models.hpp"
#include "orbifunctor/error.hpp"

namespace orbifunctor {

std::string to_string(FgMode m)
{
    return m == FgMode::Strict ? "strict" : "almost";
}

FgMode fg_mode_from_string(const std::string& s)
{
    if (s == "strict")
        return FgMode::Strict;
    if (s == "almost")
        return FgMode::Almost;
    throw InputError("unknown mode '" + s + "' (expected strict or almost)");
}

std::string to_string(MapVerdict v)
{
    switch (v) {
    case MapVerdict::Isomorphism:
        return "iso";
    case MapVerdict::AlmostIsomorphism:
        return "almost-iso";
    case MapVerdict::Neither:
        break;
    }
    return "neither";
}

void finalize_instance(TheoremInstance& inst)
{
    if (!inst.index || !inst.orbit.category)
        throw InputError("theorem instance: missing index or orbit category");
    if (inst.space)
        inst.c_complex = fixed_point_chains(*inst.space, inst.orbit);
    if (inst.d < 0)
        throw InputError("theorem instance: d must be nonnegative");
    if (inst.d_complex.base.get() != inst.index.get())
        throw InputError("theorem instance: D does not live over the index category");
    if (!inst.d_complex.has_markers())
        throw InputError("theorem instance: D must be degreewise free with markers");
    if (inst.c_complex.base.get() != inst.orbit.category.get())
        throw InputError("theorem instance: C does not live over the orbit category");
    if (inst.e.index.get() != inst.index.get() || inst.e.coefficient.get() != inst.orbit.category.get())
        throw InputError("theorem instance: E does not live on index × orbit category");
}

HypothesisReport check_hypotheses(const TheoremInstance& inst)
{
    HypothesisReport out;
    out.mode = inst.conclusion;
    if (inst.assumption != inst.conclusion)
        out.warnings.push_back("mixed instance: " + to_string(inst.assumption) + " assumptions with " +
                               to_string(inst.conclusion) + " conclusion requested");
    out.warnings.push_back(
        "for finite G and finitely presented values strict and almost finite generation coincide");

    const CatChainComplex& dc = inst.d_complex;
    for (int k = dc.lo; k <= dc.hi() && out.a_pass; ++k) {
        if (k >= 0 && k <= inst.d)
            continue;
        const CatModule m = dc.module(k);
        for (ObjectId c = 0; c < m.values.size(); ++c)
            if (!m.canonical_value(c).is_trivial()) {
                out.a_pass = false;
                out.a_witness = std::make_pair(k, c);
                break;
            }
    }

    const BiFunctorComplex& e = inst.e;
    for (ObjectId i = 0; i < e.index->num_objects() && out.b_pass; ++i)
        for (ObjectId j = 0; j < e.coefficient->num_objects() && out.b_pass; ++j) {
            const PlainChainComplex at = e.at(i, j);
            for (int q = e.lo; q < inst.big_n; ++q) {
                FpAbGroup h = homology(at, q);
                if (!h.is_trivial()) {
                    out.b_pass = false;
                    out.b_witness = HypothesisReport::BWitness{i, j, q, std::move(h)};
                    break;
                }
            }
        }

    if (!inst.space)
        return out;
    const GCWComplex& x = *inst.space;
    out.orbit_types = orbit_type_count(x);
    const SubgroupFamily iso = isotropy_family(x);
    const int top = inst.n + inst.d - inst.big_n;
    for (const Subgroup& h : inst.orbit.family.members) {
        out.d_homology.emplace_back();
        // X^H is empty when H is not subconjugate to an isotropy group.
        const bool empty = !iso.contains(h);
        const PlainChainComplex q = empty ? PlainChainComplex() : centralizer_quotient_chains(x, h);
        for (int p = 0; p <= top; ++p) {
            FpAbGroup g = empty ? FpAbGroup() : homology(q, p);
            out.annihilator = lcm(out.annihilator, g.exponent());
            out.d_homology.back().push_back(std::move(g));
        }
    }
    // Finitely presented groups are finitely generated, and almost so.
    out.d_pass = true;
    return out;
}

MapClassification classify_map(const AbHom& f)
{
    MapClassification out;
    const KernelCokernel kc = hom_kernel_cokernel(f);
    out.kernel = kc.kernel;
    out.cokernel = kc.cokernel;
    if (kc.kernel.is_finite() && kc.cokernel.is_finite()) {
        out.verdict = kc.kernel.is_trivial() && kc.cokernel.is_trivial() ? MapVerdict::Isomorphism
                                                                          : MapVerdict::AlmostIsomorphism;
        out.kernel_exponent = kc.kernel.exponent();
        out.cokernel_exponent = kc.cokernel.exponent();
    }
    return out;
}

bool ComparisonReport::pass(FgMode conclusion) const
{
    if (!chain_map)
        return false;
    for (const auto& deg : degrees) {
        if (deg.map.verdict == MapVerdict::Neither)
            return false;
        if (conclusion == FgMode::Strict && deg.map.verdict != MapVerdict::Isomorphism)
            return false;
    }
    return true;
}

ComparisonReport verify_comparison(const TheoremInstance& inst)
{
    const int needed = inst.n + inst.d + 1;
    if (inst.e_valid_through && *inst.e_valid_through < needed)
        throw TruncationError("verify_comparison: E is faithful through degree " +
                              std::to_string(*inst.e_valid_through) + " but degree " + std::to_string(needed) +
                              " is needed");
    const Comparison cmp = comparison_map_t(inst.c_complex, inst.d_complex, inst.e);
    ComparisonReport out;
    std::string why;
    out.chain_map = is_chain_map(cmp.map, &why);
    if (!out.chain_map) {
        out.notes.push_back("t_* is not a chain map: " + why);
        return out;
    }
    for (int p = 0; p <= inst.n; ++p) {
        ComparisonReport::Degree deg;
        deg.p = p;
        const AbHom h = induced_map_on_homology(cmp.map, p);
        deg.source = h.source;
        deg.target = h.target;
        deg.map = classify_map(h);
        out.degrees.push_back(std::move(deg));
    }
    if (inst.conclusion == FgMode::Almost)
        out.notes.push_back("almost isomorphisms accepted; with finite data they differ from isomorphisms only "
                            "by finite kernels and cokernels");
    return out;
}

FactorizationReport sub_factorization_check(const SubAndProjection& sp, const BiFunctorComplex& e,
                                            std::optional<int> valid_through)
{
    const FinCategory& J = *sp.orbit.category;
    if (e.coefficient.get() != sp.orbit.category.get())
        throw InputError("sub_factorization_check: E's coefficient leg is not the given orbit category");
    FactorizationReport out;
    for (ObjectId i = 0; i < e.index->num_objects(); ++i) {
        for (std::size_t k = 0; k < e.values.size(); ++k) {
            const int q = e.lo + static_cast<int>(k);
            if (valid_through && q > *valid_through)
                break;
            std::map<MorphismId, AbHom> cache;
            auto on_homology = [&](MorphismId psi) -> const AbHom& {
                auto it = cache.find(psi);
                if (it != cache.end())
                    return it->second;
                ChainMap f;
                f.source = e.at(i, J.dom(psi));
                f.target = e.at(i, J.cod(psi));
                f.lo = e.lo;
                for (std::size_t l = 0; l < e.values.size(); ++l)
                    f.components.push_back(e.coefficient_action[l][i][psi]);
                return cache.emplace(psi, induced_map_on_homology(f, q)).first->second;
            };
            for (ObjectId a = 0; a < J.num_objects(); ++a)
                for (ObjectId b = 0; b < J.num_objects(); ++b) {
                    const auto& hom = J.hom(a, b);
                    for (std::size_t x = 0; x < hom.size(); ++x)
                        for (std::size_t y = x + 1; y < hom.size(); ++y) {
                            if (sp.pr.morphism_map[hom[x]] != sp.pr.morphism_map[hom[y]])
                                continue;
                            ++out.pairs_checked;
                            if (!(on_homology(hom[x]) == on_homology(hom[y])))
                                out.violations.push_back({i, q, hom[x], hom[y]});
                        }
                }
        }
    }
    return out;
}

namespace {

TheoremInstance rf_instance(const FinGroup& g, GCWComplex x)
{
    const ClassifyingModel model = classifying_model(IndexKind::RF, 3);
    TheoremInstance inst;
    inst.index = model.index.category;
    inst.d_complex = cellular_chain_complex(model.cw);
    inst.d = 2;
    inst.orbit = orbit_category(g, all_subgroups(g));
    inst.space = std::move(x);
    inst.e = transport_components_bifunctor(inst.index, inst.orbit);
    inst.n = 2;
    inst.big_n = 0;
    finalize_instance(inst);
    return inst;
}

} // namespace

TheoremInstance desk_instance()
{
    return rf_instance(FinGroup::cyclic(2), z2_reflection_sphere(1));
}

TheoremInstance s3_instance()
{
    return rf_instance(FinGroup::symmetric(3), s3_triangle());
}

} // namespace orbifunctor
