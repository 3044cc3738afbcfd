#include "orbifunctor/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "orbifunctor/cells/models.hpp"
#include "orbifunctor/verify/probes.hpp"

namespace orbifunctor {

using Json = nlohmann::ordered_json;

bool Report::pass() const
{
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::string Report::to_json() const
{
    Json j;
    j["command"] = command;
    j["inputs_digest"] = digest;
    j["pass"] = pass();
    Json vs = Json::array();
    for (const auto& v : verdicts)
        vs.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    j["verdicts"] = vs;
    Json ws = Json::array();
    for (const auto& [label, text] : witnesses)
        ws.push_back({{"label", label}, {"witness", text}});
    j["witnesses"] = ws;
    Json gs = Json::array();
    for (const auto& [label, g] : groups)
        gs.push_back({{"label", label}, {"group", g}});
    j["groups"] = gs;
    j["notes"] = notes;
    return j.dump(2) + "\n";
}

namespace {

/// Code points, for column alignment of UTF-8 labels.
std::size_t display_width(const std::string& s)
{
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

} // namespace

std::string Report::to_table() const
{
    std::ostringstream out;
    out << "command  " << command << "\n";
    out << "digest   " << digest << "\n";
    std::size_t width = 0;
    for (const auto& g : groups)
        width = std::max(width, display_width(g.first));
    if (!groups.empty())
        out << "\ngroups\n";
    for (const auto& [label, g] : groups)
        out << "  " << label << std::string(width - display_width(label) + 2, ' ') << g << "\n";
    if (!witnesses.empty())
        out << "\nwitnesses\n";
    for (const auto& [label, w] : witnesses)
        out << "  " << label << ": " << w << "\n";
    if (!notes.empty())
        out << "\nnotes\n";
    for (const auto& n : notes)
        out << "  " << n << "\n";
    out << "\nverdicts\n";
    for (const auto& v : verdicts) {
        out << "  [" << (v.pass ? "pass" : "FAIL") << "] " << v.name;
        if (!v.detail.empty())
            out << " (" << v.detail << ")";
        out << "\n";
    }
    out << "\nresult   " << (pass() ? "pass" : "fail") << "\n";
    return out.str();
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"validate",         "homology",         "bredon",
                                                "tor",              "tensor",           "hom",
                                                "verify-theorem",   "demo-interchange", "demo-tor-probe",
                                                "demo-classifying", "borel-check"};
    return names;
}

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

[[noreturn]] void missing(const std::string& what)
{
    throw ManifestError("section " + what, "missing section for this command");
}

std::string ppow(long p, long k)
{
    Integer v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return v.get_str();
}

/// Degrees to report: the requested one, else [lo, hi].
std::vector<int> degrees(const RunOptions& o, int lo, int hi)
{
    if (o.degree)
        return {*o.degree};
    std::vector<int> out;
    for (int p = lo; p <= hi; ++p)
        out.push_back(p);
    return out;
}

std::string sub(int p)
{
    return std::to_string(p);
}

void cmd_validate(const Manifest& m, Report& r)
{
    for (const auto& [section, v] : validate_manifest(m))
        r.verdicts.push_back({section, v.ok, v.message});
    if (r.verdicts.empty())
        r.notes.push_back("no checkable sections");
}

void cmd_homology(const Manifest& m, const RunOptions& o, Report& r)
{
    bool any = false;
    if (m.complex) {
        any = true;
        for (int p : degrees(o, m.complex->lo(), m.complex->hi()))
            r.groups.emplace_back("H_" + sub(p) + "(complex)", homology(*m.complex, p).to_string());
    }
    if (m.gcw) {
        any = true;
        const PlainChainComplex c = underlying_plain_chains(m.gcw->complex);
        for (int p : degrees(o, 0, c.hi()))
            r.groups.emplace_back("H_" + sub(p) + "(X)", homology(c, p).to_string());
    }
    if (m.icw) {
        any = true;
        const CatChainComplex c = cellular_chain_complex(m.icw->cw);
        const FinCategory& base = *m.icw->cw.base;
        for (ObjectId x = 0; x < base.num_objects(); ++x) {
            const PlainChainComplex ev = c.evaluate(x);
            for (int p : degrees(o, 0, m.icw->cw.dimension()))
                r.groups.emplace_back("H_" + sub(p) + "(X(" + base.object_name(x) + "))", homology(ev, p).to_string());
        }
        if (m.icw->cw.valid_through)
            r.notes.push_back("evaluations are faithful through degree " + std::to_string(*m.icw->cw.valid_through));
    }
    if (!any)
        missing("complex, gcw or icw");
    r.verdicts.push_back({"homology computed", true, ""});
}

const ModuleEntry* pick(const Manifest& m, Variance v, const std::string& over)
{
    for (const auto& e : m.modules)
        if (e.module.variance == v && (over.empty() || e.over == over))
            return &e;
    return nullptr;
}

void cmd_bredon(const Manifest& m, const RunOptions& o, Report& r)
{
    if (!m.gcw)
        missing("gcw");
    const ModuleEntry* e = pick(m, Variance::Covariant, "orbit");
    const CatModule coeff =
        e ? e->module : CatModule::constant(m.orbit->category, Variance::Covariant, CyclicSum::free(1));
    const std::string name = e ? e->name : "Z";
    if (!e)
        r.notes.push_back("no covariant module over the orbit category; using constant Z");
    const PlainChainComplex c = bredon_complex(m.gcw->complex, *m.orbit, coeff);
    for (int p : degrees(o, 0, m.gcw->complex.dimension()))
        r.groups.emplace_back("H^G_" + sub(p) + "(X; " + name + ")", homology(c, p).to_string());
    r.verdicts.push_back({"Bredon homology computed", true, ""});
}

std::pair<const ModuleEntry*, const ModuleEntry*> tor_pair(const Manifest& m)
{
    for (const auto& a : m.modules)
        if (a.module.variance == Variance::Contravariant)
            for (const auto& b : m.modules)
                if (b.module.variance == Variance::Covariant && b.over == a.over)
                    return {&a, &b};
    missing("module (a contravariant and a covariant module over one category)");
}

void cmd_tor(const Manifest& m, const RunOptions& o, Report& r)
{
    const auto [a, b] = tor_pair(m);
    for (int p : degrees(o, 0, 2)) {
        if (p < 0)
            throw InputError("tor: degree must be nonnegative");
        const FpAbGroup left = tor(a->module, b->module, static_cast<std::size_t>(p));
        const FpAbGroup right = tor(a->module, b->module, static_cast<std::size_t>(p), TorSide::ResolveCovariant);
        r.groups.emplace_back("Tor_" + sub(p) + "(" + a->name + ", " + b->name + ")", left.to_string());
        r.verdicts.push_back({"Tor_" + sub(p) + " balanced", left == right,
                              left == right ? "" : "resolving the covariant side gives " + right.to_string()});
    }
}

void cmd_tensor(const Manifest& m, Report& r)
{
    const auto [a, b] = tor_pair(m);
    const FpAbGroup t = tensor_over_cat(a->module, b->module);
    r.groups.emplace_back(a->name + " ⊗ " + b->name, t.to_string());
    const FpAbGroup t0 = tor(a->module, b->module, 0);
    r.verdicts.push_back({"tensor equals Tor_0", t == t0, ""});
}

void cmd_hom(const Manifest& m, Report& r)
{
    for (std::size_t i = 0; i < m.modules.size(); ++i)
        for (std::size_t j = i + 1; j < m.modules.size(); ++j) {
            const ModuleEntry &a = m.modules[i], &b = m.modules[j];
            if (a.over != b.over || a.module.variance != b.module.variance)
                continue;
            r.groups.emplace_back("hom(" + a.name + ", " + b.name + ")", hom_over_cat(a.module, b.module).to_string());
            r.verdicts.push_back({"hom computed", true, ""});
            return;
        }
    missing("module (two modules of equal variance over one category)");
}

void cmd_verify(const Manifest& m, const RunOptions& o, Report& r)
{
    TheoremInstance inst = m.theorem_instance();
    if (o.mode)
        inst.conclusion = *o.mode;
    const HypothesisReport h = check_hypotheses(inst);
    for (const auto& w : h.warnings)
        r.notes.push_back(w);
    r.verdicts.push_back({"(A) D concentrated in [0, d]", h.a_pass, "d = " + std::to_string(inst.d)});
    if (h.a_witness)
        r.witnesses.emplace_back("(A)", "D_" + sub(h.a_witness->first) + "(" +
                                            inst.index->object_name(h.a_witness->second) + ") ≠ 0");
    r.verdicts.push_back({"(B) H_q(E(c, G/H)) = 0 for q < N", h.b_pass, "N = " + std::to_string(inst.big_n)});
    if (h.b_witness)
        r.witnesses.emplace_back("(B)", "H_" + sub(h.b_witness->degree) + "(E(" +
                                            inst.index->object_name(h.b_witness->index_object) + ", " +
                                            inst.orbit.category->object_name(h.b_witness->orbit_object) +
                                            ")) = " + h.b_witness->homology.to_string());
    r.verdicts.push_back({"(C) finite isotropy, finitely many orbit types", h.c_pass,
                          std::to_string(h.orbit_types) + " orbit types"});
    r.verdicts.push_back({"(D) centralizer quotients finitely generated", h.d_pass.value_or(true),
                          "degrees ≤ " + std::to_string(inst.n + inst.d - inst.big_n)});
    for (std::size_t k = 0; k < h.d_homology.size(); ++k)
        for (std::size_t p = 0; p < h.d_homology[k].size(); ++p)
            r.groups.emplace_back("H_" + std::to_string(p) + "(Z_G H \\ X^H), H = " +
                                      subgroup_name(inst.orbit.group, inst.orbit.subgroup(k)),
                                  h.d_homology[k][p].to_string());
    if (inst.conclusion == FgMode::Almost)
        r.notes.push_back("uniform annihilator candidate " + h.annihilator.get_str());

    const SubAndProjection sp = sub_category_and_projection(inst.orbit.group, inst.orbit.family);
    BiFunctorComplex e = inst.e;
    e.coefficient = sp.orbit.category;
    const FactorizationReport fr = sub_factorization_check(sp, e, inst.e_valid_through);
    r.verdicts.push_back({"E(c, ?) factors over Sub(G) on homology", fr.pass(),
                          std::to_string(fr.pairs_checked) + " pairs checked"});
    for (const auto& v : fr.violations)
        r.witnesses.emplace_back("factorization",
                                 "H_" + sub(v.degree) + " at index object " + inst.index->object_name(v.index_object) +
                                     ": " + sp.orbit.category->morphism(v.first).name + " vs " +
                                     sp.orbit.category->morphism(v.second).name);
    r.notes.push_back("the homotopy-functor hypothesis is checked only through this homology-level factorization");

    const ComparisonReport c = verify_comparison(inst);
    r.verdicts.push_back({"t_* is a chain map", c.chain_map, ""});
    for (const auto& n : c.notes)
        r.notes.push_back(n);
    for (const auto& deg : c.degrees) {
        const bool ok = deg.map.verdict == MapVerdict::Isomorphism ||
                        (inst.conclusion == FgMode::Almost && deg.map.verdict == MapVerdict::AlmostIsomorphism);
        r.verdicts.push_back({"H_" + sub(deg.p) + "(t_*) " + to_string(deg.map.verdict), ok, ""});
        r.groups.emplace_back("H_" + sub(deg.p) + " source", deg.source.to_string());
        r.groups.emplace_back("H_" + sub(deg.p) + " target", deg.target.to_string());
        if (deg.map.verdict != MapVerdict::Isomorphism) {
            r.groups.emplace_back("H_" + sub(deg.p) + " kernel", deg.map.kernel.to_string());
            r.groups.emplace_back("H_" + sub(deg.p) + " cokernel", deg.map.cokernel.to_string());
        }
    }
}

void interchange_one(const std::string& name, const GradedSeqSpec& spec, std::optional<bool> expected, Report& r)
{
    const InterchangeReport ir = interchange_criterion(spec);
    std::string verdict = ir.surjective ? "surjective" : "not surjective";
    if (ir.i0)
        verdict += ", i_0 = " + std::to_string(*ir.i0);
    r.notes.push_back(name + ": " + verdict + "; " + ir.reason);
    if (expected)
        r.verdicts.push_back({name + " symbolic verdict", ir.surjective == *expected,
                              std::string("expected ") + (*expected ? "surjective" : "not surjective")});
    bool injective = true, consistent = true;
    for (const auto& w : ir.windows) {
        injective = injective && w.injective;
        consistent = consistent && w.consistent;
    }
    r.verdicts.push_back({name + " truncated maps injective", injective,
                          std::to_string(ir.windows.size()) + " windows"});
    r.verdicts.push_back({name + " windows agree with the symbolic verdict", consistent, ""});
    if (!ir.surjective && ir.witness_column) {
        const std::size_t i = 100, j = ir.witness_column(i);
        if (j != kNone)
            r.witnesses.emplace_back(name, "row i = " + std::to_string(i) + " meets column j = " + std::to_string(j));
    }
    const auto& last = ir.windows.back();
    r.groups.emplace_back(name + " window " + std::to_string(last.rows) + "×" + std::to_string(last.cols),
                          last.source.to_string());
}

void cmd_interchange(const Manifest& m, Report& r)
{
    if (m.sequences && m.sequences->interchange) {
        interchange_one("spec", *m.sequences->interchange, std::nullopt, r);
        return;
    }
    r.notes.push_back("no interchange spec given; running the three canonical specs");
    interchange_one("divergent m, bounded n", interchange_divergent_bounded(), true, r);
    interchange_one("constant m", interchange_constant_m(), false, r);
    interchange_one("divergent m, unbounded n", interchange_divergent_unbounded(), false, r);
}

void cmd_tor_probe(const Manifest& m, Report& r)
{
    const TorProbeParams t = m.sequences && m.sequences->tor_probe ? *m.sequences->tor_probe : TorProbeParams{2, 3, 3};
    const TorProbeReport a = tor_interchange_probe(t.prime, t.m, t.n);
    const std::string tag = "p = " + std::to_string(t.prime) + ", M = " + std::to_string(t.m) +
                            ", N = " + std::to_string(t.n);
    r.groups.emplace_back("S(M, N)", a.source.to_string());
    r.groups.emplace_back("T(M, N)", a.target.to_string());
    r.verdicts.push_back({"finite interchange map is an isomorphism", a.finite_isomorphism, tag});
    r.verdicts.push_back({"order(δ_N) = p^N", a.delta_order.get_str() == ppow(t.prime, t.n),
                          "order " + a.delta_order.get_str()});
    r.verdicts.push_back({"δ_N in the m ≤ M block iff M ≥ N", a.delta_in_image == (t.m >= t.n),
                          a.delta_in_image ? "member" : "not a member"});
    r.verdicts.push_back({"largest reachable order at n = N is p^min(M, N)",
                          a.max_reachable_order.get_str() == ppow(t.prime, std::min(t.m, t.n)),
                          a.max_reachable_order.get_str()});
    for (long mm = 2; mm <= std::max(t.m, t.n); ++mm) {
        const TorProbeReport s = tor_interchange_probe(t.prime, mm, t.n);
        r.witnesses.emplace_back("M = " + std::to_string(mm), s.delta_in_image ? "δ_N reached" : "δ_N not reached");
        if (s.delta_in_image != (mm >= t.n))
            r.verdicts.push_back({"membership boundary at M = " + std::to_string(mm), false, ""});
    }
    r.notes.push_back("finite truncations are isomorphisms; the failure is a double-limit phenomenon");
}

void cmd_classifying(const Manifest& m, const RunOptions& o, Report& r)
{
    IndexKind kind;
    std::size_t k = 0;
    if (m.icw && m.icw->kind == "classifying-model") {
        kind = m.icw->index;
        k = m.icw->truncation;
    } else if (m.category && (m.category->kind == "N" || m.category->kind == "RF")) {
        kind = index_kind_from_string(m.category->kind);
        k = m.category->truncation;
    } else {
        missing("icw (classifying-model) or category (N or RF)");
    }
    if (o.truncation)
        k = *o.truncation;
    const ClassifyingModel model = classifying_model(kind, k);
    const std::string name = "E" + to_string(kind) + " (K = " + std::to_string(k) + ")";
    for (int n = 0; n <= model.cw.dimension(); ++n)
        r.groups.emplace_back(name + " " + std::to_string(n) + "-cells", std::to_string(model.cw.num_cells(n)));
    r.notes.push_back(name + " has dimension " + std::to_string(model.cw.dimension()));
    const int top = o.degree ? *o.degree : *model.cw.valid_through;
    const ContractibilityReport c = contractibility_check(model.cw, top);
    r.verdicts.push_back({"evaluations contractible through degree " + std::to_string(top), c.pass, ""});
    if (c.witness)
        r.witnesses.emplace_back("contractibility", "H_" + sub(c.witness->second) + " at object " +
                                                        model.index.category->object_name(c.witness->first));
}

constexpr double kBorelSizeLimit = 12000;

void cmd_borel(const Manifest& m, const RunOptions& o, Report& r)
{
    if (!m.gcw)
        missing("gcw");
    const GCWComplex& x = m.gcw->complex;
    // The tensor presentation of bar ⊗ C_*(X) has about |G|^(K+2)·#cells generators and is dense.
    double cells = 0;
    for (int n = 0; n <= x.dimension(); ++n)
        cells += static_cast<double>(x.num_cells(n));
    const auto size = [&](std::size_t k) { return cells * std::pow(static_cast<double>(x.group.order()), k + 2.0); };
    std::size_t k = static_cast<std::size_t>(x.dimension() + 3);
    if (o.truncation) {
        k = *o.truncation;
    } else {
        while (k > static_cast<std::size_t>(x.dimension() + 1) && size(k) > kBorelSizeLimit)
            --k;
        if (k < static_cast<std::size_t>(x.dimension() + 3))
            r.notes.push_back("default K lowered to " + std::to_string(k) + " to bound the bar complex");
    }
    if (size(k) > kBorelSizeLimit)
        throw InputError("borel-check: truncation K = " + std::to_string(k) + " is too large for |G| = " +
                         std::to_string(x.group.order()) + "; pass a smaller --truncation");
    std::function<Integer(int)> ann;
    if (m.sequences && !m.sequences->annihilator.empty()) {
        const std::vector<Integer> list = m.sequences->annihilator;
        ann = [list](int p) { return list[std::min<std::size_t>(static_cast<std::size_t>(p), list.size() - 1)]; };
    } else {
        r.notes.push_back("default annihilator d(p) = |G|^(p+1)");
    }
    const BorelCheckReport b = borel_vs_quotient_check(x, k, ann);
    r.notes.push_back("K = " + std::to_string(k) + ", faithful through degree " + std::to_string(b.valid_through));
    for (const auto& d : b.degrees) {
        if (o.degree && d.p != *o.degree)
            continue;
        const std::string p = sub(d.p);
        r.groups.emplace_back("H_" + p + "(EG ×_G X)", d.borel.to_string());
        r.groups.emplace_back("H_" + p + "(X/G)", d.quotient.to_string());
        r.groups.emplace_back("ker H_" + p + "(pr_X)", d.kernel.to_string());
        r.groups.emplace_back("coker H_" + p + "(pr_X)", d.cokernel.to_string());
        r.verdicts.push_back({"H_" + p + "(pr_X) kernel and cokernel killed by " + d.annihilator.get_str(),
                              d.annihilated, ""});
    }
}

} // namespace

Report run(const std::string& command, const Manifest& m, const RunOptions& options)
{
    Report r;
    r.command = command;
    r.digest = "fnv1a:" + fnv1a_hex(serialize_manifest(m));
    if (command == "validate")
        cmd_validate(m, r);
    else if (command == "homology")
        cmd_homology(m, options, r);
    else if (command == "bredon")
        cmd_bredon(m, options, r);
    else if (command == "tor")
        cmd_tor(m, options, r);
    else if (command == "tensor")
        cmd_tensor(m, r);
    else if (command == "hom")
        cmd_hom(m, r);
    else if (command == "verify-theorem")
        cmd_verify(m, options, r);
    else if (command == "demo-interchange")
        cmd_interchange(m, r);
    else if (command == "demo-tor-probe")
        cmd_tor_probe(m, r);
    else if (command == "demo-classifying")
        cmd_classifying(m, options, r);
    else if (command == "borel-check")
        cmd_borel(m, options, r);
    else
        throw InputError("unknown command '" + command + "'");
    return r;
}

} // namespace orbifunctor
