#include "orbifunctor/cli/manifest.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <nlohmann/json.hpp>

#include "orbifunctor/cells/examples.hpp"
#include "orbifunctor/cells/models.hpp"
#include "orbifunctor/fincat/standard.hpp"

namespace orbifunctor {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- reading

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw ManifestError("field " + (path.empty() ? std::string("/") : path), what);
}

/// A JSON value with its field path for diagnostics.
struct Node {
    const Json* j;
    std::string path;

    const Json& operator*() const { return *j; }

    Node at(const std::string& key) const
    {
        if (!j->is_object())
            fail(path, "expected an object");
        auto it = j->find(key);
        if (it == j->end())
            fail(path + "/" + key, "missing field");
        return {&*it, path + "/" + key};
    }
    std::optional<Node> find(const std::string& key) const
    {
        if (!j->is_object())
            fail(path, "expected an object");
        auto it = j->find(key);
        if (it == j->end())
            return std::nullopt;
        return Node{&*it, path + "/" + key};
    }
    std::size_t size() const
    {
        if (!j->is_array())
            fail(path, "expected an array");
        return j->size();
    }
    Node operator[](std::size_t i) const { return {&(*j)[i], path + "/" + std::to_string(i)}; }

    /// Rejects fields outside `allowed`.
    void only(std::initializer_list<const char*> allowed) const
    {
        if (!j->is_object())
            fail(path, "expected an object");
        for (const auto& [key, value] : j->items()) {
            (void)value;
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                fail(path + "/" + key, "unknown field");
        }
    }
};

Integer integer(const Node& n)
{
    const Json& j = *n;
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned())
        return Integer(std::to_string(j.get<unsigned long long>()));
    if (!j.is_string())
        fail(n.path, "expected an integer as a decimal string");
    const std::string s = j.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                          [](char c) { return c >= '0' && c <= '9'; }))
        fail(n.path, "'" + s + "' is not a decimal integer");
    return Integer(s);
}

long small(const Node& n, long lo, long hi)
{
    const Integer v = integer(n);
    if (v < lo || v > hi)
        fail(n.path, "value " + v.get_str() + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v.get_si();
}

constexpr long kIndexLimit = 1L << 30;

std::size_t index(const Node& n, std::size_t bound = static_cast<std::size_t>(kIndexLimit))
{
    if (bound == 0)
        fail(n.path, "no valid index exists here");
    return static_cast<std::size_t>(small(n, 0, static_cast<long>(bound) - 1));
}

std::string str(const Node& n)
{
    if (!n.j->is_string())
        fail(n.path, "expected a string");
    return n.j->get<std::string>();
}

std::string kind_of(const Node& n, const std::string& fallback = "explicit")
{
    auto k = n.find("kind");
    return k ? str(*k) : fallback;
}

std::vector<std::size_t> index_list(const Node& n, std::size_t bound = static_cast<std::size_t>(kIndexLimit))
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n.size(); ++i)
        out.push_back(index(n[i], bound));
    return out;
}

CyclicSum orders(const Node& n)
{
    std::vector<Integer> out;
    for (std::size_t i = 0; i < n.size(); ++i) {
        out.push_back(integer(n[i]));
        if (out.back() < 0)
            fail(n[i].path, "orders must be nonnegative (0 means Z)");
    }
    return CyclicSum(std::move(out));
}

IntMatrix matrix(const Node& n, std::size_t rows, std::size_t cols)
{
    if (n.size() != rows)
        fail(n.path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(n.size()));
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Node row = n[r];
        if (row.size() != cols)
            fail(row.path, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = integer(row[c]);
    }
    return m;
}

Variance variance(const Node& n)
{
    const std::string s = str(n);
    if (s == "covariant")
        return Variance::Covariant;
    if (s == "contravariant")
        return Variance::Contravariant;
    fail(n.path, "expected covariant or contravariant");
}

/// Turns library InputErrors raised while building an object into located ones.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ManifestError&) {
        throw;
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

void require_ok(const std::string& path, const ValidationReport& r)
{
    if (!r.ok)
        fail(path, r.message);
}

// ---------------------------------------------------------------- writing

Json num(const Integer& v)
{
    return v.get_str();
}

Json num(long v)
{
    return std::to_string(v);
}

Json num(std::size_t v)
{
    return std::to_string(v);
}

Json num(int v)
{
    return std::to_string(v);
}

Json write_indices(const std::vector<std::size_t>& v)
{
    Json a = Json::array();
    for (auto x : v)
        a.push_back(num(x));
    return a;
}

Json write_orders(const CyclicSum& s)
{
    Json a = Json::array();
    for (const auto& o : s.orders())
        a.push_back(num(o));
    return a;
}

Json write_matrix(const IntMatrix& m)
{
    Json a = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(num(m(r, c)));
        a.push_back(std::move(row));
    }
    return a;
}

// ---------------------------------------------------------------- sections

GroupSection read_group(const Node& n)
{
    GroupSection g;
    g.kind = kind_of(n);
    const std::string& k = g.kind;
    if (k == "trivial") {
        n.only({"kind"});
        g.group = FinGroup::trivial();
    } else if (k == "cyclic" || k == "symmetric" || k == "dihedral") {
        n.only({"kind", "n"});
        g.parameter = static_cast<std::size_t>(small(n.at("n"), 1, static_cast<long>(kGroupOrderBound)));
        g.group = located(n.path, [&] {
            return k == "cyclic" ? FinGroup::cyclic(g.parameter)
                   : k == "symmetric" ? FinGroup::symmetric(g.parameter)
                                      : FinGroup::dihedral(g.parameter);
        });
    } else if (k == "permutations") {
        n.only({"kind", "generators"});
        const Node gens = n.at("generators");
        for (std::size_t i = 0; i < gens.size(); ++i)
            g.generators.push_back(index_list(gens[i]));
        g.group = located(gens.path, [&] { return FinGroup::from_permutations(g.generators); });
    } else if (k == "explicit") {
        n.only({"kind", "table", "names"});
        const Node t = n.at("table");
        std::vector<std::vector<Element>> table;
        for (std::size_t i = 0; i < t.size(); ++i)
            table.push_back(index_list(t[i], t.size()));
        std::vector<std::string> names;
        if (auto nm = n.find("names"))
            for (std::size_t i = 0; i < nm->size(); ++i)
                names.push_back(str((*nm)[i]));
        g.group = located(t.path, [&] { return FinGroup(std::move(table), std::move(names)); });
    } else {
        fail(n.path + "/kind", "unknown group kind '" + k + "'");
    }
    if (g.group.order() > kGroupOrderBound)
        fail(n.path, "group order exceeds " + std::to_string(kGroupOrderBound));
    return g;
}

Json write_group(const GroupSection& g)
{
    Json j;
    j["kind"] = g.kind;
    if (g.kind == "cyclic" || g.kind == "symmetric" || g.kind == "dihedral") {
        j["n"] = num(g.parameter);
    } else if (g.kind == "permutations") {
        Json a = Json::array();
        for (const auto& p : g.generators)
            a.push_back(write_indices(p));
        j["generators"] = a;
    } else if (g.kind == "explicit") {
        Json t = Json::array();
        for (const auto& row : g.group.table())
            t.push_back(write_indices(row));
        j["table"] = t;
        Json names = Json::array();
        for (Element x = 0; x < g.group.order(); ++x)
            names.push_back(g.group.name(x));
        j["names"] = names;
    }
    return j;
}

Subgroup read_subgroup(const Node& n, const FinGroup& g)
{
    Subgroup h = index_list(n, g.order());
    std::sort(h.begin(), h.end());
    if (!is_subgroup(g, h))
        fail(n.path, "not a subgroup");
    return h;
}

Json write_subgroup(const Subgroup& h)
{
    return write_indices(h);
}

FamilySection read_family(const Node& n, const FinGroup& g, const std::optional<GcwSection>& gcw)
{
    FamilySection f;
    f.kind = kind_of(n);
    if (f.kind == "all") {
        n.only({"kind"});
        f.family = all_subgroups(g);
    } else if (f.kind == "isotropy") {
        n.only({"kind"});
        if (!gcw)
            fail(n.path, "an isotropy family needs a gcw section");
        f.family = isotropy_family(gcw->complex);
    } else if (f.kind == "explicit") {
        n.only({"kind", "members"});
        const Node m = n.at("members");
        for (std::size_t i = 0; i < m.size(); ++i)
            f.family.members.push_back(read_subgroup(m[i], g));
        std::sort(f.family.members.begin(), f.family.members.end(), [](const Subgroup& a, const Subgroup& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        std::string why;
        if (!is_family(g, f.family, &why))
            fail(m.path, why);
    } else {
        fail(n.path + "/kind", "unknown family kind '" + f.kind + "'");
    }
    return f;
}

Json write_family(const FamilySection& f)
{
    Json j;
    j["kind"] = f.kind;
    if (f.kind == "explicit") {
        Json a = Json::array();
        for (const auto& h : f.family.members)
            a.push_back(write_subgroup(h));
        j["members"] = a;
    }
    return j;
}

CategoryPtr read_explicit_category(const Node& n)
{
    std::vector<std::string> objects;
    const Node o = n.at("objects");
    for (std::size_t i = 0; i < o.size(); ++i)
        objects.push_back(str(o[i]));
    const std::size_t no = objects.size();
    std::vector<Morphism> morphisms;
    const Node ms = n.at("morphisms");
    for (std::size_t i = 0; i < ms.size(); ++i) {
        ms[i].only({"name", "dom", "cod"});
        morphisms.push_back({index(ms[i].at("dom"), no), index(ms[i].at("cod"), no),
                             ms[i].find("name") ? str(ms[i].at("name")) : std::string()});
    }
    const std::size_t nm = morphisms.size();
    const std::vector<MorphismId> identities = index_list(n.at("identities"), nm);
    if (identities.size() != no)
        fail(n.path + "/identities", "expected one identity per object");
    std::vector<MorphismId> composition(nm * nm, kNone);
    const Node comp = n.at("composition");
    for (std::size_t i = 0; i < comp.size(); ++i) {
        const std::vector<std::size_t> t = index_list(comp[i], nm);
        if (t.size() != 3)
            fail(comp[i].path, "expected a triple [g, f, g∘f]");
        composition[t[0] * nm + t[1]] = t[2];
    }
    auto c = located(n.path, [&] {
        return std::make_shared<const FinCategory>(std::move(objects), std::move(morphisms), identities,
                                                   std::move(composition));
    });
    require_ok(n.path, validate_category(*c));
    return c;
}

Json write_explicit_category(const FinCategory& c)
{
    Json j;
    j["kind"] = "explicit";
    Json o = Json::array();
    for (const auto& name : c.object_names())
        o.push_back(name);
    j["objects"] = o;
    Json ms = Json::array();
    for (const auto& m : c.morphisms()) {
        Json e;
        e["name"] = m.name;
        e["dom"] = num(m.dom);
        e["cod"] = num(m.cod);
        ms.push_back(e);
    }
    j["morphisms"] = ms;
    std::vector<std::size_t> ids;
    for (ObjectId x = 0; x < c.num_objects(); ++x)
        ids.push_back(c.identity(x));
    j["identities"] = write_indices(ids);
    Json comp = Json::array();
    for (MorphismId g = 0; g < c.num_morphisms(); ++g)
        for (MorphismId f = 0; f < c.num_morphisms(); ++f)
            if (c.composition_entry(g, f) != kNone)
                comp.push_back(write_indices({g, f, c.composition_entry(g, f)}));
    j["composition"] = comp;
    return j;
}

CategorySection read_category(const Node& n)
{
    CategorySection c;
    c.kind = kind_of(n);
    if (c.kind == "N" || c.kind == "RF") {
        n.only({"kind", "truncation"});
        c.truncation = static_cast<std::size_t>(small(n.at("truncation"), 0, 64));
        c.category = standard_category(index_kind_from_string(c.kind), c.truncation).category;
    } else if (c.kind == "point") {
        n.only({"kind"});
        c.category = std::make_shared<const FinCategory>(group_category(FinGroup::trivial()));
    } else if (c.kind == "explicit") {
        n.only({"kind", "objects", "morphisms", "identities", "composition"});
        c.category = read_explicit_category(n);
    } else {
        fail(n.path + "/kind", "unknown category kind '" + c.kind + "'");
    }
    return c;
}

Json write_category(const CategorySection& c)
{
    if (c.kind == "explicit")
        return write_explicit_category(*c.category);
    Json j;
    j["kind"] = c.kind;
    if (c.kind == "N" || c.kind == "RF")
        j["truncation"] = num(c.truncation);
    return j;
}

ModuleEntry read_module(const std::string& name, const Node& n, const Manifest& m)
{
    ModuleEntry e;
    e.name = name;
    e.kind = kind_of(n);
    e.over = str(n.at("over"));
    CategoryPtr base;
    if (e.over == "index")
        base = m.index_category;
    else if (e.over == "orbit")
        base = m.orbit ? m.orbit->category : nullptr;
    else if (e.over == "group")
        base = m.group_category;
    else
        fail(n.path + "/over", "expected index, orbit or group");
    if (!base)
        fail(n.path + "/over", "no " + e.over + " category is defined by this manifest");
    const Variance v = variance(n.at("variance"));
    if (e.kind == "constant") {
        n.only({"kind", "over", "variance", "value"});
        e.module = CatModule::constant(base, v, orders(n.at("value")));
    } else if (e.kind == "free") {
        n.only({"kind", "over", "variance", "generators"});
        e.generators = index_list(n.at("generators"), base->num_objects());
        e.module = free_module(base, e.generators, v).module;
    } else if (e.kind == "explicit") {
        n.only({"kind", "over", "variance", "values", "action"});
        e.module.base = base;
        e.module.variance = v;
        const Node vals = n.at("values");
        if (vals.size() != base->num_objects())
            fail(vals.path, "expected one value per object");
        for (std::size_t c = 0; c < vals.size(); ++c)
            e.module.values.push_back(orders(vals[c]));
        const Node act = n.at("action");
        if (act.size() != base->num_morphisms())
            fail(act.path, "expected one matrix per morphism");
        for (MorphismId f = 0; f < base->num_morphisms(); ++f) {
            const std::size_t rows = e.module.values[e.module.action_target(f)].size();
            const std::size_t cols = e.module.values[e.module.action_source(f)].size();
            e.module.action.push_back(matrix(act[f], rows, cols));
        }
        require_ok(n.path, validate_module(e.module));
    } else {
        fail(n.path + "/kind", "unknown module kind '" + e.kind + "'");
    }
    return e;
}

Json write_module(const ModuleEntry& e)
{
    Json j;
    j["kind"] = e.kind;
    j["over"] = e.over;
    j["variance"] = to_string(e.module.variance);
    if (e.kind == "constant") {
        j["value"] = write_orders(e.module.values.empty() ? CyclicSum() : e.module.values[0]);
    } else if (e.kind == "free") {
        j["generators"] = write_indices(e.generators);
    } else {
        Json vals = Json::array();
        for (const auto& v : e.module.values)
            vals.push_back(write_orders(v));
        j["values"] = vals;
        Json act = Json::array();
        for (const auto& a : e.module.action)
            act.push_back(write_matrix(a));
        j["action"] = act;
    }
    return j;
}

PlainChainComplex read_complex(const Node& n)
{
    n.only({"lo", "groups", "differentials"});
    const int lo = static_cast<int>(small(n.at("lo"), -1000, 1000));
    std::vector<CyclicSum> groups;
    const Node g = n.at("groups");
    for (std::size_t k = 0; k < g.size(); ++k)
        groups.push_back(orders(g[k]));
    std::vector<IntMatrix> ds;
    const Node d = n.at("differentials");
    if (d.size() + 1 != std::max<std::size_t>(groups.size(), 1))
        fail(d.path, "expected one differential between each pair of adjacent groups");
    for (std::size_t k = 0; k < d.size(); ++k)
        ds.push_back(matrix(d[k], groups[k].size(), groups[k + 1].size()));
    PlainChainComplex c(lo, std::move(groups), std::move(ds));
    std::string why;
    if (!c.is_valid(&why))
        fail(n.path, why);
    return c;
}

Json write_complex(const PlainChainComplex& c)
{
    Json j;
    j["lo"] = num(c.lo());
    Json g = Json::array(), d = Json::array();
    for (int p = c.lo(); p <= c.hi(); ++p) {
        g.push_back(write_orders(c.group(p)));
        if (p > c.lo())
            d.push_back(write_matrix(c.differential(p)));
    }
    j["groups"] = g;
    j["differentials"] = d;
    return j;
}

template <class Face, class Make>
std::vector<std::vector<std::vector<Face>>> read_boundary(const Node& b, const std::vector<std::size_t>& counts, Make make)
{
    if (b.size() != counts.size())
        fail(b.path, "expected one boundary list per dimension");
    std::vector<std::vector<std::vector<Face>>> out(counts.size());
    if (!counts.empty() && b[0].size() != 0)
        fail(b[0].path, "0-cells have no boundary");
    for (std::size_t n = 1; n < counts.size(); ++n) {
        const Node dim = b[n];
        if (dim.size() != counts[n])
            fail(dim.path, "expected one face list per cell");
        for (std::size_t k = 0; k < dim.size(); ++k) {
            out[n].emplace_back();
            for (std::size_t f = 0; f < dim[k].size(); ++f) {
                const Node t = dim[k][f];
                if (t.size() != 3)
                    fail(t.path, "expected a face triple [coefficient, face, morphism]");
                out[n][k].push_back(make(integer(t[0]), index(t[1], counts[n - 1]), t[2]));
            }
        }
    }
    return out;
}

template <class Face, class Third>
Json write_boundary(const std::vector<std::vector<std::vector<Face>>>& b, Third third)
{
    Json out = Json::array();
    for (const auto& dim : b) {
        Json d = Json::array();
        for (const auto& cell : dim) {
            Json c = Json::array();
            for (const auto& f : cell)
                c.push_back(Json::array({num(f.coefficient), num(f.face), num(third(f))}));
            d.push_back(c);
        }
        out.push_back(d);
    }
    return out;
}

void read_explicit_icw(const Node& n, const CategoryPtr& base, IcwSection& s)
{
    n.only({"kind", "cells", "boundary", "valid_through"});
    CatCWComplex& x = s.cw;
    x.base = base;
    const Node cells = n.at("cells");
    std::vector<std::size_t> counts;
    for (std::size_t d = 0; d < cells.size(); ++d) {
        x.cells.push_back(index_list(cells[d], base->num_objects()));
        counts.push_back(x.cells.back().size());
    }
    x.boundary = read_boundary<CellFace>(n.at("boundary"), counts, [&](Integer c, std::size_t f, const Node& t) {
        return CellFace{std::move(c), f, index(t, base->num_morphisms())};
    });
    if (auto v = n.find("valid_through"))
        x.valid_through = static_cast<int>(small(*v, 0, 1000));
    require_ok(n.path, validate_cw(x));
    located(n.path, [&] { return cellular_chain_complex(x); });
}

Json write_icw(const IcwSection& s)
{
    Json j;
    j["kind"] = s.kind;
    if (s.kind == "classifying-model") {
        j["index"] = to_string(s.index);
        j["truncation"] = num(s.truncation);
        return j;
    }
    Json cells = Json::array();
    for (const auto& d : s.cw.cells)
        cells.push_back(write_indices(d));
    j["cells"] = cells;
    j["boundary"] = write_boundary(s.cw.boundary, [](const CellFace& f) { return f.morphism; });
    if (s.cw.valid_through)
        j["valid_through"] = num(*s.cw.valid_through);
    return j;
}

GcwSection read_gcw(const Node& n, const std::optional<GroupSection>& group)
{
    GcwSection s;
    s.kind = kind_of(n);
    const std::string& k = s.kind;
    auto need_group = [&]() -> const FinGroup& {
        if (!group)
            fail(n.path, "gcw kind '" + k + "' needs a group section");
        return group->group;
    };
    if (k == "point" || k == "free-orbit") {
        n.only({"kind"});
        s.complex = k == "point" ? gcw_point(need_group()) : gcw_free_orbit(need_group());
    } else if (k == "reflection-sphere" || k == "antipodal-sphere") {
        n.only({"kind", "dimension"});
        s.dimension = static_cast<std::size_t>(small(n.at("dimension"), 1, 16));
        s.complex = k == "reflection-sphere" ? z2_reflection_sphere(s.dimension) : z2_antipodal_sphere(s.dimension);
    } else if (k == "s3-triangle") {
        n.only({"kind"});
        s.complex = s3_triangle();
    } else if (k == "explicit") {
        n.only({"kind", "cells", "boundary"});
        GCWComplex& x = s.complex;
        x.group = need_group();
        const Node cells = n.at("cells");
        std::vector<std::size_t> counts;
        for (std::size_t d = 0; d < cells.size(); ++d) {
            x.cells.emplace_back();
            for (std::size_t c = 0; c < cells[d].size(); ++c)
                x.cells.back().push_back(read_subgroup(cells[d][c], x.group));
            counts.push_back(x.cells.back().size());
        }
        x.boundary = read_boundary<OrbitFace>(n.at("boundary"), counts, [&](Integer c, std::size_t f, const Node& t) {
            return OrbitFace{std::move(c), f, index(t, x.group.order())};
        });
        require_ok(n.path, validate_gcw(x));
    } else {
        fail(n.path + "/kind", "unknown gcw kind '" + k + "'");
    }
    if (group && group->group.table() != s.complex.group.table())
        fail(n.path, "the complex's group differs from the group section");
    return s;
}

Json write_gcw(const GcwSection& s)
{
    Json j;
    j["kind"] = s.kind;
    if (s.kind == "reflection-sphere" || s.kind == "antipodal-sphere")
        j["dimension"] = num(s.dimension);
    if (s.kind != "explicit")
        return j;
    Json cells = Json::array();
    for (const auto& d : s.complex.cells) {
        Json a = Json::array();
        for (const auto& h : d)
            a.push_back(write_subgroup(h));
        cells.push_back(a);
    }
    j["cells"] = cells;
    j["boundary"] = write_boundary(s.complex.boundary, [](const OrbitFace& f) { return f.representative; });
    return j;
}

void read_explicit_bifunctor(const Node& n, BiFunctorComplex& e)
{
    n.only({"kind", "lo", "values", "index_action", "coefficient_action", "differentials"});
    const FinCategory& I = *e.index;
    const FinCategory& J = *e.coefficient;
    e.lo = static_cast<int>(small(n.at("lo"), -1000, 1000));
    const Node vals = n.at("values");
    for (std::size_t k = 0; k < vals.size(); ++k) {
        if (vals[k].size() != I.num_objects())
            fail(vals[k].path, "expected one row per index object");
        e.values.emplace_back();
        for (ObjectId i = 0; i < I.num_objects(); ++i) {
            if (vals[k][i].size() != J.num_objects())
                fail(vals[k][i].path, "expected one value per orbit object");
            e.values[k].emplace_back();
            for (ObjectId j = 0; j < J.num_objects(); ++j)
                e.values[k][i].push_back(orders(vals[k][i][j]));
        }
    }
    const std::size_t degrees = e.values.size();
    auto size = [&](std::size_t k, ObjectId i, ObjectId j) { return e.values[k][i][j].size(); };
    const Node ia = n.at("index_action"), ca = n.at("coefficient_action"), ds = n.at("differentials");
    if (ia.size() != degrees || ca.size() != degrees || ds.size() + 1 != std::max<std::size_t>(degrees, 1))
        fail(n.path, "action and differential lists do not match the number of degrees");
    e.index_action.resize(degrees);
    e.coefficient_action.resize(degrees);
    e.differentials.resize(ds.size());
    for (std::size_t k = 0; k < degrees; ++k) {
        if (ia[k].size() != I.num_morphisms())
            fail(ia[k].path, "expected one entry per index morphism");
        for (MorphismId f = 0; f < I.num_morphisms(); ++f) {
            e.index_action[k].emplace_back();
            if (ia[k][f].size() != J.num_objects())
                fail(ia[k][f].path, "expected one matrix per orbit object");
            for (ObjectId j = 0; j < J.num_objects(); ++j)
                e.index_action[k][f].push_back(matrix(ia[k][f][j], size(k, I.dom(f), j), size(k, I.cod(f), j)));
        }
        if (ca[k].size() != I.num_objects())
            fail(ca[k].path, "expected one entry per index object");
        for (ObjectId i = 0; i < I.num_objects(); ++i) {
            e.coefficient_action[k].emplace_back();
            if (ca[k][i].size() != J.num_morphisms())
                fail(ca[k][i].path, "expected one matrix per orbit morphism");
            for (MorphismId g = 0; g < J.num_morphisms(); ++g)
                e.coefficient_action[k][i].push_back(
                    matrix(ca[k][i][g], size(k, i, J.cod(g)), size(k, i, J.dom(g))));
        }
        if (k + 1 >= degrees)
            continue;
        if (ds[k].size() != I.num_objects())
            fail(ds[k].path, "expected one entry per index object");
        e.differentials[k].resize(I.num_objects());
        for (ObjectId i = 0; i < I.num_objects(); ++i) {
            if (ds[k][i].size() != J.num_objects())
                fail(ds[k][i].path, "expected one matrix per orbit object");
            for (ObjectId j = 0; j < J.num_objects(); ++j)
                e.differentials[k][i].push_back(matrix(ds[k][i][j], size(k, i, j), size(k + 1, i, j)));
        }
    }
    require_ok(n.path, validate_bifunctor(e));
}

Json write_bifunctor(const BifunctorSection& s)
{
    Json j;
    j["kind"] = s.kind;
    if (s.kind == "transport-nerve")
        j["length"] = num(s.length);
    if (s.kind != "explicit")
        return j;
    const BiFunctorComplex& e = s.complex;
    j["lo"] = num(e.lo);
    auto nest = [](const auto& v3, auto leaf) {
        Json a = Json::array();
        for (const auto& v2 : v3) {
            Json b = Json::array();
            for (const auto& v1 : v2) {
                Json c = Json::array();
                for (const auto& x : v1)
                    c.push_back(leaf(x));
                b.push_back(c);
            }
            a.push_back(b);
        }
        return a;
    };
    j["values"] = nest(e.values, write_orders);
    j["index_action"] = nest(e.index_action, write_matrix);
    j["coefficient_action"] = nest(e.coefficient_action, write_matrix);
    j["differentials"] = nest(e.differentials, write_matrix);
    return j;
}

InstanceSection read_instance(const Node& n)
{
    n.only({"d", "n", "N", "assumption", "conclusion", "e_valid_through"});
    InstanceSection s;
    s.d = static_cast<int>(small(n.at("d"), 0, 64));
    s.n = static_cast<int>(small(n.at("n"), 0, 64));
    s.big_n = static_cast<int>(small(n.at("N"), -64, 64));
    if (auto a = n.find("assumption"))
        s.assumption = located(a->path, [&] { return fg_mode_from_string(str(*a)); });
    if (auto c = n.find("conclusion"))
        s.conclusion = located(c->path, [&] { return fg_mode_from_string(str(*c)); });
    if (auto v = n.find("e_valid_through"))
        s.e_valid_through = static_cast<int>(small(*v, -1, 1000));
    return s;
}

Json write_instance(const InstanceSection& s)
{
    Json j;
    j["d"] = num(s.d);
    j["n"] = num(s.n);
    j["N"] = num(s.big_n);
    j["assumption"] = to_string(s.assumption);
    j["conclusion"] = to_string(s.conclusion);
    if (s.e_valid_through)
        j["e_valid_through"] = num(*s.e_valid_through);
    return j;
}

IntSequence read_sequence(const Node& n)
{
    n.only({"prefix", "tail", "bound"});
    IntSequence s;
    const Node p = n.at("prefix");
    for (std::size_t i = 0; i < p.size(); ++i)
        s.prefix.push_back(small(p[i], 0, kIndexLimit));
    const std::string tail = str(n.at("tail"));
    if (tail == "bounded-by") {
        s.tail = IntSequence::Tail::BoundedBy;
        s.bound = small(n.at("bound"), 0, kIndexLimit);
    } else if (tail == "unbounded") {
        s.tail = IntSequence::Tail::Unbounded;
        if (n.find("bound"))
            fail(n.path + "/bound", "an unbounded tail takes no bound");
    } else {
        fail(n.path + "/tail", "expected bounded-by or unbounded");
    }
    return s;
}

Json write_sequence(const IntSequence& s)
{
    Json j;
    Json p = Json::array();
    for (long v : s.prefix)
        p.push_back(num(v));
    j["prefix"] = p;
    j["tail"] = s.tail == IntSequence::Tail::BoundedBy ? "bounded-by" : "unbounded";
    if (s.tail == IntSequence::Tail::BoundedBy)
        j["bound"] = num(s.bound);
    return j;
}

FpAbGroup read_ab_group(const Node& n)
{
    std::vector<Integer> torsion;
    if (auto t = n.find("torsion"))
        for (std::size_t i = 0; i < t->size(); ++i)
            torsion.push_back(integer((*t)[i]));
    const std::size_t rank = n.find("rank") ? static_cast<std::size_t>(small(n.at("rank"), 0, 1 << 16)) : 0;
    std::vector<Integer> orders(rank, 0);
    orders.insert(orders.end(), torsion.begin(), torsion.end());
    for (const auto& o : torsion)
        if (o < 1)
            fail(n.path + "/torsion", "torsion orders must be positive");
    return CyclicSum(orders).canonical();
}

SequencesSection read_sequences(const Node& n)
{
    n.only({"interchange", "tor_probe", "annihilator"});
    SequencesSection s;
    if (auto i = n.find("interchange")) {
        i->only({"m", "n", "profile", "lower_bound", "p"});
        GradedSeqSpec spec;
        spec.m = read_sequence(i->at("m"));
        spec.n = read_sequence(i->at("n"));
        const Node prof = i->at("profile");
        for (std::size_t k = 0; k < prof.size(); ++k) {
            prof[k].only({"degree", "rank", "torsion"});
            const long q = small(prof[k].at("degree"), -kIndexLimit, kIndexLimit);
            if (spec.profile.count(q))
                fail(prof[k].path, "degree listed twice");
            spec.profile[q] = read_ab_group(prof[k]);
        }
        spec.lower_bound = small(i->at("lower_bound"), -kIndexLimit, kIndexLimit);
        spec.p = i->find("p") ? small(i->at("p"), -kIndexLimit, kIndexLimit) : 0;
        located(i->path, [&] {
            validate_spec(spec);
            return 0;
        });
        s.interchange = std::move(spec);
    }
    if (auto t = n.find("tor_probe")) {
        t->only({"prime", "m", "n"});
        s.tor_probe = TorProbeParams{small(t->at("prime"), 2, 1 << 20), small(t->at("m"), 2, kTorProbeBound),
                                     small(t->at("n"), 2, kTorProbeBound)};
    }
    if (auto a = n.find("annihilator"))
        for (std::size_t i = 0; i < a->size(); ++i) {
            s.annihilator.push_back(integer((*a)[i]));
            if (s.annihilator.back() < 1)
                fail((*a)[i].path, "annihilators must be positive");
        }
    return s;
}

Json write_sequences(const SequencesSection& s)
{
    Json j = Json::object();
    if (s.interchange) {
        const GradedSeqSpec& g = *s.interchange;
        Json i;
        i["m"] = write_sequence(g.m);
        i["n"] = write_sequence(g.n);
        Json prof = Json::array();
        for (const auto& [q, grp] : g.profile) {
            Json e;
            e["degree"] = num(q);
            e["rank"] = num(grp.rank());
            Json t = Json::array();
            for (const auto& o : grp.torsion())
                t.push_back(num(o));
            e["torsion"] = t;
            prof.push_back(e);
        }
        i["profile"] = prof;
        i["lower_bound"] = num(g.lower_bound);
        i["p"] = num(g.p);
        j["interchange"] = i;
    }
    if (s.tor_probe) {
        Json t;
        t["prime"] = num(s.tor_probe->prime);
        t["m"] = num(s.tor_probe->m);
        t["n"] = num(s.tor_probe->n);
        j["tor_probe"] = t;
    }
    if (!s.annihilator.empty()) {
        Json a = Json::array();
        for (const auto& v : s.annihilator)
            a.push_back(num(v));
        j["annihilator"] = a;
    }
    return j;
}

std::size_t line_of(const std::string& text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const std::set<std::string> kSections{"version", "group",    "family",    "category", "module",   "complex",
                                      "icw",     "gcw",      "bifunctor", "instance", "sequences"};

} // namespace

const ModuleEntry* Manifest::find_module(const std::string& name) const
{
    for (const auto& m : modules)
        if (m.name == name)
            return &m;
    return nullptr;
}

TheoremInstance Manifest::theorem_instance() const
{
    if (!instance)
        fail("/instance", "missing section");
    if (!icw)
        fail("/icw", "the theorem needs D as an icw section");
    if (!gcw)
        fail("/gcw", "the theorem needs X as a gcw section");
    if (!bifunctor)
        fail("/bifunctor", "the theorem needs E as a bifunctor section");
    TheoremInstance inst;
    inst.index = index_category;
    inst.d_complex = cellular_chain_complex(icw->cw);
    inst.d = instance->d;
    inst.orbit = *orbit;
    inst.space = gcw->complex;
    inst.e = bifunctor->complex;
    inst.n = instance->n;
    inst.big_n = instance->big_n;
    inst.assumption = instance->assumption;
    inst.conclusion = instance->conclusion;
    inst.e_valid_through = instance->e_valid_through;
    if (!inst.e_valid_through && bifunctor->kind == "transport-nerve")
        inst.e_valid_through = static_cast<int>(bifunctor->length) - 1;
    located("/instance", [&] {
        finalize_instance(inst);
        return 0;
    });
    return inst;
}

Manifest parse_manifest(const std::string& text)
{
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ManifestError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)), e.what());
    }
    if (!root.is_object())
        throw ManifestError("line 1", "the manifest must be a JSON object");
    for (const auto& [key, value] : root.items()) {
        (void)value;
        if (!kSections.count(key))
            throw ManifestError("section " + key, "unknown section");
    }
    const Node top{&root, ""};
    Manifest m;
    m.version = str(top.at("version"));
    if (m.version != kManifestVersion)
        fail("/version", "unsupported version '" + m.version + "' (expected " + kManifestVersion + ")");

    if (auto g = top.find("group"))
        m.group = read_group(*g);
    if (auto x = top.find("gcw"))
        m.gcw = read_gcw(*x, m.group);
    if (m.group)
        m.effective_group = m.group->group;
    else if (m.gcw)
        m.effective_group = m.gcw->complex.group;

    if (auto f = top.find("family")) {
        if (!m.effective_group)
            fail("/family", "a family needs a group");
        m.family = read_family(*f, *m.effective_group, m.gcw);
    }
    if (m.effective_group) {
        const SubgroupFamily fam = m.family ? m.family->family : all_subgroups(*m.effective_group);
        m.orbit = orbit_category(*m.effective_group, fam);
        m.group_category = std::make_shared<const FinCategory>(group_category(*m.effective_group));
    }

    if (auto c = top.find("category"))
        m.category = read_category(*c);
    if (auto x = top.find("icw")) {
        IcwSection s;
        s.kind = kind_of(*x);
        if (s.kind == "classifying-model") {
            x->only({"kind", "index", "truncation"});
            s.index = located(x->path + "/index", [&] { return index_kind_from_string(str(x->at("index"))); });
            s.truncation = static_cast<std::size_t>(small(x->at("truncation"), 1, 64));
            ClassifyingModel model = classifying_model(s.index, s.truncation);
            if (m.category && (m.category->kind != to_string(s.index) || m.category->truncation != s.truncation))
                fail(x->path, "the classifying model's index category differs from the category section");
            s.cw = std::move(model.cw);
            if (m.category)
                m.category->category = s.cw.base;
            m.index_category = s.cw.base;
        } else if (s.kind == "explicit") {
            if (!m.category)
                fail(x->path, "an explicit icw needs a category section");
            m.index_category = m.category->category;
            read_explicit_icw(*x, m.index_category, s);
        } else {
            fail(x->path + "/kind", "unknown icw kind '" + s.kind + "'");
        }
        m.icw = std::move(s);
    }
    if (!m.index_category && m.category)
        m.index_category = m.category->category;

    if (auto mods = top.find("module")) {
        if (!(**mods).is_object())
            fail(mods->path, "expected an object of named modules");
        for (const auto& [name, value] : (**mods).items())
            m.modules.push_back(read_module(name, Node{&value, mods->path + "/" + name}, m));
    }
    if (auto c = top.find("complex"))
        m.complex = read_complex(*c);

    if (auto b = top.find("bifunctor")) {
        BifunctorSection s;
        s.kind = kind_of(*b);
        if (!m.index_category || !m.orbit)
            fail(b->path, "a bifunctor needs an index category and a group");
        if (s.kind == "transport-components") {
            b->only({"kind"});
            s.complex = transport_components_bifunctor(m.index_category, *m.orbit);
        } else if (s.kind == "transport-nerve") {
            b->only({"kind", "length"});
            s.length = static_cast<std::size_t>(small(b->at("length"), 0, 16));
            s.complex = transport_nerve_bifunctor(m.index_category, *m.orbit, s.length);
        } else if (s.kind == "sign-twist") {
            b->only({"kind"});
            s.complex = located(b->path, [&] { return z2_sign_twist_bifunctor(m.index_category, *m.orbit); });
        } else if (s.kind == "explicit") {
            s.complex.index = m.index_category;
            s.complex.coefficient = m.orbit->category;
            read_explicit_bifunctor(*b, s.complex);
        } else {
            fail(b->path + "/kind", "unknown bifunctor kind '" + s.kind + "'");
        }
        m.bifunctor = std::move(s);
    }
    if (auto i = top.find("instance"))
        m.instance = read_instance(*i);
    if (auto s = top.find("sequences"))
        m.sequences = read_sequences(*s);
    return m;
}

std::string serialize_manifest(const Manifest& m)
{
    Json j;
    j["version"] = m.version;
    if (m.group)
        j["group"] = write_group(*m.group);
    if (m.family)
        j["family"] = write_family(*m.family);
    if (m.category)
        j["category"] = write_category(*m.category);
    if (!m.modules.empty()) {
        Json mods = Json::object();
        for (const auto& e : m.modules)
            mods[e.name] = write_module(e);
        j["module"] = mods;
    }
    if (m.complex)
        j["complex"] = write_complex(*m.complex);
    if (m.icw)
        j["icw"] = write_icw(*m.icw);
    if (m.gcw)
        j["gcw"] = write_gcw(*m.gcw);
    if (m.bifunctor)
        j["bifunctor"] = write_bifunctor(*m.bifunctor);
    if (m.instance)
        j["instance"] = write_instance(*m.instance);
    if (m.sequences)
        j["sequences"] = write_sequences(*m.sequences);
    return j.dump(2) + "\n";
}

namespace {

bool same(const FinCategory& a, const FinCategory& b)
{
    if (a.object_names() != b.object_names() || a.num_morphisms() != b.num_morphisms())
        return false;
    for (MorphismId f = 0; f < a.num_morphisms(); ++f)
        if (a.dom(f) != b.dom(f) || a.cod(f) != b.cod(f) || a.morphism(f).name != b.morphism(f).name)
            return false;
    for (ObjectId c = 0; c < a.num_objects(); ++c)
        if (a.identity(c) != b.identity(c))
            return false;
    for (MorphismId g = 0; g < a.num_morphisms(); ++g)
        for (MorphismId f = 0; f < a.num_morphisms(); ++f)
            if (a.composition_entry(g, f) != b.composition_entry(g, f))
                return false;
    return true;
}

bool same(const CategoryPtr& a, const CategoryPtr& b)
{
    if (!a || !b)
        return !a && !b;
    return a == b || same(*a, *b);
}

bool same(const CatModule& a, const CatModule& b)
{
    return same(a.base, b.base) && a.variance == b.variance && a.values == b.values && a.action == b.action;
}

bool same(const PlainChainComplex& a, const PlainChainComplex& b)
{
    if (a.lo() != b.lo() || a.hi() != b.hi())
        return false;
    for (int p = a.lo(); p <= a.hi(); ++p)
        if (!(a.group(p) == b.group(p)) || !(a.differential(p) == b.differential(p)))
            return false;
    return true;
}

bool same(const CellFace& a, const CellFace& b)
{
    return a.coefficient == b.coefficient && a.face == b.face && a.morphism == b.morphism;
}

bool same(const OrbitFace& a, const OrbitFace& b)
{
    return a.coefficient == b.coefficient && a.face == b.face && a.representative == b.representative;
}

template <class F>
bool same_boundary(const std::vector<std::vector<std::vector<F>>>& a, const std::vector<std::vector<std::vector<F>>>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t n = 0; n < a.size(); ++n) {
        if (a[n].size() != b[n].size())
            return false;
        for (std::size_t k = 0; k < a[n].size(); ++k)
            if (!std::equal(a[n][k].begin(), a[n][k].end(), b[n][k].begin(), b[n][k].end(),
                            [](const F& x, const F& y) { return same(x, y); }))
                return false;
    }
    return true;
}

bool same(const CatCWComplex& a, const CatCWComplex& b)
{
    return same(a.base, b.base) && a.cells == b.cells && same_boundary(a.boundary, b.boundary) &&
           a.valid_through == b.valid_through;
}

bool same(const GCWComplex& a, const GCWComplex& b)
{
    return a.group.table() == b.group.table() && a.cells == b.cells && same_boundary(a.boundary, b.boundary);
}

bool same(const BiFunctorComplex& a, const BiFunctorComplex& b)
{
    return same(a.index, b.index) && same(a.coefficient, b.coefficient) && a.lo == b.lo && a.values == b.values &&
           a.index_action == b.index_action && a.coefficient_action == b.coefficient_action &&
           a.differentials == b.differentials;
}

bool same(const IntSequence& a, const IntSequence& b)
{
    return a.prefix == b.prefix && a.tail == b.tail && (a.tail == IntSequence::Tail::Unbounded || a.bound == b.bound);
}

template <class T, class Eq>
bool same_opt(const std::optional<T>& a, const std::optional<T>& b, Eq eq)
{
    if (a.has_value() != b.has_value())
        return false;
    return !a || eq(*a, *b);
}

} // namespace

bool manifest_equal(const Manifest& a, const Manifest& b)
{
    if (a.version != b.version)
        return false;
    if (!same_opt(a.group, b.group, [](const GroupSection& x, const GroupSection& y) {
            return x.kind == y.kind && x.parameter == y.parameter && x.generators == y.generators &&
                   x.group.table() == y.group.table();
        }))
        return false;
    if (!same_opt(a.family, b.family, [](const FamilySection& x, const FamilySection& y) {
            return x.kind == y.kind && x.family.members == y.family.members;
        }))
        return false;
    if (!same_opt(a.category, b.category, [](const CategorySection& x, const CategorySection& y) {
            return x.kind == y.kind && x.truncation == y.truncation && same(x.category, y.category);
        }))
        return false;
    if (a.modules.size() != b.modules.size())
        return false;
    for (std::size_t i = 0; i < a.modules.size(); ++i) {
        const ModuleEntry &x = a.modules[i], &y = b.modules[i];
        if (x.name != y.name || x.over != y.over || x.kind != y.kind || x.generators != y.generators ||
            !same(x.module, y.module))
            return false;
    }
    if (!same_opt(a.complex, b.complex, [](const auto& x, const auto& y) { return same(x, y); }))
        return false;
    if (!same_opt(a.icw, b.icw, [](const IcwSection& x, const IcwSection& y) {
            return x.kind == y.kind && (x.kind != "classifying-model" || (x.index == y.index && x.truncation == y.truncation)) &&
                   same(x.cw, y.cw);
        }))
        return false;
    if (!same_opt(a.gcw, b.gcw, [](const GcwSection& x, const GcwSection& y) {
            return x.kind == y.kind && x.dimension == y.dimension && same(x.complex, y.complex);
        }))
        return false;
    if (!same_opt(a.bifunctor, b.bifunctor, [](const BifunctorSection& x, const BifunctorSection& y) {
            return x.kind == y.kind && x.length == y.length && same(x.complex, y.complex);
        }))
        return false;
    if (!same_opt(a.instance, b.instance, [](const InstanceSection& x, const InstanceSection& y) {
            return x.d == y.d && x.n == y.n && x.big_n == y.big_n && x.assumption == y.assumption &&
                   x.conclusion == y.conclusion && x.e_valid_through == y.e_valid_through;
        }))
        return false;
    return same_opt(a.sequences, b.sequences, [](const SequencesSection& x, const SequencesSection& y) {
        const bool inter = same_opt(x.interchange, y.interchange, [](const GradedSeqSpec& s, const GradedSeqSpec& t) {
            return same(s.m, t.m) && same(s.n, t.n) && s.profile == t.profile && s.lower_bound == t.lower_bound &&
                   s.p == t.p;
        });
        const bool probe = same_opt(x.tor_probe, y.tor_probe, [](const TorProbeParams& s, const TorProbeParams& t) {
            return s.prime == t.prime && s.m == t.m && s.n == t.n;
        });
        return inter && probe && x.annihilator == y.annihilator;
    });
}

std::vector<std::pair<std::string, ValidationReport>> validate_manifest(const Manifest& m)
{
    std::vector<std::pair<std::string, ValidationReport>> out;
    if (m.effective_group) {
        ValidationReport r;
        if (m.family && !is_family(*m.effective_group, m.family->family, &r.message))
            r.ok = false;
        out.emplace_back("family", r);
    }
    if (m.index_category)
        out.emplace_back("category", validate_category(*m.index_category));
    for (const auto& e : m.modules)
        out.emplace_back("module/" + e.name, validate_module(e.module));
    if (m.complex) {
        ValidationReport r;
        r.ok = m.complex->is_valid(&r.message);
        out.emplace_back("complex", r);
    }
    if (m.icw)
        out.emplace_back("icw", validate_cw(m.icw->cw));
    if (m.gcw) {
        ValidationReport r = validate_gcw(m.gcw->complex);
        if (r.ok && m.orbit)
            for (const auto& dim : m.gcw->complex.cells)
                for (const auto& h : dim)
                    if (r.ok && !m.orbit->family.contains(h)) {
                        r.ok = false;
                        r.message = "isotropy group " + subgroup_name(m.gcw->complex.group, h) +
                                    " lies outside the family";
                    }
        out.emplace_back("gcw", r);
    }
    if (m.bifunctor)
        out.emplace_back("bifunctor", validate_bifunctor(m.bifunctor->complex));
    if (m.instance) {
        ValidationReport r;
        try {
            m.theorem_instance();
        } catch (const InputError& e) {
            r.ok = false;
            r.message = e.what();
        }
        out.emplace_back("instance", r);
    }
    if (m.sequences && m.sequences->interchange) {
        ValidationReport r;
        try {
            validate_spec(*m.sequences->interchange);
        } catch (const InputError& e) {
            r.ok = false;
            r.message = e.what();
        }
        out.emplace_back("sequences", r);
    }
    return out;
}

} // namespace orbifunctor
