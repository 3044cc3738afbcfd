#include "orbifunctor/exact/abelian_group.hpp"

#include <map>
#include <set>
#include <sstream>

#include "orbifunctor/error.hpp"
#include "orbifunctor/exact/smith.hpp"

namespace orbifunctor {
namespace {

Integer reduce_mod(const Integer& x, const Integer& order)
{
    if (sgn(order) == 0)
        return x;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), order.get_mpz_t());
    return r;
}

Integer gcd_of(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm_of(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

} // namespace

// ---------------------------------------------------------------- CyclicSum

CyclicSum::CyclicSum(std::vector<Integer> orders)
    : orders_(std::move(orders))
{
    for (const auto& o : orders_)
        if (sgn(o) < 0)
            throw InputError("CyclicSum: negative order");
}

CyclicSum CyclicSum::free(std::size_t rank)
{
    return CyclicSum(std::vector<Integer>(rank, Integer(0)));
}

CyclicSum CyclicSum::cyclic(const Integer& order)
{
    return CyclicSum({order});
}

IntMatrix CyclicSum::relations() const
{
    std::size_t k = 0;
    for (const auto& o : orders_)
        if (sgn(o) != 0)
            ++k;
    IntMatrix r(orders_.size(), k);
    k = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i)
        if (sgn(orders_[i]) != 0)
            r(i, k++) = orders_[i];
    return r;
}

IntVector CyclicSum::reduce(std::span<const Integer> x) const
{
    if (x.size() != orders_.size())
        throw InputError("CyclicSum::reduce: length mismatch");
    IntVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = reduce_mod(x[i], orders_[i]);
    return out;
}

IntMatrix CyclicSum::reduce_rows(const IntMatrix& m) const
{
    if (m.rows() != orders_.size())
        throw InputError("CyclicSum::reduce_rows: row mismatch");
    IntMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (sgn(orders_[i]) != 0)
            for (std::size_t j = 0; j < m.cols(); ++j)
                out(i, j) = reduce_mod(m(i, j), orders_[i]);
    return out;
}

bool CyclicSum::admits(const IntMatrix& m, const CyclicSum& source) const
{
    if (m.rows() != size() || m.cols() != source.size())
        return false;
    for (std::size_t j = 0; j < source.size(); ++j) {
        const Integer& a = source.order(j);
        if (sgn(a) == 0)
            continue;
        for (std::size_t i = 0; i < size(); ++i) {
            Integer v = a * m(i, j);
            if (sgn(orders_[i]) == 0) {
                if (sgn(v) != 0)
                    return false;
            } else if (!mpz_divisible_p(v.get_mpz_t(), orders_[i].get_mpz_t())) {
                return false;
            }
        }
    }
    return true;
}

CyclicSum CyclicSum::operator+(const CyclicSum& other) const
{
    std::vector<Integer> o = orders_;
    o.insert(o.end(), other.orders_.begin(), other.orders_.end());
    return CyclicSum(std::move(o));
}

FpAbGroup CyclicSum::canonical() const
{
    return cokernel_presentation(relations());
}

// ---------------------------------------------------------------- FpAbGroup

FpAbGroup::FpAbGroup(std::size_t rank, std::vector<Integer> torsion)
    : rank_(rank), torsion_(std::move(torsion))
{
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2)
            throw InputError("FpAbGroup: invariant factors must be ≥ 2");
        if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
            throw InputError("FpAbGroup: invariant factors must form a divisibility chain");
    }
}

FpAbGroup FpAbGroup::cyclic(const Integer& order)
{
    if (sgn(order) == 0)
        return free(1);
    if (order == 1)
        return {};
    return FpAbGroup(0, {order});
}

Integer FpAbGroup::generator_order(std::size_t i) const
{
    return i < torsion_.size() ? torsion_[i] : Integer(0);
}

Integer FpAbGroup::order() const
{
    if (rank_ != 0)
        throw InputError("FpAbGroup::order: group is infinite");
    Integer o = 1;
    for (const auto& t : torsion_)
        o *= t;
    return o;
}

Integer FpAbGroup::exponent() const
{
    return torsion_.empty() ? Integer(1) : torsion_.back();
}

IntVector FpAbGroup::reduce(std::span<const Integer> coords) const
{
    return as_cyclic_sum().reduce(coords);
}

Integer FpAbGroup::element_order(std::span<const Integer> coords) const
{
    if (coords.size() != num_generators())
        throw InputError("FpAbGroup::element_order: length mismatch");
    Integer order = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i >= torsion_.size()) {
            if (sgn(coords[i]) != 0)
                return 0;
            continue;
        }
        Integer c = reduce_mod(coords[i], torsion_[i]);
        Integer oi = torsion_[i] / gcd_of(torsion_[i], c);
        order = lcm_of(order, oi);
    }
    return order;
}

CyclicSum FpAbGroup::as_cyclic_sum() const
{
    std::vector<Integer> o = torsion_;
    o.resize(num_generators(), Integer(0));
    return CyclicSum(std::move(o));
}

const BasisWitness& FpAbGroup::witness() const
{
    if (!witness_)
        throw InputError("FpAbGroup: no basis witness attached");
    return *witness_;
}

std::optional<IntVector> FpAbGroup::try_coordinates_of(std::span<const Integer> ambient) const
{
    const BasisWitness& w = witness();
    if (ambient.size() != w.ambient_dimension)
        throw InputError("FpAbGroup::coordinates_of: ambient dimension mismatch");
    IntVector local;
    if (w.subgroup) {
        auto c = w.subgroup->coordinates(ambient);
        if (!c)
            return std::nullopt;
        local = std::move(*c);
    } else {
        local.assign(ambient.begin(), ambient.end());
    }
    return reduce(w.to_canonical.apply(local));
}

IntVector FpAbGroup::coordinates_of(std::span<const Integer> ambient) const
{
    auto c = try_coordinates_of(ambient);
    if (!c)
        throw InvariantError("FpAbGroup::coordinates_of: element outside the subgroup");
    return *c;
}

IntVector FpAbGroup::representative(std::size_t generator) const
{
    return witness().generators.column(generator);
}

std::string FpAbGroup::to_string() const
{
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (rank_ == 1) {
        os << "Z";
        first = false;
    } else if (rank_ > 1) {
        os << "Z^" << rank_;
        first = false;
    }
    for (const auto& t : torsion_) {
        if (!first)
            os << " ⊕ ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- AbHom

AbHom AbHom::identity(const FpAbGroup& g)
{
    return {g, g, IntMatrix::identity(g.num_generators())};
}

AbHom AbHom::scalar(const FpAbGroup& g, const Integer& k)
{
    IntMatrix m = IntMatrix::identity(g.num_generators()).scaled(k);
    return {g, g, g.as_cyclic_sum().reduce_rows(m)};
}

AbHom AbHom::zero(const FpAbGroup& source, const FpAbGroup& target)
{
    return {source, target, IntMatrix(target.num_generators(), source.num_generators())};
}

bool AbHom::is_well_defined() const
{
    return target.as_cyclic_sum().admits(matrix, source.as_cyclic_sum());
}

IntVector AbHom::apply(std::span<const Integer> x) const
{
    return target.reduce(matrix.apply(x));
}

AbHom compose(const AbHom& g, const AbHom& f)
{
    if (!(g.source == f.target))
        throw InputError("compose: target of f is not the source of g");
    return {f.source, g.target, g.target.as_cyclic_sum().reduce_rows(g.matrix * f.matrix)};
}

bool operator==(const AbHom& a, const AbHom& b)
{
    if (!(a.source == b.source) || !(a.target == b.target))
        return false;
    CyclicSum t = a.target.as_cyclic_sum();
    return t.reduce_rows(a.matrix) == t.reduce_rows(b.matrix);
}

// ---------------------------------------------------------------- constructions

AbHom induced_hom(const FpAbGroup& src, const FpAbGroup& tgt, const IntMatrix& ambient_map)
{
    if (ambient_map.rows() != tgt.witness().ambient_dimension ||
        ambient_map.cols() != src.witness().ambient_dimension)
        throw InputError("induced_hom: ambient map has the wrong shape");
    IntMatrix m(tgt.num_generators(), src.num_generators());
    for (std::size_t k = 0; k < src.num_generators(); ++k) {
        auto c = tgt.try_coordinates_of(ambient_map.apply(src.representative(k)));
        if (!c)
            throw InvariantError("induced_hom: image of a generator leaves the target subgroup");
        m.set_column(k, *c);
    }
    return {src, tgt, std::move(m)};
}

namespace {

/// Z^n / R ≅ Z^m / R' after eliminating generators through relations with a
/// unit coefficient. projection is m × n; kept[j] is the ambient index of
/// reduced generator j, so inclusion along kept is a section.
struct UnitElimination {
    std::vector<std::size_t> kept;
    IntMatrix projection;
    IntMatrix reduced;
};

UnitElimination eliminate_units(const IntMatrix& relations)
{
    using Sparse = std::map<std::size_t, Integer>;
    const std::size_t n = relations.rows();
    std::vector<Sparse> cols;
    std::vector<std::set<std::size_t>> row_cols(n);
    for (std::size_t c = 0; c < relations.cols(); ++c) {
        Sparse col;
        for (std::size_t r = 0; r < n; ++r)
            if (sgn(relations(r, c)) != 0) {
                col.emplace(r, relations(r, c));
                row_cols[r].insert(cols.size());
            }
        if (!col.empty())
            cols.push_back(std::move(col));
    }
    std::vector<bool> alive(cols.size(), true);
    // e_r = Σ coef·e_i for eliminated r, in elimination order
    std::vector<std::pair<std::size_t, Sparse>> substitutions;
    std::vector<bool> eliminated(n, false);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (!alive[c])
                continue;
            std::size_t pivot = n;
            for (const auto& [r, v] : cols[c])
                if (abs(v) == 1 && (pivot == n || row_cols[r].size() < row_cols[pivot].size()))
                    pivot = r;
            if (pivot == n)
                continue;
            const Sparse p = cols[c];
            const Integer u = p.at(pivot);
            Sparse expr;
            for (const auto& [r, v] : p)
                if (r != pivot)
                    expr.emplace(r, -u * v);
            alive[c] = false;
            for (const auto& [r, v] : p)
                row_cols[r].erase(c);
            const std::vector<std::size_t> touched(row_cols[pivot].begin(), row_cols[pivot].end());
            for (std::size_t o : touched) {
                const Integer f = -cols[o].at(pivot) * u;
                for (const auto& [r, v] : p) {
                    Integer nv = cols[o][r] + f * v;
                    if (sgn(nv) == 0) {
                        cols[o].erase(r);
                        row_cols[r].erase(o);
                    } else {
                        cols[o][r] = std::move(nv);
                        row_cols[r].insert(o);
                    }
                }
                if (cols[o].empty())
                    alive[o] = false;
            }
            eliminated[pivot] = true;
            substitutions.emplace_back(pivot, std::move(expr));
            progress = true;
        }
    }
    UnitElimination out;
    std::vector<std::size_t> position(n, n);
    for (std::size_t r = 0; r < n; ++r)
        if (!eliminated[r]) {
            position[r] = out.kept.size();
            out.kept.push_back(r);
        }
    const std::size_t m = out.kept.size();
    out.projection = IntMatrix(m, n);
    for (std::size_t j = 0; j < m; ++j)
        out.projection(j, out.kept[j]) = 1;
    // Later substitutions only mention rows eliminated after them or kept ones.
    for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it) {
        const auto& [r, expr] = *it;
        for (const auto& [i, v] : expr)
            for (std::size_t j = 0; j < m; ++j)
                if (sgn(out.projection(j, i)) != 0)
                    out.projection(j, r) += v * out.projection(j, i);
    }
    std::vector<std::size_t> live;
    for (std::size_t c = 0; c < cols.size(); ++c)
        if (alive[c])
            live.push_back(c);
    out.reduced = IntMatrix(m, live.size());
    for (std::size_t k = 0; k < live.size(); ++k)
        for (const auto& [r, v] : cols[live[k]])
            out.reduced(position[r], k) = v;
    return out;
}

} // namespace

FpAbGroup cokernel_presentation(const IntMatrix& relations)
{
    const std::size_t n = relations.rows();
    auto w = std::make_shared<BasisWitness>();
    w->ambient_dimension = n;

    const UnitElimination el = eliminate_units(relations);
    const std::size_t m = el.kept.size();

    ColumnEchelon ce = column_echelon(el.reduced, false);
    std::vector<std::size_t> basis_cols(ce.rank());
    for (std::size_t k = 0; k < ce.rank(); ++k)
        basis_cols[k] = k;
    IntMatrix reduced = ce.form.select_cols(basis_cols);

    SmithOptions opt;
    opt.left = true;
    opt.left_inverse = true;
    opt.right = false;
    SmithDecomposition snf = smith_normal_form(reduced, opt);

    std::vector<std::size_t> kept;
    std::vector<Integer> torsion;
    for (std::size_t i = 0; i < snf.rank(); ++i) {
        if (snf.divisors[i] > 1) {
            kept.push_back(i);
            torsion.push_back(snf.divisors[i]);
        }
    }
    for (std::size_t i = snf.rank(); i < m; ++i)
        kept.push_back(i);

    w->to_canonical = snf.left.select_rows(kept) * el.projection;
    const IntMatrix local = snf.left_inverse.select_cols(kept);
    w->generators = IntMatrix(n, local.cols());
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t c = 0; c < local.cols(); ++c)
            w->generators(el.kept[j], c) = local(j, c);

    FpAbGroup g(m - snf.rank(), std::move(torsion));
    g.set_witness(std::move(w));
    return g;
}

FpAbGroup subquotient(const IntMatrix& generators, const IntMatrix& relations)
{
    if (generators.rows() != relations.rows())
        throw InputError("subquotient: ambient dimension mismatch");
    Lattice sub(generators);
    IntMatrix rel_coords(sub.rank(), relations.cols());
    for (std::size_t j = 0; j < relations.cols(); ++j) {
        auto c = sub.coordinates(relations.column(j));
        if (!c)
            throw InvariantError("subquotient: relation outside the generated subgroup");
        rel_coords.set_column(j, *c);
    }
    FpAbGroup q = cokernel_presentation(rel_coords);

    auto w = std::make_shared<BasisWitness>();
    w->ambient_dimension = generators.rows();
    w->to_canonical = q.witness().to_canonical;
    w->generators = sub.basis() * q.witness().generators;
    w->subgroup = std::move(sub);

    FpAbGroup g(q.rank(), q.torsion());
    g.set_witness(std::move(w));
    return g;
}

FpAbGroup direct_sum(const std::vector<FpAbGroup>& parts)
{
    CyclicSum s;
    for (const auto& p : parts)
        s = s + p.as_cyclic_sum();
    return s.canonical();
}

FpAbGroup hom_group(const CyclicSum& a, const CyclicSum& b)
{
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t dim = na * nb;
    std::vector<IntVector> gens;
    std::vector<IntVector> rels;
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const Integer& t = b.order(i);
            const Integer& s = a.order(j);
            IntVector e(dim);
            if (sgn(t) == 0) {
                // Into Z: only a free source generator can go anywhere.
                if (sgn(s) != 0)
                    continue;
                e[i * na + j] = 1;
                gens.push_back(std::move(e));
            } else {
                e[i * na + j] = t / gcd_of(t, s);
                gens.push_back(std::move(e));
                IntVector r(dim);
                r[i * na + j] = t;
                rels.push_back(std::move(r));
            }
        }
    }
    return subquotient(IntMatrix::from_columns(dim, gens), IntMatrix::from_columns(dim, rels));
}

FpAbGroup tensor_group(const CyclicSum& a, const CyclicSum& b)
{
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t dim = na * nb;
    std::vector<IntVector> rels;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            Integer o = gcd_of(a.order(i), b.order(j));
            if (sgn(o) == 0)
                continue;
            IntVector r(dim);
            r[i * nb + j] = o;
            rels.push_back(std::move(r));
        }
    }
    return cokernel_presentation(IntMatrix::from_columns(dim, rels));
}

FpAbGroup hom_group(const FpAbGroup& a, const FpAbGroup& b)
{
    return hom_group(a.as_cyclic_sum(), b.as_cyclic_sum());
}

FpAbGroup tensor_group(const FpAbGroup& a, const FpAbGroup& b)
{
    return tensor_group(a.as_cyclic_sum(), b.as_cyclic_sum());
}

GroupInvariants group_invariants(const FpAbGroup& a)
{
    return {a.rank(), a.exponent(), a.rank() == 0};
}

FpAbGroup kernel_group(const IntMatrix& f, const CyclicSum& source, const CyclicSum& target)
{
    if (f.rows() != target.size() || f.cols() != source.size())
        throw InputError("kernel_group: matrix shape mismatch");
    IntMatrix gens = preimage_basis(f, target.relations());
    return subquotient(gens, source.relations());
}

FpAbGroup image_group(const IntMatrix& f, const CyclicSum& source, const CyclicSum& target)
{
    if (f.rows() != target.size() || f.cols() != source.size())
        throw InputError("image_group: matrix shape mismatch");
    IntMatrix t = target.relations();
    return subquotient(IntMatrix::hstack(f, t), t);
}

FpAbGroup cokernel_group(const IntMatrix& f, const CyclicSum& source, const CyclicSum& target)
{
    if (f.rows() != target.size() || f.cols() != source.size())
        throw InputError("cokernel_group: matrix shape mismatch");
    return cokernel_presentation(IntMatrix::hstack(f, target.relations()));
}

KernelCokernel hom_kernel_cokernel(const AbHom& f)
{
    if (!f.is_well_defined())
        throw InputError("hom_kernel_cokernel: matrix does not respect relations");
    CyclicSum s = f.source.as_cyclic_sum();
    CyclicSum t = f.target.as_cyclic_sum();
    return {kernel_group(f.matrix, s, t), cokernel_group(f.matrix, s, t), image_group(f.matrix, s, t)};
}

AlmostIsoVerdict is_almost_isomorphism(const AbHom& f)
{
    KernelCokernel kc = hom_kernel_cokernel(f);
    AlmostIsoVerdict v;
    v.verdict = kc.kernel.rank() == 0 && kc.cokernel.rank() == 0;
    if (v.verdict) {
        v.kernel_exponent = kc.kernel.exponent();
        v.cokernel_exponent = kc.cokernel.exponent();
    }
    return v;
}

bool is_isomorphism(const AbHom& f)
{
    KernelCokernel kc = hom_kernel_cokernel(f);
    return kc.kernel.is_trivial() && kc.cokernel.is_trivial();
}

Membership solve_image_membership(const AbHom& f, std::span<const Integer> y)
{
    if (y.size() != f.target.num_generators())
        throw InputError("solve_image_membership: coordinate length mismatch");
    CyclicSum s = f.source.as_cyclic_sum();
    CyclicSum t = f.target.as_cyclic_sum();
    Membership out;
    FpAbGroup coker = cokernel_group(f.matrix, s, t);
    out.residue = coker.coordinates_of(y);
    out.member = is_zero_vector(out.residue);
    if (!out.member)
        return out;

    // Solve [M | T] (x, z) = y through the Smith form of [M | T].
    IntMatrix joint = IntMatrix::hstack(f.matrix, t.relations());
    SmithDecomposition snf = smith_normal_form(joint);
    IntVector uy = snf.left.apply(y);
    IntVector w(joint.cols());
    for (std::size_t i = 0; i < snf.rank(); ++i) {
        if (!mpz_divisible_p(uy[i].get_mpz_t(), snf.divisors[i].get_mpz_t()))
            throw InvariantError("solve_image_membership: inexact division");
        w[i] = uy[i] / snf.divisors[i];
    }
    IntVector xz = snf.right.apply(w);
    out.preimage = s.reduce(std::span<const Integer>(xz.data(), s.size()));
    return out;
}

} // namespace orbifunctor
