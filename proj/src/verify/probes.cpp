#include "orbifunctor/verify/probes.hpp"

#include <algorithm>

#include "orbifunctor/error.hpp"

namespace orbifunctor {

long IntSequence::at(std::size_t i) const
{
    if (i < prefix.size())
        return prefix[i];
    if (tail == Tail::BoundedBy)
        return bound;
    const long last = prefix.empty() ? -1 : prefix.back();
    return last + static_cast<long>(i - prefix.size()) + 1;
}

namespace {

void validate_sequence(const IntSequence& s, const char* name)
{
    for (std::size_t i = 0; i < s.prefix.size(); ++i) {
        if (s.prefix[i] < 0)
            throw InputError(std::string("interchange spec: ") + name + " has a negative entry");
        if (i > 0 && s.prefix[i] < s.prefix[i - 1])
            throw InputError(std::string("interchange spec: ") + name + " prefix is not nondecreasing");
    }
    if (s.tail == IntSequence::Tail::BoundedBy) {
        if (s.bound < 0 || (!s.prefix.empty() && s.bound < s.prefix.back()))
            throw InputError(std::string("interchange spec: ") + name +
                             " tail bound lies below the prefix");
    }
}

/// Least j with s_j = v, or kNone.
std::size_t first_index(const IntSequence& s, long v)
{
    for (std::size_t j = 0; j < s.prefix.size(); ++j)
        if (s.prefix[j] == v)
            return j;
    if (s.tail == IntSequence::Tail::BoundedBy)
        return v == s.bound ? s.prefix.size() : kNone;
    const long start = (s.prefix.empty() ? -1 : s.prefix.back()) + 1;
    return v >= start ? s.prefix.size() + static_cast<std::size_t>(v - start) : kNone;
}

std::vector<long> support(const GradedSeqSpec& spec)
{
    std::vector<long> out;
    for (const auto& [q, g] : spec.profile)
        if (!g.is_trivial())
            out.push_back(q);
    return out;
}

FpAbGroup entry(const GradedSeqSpec& spec, std::size_t i, std::size_t j)
{
    const long q = spec.n.at(j) - spec.m.at(i) + spec.p;
    auto it = spec.profile.find(q);
    return it == spec.profile.end() ? FpAbGroup() : it->second;
}

/// A column j with π_{n_j − m_i + p} ≠ 0, or kNone.
std::size_t nonzero_column(const GradedSeqSpec& spec, const std::vector<long>& s, std::size_t i)
{
    std::size_t best = kNone;
    for (long q : s)
        best = std::min(best, first_index(spec.n, q + spec.m.at(i) - spec.p));
    return best;
}

/// Sum over a grid of groups, listed row-major in the given order.
struct Grid {
    FpAbGroup sum;
    std::vector<std::size_t> offset;
};

Grid grid_sum(const std::vector<FpAbGroup>& parts)
{
    Grid g;
    std::size_t at = 0;
    for (const auto& p : parts) {
        g.offset.push_back(at);
        at += p.num_generators();
    }
    g.sum = direct_sum(parts);
    return g;
}

Integer power(long p, long k)
{
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return out;
}

bool is_prime(long p)
{
    if (p < 2)
        return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0)
            return false;
    return true;
}

} // namespace

void validate_spec(const GradedSeqSpec& spec)
{
    validate_sequence(spec.m, "m");
    validate_sequence(spec.n, "n");
    for (const auto& [q, g] : spec.profile)
        if (q < spec.lower_bound && !g.is_trivial())
            throw InputError("interchange spec: π is nonzero in degree " + std::to_string(q) +
                             " below its lower bound " + std::to_string(spec.lower_bound));
}

InterchangeReport interchange_criterion(const GradedSeqSpec& spec, std::size_t max_window)
{
    validate_spec(spec);
    InterchangeReport out;
    const std::vector<long> s = support(spec);
    auto row_zero = [&](std::size_t i) { return nonzero_column(spec, s, i) == kNone; };

    if (s.empty()) {
        out.surjective = true;
        out.i0 = 0;
        out.reason = "π vanishes identically";
    } else if (spec.m.tail == IntSequence::Tail::BoundedBy) {
        // Past the prefix every row equals the row of m = bound.
        const std::size_t tail_row = spec.m.prefix.size();
        out.surjective = row_zero(tail_row);
        if (out.surjective) {
            std::size_t i0 = tail_row;
            while (i0 > 0 && row_zero(i0 - 1))
                --i0;
            out.i0 = i0;
            out.reason = "m is eventually constant and its tail row of π-degrees misses the support";
        } else {
            out.reason = "m is eventually constant and the tail row hits the support of π for every i";
        }
    } else if (spec.n.tail == IntSequence::Tail::BoundedBy) {
        // n_j ≤ bound, so rows vanish once bound − m_i + p drops below min π.
        const long lowest = s.front();
        std::size_t last = 0;
        bool any = false;
        for (std::size_t i = 0; spec.n.bound - spec.m.at(i) + spec.p >= lowest; ++i)
            if (!row_zero(i)) {
                last = i;
                any = true;
            }
        out.surjective = true;
        out.i0 = any ? last + 1 : 0;
        out.reason = "m diverges while n is bounded and π is bounded below";
    } else {
        out.surjective = false;
        out.reason = "m and n both diverge, so every large row meets the support of π";
    }
    if (!out.surjective)
        out.witness_column = [spec, s](std::size_t i) { return nonzero_column(spec, s, i); };

    for (std::size_t rows = 1; rows <= max_window; ++rows)
        for (std::size_t cols = 1; cols <= max_window; ++cols) {
            InterchangeReport::Window w;
            w.rows = rows;
            w.cols = cols;
            std::vector<FpAbGroup> by_row, by_col;
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    by_row.push_back(entry(spec, i, j));
                    if (!by_row.back().is_trivial())
                        w.rows_needed = std::max(w.rows_needed, i + 1);
                }
            for (std::size_t j = 0; j < cols; ++j)
                for (std::size_t i = 0; i < rows; ++i)
                    by_col.push_back(entry(spec, i, j));
            const Grid src = grid_sum(by_row);
            const Grid tgt = grid_sum(by_col);
            IntMatrix map(tgt.sum.witness().ambient_dimension, src.sum.witness().ambient_dimension);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) {
                    const std::size_t a = src.offset[i * cols + j], b = tgt.offset[j * rows + i];
                    for (std::size_t t = 0; t < by_row[i * cols + j].num_generators(); ++t)
                        map(b + t, a + t) = 1;
                }
            const AbHom f = induced_hom(src.sum, tgt.sum, map);
            const KernelCokernel kc = hom_kernel_cokernel(f);
            w.source = src.sum;
            w.target = tgt.sum;
            w.injective = kc.kernel.is_trivial();
            w.isomorphism = w.injective && kc.cokernel.is_trivial();
            if (out.surjective) {
                w.consistent = w.rows_needed <= *out.i0;
            } else {
                w.consistent = true;
                for (std::size_t i = 0; i < rows; ++i) {
                    const std::size_t j = out.witness_column(i);
                    if (j != kNone && j < cols && entry(spec, i, j).is_trivial())
                        w.consistent = false;
                }
            }
            out.windows.push_back(std::move(w));
        }
    return out;
}

GradedSeqSpec interchange_divergent_bounded()
{
    GradedSeqSpec s;
    s.m = {{0}, IntSequence::Tail::Unbounded, 0};
    s.n = {{0}, IntSequence::Tail::BoundedBy, 2};
    s.profile = {{0, FpAbGroup::free(1)}, {1, FpAbGroup::cyclic(2)}};
    s.lower_bound = 0;
    return s;
}

GradedSeqSpec interchange_constant_m()
{
    GradedSeqSpec s;
    s.m = {{}, IntSequence::Tail::BoundedBy, 0};
    s.n = {{}, IntSequence::Tail::BoundedBy, 1};
    s.profile = {{1, FpAbGroup::free(1)}};
    s.lower_bound = 1;
    return s;
}

GradedSeqSpec interchange_divergent_unbounded()
{
    GradedSeqSpec s;
    s.m = {{}, IntSequence::Tail::Unbounded, 0};
    s.n = {{}, IntSequence::Tail::Unbounded, 0};
    s.profile = {{0, FpAbGroup::cyclic(3)}};
    s.lower_bound = 0;
    return s;
}

TorProbeReport tor_interchange_probe(long p, long m, long n)
{
    if (!is_prime(p))
        throw InputError("tor_interchange_probe: " + std::to_string(p) + " is not prime");
    if (m < 2 || n < 2 || m > kTorProbeBound || n > kTorProbeBound)
        throw InputError("tor_interchange_probe: bounds must lie in [2, " + std::to_string(kTorProbeBound) + "]");
    TorProbeReport out;
    out.prime = p;
    out.m_bound = m;
    out.n_bound = n;
    auto cyc = [&](long a, long b) { return FpAbGroup::cyclic(power(p, std::min(a, b))); };

    const std::size_t nm = static_cast<std::size_t>(m - 1), nn = static_cast<std::size_t>(n - 1);
    std::vector<FpAbGroup> by_m, by_n;
    for (long a = 2; a <= m; ++a)
        for (long b = 2; b <= n; ++b)
            by_m.push_back(cyc(a, b));
    for (long b = 2; b <= n; ++b)
        for (long a = 2; a <= m; ++a)
            by_n.push_back(cyc(a, b));
    const Grid src = grid_sum(by_m);
    const Grid tgt = grid_sum(by_n);
    IntMatrix perm(tgt.sum.witness().ambient_dimension, src.sum.witness().ambient_dimension);
    for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nn; ++b)
            perm(tgt.offset[b * nm + a], src.offset[a * nn + b]) = 1;
    out.source = src.sum;
    out.target = tgt.sum;
    out.finite_isomorphism = is_isomorphism(induced_hom(src.sum, tgt.sum, perm));

    // δ_N sits in ∏_{n ≤ N} ⊕_{m ≤ max(M, N)}; the m ≤ M block includes by coordinates.
    const long wide = std::max(m, n);
    const std::size_t nw = static_cast<std::size_t>(wide - 1);
    std::vector<FpAbGroup> full;
    for (long b = 2; b <= n; ++b)
        for (long a = 2; a <= wide; ++a)
            full.push_back(cyc(a, b));
    const Grid big = grid_sum(full);
    IntMatrix incl(big.sum.witness().ambient_dimension, tgt.sum.witness().ambient_dimension);
    for (std::size_t b = 0; b < nn; ++b)
        for (std::size_t a = 0; a < nm; ++a)
            incl(big.offset[b * nw + a], tgt.offset[b * nm + a]) = 1;
    IntVector delta(big.sum.witness().ambient_dimension);
    for (std::size_t b = 0; b < nn; ++b)
        delta[big.offset[b * nw + b]] = 1;
    const IntVector coords = big.sum.coordinates_of(delta);
    out.delta_order = big.sum.element_order(coords);
    out.delta_in_image = solve_image_membership(induced_hom(tgt.sum, big.sum, incl), coords).member;

    std::vector<FpAbGroup> top;
    for (long a = 2; a <= m; ++a)
        top.push_back(cyc(a, n));
    out.max_reachable_order = direct_sum(top).exponent();
    return out;
}

bool BorelCheckReport::pass() const
{
    return std::all_of(degrees.begin(), degrees.end(), [](const Degree& d) { return d.annihilated; });
}

BorelCheckReport borel_vs_quotient_check(const GCWComplex& x, std::size_t k, std::function<Integer(int)> annihilator)
{
    if (!annihilator) {
        const long order = static_cast<long>(x.group.order());
        annihilator = [order](int p) { return power(order, p + 1); };
    }
    const BorelQuotient bq = borel_and_quotient(x, k);
    BorelCheckReport out;
    out.truncation = k;
    out.valid_through = bq.valid_through;
    for (int p = 0; p <= bq.valid_through; ++p) {
        const AbHom h = borel_projection_on_homology(bq, p);
        const KernelCokernel kc = hom_kernel_cokernel(h);
        BorelCheckReport::Degree d;
        d.p = p;
        d.borel = h.source;
        d.quotient = h.target;
        d.kernel = kc.kernel;
        d.cokernel = kc.cokernel;
        d.annihilator = annihilator(p);
        d.annihilated = kc.kernel.is_finite() && kc.cokernel.is_finite() &&
                        d.annihilator % kc.kernel.exponent() == 0 && d.annihilator % kc.cokernel.exponent() == 0;
        out.degrees.push_back(std::move(d));
    }
    return out;
}

} // namespace orbifunctor
