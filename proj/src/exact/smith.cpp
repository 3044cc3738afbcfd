#include "orbifunctor/exact/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbifunctor {
namespace {

// Below this many entries in the active block the OpenMP fork costs more
// than the sweep itself.
constexpr std::size_t kParallelThreshold = 64 * 64;

int cmpabs(const Integer& a, const Integer& b)
{
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

struct Position {
    std::size_t row;
    std::size_t col;
};

// Holds S together with whichever transforms were requested and applies
// every elementary operation to all of them consistently.
class SmithState {
public:
    SmithState(const IntMatrix& a, const SmithOptions& opt)
        : s(a), opt_(opt)
    {
        if (opt.left)
            u = IntMatrix::identity(a.rows());
        if (opt.left_inverse)
            u_inv = IntMatrix::identity(a.rows());
        if (opt.right)
            v = IntMatrix::identity(a.cols());
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        s.swap_rows(a, b);
        if (opt_.left)
            u.swap_rows(a, b);
        if (opt_.left_inverse)
            u_inv.swap_cols(a, b);
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        s.swap_cols(a, b);
        if (opt_.right)
            v.swap_cols(a, b);
    }

    // row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& k)
    {
        s.add_row_multiple(dst, src, k);
        if (opt_.left)
            u.add_row_multiple(dst, src, k);
        if (opt_.left_inverse)
            u_inv.add_col_multiple(src, dst, -k);
    }

    void negate_row(std::size_t r)
    {
        s.negate_row(r);
        if (opt_.left)
            u.negate_row(r);
        if (opt_.left_inverse)
            u_inv.negate_col(r);
    }

    // Clears column t below the pivot down to remainders. Rows are independent.
    void sweep_rows(std::size_t t, bool parallel)
    {
        const std::size_t m = s.rows();
        const std::size_t n = s.cols();
        std::vector<Integer> quotients(m);
        const Integer pivot = s(t, t);
        const bool par = parallel && (m - t) * (n - t) >= kParallelThreshold;

#pragma omp parallel for schedule(static) if (par)
        for (std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(t) + 1; ii < static_cast<std::ptrdiff_t>(m); ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            if (sgn(s(i, t)) == 0)
                continue;
            Integer q = s(i, t) / pivot;
            if (sgn(q) == 0)
                continue;
            for (std::size_t j = t; j < n; ++j)
                if (sgn(s(t, j)) != 0)
                    s(i, j) -= q * s(t, j);
            if (opt_.left)
                for (std::size_t j = 0; j < m; ++j)
                    if (sgn(u(t, j)) != 0)
                        u(i, j) -= q * u(t, j);
            quotients[i] = std::move(q);
        }

        if (opt_.left_inverse) {
            // U⁻¹ picks up column t += sum_i q_i * column i; parallel over rows of U⁻¹.
#pragma omp parallel for schedule(static) if (par)
            for (std::ptrdiff_t rr = 0; rr < static_cast<std::ptrdiff_t>(m); ++rr) {
                const auto r = static_cast<std::size_t>(rr);
                Integer acc;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (sgn(quotients[i]) != 0 && sgn(u_inv(r, i)) != 0)
                        acc += quotients[i] * u_inv(r, i);
                u_inv(r, t) += acc;
            }
        }
    }

    // Clears row t right of the pivot down to remainders. Columns are independent.
    void sweep_cols(std::size_t t, bool parallel)
    {
        const std::size_t m = s.rows();
        const std::size_t n = s.cols();
        const Integer pivot = s(t, t);
        const bool par = parallel && (m - t) * (n - t) >= kParallelThreshold;

#pragma omp parallel for schedule(static) if (par)
        for (std::ptrdiff_t jj = static_cast<std::ptrdiff_t>(t) + 1; jj < static_cast<std::ptrdiff_t>(n); ++jj) {
            const auto j = static_cast<std::size_t>(jj);
            if (sgn(s(t, j)) == 0)
                continue;
            const Integer q = s(t, j) / pivot;
            if (sgn(q) == 0)
                continue;
            for (std::size_t i = t; i < m; ++i)
                if (sgn(s(i, t)) != 0)
                    s(i, j) -= q * s(i, t);
            if (opt_.right)
                for (std::size_t i = 0; i < n; ++i)
                    if (sgn(v(i, t)) != 0)
                        v(i, j) -= q * v(i, t);
        }
    }

    IntMatrix s, u, u_inv, v;

private:
    SmithOptions opt_;
};

std::optional<Position> min_abs_entry(const IntMatrix& s, std::size_t t)
{
    std::optional<Position> best;
    for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
            if (sgn(s(i, j)) != 0 && (!best || cmpabs(s(i, j), s(best->row, best->col)) < 0))
                best = Position{i, j};
    return best;
}

SmithDecomposition finish(SmithState& st, std::size_t rank, const SmithOptions& opt)
{
    SmithDecomposition out;
    out.divisors.reserve(rank);
    for (std::size_t k = 0; k < rank; ++k)
        out.divisors.push_back(st.s(k, k));
    out.diagonal = std::move(st.s);
    if (opt.left)
        out.left = std::move(st.u);
    if (opt.left_inverse)
        out.left_inverse = std::move(st.u_inv);
    if (opt.right)
        out.right = std::move(st.v);
    return out;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a, SmithOptions options)
{
    SmithState st(a, options);
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::size_t t = 0;

    for (; t < std::min(m, n); ++t) {
        auto pivot = min_abs_entry(st.s, t);
        if (!pivot)
            break;
        st.swap_rows(t, pivot->row);
        st.swap_cols(t, pivot->col);

        for (;;) {
            st.sweep_rows(t, options.parallel);
            st.sweep_cols(t, options.parallel);

            // Smallest leftover remainder in the pivot row/column becomes the new pivot.
            std::optional<Position> rem;
            for (std::size_t i = t + 1; i < m; ++i)
                if (sgn(st.s(i, t)) != 0 && (!rem || cmpabs(st.s(i, t), st.s(rem->row, rem->col)) < 0))
                    rem = Position{i, t};
            for (std::size_t j = t + 1; j < n; ++j)
                if (sgn(st.s(t, j)) != 0 && (!rem || cmpabs(st.s(t, j), st.s(rem->row, rem->col)) < 0))
                    rem = Position{t, j};
            if (rem) {
                if (rem->col == t)
                    st.swap_rows(t, rem->row);
                else
                    st.swap_cols(t, rem->col);
                continue;
            }

            // Divisibility: fold an offending row into the pivot row and go again.
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < m && !offender; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (sgn(st.s(i, j)) != 0 && !mpz_divisible_p(st.s(i, j).get_mpz_t(), st.s(t, t).get_mpz_t())) {
                        offender = i;
                        break;
                    }
            if (offender) {
                st.add_row(t, *offender, 1);
                continue;
            }
            break;
        }
    }

    for (std::size_t k = 0; k < t; ++k)
        if (sgn(st.s(k, k)) < 0)
            st.negate_row(k);
    return finish(st, t, options);
}

SmithDecomposition smith_normal_form_reference(const IntMatrix& a)
{
    SmithOptions opt{true, false, true, false};
    SmithState st(a, opt);
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::size_t t = 0;

    auto first_nonzero = [&]() -> std::optional<Position> {
        for (std::size_t j = t; j < n; ++j)
            for (std::size_t i = t; i < m; ++i)
                if (sgn(st.s(i, j)) != 0)
                    return Position{i, j};
        return std::nullopt;
    };

    for (; t < std::min(m, n); ++t) {
        auto p = first_nonzero();
        if (!p)
            break;
        st.swap_rows(t, p->row);
        st.swap_cols(t, p->col);

        bool clean = false;
        while (!clean) {
            for (std::size_t i = t + 1; i < m; ++i) {
                while (sgn(st.s(i, t)) != 0) {
                    Integer q = st.s(i, t) / st.s(t, t);
                    st.add_row(i, t, -q);
                    if (sgn(st.s(i, t)) != 0)
                        st.swap_rows(t, i);
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                while (sgn(st.s(t, j)) != 0) {
                    Integer q = st.s(t, j) / st.s(t, t);
                    st.s.add_col_multiple(j, t, -q);
                    st.v.add_col_multiple(j, t, -q);
                    if (sgn(st.s(t, j)) != 0)
                        st.swap_cols(t, j);
                }
            }
            clean = true;
            for (std::size_t i = t + 1; i < m && clean; ++i)
                if (sgn(st.s(i, t)) != 0)
                    clean = false;
            if (!clean)
                continue;
            for (std::size_t i = t + 1; i < m && clean; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(st.s(i, j).get_mpz_t(), st.s(t, t).get_mpz_t())) {
                        st.add_row(t, i, 1);
                        clean = false;
                        break;
                    }
        }
    }

    for (std::size_t k = 0; k < t; ++k)
        if (sgn(st.s(k, k)) < 0)
            st.negate_row(k);
    return finish(st, t, opt);
}

ColumnEchelon column_echelon(const IntMatrix& a, bool track_transform)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    ColumnEchelon out;
    IntMatrix& h = out.form;
    h = a;
    IntMatrix& v = out.transform;
    if (track_transform)
        v = IntMatrix::identity(n);

    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
        h.add_col_multiple(dst, src, k);
        if (track_transform)
            v.add_col_multiple(dst, src, k);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        h.swap_cols(x, y);
        if (track_transform)
            v.swap_cols(x, y);
    };

    std::size_t r = 0;
    for (std::size_t i = 0; i < m && r < n; ++i) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t j = r; j < n; ++j)
                if (sgn(h(i, j)) != 0 && (!best || cmpabs(h(i, j), h(i, *best)) < 0))
                    best = j;
            if (!best)
                break;
            col_swap(r, *best);
            const Integer pivot = h(i, r);
            const bool par = (n - r) * m >= kParallelThreshold;
            bool done = true;
#pragma omp parallel for schedule(static) if (par) reduction(&& : done)
            for (std::ptrdiff_t jj = static_cast<std::ptrdiff_t>(r) + 1; jj < static_cast<std::ptrdiff_t>(n); ++jj) {
                const auto j = static_cast<std::size_t>(jj);
                if (sgn(h(i, j)) == 0)
                    continue;
                const Integer q = h(i, j) / pivot;
                if (sgn(q) != 0) {
                    for (std::size_t k = i; k < m; ++k)
                        if (sgn(h(k, r)) != 0)
                            h(k, j) -= q * h(k, r);
                    if (track_transform)
                        for (std::size_t k = 0; k < n; ++k)
                            if (sgn(v(k, r)) != 0)
                                v(k, j) -= q * v(k, r);
                }
                if (sgn(h(i, j)) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (r < n && sgn(h(i, r)) != 0) {
            if (sgn(h(i, r)) < 0) {
                h.negate_col(r);
                if (track_transform)
                    v.negate_col(r);
            }
            for (std::size_t k = 0; k < r; ++k) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), h(i, k).get_mpz_t(), h(i, r).get_mpz_t());
                if (sgn(q) != 0)
                    col_op(k, r, -q);
            }
            out.pivot_rows.push_back(i);
            ++r;
        }
    }
    return out;
}

IntMatrix kernel_basis(const IntMatrix& a)
{
    const std::size_t n = a.cols();
    if (a.rows() == 0)
        return IntMatrix::identity(n);
    ColumnEchelon ce = column_echelon(a, true);
    std::vector<std::size_t> cols(n - ce.rank());
    std::iota(cols.begin(), cols.end(), ce.rank());
    return ce.transform.select_cols(cols);
}

} // namespace orbifunctor
