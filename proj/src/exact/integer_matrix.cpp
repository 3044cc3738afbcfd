#include "orbifunctor/exact/integer_matrix.hpp"

#include <ostream>
#include <sstream>

#include "orbifunctor/error.hpp"

namespace orbifunctor {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InputError("IntMatrix: ragged initializer");
        for (long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries)
{
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(i, i) = entries[i];
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns)
{
    IntMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        m.set_column(c, columns[c]);
    return m;
}

IntVector IntMatrix::column(std::size_t c) const
{
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

void IntMatrix::set_column(std::size_t c, std::span<const Integer> values)
{
    if (values.size() != rows_)
        throw InputError("IntMatrix::set_column: length mismatch");
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = values[r];
}

bool IntMatrix::is_zero() const
{
    for (const auto& v : data_)
        if (sgn(v) != 0)
            return false;
    return true;
}

bool IntMatrix::operator==(const IntMatrix& other) const
{
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw InputError("IntMatrix: product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(i, k);
            if (sgn(a) == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Integer& b = rhs(k, j);
                if (sgn(b) != 0)
                    out(i, j) += a * b;
            }
        }
    }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InputError("IntMatrix: sum shape mismatch");
    IntMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] += rhs.data_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const
{
    return *this + (-rhs);
}

IntMatrix IntMatrix::operator-() const
{
    IntMatrix out = *this;
    for (auto& v : out.data_)
        v = -v;
    return out;
}

IntMatrix IntMatrix::scaled(const Integer& k) const
{
    IntMatrix out = *this;
    for (auto& v : out.data_)
        v *= k;
    return out;
}

IntVector IntMatrix::apply(std::span<const Integer> x) const
{
    if (x.size() != cols_)
        throw InputError("IntMatrix::apply: length mismatch");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn(x[j]) != 0 && sgn((*this)(i, j)) != 0)
                out[i] += (*this)(i, j) * x[j];
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> which) const
{
    IntMatrix out(which.size(), cols_);
    for (std::size_t i = 0; i < which.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(i, j) = (*this)(which[i], j);
    return out;
}

IntMatrix IntMatrix::select_cols(std::span<const std::size_t> which) const
{
    IntMatrix out(rows_, which.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < which.size(); ++j)
            out(i, j) = (*this)(i, which[j]);
    return out;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw InputError("IntMatrix::block: out of range");
    IntMatrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& b)
{
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        throw InputError("IntMatrix::set_block: out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j)
            (*this)(r0 + i, c0 + j) = b(i, j);
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows_ != b.rows_)
        throw InputError("IntMatrix::hstack: row mismatch");
    IntMatrix out(a.rows_, a.cols_ + b.cols_);
    out.set_block(0, 0, a);
    out.set_block(0, a.cols_, b);
    return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.cols_)
        throw InputError("IntMatrix::vstack: column mismatch");
    IntMatrix out(a.rows_ + b.rows_, a.cols_);
    out.set_block(0, 0, a);
    out.set_block(a.rows_, 0, b);
    return out;
}

IntMatrix IntMatrix::block_diagonal(const std::vector<IntMatrix>& blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows_;
        c += b.cols_;
    }
    IntMatrix out(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        out.set_block(r, c, b);
        r += b.rows_;
        c += b.cols_;
    }
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k)
{
    if (sgn(k) == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j) {
        const Integer& s = (*this)(src, j);
        if (sgn(s) != 0)
            (*this)(dst, j) += k * s;
    }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k)
{
    if (sgn(k) == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i) {
        const Integer& s = (*this)(i, src);
        if (sgn(s) != 0)
            (*this)(i, dst) += k * s;
    }
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, c) = -(*this)(i, c);
}

Integer IntMatrix::determinant() const
{
    if (rows_ != cols_)
        throw InputError("IntMatrix::determinant: not square");
    const std::size_t n = rows_;
    if (n == 0)
        return 1;
    IntMatrix m = *this;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t swap_with = k + 1;
            while (swap_with < n && sgn(m(swap_with, k)) == 0)
                ++swap_with;
            if (swap_with == n)
                return 0;
            m.swap_rows(k, swap_with);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i)
            os << ", ";
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                os << ", ";
            os << m(i, j);
        }
        os << ']';
    }
    return os << ']';
}

IntVector to_integers(std::initializer_list<long> values)
{
    IntVector out;
    out.reserve(values.size());
    for (long v : values)
        out.emplace_back(v);
    return out;
}

bool is_zero_vector(std::span<const Integer> v)
{
    for (const auto& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

} // namespace orbifunctor
