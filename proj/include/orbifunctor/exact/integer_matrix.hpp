#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace orbifunctor {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
///
/// Matrices act on column vectors. A presentation matrix lists one relation
/// per column among row-indexed generators. Zero-row and zero-column
/// matrices are legal and denote maps from or to the zero group.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(std::span<const Integer> entries);
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    IntVector column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const Integer> values);

    bool is_zero() const;
    bool operator==(const IntMatrix& other) const;

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Integer& k) const;
    IntVector apply(std::span<const Integer> x) const;
    IntMatrix transpose() const;

    IntMatrix select_rows(std::span<const std::size_t> which) const;
    IntMatrix select_cols(std::span<const std::size_t> which) const;
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);

    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

    // Elementary operations. Row ops: row[dst] += k * row[src].
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    /// Exact determinant by fraction-free (Bareiss) elimination. Square only.
    Integer determinant() const;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

IntVector to_integers(std::initializer_list<long> values);
bool is_zero_vector(std::span<const Integer> v);

} // namespace orbifunctor
