#pragma once

#include <string>
#include <utility>

#include "orbifunctor/fincat/category.hpp"

namespace orbifunctor {

enum class IndexKind { N, RF };

std::string to_string(IndexKind k);
IndexKind index_kind_from_string(const std::string& s);

/// Truncated index categories on objects 0..K.
///
/// N: one morphism m → n iff m ≤ n.
/// RF: morphisms m → n are pairs (i, j) with i + j = n − m; (i0, j0) then
/// (i1, j1) composes to (i0 + i1, j0 + j1).
struct IndexCategory {
    IndexKind kind = IndexKind::N;
    std::size_t truncation = 0;
    CategoryPtr category;

    /// The morphism m → n with first coordinate i (ignored for N); kNone if absent.
    MorphismId morphism(std::size_t m, std::size_t n, std::size_t i = 0) const;
    /// (i, j) of an RF morphism; (n − m, 0) for N.
    std::pair<std::size_t, std::size_t> steps(MorphismId f) const;
};

IndexCategory standard_category(IndexKind kind, std::size_t truncation);

} // namespace orbifunctor
