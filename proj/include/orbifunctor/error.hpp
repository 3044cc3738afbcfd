#pragma once

#include <stdexcept>
#include <string>

namespace orbifunctor {

/// Malformed or inconsistent input: bad tables, mismatched bases, dangling references.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request reaches past the degree range in which a truncated model is faithful.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (d∘d ≠ 0 after assembly, inexact division, ...).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace orbifunctor
