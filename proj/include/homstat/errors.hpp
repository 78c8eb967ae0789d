#pragma once

#include <stdexcept>
#include <string>

namespace homstat {

/**
 * Malformed or geometrically invalid input: bad indices, self-loops, open
 * face cycles, crossing edges, unparsable documents.
 */
class InvalidInput : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on data that violates its precondition.
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * An internal consistency check failed (composed boundaries nonzero, Euler
 * characteristic mismatch, non-closing dual). Always a bug, never bad input.
 */
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

} // namespace homstat
