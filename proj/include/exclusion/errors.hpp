#pragma once

#include <stdexcept>
#include <string>

namespace exclusion {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text: atoms, rationals, CSV, certificates.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Tuple lengths disagree, or a position is out of range.
class ArityError : public Error {
public:
    using Error::Error;
};

/// An atom mentions a variable the team has no column for.
class UnknownVariable : public Error {
public:
    using Error::Error;
};

/// Query degree lies in [1/2, 1), where the decision procedure is not complete.
class UnsupportedDegree : public Error {
public:
    using Error::Error;
};

/// An exact computation would exceed its configured budget.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Degree of an empty team is undefined.
class EmptyTeam : public Error {
public:
    using Error::Error;
};

/// A guarantee of the construction was violated; always a bug or a known
/// limitation surfacing.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace exclusion
