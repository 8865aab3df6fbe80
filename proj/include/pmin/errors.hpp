#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmin {

/// Base class for all pmin errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed expression text. `position` is the 0-based character offset.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& msg)
        : Error("syntax error at position " + std::to_string(position) + ": " + msg),
          position(position) {}
    std::size_t position;
};

/// Evaluation undefined at the given parameter (sqrt of a negative, log of
/// a non-positive value, division by zero, ...).
class DomainError : public Error {
public:
    DomainError(double t, const std::string& msg)
        : Error("domain error at t=" + std::to_string(t) + ": " + msg), t(t) {}
    double t;
};

/// (a, b) not on the unit circle where a^2 + b^2 = 1 is required.
class NormalizationError : public Error {
public:
    explicit NormalizationError(const std::string& msg) : Error(msg) {}
};

/// A ruling triple with a parallel/coincident pair or coinciding vertices.
class DegenerateTriple : public Error {
public:
    explicit DegenerateTriple(const std::string& msg) : Error(msg) {}
};

/// All sampled ruling directions are parallel; a pairwise cross product
/// cannot define the candidate plane normal.
class DegenerateDirections : public Error {
public:
    explicit DegenerateDirections(const std::string& msg) : Error(msg) {}
};

/// The probed plane is not a contact plane of any point.
class InvalidPlane : public Error {
public:
    explicit InvalidPlane(const std::string& msg) : Error(msg) {}
};

/// Singular-set exclusion removed more than half of a residual grid.
class SingularContamination : public Error {
public:
    explicit SingularContamination(const std::string& msg) : Error(msg) {}
};

}  // namespace pmin
