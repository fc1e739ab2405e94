#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qecon {

// Bad input: wrong dimensions, violated preconditions, malformed files.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Raised by expression parsing; `position` is the 0-based byte offset.
class ParseError : public InvalidInput {
public:
    ParseError(const std::string& what, std::size_t position)
        : InvalidInput(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Evaluation outside a function's domain (log of a non-positive number, pole, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The problem is well-formed but has no answer of the requested kind.
class NoSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public NoSolution {
public:
    SingularMatrix(const std::string& what, double determinant)
        : NoSolution(what), determinant_(determinant) {}

    double determinant() const noexcept { return determinant_; }

private:
    double determinant_;
};

// Input form the solvers deliberately do not handle (e.g. LPs needing a phase 1).
class Unsupported : public NoSolution {
public:
    using NoSolution::NoSolution;
};

// Iteration caps, divergence guards, poles inside integration ranges.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qecon
