#pragma once

#include <stdexcept>
#include <string>

namespace opradius {

/// Operand shapes that do not fit together (add/mul of different n, pair of
/// different dimensions, dimension outside [1, 64]).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad caller input that is not a shape problem: NaN/Inf entries, a
/// non-Hermitian argument to a Hermitian kernel, out-of-range options.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input (matrix JSON, norm selectors, sampler specs).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical kernel gave up. Carries the residual it stopped at.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace opradius
