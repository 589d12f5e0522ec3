#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qwirt {

/// Base of every error raised by the toolkit. `kind()` is the stable,
/// machine-readable tag the CLI reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// The quaternion lies on the real axis, so it has no imaginary unit.
class RealArgument : public Error {
public:
    explicit RealArgument(const std::string& what) : Error("RealArgument", what) {}
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what) : Error("DivisionByZero", what) {}
};

/// A numeric operator containing Im(x_m)^{-1} was asked for a point inside
/// the exclusion band around the real axis of x_m.
class NearRealAxis : public Error {
public:
    explicit NearRealAxis(const std::string& what) : Error("NearRealAxis", what) {}
};

/// The declared smoothness budget of a numeric field has been spent.
class DepthExhausted : public Error {
public:
    explicit DepthExhausted(const std::string& what) : Error("DepthExhausted", what) {}
};

/// Broken stem parity, mismatched ambient dimension, degree cap exceeded, ...
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error("SyntaxError", what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A variable index exceeds the ambient number of variables.
class ArityError : public Error {
public:
    explicit ArityError(const std::string& what) : Error("ArityError", what) {}
};

}  // namespace qwirt
