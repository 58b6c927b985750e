#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace endoring {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed group literal, JSON document or config file.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("ParseError: " + msg) {}
};

/// A precondition on arguments was violated. The message names the
/// violated invariant so the CLI can surface it verbatim.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

class ParentMismatch : public ValidationError {
public:
    ParentMismatch() : ValidationError("ParentMismatch: operands belong to different groups") {}
};

class DivisibilityViolation : public ValidationError {
public:
    DivisibilityViolation(std::size_t row, std::size_t col)
        : ValidationError("DivisibilityViolation(" + std::to_string(row) + "," +
                          std::to_string(col) + "): entry is not divisible by p^(k_row - k_col)"),
          row(row), col(col) {}
    std::size_t row, col;
};

/// alpha_mn requires the source exponent to be strictly smaller than the target's.
class ExponentOrder : public ValidationError {
public:
    ExponentOrder(std::size_t i, std::size_t j)
        : ValidationError("ExponentOrder: require k_i < k_j, got indices i=" + std::to_string(i) +
                          ", j=" + std::to_string(j)) {}
};

/// Corner embedding maps a summand onto one with a different exponent.
class ExponentMismatch : public ValidationError {
public:
    explicit ExponentMismatch(std::size_t pos)
        : ValidationError("ExponentMismatch: embedded summand " + std::to_string(pos) +
                          " lands on a summand of different exponent") {}
};

class NotIdempotent : public ValidationError {
public:
    NotIdempotent() : ValidationError("NotIdempotent: e*e != e") {}
};

class NotElementary : public ValidationError {
public:
    NotElementary() : ValidationError("NotElementary: group has a summand of exponent > 1") {}
};

class NotQuasiInjective : public ValidationError {
public:
    NotQuasiInjective()
        : ValidationError("NotQuasiInjective: group has more than one exponent layer") {}
};

class ZeroSubgroup : public ValidationError {
public:
    ZeroSubgroup() : ValidationError("ZeroSubgroup: a nonzero subgroup is required") {}
};

class ZeroElement : public ValidationError {
public:
    ZeroElement() : ValidationError("ZeroElement: a nonzero element is required") {}
};

class IndexOutOfRange : public ValidationError {
public:
    explicit IndexOutOfRange(std::size_t i)
        : ValidationError("IndexOutOfRange: summand index " + std::to_string(i)) {}
};

/// An exhaustive enumeration was refused because the search space exceeds
/// the configured cap.
class GuardExceeded : public Error {
public:
    GuardExceeded(const std::string& what_space, std::uint64_t cap)
        : Error("GuardExceeded: " + what_space + " exceeds enumeration cap " + std::to_string(cap)),
          cap(cap) {}
    std::uint64_t cap;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("IoError: " + msg) {}
};

} // namespace endoring
