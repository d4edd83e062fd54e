#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace kwayneg {

// Precondition violated by a caller (bad subsystem, bad K, mismatched dims).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A state or operator fails one of its physical invariants
// (normalization, Hermiticity, unit trace, positivity).
class InvariantViolation : public std::domain_error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : std::domain_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// Malformed textual input: JSON syntax, schema, or named-state grammar.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::optional<std::size_t> byte_offset = std::nullopt)
      : std::runtime_error(what), byte_offset_(byte_offset) {}

  std::optional<std::size_t> byte_offset() const noexcept { return byte_offset_; }

 private:
  std::optional<std::size_t> byte_offset_;
};

}  // namespace kwayneg
